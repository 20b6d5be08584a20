//! Linear codes given by a generator matrix, with brute-force distance.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::message::{check_budget, check_len, message_count, rank_to_message, weight};

/// Default cap on codewords enumerated by exhaustive checks.
pub const DEFAULT_BUDGET: u128 = 1 << 22;

/// A full-rank `k x n` generator matrix over GF(q).
#[derive(Clone, PartialEq, Eq)]
pub struct GeneratorMatrix {
    field: Arc<Field>,
    n: usize,
    rows: Vec<Vec<Elem>>,
}

impl std::fmt::Debug for GeneratorMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GeneratorMatrix")
            .field("q", &self.field.order())
            .field("n", &self.n)
            .field("k", &self.k())
            .field("rows", &self.rows)
            .finish()
    }
}

/// `[n, k, d]_q` parameters plus form predicates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodeSummary {
    pub n: usize,
    pub k: usize,
    pub q: u32,
    pub d: usize,
    pub is_systematic: bool,
    pub is_mds: bool,
}

impl GeneratorMatrix {
    pub fn new(field: Arc<Field>, rows: Vec<Vec<Elem>>) -> Result<Self> {
        let k = rows.len();
        if k == 0 {
            return Err(Error::EmptyInput);
        }
        let n = rows[0].len();
        for row in &rows {
            check_len(row, n)?;
            for &s in row {
                field.check(s)?;
            }
        }
        if k > n {
            return Err(Error::RankDeficient { rank: n, k });
        }
        let rank = rank(&field, &rows);
        if rank < k {
            return Err(Error::RankDeficient { rank, k });
        }
        Ok(GeneratorMatrix { field, n, rows })
    }

    /// `[I_k | P]`.
    pub fn from_parity(field: Arc<Field>, parity: &[Vec<Elem>]) -> Result<Self> {
        let k = parity.len();
        let rows = parity
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let mut row = vec![Elem::ZERO; k];
                row[i] = Elem::ONE;
                row.extend_from_slice(p);
                row
            })
            .collect();
        Self::new(field, rows)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    /// Leading `k x k` block is the identity.
    pub fn is_systematic(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, row)| {
            row[..self.k()]
                .iter()
                .enumerate()
                .all(|(j, &s)| s == if i == j { Elem::ONE } else { Elem::ZERO })
        })
    }

    /// Trailing `k x (n - k)` block.
    pub fn parity_block(&self) -> Vec<Vec<Elem>> {
        let k = self.k();
        self.rows.iter().map(|row| row[k..].to_vec()).collect()
    }

    /// `u * G`.
    pub fn encode(&self, u: &[Elem]) -> Result<Vec<Elem>> {
        check_len(u, self.k())?;
        for &s in u {
            self.field.check(s)?;
        }
        Ok(self.encode_unchecked(u))
    }

    pub(crate) fn encode_unchecked(&self, u: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut out = vec![Elem::ZERO; self.n];
        for (&coef, row) in u.iter().zip(&self.rows) {
            if coef.is_zero() {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(row) {
                *o = f.add(*o, f.mul(coef, g));
            }
        }
        out
    }

    /// Minimum weight over all nonzero codewords.
    pub fn min_distance(&self, budget: u128) -> Result<usize> {
        let q = self.field.order();
        let k = self.k();
        let total = message_count(q, k).ok_or(Error::BudgetExceeded {
            needed: u128::MAX,
            budget,
        })?;
        check_budget(u128::from(total), budget)?;
        let mut best = self.n;
        for rank in 1..total {
            let c = self.encode_unchecked(&rank_to_message(q, k, rank));
            best = best.min(weight(&c));
            if best == 1 {
                break;
            }
        }
        Ok(best)
    }

    pub fn summarize(&self, budget: u128) -> Result<CodeSummary> {
        let d = self.min_distance(budget)?;
        let (n, k) = (self.n, self.k());
        Ok(CodeSummary {
            n,
            k,
            q: self.field.order(),
            d,
            is_systematic: self.is_systematic(),
            is_mds: d == n - k + 1,
        })
    }
}

/// Row rank by Gaussian elimination.
fn rank(field: &Field, rows: &[Vec<Elem>]) -> usize {
    let mut m: Vec<Vec<Elem>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = field.inv(m[rank][col]).expect("pivot is nonzero");
        let pivot_row: Vec<Elem> = m[rank].iter().map(|&x| field.mul(x, inv)).collect();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col];
            for (x, &p) in row.iter_mut().zip(&pivot_row) {
                *x = field.sub(*x, field.mul(factor, p));
            }
        }
        m[rank] = pivot_row;
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}
