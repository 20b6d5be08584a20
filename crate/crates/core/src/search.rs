//! Exact optimal redundancy by backtracking over parity tables.
//!
//! For a pair `u, v` with `f(u) != f(v)` the codeword distance splits as
//! `d(u, v) + d(p(u), p(v))`, so the parities must satisfy
//! `d(p(u), p(v)) >= max(0, 2t + 1 - d(u, v))`. The search assigns parity
//! vectors to messages in (weight, lex) order, fixing the first to zero,
//! and tries `r = D_max, D_max + 1, ...` until a table exists.

use crate::error::{Error, Result};
use crate::fcc::{FccScheme, FunctionTable};
use crate::gf::{Elem, Field};
use crate::message::{
    check_len, hamming_distance, message_rank, rank_to_message, weight_lex_order,
};

/// Default node budget per search.
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

/// Parity alphabets larger than this are not searched.
const MAX_PARITY_SPACE: u64 = 1 << 20;

/// Required parity distance for one pair.
pub fn pair_requirement(u: &[Elem], v: &[Elem], f: &FunctionTable, t: usize) -> Result<usize> {
    check_len(u, f.k())?;
    check_len(v, f.k())?;
    let q = f.q();
    if f.value(message_rank(q, u)) == f.value(message_rank(q, v)) {
        return Ok(0);
    }
    Ok((2 * t + 1).saturating_sub(hamming_distance(u, v)))
}

/// Nonzero parity-distance requirements between messages with different labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RequirementSet {
    pub t: usize,
    /// `(rank_u, rank_v, D)` with `rank_u < rank_v` and `D > 0`.
    pub pairs: Vec<(u64, u64, usize)>,
    pub max_requirement: usize,
}

impl RequirementSet {
    pub fn new(f: &FunctionTable, t: usize) -> Self {
        let (q, k) = (f.q(), f.k());
        let messages: Vec<Vec<Elem>> = (0..f.values().len() as u64)
            .map(|r| rank_to_message(q, k, r))
            .collect();
        let mut pairs = Vec::new();
        for i in 0..messages.len() {
            for j in i + 1..messages.len() {
                if f.values()[i] == f.values()[j] {
                    continue;
                }
                let d = (2 * t + 1).saturating_sub(hamming_distance(&messages[i], &messages[j]));
                if d > 0 {
                    pairs.push((i as u64, j as u64, d));
                }
            }
        }
        let max_requirement = pairs.iter().map(|p| p.2).max().unwrap_or(0);
        RequirementSet {
            t,
            pairs,
            max_requirement,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RedundancySearchResult {
    /// Optimal redundancy `r_f(k, t)`.
    pub r: usize,
    /// Parity table achieving `r`.
    pub witness: FccScheme,
    pub nodes: u64,
    /// Every redundancy below `r` that was refuted by exhausted search.
    pub infeasible: Vec<usize>,
}

/// Redundancy of the systematic repetition code `(u, u, ..., u)` with `2t`
/// extra copies, which separates every pair of distinct messages by `2t + 1`.
pub fn repetition_upper_bound(k: usize, t: usize) -> usize {
    2 * t * k
}

enum Outcome {
    Found,
    Exhausted,
    OutOfBudget,
}

struct Backtracker<'a> {
    /// For position i in search order: `(earlier position, D)`.
    constraints: &'a [Vec<(usize, usize)>],
    r: usize,
    q: u32,
    space: u64,
    table: Option<Vec<u8>>,
    assignment: Vec<u64>,
    nodes: u64,
    budget: u64,
}

impl Backtracker<'_> {
    fn distance(&self, a: u64, b: u64) -> usize {
        if let Some(t) = &self.table {
            return usize::from(t[(a * self.space + b) as usize]);
        }
        parity_distance(a, b, self.q, self.r)
    }

    fn run(&mut self, pos: usize) -> Outcome {
        if pos == self.constraints.len() {
            return Outcome::Found;
        }
        // translating every parity by -p(first) keeps all distances
        let candidates = if pos == 0 { 1 } else { self.space };
        for val in 0..candidates {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Outcome::OutOfBudget;
            }
            let ok = self.constraints[pos]
                .iter()
                .all(|&(j, d)| self.distance(val, self.assignment[j]) >= d);
            if !ok {
                continue;
            }
            self.assignment[pos] = val;
            match self.run(pos + 1) {
                Outcome::Exhausted => {}
                other => return other,
            }
        }
        Outcome::Exhausted
    }
}

fn parity_distance(mut a: u64, mut b: u64, q: u32, r: usize) -> usize {
    let q = u64::from(q);
    let mut d = 0;
    for _ in 0..r {
        d += usize::from(a % q != b % q);
        a /= q;
        b /= q;
    }
    d
}

fn parity_vector(mut v: u64, q: u32, r: usize) -> Vec<Elem> {
    let mut out = vec![Elem::ZERO; r];
    for slot in out.iter_mut().rev() {
        *slot = Elem((v % u64::from(q)) as u32);
        v /= u64::from(q);
    }
    out
}

/// Smallest `r` admitting an (f, t)-FCC, with a witness parity table.
///
/// Fails with [`Error::SearchBudgetExceeded`] once `node_budget` candidate
/// assignments have been tried without settling the answer.
pub fn exact_redundancy(
    f: &FunctionTable,
    t: usize,
    node_budget: u64,
) -> Result<RedundancySearchResult> {
    let (q, k) = (f.q(), f.k());
    let field = Field::new(u64::from(q))?;
    let reqs = RequirementSet::new(f, t);

    let order = weight_lex_order(q, k);
    let mut position = vec![0usize; order.len()];
    for (i, &rank) in order.iter().enumerate() {
        position[rank as usize] = i;
    }
    let mut constraints: Vec<Vec<(usize, usize)>> = vec![Vec::new(); order.len()];
    for &(a, b, d) in &reqs.pairs {
        let (pa, pb) = (position[a as usize], position[b as usize]);
        let (early, late) = if pa < pb { (pa, pb) } else { (pb, pa) };
        constraints[late].push((early, d));
    }
    // tightest constraints first
    for c in &mut constraints {
        c.sort_by(|x, y| y.1.cmp(&x.1).then(x.0.cmp(&y.0)));
    }

    let upper = if reqs.max_requirement == 0 {
        0
    } else {
        repetition_upper_bound(k, t)
    };
    let mut infeasible = Vec::new();
    let mut nodes = 0u64;
    let mut r = reqs.max_requirement;
    loop {
        let space = u64::from(q)
            .checked_pow(r as u32)
            .filter(|&s| s <= MAX_PARITY_SPACE);
        let Some(space) = space else {
            return Err(Error::SearchBudgetExceeded {
                lower: r,
                upper: Some(upper),
                nodes,
            });
        };
        let table = (space <= 1024).then(|| {
            let mut t = vec![0u8; (space * space) as usize];
            for a in 0..space {
                for b in 0..space {
                    t[(a * space + b) as usize] = parity_distance(a, b, q, r) as u8;
                }
            }
            t
        });
        let mut bt = Backtracker {
            constraints: &constraints,
            r,
            q,
            space,
            table,
            assignment: vec![0; order.len()],
            nodes: 0,
            budget: node_budget.saturating_sub(nodes),
        };
        let outcome = bt.run(0);
        nodes += bt.nodes.min(bt.budget);
        match outcome {
            Outcome::Found => {
                let mut parities = vec![Vec::new(); order.len()];
                for (pos, &rank) in order.iter().enumerate() {
                    parities[rank as usize] = parity_vector(bt.assignment[pos], q, r);
                }
                let witness = FccScheme::table(field, k, r, parities)?;
                return Ok(RedundancySearchResult {
                    r,
                    witness,
                    nodes,
                    infeasible,
                });
            }
            Outcome::Exhausted => {
                infeasible.push(r);
                r += 1;
            }
            Outcome::OutOfBudget => {
                return Err(Error::SearchBudgetExceeded {
                    lower: r,
                    upper: Some(upper),
                    nodes,
                });
            }
        }
    }
}
