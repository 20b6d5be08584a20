//! Function tables, systematic encoders and the (f, t) distance condition.
//!
//! A systematic encoder maps `u` to `(u, p(u))`. It is an (f, t)-FCC when
//! every pair of messages with different function values lands at Hamming
//! distance at least `2t + 1`. Pairs sharing a value are unconstrained.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::codes::GeneratorMatrix;
use crate::error::{Error, Result};
use crate::gf::{prime_power, Elem, Field};
use crate::message::{
    check_budget, check_len, hamming_distance, message_count, message_rank, rank_to_message,
    weight, weight_lex_order,
};

/// Largest message space a [`FunctionTable`] will materialize.
pub const MAX_TABLE_LEN: u64 = 1 << 22;

/// An explicit function `f: F_q^k -> labels`, indexed by message rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionTable {
    q: u32,
    k: usize,
    values: Vec<u64>,
}

impl FunctionTable {
    pub fn new(q: u32, k: usize, values: Vec<u64>) -> Result<Self> {
        prime_power(u64::from(q)).ok_or(Error::InvalidOrder(u64::from(q)))?;
        let len = table_len(q, k)?;
        if values.len() as u64 != len {
            return Err(Error::DimensionError {
                expected: len as usize,
                got: values.len(),
            });
        }
        Ok(FunctionTable { q, k, values })
    }

    /// Builds the table by evaluating `f` on every message.
    pub fn from_fn(q: u32, k: usize, mut f: impl FnMut(&[Elem]) -> u64) -> Result<Self> {
        let len = table_len(q, k)?;
        let values = (0..len).map(|r| f(&rank_to_message(q, k, r))).collect();
        Self::new(q, k, values)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn value(&self, rank: u64) -> u64 {
        self.values[rank as usize]
    }

    pub fn eval(&self, u: &[Elem]) -> Result<u64> {
        check_len(u, self.k)?;
        Ok(self.value(message_rank(self.q, u)))
    }

    /// `|Im(f)|`.
    pub fn image_size(&self) -> usize {
        let mut v = self.values.clone();
        v.sort_unstable();
        v.dedup();
        v.len()
    }

    pub fn is_constant(&self) -> bool {
        self.values.windows(2).all(|w| w[0] == w[1])
    }
}

fn table_len(q: u32, k: usize) -> Result<u64> {
    match message_count(q, k) {
        Some(n) if n <= MAX_TABLE_LEN => Ok(n),
        other => Err(Error::BudgetExceeded {
            needed: other.map_or(u128::MAX, u128::from),
            budget: u128::from(MAX_TABLE_LEN),
        }),
    }
}

/// Named built-in functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    /// 0 iff the message is all-zero.
    Or,
    Constant,
    /// The message rank itself (bijective).
    Identity,
    HammingWeight,
    /// `sum a_i u_i` over F_q with coefficient vector `aux`.
    Linear,
    /// 1 iff the weight is at least `aux[0]`.
    Threshold,
}

impl Builtin {
    pub const ALL: [Builtin; 6] = [
        Builtin::Or,
        Builtin::Constant,
        Builtin::Identity,
        Builtin::HammingWeight,
        Builtin::Linear,
        Builtin::Threshold,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Or => "or",
            Builtin::Constant => "constant",
            Builtin::Identity => "identity",
            Builtin::HammingWeight => "hamming_weight",
            Builtin::Linear => "linear",
            Builtin::Threshold => "threshold",
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Builtin::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::UnknownFunction(s.to_string()))
    }
}

/// Table for the built-in `name`; `aux` carries the coefficient vector for
/// `linear` and the threshold for `threshold`, and must be empty otherwise.
pub fn builtin_function(name: &str, q: u32, k: usize, aux: &[u64]) -> Result<FunctionTable> {
    let builtin: Builtin = name.parse()?;
    let expected_aux = match builtin {
        Builtin::Linear => k,
        Builtin::Threshold => 1,
        _ => 0,
    };
    if aux.len() != expected_aux {
        return Err(Error::DimensionError {
            expected: expected_aux,
            got: aux.len(),
        });
    }
    match builtin {
        Builtin::Or => FunctionTable::from_fn(q, k, |u| u64::from(weight(u) > 0)),
        Builtin::Constant => FunctionTable::from_fn(q, k, |_| 0),
        Builtin::Identity => FunctionTable::from_fn(q, k, |u| message_rank(q, u)),
        Builtin::HammingWeight => FunctionTable::from_fn(q, k, |u| weight(u) as u64),
        Builtin::Threshold => {
            let tau = aux[0];
            FunctionTable::from_fn(q, k, |u| u64::from(weight(u) as u64 >= tau))
        }
        Builtin::Linear => {
            let field = Field::new(u64::from(q))?;
            let coefs: Vec<Elem> = aux
                .iter()
                .map(|&a| {
                    u32::try_from(a)
                        .map_err(|_| Error::NotInField {
                            index: u32::MAX,
                            order: q,
                        })
                        .and_then(|a| field.check(Elem(a)))
                })
                .collect::<Result<_>>()?;
            FunctionTable::from_fn(q, k, |u| {
                let s = u
                    .iter()
                    .zip(&coefs)
                    .fold(Elem::ZERO, |acc, (&x, &a)| field.add(acc, field.mul(x, a)));
                u64::from(s.0)
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SchemeKind {
    /// Systematic generator `[I_k | P]`.
    Linear(GeneratorMatrix),
    /// Parity vector for every message rank.
    Table(Vec<Vec<Elem>>),
}

/// A systematic encoder `u -> (u, p(u))` with `r` parity symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FccScheme {
    field: Arc<Field>,
    k: usize,
    r: usize,
    kind: SchemeKind,
}

impl FccScheme {
    pub fn linear(g: GeneratorMatrix) -> Result<Self> {
        if !g.is_systematic() {
            return Err(Error::NotSystematic);
        }
        Ok(FccScheme {
            field: g.field().clone(),
            k: g.k(),
            r: g.n() - g.k(),
            kind: SchemeKind::Linear(g),
        })
    }

    pub fn table(field: Arc<Field>, k: usize, r: usize, parities: Vec<Vec<Elem>>) -> Result<Self> {
        let len = table_len(field.order(), k)?;
        if parities.len() as u64 != len {
            return Err(Error::DimensionError {
                expected: len as usize,
                got: parities.len(),
            });
        }
        for p in &parities {
            check_len(p, r)?;
            for &s in p {
                field.check(s)?;
            }
        }
        Ok(FccScheme {
            field,
            k,
            r,
            kind: SchemeKind::Table(parities),
        })
    }

    /// The uncoded map `c(u) = u`.
    pub fn uncoded(field: Arc<Field>, k: usize) -> Result<Self> {
        let len = table_len(field.order(), k)?;
        Self::table(field, k, 0, vec![Vec::new(); len as usize])
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.k + self.r
    }

    pub fn kind(&self) -> &SchemeKind {
        &self.kind
    }

    fn parity_unchecked(&self, u: &[Elem]) -> Vec<Elem> {
        match &self.kind {
            SchemeKind::Linear(g) => g.encode_unchecked(u)[self.k..].to_vec(),
            SchemeKind::Table(t) => t[message_rank(self.q(), u) as usize].clone(),
        }
    }

    pub fn parity(&self, u: &[Elem]) -> Result<Vec<Elem>> {
        self.check_message(u)?;
        Ok(self.parity_unchecked(u))
    }

    fn check_message(&self, u: &[Elem]) -> Result<()> {
        check_len(u, self.k)?;
        for &s in u {
            self.field.check(s)?;
        }
        Ok(())
    }

    /// `(u, p(u))`.
    pub fn encode(&self, u: &[Elem]) -> Result<Vec<Elem>> {
        self.check_message(u)?;
        let mut c = u.to_vec();
        c.extend(self.parity_unchecked(u));
        Ok(c)
    }

    /// Every codeword, indexed by message rank.
    pub fn codebook(&self, budget: u128) -> Result<Vec<Vec<Elem>>> {
        let total = message_count(self.q(), self.k).ok_or(Error::BudgetExceeded {
            needed: u128::MAX,
            budget,
        })?;
        check_budget(u128::from(total), budget)?;
        Ok((0..total)
            .map(|r| {
                let u = rank_to_message(self.q(), self.k, r);
                let mut c = u.clone();
                c.extend(self.parity_unchecked(&u));
                c
            })
            .collect())
    }

    /// Same encoder with every parity stored explicitly.
    pub fn to_table(&self, budget: u128) -> Result<FccScheme> {
        let parities = self
            .codebook(budget)?
            .into_iter()
            .map(|c| c[self.k..].to_vec())
            .collect();
        FccScheme::table(self.field.clone(), self.k, self.r, parities)
    }
}

fn check_compatible(scheme: &FccScheme, f: &FunctionTable) -> Result<()> {
    if scheme.q() != f.q() || scheme.k() != f.k() {
        return Err(Error::InvalidParameter(format!(
            "scheme is over (q={}, k={}) but function is over (q={}, k={})",
            scheme.q(),
            scheme.k(),
            f.q(),
            f.k()
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub u: Vec<Elem>,
    pub v: Vec<Elem>,
    pub distance: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationResult {
    /// First failing pair in lexicographic pair order.
    pub violation: Option<Violation>,
    /// Pairs with different labels that were examined.
    pub pairs_checked: u64,
}

impl VerificationResult {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks that every pair with `f(u) != f(v)` has codeword distance `>= 2t + 1`.
pub fn verify_fcc(
    scheme: &FccScheme,
    f: &FunctionTable,
    t: usize,
    budget: u128,
) -> Result<VerificationResult> {
    check_compatible(scheme, f)?;
    let book = scheme.codebook(budget)?;
    let need = 2 * t + 1;
    let mut pairs_checked = 0;
    for i in 0..book.len() {
        for j in i + 1..book.len() {
            if f.values[i] == f.values[j] {
                continue;
            }
            pairs_checked += 1;
            let d = hamming_distance(&book[i], &book[j]);
            if d < need {
                return Ok(VerificationResult {
                    violation: Some(Violation {
                        u: book[i][..scheme.k].to_vec(),
                        v: book[j][..scheme.k].to_vec(),
                        distance: d,
                    }),
                    pairs_checked,
                });
            }
        }
    }
    Ok(VerificationResult {
        violation: None,
        pairs_checked,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DecodeMode {
    /// Fail with [`Error::BeyondRadius`] when no codeword is within `t`.
    #[default]
    Strict,
    BestEffort,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeOutcome {
    pub label: u64,
    /// Rank of the nearest message (ties go to the lowest rank).
    pub message_rank: u64,
    pub distance: usize,
    pub within_radius: bool,
}

/// Nearest-codeword decoder over a precomputed codebook.
#[derive(Debug, Clone)]
pub struct Decoder<'a> {
    scheme: &'a FccScheme,
    f: &'a FunctionTable,
    t: usize,
    book: Vec<Vec<Elem>>,
}

impl<'a> Decoder<'a> {
    pub fn new(
        scheme: &'a FccScheme,
        f: &'a FunctionTable,
        t: usize,
        budget: u128,
    ) -> Result<Self> {
        check_compatible(scheme, f)?;
        let book = scheme.codebook(budget)?;
        Ok(Decoder { scheme, f, t, book })
    }

    pub fn decode(&self, y: &[Elem], mode: DecodeMode) -> Result<DecodeOutcome> {
        check_len(y, self.scheme.n())?;
        for &s in y {
            self.scheme.field.check(s)?;
        }
        let (rank, distance) = self
            .book
            .iter()
            .enumerate()
            .map(|(i, c)| (i, hamming_distance(c, y)))
            .min_by_key(|&(i, d)| (d, i))
            .expect("codebook is never empty");
        let within_radius = distance <= self.t;
        if !within_radius && mode == DecodeMode::Strict {
            return Err(Error::BeyondRadius {
                distance,
                t: self.t,
            });
        }
        Ok(DecodeOutcome {
            label: self.f.values[rank],
            message_rank: rank as u64,
            distance,
            within_radius,
        })
    }
}

/// Recovers `f(u)` from a received word by exhaustive nearest-codeword search.
pub fn fcc_decode(
    scheme: &FccScheme,
    f: &FunctionTable,
    t: usize,
    y: &[Elem],
    mode: DecodeMode,
    budget: u128,
) -> Result<DecodeOutcome> {
    Decoder::new(scheme, f, t, budget)?.decode(y, mode)
}

/// First pair `(u, v)` at distance 1 with `f(u) != f(v)`, scanning `u` in
/// (weight, lex) order and its neighbours in rank order. `None` iff `f` is
/// constant.
pub fn find_critical_pair(
    f: &FunctionTable,
    budget: u128,
) -> Result<Option<(Vec<Elem>, Vec<Elem>)>> {
    let (q, k) = (f.q, f.k);
    check_budget(f.values.len() as u128, budget)?;
    for rank in weight_lex_order(q, k) {
        let u = rank_to_message(q, k, rank);
        let mut neighbours: Vec<u64> = Vec::with_capacity(k * (q as usize - 1));
        for pos in 0..k {
            for s in 0..q {
                if s != u[pos].0 {
                    let mut v = u.clone();
                    v[pos] = Elem(s);
                    neighbours.push(message_rank(q, &v));
                }
            }
        }
        neighbours.sort_unstable();
        if let Some(&nb) = neighbours.iter().find(|&&nb| f.value(nb) != f.value(rank)) {
            return Ok(Some((u, rank_to_message(q, k, nb))));
        }
    }
    Ok(None)
}
