//! Additive symbol-error channel: `y = c + e` over GF(q).

use num_traits::ToPrimitive;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::ball_volume;
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::message::check_len;

/// Default cap on the number of error vectors enumerated.
pub const DEFAULT_ERROR_BUDGET: u128 = 1_000_000;

/// Seeded generator used wherever the toolkit draws randomness.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Componentwise field sum.
pub fn add_vectors(field: &Field, a: &[Elem], b: &[Elem]) -> Result<Vec<Elem>> {
    check_len(b, a.len())?;
    Ok(a.iter().zip(b).map(|(&x, &y)| field.add(x, y)).collect())
}

/// Random error vector of length `n` and weight exactly `weight`: a uniform
/// support drawn without replacement, uniform nonzero values on it.
pub fn random_error<R: Rng + ?Sized>(
    field: &Field,
    n: usize,
    weight: usize,
    rng: &mut R,
) -> Result<Vec<Elem>> {
    if weight > n {
        return Err(Error::WeightTooLarge { weight, n });
    }
    let mut e = vec![Elem::ZERO; n];
    let mut support = sample(rng, n, weight).into_vec();
    support.sort_unstable();
    for pos in support {
        e[pos] = Elem(rng.random_range(1..field.order()));
    }
    Ok(e)
}

/// Adds a random weight-`weight` error to `codeword`.
pub fn inject_with<R: Rng + ?Sized>(
    field: &Field,
    codeword: &[Elem],
    weight: usize,
    rng: &mut R,
) -> Result<Vec<Elem>> {
    for &s in codeword {
        field.check(s)?;
    }
    let e = random_error(field, codeword.len(), weight, rng)?;
    add_vectors(field, codeword, &e)
}

/// [`inject_with`] driven by a fresh generator seeded with `seed`.
pub fn inject(field: &Field, codeword: &[Elem], weight: usize, seed: u64) -> Result<Vec<Elem>> {
    inject_with(field, codeword, weight, &mut seeded_rng(seed))
}

/// `sum_{j <= min(t, n)} C(n, j) (q - 1)^j`.
pub fn error_count(n: usize, t: usize, q: u32) -> u128 {
    ball_volume(q, n, t.min(n)).to_u128().unwrap_or(u128::MAX)
}

/// Every error vector of weight at most `min(t, n)`, ordered by weight,
/// then support (lexicographic), then values (lexicographic).
pub fn enumerate_errors(n: usize, t: usize, q: u32, budget: u128) -> Result<ErrorIter> {
    if q < 2 {
        return Err(Error::InvalidOrder(u64::from(q)));
    }
    let count = error_count(n, t, q);
    if count > budget {
        return Err(Error::BudgetExceeded {
            needed: count,
            budget,
        });
    }
    Ok(ErrorIter {
        n,
        max_weight: t.min(n),
        q,
        weight: 0,
        support: Vec::new(),
        values: Vec::new(),
        done: false,
    })
}

#[derive(Debug, Clone)]
pub struct ErrorIter {
    n: usize,
    max_weight: usize,
    q: u32,
    weight: usize,
    support: Vec<usize>,
    values: Vec<u32>,
    done: bool,
}

impl ErrorIter {
    fn current(&self) -> Vec<Elem> {
        let mut e = vec![Elem::ZERO; self.n];
        for (&pos, &v) in self.support.iter().zip(&self.values) {
            e[pos] = Elem(v);
        }
        e
    }

    fn advance_values(&mut self) -> bool {
        for v in self.values.iter_mut().rev() {
            if *v + 1 < self.q {
                *v += 1;
                return true;
            }
            *v = 1;
        }
        false
    }

    fn advance_support(&mut self) -> bool {
        let w = self.weight;
        for i in (0..w).rev() {
            if self.support[i] < self.n - w + i {
                self.support[i] += 1;
                for j in i + 1..w {
                    self.support[j] = self.support[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }

    fn step(&mut self) {
        if self.advance_values() || self.advance_support() {
            return;
        }
        self.weight += 1;
        if self.weight > self.max_weight {
            self.done = true;
            return;
        }
        self.support = (0..self.weight).collect();
        self.values = vec![1; self.weight];
    }
}

impl Iterator for ErrorIter {
    type Item = Vec<Elem>;

    fn next(&mut self) -> Option<Vec<Elem>> {
        if self.done {
            return None;
        }
        let out = self.current();
        self.step();
        Some(out)
    }
}
