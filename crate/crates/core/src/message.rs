//! Message vectors over F_q and their lexicographic ranks.
//!
//! Rank order is lexicographic with the leftmost coordinate most significant,
//! so the rank of `(u_1, ..., u_k)` is the base-q numeral `u_1 u_2 ... u_k`.

use crate::error::{Error, Result};
use crate::gf::Elem;

/// Number of messages `q^k`, or `None` on overflow.
pub fn message_count(q: u32, k: usize) -> Option<u64> {
    u64::from(q).checked_pow(u32::try_from(k).ok()?)
}

pub fn rank_to_message(q: u32, k: usize, mut rank: u64) -> Vec<Elem> {
    let mut out = vec![Elem::ZERO; k];
    for slot in out.iter_mut().rev() {
        *slot = Elem((rank % u64::from(q)) as u32);
        rank /= u64::from(q);
    }
    out
}

pub fn message_rank(q: u32, u: &[Elem]) -> u64 {
    u.iter()
        .fold(0, |acc, s| acc * u64::from(q) + u64::from(s.0))
}

pub fn weight(v: &[Elem]) -> usize {
    v.iter().filter(|s| !s.is_zero()).count()
}

pub fn hamming_distance(a: &[Elem], b: &[Elem]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// All ranks sorted by (Hamming weight, rank).
pub fn weight_lex_order(q: u32, k: usize) -> Vec<u64> {
    let total = message_count(q, k).expect("message space fits in u64");
    let mut ranks: Vec<u64> = (0..total).collect();
    ranks.sort_by_key(|&r| (weight(&rank_to_message(q, k, r)), r));
    ranks
}

/// Guards exhaustive loops over `count` items.
pub fn check_budget(count: u128, budget: u128) -> Result<()> {
    if count > budget {
        Err(Error::BudgetExceeded {
            needed: count,
            budget,
        })
    } else {
        Ok(())
    }
}

pub fn check_len(v: &[Elem], expected: usize) -> Result<()> {
    if v.len() == expected {
        Ok(())
    } else {
        Err(Error::DimensionError {
            expected,
            got: v.len(),
        })
    }
}
