//! Closed-form and sphere-packing redundancy bounds.
//!
//! Logarithms are base 2 throughout. Combinatorial quantities use exact
//! big-integer arithmetic; only the binary upper bound is real-valued.

use std::f64::consts::LOG2_E;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::constructions::bch_systematic;
use crate::error::{Error, Result};
use crate::gf::prime_power;

/// `2t` for non-constant functions, 0 for constant ones.
pub fn lower_bound(image_size: usize, t: usize) -> usize {
    if image_size <= 1 {
        0
    } else {
        2 * t
    }
}

/// `t log(2k) / (1 - (t/k) log e)`, defined for `k >= 2` and `k > t log e`.
pub fn upper_bound_binary(k: usize, t: usize) -> Result<f64> {
    let (kf, tf) = (k as f64, t as f64);
    if k < 2 || kf <= tf * LOG2_E {
        return Err(Error::BoundUndefined { k, t });
    }
    Ok(tf * (2.0 * kf).log2() / (1.0 - tf / kf * LOG2_E))
}

/// `floor(t log(n + 1))`, computed exactly as the bit length of `(n+1)^t` minus one.
pub fn bch_redundancy_bound(n: usize, t: usize) -> usize {
    let v = BigUint::from(n as u64 + 1).pow(t as u32);
    (v.bits() - 1) as usize
}

/// Volume of a radius-`t` Hamming ball in `F_q^n`.
pub fn ball_volume(q: u32, n: usize, t: usize) -> BigUint {
    let mut total = BigUint::one();
    let mut binom = BigUint::one();
    let mut power = BigUint::one();
    for j in 1..=t.min(n) {
        binom = binom * BigUint::from((n - j + 1) as u64) / BigUint::from(j as u64);
        power *= BigUint::from(q - 1);
        total += &binom * &power;
    }
    total
}

/// Smallest `r` with `q^r >= sum_{j<=t} C(k+r, j) (q-1)^j`.
pub fn sphere_packing_min_r(q: u32, k: usize, t: usize) -> usize {
    let mut r = 0;
    loop {
        if BigUint::from(q).pow(r as u32) >= ball_volume(q, k + r, t) {
            return r;
        }
        r += 1;
    }
}

/// Whether `q >= k + 2t`, the regime where `r_f(k, t) = 2t` is attained.
pub fn mds_equality(q: u64, k: usize, t: usize) -> Result<bool> {
    prime_power(q).ok_or(Error::InvalidOrder(q))?;
    Ok(q >= (k + 2 * t) as u64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub q: u32,
    pub k: usize,
    pub t: usize,
    pub image_size: usize,
    pub lower: usize,
    pub upper_binary: Option<f64>,
    /// `ceil(upper_binary)`.
    pub upper_ceiling: Option<usize>,
    /// The binary upper bound is only proven for q = 2.
    pub upper_conjectured: bool,
    pub bch_constructive: Option<usize>,
    pub sphere_packing_min_r: usize,
    pub mds_equality: bool,
}

impl BoundReport {
    pub fn compute(q: u32, k: usize, t: usize, image_size: usize) -> Result<Self> {
        let mds = mds_equality(u64::from(q), k, t)?;
        let upper_binary = upper_bound_binary(k, t).ok();
        let bch_constructive = if q == 2 && k >= 1 && t >= 1 {
            bch_systematic(k, t).ok().map(|rep| rep.r)
        } else {
            None
        };
        Ok(BoundReport {
            q,
            k,
            t,
            image_size,
            lower: lower_bound(image_size, t),
            upper_binary,
            upper_ceiling: upper_binary.map(|u| u.ceil() as usize),
            upper_conjectured: q != 2,
            bch_constructive,
            sphere_packing_min_r: sphere_packing_min_r(q, k, t),
            mds_equality: mds,
        })
    }

    pub const CSV_HEADER: &'static str =
        "q,k,t,image_size,lower,upper_binary,upper_ceiling,upper_status,bch_r,sphere_packing_r,mds_equality";

    pub fn csv_row(&self) -> String {
        let opt = |v: Option<usize>| v.map_or_else(|| "undef".to_string(), |v| v.to_string());
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.q,
            self.k,
            self.t,
            self.image_size,
            self.lower,
            self.upper_binary
                .map_or_else(|| "undef".to_string(), |u| format!("{u:.9}")),
            opt(self.upper_ceiling),
            self.upper_status(),
            opt(self.bch_constructive),
            self.sphere_packing_min_r,
            self.mds_equality
        )
    }

    fn upper_status(&self) -> &'static str {
        match (self.upper_binary, self.upper_conjectured) {
            (None, _) => "undef",
            (Some(_), false) => "proven",
            (Some(_), true) => "conjectured",
        }
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<(&str, String)> = vec![
            ("q", self.q.to_string()),
            ("k", self.k.to_string()),
            ("t", self.t.to_string()),
            ("image size", self.image_size.to_string()),
            ("lower bound", self.lower.to_string()),
            (
                "binary upper bound",
                match self.upper_binary {
                    Some(u) => format!("{u:.9} ({})", self.upper_status()),
                    None => "undefined".to_string(),
                },
            ),
            (
                "BCH redundancy",
                self.bch_constructive
                    .map_or_else(|| "n/a".to_string(), |r| r.to_string()),
            ),
            (
                "sphere-packing min r",
                self.sphere_packing_min_r.to_string(),
            ),
            ("q >= k + 2t", self.mds_equality.to_string()),
        ];
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (key, value) in rows {
            writeln!(f, "{key:<width$}  {value}")?;
        }
        Ok(())
    }
}
