//! Concrete systematic encoders with known distance guarantees.

use std::fmt;
use std::sync::Arc;

use crate::codes::GeneratorMatrix;
use crate::error::{Error, Result};
use crate::fcc::FccScheme;
use crate::gf::{lagrange_interpolate, minimal_poly, Elem, Field};
use crate::message::message_count;

/// Default cap on the BCH extension degree m.
pub const DEFAULT_MAX_BCH_DEGREE: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    ReedSolomon,
    Bch,
    Or,
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Construction::ReedSolomon => "rs",
            Construction::Bch => "bch",
            Construction::Or => "or",
        })
    }
}

#[derive(Debug, Clone)]
pub struct ConstructionReport {
    pub construction: Construction,
    pub q: u32,
    pub k: usize,
    pub t: usize,
    pub n: usize,
    pub r: usize,
    /// Designed distance; `>= 2t + 1`.
    pub claimed_distance: usize,
    pub scheme: FccScheme,
    /// BCH only: extension degree m of GF(2^m).
    pub extension_degree: Option<u32>,
    /// BCH only: generator polynomial g(x) over F_2, lowest degree first.
    pub generator_poly: Option<Vec<u32>>,
}

impl ConstructionReport {
    pub fn generator(&self) -> Option<&GeneratorMatrix> {
        match self.scheme.kind() {
            crate::fcc::SchemeKind::Linear(g) => Some(g),
            crate::fcc::SchemeKind::Table(_) => None,
        }
    }
}

fn check_kt(k: usize, t: usize) -> Result<()> {
    if k == 0 || t == 0 {
        return Err(Error::InvalidParameter(format!(
            "need k >= 1 and t >= 1, got k = {k}, t = {t}"
        )));
    }
    Ok(())
}

/// Systematic `[k + 2t, k, 2t + 1]_q` Reed-Solomon code evaluated at the
/// first `k + 2t` field elements.
///
/// Row `i` of the parity block holds the values at the parity points of the
/// degree-`< k` polynomial that is 1 at `x_i` and 0 at the other message
/// points, so `u * [I | P]` evaluates the interpolant of `u` everywhere.
pub fn rs_systematic(q: u64, k: usize, t: usize) -> Result<ConstructionReport> {
    check_kt(k, t)?;
    let field = Field::new(q)?;
    let n = k + 2 * t;
    if n > field.order() as usize {
        return Err(Error::FieldTooSmall {
            q: field.order(),
            n,
        });
    }
    let points: Vec<Elem> = field.elements().take(n).collect();
    let parity = (0..k)
        .map(|i| {
            let nodes: Vec<(Elem, Elem)> = points[..k]
                .iter()
                .enumerate()
                .map(|(l, &x)| (x, if l == i { Elem::ONE } else { Elem::ZERO }))
                .collect();
            let basis = lagrange_interpolate(&field, &nodes)?;
            points[k..].iter().map(|&x| basis.eval(x)).collect()
        })
        .collect::<Result<Vec<Vec<Elem>>>>()?;
    let g = GeneratorMatrix::from_parity(field.clone(), &parity)?;
    Ok(ConstructionReport {
        construction: Construction::ReedSolomon,
        q: field.order(),
        k,
        t,
        n,
        r: 2 * t,
        claimed_distance: 2 * t + 1,
        scheme: FccScheme::linear(g)?,
        extension_degree: None,
        generator_poly: None,
    })
}

/// Smallest m with `2^m - 1 >= k + m t`.
pub fn bch_degree(k: usize, t: usize, max_m: u32) -> Result<u32> {
    (1..=max_m)
        .find(|&m| (1u64 << m) > (k + m as usize * t) as u64)
        .ok_or(Error::BudgetExceeded {
            needed: u128::from(max_m) + 1,
            budget: u128::from(max_m),
        })
}

/// Narrow-sense primitive BCH generator over F_2 with designed distance
/// `2t + 1`: the product of the distinct minimal polynomials of
/// `alpha^1 .. alpha^2t` in GF(2^m).
pub fn bch_generator_poly(m: u32, t: usize) -> Result<Vec<u32>> {
    let field = Field::new(1u64 << m)?;
    let length = (1usize << m) - 1;
    let mut covered = vec![false; length];
    let mut g = crate::gf::Polynomial::constant(field.clone(), Elem::ONE)?;
    for i in 1..=2 * t {
        let e = i % length;
        if covered[e] {
            continue;
        }
        let mut c = e;
        loop {
            covered[c] = true;
            c = c * 2 % length;
            if c == e {
                break;
            }
        }
        g = g.mul(&minimal_poly(&field, field.alpha_pow(e as u64), 2)?)?;
    }
    Ok(g.prime_coeffs()
        .expect("minimal polynomials have binary coefficients"))
}

/// `x^shift mod g` over F_2.
fn binary_monomial_rem(shift: usize, g: &[u32]) -> Vec<u32> {
    let r = g.len() - 1;
    let mut rem = vec![0u32; r.max(shift + 1)];
    rem[shift] = 1;
    for top in (r..rem.len()).rev() {
        if rem[top] == 1 {
            for (i, &gi) in g.iter().enumerate() {
                rem[top - r + i] ^= gi;
            }
        }
    }
    rem.truncate(r);
    rem.resize(r, 0);
    rem
}

pub fn bch_systematic(k: usize, t: usize) -> Result<ConstructionReport> {
    bch_systematic_capped(k, t, DEFAULT_MAX_BCH_DEGREE)
}

/// Shortened binary BCH code `[k + r, k, >= 2t + 1]`.
///
/// Message symbol `u_i` is the coefficient of `x^(r+i)` in the cyclic
/// codeword, so the high-order message positions of the length `2^m - 1`
/// code are the ones fixed to zero. Parity is `u(x) x^r mod g(x)`.
pub fn bch_systematic_capped(k: usize, t: usize, max_m: u32) -> Result<ConstructionReport> {
    check_kt(k, t)?;
    let m = bch_degree(k, t, max_m)?;
    let g = bch_generator_poly(m, t)?;
    let r = g.len() - 1;
    debug_assert!(k + r < 1 << m);
    let gf2: Arc<Field> = Field::new(2)?;
    let parity: Vec<Vec<Elem>> = (0..k)
        .map(|i| {
            binary_monomial_rem(r + i, &g)
                .into_iter()
                .map(Elem)
                .collect()
        })
        .collect();
    let gm = GeneratorMatrix::from_parity(gf2, &parity)?;
    Ok(ConstructionReport {
        construction: Construction::Bch,
        q: 2,
        k,
        t,
        n: k + r,
        r,
        claimed_distance: 2 * t + 1,
        scheme: FccScheme::linear(gm)?,
        extension_degree: Some(m),
        generator_poly: Some(g),
    })
}

/// Parity `0_{2t}` for the zero message and `1_{2t}` for every other one.
pub fn or_scheme(q: u64, k: usize, t: usize) -> Result<ConstructionReport> {
    check_kt(k, t)?;
    let field = Field::new(q)?;
    let count = message_count(field.order(), k).ok_or(Error::BudgetExceeded {
        needed: u128::MAX,
        budget: u128::from(crate::fcc::MAX_TABLE_LEN),
    })?;
    let r = 2 * t;
    let parities = (0..count)
        .map(|rank| vec![if rank == 0 { Elem::ZERO } else { Elem::ONE }; r])
        .collect();
    Ok(ConstructionReport {
        construction: Construction::Or,
        q: field.order(),
        k,
        t,
        n: k + r,
        r,
        claimed_distance: 2 * t + 1,
        scheme: FccScheme::table(field, k, r, parities)?,
        extension_degree: None,
        generator_poly: None,
    })
}
