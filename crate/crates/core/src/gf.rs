//! Finite fields GF(p^m) and polynomials over them.
//!
//! Elements are identified by their canonical index: the coefficient vector of
//! the element (as a polynomial in the class of `x`, lowest degree first) read
//! as a base-`p` numeral. The prime subfield therefore occupies indices
//! `0..p`, and `Elem(1)` is always the multiplicative identity.
//!
//! Multiplication goes through log/antilog tables built from the first
//! primitive element in canonical order; addition works digit-wise.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

/// A field element, stored as its canonical index in `0..q`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for Elem {
    fn from(v: u32) -> Self {
        Elem(v)
    }
}

/// Convenience conversion from raw indices.
pub fn elems(raw: &[u32]) -> Vec<Elem> {
    raw.iter().copied().map(Elem).collect()
}

/// The finite field GF(q), q = p^m.
#[derive(Clone)]
pub struct Field {
    order: u32,
    characteristic: u32,
    degree: u32,
    /// Monic irreducible modulus over F_p, lowest degree first, length m + 1.
    modulus: Vec<u32>,
    primitive: Elem,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("order", &self.order)
            .field("characteristic", &self.characteristic)
            .field("degree", &self.degree)
            .field("modulus", &self.modulus)
            .finish()
    }
}

/// Splits `q` into `(p, m)` with `q = p^m`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p as u32, m))
}

impl Field {
    /// Builds GF(q) with the canonical modulus: the monic irreducible of degree
    /// m whose coefficient vector, read as a base-p numeral, is smallest.
    pub fn new(q: u64) -> Result<Arc<Field>> {
        if q > MAX_ORDER {
            return Err(Error::InvalidOrder(q));
        }
        let (p, m) = prime_power(q).ok_or(Error::InvalidOrder(q))?;
        let modulus = canonical_modulus(p, m);
        let order = q as u32;
        let mut field = Field {
            order,
            characteristic: p,
            degree: m,
            modulus,
            primitive: Elem::ONE,
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.build_tables();
        Ok(Arc::new(field))
    }

    fn build_tables(&mut self) {
        let q = self.order;
        let group = q - 1;
        let primitive = (1..q)
            .map(Elem)
            .find(|&g| self.multiplicative_order_slow(g) == group)
            .expect("every finite field has a primitive element");
        let mut exp = vec![0u32; group as usize];
        let mut log = vec![0u32; q as usize];
        let mut acc = Elem::ONE;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = acc.0;
            log[acc.0 as usize] = i as u32;
            acc = self.mul_slow(acc, primitive);
        }
        self.primitive = primitive;
        self.exp = exp;
        self.log = log;
    }

    fn multiplicative_order_slow(&self, g: Elem) -> u32 {
        let mut acc = g;
        let mut n = 1;
        while acc != Elem::ONE {
            acc = self.mul_slow(acc, g);
            n += 1;
            if n > self.order {
                return 0;
            }
        }
        n
    }

    /// Schoolbook product modulo the field polynomial; used only to build tables.
    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        let p = self.characteristic;
        let m = self.degree as usize;
        let da = self.coeffs(a);
        let db = self.coeffs(b);
        let mut prod = vec![0u32; 2 * m];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        for top in (m..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            // subtract c * x^(top-m) * modulus; modulus is monic
            for (i, &mc) in self.modulus.iter().enumerate() {
                let idx = top - m + i;
                prod[idx] = (prod[idx] + p - (c * mc) % p) % p;
            }
        }
        prod.truncate(m);
        self.pack_coeffs(&prod)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Defining polynomial over F_p, lowest degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// First element of multiplicative order q - 1 in canonical order.
    pub fn primitive(&self) -> Elem {
        self.primitive
    }

    pub fn contains(&self, a: Elem) -> bool {
        a.0 < self.order
    }

    pub fn check(&self, a: Elem) -> Result<Elem> {
        if self.contains(a) {
            Ok(a)
        } else {
            Err(Error::NotInField {
                index: a.0,
                order: self.order,
            })
        }
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.order).map(Elem)
    }

    /// Coefficient vector of `a` over F_p, lowest degree first, length m.
    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        let p = self.characteristic;
        let mut v = a.0;
        (0..self.degree)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        if coeffs.len() != self.degree as usize {
            return Err(Error::DimensionError {
                expected: self.degree as usize,
                got: coeffs.len(),
            });
        }
        if let Some(&bad) = coeffs.iter().find(|&&c| c >= self.characteristic) {
            return Err(Error::NotInField {
                index: bad,
                order: self.characteristic,
            });
        }
        Ok(self.pack_coeffs(coeffs))
    }

    fn pack_coeffs(&self, coeffs: &[u32]) -> Elem {
        Elem(
            coeffs
                .iter()
                .rev()
                .fold(0u32, |acc, &c| acc * self.characteristic + c),
        )
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.characteristic;
        if p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if self.degree == 1 {
            return Elem((a.0 + b.0) % p);
        }
        let (mut x, mut y) = (a.0, b.0);
        let (mut out, mut place) = (0, 1);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        Elem(out)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.characteristic;
        if p == 2 {
            return a;
        }
        let mut x = a.0;
        let (mut out, mut place) = (0, 1);
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        Elem(out)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        let group = self.order - 1;
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        Elem(self.exp[(s % group) as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let group = self.order - 1;
        let l = self.log[a.0 as usize];
        Ok(Elem(self.exp[((group - l) % group) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let group = u64::from(self.order - 1);
        let l = u64::from(self.log[a.0 as usize]);
        Elem(self.exp[((l * (e % group)) % group) as usize])
    }

    /// `primitive^e`.
    pub fn alpha_pow(&self, e: u64) -> Elem {
        let group = u64::from(self.order - 1);
        Elem(self.exp[(e % group) as usize])
    }
}

/// Inverse of `a` in the field; shorthand used by callers holding an `Arc<Field>`.
pub fn elem_inv(field: &Field, a: Elem) -> Result<Elem> {
    field.check(a)?;
    field.inv(a)
}

// --- polynomials over the prime field, used to pick the modulus ---

fn fp_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_inv(a: u32, p: u32) -> u32 {
    // Fermat; p is prime
    let (mut base, mut e, mut acc) = (u64::from(a), u64::from(p - 2), 1u64);
    let p = u64::from(p);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc as u32
}

fn fp_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut r = num.to_vec();
    fp_trim(&mut r);
    let dd = den.len() - 1;
    let lead_inv = fp_inv(den[dd], p);
    while r.len() > dd {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        for (i, &d) in den.iter().enumerate() {
            let idx = top - dd + i;
            r[idx] = (r[idx] + p - (c * d) % p) % p;
        }
        fp_trim(&mut r);
    }
    r
}

/// Monic polynomial of degree `deg` whose lower coefficients encode `v` in base p.
fn monic_from_index(v: u32, deg: u32, p: u32) -> Vec<u32> {
    let mut x = v;
    let mut out: Vec<u32> = (0..deg)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect();
    out.push(1);
    out
}

fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let m = (poly.len() - 1) as u32;
    for d in 1..=m / 2 {
        for v in 0..p.pow(d) {
            let divisor = monic_from_index(v, d, p);
            if fp_rem(poly, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn canonical_modulus(p: u32, m: u32) -> Vec<u32> {
    (0..p.pow(m))
        .map(|v| monic_from_index(v, m, p))
        .find(|cand| is_irreducible(cand, p))
        .expect("irreducible polynomials exist in every degree")
}

// --- polynomials over GF(q) ---

/// Polynomial over a [`Field`], coefficients lowest degree first with no
/// trailing zeros. The zero polynomial has no coefficients and no degree.
#[derive(Clone)]
pub struct Polynomial {
    field: Arc<Field>,
    coeffs: Vec<Elem>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.coeffs == other.coeffs
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial(GF({}), {})", self.field.order, self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c.0) {
                (0, v) => write!(f, "{v}")?,
                (1, 1) => write!(f, "x")?,
                (1, v) => write!(f, "{v}x")?,
                (e, 1) => write!(f, "x^{e}")?,
                (e, v) => write!(f, "{v}x^{e}")?,
            }
        }
        Ok(())
    }
}

impl Polynomial {
    pub fn new(field: Arc<Field>, mut coeffs: Vec<Elem>) -> Result<Self> {
        for &c in &coeffs {
            field.check(c)?;
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Ok(Polynomial { field, coeffs })
    }

    pub fn zero(field: Arc<Field>) -> Self {
        Polynomial {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(field: Arc<Field>, c: Elem) -> Result<Self> {
        Self::new(field, vec![c])
    }

    /// `x - root`.
    pub fn linear_factor(field: Arc<Field>, root: Elem) -> Result<Self> {
        let neg = field.neg(field.check(root)?);
        Self::new(field, vec![neg, Elem::ONE])
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    fn same_field(&self, other: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, x: Elem) -> Result<Elem> {
        let f = &self.field;
        f.check(x)?;
        Ok(self
            .coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c)))
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_field(other)?;
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| f.add(self.coeff(i), other.coeff(i)))
            .collect();
        Polynomial::new(self.field.clone(), coeffs)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_field(other)?;
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| f.sub(self.coeff(i), other.coeff(i)))
            .collect();
        Polynomial::new(self.field.clone(), coeffs)
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(self.field.clone()));
        }
        let f = &self.field;
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Polynomial::new(self.field.clone(), out)
    }

    pub fn scale(&self, c: Elem) -> Result<Polynomial> {
        let f = &self.field;
        f.check(c)?;
        let coeffs = self.coeffs.iter().map(|&a| f.mul(a, c)).collect();
        Polynomial::new(self.field.clone(), coeffs)
    }

    /// Euclidean division: `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.same_field(divisor)?;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let lead_inv = f.inv(divisor.coeffs[dd])?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Elem::ZERO; rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = f.mul(rem[top], lead_inv);
            quot[top - dd] = c;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                let idx = top - dd + i;
                rem[idx] = f.sub(rem[idx], f.mul(c, d));
            }
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        Ok((
            Polynomial::new(self.field.clone(), quot)?,
            Polynomial::new(self.field.clone(), rem)?,
        ))
    }

    /// Coefficients as plain integers when they all lie in the prime subfield.
    pub fn prime_coeffs(&self) -> Option<Vec<u32>> {
        let p = self.field.characteristic;
        self.coeffs
            .iter()
            .map(|c| (c.0 < p).then_some(c.0))
            .collect()
    }
}

/// Unique polynomial of degree below `points.len()` through every point.
pub fn lagrange_interpolate(field: &Arc<Field>, points: &[(Elem, Elem)]) -> Result<Polynomial> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    for (i, &(x, y)) in points.iter().enumerate() {
        field.check(x)?;
        field.check(y)?;
        if points[..i].iter().any(|&(px, _)| px == x) {
            return Err(Error::DuplicateNode(x.0));
        }
    }
    let f = field.as_ref();
    let mut acc = Polynomial::zero(field.clone());
    for (i, &(xi, yi)) in points.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = Polynomial::constant(field.clone(), Elem::ONE)?;
        let mut denom = Elem::ONE;
        for (j, &(xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis.mul(&Polynomial::linear_factor(field.clone(), xj)?)?;
            denom = f.mul(denom, f.sub(xi, xj));
        }
        acc = acc.add(&basis.scale(f.div(yi, denom)?)?)?;
    }
    Ok(acc)
}

/// Minimal polynomial of `beta` over the prime subfield F_p, as the product
/// of `(x - c)` over the Frobenius orbit of `beta`.
pub fn minimal_poly(field: &Arc<Field>, beta: Elem, subfield_char: u32) -> Result<Polynomial> {
    field.check(beta)?;
    if subfield_char != field.characteristic {
        return Err(Error::FieldMismatch);
    }
    let p = u64::from(field.characteristic);
    let mut poly = Polynomial::constant(field.clone(), Elem::ONE)?;
    let mut conj = beta;
    loop {
        poly = poly.mul(&Polynomial::linear_factor(field.clone(), conj)?)?;
        conj = field.pow(conj, p);
        if conj == beta {
            break;
        }
    }
    Ok(poly)
}
