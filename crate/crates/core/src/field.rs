//! Finite fields of odd characteristic and the quadratic extension F_q ⊂ F_{q²}.
//!
//! Elements are stored as their coordinate index: the coordinates
//! `(c_0, …, c_{n-1})` over the power basis of the modulus encode as
//! `c_0 + c_1 p + … + c_{n-1} p^{n-1}`. Multiplication and addition go
//! through discrete-log and Zech-log tables, so every field is capped in
//! size (see [`MAX_TABLE_FIELD`]).
//!
//! The modulus of `F_{p^n}` is canonical: the least monic irreducible of
//! degree `n` when coefficient tuples `(c_0, …, c_{n-1})` are compared
//! lexicographically with `c_0` most significant. Two builds therefore agree
//! on every element index.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bound on `q²` for user-facing fields.
pub const DEFAULT_EXT_CAP: u64 = 1 << 16;

/// Hard bound on the size of any single field (tables are linear in it).
pub const MAX_TABLE_FIELD: u64 = 1 << 24;

/// Fields at most this large also answer `sqrt` by exhaustive search in tests.
pub const EXHAUSTIVE_SQRT_LIMIT: u32 = 1 << 12;

/// A field element, identified by its coordinate index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Self-describing field parameters; embedded in every report.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub n: u32,
    /// Monic modulus over F_p, coefficients low to high (length `n + 1`).
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn size(&self) -> u64 {
        (self.p as u64).pow(self.n)
    }
}

struct Inner {
    spec: FieldSpec,
    size: u32,
    pows: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    // zech[m] = log(1 + g^m), u32::MAX when 1 + g^m = 0
    zech: Vec<u32>,
    generator: Fe,
}

const NO_LOG: u32 = u32::MAX;

/// A finite field `F_{p^n}`, p odd. Cheap to clone.
#[derive(Clone)]
pub struct FiniteField(Arc<Inner>);

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.size)
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Dense polynomials over the prime field, only what modulus selection needs.
mod fp {
    pub fn trim(v: &mut Vec<u32>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let inv_lead = inv(m[dm], p);
        while r.len() > dm {
            let top = r.len() - 1;
            let c = (r[top] as u64 * inv_lead as u64 % p as u64) as u32;
            let shift = top - dm;
            for (j, &mj) in m.iter().enumerate() {
                let sub = (c as u64 * mj as u64 % p as u64) as u32;
                r[shift + j] = (r[shift + j] + p - sub) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|v| v as u32).collect();
        rem(&prod, m, p)
    }

    pub fn pow_mod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut acc = rem(&[1], m, p);
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(&acc, &b, m, p);
            }
            b = mul_mod(&b, &b, m, p);
            e >>= 1;
        }
        acc
    }

    pub fn inv(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let mut b = a as u64 % p as u64;
        let mut e = p as u64 - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r as u32
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let mut out: Vec<u32> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }

    /// Rabin's test for a monic polynomial of degree `n ≥ 1`.
    pub fn is_irreducible(m: &[u32], p: u32) -> bool {
        let n = m.len() - 1;
        if n == 1 {
            return true;
        }
        let x = vec![0, 1];
        // frob[j] = x^(p^j) mod m
        let mut frob = vec![rem(&x, m, p)];
        for _ in 0..n {
            let next = pow_mod(frob.last().unwrap(), p as u64, m, p);
            frob.push(next);
        }
        if frob[n] != rem(&x, m, p) {
            return false;
        }
        for r in super::prime_factors(n as u64) {
            let j = n / r as usize;
            let g = gcd(&sub(&frob[j], &x, p), m, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

/// Least monic irreducible of degree `n` over F_p in the canonical order.
pub fn canonical_modulus(p: u32, n: u32) -> Vec<u32> {
    let n = n as usize;
    // digits[0] = c_0 is the most significant digit of the counter
    let mut digits = vec![0u32; n];
    loop {
        let mut m = digits.clone();
        m.push(1);
        if fp::is_irreducible(&m, p) {
            return m;
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                unreachable!("irreducible polynomials exist in every degree");
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < p {
                break;
            }
            digits[pos] = 0;
        }
    }
}

impl FiniteField {
    /// Builds `F_{p^n}` with the canonical modulus, rejecting fields above `cap`.
    pub fn new(p: u32, n: u32, cap: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::InvalidField("characteristic 2 is not supported".into()));
        }
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if n < 1 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let cap = cap.min(MAX_TABLE_FIELD);
        let size = (p as u64).checked_pow(n).filter(|&s| s <= cap);
        let Some(size) = size else {
            return Err(Error::FieldTooLarge {
                size: (p as u64).saturating_pow(n),
                cap,
            });
        };
        let size = size as u32;
        let modulus = canonical_modulus(p, n);
        let mut pows = Vec::with_capacity(n as usize);
        let mut acc = 1u32;
        for _ in 0..n {
            pows.push(acc);
            acc = acc.wrapping_mul(p);
        }
        let spec = FieldSpec { p, n, modulus };

        let to_digits = |x: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(n as usize);
            let mut x = x;
            for _ in 0..n {
                v.push(x % p);
                x /= p;
            }
            fp::trim(&mut v);
            v
        };
        let from_digits = |v: &[u32]| -> u32 { v.iter().zip(&pows).map(|(d, w)| d * w).sum() };
        let slow_pow = |x: u32, e: u64| -> u32 {
            from_digits(&fp::pow_mod(&to_digits(x), e, &spec.modulus, p))
        };

        let order = size as u64 - 1;
        let factors = prime_factors(order);
        let generator = (1..size)
            .find(|&g| factors.iter().all(|&r| slow_pow(g, order / r) != 1))
            .expect("multiplicative group is cyclic");

        let g_digits = to_digits(generator);
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![NO_LOG; size as usize];
        let mut cur = vec![1u32];
        for i in 0..order as u32 {
            let idx = from_digits(&cur);
            exp.push(idx);
            log[idx as usize] = i;
            cur = fp::mul_mod(&cur, &g_digits, &spec.modulus, p);
        }

        let digit_add = |a: u32, b: u32| -> u32 {
            let (mut x, mut y, mut r) = (a, b, 0u32);
            for w in &pows {
                r += ((x % p + y % p) % p) * w;
                x /= p;
                y /= p;
            }
            r
        };
        let zech = if n > 1 {
            exp.iter()
                .map(|&v| {
                    let s = digit_add(v, 1);
                    log[s as usize]
                })
                .collect()
        } else {
            Vec::new()
        };

        Ok(FiniteField(Arc::new(Inner {
            spec,
            size,
            pows,
            exp,
            log,
            zech,
            generator: Fe(generator),
        })))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    /// Number of elements q.
    #[inline]
    pub fn size(&self) -> u32 {
        self.0.size
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.0.spec.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.spec.n
    }

    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }

    pub fn one(&self) -> Fe {
        Fe::ONE
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, c: i64) -> Fe {
        let p = self.0.spec.p as i64;
        Fe(c.rem_euclid(p) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.0.size).map(Fe)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Fe> {
        (1..self.0.size).map(Fe)
    }

    pub fn contains(&self, x: Fe) -> bool {
        x.0 < self.0.size
    }

    /// Coordinates over the power basis, low degree first.
    pub fn coords(&self, x: Fe) -> Vec<u32> {
        let p = self.0.spec.p;
        let mut v = x.0;
        (0..self.0.spec.n)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    pub fn from_coords(&self, coords: &[u32]) -> Fe {
        let p = self.0.spec.p;
        Fe(coords
            .iter()
            .zip(&self.0.pows)
            .map(|(d, w)| (d % p) * w)
            .sum())
    }

    /// Least element of multiplicative order q − 1.
    pub fn generator(&self) -> Fe {
        self.0.generator
    }

    /// Discrete log to the base [`Self::generator`]; `None` for zero.
    #[inline]
    pub fn log(&self, x: Fe) -> Option<u32> {
        let l = self.0.log[x.0 as usize];
        (l != NO_LOG).then_some(l)
    }

    /// `generator^m`.
    #[inline]
    pub fn exp(&self, m: u64) -> Fe {
        let ord = self.0.size as u64 - 1;
        Fe(self.0.exp[(m % ord) as usize])
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let inner = &*self.0;
        if inner.spec.n == 1 {
            let s = a.0 + b.0;
            return Fe(if s >= inner.spec.p { s - inner.spec.p } else { s });
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let ord = inner.size - 1;
        let la = inner.log[a.0 as usize];
        let lb = inner.log[b.0 as usize];
        let diff = if lb >= la { lb - la } else { lb + ord - la };
        let z = inner.zech[diff as usize];
        if z == NO_LOG {
            return Fe::ZERO;
        }
        Fe(inner.exp[((la as u64 + z as u64) % ord as u64) as usize])
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        let inner = &*self.0;
        let p = inner.spec.p;
        if inner.spec.n == 1 {
            return Fe(if a.0 == 0 { 0 } else { p - a.0 });
        }
        let mut x = a.0;
        let mut r = 0;
        for w in &inner.pows {
            let d = x % p;
            x /= p;
            r += ((p - d) % p) * w;
        }
        Fe(r)
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        let inner = &*self.0;
        let ord = inner.size - 1;
        let s = inner.log[a.0 as usize] + inner.log[b.0 as usize];
        Fe(inner.exp[(if s >= ord { s - ord } else { s }) as usize])
    }

    /// Multiplicative inverse.
    ///
    /// Panics on zero.
    #[inline]
    pub fn inv(&self, a: Fe) -> Fe {
        let l = self.log(a).expect("inverse of zero");
        let ord = self.0.size - 1;
        Fe(self.0.exp[((ord - l) % ord) as usize])
    }

    #[inline]
    pub fn div(&self, a: Fe, b: Fe) -> Fe {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Fe, e: u128) -> Fe {
        if e == 0 {
            return Fe::ONE;
        }
        match self.log(a) {
            None => Fe::ZERO,
            Some(l) => {
                let ord = (self.0.size - 1) as u128;
                Fe(self.0.exp[((l as u128 * (e % ord)) % ord) as usize])
            }
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, a: Fe) -> u64 {
        let l = self.log(a).expect("order of zero") as u64;
        let ord = self.0.size as u64 - 1;
        ord / gcd_u64(l, ord)
    }

    /// True iff `a = y²` for some y; zero counts as a square.
    #[inline]
    pub fn is_square(&self, a: Fe) -> bool {
        match self.log(a) {
            None => true,
            Some(l) => l % 2 == 0,
        }
    }

    /// Quadratic character: 0, 1 or −1.
    #[inline]
    pub fn legendre(&self, a: Fe) -> i8 {
        match self.log(a) {
            None => 0,
            Some(l) if l % 2 == 0 => 1,
            Some(_) => -1,
        }
    }

    /// Square root by halving the discrete log; returns the smaller of ±y.
    pub fn sqrt(&self, a: Fe) -> Option<Fe> {
        let l = match self.log(a) {
            None => return Some(Fe::ZERO),
            Some(l) => l,
        };
        if l % 2 == 1 {
            return None;
        }
        let y = Fe(self.0.exp[(l / 2) as usize]);
        Some(y.min(self.neg(y)))
    }

    /// Square root by scanning the field; same canonical choice as [`Self::sqrt`].
    pub fn sqrt_exhaustive(&self, a: Fe) -> Option<Fe> {
        self.elements().find(|&y| self.mul(y, y) == a)
    }

    /// Least non-square of the field.
    pub fn least_non_square(&self) -> Fe {
        self.nonzero_elements()
            .find(|&x| !self.is_square(x))
            .expect("odd fields have non-squares")
    }
}

pub(crate) fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A field embedding `F_{p^m} → F_{p^n}` with `m | n`.
pub struct Embedding {
    small: FiniteField,
    big: FiniteField,
    image: Vec<Fe>,
    preimage: OnceLock<HashMap<Fe, Fe>>,
}

impl Embedding {
    /// Sends the modulus root of `small` to the least root of its modulus in `big`.
    pub fn new(small: &FiniteField, big: &FiniteField) -> Result<Self> {
        let (ps, ms) = (small.characteristic(), small.degree());
        let (pb, mb) = (big.characteristic(), big.degree());
        if ps != pb || mb % ms != 0 {
            return Err(Error::InvalidField(format!(
                "no embedding of {small:?} into {big:?}"
            )));
        }
        let image = if ms == 1 {
            small.elements().collect()
        } else {
            let modulus = &small.spec().modulus;
            let eval = |x: Fe| {
                modulus
                    .iter()
                    .rev()
                    .fold(Fe::ZERO, |acc, &c| big.add(big.mul(acc, x), Fe(c)))
            };
            let step = (big.size() as u64 - 1) / (small.size() as u64 - 1);
            let root = (0..small.size() as u64 - 1)
                .map(|j| big.exp(step * j))
                .filter(|&r| eval(r).is_zero())
                .min()
                .ok_or_else(|| Error::Internal("modulus has no root in the extension".into()))?;
            small
                .elements()
                .map(|x| {
                    small
                        .coords(x)
                        .iter()
                        .rev()
                        .fold(Fe::ZERO, |acc, &c| big.add(big.mul(acc, root), Fe(c)))
                })
                .collect()
        };
        Ok(Embedding {
            small: small.clone(),
            big: big.clone(),
            image,
            preimage: OnceLock::new(),
        })
    }

    pub fn small(&self) -> &FiniteField {
        &self.small
    }

    pub fn big(&self) -> &FiniteField {
        &self.big
    }

    #[inline]
    pub fn embed(&self, x: Fe) -> Fe {
        self.image[x.0 as usize]
    }

    /// Inverse of [`Self::embed`] on its image.
    pub fn project(&self, y: Fe) -> Option<Fe> {
        self.preimage
            .get_or_init(|| {
                self.image
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| (v, Fe(i as u32)))
                    .collect()
            })
            .get(&y)
            .copied()
    }
}

/// The pair F_q ⊂ F_{q²} with a fixed embedding.
pub struct Tower {
    base: FiniteField,
    ext: FiniteField,
    embedding: Embedding,
}

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tower({:?} ⊂ {:?})", self.base, self.ext)
    }
}

/// Builds F_q (q = p^n) and F_{q²} with the default size cap on q².
pub fn make_field(p: u32, n: u32) -> Result<Tower> {
    make_field_with_cap(p, n, DEFAULT_EXT_CAP)
}

pub fn make_field_with_cap(p: u32, n: u32, cap: u64) -> Result<Tower> {
    if n < 1 {
        return Err(Error::InvalidField("extension degree must be at least 1".into()));
    }
    if p == 2 {
        return Err(Error::InvalidField("characteristic 2 is not supported".into()));
    }
    let q2 = (p as u64).checked_pow(2 * n).unwrap_or(u64::MAX);
    if q2 > cap {
        return Err(Error::FieldTooLarge { size: q2, cap });
    }
    let base = FiniteField::new(p, n, cap)?;
    let ext = FiniteField::new(p, 2 * n, cap)?;
    let embedding = Embedding::new(&base, &ext)?;
    Ok(Tower { base, ext, embedding })
}

impl Tower {
    pub fn base(&self) -> &FiniteField {
        &self.base
    }

    pub fn ext(&self) -> &FiniteField {
        &self.ext
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    /// q.
    pub fn q(&self) -> u32 {
        self.base.size()
    }

    #[inline]
    pub fn embed(&self, x: Fe) -> Fe {
        self.embedding.embed(x)
    }

    pub fn project(&self, y: Fe) -> Option<Fe> {
        self.embedding.project(y)
    }

    pub fn in_base(&self, y: Fe) -> bool {
        self.conj(y) == y
    }

    /// Frobenius `x ↦ x^q`.
    pub fn conj(&self, x: Fe) -> Fe {
        self.ext.pow(x, self.q() as u128)
    }

    /// `(x · x^q, x^q)`, the norm landing in F_q.
    pub fn norm_conj(&self, x: Fe) -> (Fe, Fe) {
        let c = self.conj(x);
        let nm = self.ext.mul(x, c);
        let nm = self.project(nm).expect("norm lies in the base field");
        (nm, c)
    }

    pub fn trace(&self, x: Fe) -> Fe {
        let t = self.ext.add(x, self.conj(x));
        self.project(t).expect("trace lies in the base field")
    }

    /// Least element of order q² − 1.
    pub fn ext_generator(&self) -> Fe {
        self.ext.generator()
    }
}

/// Least element of maximal multiplicative order.
pub fn multiplicative_generator(field: &FiniteField) -> Fe {
    field.generator()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u32, n: u32) -> FiniteField {
        FiniteField::new(p, n, MAX_TABLE_FIELD).unwrap()
    }

    #[test]
    fn prime_field_modulus_is_t() {
        let t = make_field(3, 1).unwrap();
        assert_eq!(t.base().spec().modulus, vec![0, 1]);
    }

    #[test]
    fn f9_modulus_is_least_irreducible_quadratic() {
        // enumerate monic quadratics over F_3 in canonical order, keep the rootless ones
        let mut expected = None;
        'outer: for c0 in 0..3u32 {
            for c1 in 0..3u32 {
                let has_root = (0..3u32).any(|x| (c0 + c1 * x + x * x) % 3 == 0);
                if !has_root {
                    expected = Some(vec![c0, c1, 1]);
                    break 'outer;
                }
            }
        }
        assert_eq!(field(3, 2).spec().modulus, expected.unwrap());
    }

    #[test]
    fn characteristic_two_rejected() {
        assert!(matches!(make_field(2, 1), Err(Error::InvalidField(_))));
        assert!(matches!(make_field(9, 1), Err(Error::InvalidField(_))));
        assert!(matches!(make_field(3, 0), Err(Error::InvalidField(_))));
        assert!(matches!(make_field(257, 1), Err(Error::FieldTooLarge { .. })));
    }

    #[test]
    fn squares_small_prime_fields() {
        let f3 = field(3, 1);
        assert!(f3.is_square(Fe(1)));
        assert!(!f3.is_square(Fe(2)));
        assert!(f3.is_square(Fe(0)));
        let f5 = field(5, 1);
        assert_eq!(f5.sqrt(Fe(1)), Some(Fe(1)));
        assert_eq!(f5.sqrt(Fe(4)), Some(Fe(2)));
        assert_eq!(f5.sqrt(Fe(2)), None);
    }

    #[test]
    fn generators_of_small_fields() {
        assert_eq!(multiplicative_generator(&field(3, 1)), Fe(2));
        assert_eq!(multiplicative_generator(&field(5, 1)), Fe(2));
        let f9 = field(3, 2);
        let g = f9.generator();
        let mut seen = std::collections::HashSet::new();
        let mut x = Fe::ONE;
        for _ in 0..8 {
            x = f9.mul(x, g);
            seen.insert(x);
        }
        assert_eq!(seen.len(), 8);
        assert_eq!(x, Fe::ONE);
    }

    #[test]
    fn euler_criterion_and_square_count() {
        for (p, n) in [(3, 1), (5, 1), (3, 2), (7, 1), (5, 2), (13, 1), (3, 3), (11, 1)] {
            let f = field(p, n);
            let q = f.size() as u128;
            let mut count = 0;
            for x in f.nonzero_elements() {
                let euler = f.pow(x, (q - 1) / 2) == Fe::ONE;
                assert_eq!(f.is_square(x), euler);
                if f.is_square(x) {
                    count += 1;
                }
            }
            assert_eq!(count as u128, (q - 1) / 2);
        }
    }

    #[test]
    fn sqrt_routes_agree() {
        for (p, n) in [(3, 1), (5, 1), (3, 2), (7, 1), (13, 1), (5, 2), (3, 4)] {
            let f = field(p, n);
            for x in f.elements() {
                assert_eq!(f.sqrt(x), f.sqrt_exhaustive(x), "F_{} x={x}", f.size());
                if let Some(y) = f.sqrt(x) {
                    assert_eq!(f.mul(y, y), x);
                }
            }
        }
    }

    #[test]
    fn table_arithmetic_matches_coordinates() {
        let f = field(5, 2);
        let m = &f.spec().modulus;
        for a in f.elements() {
            for b in f.elements() {
                let (ca, cb) = (f.coords(a), f.coords(b));
                let sum: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % 5).collect();
                assert_eq!(f.add(a, b), f.from_coords(&sum));
                // (a0 + a1 x)(b0 + b1 x) with x² = -(m0 + m1 x)
                let c0 = ca[0] * cb[0];
                let c1 = ca[0] * cb[1] + ca[1] * cb[0];
                let c2 = ca[1] * cb[1];
                let r0 = (c0 + c2 * (5 - m[0])) % 5;
                let r1 = (c1 + c2 * (5 - m[1])) % 5;
                assert_eq!(f.mul(a, b), f.from_coords(&[r0, r1]));
            }
        }
    }

    #[test]
    fn embedding_is_ring_morphism() {
        for (p, n) in [(3, 1), (3, 2), (5, 1), (7, 1), (5, 2)] {
            let t = make_field(p, n).unwrap();
            let (b, e) = (t.base(), t.ext());
            for x in b.elements() {
                for y in b.elements() {
                    assert_eq!(t.embed(b.add(x, y)), e.add(t.embed(x), t.embed(y)));
                    assert_eq!(t.embed(b.mul(x, y)), e.mul(t.embed(x), t.embed(y)));
                }
                assert_eq!(t.project(t.embed(x)), Some(x));
            }
        }
    }

    #[test]
    fn conjugation_fixes_exactly_base() {
        for (p, n) in [(3, 1), (3, 2), (5, 1), (7, 1)] {
            let t = make_field(p, n).unwrap();
            let mut fixed = 0;
            for x in t.ext().elements() {
                assert_eq!(t.conj(t.conj(x)), x);
                if t.conj(x) == x {
                    fixed += 1;
                    assert!(t.project(x).is_some());
                }
            }
            assert_eq!(fixed, t.q());
        }
    }

    #[test]
    fn norm_of_embedded_and_generator() {
        let t = make_field(3, 1).unwrap();
        for x in t.base().elements() {
            let (nm, c) = t.norm_conj(t.embed(x));
            assert_eq!(nm, t.base().mul(x, x));
            assert_eq!(c, t.embed(x));
        }
        let g = t.ext_generator();
        let (nm, _) = t.norm_conj(g);
        assert_eq!(t.base().order_of(nm), 2);
        assert_eq!(t.embed(nm), t.ext().pow(g, 4));
    }

    #[test]
    fn norm_multiplicative_exhaustive() {
        for (p, n) in [(3, 1), (5, 1), (7, 1), (3, 2)] {
            let t = make_field(p, n).unwrap();
            let e = t.ext();
            for x in e.elements() {
                for y in e.elements() {
                    let lhs = t.norm_conj(e.mul(x, y)).0;
                    let rhs = t.base().mul(t.norm_conj(x).0, t.norm_conj(y).0);
                    assert_eq!(lhs, rhs);
                }
                t.trace(x);
            }
        }
    }
}
