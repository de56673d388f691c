//! Dense univariate polynomials over a [`FiniteField`]: ring operations,
//! irreducibility, Cantor–Zassenhaus factorization and root finding in F_{q²}.

use std::cmp::Ordering;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{prime_factors, Embedding, Fe, FiniteField, Tower};

/// Seed used by the equal-degree splitting step unless the caller picks one.
pub const DEFAULT_FACTOR_SEED: u64 = 0x5eed_f00d;

static FACTOR_SEED: AtomicU64 = AtomicU64::new(DEFAULT_FACTOR_SEED);

/// Seed used by [`PolyRing::factor`] for equal-degree splitting.
pub fn set_factor_seed(seed: u64) {
    FACTOR_SEED.store(seed, AtomicOrdering::Relaxed);
}

pub fn factor_seed() -> u64 {
    FACTOR_SEED.load(AtomicOrdering::Relaxed)
}

/// Coefficients low to high with no trailing zeros; the zero polynomial is empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Fe>,
}

impl Ord for Poly {
    /// Degree first, then coefficients with the constant term most significant.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Poly {
    pub fn new(mut coeffs: Vec<Fe>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![Fe::ONE] }
    }

    /// The indeterminate T.
    pub fn x() -> Self {
        Poly { coeffs: vec![Fe::ZERO, Fe::ONE] }
    }

    pub fn constant(c: Fe) -> Self {
        Poly::new(vec![c])
    }

    /// `c · T^d`.
    pub fn monomial(c: Fe, d: usize) -> Self {
        let mut v = vec![Fe::ZERO; d + 1];
        v[d] = c;
        Poly::new(v)
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with −1 standing in for −∞.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [Fe::ONE]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == Fe::ONE
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lead(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(Fe::ZERO)
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Fe> {
        self.coeffs
    }

    /// The i-th polynomial of degree < `len` in canonical order.
    pub fn from_index(mut idx: u64, len: usize, q: u32) -> Self {
        let mut v = vec![Fe::ZERO; len];
        for slot in v.iter_mut().rev() {
            *slot = Fe((idx % q as u64) as u32);
            idx /= q as u64;
        }
        Poly::new(v)
    }

    /// Text form `c0+c1T+c2T^2…`, coefficients as element indices.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}T"),
                _ => format!("{c}T^{i}"),
            })
            .collect::<Vec<_>>()
            .join("+")
    }

    /// Parses the text form; coefficients must be element indices below `q`.
    pub fn parse(text: &str, q: u32) -> Result<Self> {
        let bad = |reason: &str| Error::Parse {
            input: text.to_string(),
            reason: reason.to_string(),
        };
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(bad("empty input"));
        }
        let mut coeffs: Vec<u64> = Vec::new();
        for term in s.split('+') {
            if term.is_empty() {
                return Err(bad("empty term"));
            }
            let (num, power) = match term.find(['T', 't']) {
                None => (term, 0usize),
                Some(pos) => {
                    let rest = &term[pos + 1..];
                    let power = if rest.is_empty() {
                        1
                    } else if let Some(e) = rest.strip_prefix('^') {
                        e.parse::<usize>().map_err(|_| bad("bad exponent"))?
                    } else {
                        return Err(bad("expected '^' after T"));
                    };
                    (&term[..pos], power)
                }
            };
            let c = if num.is_empty() {
                1
            } else {
                num.parse::<u64>().map_err(|_| bad("bad coefficient"))?
            };
            if c >= q as u64 {
                return Err(bad(&format!("coefficient {c} is not an element of F_{q}")));
            }
            if power > 4096 {
                return Err(bad("exponent too large"));
            }
            if coeffs.len() <= power {
                coeffs.resize(power + 1, 0);
            }
            if coeffs[power] != 0 && c != 0 {
                return Err(bad("repeated power"));
            }
            coeffs[power] += c;
        }
        Ok(Poly::new(coeffs.into_iter().map(|c| Fe(c as u32)).collect()))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Irreducible factors with multiplicities, plus the leading unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Fe,
    pub factors: Vec<(Poly, u32)>,
}

/// `F[T]` for a finite field F.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    field: FiniteField,
}

impl PolyRing {
    pub fn new(field: FiniteField) -> Self {
        PolyRing { field }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.size()
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let f = &self.field;
        let n = a.coeffs.len().max(b.coeffs.len());
        Poly::new((0..n).map(|i| f.add(a.coeff(i), b.coeff(i))).collect())
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        let f = &self.field;
        let n = a.coeffs.len().max(b.coeffs.len());
        Poly::new((0..n).map(|i| f.sub(a.coeff(i), b.coeff(i))).collect())
    }

    pub fn neg(&self, a: &Poly) -> Poly {
        Poly::new(a.coeffs.iter().map(|&c| self.field.neg(c)).collect())
    }

    pub fn scale(&self, a: &Poly, c: Fe) -> Poly {
        Poly::new(a.coeffs.iter().map(|&x| self.field.mul(x, c)).collect())
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let f = &self.field;
        let mut out = vec![Fe::ZERO; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        Poly::new(out)
    }

    pub fn square(&self, a: &Poly) -> Poly {
        self.mul(a, a)
    }

    /// `(quotient, remainder)` with `deg r < deg b`.
    pub fn divmod(&self, a: &Poly, b: &Poly) -> Result<(Poly, Poly)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let mut r = a.coeffs.clone();
        if r.len() <= db {
            return Ok((Poly::zero(), a.clone()));
        }
        let inv_lead = f.inv(b.lead());
        let mut quo = vec![Fe::ZERO; r.len() - db];
        for top in (db..r.len()).rev() {
            let c = f.mul(r[top], inv_lead);
            if c.is_zero() {
                continue;
            }
            let shift = top - db;
            quo[shift] = c;
            for (j, &bj) in b.coeffs.iter().enumerate() {
                r[shift + j] = f.sub(r[shift + j], f.mul(c, bj));
            }
        }
        r.truncate(db);
        Ok((Poly::new(quo), Poly::new(r)))
    }

    pub fn rem(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        Ok(self.divmod(a, b)?.1)
    }

    /// Exact quotient; errors if `b` does not divide `a`.
    pub fn exact_div(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        let (q, r) = self.divmod(a, b)?;
        if !r.is_zero() {
            return Err(Error::Internal(format!("{b} does not divide {a}")));
        }
        Ok(q)
    }

    /// `(lead, monic)` with `a = lead · monic`; zero stays zero with lead 0.
    pub fn monic(&self, a: &Poly) -> (Fe, Poly) {
        if a.is_zero() {
            return (Fe::ZERO, Poly::zero());
        }
        let lead = a.lead();
        (lead, self.scale(a, self.field.inv(lead)))
    }

    /// Monic gcd; `gcd(0, 0)` is an error.
    pub fn gcd(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let r = self.rem(&x, &y)?;
            x = y;
            y = r;
        }
        Ok(self.monic(&x).1)
    }

    /// `(g, s, t)` with `g = s·a + t·b` monic.
    pub fn xgcd(&self, a: &Poly, b: &Poly) -> Result<(Poly, Poly, Poly)> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (qt, r) = self.divmod(&r0, &r1)?;
            let s = self.sub(&s0, &self.mul(&qt, &s1));
            let t = self.sub(&t0, &self.mul(&qt, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = self.field.inv(r0.lead());
        Ok((
            self.scale(&r0, inv),
            self.scale(&s0, inv),
            self.scale(&t0, inv),
        ))
    }

    pub fn eval(&self, a: &Poly, x: Fe) -> Fe {
        let f = &self.field;
        a.coeffs
            .iter()
            .rev()
            .fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn mulmod(&self, a: &Poly, b: &Poly, m: &Poly) -> Result<Poly> {
        self.rem(&self.mul(a, b), m)
    }

    pub fn pow_mod(&self, a: &Poly, mut e: u128, m: &Poly) -> Result<Poly> {
        let mut acc = self.rem(&Poly::one(), m)?;
        let mut base = self.rem(a, m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulmod(&acc, &base, m)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.mulmod(&base, &base, m)?;
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, a: &Poly, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// `a^(1 + Q + … + Q^(d−1)) mod m`, Q the field size: the norm from
    /// `F_{Q^d}` down to `F_Q` when `m` is irreducible of degree `d`.
    pub fn norm_power(&self, a: &Poly, d: usize, m: &Poly) -> Result<Poly> {
        let q = self.q() as u128;
        let mut frob = self.rem(a, m)?;
        let mut acc = frob.clone();
        for _ in 1..d {
            frob = self.pow_mod(&frob, q, m)?;
            acc = self.mulmod(&acc, &frob, m)?;
        }
        Ok(acc)
    }

    pub fn derivative(&self, a: &Poly) -> Poly {
        let f = &self.field;
        Poly::new(
            a.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
                .collect(),
        )
    }

    /// `a^(1/p)` for a polynomial in `T^p`.
    fn pth_root(&self, a: &Poly) -> Poly {
        let f = &self.field;
        let p = f.characteristic() as usize;
        let root_exp = (f.size() / f.characteristic()) as u128;
        Poly::new(
            a.coeffs
                .iter()
                .step_by(p)
                .map(|&c| f.pow(c, root_exp))
                .collect(),
        )
    }

    /// Maps coefficients through a field embedding.
    pub fn lift(&self, a: &Poly, emb: &Embedding) -> Poly {
        Poly::new(a.coeffs.iter().map(|&c| emb.embed(c)).collect())
    }

    /// Monic polynomials of degree `d` in canonical order.
    pub fn monic_polys(&self, d: usize) -> impl Iterator<Item = Poly> {
        let q = self.q();
        let count = (q as u64).pow(d as u32);
        (0..count).map(move |idx| {
            let mut v = Poly::from_index(idx, d, q).coeffs;
            v.resize(d, Fe::ZERO);
            v.push(Fe::ONE);
            Poly::new(v)
        })
    }

    /// Monic irreducibles of degree `d` in canonical order.
    pub fn monic_irreducibles(&self, d: usize) -> impl Iterator<Item = Poly> + '_ {
        self.monic_polys(d)
            .filter(move |p| self.is_irreducible(p).unwrap_or(false))
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self, a: &Poly) -> Result<bool> {
        let n = match a.degree() {
            None | Some(0) => return Err(Error::ConstantPolynomial),
            Some(n) => n,
        };
        if n == 1 {
            return Ok(true);
        }
        let (_, m) = self.monic(a);
        let q = self.q() as u128;
        let x = Poly::x();
        let mut frob = vec![self.rem(&x, &m)?];
        for _ in 0..n {
            let next = self.pow_mod(frob.last().unwrap(), q, &m)?;
            frob.push(next);
        }
        if frob[n] != frob[0] {
            return Ok(false);
        }
        for r in prime_factors(n as u64) {
            let j = n / r as usize;
            let g = self.gcd(&self.sub(&frob[j], &x), &m)?;
            if !g.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn factor(&self, a: &Poly) -> Result<Factorization> {
        self.factor_with_seed(a, factor_seed())
    }

    /// Complete factorization into monic irreducibles, sorted by degree then
    /// coefficients. The seed only drives equal-degree splitting; the result
    /// does not depend on it.
    pub fn factor_with_seed(&self, a: &Poly, seed: u64) -> Result<Factorization> {
        if a.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        let (unit, m) = self.monic(a);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut factors = Vec::new();
        for (sqf, mult) in self.squarefree(&m)? {
            for (block, d) in self.distinct_degree(&sqf)? {
                let mut parts = Vec::new();
                self.equal_degree(&block, d, &mut rng, &mut parts)?;
                factors.extend(parts.into_iter().map(|f| (f, mult)));
            }
        }
        factors.sort();
        Ok(Factorization { unit, factors })
    }

    /// Square-free decomposition of a monic polynomial: `(factor, multiplicity)`.
    fn squarefree(&self, a: &Poly) -> Result<Vec<(Poly, u32)>> {
        let mut out = Vec::new();
        let p = self.field.characteristic();
        let d = self.derivative(a);
        let mut c = if d.is_zero() { a.clone() } else { self.gcd(a, &d)? };
        let mut w = self.exact_div(a, &c)?;
        let mut i = 1u32;
        while !w.is_one() {
            let y = self.gcd(&w, &c)?;
            let fac = self.exact_div(&w, &y)?;
            if !fac.is_one() {
                out.push((fac, i));
            }
            c = self.exact_div(&c, &y)?;
            w = y;
            i += 1;
        }
        if !c.is_one() {
            let root = self.pth_root(&c);
            for (g, j) in self.squarefree(&root)? {
                out.push((g, j * p));
            }
        }
        Ok(out)
    }

    /// Splits a square-free monic polynomial into products of equal-degree irreducibles.
    fn distinct_degree(&self, a: &Poly) -> Result<Vec<(Poly, usize)>> {
        let mut out = Vec::new();
        let q = self.q() as u128;
        let x = Poly::x();
        let mut rest = a.clone();
        let mut h = self.rem(&x, &rest)?;
        let mut i = 1;
        while rest.degree().unwrap_or(0) >= 2 * i {
            h = self.pow_mod(&h, q, &rest)?;
            let g = self.gcd(&self.sub(&h, &x), &rest)?;
            if !g.is_one() {
                rest = self.exact_div(&rest, &g)?;
                h = self.rem(&h, &rest)?;
                out.push((g, i));
            }
            i += 1;
        }
        if let Some(d) = rest.degree().filter(|&d| d > 0) {
            out.push((rest, d));
        }
        Ok(out)
    }

    fn equal_degree(
        &self,
        a: &Poly,
        d: usize,
        rng: &mut ChaCha8Rng,
        out: &mut Vec<Poly>,
    ) -> Result<()> {
        let n = a.degree().unwrap_or(0);
        if n == d {
            out.push(a.clone());
            return Ok(());
        }
        let q = self.q();
        let half = (q as u128 - 1) / 2;
        loop {
            let r = Poly::new((0..n).map(|_| Fe(rng.gen_range(0..q))).collect());
            if r.is_constant() {
                continue;
            }
            let mut g = self.gcd(&r, a)?;
            if g.is_one() {
                let b = self.pow_mod(&self.norm_power(&r, d, a)?, half, a)?;
                g = self.gcd(&self.sub(&b, &Poly::one()), a)?;
            }
            let dg = g.degree().unwrap_or(0);
            if dg > 0 && dg < n {
                let other = self.exact_div(a, &g)?;
                self.equal_degree(&g, d, rng, out)?;
                self.equal_degree(&other, d, rng, out)?;
                return Ok(());
            }
        }
    }

    /// A square root of `d` modulo the monic irreducible `m` (Tonelli–Shanks in
    /// `F[T]/m`), or `None` when `d` is a non-residue.
    pub fn sqrt_mod(&self, d: &Poly, m: &Poly) -> Result<Option<Poly>> {
        let deg = m.degree().ok_or(Error::DivisionByZero)?;
        if deg == 0 {
            return Err(Error::ConstantPolynomial);
        }
        let d = self.rem(d, m)?;
        if d.is_zero() {
            return Ok(Some(Poly::zero()));
        }
        let q = self.q() as u128;
        let order = q
            .checked_pow(deg as u32)
            .ok_or_else(|| Error::CapExceeded(format!("residue field of {m} too large")))?
            - 1;
        let one = Poly::one();
        let minus_one = self.neg(&one);
        if self.pow_mod(&d, order / 2, m)? != one {
            return Ok(None);
        }
        let mut s = 0;
        let mut t = order;
        while t % 2 == 0 {
            t /= 2;
            s += 1;
        }
        let count = q.pow(deg as u32) as u64;
        let z = (1..count)
            .map(|i| Poly::from_index(i, deg, self.q()))
            .find(|z| self.pow_mod(z, order / 2, m).map(|v| v == minus_one).unwrap_or(false))
            .ok_or_else(|| Error::Internal("no quadratic non-residue found".into()))?;
        let mut mm = s;
        let mut c = self.pow_mod(&z, t, m)?;
        let mut tt = self.pow_mod(&d, t, m)?;
        let mut r = self.pow_mod(&d, t.div_ceil(2), m)?;
        while tt != one {
            let mut i = 0;
            let mut probe = tt.clone();
            while probe != one {
                probe = self.mulmod(&probe, &probe, m)?;
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..(mm - i - 1) {
                b = self.mulmod(&b, &b, m)?;
            }
            mm = i;
            c = self.mulmod(&b, &b, m)?;
            tt = self.mulmod(&tt, &c, m)?;
            r = self.mulmod(&r, &b, m)?;
        }
        Ok(Some(r))
    }
}

/// Roots in F_{q²} of a polynomial over F_q, in increasing element order.
pub fn roots_in_ext(tower: &Tower, f: &Poly) -> Result<Vec<Fe>> {
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let ring = PolyRing::new(tower.ext().clone());
    let lifted = ring.lift(f, tower.embedding());
    let fac = ring.factor(&lifted)?;
    let mut roots: Vec<Fe> = fac
        .factors
        .iter()
        .filter(|(g, _)| g.degree() == Some(1))
        .map(|(g, _)| tower.ext().neg(g.coeff(0)))
        .collect();
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// Least `(b0, b1)`, both nonzero, with `b0·T^(l−2) + b1` irreducible and
/// accepted by `accept`.
pub fn find_binomial_irreducible(
    ring: &PolyRing,
    l: usize,
    accept: impl Fn(Fe, Fe) -> bool,
) -> Result<Poly> {
    if l < 4 || l % 2 != 0 {
        return Err(Error::Precondition(format!("l = {l} must be even and at least 4")));
    }
    let q = ring.q() as usize;
    if q + 1 <= l - 2 {
        return Err(Error::Precondition(format!(
            "q + 1 = {} is not larger than l − 2 = {}",
            q + 1,
            l - 2
        )));
    }
    let field = ring.field();
    for b0 in field.nonzero_elements() {
        for b1 in field.nonzero_elements() {
            let b = binomial(b0, b1, l - 2);
            if ring.is_irreducible(&b)? && accept(b0, b1) {
                return Ok(b);
            }
        }
    }
    Err(Error::SearchExhausted(format!(
        "no irreducible b0·T^{} + b1 over F_{q} meets the constraint",
        l - 2
    )))
}

/// `b0·T^d + b1`.
pub fn binomial(b0: Fe, b1: Fe, d: usize) -> Poly {
    let mut v = vec![Fe::ZERO; d + 1];
    v[0] = b1;
    v[d] = b0;
    Poly::new(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{make_field, FiniteField, MAX_TABLE_FIELD};

    fn ring(p: u32, n: u32) -> PolyRing {
        PolyRing::new(FiniteField::new(p, n, MAX_TABLE_FIELD).unwrap())
    }

    fn p(v: &[u32]) -> Poly {
        Poly::new(v.iter().map(|&c| Fe(c)).collect())
    }

    #[test]
    fn basic_arithmetic() {
        let r5 = ring(5, 1);
        // T² − 1 and T − 1
        assert_eq!(r5.gcd(&p(&[4, 0, 1]), &p(&[4, 1])).unwrap(), p(&[4, 1]));
        let r3 = ring(3, 1);
        assert_eq!(r3.rem(&p(&[1, 0, 1]), &p(&[1, 1])).unwrap(), p(&[2]));
        assert_eq!(r3.eval(&p(&[2, 1, 0, 0, 1]), Fe(0)), Fe(2));
        assert!(matches!(r3.divmod(&p(&[1]), &Poly::zero()), Err(Error::DivisionByZero)));
        assert!(matches!(r3.gcd(&Poly::zero(), &Poly::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn irreducibility_examples() {
        assert!(ring(3, 1).is_irreducible(&p(&[1, 0, 1])).unwrap());
        assert!(!ring(5, 1).is_irreducible(&p(&[1, 0, 1])).unwrap());
        assert!(matches!(
            ring(3, 1).is_irreducible(&p(&[2])),
            Err(Error::ConstantPolynomial)
        ));
    }

    #[test]
    fn modulus_is_irreducible_by_factorization() {
        for (pr, n) in [(3, 2), (3, 3), (5, 2), (7, 2), (3, 4)] {
            let f = FiniteField::new(pr, n, MAX_TABLE_FIELD).unwrap();
            let prime = ring(pr, 1);
            let m = p(&f.spec().modulus);
            let fac = prime.factor(&m).unwrap();
            assert_eq!(fac.factors, vec![(m, 1)]);
        }
    }

    #[test]
    fn factor_examples() {
        let r5 = ring(5, 1);
        let fac = r5.factor(&p(&[1, 0, 1])).unwrap();
        assert_eq!(fac.factors, vec![(p(&[2, 1]), 1), (p(&[3, 1]), 1)]);
        let r3 = ring(3, 1);
        let fac = r3.factor(&p(&[1, 2, 1])).unwrap();
        assert_eq!(fac.factors, vec![(p(&[1, 1]), 2)]);
        let irr = p(&[1, 0, 1]);
        assert_eq!(r3.factor(&irr).unwrap().factors, vec![(irr, 1)]);
        // (T^3 − T)^3 = T^9 − T^3: needs the p-th root branch
        let f = p(&[0, 0, 0, 2, 0, 0, 0, 0, 0, 1]);
        let fac = r3.factor(&f).unwrap();
        assert_eq!(
            fac.factors,
            vec![(p(&[0, 1]), 3), (p(&[1, 1]), 3), (p(&[2, 1]), 3)]
        );
    }

    #[test]
    fn text_round_trip_and_errors() {
        let f = p(&[2, 0, 1]);
        assert_eq!(f.to_text(), "2+0T+1T^2");
        assert_eq!(Poly::parse("2+0T+1T^2", 3).unwrap(), f);
        assert_eq!(Poly::parse("T^2 + 2", 3).unwrap(), f);
        assert_eq!(Poly::parse("0", 3).unwrap(), Poly::zero());
        assert!(Poly::parse("3+T", 3).is_err());
        assert!(Poly::parse("1+T^x", 3).is_err());
        assert!(Poly::parse("", 3).is_err());
    }

    #[test]
    fn roots_in_quadratic_extension() {
        // q = 7 ≡ 3 mod 4, g = 3 generates F_7^*
        let t = make_field(7, 1).unwrap();
        let f = p(&[4, 0, 1]); // T² − 3
        let roots = roots_in_ext(&t, &f).unwrap();
        assert_eq!(roots.len(), 2);
        for r in roots {
            assert_eq!(t.ext().mul(r, r), t.embed(Fe(3)));
        }
        let t3 = make_field(3, 1).unwrap();
        let cubic = p(&[1, 2, 0, 1]); // T³ + 2T + 1, irreducible over F_3
        assert!(ring(3, 1).is_irreducible(&cubic).unwrap());
        assert!(roots_in_ext(&t3, &cubic).unwrap().is_empty());
        assert_eq!(roots_in_ext(&t3, &p(&[1, 1])).unwrap(), vec![t3.embed(Fe(2))]);
    }

    #[test]
    fn binomial_search() {
        let r5 = ring(5, 1);
        let b = find_binomial_irreducible(&r5, 4, |_, _| true).unwrap();
        // b0 T² + b1 irreducible ⟺ −b1/b0 non-square; least pair by brute force
        let f = r5.field();
        let mut expected = None;
        'o: for b0 in 1..5 {
            for b1 in 1..5 {
                let ratio = f.neg(f.div(Fe(b1), Fe(b0)));
                if !f.is_square(ratio) {
                    expected = Some(p(&[b1, 0, b0]));
                    break 'o;
                }
            }
        }
        assert_eq!(b, expected.unwrap());

        let r3 = ring(3, 1);
        let b = find_binomial_irreducible(&r3, 4, |b0, b1| b0 == b1).unwrap();
        assert_eq!(b, p(&[1, 0, 1]));
        assert!(matches!(
            find_binomial_irreducible(&r3, 10, |_, _| true),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn sqrt_mod_irreducible() {
        let r = ring(5, 1);
        let m = p(&[2, 0, 1]); // T² + 2 irreducible over F_5
        assert!(r.is_irreducible(&m).unwrap());
        let mut found = 0;
        for idx in 0..25 {
            let d = Poly::from_index(idx, 2, 5);
            if let Some(s) = r.sqrt_mod(&d, &m).unwrap() {
                assert_eq!(r.mulmod(&s, &s, &m).unwrap(), d);
                found += 1;
            }
        }
        assert_eq!(found, 13); // zero plus (25 − 1)/2 squares
    }
}
