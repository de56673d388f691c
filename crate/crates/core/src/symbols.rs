//! Quadratic residue symbols `(f/g)` in `F[T]`, computed by the Euler
//! criterion and, independently, by the reciprocity recursion.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Poly, PolyRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymbolValue {
    MinusOne,
    Zero,
    One,
}

impl SymbolValue {
    pub fn as_i8(self) -> i8 {
        match self {
            SymbolValue::MinusOne => -1,
            SymbolValue::Zero => 0,
            SymbolValue::One => 1,
        }
    }

    pub fn from_i8(v: i8) -> Self {
        match v.signum() {
            -1 => SymbolValue::MinusOne,
            0 => SymbolValue::Zero,
            _ => SymbolValue::One,
        }
    }

    fn times(self, other: SymbolValue) -> SymbolValue {
        SymbolValue::from_i8(self.as_i8() * other.as_i8())
    }
}

/// `(f/g)` for irreducible `g`: `f^((Q^deg g − 1)/2) mod g` read as ±1, or 0
/// when `g | f`.
pub fn symbol_euler(ring: &PolyRing, f: &Poly, g: &Poly) -> Result<SymbolValue> {
    let d = match g.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        Some(d) => d,
    };
    if !ring.is_irreducible(g)? {
        return Err(Error::Reducible(g.to_text()));
    }
    let (_, gm) = ring.monic(g);
    let r = ring.rem(f, &gm)?;
    if r.is_zero() {
        return Ok(SymbolValue::Zero);
    }
    let q = ring.q() as u128;
    let value = match q.checked_pow(d as u32) {
        Some(qd) => ring.pow_mod(&r, (qd - 1) / 2, &gm)?,
        // same power, split as N(r)^((Q−1)/2) to keep the exponent small
        None => ring.pow_mod(&ring.norm_power(&r, d, &gm)?, (q - 1) / 2, &gm)?,
    };
    if value.is_one() {
        Ok(SymbolValue::One)
    } else if value == ring.neg(&Poly::one()) {
        Ok(SymbolValue::MinusOne)
    } else {
        Err(Error::Internal(format!("Euler power of {f} mod {g} is not ±1")))
    }
}

/// Jacobi-style symbol `(f/g)` by flip-and-reduce, for any non-constant `g`.
///
/// For monic coprime `a, b` over F_Q: `(a/b)(b/a) = (−1)^((Q−1)/2 · deg a · deg b)`;
/// a leading unit `u` of the top argument contributes `χ(u)^deg b`.
pub fn symbol_reciprocity(ring: &PolyRing, f: &Poly, g: &Poly) -> Result<SymbolValue> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if g.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let field = ring.field();
    let half_odd = ((ring.q() - 1) / 2) % 2 == 1;
    let mut sign = SymbolValue::One;
    let mut top = f.clone();
    let mut bottom = ring.monic(g).1;
    loop {
        top = ring.rem(&top, &bottom)?;
        if top.is_zero() {
            return Ok(SymbolValue::Zero);
        }
        let db = bottom.degree().unwrap_or(0);
        let (unit, top_monic) = ring.monic(&top);
        if db % 2 == 1 {
            sign = sign.times(SymbolValue::from_i8(field.legendre(unit)));
        }
        let dt = top_monic.degree().unwrap_or(0);
        if dt == 0 {
            return Ok(sign);
        }
        if half_odd && dt % 2 == 1 && db % 2 == 1 {
            sign = sign.times(SymbolValue::MinusOne);
        }
        top = std::mem::replace(&mut bottom, top_monic);
    }
}

/// Product of [`symbol_euler`] over the irreducible factors of `g`, with multiplicity.
pub fn symbol_by_factorization(ring: &PolyRing, f: &Poly, g: &Poly) -> Result<SymbolValue> {
    let fac = ring.factor(g)?;
    let mut acc = SymbolValue::One;
    for (h, mult) in &fac.factors {
        let s = symbol_euler(ring, f, h)?;
        for _ in 0..*mult {
            acc = acc.times(s);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fe, FiniteField, MAX_TABLE_FIELD};

    fn ring(p: u32, n: u32) -> PolyRing {
        PolyRing::new(FiniteField::new(p, n, MAX_TABLE_FIELD).unwrap())
    }

    fn p(v: &[u32]) -> Poly {
        Poly::new(v.iter().map(|&c| Fe(c)).collect())
    }

    #[test]
    fn euler_examples() {
        let r = ring(3, 1);
        let t = Poly::x();
        let g = p(&[1, 1]);
        assert_eq!(symbol_euler(&r, &t, &g).unwrap(), SymbolValue::MinusOne);
        assert_eq!(symbol_euler(&r, &g, &g).unwrap(), SymbolValue::Zero);
        // 2² = 1 in F_3: constant squares
        assert_eq!(symbol_euler(&r, &p(&[1]), &p(&[1, 0, 1])).unwrap(), SymbolValue::One);
        assert!(matches!(
            symbol_euler(&r, &t, &p(&[2, 0, 1])),
            Err(Error::Reducible(_))
        ));
        assert!(matches!(symbol_euler(&r, &t, &p(&[2])), Err(Error::ConstantPolynomial)));
    }

    #[test]
    fn reciprocity_examples() {
        let r = ring(3, 1);
        assert_eq!(
            symbol_reciprocity(&r, &Poly::x(), &p(&[1, 1])).unwrap(),
            SymbolValue::MinusOne
        );
        let h = p(&[1, 2, 1]); // (T+1)²
        let g = p(&[2, 0, 0, 1, 1]);
        assert_eq!(
            symbol_reciprocity(&r, &r.mul(&h, &h), &p(&[1, 0, 1])).unwrap(),
            SymbolValue::One
        );
        assert_eq!(symbol_reciprocity(&r, &h, &g).unwrap(), symbol_by_factorization(&r, &h, &g).unwrap());
        assert!(symbol_reciprocity(&r, &Poly::zero(), &g).is_err());
        assert!(symbol_reciprocity(&r, &g, &p(&[2])).is_err());
    }

    #[test]
    fn shared_factor_gives_zero() {
        let r = ring(5, 1);
        let a = p(&[1, 1]);
        let f = r.mul(&a, &p(&[2, 0, 1]));
        let g = r.mul(&a, &p(&[3, 1]));
        assert_eq!(symbol_reciprocity(&r, &f, &g).unwrap(), SymbolValue::Zero);
        assert_eq!(symbol_by_factorization(&r, &f, &g).unwrap(), SymbolValue::Zero);
    }
}
