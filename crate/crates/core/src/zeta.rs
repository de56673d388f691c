//! Point counts on `y² = D(T)`, the L-polynomial, and the class-number
//! formulas derived from it.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::classgroup::{AbelianStructure, QuadOrder};
use crate::error::{Error, Result};
use crate::field::{Embedding, FiniteField, MAX_TABLE_FIELD};
use crate::poly::Poly;

/// Default cap on `q^i` for a single extension used in point counting.
pub const DEFAULT_COUNT_CAP: u64 = 1 << 24;

type EmbeddingKey = (u32, u32, u32);

fn embedding_cache() -> &'static Mutex<HashMap<EmbeddingKey, Arc<Embedding>>> {
    static CACHE: OnceLock<Mutex<HashMap<EmbeddingKey, Arc<Embedding>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `F_q → F_{q^i}`, built once per `(p, n, i)` and shared.
pub fn extension(base: &FiniteField, i: u32, cap: u64) -> Result<Arc<Embedding>> {
    let (p, n) = (base.characteristic(), base.degree());
    let size = (base.size() as u64).checked_pow(i).unwrap_or(u64::MAX);
    if size > cap.min(MAX_TABLE_FIELD) {
        return Err(Error::CapExceeded(format!(
            "F_{{q^{i}}} has {size} elements, cap {}",
            cap.min(MAX_TABLE_FIELD)
        )));
    }
    let key = (p, n, i);
    if let Some(e) = embedding_cache().lock().expect("cache poisoned").get(&key) {
        return Ok(e.clone());
    }
    let big = if i == 1 { base.clone() } else { FiniteField::new(p, n * i, cap)? };
    let emb = Arc::new(Embedding::new(base, &big)?);
    embedding_cache()
        .lock()
        .expect("cache poisoned")
        .entry(key)
        .or_insert(emb.clone());
    Ok(emb)
}

/// Points on the smooth projective model of `y² = D(T)` over `F_{q^i}`.
pub fn count_points(base: &FiniteField, d: &Poly, i: u32, cap: u64) -> Result<u64> {
    let deg = match d.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        Some(k) => k,
    };
    if i == 0 {
        return Err(Error::Precondition("extension index must be at least 1".into()));
    }
    let emb = extension(base, i, cap)?;
    let big = emb.big();
    let coeffs: Vec<_> = d.coeffs().iter().map(|&c| emb.embed(c)).collect();
    let affine: i64 = (0..big.size())
        .into_par_iter()
        .map(|t| {
            let t = crate::field::Fe(t);
            let v = coeffs.iter().rev().fold(crate::field::Fe::ZERO, |acc, &c| big.add(big.mul(acc, t), c));
            1 + big.legendre(v) as i64
        })
        .sum();
    let infinity = if deg % 2 == 1 {
        1
    } else if big.is_square(emb.embed(d.lead())) {
        2
    } else {
        0
    };
    Ok(affine as u64 + infinity)
}

/// `N_1, …, N_g` with the Weil bound asserted on each.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointCounts {
    pub q: u64,
    pub genus: usize,
    pub counts: Vec<u64>,
}

pub fn point_counts(base: &FiniteField, d: &Poly, cap: u64) -> Result<PointCounts> {
    let genus = curve_genus(d)?;
    let q = base.size() as u64;
    let mut counts = Vec::with_capacity(genus);
    for i in 1..=genus as u32 {
        let n = count_points(base, d, i, cap)?;
        let qi = q.pow(i) as i128;
        let dev = n as i128 - qi - 1;
        if dev * dev > 4 * (genus as i128).pow(2) * qi {
            return Err(Error::Internal(format!(
                "N_{i} = {n} violates the Weil bound for genus {genus} over F_{q}"
            )));
        }
        counts.push(n);
    }
    Ok(PointCounts { q, genus, counts })
}

/// Genus of `y² = D` for squarefree `D`.
pub fn curve_genus(d: &Poly) -> Result<usize> {
    match d.degree() {
        None | Some(0) => Err(Error::ConstantPolynomial),
        Some(k) => Ok((k - 1) / 2),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LPolynomial {
    pub q: u64,
    pub genus: usize,
    /// `a_0, …, a_{2g}`.
    pub coeffs: Vec<i64>,
}

impl LPolynomial {
    /// Newton's identities on `s_m = q^m + 1 − N_m`, completed by
    /// `a_{2g−i} = q^(g−i) a_i`.
    pub fn from_counts(pc: &PointCounts) -> Result<Self> {
        let g = pc.genus;
        let q = pc.q as i128;
        let s: Vec<i128> = (1..=g)
            .map(|m| q.pow(m as u32) + 1 - pc.counts[m - 1] as i128)
            .collect();
        let mut a = vec![0i128; 2 * g + 1];
        a[0] = 1;
        for i in 1..=g {
            let acc: i128 = (1..=i).map(|m| a[i - m] * s[m - 1]).sum();
            if acc % i as i128 != 0 {
                return Err(Error::Internal(format!("L-coefficient a_{i} is not integral")));
            }
            a[i] = -acc / i as i128;
        }
        for i in 0..g {
            a[2 * g - i] = q.pow((g - i) as u32) * a[i];
        }
        for (i, &c) in a.iter().enumerate() {
            // |a_i| ≤ C(2g, i) q^(i/2)
            let bound = binom(2 * g, i) as i128;
            if c * c > bound * bound * q.pow(i as u32) {
                return Err(Error::Internal(format!("L-coefficient a_{i} = {c} exceeds its bound")));
            }
        }
        let coeffs = a
            .into_iter()
            .map(|c| i64::try_from(c).map_err(|_| Error::Internal("L-coefficient overflow".into())))
            .collect::<Result<Vec<_>>>()?;
        let l = LPolynomial { q: pc.q, genus: g, coeffs };
        if l.at_one() <= 0 {
            return Err(Error::Internal("L(1) is not positive".into()));
        }
        Ok(l)
    }

    /// `L(1) = #J(F_q)`.
    pub fn at_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn satisfies_functional_equation(&self) -> bool {
        let g = self.genus;
        self.coeffs[0] == 1
            && (0..=2 * g).all(|i| {
                let j = 2 * g - i;
                if i > g {
                    return true;
                }
                self.coeffs[j] as i128 == (self.q as i128).pow((g - i) as u32) * self.coeffs[i] as i128
            })
    }
}

fn binom(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

pub fn l_polynomial(base: &FiniteField, d: &Poly, cap: u64) -> Result<LPolynomial> {
    LPolynomial::from_counts(&point_counts(base, d, cap)?)
}

/// `h = d_∞ · L(1)`.
pub fn pic_order(order: &QuadOrder) -> Result<u64> {
    pic_order_with_cap(order, DEFAULT_COUNT_CAP)
}

pub fn pic_order_with_cap(order: &QuadOrder, cap: u64) -> Result<u64> {
    let l = l_polynomial(order.field(), order.discriminant(), cap)?;
    Ok(order.d_inf() as u64 * l.at_one() as u64)
}

/// Rational 2-power torsion of the Jacobian, read off the cyclic 2-part of
/// the class group through `0 → J[2^∞] → 𝒞 → Z/d → 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TwoTorsion {
    /// `|J[2^∞](F_q)| = 2^t`.
    pub exponent: u32,
    pub order: u64,
    pub has_two_torsion: bool,
    pub has_point_of_order_four: bool,
}

pub fn two_power_torsion(order: &QuadOrder, g: &AbelianStructure) -> Result<TwoTorsion> {
    let (s, cyclic) = g.two_sylow();
    if !cyclic {
        return Err(Error::Internal("2-Sylow of the class group is not cyclic".into()));
    }
    let t = if order.d_inf() == 2 {
        s.checked_sub(1)
            .ok_or_else(|| Error::Internal("even-degree class group has odd order".into()))?
    } else {
        s
    };
    Ok(TwoTorsion {
        exponent: t,
        order: 1 << t,
        has_two_torsion: t >= 1,
        has_point_of_order_four: t >= 2,
    })
}

/// `2(q^k − 1)/(q² − 1)`.
pub fn gekeler_term(q: u64, k: u32) -> Result<u128> {
    if k % 2 == 1 {
        return Err(Error::Precondition("k must be even".into()));
    }
    let q = q as u128;
    let qk = q
        .checked_pow(k)
        .ok_or_else(|| Error::CapExceeded(format!("q^k overflows for q = {q}, k = {k}")))?;
    Ok(2 * (qk - 1) / (q * q - 1))
}

/// `g(𝔭) = (2(q^k − 1)/(q² − 1) + h)/4`.
pub fn gekeler_genus(order: &QuadOrder, h: u64) -> Result<u128> {
    let term = gekeler_term(order.q() as u64, order.k() as u32)?;
    let total = term + h as u128;
    if total % 4 != 0 {
        return Err(Error::Internal(format!(
            "2(q^k − 1)/(q² − 1) + h = {total} is not divisible by 4"
        )));
    }
    Ok(total / 4)
}

/// Whether the type number `t(𝔭) = g(𝔭)` is even; checked against
/// `2 | t ⟺ 8 | h` for `8 | k` and `2 | t ⟺ 8 ∤ h` otherwise.
pub fn type_number_parity(order: &QuadOrder, h: u64) -> Result<bool> {
    if order.k() % 4 != 0 {
        return Err(Error::Precondition("type number parity needs 4 | k".into()));
    }
    let even = gekeler_genus(order, h)? % 2 == 0;
    let rule = if order.k() % 8 == 0 { h % 8 == 0 } else { h % 8 != 0 };
    if even != rule {
        return Err(Error::Internal(format!(
            "type number parity disagrees with the case rule for k = {}, h = {h}",
            order.k()
        )));
    }
    Ok(even)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZetaReport {
    pub q: u64,
    pub d: String,
    pub genus: usize,
    pub counts: Vec<u64>,
    pub l_coeffs: Vec<i64>,
    pub l_at_one: i64,
    pub h: u64,
}

pub fn zeta_report(order: &QuadOrder, cap: u64) -> Result<ZetaReport> {
    let pc = point_counts(order.field(), order.discriminant(), cap)?;
    let l = LPolynomial::from_counts(&pc)?;
    Ok(ZetaReport {
        q: pc.q,
        d: order.discriminant().to_text(),
        genus: pc.genus,
        counts: pc.counts,
        l_at_one: l.at_one(),
        h: order.d_inf() as u64 * l.at_one() as u64,
        l_coeffs: l.coeffs,
    })
}
