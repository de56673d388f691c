//! Special discriminants `e𝔭 = eC² + αBC + B²` with `C = T^(l−2)·Q(T)` and
//! `B = b0·T^(l−2) + b1`, the δB(λ) prediction of `8 | h`, and witness pairs
//! of equal degree whose class numbers differ mod 8.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classgroup::{
    ambiguous_class_order, ambiguous_pair, class_group, kappa, AmbiguousClass, QuadOrder,
};
use crate::error::{Error, Result};
use crate::field::{gcd_u64, Fe, FieldSpec, Tower};
use crate::poly::{binomial, find_binomial_irreducible, roots_in_ext, Poly, PolyRing};
use crate::zeta::{self, TwoTorsion};

/// `Q = T² + aT + b` with `a ≠ 0` and a root `λ` generating `F_{q²}^*`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialQ {
    pub q_poly: Poly,
    pub lambda: Fe,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialDiscriminant {
    pub field: FieldSpec,
    pub l: usize,
    pub q_poly: Poly,
    pub lambda: Fe,
    pub b_poly: Poly,
    pub delta: Fe,
    pub e: Fe,
    pub alpha: Fe,
    pub c_poly: Poly,
    /// Monic, `e·p_poly = κ(C, B)`.
    pub p_poly: Poly,
    pub k: usize,
    /// `q` prime to `k − 4` and `l − 2` prime to `q`.
    pub hypotheses_met: bool,
}

impl SpecialDiscriminant {
    pub fn order(&self, tower: &Tower) -> Result<QuadOrder> {
        QuadOrder::new(tower.base(), self.e, self.p_poly.clone())
    }
}

/// Least `Q` (canonical order) with `a ≠ 0` and a primitive root; `λ` is its
/// least root in F_{q²}.
pub fn find_special_q(tower: &Tower) -> Result<SpecialQ> {
    let ring = PolyRing::new(tower.base().clone());
    let full = tower.ext().size() as u64 - 1;
    for q_poly in ring.monic_irreducibles(2) {
        if q_poly.coeff(1).is_zero() {
            continue;
        }
        let roots = roots_in_ext(tower, &q_poly)?;
        let lambda = *roots.first().ok_or_else(|| Error::Internal("quadratic without roots".into()))?;
        if tower.ext().order_of(lambda) == full {
            return Ok(SpecialQ { q_poly, lambda });
        }
    }
    Err(Error::SearchExhausted(format!("no special Q over F_{}", tower.q())))
}

fn eval_ext(tower: &Tower, f: &Poly, x: Fe) -> Fe {
    let ext = tower.ext();
    f.coeffs()
        .iter()
        .rev()
        .fold(Fe::ZERO, |acc, &c| ext.add(ext.mul(acc, x), tower.embed(c)))
}

/// Whether `(b0, b1)` gives an admissible `B` with `B(λ)` of the wanted squareness.
fn b_admissible(tower: &Tower, sq: &SpecialQ, l: usize, b0: Fe, b1: Fe, want_square: bool) -> bool {
    let v = eval_ext(tower, &binomial(b0, b1, l - 2), sq.lambda);
    !v.is_zero() && tower.ext().is_square(v) == want_square
}

/// Least `B = b0·T^(l−2) + b1` irreducible, `B(λ) ≠ 0`, with
/// `B(λ)` a square in F_{q²} iff `want_square`.
pub fn find_b(tower: &Tower, sq: &SpecialQ, l: usize, want_square: bool) -> Result<Poly> {
    let ring = PolyRing::new(tower.base().clone());
    find_binomial_irreducible(&ring, l, |b0, b1| b_admissible(tower, sq, l, b0, b1, want_square))
}

/// Every admissible `B` in `(b0, b1)` order, either squareness.
pub fn admissible_bs(tower: &Tower, sq: &SpecialQ, l: usize) -> Result<Vec<Poly>> {
    let ring = PolyRing::new(tower.base().clone());
    // validates l and the size condition
    find_binomial_irreducible(&ring, l, |_, _| true)?;
    let f = tower.base();
    let mut out = Vec::new();
    for b0 in f.nonzero_elements() {
        for b1 in f.nonzero_elements() {
            let b = binomial(b0, b1, l - 2);
            let v = eval_ext(tower, &b, sq.lambda);
            if !v.is_zero() && ring.is_irreducible(&b)? {
                out.push(b);
            }
        }
    }
    Ok(out)
}

/// `T^(l−2)·Q`.
pub fn c_poly(sq: &SpecialQ, l: usize) -> Poly {
    let mut v = vec![Fe::ZERO; l - 2];
    v.extend_from_slice(sq.q_poly.coeffs());
    Poly::new(v)
}

/// Outcome of a δ scan: the first hit and how many candidates were examined.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaSearch {
    pub delta: Option<Fe>,
    pub candidates: usize,
}

/// First non-square `δ ∈ F_{q²}` (coordinate order) with `C − δB` irreducible
/// over F_{q²}. Non-squares of F_{q²} never lie in F_q.
pub fn find_delta(tower: &Tower, sq: &SpecialQ, b: &Poly, l: usize) -> Result<DeltaSearch> {
    let ext = tower.ext();
    let ext_ring = PolyRing::new(ext.clone());
    let c = ext_ring.lift(&c_poly(sq, l), tower.embedding());
    let b = ext_ring.lift(b, tower.embedding());
    let candidates: Vec<Fe> = ext
        .nonzero_elements()
        .filter(|&d| !ext.is_square(d) && !tower.in_base(d))
        .collect();
    let hit = candidates
        .par_iter()
        .map(|&d| {
            let pi = ext_ring.sub(&c, &ext_ring.scale(&b, d));
            ext_ring.is_irreducible(&pi).map(|ok| ok.then_some(d))
        })
        .find_first(|r| !matches!(r, Ok(None)))
        .transpose()?
        .flatten();
    Ok(DeltaSearch { delta: hit, candidates: candidates.len() })
}

/// Completes `(Q, B, δ)` and checks every invariant of the record.
pub fn assemble_discriminant(
    tower: &Tower,
    sq: &SpecialQ,
    b: &Poly,
    delta: Fe,
    l: usize,
) -> Result<SpecialDiscriminant> {
    let base = tower.base();
    let ext = tower.ext();
    let ring = PolyRing::new(base.clone());
    let fail = |what: &str| Err(Error::Precondition(format!("special discriminant: {what}")));

    if sq.q_poly.degree() != Some(2) || !sq.q_poly.is_monic() || sq.q_poly.coeff(1).is_zero() {
        return fail("Q must be monic quadratic with a ≠ 0");
    }
    if !ring.is_irreducible(&sq.q_poly)? || !eval_ext(tower, &sq.q_poly, sq.lambda).is_zero() {
        return fail("Q must be irreducible with Q(λ) = 0");
    }
    if b.degree() != Some(l - 2)
        || b.coeffs()[1..l - 2].iter().any(|c| !c.is_zero())
        || b.coeff(0).is_zero()
    {
        return fail("B must be b0·T^(l−2) + b1 with b0·b1 ≠ 0");
    }
    if !ring.is_irreducible(b)? || eval_ext(tower, b, sq.lambda).is_zero() {
        return fail("B must be irreducible with B(λ) ≠ 0");
    }
    if ext.is_square(delta) || tower.in_base(delta) {
        return fail("δ must be a non-square outside F_q");
    }
    let c = c_poly(sq, l);
    let ext_ring = PolyRing::new(ext.clone());
    let pi = ext_ring.sub(
        &ext_ring.lift(&c, tower.embedding()),
        &ext_ring.scale(&ext_ring.lift(b, tower.embedding()), delta),
    );
    if !ext_ring.is_irreducible(&pi)? {
        return fail("C − δB must be irreducible over F_{q²}");
    }
    let (norm, conj) = tower.norm_conj(delta);
    let e = base.inv(norm);
    if base.is_square(e) {
        return Err(Error::Internal("norm of a non-square δ is a square".into()));
    }
    let trace = tower.trace(delta);
    let alpha = base.neg(base.mul(e, trace));
    // 𝔭 = (C − δB)(C − δ̄B) = C² − tr(δ)·BC + N(δ)·B²
    let p_poly = ring.add(
        &ring.sub(&ring.square(&c), &ring.scale(&ring.mul(b, &c), trace)),
        &ring.scale(&ring.square(b), norm),
    );
    let pi_bar = ext_ring.sub(
        &ext_ring.lift(&c, tower.embedding()),
        &ext_ring.scale(&ext_ring.lift(b, tower.embedding()), conj),
    );
    if ext_ring.mul(&pi, &pi_bar) != ext_ring.lift(&p_poly, tower.embedding()) {
        return Err(Error::Internal("𝔭 ≠ (C − δB)(C − δ̄B)".into()));
    }
    if kappa(&ring, e, alpha, &c, b) != ring.scale(&p_poly, e) {
        return Err(Error::Internal("e·𝔭 ≠ κ(C, B)".into()));
    }
    if p_poly.degree() != Some(2 * l) || !p_poly.is_monic() || !ring.is_irreducible(&p_poly)? {
        return fail("𝔭 must be monic irreducible of degree 2l");
    }
    let q = base.size() as u64;
    let p = base.characteristic() as u64;
    let k = 2 * l;
    let hypotheses_met = gcd_u64(p, (k as u64).abs_diff(4)) == 1 && gcd_u64(q, l as u64 - 2) == 1;
    Ok(SpecialDiscriminant {
        field: base.spec().clone(),
        l,
        q_poly: sq.q_poly.clone(),
        lambda: sq.lambda,
        b_poly: b.clone(),
        delta,
        e,
        alpha,
        c_poly: c,
        p_poly,
        k,
        hypotheses_met,
    })
}

/// `8 | h` predicted from `δ·B(λ)`: a square when `l ≡ 2 mod 4`, a
/// non-square when `l ≡ 0 mod 4`.
pub fn predict_8_divisibility(tower: &Tower, sd: &SpecialDiscriminant) -> bool {
    let ext = tower.ext();
    let v = ext.mul(sd.delta, eval_ext(tower, &sd.b_poly, sd.lambda));
    if sd.l % 4 == 2 {
        ext.is_square(v)
    } else {
        !ext.is_square(v)
    }
}

/// Up to `max` special discriminants for `(q, l)`: one per admissible `B`
/// with the first working `δ`. Also returns the number of `B` with no `δ`.
pub fn special_instances(tower: &Tower, l: usize, max: usize) -> Result<(Vec<SpecialDiscriminant>, usize)> {
    let sq = find_special_q(tower)?;
    let mut out = Vec::new();
    let mut misses = 0;
    for b in admissible_bs(tower, &sq, l)? {
        if out.len() >= max {
            break;
        }
        match find_delta(tower, &sq, &b, l)?.delta {
            Some(d) => out.push(assemble_discriminant(tower, &sq, &b, d, l)?),
            None => misses += 1,
        }
    }
    Ok((out, misses))
}

/// Everything needed to re-verify one special discriminant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceCertificate {
    pub l: usize,
    pub k: usize,
    pub q_poly: String,
    pub lambda: u32,
    pub b_poly: String,
    pub delta: u32,
    pub e: u32,
    pub alpha: u32,
    pub c_poly: String,
    pub p_poly: String,
    pub hypotheses_met: bool,
    pub delta_candidates: usize,
    pub h: u64,
    pub h_mod_8: u64,
    pub predicted_8_divides: bool,
    pub divisors: Vec<u64>,
    pub l_coeffs: Vec<i64>,
    pub ambiguous: AmbiguousRecord,
    pub two_torsion: TwoTorsionRecord,
    pub type_number_even: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbiguousRecord {
    pub ideal: String,
    pub order: u64,
    pub depth: Option<u32>,
}

impl From<AmbiguousClass> for AmbiguousRecord {
    fn from(a: AmbiguousClass) -> Self {
        AmbiguousRecord { ideal: a.ideal, order: a.order, depth: a.depth }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoTorsionRecord {
    pub exponent: u32,
    pub has_two_torsion: bool,
    pub has_point_of_order_four: bool,
}

impl From<TwoTorsion> for TwoTorsionRecord {
    fn from(t: TwoTorsion) -> Self {
        TwoTorsionRecord {
            exponent: t.exponent,
            has_two_torsion: t.has_two_torsion,
            has_point_of_order_four: t.has_point_of_order_four,
        }
    }
}

/// Class-group data of a special discriminant, all checks included.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub h: u64,
    pub divisors: Vec<u64>,
    pub l_coeffs: Vec<i64>,
    pub ambiguous: AmbiguousClass,
    pub two_torsion: TwoTorsion,
    pub predicted_8_divides: bool,
    pub type_number_even: Option<bool>,
    pub pair_round_trip: bool,
}

/// Computes `h` both ways, the structure, the ambiguous class and the
/// prediction; errors if the two class numbers disagree.
pub fn evaluate(tower: &Tower, sd: &SpecialDiscriminant, count_cap: u64) -> Result<Evaluation> {
    let order = sd.order(tower)?;
    let l_poly = zeta::l_polynomial(order.field(), order.discriminant(), count_cap)?;
    let h = order.d_inf() as u64 * l_poly.at_one() as u64;
    let group = class_group(&order, h)?;
    let (b, c) = ambiguous_pair(tower, &order, sd.alpha)?;
    let trace = tower.base().neg(tower.base().mul(sd.alpha, tower.base().inv(sd.e)));
    let ring = order.ring();
    let alt = (ring.neg(&sd.b_poly), ring.sub(&sd.c_poly, &ring.scale(&sd.b_poly, trace)));
    let pair_round_trip = (b == sd.b_poly && c == sd.c_poly) || (b, c.clone()) == alt;
    let ambiguous = ambiguous_class_order(&order, &sd.b_poly, &sd.c_poly, &group)?;
    let two_torsion = zeta::two_power_torsion(&order, group.structure())?;
    let type_number_even = if sd.k % 4 == 0 {
        Some(zeta::type_number_parity(&order, h)?)
    } else {
        None
    };
    Ok(Evaluation {
        h,
        divisors: group.structure().divisors.clone(),
        l_coeffs: l_poly.coeffs,
        ambiguous,
        two_torsion,
        predicted_8_divides: predict_8_divisibility(tower, sd),
        type_number_even,
        pair_round_trip,
    })
}

fn certify(tower: &Tower, sd: &SpecialDiscriminant, candidates: usize, count_cap: u64) -> Result<InstanceCertificate> {
    let ev = evaluate(tower, sd, count_cap)?;
    Ok(InstanceCertificate {
        l: sd.l,
        k: sd.k,
        q_poly: sd.q_poly.to_text(),
        lambda: sd.lambda.0,
        b_poly: sd.b_poly.to_text(),
        delta: sd.delta.0,
        e: sd.e.0,
        alpha: sd.alpha.0,
        c_poly: sd.c_poly.to_text(),
        p_poly: sd.p_poly.to_text(),
        hypotheses_met: sd.hypotheses_met,
        delta_candidates: candidates,
        h: ev.h,
        h_mod_8: ev.h % 8,
        predicted_8_divides: ev.predicted_8_divides,
        divisors: ev.divisors,
        l_coeffs: ev.l_coeffs,
        ambiguous: ev.ambiguous.into(),
        two_torsion: ev.two_torsion.into(),
        type_number_even: ev.type_number_even.unwrap_or(false),
    })
}

/// Two degree-`k` discriminants with `h ≡ 0 mod 4`, one `≡ 0` and one `≡ 4 mod 8`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCertificate {
    pub p: u32,
    pub n: u32,
    pub modulus: Vec<u32>,
    pub k: usize,
    /// `B(λ)` a square.
    pub plus: InstanceCertificate,
    /// `B(λ)` a non-square.
    pub minus: InstanceCertificate,
}

pub fn theorem2_witnesses(tower: &Tower, k: usize, count_cap: u64) -> Result<WitnessCertificate> {
    if k % 4 != 0 || k < 8 {
        return Err(Error::Precondition(format!("k = {k} must be a multiple of 4, at least 8")));
    }
    let l = k / 2;
    let sq = find_special_q(tower)?;
    let mut certs = Vec::with_capacity(2);
    for want_square in [true, false] {
        let b = find_b(tower, &sq, l, want_square)?;
        let search = find_delta(tower, &sq, &b, l)?;
        let delta = search.delta.ok_or_else(|| {
            Error::SearchExhausted(format!(
                "no δ among {} candidates makes C − δB irreducible over F_{{q²}} (q = {}, l = {l}): \
                 q is below the effective threshold",
                search.candidates,
                tower.q()
            ))
        })?;
        let sd = assemble_discriminant(tower, &sq, &b, delta, l)?;
        certs.push(certify(tower, &sd, search.candidates, count_cap)?);
    }
    let minus = certs.pop().expect("two certificates");
    let plus = certs.pop().expect("two certificates");
    let spec = tower.base().spec();
    let cert = WitnessCertificate {
        p: spec.p,
        n: spec.n,
        modulus: spec.modulus.clone(),
        k,
        plus,
        minus,
    };
    check_witness_pair(&cert)?;
    Ok(cert)
}

fn check_witness_pair(cert: &WitnessCertificate) -> Result<()> {
    let (a, b) = (&cert.plus, &cert.minus);
    if a.h % 4 != 0 || b.h % 4 != 0 || a.h % 8 == b.h % 8 {
        return Err(Error::Internal(format!(
            "witness pair has h = {} and h' = {}, not distinct mod 8 with both ≡ 0 mod 4",
            a.h, b.h
        )));
    }
    Ok(())
}

/// Rebuilds both instances from the certificate's raw data and recomputes
/// every derived value.
pub fn verify_certificate(cert: &WitnessCertificate, count_cap: u64) -> Result<()> {
    let tower = crate::field::make_field(cert.p, cert.n)?;
    if tower.base().spec().modulus != cert.modulus {
        return Err(Error::Precondition("certificate modulus differs from the canonical one".into()));
    }
    check_witness_pair(cert)?;
    for inst in [&cert.plus, &cert.minus] {
        let q = tower.q();
        let sq = SpecialQ { q_poly: Poly::parse(&inst.q_poly, q)?, lambda: Fe(inst.lambda) };
        let b = Poly::parse(&inst.b_poly, q)?;
        let sd = assemble_discriminant(&tower, &sq, &b, Fe(inst.delta), inst.l)?;
        let fresh = certify(&tower, &sd, inst.delta_candidates, count_cap)?;
        if &fresh != inst {
            return Err(Error::Internal(format!(
                "certificate for B = {} does not re-verify",
                inst.b_poly
            )));
        }
        if fresh.predicted_8_divides != (fresh.h % 8 == 0) {
            return Err(Error::Internal("8-divisibility prediction fails".into()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn special_q_over_f3() {
        let t = make_field(3, 1).unwrap();
        let sq = find_special_q(&t).unwrap();
        let (ext, base) = (t.ext(), t.base());
        assert_eq!(ext.order_of(sq.lambda), 8);
        let (norm, conj) = t.norm_conj(sq.lambda);
        assert_eq!(norm, sq.q_poly.coeff(0));
        let tr = t.project(ext.add(sq.lambda, conj)).unwrap();
        assert_eq!(tr, base.neg(sq.q_poly.coeff(1)));
        // exhaustive: no smaller monic quadratic qualifies
        let ring = PolyRing::new(base.clone());
        for cand in ring.monic_polys(2).filter(|c| *c < sq.q_poly) {
            let ok = ring.is_irreducible(&cand).unwrap()
                && !cand.coeff(1).is_zero()
                && roots_in_ext(&t, &cand).unwrap().iter().any(|&r| ext.order_of(r) == 8);
            assert!(!ok, "{cand}");
        }
    }

    #[test]
    fn find_b_respects_squareness() {
        let t = make_field(5, 1).unwrap();
        let sq = find_special_q(&t).unwrap();
        for want in [true, false] {
            let b = find_b(&t, &sq, 4, want).unwrap();
            let v = eval_ext(&t, &b, sq.lambda);
            assert_eq!(t.ext().is_square(v), want);
            // b0T² + b1 irreducible iff −b1/b0 is a non-square
            let f = t.base();
            assert!(!f.is_square(f.neg(f.div(b.coeff(0), b.coeff(2)))));
        }
        assert!(matches!(find_b(&make_field(3, 1).unwrap(), &sq, 10, true), Err(Error::Precondition(_))));
    }

    #[test]
    fn assembled_instance_is_consistent() {
        let t = make_field(5, 1).unwrap();
        let (inst, _) = special_instances(&t, 4, 2).unwrap();
        assert!(!inst.is_empty());
        for sd in &inst {
            assert_eq!(sd.p_poly.degree(), Some(8));
            assert!(!t.base().is_square(sd.e));
            let order = sd.order(&t).unwrap();
            assert_eq!(order.d_inf(), 2);
        }
    }
}
