//! Sweeps over families of discriminants, one flat row per instance.

use rayon::prelude::*;
use serde::Serialize;

use crate::classgroup::{ambiguous_class_order, ambiguous_pair, class_group, least_alpha, ClassGroup, QuadOrder};
use crate::construct::{evaluate, special_instances};
use crate::error::{Error, Result};
use crate::field::{make_field, Fe, FiniteField, Tower};
use crate::poly::{Poly, PolyRing};
use crate::symbols::symbol_euler;
use crate::zeta::{self, gekeler_term, two_power_torsion};

/// Class group of `F_q[T, √(e·p_poly)]` checked against the zeta oracle.
#[derive(Clone, Debug)]
pub struct ClassData {
    pub order: QuadOrder,
    pub h: u64,
    pub l_coeffs: Vec<i64>,
    pub group: ClassGroup,
}

pub fn class_data(field: &FiniteField, e: Fe, p_poly: &Poly, count_cap: u64) -> Result<ClassData> {
    let order = QuadOrder::new(field, e, p_poly.clone())?;
    let l = zeta::l_polynomial(field, order.discriminant(), count_cap)?;
    let h = order.d_inf() as u64 * l.at_one() as u64;
    let group = class_group(&order, h)?;
    Ok(ClassData { order, h, l_coeffs: l.coeffs, group })
}

fn join<T: ToString>(v: &[T], sep: &str) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

/// Monic irreducibles of degree `1..=degree_cap` in canonical order.
pub fn primes_up_to(field: &FiniteField, degree_cap: usize) -> Vec<Poly> {
    let ring = PolyRing::new(field.clone());
    (1..=degree_cap).flat_map(|d| ring.monic_irreducibles(d).collect::<Vec<_>>()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Thm1Row {
    pub q: u32,
    pub e: u32,
    pub p_poly: String,
    pub k: usize,
    pub h: u64,
    pub h_mod_8: u64,
    pub divisors: String,
    pub two_sylow_s: u32,
    pub cyclic: bool,
    pub ambiguous_order: Option<u64>,
    pub ambiguous_depth: Option<u32>,
    pub parity_ok: bool,
    pub four_ok: bool,
    pub pass: bool,
    pub failure: String,
}

fn thm1_row(tower: &Tower, e: Fe, p_poly: &Poly, count_cap: u64) -> Thm1Row {
    let k = p_poly.degree().unwrap_or(0);
    let mut row = Thm1Row {
        q: tower.q(),
        e: e.0,
        p_poly: p_poly.to_text(),
        k,
        h: 0,
        h_mod_8: 0,
        divisors: String::new(),
        two_sylow_s: 0,
        cyclic: false,
        ambiguous_order: None,
        ambiguous_depth: None,
        parity_ok: false,
        four_ok: false,
        pass: false,
        failure: String::new(),
    };
    let run = |row: &mut Thm1Row| -> Result<()> {
        let cd = class_data(tower.base(), e, p_poly, count_cap)?;
        let (s, cyclic) = cd.group.structure().two_sylow();
        row.h = cd.h;
        row.h_mod_8 = cd.h % 8;
        row.divisors = join(&cd.group.structure().divisors, "x");
        row.two_sylow_s = s;
        row.cyclic = cyclic;
        row.parity_ok = (cd.h % 2 == 0) == (k % 2 == 0);
        row.four_ok = (cd.h % 4 == 0) == (k % 4 == 0);
        if k % 2 == 0 {
            let alpha = least_alpha(tower.base(), cd.order.discriminant().lead());
            let (b, c) = ambiguous_pair(tower, &cd.order, alpha)?;
            let amb = ambiguous_class_order(&cd.order, &b, &c, &cd.group)?;
            row.ambiguous_order = Some(amb.order);
            row.ambiguous_depth = amb.depth;
        }
        Ok(())
    };
    if let Err(err) = run(&mut row) {
        row.failure = err.to_string();
        return row;
    }
    let amb_ok = row.h % 2 == 1 || row.ambiguous_order == Some(2);
    row.pass = row.parity_ok && row.four_ok && row.cyclic && amb_ok;
    if !row.pass {
        row.failure = match (row.parity_ok, row.four_ok, row.cyclic, amb_ok) {
            (false, ..) => "2 | h disagrees with 2 | k",
            (_, false, ..) => "4 | h disagrees with 4 | k",
            (_, _, false, _) => "2-Sylow not cyclic",
            _ => "ambiguous class does not have order 2",
        }
        .to_string();
    }
    row
}

/// Every monic irreducible of degree `≤ degree_cap`: `2 | h ⟺ 2 | k`,
/// `4 | h ⟺ 4 | k`, cyclic 2-Sylow, ambiguous class of order 2 when `h` is even.
pub fn verify_theorem1(tower: &Tower, e: Fe, degree_cap: usize, count_cap: u64) -> Vec<Thm1Row> {
    primes_up_to(tower.base(), degree_cap)
        .par_iter()
        .map(|p| thm1_row(tower, e, p, count_cap))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cor1Row {
    pub q: u32,
    pub p_poly: String,
    pub k: usize,
    pub h: u64,
    pub l_at_one: i64,
    pub torsion_exponent: u32,
    pub has_two_torsion: bool,
    pub has_point_of_order_four: bool,
    pub expected_two_torsion: bool,
    pub l_two_part_ok: bool,
    pub pass: bool,
    pub failure: String,
}

/// Rational 2-torsion on the Jacobian exists iff `4 | k`; the 2-part of
/// `L(1)` equals the torsion order read off the class group.
pub fn verify_corollary1(tower: &Tower, e: Fe, degree_cap: usize, count_cap: u64) -> Vec<Cor1Row> {
    primes_up_to(tower.base(), degree_cap)
        .into_par_iter()
        .filter(|p| p.degree().unwrap_or(0) % 2 == 0)
        .map(|p| {
            let k = p.degree().unwrap_or(0);
            let mut row = Cor1Row {
                q: tower.q(),
                p_poly: p.to_text(),
                k,
                h: 0,
                l_at_one: 0,
                torsion_exponent: 0,
                has_two_torsion: false,
                has_point_of_order_four: false,
                expected_two_torsion: k % 4 == 0,
                l_two_part_ok: false,
                pass: false,
                failure: String::new(),
            };
            let res = class_data(tower.base(), e, &p, count_cap).and_then(|cd| {
                let tt = two_power_torsion(&cd.order, cd.group.structure())?;
                Ok((cd, tt))
            });
            match res {
                Ok((cd, tt)) => {
                    let l1: i64 = cd.l_coeffs.iter().sum();
                    row.h = cd.h;
                    row.l_at_one = l1;
                    row.torsion_exponent = tt.exponent;
                    row.has_two_torsion = tt.has_two_torsion;
                    row.has_point_of_order_four = tt.has_point_of_order_four;
                    row.l_two_part_ok = l1.trailing_zeros() == tt.exponent;
                    row.pass = row.l_two_part_ok && row.has_two_torsion == row.expected_two_torsion;
                    if !row.pass {
                        row.failure = if row.l_two_part_ok {
                            "2-torsion existence disagrees with 4 | k".into()
                        } else {
                            "2-part of L(1) disagrees with the class group".into()
                        };
                    }
                }
                Err(err) => row.failure = err.to_string(),
            }
            row
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GekelerRow {
    pub q: u32,
    pub p_poly: String,
    pub k: usize,
    pub h: u64,
    pub term: String,
    pub integral: bool,
    pub gekeler_genus: String,
    pub term_congruent_k_mod_4: bool,
    pub type_number_even: Option<bool>,
    pub pass: bool,
    pub failure: String,
}

/// `4 | 2(q^k − 1)/(q² − 1) + h` for every even-degree prime up to the cap,
/// with the type-number parity rule when `4 | k`.
pub fn verify_gekeler(tower: &Tower, e: Fe, degree_cap: usize, count_cap: u64) -> Vec<GekelerRow> {
    primes_up_to(tower.base(), degree_cap)
        .into_par_iter()
        .filter(|p| p.degree().unwrap_or(0) % 2 == 0)
        .map(|p| {
            let k = p.degree().unwrap_or(0);
            let mut row = GekelerRow {
                q: tower.q(),
                p_poly: p.to_text(),
                k,
                h: 0,
                term: String::new(),
                integral: false,
                gekeler_genus: String::new(),
                term_congruent_k_mod_4: false,
                type_number_even: None,
                pass: false,
                failure: String::new(),
            };
            let res = (|| -> Result<()> {
                let term = gekeler_term(tower.q() as u64, k as u32)?;
                row.term = term.to_string();
                row.term_congruent_k_mod_4 = term % 4 == k as u128 % 4;
                let cd = class_data(tower.base(), e, &p, count_cap)?;
                row.h = cd.h;
                row.integral = (term + cd.h as u128) % 4 == 0;
                row.gekeler_genus = zeta::gekeler_genus(&cd.order, cd.h)?.to_string();
                if k % 4 == 0 {
                    row.type_number_even = Some(zeta::type_number_parity(&cd.order, cd.h)?);
                }
                Ok(())
            })();
            match res {
                Ok(()) => {
                    row.pass = row.integral && row.term_congruent_k_mod_4;
                    if !row.pass {
                        row.failure = "Gekeler formula fails".into();
                    }
                }
                Err(err) => row.failure = err.to_string(),
            }
            row
        })
        .collect()
}

/// `2(q^k − 1)/(q² − 1) ≡ k mod 4` over a range of `(q, k)`.
pub fn gekeler_congruence_table(qs: &[u64], k_max: u32) -> Result<Vec<(u64, u32, bool)>> {
    let mut out = Vec::new();
    for &q in qs {
        for k in (2..=k_max).step_by(2) {
            out.push((q, k, gekeler_term(q, k)? % 4 == k as u128 % 4));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CritRow {
    pub q: u32,
    pub l: usize,
    pub k: usize,
    pub q_poly: String,
    pub lambda: u32,
    pub b_poly: String,
    pub delta: u32,
    pub e: u32,
    pub alpha: u32,
    pub p_poly: String,
    pub hypotheses_met: bool,
    pub h: u64,
    pub h_mod_8: u64,
    pub predicted_8_divides: bool,
    pub computed_8_divides: bool,
    pub ambiguous_depth: Option<u32>,
    pub pair_round_trip: bool,
    pub pass: bool,
    pub failure: String,
}

/// A point `(p, n, l)` of the 8-criterion grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GridPoint {
    pub p: u32,
    pub n: u32,
    pub l: usize,
}

/// For each grid point, up to `per_point` special discriminants with the
/// predicted and computed `8 | h`. Grid points without any instance yield a
/// failing row.
pub fn verify_8crit(grid: &[GridPoint], per_point: usize, count_cap: u64) -> Vec<CritRow> {
    let mut rows = Vec::new();
    for gp in grid {
        let empty = |failure: String| CritRow {
            q: gp.p.pow(gp.n),
            l: gp.l,
            k: 2 * gp.l,
            q_poly: String::new(),
            lambda: 0,
            b_poly: String::new(),
            delta: 0,
            e: 0,
            alpha: 0,
            p_poly: String::new(),
            hypotheses_met: false,
            h: 0,
            h_mod_8: 0,
            predicted_8_divides: false,
            computed_8_divides: false,
            ambiguous_depth: None,
            pair_round_trip: false,
            pass: false,
            failure,
        };
        let tower = match make_field(gp.p, gp.n) {
            Ok(t) => t,
            Err(err) => {
                rows.push(empty(err.to_string()));
                continue;
            }
        };
        let instances = match special_instances(&tower, gp.l, per_point) {
            Ok((v, _)) if !v.is_empty() => v,
            Ok(_) => {
                rows.push(empty("no special discriminant found".into()));
                continue;
            }
            Err(err) => {
                rows.push(empty(err.to_string()));
                continue;
            }
        };
        let mut point_rows: Vec<CritRow> = instances
            .par_iter()
            .map(|sd| {
                let mut row = empty(String::new());
                row.q_poly = sd.q_poly.to_text();
                row.lambda = sd.lambda.0;
                row.b_poly = sd.b_poly.to_text();
                row.delta = sd.delta.0;
                row.e = sd.e.0;
                row.alpha = sd.alpha.0;
                row.p_poly = sd.p_poly.to_text();
                row.hypotheses_met = sd.hypotheses_met;
                match evaluate(&tower, sd, count_cap) {
                    Ok(ev) => {
                        row.h = ev.h;
                        row.h_mod_8 = ev.h % 8;
                        row.predicted_8_divides = ev.predicted_8_divides;
                        row.computed_8_divides = ev.h % 8 == 0;
                        row.ambiguous_depth = ev.ambiguous.depth;
                        row.pair_round_trip = ev.pair_round_trip;
                        row.pass = row.predicted_8_divides == row.computed_8_divides && row.pair_round_trip;
                        if !row.pass {
                            row.failure = if row.pair_round_trip {
                                "prediction disagrees with 8 | h".into()
                            } else {
                                "ambiguous pair does not recover (B, C)".into()
                            };
                        }
                    }
                    Err(err) => row.failure = err.to_string(),
                }
                row
            })
            .collect();
        rows.append(&mut point_rows);
    }
    rows
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurveyRow {
    pub q: u32,
    pub p_poly: String,
    pub k: usize,
    pub h: u64,
    pub h_mod_8: u64,
    /// `(𝔭 / T − c)` for `c` in coordinate order, as `+`, `-` or `0`.
    pub linear_symbols: String,
    pub linear_splits: usize,
    pub failure: String,
}

/// `h mod 8` over the first `sample_cap` monic irreducibles of degree `k`,
/// with the residue pattern of `𝔭` at the linear primes.
pub fn survey(tower: &Tower, e: Fe, k: usize, sample_cap: usize, count_cap: u64) -> Result<Vec<SurveyRow>> {
    if k % 4 != 0 {
        return Err(Error::Precondition(format!("survey needs 4 | k, got k = {k}")));
    }
    let ring = PolyRing::new(tower.base().clone());
    let sample: Vec<Poly> = ring.monic_irreducibles(k).take(sample_cap).collect();
    Ok(sample
        .par_iter()
        .map(|p| {
            let mut syms = String::new();
            let mut splits = 0;
            for c in tower.base().elements() {
                let lin = Poly::new(vec![tower.base().neg(c), Fe::ONE]);
                let s = symbol_euler(&ring, p, &lin).map(|s| s.as_i8()).unwrap_or(0);
                syms.push(match s {
                    1 => '+',
                    -1 => '-',
                    _ => '0',
                });
                splits += usize::from(s == 1);
            }
            let mut row = SurveyRow {
                q: tower.q(),
                p_poly: p.to_text(),
                k,
                h: 0,
                h_mod_8: 0,
                linear_symbols: syms,
                linear_splits: splits,
                failure: String::new(),
            };
            match QuadOrder::new(tower.base(), e, p.clone()).and_then(|o| zeta::pic_order_with_cap(&o, count_cap)) {
                Ok(h) => {
                    row.h = h;
                    row.h_mod_8 = h % 8;
                }
                Err(err) => row.failure = err.to_string(),
            }
            row
        })
        .collect())
}

/// `(h mod 8, count)` over a survey.
pub fn survey_histogram(rows: &[SurveyRow]) -> Vec<(u64, usize)> {
    let mut counts = [0usize; 8];
    for r in rows.iter().filter(|r| r.failure.is_empty()) {
        counts[r.h_mod_8 as usize] += 1;
    }
    counts.iter().enumerate().filter(|(_, &c)| c > 0).map(|(m, &c)| (m as u64, c)).collect()
}
