//! The order `O = A[√D]`, `A = F_q[T]`, `D = e·𝔭` imaginary, its ideals
//! `a·A + (b + √D)·A`, and the class group `Pic(O)` with its structure.
//!
//! Reduced ideals have `deg a ≤ g` (odd `deg D`) or `deg a ≤ g + 1` (even
//! `deg D`, inert infinity). They are unique in their class except in the
//! even case at degree `g + 1`, where a class holds a pencil of exactly
//! `q + 1` of them. The canonical representative of a class is its least
//! reduced ideal in `(deg a, a, b)` order.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Fe, FiniteField, Tower};
use crate::poly::{Poly, PolyRing};

#[derive(Clone, Debug)]
pub struct QuadOrder {
    ring: PolyRing,
    e: Fe,
    p_poly: Poly,
    disc: Poly,
    k: usize,
    genus: usize,
    d_inf: u32,
}

impl QuadOrder {
    /// `F_q[T, √(e·p_poly)]` for a non-square `e` and irreducible `p_poly`.
    pub fn new(field: &FiniteField, e: Fe, p_poly: Poly) -> Result<Self> {
        let ring = PolyRing::new(field.clone());
        if !field.contains(e) || e.is_zero() || field.is_square(e) {
            return Err(Error::SquareMultiplier(format!("e = {e}")));
        }
        let k = match p_poly.degree() {
            None | Some(0) => return Err(Error::ConstantPolynomial),
            Some(k) => k,
        };
        if p_poly.coeffs().iter().any(|&c| !field.contains(c)) {
            return Err(Error::InvalidOrder("coefficient outside the field".into()));
        }
        if !ring.is_irreducible(&p_poly)? {
            return Err(Error::Reducible(p_poly.to_text()));
        }
        let disc = ring.scale(&p_poly, e);
        if k % 2 == 0 && field.is_square(disc.lead()) {
            return Err(Error::InvalidOrder(
                "leading coefficient of e·𝔭 is a square: infinity splits (real quadratic)".into(),
            ));
        }
        let genus = if k % 2 == 1 { (k - 1) / 2 } else { (k - 2) / 2 };
        let d_inf = if k % 2 == 1 { 1 } else { 2 };
        Ok(QuadOrder { ring, e, p_poly, disc, k, genus, d_inf })
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn field(&self) -> &FiniteField {
        self.ring.field()
    }

    pub fn q(&self) -> u32 {
        self.ring.q()
    }

    pub fn e(&self) -> Fe {
        self.e
    }

    pub fn p_poly(&self) -> &Poly {
        &self.p_poly
    }

    /// `D = e·𝔭`.
    pub fn discriminant(&self) -> &Poly {
        &self.disc
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Degree of the infinite place: 1 ramified (odd k), 2 inert (even k).
    pub fn d_inf(&self) -> u32 {
        self.d_inf
    }

    /// Largest `deg a` of a reduced ideal.
    pub fn reduced_bound(&self) -> usize {
        if self.k % 2 == 1 {
            self.genus
        } else {
            self.genus + 1
        }
    }
}

/// The A-module `a·A + (b + √D)·A`, scaled by `unit`; `a` monic, `deg b < deg a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderIdeal {
    pub a: Poly,
    pub b: Poly,
    pub unit: Fe,
}

impl fmt::Display for OrderIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {} + √D)", self.a, self.b)
    }
}

/// A class of `Pic(O)`, held by its canonical representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdealClass {
    rep: OrderIdeal,
}

impl IdealClass {
    pub fn representative(&self) -> &OrderIdeal {
        &self.rep
    }

    pub fn is_identity(&self) -> bool {
        self.rep.a.is_one()
    }
}

impl fmt::Display for IdealClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.rep)
    }
}

impl QuadOrder {
    /// Normalizes and validates `(a, b + √D)`.
    pub fn ideal(&self, a: &Poly, b: &Poly) -> Result<OrderIdeal> {
        let r = &self.ring;
        if a.is_zero() {
            return Err(Error::NotAnIdeal("a = 0".into()));
        }
        let (_, a) = r.monic(a);
        let b = r.rem(b, &a)?;
        let norm = r.sub(&r.square(&b), &self.disc);
        if !r.rem(&norm, &a)?.is_zero() {
            return Err(Error::NotAnIdeal(format!("{a} does not divide b² − D for b = {b}")));
        }
        Ok(OrderIdeal { a, b, unit: Fe::ONE })
    }

    pub fn unit_ideal(&self) -> OrderIdeal {
        OrderIdeal { a: Poly::one(), b: Poly::zero(), unit: Fe::ONE }
    }

    pub fn identity(&self) -> IdealClass {
        IdealClass { rep: self.unit_ideal() }
    }

    /// `(a, −b)`, the Galois conjugate; also the inverse class.
    pub fn conj(&self, i: &OrderIdeal) -> OrderIdeal {
        let r = &self.ring;
        let b = r.rem(&r.neg(&i.b), &i.a).expect("a is nonzero");
        OrderIdeal { a: i.a.clone(), b, unit: i.unit }
    }

    /// Primitive part of the product `I·J` (Cantor composition).
    pub fn compose(&self, i: &OrderIdeal, j: &OrderIdeal) -> OrderIdeal {
        let r = &self.ring;
        // Mumford convention: the ideal (a, b + √D) is (u, √D − v) with v = −b
        let v1 = r.neg(&i.b);
        let v2 = r.neg(&j.b);
        let (d0, e1, e2) = r.xgcd(&i.a, &j.a).expect("a is nonzero");
        let (d, s1, s2, s3) = if d0.is_one() {
            (d0, e1, e2, Poly::zero())
        } else {
            let (d, c1, c2) = r.xgcd(&d0, &r.add(&v1, &v2)).expect("d0 is nonzero");
            (d, r.mul(&c1, &e1), r.mul(&c1, &e2), c2)
        };
        let a = r
            .exact_div(&r.mul(&i.a, &j.a), &r.square(&d))
            .expect("d² divides a1·a2");
        let mut num = r.add(&r.mul(&r.mul(&s1, &i.a), &v2), &r.mul(&r.mul(&s2, &j.a), &v1));
        if !s3.is_zero() {
            let t = r.add(&r.mul(&v1, &v2), &self.disc);
            num = r.add(&num, &r.mul(&s3, &t));
        }
        let v = r.exact_div(&num, &d).expect("d divides the composed v");
        let b = r.rem(&r.neg(&v), &a).expect("a is nonzero");
        OrderIdeal { a, b, unit: Fe::ONE }
    }

    /// `(a, b) ↦ ((D − b²)/a, −b)`: an equivalent ideal, smaller while `deg a` is large.
    pub fn reduce_step(&self, i: &OrderIdeal) -> OrderIdeal {
        let r = &self.ring;
        let num = r.sub(&self.disc, &r.square(&i.b));
        let a = r.exact_div(&num, &i.a).expect("a divides D − b²");
        let (_, a) = r.monic(&a);
        let b = r.rem(&r.neg(&i.b), &a).expect("a is nonzero");
        OrderIdeal { a, b, unit: Fe::ONE }
    }

    /// Reduces until `deg a` is at most [`Self::reduced_bound`].
    pub fn reduce(&self, i: &OrderIdeal) -> OrderIdeal {
        let bound = self.reduced_bound();
        let mut cur = i.clone();
        while cur.a.degree().unwrap_or(0) > bound {
            cur = self.reduce_step(&cur);
        }
        cur
    }

    /// All reduced ideals equivalent to a reduced ideal of degree `g + 1`
    /// (even `k`): the ideal itself and `((D − u²)/a, −u)` for `u = b + c·a`.
    pub fn pencil(&self, i: &OrderIdeal) -> Vec<OrderIdeal> {
        let r = &self.ring;
        let mut out = vec![i.clone()];
        for c in self.field().elements() {
            let u = r.add(&i.b, &r.scale(&i.a, c));
            let num = r.sub(&self.disc, &r.square(&u));
            let a = r.exact_div(&num, &i.a).expect("a divides D − u²");
            let (_, a) = r.monic(&a);
            let b = r.rem(&r.neg(&u), &a).expect("a is nonzero");
            out.push(OrderIdeal { a, b, unit: Fe::ONE });
        }
        out
    }

    /// Canonical representative of the class of `i`.
    pub fn canonical(&self, i: &OrderIdeal) -> IdealClass {
        let red = self.reduce(i);
        let rep = if self.k % 2 == 0 && red.a.degree() == Some(self.genus + 1) {
            self.pencil(&red).into_iter().min().expect("pencil is nonempty")
        } else {
            red
        };
        IdealClass { rep }
    }

    pub fn class_of(&self, i: &OrderIdeal) -> IdealClass {
        self.canonical(i)
    }

    /// A reduced, canonical ideal equivalent to `I·J`.
    pub fn ideal_mul_reduce(&self, i: &OrderIdeal, j: &OrderIdeal) -> OrderIdeal {
        self.canonical(&self.compose(i, j)).rep
    }

    pub fn mul_class(&self, x: &IdealClass, y: &IdealClass) -> IdealClass {
        self.canonical(&self.compose(&x.rep, &y.rep))
    }

    pub fn inverse_class(&self, x: &IdealClass) -> IdealClass {
        self.canonical(&self.conj(&x.rep))
    }

    pub fn pow_class(&self, x: &IdealClass, n: i64) -> IdealClass {
        let mut base = if n < 0 { self.inverse_class(x) } else { x.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_class(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_class(&base, &base);
            }
        }
        acc
    }

    /// Whether `I = (u + v√D)·O`. The norm degree `max(2 deg u, k + 2 deg v)`
    /// never cancels, so `deg a < k` forces `v = 0` and leaves only `a = 1`;
    /// otherwise `v` ranges over polynomials of degree `≤ (deg a − k)/2` and
    /// `u = v·b mod a` is forced.
    pub fn is_principal(&self, i: &OrderIdeal) -> bool {
        const SEARCH_CAP: u64 = 1 << 20;
        let r = &self.ring;
        let i = match self.ideal(&i.a, &i.b) {
            Ok(norm) => norm,
            Err(_) => return false,
        };
        let da = i.a.degree().unwrap_or(0);
        if i.a.is_one() {
            return true;
        }
        if da < self.k {
            return false;
        }
        let vdeg = (da - self.k) / 2;
        let count = (self.q() as u64).checked_pow(vdeg as u32 + 1);
        match count {
            Some(count) if count <= SEARCH_CAP => (1..count).any(|idx| {
                let v = Poly::from_index(idx, vdeg + 1, self.q());
                let u = r.rem(&r.mul(&v, &i.b), &i.a).expect("a is nonzero");
                let norm = r.sub(&r.square(&u), &r.mul(&self.disc, &r.square(&v)));
                let (_, nm) = r.monic(&norm);
                nm == i.a
            }),
            _ => {
                let red = self.reduce(&i);
                red.a.is_one()
            }
        }
    }

    /// `I ~ J` iff `I·conj(J)` reduces to a principal ideal.
    pub fn same_class(&self, i: &OrderIdeal, j: &OrderIdeal) -> bool {
        self.is_principal(&self.reduce(&self.compose(i, &self.conj(j))))
    }

    /// Prime ideal above the monic irreducible `f`, or `None` if `f` is inert.
    pub fn prime_above(&self, f: &Poly) -> Result<Option<OrderIdeal>> {
        let r = &self.ring;
        let field = self.field();
        let root = if f.degree() == Some(1) {
            let c = field.neg(f.coeff(0));
            field.sqrt(r.eval(&self.disc, c)).map(Poly::constant)
        } else {
            let d = r.rem(&self.disc, f)?;
            r.sqrt_mod(&d, f)?
        };
        match root {
            None => Ok(None),
            Some(b) => self.ideal(f, &b).map(Some),
        }
    }
}

/// Elementary divisors `d₁ | d₂ | …` (all > 1) with one generator per divisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianStructure {
    pub divisors: Vec<u64>,
    pub generators: Vec<IdealClass>,
}

impl AbelianStructure {
    pub fn order(&self) -> u64 {
        self.divisors.iter().product()
    }

    /// `(s, cyclic)`: the 2-Sylow has order `2^s`, cyclic iff at most one
    /// elementary divisor is even.
    pub fn two_sylow(&self) -> (u32, bool) {
        two_sylow(&self.divisors)
    }
}

pub fn two_sylow(divisors: &[u64]) -> (u32, bool) {
    let s = divisors.iter().map(|d| d.trailing_zeros()).sum();
    let even = divisors.iter().filter(|d| *d % 2 == 0).count();
    (s, even <= 1)
}

#[derive(Clone, Debug)]
pub struct ClassGroup {
    order: QuadOrder,
    elements: Vec<IdealClass>,
    lookup: HashMap<IdealClass, usize>,
    raw_coords: Vec<Vec<u32>>,
    raw_generators: Vec<IdealClass>,
    // element coordinates in the raw basis times this, reduced mod divisors
    to_snf: Vec<Vec<i128>>,
    structure: AbelianStructure,
}

/// Default degree cap for generating primes: `2g + 2`.
pub fn default_prime_degree_cap(order: &QuadOrder) -> usize {
    2 * order.genus() + 2
}

/// Enumerates `Pic(O)` from prime ideals of increasing degree until it has
/// `target_h` elements, then extracts its elementary divisors.
pub fn class_group(order: &QuadOrder, target_h: u64) -> Result<ClassGroup> {
    class_group_with_cap(order, target_h, default_prime_degree_cap(order))
}

pub fn class_group_with_cap(order: &QuadOrder, target_h: u64, degree_cap: usize) -> Result<ClassGroup> {
    if target_h == 0 {
        return Err(Error::Precondition("target class number must be positive".into()));
    }
    let id = order.identity();
    let mut elements = vec![id.clone()];
    let mut lookup = HashMap::from([(id, 0usize)]);
    let mut raw_coords: Vec<Vec<u32>> = vec![Vec::new()];
    let mut raw_generators: Vec<IdealClass> = Vec::new();
    let mut relations: Vec<Vec<i128>> = Vec::new();

    'degrees: for deg in 1..=degree_cap {
        for f in order.ring().monic_irreducibles(deg) {
            if elements.len() as u64 >= target_h {
                break 'degrees;
            }
            let Some(prime) = order.prime_above(&f)? else { continue };
            let gen = order.canonical(&prime);
            if lookup.contains_key(&gen) {
                continue;
            }
            // relative order of gen modulo the current subgroup
            let mut power = gen.clone();
            let mut rel_order = 1u32;
            let hit = loop {
                if let Some(&idx) = lookup.get(&power) {
                    break idx;
                }
                power = order.mul_class(&power, &gen);
                rel_order += 1;
            };
            let m = raw_generators.len();
            let mut rel = vec![0i128; m + 1];
            for (j, &c) in raw_coords[hit].iter().enumerate() {
                rel[j] = -(c as i128);
            }
            rel[m] = rel_order as i128;
            relations.push(rel);

            let old = elements.len();
            if (old as u64) * rel_order as u64 > target_h {
                return Err(Error::Internal(format!(
                    "subgroup of order {} exceeds the target {target_h}",
                    old as u64 * rel_order as u64
                )));
            }
            for c in &mut raw_coords {
                c.push(0);
            }
            let mut layer_start = 0;
            for step in 1..rel_order {
                let layer_end = elements.len();
                for idx in layer_start..layer_end.min(layer_start + old) {
                    let x = order.mul_class(&elements[idx], &gen);
                    let mut coords = raw_coords[idx].clone();
                    coords[m] = step;
                    if lookup.insert(x.clone(), elements.len()).is_some() {
                        return Err(Error::Internal(format!("class {x} enumerated twice")));
                    }
                    elements.push(x);
                    raw_coords.push(coords);
                }
                layer_start = layer_end;
            }
            raw_generators.push(gen);
        }
    }
    if elements.len() as u64 != target_h {
        return Err(Error::Saturated {
            reached: elements.len() as u64,
            target: target_h,
        });
    }

    let m = raw_generators.len();
    let mut matrix = vec![vec![0i128; m]; m];
    for (i, rel) in relations.iter().enumerate() {
        for (j, &v) in rel.iter().enumerate() {
            matrix[i][j] = v;
        }
    }
    let snf = smith_normal_form(matrix);
    let mut divisors = Vec::new();
    let mut to_snf = Vec::new();
    let mut generators = Vec::new();
    for (i, &d) in snf.diagonal.iter().enumerate() {
        if d == 1 {
            continue;
        }
        divisors.push(d as u64);
        to_snf.push((0..m).map(|j| snf.v[j][i]).collect::<Vec<_>>());
        let mut g = order.identity();
        for (j, raw) in raw_generators.iter().enumerate() {
            let exp = snf.v_inv[i][j].rem_euclid(target_h as i128) as i64;
            if exp != 0 {
                g = order.mul_class(&g, &order.pow_class(raw, exp));
            }
        }
        generators.push(g);
    }
    let structure = AbelianStructure { divisors, generators };
    if structure.order() != target_h {
        return Err(Error::Internal(format!(
            "elementary divisors multiply to {} instead of {target_h}",
            structure.order()
        )));
    }
    Ok(ClassGroup {
        order: order.clone(),
        elements,
        lookup,
        raw_coords,
        raw_generators,
        to_snf,
        structure,
    })
}

impl ClassGroup {
    pub fn order(&self) -> &QuadOrder {
        &self.order
    }

    pub fn class_number(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn structure(&self) -> &AbelianStructure {
        &self.structure
    }

    pub fn elements(&self) -> &[IdealClass] {
        &self.elements
    }

    pub fn raw_generators(&self) -> &[IdealClass] {
        &self.raw_generators
    }

    pub fn contains(&self, c: &IdealClass) -> bool {
        self.lookup.contains_key(c)
    }

    /// Coordinates of a class on the elementary-divisor generators.
    pub fn discrete_log(&self, c: &IdealClass) -> Option<Vec<u64>> {
        let idx = *self.lookup.get(c)?;
        let raw = &self.raw_coords[idx];
        Some(
            self.to_snf
                .iter()
                .zip(&self.structure.divisors)
                .map(|(col, &d)| {
                    let s: i128 = col.iter().zip(raw).map(|(&v, &x)| v * x as i128).sum();
                    s.rem_euclid(d as i128) as u64
                })
                .collect(),
        )
    }

    /// Order of a class, read off its coordinates.
    pub fn element_order(&self, c: &IdealClass) -> Option<u64> {
        let coords = self.discrete_log(c)?;
        Some(
            coords
                .iter()
                .zip(&self.structure.divisors)
                .map(|(&x, &d)| d / crate::field::gcd_u64(x, d))
                .fold(1, lcm),
        )
    }

    /// Largest `j` with `c ∈ G^(2^j)`; `None` when `c` lies in every such power.
    pub fn two_power_depth(&self, c: &IdealClass) -> Option<Option<u32>> {
        let coords = self.discrete_log(c)?;
        let mut depth: Option<u32> = None;
        for (&x, &d) in coords.iter().zip(&self.structure.divisors) {
            if x % d == 0 {
                continue;
            }
            let (vx, vd) = (x.trailing_zeros(), d.trailing_zeros());
            if vx < vd {
                depth = Some(depth.map_or(vx, |j| j.min(vx)));
            }
        }
        Some(depth)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / crate::field::gcd_u64(a, b) * b
}

struct Snf {
    diagonal: Vec<i128>,
    v: Vec<Vec<i128>>,
    v_inv: Vec<Vec<i128>>,
}

/// Smith form `U·A·V = diag` of a nonsingular square matrix, tracking the
/// column transform `V` and its inverse.
fn smith_normal_form(mut a: Vec<Vec<i128>>) -> Snf {
    let m = a.len();
    let ident = |m: usize| -> Vec<Vec<i128>> {
        (0..m).map(|i| (0..m).map(|j| i128::from(i == j)).collect()).collect()
    };
    let mut v = ident(m);
    let mut v_inv = ident(m);
    for t in 0..m {
        loop {
            let pivot = (t..m)
                .flat_map(|i| (t..m).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs());
            let Some((pi, pj)) = pivot else { break };
            a.swap(t, pi);
            if pj != t {
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                for row in v.iter_mut() {
                    row.swap(t, pj);
                }
                v_inv.swap(t, pj);
            }
            let piv = a[t][t];
            let mut clean = true;
            for i in t + 1..m {
                let f = a[i][t] / piv;
                if f != 0 {
                    for j in t..m {
                        a[i][j] -= f * a[t][j];
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..m {
                let f = a[t][j] / piv;
                if f != 0 {
                    for row in a.iter_mut() {
                        row[j] -= f * row[t];
                    }
                    for row in v.iter_mut() {
                        row[j] -= f * row[t];
                    }
                    for c in 0..m {
                        let add = f * v_inv[j][c];
                        v_inv[t][c] += add;
                    }
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..m)
                .flat_map(|i| (t + 1..m).map(move |j| (i, j)))
                .find(|&(i, j)| a[i][j] % piv != 0);
            match bad {
                Some((i, _)) => {
                    for j in t..m {
                        let add = a[i][j];
                        a[t][j] += add;
                    }
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for j in t..m {
                a[t][j] = -a[t][j];
            }
        }
    }
    Snf {
        diagonal: (0..m).map(|i| a[i][i]).collect(),
        v,
        v_inv,
    }
}

/// Least `α` (coordinate order) with `α² − 4ε` a non-square, so that
/// `εX² + αXY + Y²` is irreducible.
pub fn least_alpha(field: &FiniteField, eps: Fe) -> Fe {
    field
        .elements()
        .find(|&a| {
            let disc = field.sub(field.mul(a, a), field.mul(field.from_int(4), eps));
            !field.is_square(disc)
        })
        .expect("a non-square ε admits an irreducible form")
}

/// Root `δ` of `εX² + αX + 1` in F_{q²} (the least one), so that
/// `εX² + αXY + Y² = ε(X − δY)(X − δ̄Y)`.
pub fn form_root(tower: &Tower, eps: Fe, alpha: Fe) -> Result<Fe> {
    let (base, ext) = (tower.base(), tower.ext());
    let disc = base.sub(base.mul(alpha, alpha), base.mul(base.from_int(4), eps));
    if base.is_square(disc) {
        return Err(Error::Precondition(format!(
            "α² − 4ε = {disc} is a square: the form is reducible over F_q"
        )));
    }
    let s = ext.sqrt(tower.embed(disc)).expect("every element of F_q is a square in F_{q²}");
    let two_eps = tower.embed(base.mul(base.from_int(2), eps));
    let minus_alpha = tower.embed(base.neg(alpha));
    let r1 = ext.div(ext.add(minus_alpha, s), two_eps);
    let r2 = ext.div(ext.sub(minus_alpha, s), two_eps);
    Ok(r1.min(r2))
}

/// `(B, C)` with `D = κ(C, B) = εC² + αBC + B²`, `C` monic, `deg B < deg C = k/2`,
/// where `ε = lead(D)`. The ambiguous ideal is then `(C, B + √D)`.
pub fn ambiguous_pair(tower: &Tower, order: &QuadOrder, alpha: Fe) -> Result<(Poly, Poly)> {
    if order.k() % 2 == 1 {
        return Err(Error::Precondition("no ambiguous pair for odd deg 𝔭".into()));
    }
    let base = tower.base();
    let ext = tower.ext();
    let ring = order.ring();
    let eps = order.discriminant().lead();
    let delta = form_root(tower, eps, alpha)?;
    let delta_bar = tower.conj(delta);
    let diff_inv = ext.inv(ext.sub(delta, delta_bar));
    let (_, monic_p) = ring.monic(order.discriminant());
    let ext_ring = PolyRing::new(ext.clone());
    let lifted = ext_ring.lift(&monic_p, tower.embedding());
    let factors = ext_ring.factor(&lifted)?;
    let half = order.k() / 2;
    // z = x − yδ with x, y ∈ F_q: y = −(z − z̄)/(δ − δ̄), x = z + yδ
    let split = |z: Fe| -> Option<(Fe, Fe)> {
        let y = ext.neg(ext.mul(ext.sub(z, tower.conj(z)), diff_inv));
        let x = ext.add(z, ext.mul(y, delta));
        Some((tower.project(x)?, tower.project(y)?))
    };
    for (pi, _) in factors.factors.iter().filter(|(f, _)| f.degree() == Some(half)) {
        let mut c = Vec::with_capacity(half + 1);
        let mut b = Vec::with_capacity(half + 1);
        let mut ok = true;
        for &z in pi.coeffs() {
            match split(z) {
                Some((x, y)) => {
                    c.push(x);
                    b.push(y);
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let (c, b) = (Poly::new(c), Poly::new(b));
        if c.degree() != Some(half) || !c.is_monic() || b.deg() >= half as i64 {
            continue;
        }
        if kappa(ring, eps, alpha, &c, &b) == *order.discriminant() {
            return Ok((b, c));
        }
    }
    Err(Error::Internal(format!(
        "no ambiguous pair found for {} over {:?}",
        order.p_poly(),
        base
    )))
}

/// `εX² + αXY + Y²` at `(X, Y)`.
pub fn kappa(ring: &PolyRing, eps: Fe, alpha: Fe, x: &Poly, y: &Poly) -> Poly {
    let xx = ring.scale(&ring.square(x), eps);
    let xy = ring.scale(&ring.mul(x, y), alpha);
    ring.add(&ring.add(&xx, &xy), &ring.square(y))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AmbiguousClass {
    pub ideal: String,
    pub order: u64,
    /// Largest j with the class in `G^(2^j)`; `None` if in all of them.
    pub depth: Option<u32>,
}

/// Order and 2-power depth of the class of `(C, B + √D)`.
pub fn ambiguous_class_order(
    order: &QuadOrder,
    b: &Poly,
    c: &Poly,
    group: &ClassGroup,
) -> Result<AmbiguousClass> {
    if order.k() % 2 == 1 {
        return Err(Error::Precondition("no ambiguous class for odd deg 𝔭".into()));
    }
    let ideal = order.ideal(c, b)?;
    let class = order.canonical(&ideal);
    let ord = group
        .element_order(&class)
        .ok_or_else(|| Error::Internal(format!("{class} missing from the class group")))?;
    let depth = group.two_power_depth(&class).flatten();
    Ok(AmbiguousClass {
        ideal: ideal.to_string(),
        order: ord,
        depth,
    })
}
