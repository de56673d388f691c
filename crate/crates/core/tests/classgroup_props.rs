use std::sync::OnceLock;

use hyperclass::classgroup::{class_group, ClassGroup, QuadOrder};
use hyperclass::field::{make_field, Fe, Tower};
use hyperclass::poly::{Poly, PolyRing};
use hyperclass::zeta::pic_order;
use proptest::prelude::*;

struct Case {
    order: QuadOrder,
    group: ClassGroup,
}

fn p(v: &[u32]) -> Poly {
    Poly::new(v.iter().map(|&c| Fe(c)).collect())
}

fn build(tower: &Tower, p_poly: Poly) -> Case {
    let e = tower.base().least_non_square();
    let order = QuadOrder::new(tower.base(), e, p_poly).unwrap();
    let h = pic_order(&order).unwrap();
    let group = class_group(&order, h).unwrap();
    Case { order, group }
}

fn cases() -> &'static [Case] {
    static CASES: OnceLock<Vec<Case>> = OnceLock::new();
    CASES.get_or_init(|| {
        let mut out = Vec::new();
        for (pr, n, deg) in [(3u32, 1u32, 4usize), (3, 1, 5), (3, 1, 6), (5, 1, 4), (3, 2, 4), (7, 1, 3)] {
            let t = make_field(pr, n).unwrap();
            let ring = PolyRing::new(t.base().clone());
            // a few primes per degree to vary the group shape
            for pp in ring.monic_irreducibles(deg).step_by(5).take(3) {
                out.push(build(&t, pp));
            }
        }
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn group_axioms(c in 0usize..1000, i in 0usize..100_000, j in 0usize..100_000, k in 0usize..100_000) {
        let case = &cases()[c % cases().len()];
        let (o, els) = (&case.order, case.group.elements());
        let (x, y, z) = (&els[i % els.len()], &els[j % els.len()], &els[k % els.len()]);
        let xy_z = o.mul_class(&o.mul_class(x, y), z);
        let x_yz = o.mul_class(x, &o.mul_class(y, z));
        prop_assert_eq!(&xy_z, &x_yz);
        prop_assert_eq!(o.mul_class(x, y), o.mul_class(y, x));
        prop_assert_eq!(&o.mul_class(x, &o.identity()), x);
        prop_assert!(o.mul_class(x, &o.inverse_class(x)).is_identity());
        prop_assert!(case.group.contains(&xy_z));
    }

    #[test]
    fn principality_agrees_with_canonical_form(c in 0usize..1000, i in 0usize..100_000, j in 0usize..100_000) {
        let case = &cases()[c % cases().len()];
        let (o, els) = (&case.order, case.group.elements());
        let (x, y) = (&els[i % els.len()], &els[j % els.len()]);
        let (ix, iy) = (x.representative(), y.representative());
        prop_assert_eq!(o.same_class(ix, iy), x == y);
        // an unreduced product lands in the class of the reduced one
        let raw = o.compose(ix, iy);
        prop_assert_eq!(o.canonical(&raw), o.mul_class(x, y));
        prop_assert_eq!(o.is_principal(&raw), o.canonical(&raw).is_identity());
        let big = o.compose(&raw, &o.compose(ix, ix));
        prop_assert_eq!(o.is_principal(&big), o.canonical(&big).is_identity());
        prop_assert!(o.is_principal(&o.reduce(&o.compose(&raw, &o.conj(&raw)))));
    }

    #[test]
    fn element_orders_divide_the_exponent(c in 0usize..1000, i in 0usize..100_000) {
        let case = &cases()[c % cases().len()];
        let (o, els) = (&case.order, case.group.elements());
        let x = &els[i % els.len()];
        let ord = case.group.element_order(x).unwrap();
        prop_assert!(o.pow_class(x, ord as i64).is_identity());
        let exponent = *case.group.structure().divisors.last().unwrap_or(&1);
        prop_assert_eq!(exponent % ord, 0);
    }

    #[test]
    fn norm_degree_identity(
        (pr, n) in prop_oneof![Just((3u32, 1u32)), Just((5, 1)), Just((3, 2)), Just((7, 1))],
        k in 1usize..8,
        seeds in prop::collection::vec(0u32..1000, 24),
        du in 0usize..6,
        dv in 0usize..6,
    ) {
        let t = make_field(pr, n).unwrap();
        let f = t.base();
        let q = f.size();
        let r = PolyRing::new(f.clone());
        let e = f.least_non_square();
        let mk = |len: usize, off: usize, monic: bool| {
            let mut v: Vec<Fe> = (0..len).map(|i| Fe(seeds[(off + i) % seeds.len()] % q)).collect();
            if monic { v.push(Fe::ONE) } else { v.push(Fe(1 + seeds[off % seeds.len()] % (q - 1))) }
            Poly::new(v)
        };
        let d = r.scale(&mk(k, 0, true), e);
        let u = mk(du, 7, false);
        let v = mk(dv, 13, false);
        let norm = r.sub(&r.square(&u), &r.mul(&d, &r.square(&v)));
        prop_assert_eq!(norm.deg(), (2 * du).max(k + 2 * dv) as i64);
    }
}

#[test]
fn pencils_have_q_plus_one_members_in_one_class() {
    for case in cases().iter().filter(|c| c.order.k() % 2 == 0) {
        let o = &case.order;
        let top = o.genus() + 1;
        for x in case.group.elements().iter().filter(|x| x.representative().a.degree() == Some(top)).take(10) {
            let pencil = o.pencil(x.representative());
            let mut distinct = pencil.clone();
            distinct.sort();
            distinct.dedup();
            assert_eq!(distinct.len(), o.q() as usize + 1);
            for m in &pencil {
                assert!(o.same_class(m, x.representative()));
            }
        }
    }
}

#[test]
fn class_number_depends_only_on_square_class_of_e() {
    for (pr, n) in [(3u32, 1u32), (5, 1), (3, 2)] {
        let t = make_field(pr, n).unwrap();
        let f = t.base();
        let ring = PolyRing::new(f.clone());
        let non_squares: Vec<Fe> = f.nonzero_elements().filter(|&x| !f.is_square(x)).collect();
        for pp in ring.monic_irreducibles(4).take(4).chain(ring.monic_irreducibles(3).take(4)) {
            let hs: Vec<u64> = non_squares
                .iter()
                .map(|&e| pic_order(&QuadOrder::new(f, e, pp.clone()).unwrap()).unwrap())
                .collect();
            assert!(hs.windows(2).all(|w| w[0] == w[1]), "{pp}: {hs:?}");
        }
    }
}

#[test]
fn ambiguous_ideal_is_not_principal_in_degree_four() {
    let t = make_field(3, 1).unwrap();
    let case = build(&t, p(&[2, 1, 0, 0, 1]));
    let o = &case.order;
    let alpha = hyperclass::classgroup::least_alpha(t.base(), o.discriminant().lead());
    let (b, c) = hyperclass::classgroup::ambiguous_pair(&t, o, alpha).unwrap();
    let amb = o.ideal(&c, &b).unwrap();
    assert!(!o.is_principal(&amb));
    assert!(o.is_principal(&o.reduce(&o.compose(&amb, &amb))));
}
