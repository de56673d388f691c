use hyperclass::field::{make_field, Fe, FiniteField, MAX_TABLE_FIELD};
use hyperclass::poly::{roots_in_ext, Poly, PolyRing};
use hyperclass::symbols::{symbol_by_factorization, symbol_euler, symbol_reciprocity, SymbolValue};
use proptest::prelude::*;

fn field(p: u32, n: u32) -> FiniteField {
    FiniteField::new(p, n, MAX_TABLE_FIELD).unwrap()
}

/// `(p, n)` with `p^n ∈ {3, 5, 9, 25}`.
fn small_field() -> impl Strategy<Value = (u32, u32)> {
    prop_oneof![Just((3, 1)), Just((5, 1)), Just((3, 2)), Just((5, 2))]
}

fn poly_in(q: u32, max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(0..q, 1..=max_deg + 1).prop_map(|v| Poly::new(v.into_iter().map(Fe).collect()))
}

fn nonconstant(q: u32, max_deg: usize) -> impl Strategy<Value = Poly> {
    poly_in(q, max_deg).prop_filter("non-constant", |p| p.degree().unwrap_or(0) >= 1)
}

fn field_and_polys(max_deg: usize) -> impl Strategy<Value = ((u32, u32), Poly, Poly)> {
    small_field().prop_flat_map(move |(p, n)| {
        let q = p.pow(n);
        (Just((p, n)), nonconstant(q, max_deg), nonconstant(q, max_deg))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn embedding_is_ring_morphism((p, n) in small_field(), a in 0u32..1000, b in 0u32..1000) {
        let t = make_field(p, n).unwrap();
        let q = t.q();
        let (x, y) = (Fe(a % q), Fe(b % q));
        let (f, g) = (t.base(), t.ext());
        prop_assert_eq!(t.embed(f.add(x, y)), g.add(t.embed(x), t.embed(y)));
        prop_assert_eq!(t.embed(f.mul(x, y)), g.mul(t.embed(x), t.embed(y)));
        prop_assert_eq!(t.conj(t.conj(t.embed(x))), t.embed(x));
    }

    #[test]
    fn divmod_identity(((p, n), a, b) in field_and_polys(8)) {
        let r = PolyRing::new(field(p, n));
        let (quo, rem) = r.divmod(&a, &b).unwrap();
        prop_assert_eq!(r.add(&r.mul(&quo, &b), &rem), a);
        prop_assert!(rem.deg() < b.deg());
    }

    #[test]
    fn factor_round_trip(((p, n), a, _b) in field_and_polys(8)) {
        let r = PolyRing::new(field(p, n));
        let fac = r.factor(&a).unwrap();
        let mut prod = Poly::constant(fac.unit);
        for (f, m) in &fac.factors {
            prop_assert!(f.is_monic());
            prop_assert!(r.is_irreducible(f).unwrap());
            prod = r.mul(&prod, &r.pow(f, *m));
        }
        prop_assert_eq!(prod, a.clone());
        let sorted = fac.factors.windows(2).all(|w| w[0].0 <= w[1].0);
        prop_assert!(sorted);
        let single = fac.factors.len() == 1 && fac.factors[0].1 == 1;
        prop_assert_eq!(r.is_irreducible(&a).unwrap(), single);
    }

    #[test]
    fn root_counts_in_quadratic_extension((p, n) in small_field(), c0 in 0u32..25, c1 in 0u32..25) {
        let t = make_field(p, n).unwrap();
        let q = t.q();
        let r = PolyRing::new(t.base().clone());
        let lin = Poly::new(vec![Fe(c0 % q), Fe::ONE]);
        prop_assert_eq!(roots_in_ext(&t, &lin).unwrap().len(), 1);
        let quad = Poly::new(vec![Fe(c0 % q), Fe(c1 % q), Fe::ONE]);
        if r.is_irreducible(&quad).unwrap() {
            prop_assert_eq!(roots_in_ext(&t, &quad).unwrap().len(), 2);
        }
    }

    #[test]
    fn reciprocity_matches_euler(((p, n), f, g) in field_and_polys(8)) {
        let r = PolyRing::new(field(p, n));
        prop_assert_eq!(symbol_reciprocity(&r, &f, &g).unwrap(), symbol_by_factorization(&r, &f, &g).unwrap());
    }

    #[test]
    fn symbol_is_multiplicative_and_periodic(((p, n), f1, g) in field_and_polys(6), f2_seed in 0u64..1_000_000) {
        let r = PolyRing::new(field(p, n));
        let q = r.q();
        let f2 = Poly::from_index(f2_seed, 4, q);
        prop_assume!(!f2.is_zero());
        let prod = symbol_reciprocity(&r, &r.mul(&f1, &f2), &g).unwrap();
        let parts = symbol_reciprocity(&r, &f1, &g).unwrap().as_i8() * symbol_reciprocity(&r, &f2, &g).unwrap().as_i8();
        prop_assert_eq!(prod.as_i8(), parts);
        let shifted = r.add(&f1, &r.mul(&g, &f2));
        if !shifted.is_zero() {
            prop_assert_eq!(symbol_reciprocity(&r, &shifted, &g).unwrap(), symbol_reciprocity(&r, &f1, &g).unwrap());
        }
    }

    #[test]
    fn zero_exactly_on_common_factor(((p, n), f, g) in field_and_polys(6)) {
        let r = PolyRing::new(field(p, n));
        let coprime = r.gcd(&f, &g).unwrap().is_one();
        prop_assert_eq!(symbol_reciprocity(&r, &f, &g).unwrap() == SymbolValue::Zero, !coprime);
    }

    #[test]
    fn no_sign_flip_over_quadratic_extension(
        ((p, n), f, g) in small_field().prop_flat_map(|(p, n)| {
            let q2 = p.pow(2 * n);
            (Just((p, n)), nonconstant(q2, 6), nonconstant(q2, 6))
        })
    ) {
        // over F_{q²} with q odd, (q² − 1)/2 is even
        let r = PolyRing::new(make_field(p, n).unwrap().ext().clone());
        let (f, g) = (r.monic(&f).1, r.monic(&g).1);
        prop_assume!(r.gcd(&f, &g).unwrap().is_one());
        prop_assert_eq!(symbol_reciprocity(&r, &f, &g).unwrap(), symbol_reciprocity(&r, &g, &f).unwrap());
    }
}

#[test]
fn euler_criterion_and_square_count() {
    for (p, n) in [(3, 1), (5, 1), (3, 2), (7, 1), (11, 1), (13, 1), (5, 2), (3, 4), (13, 2)] {
        let f = field(p, n);
        let q = f.size() as u128;
        let mut squares = 0;
        for x in f.nonzero_elements() {
            let euler = f.pow(x, (q - 1) / 2) == Fe::ONE;
            assert_eq!(f.is_square(x), euler);
            squares += usize::from(euler);
        }
        assert_eq!(squares as u128, (q - 1) / 2);
    }
}

#[test]
fn euler_symbol_examples_over_extension() {
    let r = PolyRing::new(field(3, 2));
    // F_9 lies in the squares of every residue field F_81
    for g in r.monic_irreducibles(2).take(5) {
        for c in r.field().nonzero_elements() {
            let s = symbol_euler(&r, &Poly::constant(c), &g).unwrap();
            assert_eq!(s, SymbolValue::One);
        }
    }
}
