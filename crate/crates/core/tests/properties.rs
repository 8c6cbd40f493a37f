use proptest::prelude::*;
use splitocto::solver::AlgebraHandle;
use splitocto::{moufang_check, FieldElem, FieldRef, FieldSpec, Octonion, PathoMap, Poly2, RatFunc2};

fn gf(lit: &str) -> FieldRef {
    FieldSpec::parse(lit).unwrap()
}

fn oct(f: &FieldRef, c: &[u32]) -> Octonion<FieldElem> {
    Octonion::from_vec(c.iter().map(|&i| f.element_at(i as u64).unwrap()).collect()).unwrap()
}

fn poly() -> impl Strategy<Value = Poly2> {
    prop::collection::vec(0u8..2, 0..12).prop_map(|bits| Poly2::from_coeffs(&bits))
}

fn ratfunc() -> impl Strategy<Value = RatFunc2> {
    (poly(), poly().prop_filter("nonzero denominator", |d| !d.is_zero()))
        .prop_map(|(n, d)| RatFunc2::new(n, d).unwrap())
}

proptest! {
    #[test]
    fn even_odd_split_recomposes(p in poly()) {
        let (even, odd) = p.even_odd_split();
        prop_assert_eq!(Poly2::from_even_odd(&even, &odd), p);
    }

    #[test]
    fn ratfunc_display_round_trips(x in ratfunc()) {
        prop_assert_eq!(RatFunc2::parse(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn ratfunc_distributes(x in ratfunc(), y in ratfunc(), z in ratfunc()) {
        let lhs = x.try_mul(&y.try_add(&z).unwrap()).unwrap();
        let rhs = x.try_mul(&y).unwrap().try_add(&x.try_mul(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn squaring_is_additive_in_gf2k(a in 0u64..256, b in 0u64..256) {
        let f = gf("gf:2^8");
        let (a, b) = (f.element_at(a).unwrap(), f.element_at(b).unwrap());
        prop_assert_eq!((&a + &b).square(), &a.square() + &b.square());
    }

    #[test]
    fn norm_is_multiplicative_over_gf7(x in prop::collection::vec(0u32..7, 8), y in prop::collection::vec(0u32..7, 8)) {
        let f = gf("gf:7");
        let (x, y) = (oct(&f, &x), oct(&f, &y));
        prop_assert_eq!((&x * &y).norm(), &x.norm() * &y.norm());
        prop_assert!(x.square_law_holds());
    }

    #[test]
    fn moufang_over_gf9(x in prop::collection::vec(0u32..9, 8), y in prop::collection::vec(0u32..9, 8), a in prop::collection::vec(0u32..9, 8)) {
        let f = gf("gf:3^2");
        prop_assert_eq!(moufang_check(&oct(&f, &x), &oct(&f, &y), &oct(&f, &a)).unwrap(), (true, true, true));
    }

    #[test]
    fn left_matrix_realizes_multiplication(a in 0u64..6561, b in 0u64..6561) {
        let h = AlgebraHandle::octonions(gf("gf:3")).unwrap();
        let (a, b) = (h.element_at(a), h.element_at(b));
        let (l, r) = h.mul_matrices(&a);
        prop_assert_eq!(l.apply(&h.coords(&b)), h.coords(&h.mul(&a, &b)));
        prop_assert_eq!(r.apply(&h.coords(&b)), h.coords(&h.mul(&b, &a)));
    }

    #[test]
    fn patho_map_is_additive_and_satisfies_the_identity(a in ratfunc(), b in ratfunc(), x in ratfunc(), y in ratfunc()) {
        let m = PathoMap::new(a, b);
        prop_assert!(m.check_additivity(&x, &y).unwrap());
        if !x.is_zero() {
            prop_assert!(m.check_identity(&x).unwrap());
        }
    }

    #[test]
    fn patho_map_respects_square_scaling(a in ratfunc(), b in ratfunc(), u in ratfunc(), v in ratfunc()) {
        prop_assert!(PathoMap::new(a, b).check_square_law(&u, &v).unwrap());
    }
}
