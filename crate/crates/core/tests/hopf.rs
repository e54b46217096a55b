use cyclocat::arith::{CyclotomicField, Field};
use cyclocat::hopf::{verify_all, verify_hopf_axioms, Bosonization, BosonizedElement, CoproductRule, HnStructure};
use proptest::prelude::*;

#[test]
fn frozen_structure_constants() {
    let s = HnStructure::rational(6).unwrap();
    assert_eq!((s.num_primes(), s.prime(0), s.prime(1)), (2, 2, 3));
    assert_eq!((s.radical(), s.root_order(), s.degree(0), s.degree(1), s.ell()), (6, 6, 3, 2, 7));
    let s = HnStructure::rational(12).unwrap();
    assert_eq!((s.radical(), s.root_order(), s.degree(0), s.degree(1), s.ell()), (6, 24, 6, 4, 14));
    let s = HnStructure::rational(7).unwrap();
    assert_eq!((s.num_primes(), s.radical(), s.root_order(), s.degree(0), s.ell()), (1, 7, 7, 1, 6));
    assert_eq!(HnStructure::rational(30).unwrap().bosonization_dim(), 900);
    assert!(HnStructure::rational(1).is_err());
}

#[test]
fn integral_and_pivot_for_six() {
    let s = HnStructure::rational(6).unwrap();
    let h = s.algebra();
    let f = s.field();
    let lambda = h.monomial(&[1, 2], 0).unwrap();
    assert_eq!(h.braided_integral(), lambda);
    assert!(f.is_one(&h.trace(&lambda).unwrap()));
    assert!(f.is_zero(&h.trace(&h.one()).unwrap()));
    // N = 6, so K^{-5} = K.
    assert_eq!(h.pivot(), h.k_power(1));
    for k in 0..2 {
        assert!(h.multiply(&h.d(k), &h.integral()).is_zero());
    }
}

#[test]
fn modular_fields_pass_the_suites() {
    for (n, p) in [(6, 7), (12, 73), (10, 101), (4, 17)] {
        let s = HnStructure::modular(n, p).unwrap();
        let r = verify_all(s.algebra());
        assert!(r.all_passed(), "{r}");
    }
    let e = HnStructure::modular(6, 5).unwrap_err().to_string();
    assert!(e.contains("N = 6"), "{e}");
}

#[test]
fn untwisted_coproduct_fails() {
    for n in [2, 6] {
        let h = Bosonization::with_rule(HnStructure::rational(n).unwrap(), CoproductRule::Untwisted);
        assert!(!verify_hopf_axioms(&h).all_passed(), "n = {n}");
    }
}

#[test]
fn squares_of_sums() {
    let s = HnStructure::rational(6).unwrap();
    let h = s.algebra();
    let f = s.field();
    let sum = h.add(&h.d(0), &h.d(1));
    let expected = h.add(&h.pow(&h.d(1), 2), &h.scale(&h.multiply(&h.d(0), &h.d(1)), &f.from_i64(2)));
    assert_eq!(h.pow(&sum, 2), expected);
}

fn element(h: &Bosonization<CyclotomicField>, coeffs: &[(usize, i64)]) -> BosonizedElement<<CyclotomicField as Field>::Elem> {
    let f = h.field();
    h.from_terms(coeffs.iter().map(|(i, c)| (i % h.dim(), f.from_i64(*c))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hopf_maps_respect_products(
        n in prop::sample::select(vec![4u64, 6, 10]),
        x in proptest::collection::vec((0usize..400, -2i64..=2), 1..4),
        y in proptest::collection::vec((0usize..400, -2i64..=2), 1..4),
    ) {
        let s = HnStructure::rational(n).unwrap();
        let h = s.algebra();
        let f = s.field();
        let (a, b) = (element(h, &x), element(h, &y));
        let ab = h.multiply(&a, &b);
        prop_assert_eq!(h.coproduct(&ab), h.multiply_tensors(&h.coproduct(&a), &h.coproduct(&b)));
        prop_assert_eq!(h.counit(&ab), f.mul(&h.counit(&a), &h.counit(&b)));
        prop_assert_eq!(h.antipode(&ab), h.multiply(&h.antipode(&b), &h.antipode(&a)));
        prop_assert_eq!(h.antipode_inverse(&h.antipode(&a)), a);
    }
}
