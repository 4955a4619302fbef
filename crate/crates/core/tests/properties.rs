use proptest::prelude::*;
use saito_core::algebra::{euler_integrate, gcd, gradient, Monomial, Poly, PolyMatrix, Rat, RatFn, RatMatrix, Vars};
use saito_core::gm1n::cofactor_det;

fn vars() -> Vars {
    Vars::indexed("u", 3).unwrap()
}

fn term() -> impl Strategy<Value = ([u32; 3], i64, i64)> {
    ([0u32..3, 0u32..3, 0u32..3], -6i64..=6, 1i64..=3)
}

fn poly_from(terms: &[([u32; 3], i64, i64)]) -> Poly {
    let v = vars();
    let ts = terms.iter().map(|(e, n, d)| (Monomial::from_exponents(e), Rat::new(*n, *d))).collect();
    Poly::from_terms(&v, ts)
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(term(), 0..5).prop_map(|t| poly_from(&t))
}

fn nonzero_poly() -> impl Strategy<Value = Poly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

/// Weighted-homogeneous polynomial of weighted degree `deg` for weights (3, 2, 1).
fn homogeneous(deg: u32) -> impl Strategy<Value = Poly> {
    let w = [3u32, 2, 1];
    let mut monos = Vec::new();
    for a in 0..=deg / w[0] {
        for b in 0..=(deg - a * w[0]) / w[1] {
            let c = deg - a * w[0] - b * w[1];
            monos.push([a, b, c]);
        }
    }
    prop::collection::vec(-5i64..=5, monos.len()).prop_map(move |cs| {
        let ts: Vec<_> = monos.iter().zip(cs).map(|(m, c)| (*m, c, 1)).collect();
        poly_from(&ts)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_division_round_trip(a in poly(), b in nonzero_poly()) {
        let p = &a * &b;
        prop_assert_eq!(p.div_exact(&b).unwrap(), a);
    }

    #[test]
    fn mixed_partials_commute(p in poly(), i in 0usize..3, j in 0usize..3) {
        prop_assert_eq!(p.derivative(i).derivative(j), p.derivative(j).derivative(i));
    }

    #[test]
    fn leibniz_rule(a in poly(), b in poly(), i in 0usize..3) {
        let lhs = (&a * &b).derivative(i);
        let rhs = &(&a.derivative(i) * &b) + &(&a * &b.derivative(i));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gcd_divides_and_keeps_common_factor(a in nonzero_poly(), b in nonzero_poly(), c in nonzero_poly()) {
        let (ac, bc) = (&a * &c, &b * &c);
        let g = gcd(&ac, &bc);
        prop_assert!(ac.exact_div(&g).unwrap().is_some());
        prop_assert!(bc.exact_div(&g).unwrap().is_some());
        prop_assert!(g.exact_div(&c.primitive().1).unwrap().is_some());
    }

    #[test]
    fn rational_function_field_laws(a in poly(), b in nonzero_poly(), c in nonzero_poly(), d in nonzero_poly()) {
        let r = RatFn::new(a, b).unwrap();
        let s = RatFn::new(c, d).unwrap();
        prop_assert!((&(&r + &s) - &s).equals(&r));
        prop_assert!((&(&r * &s) / &s).equals(&r));
        if !r.is_zero() {
            prop_assert!((&r * &r.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn quotient_rule(a in poly(), b in nonzero_poly(), i in 0usize..3) {
        let r = RatFn::new(a.clone(), b.clone()).unwrap();
        let num = &(&a.derivative(i) * &b) - &(&a * &b.derivative(i));
        let expect = RatFn::new(num, &b * &b).unwrap();
        prop_assert!(r.derivative(i).equals(&expect));
    }

    #[test]
    fn bareiss_matches_cofactor_expansion(entries in prop::collection::vec(poly(), 9)) {
        let v = vars();
        let m = PolyMatrix::from_fn(&v, 3, 3, |i, j| entries[3 * i + j].clone());
        prop_assert_eq!(m.det().unwrap(), cofactor_det(&m).unwrap());
    }

    #[test]
    fn inverse_is_two_sided(entries in prop::collection::vec(poly(), 4)) {
        let v = vars();
        let m = PolyMatrix::from_fn(&v, 2, 2, |i, j| entries[2 * i + j].clone());
        prop_assume!(!m.det().unwrap().is_zero());
        let r = m.to_ratfn();
        let inv = r.inverse().unwrap();
        let id = RatMatrix::identity(&v, 2);
        prop_assert!(r.mul(&inv).first_difference(&id).is_none());
        prop_assert!(inv.mul(&r).first_difference(&id).is_none());
    }

    #[test]
    fn euler_integration_inverts_gradient((deg, f) in (1u32..8).prop_flat_map(|d| (Just(d), homogeneous(d)))) {
        let w = [3u32, 2, 1];
        prop_assert_eq!(euler_integrate(&gradient(&f), &w, deg as i64).unwrap(), f);
    }

    #[test]
    fn weighted_degrees_add(a in homogeneous(4), b in homogeneous(3)) {
        let w = [3u32, 2, 1];
        prop_assume!(!a.is_zero() && !b.is_zero());
        prop_assert_eq!(a.homogeneous_degree(&w), Some(4));
        prop_assert_eq!((&a * &b).homogeneous_degree(&w), Some(7));
        let r = RatFn::new(a, b).unwrap();
        prop_assert_eq!(r.homogeneous_degree(&w), Some(1));
    }
}
