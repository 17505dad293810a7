use proptest::prelude::*;

use nicecurve_core::arith::{int, rat, rational_roots, Fp};
use nicecurve_core::hyper::{enumerate_jacobian, Jacobian, HyperCurve};
use nicecurve_core::nice::{param_inverse, param_l, rank2_witnesses, NiceCurve};
use nicecurve_core::padic::{padic_sqrt, Padic};
use nicecurve_core::{FpDivisor, QPoly, Rational};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=40).prop_map(|(a, b)| rat(a, b))
}

fn jacobian_mod(p: u64) -> (Jacobian<Fp>, Vec<FpDivisor>) {
    let f = HyperCurve::h_q().reduce_mod(p).unwrap();
    let jac = Jacobian::new(f).unwrap();
    let all = enumerate_jacobian(&jac);
    (jac, all)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn param_lands_on_the_conic(t in small_rational()) {
        prop_assume!(t != rat(1, 2));
        if let Ok((l, w)) = param_l(&t) {
            prop_assert_eq!(&w * &w, &l * &l - &l + int(1));
            prop_assert!(w > int(0));
            let back = param_inverse(&l, &w).unwrap();
            prop_assert_eq!(param_l(&back).unwrap().0, l.clone());
            let nc = NiceCurve::new(l).unwrap();
            prop_assert!(nc.r < nc.s);
        }
    }

    #[test]
    fn roots_of_products_are_recovered(
        roots in proptest::collection::vec(small_rational(), 0..4),
        k in 1i64..20,
        lead in 1i64..9,
    ) {
        // the quadratic factor x² + k has no real roots
        let mut p = QPoly::new(vec![int(k), int(0), int(lead)]);
        for r in &roots {
            p = &p * &QPoly::new(vec![-r.clone(), int(1)]);
        }
        let mut expected = roots.clone();
        expected.sort();
        expected.dedup();
        prop_assert_eq!(rational_roots(&p).unwrap(), expected);
    }

    #[test]
    fn padic_square_roots_square_back(a in 1i64..5000, p in prop::sample::select(vec![5u64, 7, 11, 13])) {
        let x = Padic::from_i64(a, p, 30);
        let sq = x.clone() * x;
        let r = padic_sqrt(&sq).unwrap();
        prop_assert!((r.clone() * r).agrees_with(&sq));
    }

    #[test]
    fn cantor_law_mod_7(i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(), k in any::<prop::sample::Index>()) {
        let (jac, all) = jacobian_mod(7);
        let (a, b, c) = (i.get(&all), j.get(&all), k.get(&all));
        prop_assert_eq!(jac.add(a, b), jac.add(b, a));
        prop_assert_eq!(jac.add(&jac.add(a, b), c), jac.add(a, &jac.add(b, c)));
        prop_assert_eq!(&jac.add(a, &jac.identity()), a);
        prop_assert!(jac.add(a, &jac.neg(a)).is_identity());
        prop_assert!(jac.is_valid(&jac.add(a, b)));
    }
}

#[test]
fn group_law_is_associative_on_witnesses() {
    for u in [2, 3, 5] {
        let w = rank2_witnesses(&int(u)).unwrap();
        let e = &w.nice.curve;
        let p = &w.p;
        let t = e.point(int(0), int(0)).unwrap();
        let q = e.add(p, &t);
        assert_eq!(e.add(&e.add(p, &q), &t), e.add(p, &e.add(&q, &t)));
        assert_eq!(e.scalar_mul(3, p), e.add(p, &e.double(p)));
        assert!(e.add(p, &e.neg(p)).is_infinity());
    }
}
