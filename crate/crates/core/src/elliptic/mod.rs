//! Weierstrass curves `y² = x³ + a₂x² + a₄x + a₆` and the torsion tools used
//! on the family `E_L`.

mod curve;
pub mod torsion;

pub use curve::{EllipticCurve, EllipticPoint};
pub use torsion::{
    duplication_x, has_order3_over, has_order4_over, is_torsion, j_invariant, order4_x_candidates,
    psi3, psi3_of, quadratic_twist, three_torsion, torsion_decomposition_check, torsion_order,
    twist_transport, twist_transport_inverse, FieldPoint, Order4Witness, QuadScalar, TorsionCode,
    TORSION_ORDER_BOUND,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, is_square, rat, rational_roots, squarefree_part, QuadExtElem};
    use crate::scalar::Field;
    use crate::{QPoly, Rational, RationalCurve, RationalPoint};

    fn pt(x: Rational, y: Rational) -> RationalPoint {
        EllipticPoint::Affine { x, y }
    }

    #[test]
    fn two_torsion_sums() {
        let e = RationalCurve::nice(&rat(8, 5)).unwrap();
        let p = pt(int(0), int(0));
        let q = pt(int(1), int(0));
        assert_eq!(e.add(&p, &q), pt(rat(8, 5), int(0)));
        assert!(e.double(&p).is_infinity());
    }

    #[test]
    fn doubling_on_e1() {
        let e1 = RationalCurve::new(int(-1), int(1), int(0)).unwrap();
        let p = e1.point(int(1), int(1)).unwrap();
        assert_eq!(e1.double(&p), pt(int(0), int(0)));
        assert_eq!(e1.order_up_to(&p, 10), Some(4));
    }

    #[test]
    fn duplication_matches_group_law() {
        let l = rat(21, 16);
        let e = RationalCurve::nice(&l).unwrap();
        let x = rat(3, 8);
        let y = is_square(&e.rhs(&x)).unwrap();
        let two_p = e.double(&pt(x.clone(), y));
        assert_eq!(Some(&duplication_x(&x, &l).unwrap()), two_p.x());

        // x = −1 with a non-square f(−1): compare in ℚ(√f(−1))
        let l = rat(8, 5);
        let e = RationalCurve::nice(&l).unwrap();
        let x = int(-1);
        let f = e.rhs(&x);
        let d = QuadExtElem::label(&squarefree_part(&f).unwrap()).unwrap();
        let ek = e.base_change(|c| QuadExtElem::from_rational(c.clone(), d).unwrap());
        let xk = QuadExtElem::from_rational(x.clone(), d).unwrap();
        let yk = ek.rhs(&xk).sqrt().unwrap();
        let two_p = ek.double(&EllipticPoint::Affine { x: xk, y: yk });
        let dup = duplication_x(&x, &l).unwrap();
        assert_eq!(two_p.x().unwrap(), &QuadExtElem::from_rational(dup, d).unwrap());

        assert!(matches!(duplication_x(&int(0), &l), Err(crate::Error::DivisionByZero(_))));
    }

    #[test]
    fn psi3_examples_and_generic_cross_check() {
        let l = rat(8, 5);
        assert_eq!(
            psi3(&l),
            QPoly::new(vec![rat(-64, 25), int(0), rat(48, 5), rat(-52, 5), int(3)])
        );
        assert_eq!(psi3(&int(-1)), QPoly::new(vec![int(-1), int(0), int(-6), int(0), int(3)]));
        let shifted = psi3(&l).compose(&QPoly::new(vec![(int(1) + &l) / int(3), int(1)]));
        assert_eq!(shifted.coeffs()[3], int(0));

        // b-invariants: ψ₃ = 3x⁴ + b₂x³ + 3b₄x² + 3b₆x + b₈
        for (a2, a4, a6) in [(int(0), int(0), int(1)), (rat(-13, 5), rat(8, 5), int(0)), (int(2), int(-3), rat(5, 7))] {
            let e = RationalCurve::new(a2.clone(), a4.clone(), a6.clone()).unwrap();
            let b2 = int(4) * &a2;
            let b4 = int(2) * &a4;
            let b6 = int(4) * &a6;
            let b8 = int(4) * &a2 * &a6 - &a4 * &a4;
            let generic = QPoly::new(vec![b8, int(3) * b6, int(3) * b4, b2, int(3)]);
            assert_eq!(psi3_of(&e), generic);
        }
        assert_eq!(psi3_of(&RationalCurve::nice(&l).unwrap()), psi3(&l));
    }

    #[test]
    fn order4_candidates_match_displayed_formulas() {
        let l = rat(8, 5);
        let cands = order4_x_candidates(&l).unwrap();
        assert_eq!(cands.len(), 6);
        let plus = &cands[0];
        assert_eq!(plus.x.field(), Some(-15));
        // f(1 + s) = (1 + s)·s·(s² + s) = s²(1 + s)² with s² = 1 − L, so the
        // square factor carries the same sign as the abscissa
        let QuadScalar::Quad(x) = &plus.x else { panic!() };
        let one = QuadExtElem::from_rational(int(1), -15).unwrap();
        let s = x.clone() - one.clone();
        let one_minus_l = QuadExtElem::from_rational(int(1) - &l, -15).unwrap();
        assert_eq!(s.square(), one_minus_l);
        let expected = one_minus_l.clone() * (one.clone() + s.clone()).square();
        assert_eq!(plus.y_squared, QuadScalar::Quad(expected));
        let QuadScalar::Quad(y2_minus) = &cands[1].y_squared else { panic!() };
        assert_eq!(y2_minus, &(one_minus_l * (one - s).square()));

        // f(±√L) = −L(√L ∓ 1)² and f(L ± r) = (L − 1)(L ± r)², r² = L² − L
        let QuadScalar::Quad(root_l) = &cands[2].x else { panic!() };
        let dl = root_l.d();
        let k = |q: Rational| QuadExtElem::from_rational(q, dl).unwrap();
        let QuadScalar::Quad(y2) = &cands[2].y_squared else { panic!() };
        assert_eq!(y2, &(k(-l.clone()) * (root_l.clone() - k(int(1))).square()));
        let QuadScalar::Quad(xr) = &cands[4].x else { panic!() };
        let QuadScalar::Quad(y2) = &cands[4].y_squared else { panic!() };
        let kr = |q: Rational| QuadExtElem::from_rational(q, xr.d()).unwrap();
        assert_eq!(y2, &(kr(&l - int(1)) * xr.square()));
        // √(8/5) lies in ℚ(√10) while −L needs ℚ(√−10)
        assert_eq!(cands[2].x.field(), Some(10));
    }

    #[test]
    fn order4_detection() {
        let w = has_order4_over(&rat(8, 5), -15).unwrap().unwrap();
        assert_eq!(w.label, "1+√(1−L)");
        assert_eq!(w.point.x().unwrap(), &QuadExtElem::new(int(1), rat(1, 5), -15).unwrap());
        assert!(has_order4_over(&rat(8, 5), 2).unwrap().is_none());
        assert!(has_order4_over(&rat(21, 16), -5).unwrap().is_some());
    }

    #[test]
    fn order3_detection() {
        let e = RationalCurve::nice(&rat(8, 5)).unwrap();
        assert!(rational_roots(&psi3(&rat(8, 5))).unwrap().is_empty());
        assert!(has_order3_over(&e, 0).unwrap().is_none());
        assert!(has_order3_over(&e, -15).unwrap().is_none());
        let control = RationalCurve::new(int(0), int(0), int(1)).unwrap();
        let w = has_order3_over(&control, 0).unwrap().unwrap();
        assert!(matches!(w, FieldPoint::Rational(ref p) if p.x() == Some(&int(0))));
        let p = pt(int(0), int(1));
        assert_eq!(control.double(&p), pt(int(0), int(-1)));
        assert!(control.scalar_mul(3, &p).is_infinity());
    }

    #[test]
    fn twists() {
        let l = rat(8, 5);
        let t = quadratic_twist(&l, -1).unwrap();
        for x in [int(0), int(-1), rat(-8, 5)] {
            assert!(t.rhs(&x).is_zero());
        }
        let e = RationalCurve::nice(&l).unwrap();
        let d6 = int(-1).pow_u64(6);
        assert_eq!(t.discriminant(), &(d6 * e.discriminant()));
        let t7 = quadratic_twist(&l, 7).unwrap();
        let deriv = QPoly::new(vec![t7.a4().clone(), int(2) * t7.a2(), int(3)]);
        assert_eq!(rational_roots(&deriv).unwrap().len(), 2);

        for (d, expect) in [(2, true), (-15, true)] {
            assert_eq!(torsion_decomposition_check(&l, d).unwrap().holds(), expect);
        }
        assert!(torsion_decomposition_check(&rat(21, 16), -5).unwrap().holds());
    }

    #[test]
    fn twist_transport_is_a_homomorphism() {
        let l = rat(21, 16);
        let e = RationalCurve::nice(&l).unwrap();
        let p = e.point(rat(3, 8), rat(15, 32)).unwrap();
        let q = e.point(int(0), int(0)).unwrap();
        for d in [-1, 2, -3] {
            let t = quadratic_twist(&l, d)
                .unwrap()
                .base_change(|c| QuadExtElem::from_rational(c.clone(), d).unwrap());
            let tp = twist_transport(&p, d).unwrap();
            let tq = twist_transport(&q, d).unwrap();
            assert!(t.contains(&tp) && t.contains(&tq));
            let sum = twist_transport(&e.add(&p, &q), d).unwrap();
            assert_eq!(t.add(&tp, &tq), sum);
            let back = twist_transport_inverse(&tp, d).unwrap();
            assert_eq!(back, p.map(|c| QuadExtElem::from_rational(c.clone(), d).unwrap()));
        }
        assert!(twist_transport(&EllipticPoint::Infinity, 5).unwrap().is_infinity());
    }

    #[test]
    fn j_invariant_examples() {
        assert_eq!(j_invariant(&rat(8, 5)).unwrap(), rat(686, 15) * rat(686, 15));
        assert_eq!(j_invariant(&int(-1)).unwrap(), int(1728));
        let l = rat(7, 11);
        let j = j_invariant(&l).unwrap();
        assert_eq!(j_invariant(&(int(1) - &l)).unwrap(), j);
        assert_eq!(j_invariant(&(int(1) / &l)).unwrap(), j);
        assert!(j_invariant(&int(1)).is_err());
    }

    #[test]
    fn torsion_certification() {
        let e = RationalCurve::nice(&rat(8, 5)).unwrap();
        assert_eq!(torsion_order(&e, &pt(int(0), int(0))), Some(2));
        let e = RationalCurve::nice(&rat(21, 16)).unwrap();
        assert!(!is_torsion(&e, &pt(rat(3, 8), rat(15, 32))));
        let e = RationalCurve::nice(&rat(8, 3)).unwrap();
        assert!(!is_torsion(&e, &pt(rat(4, 9), rat(20, 27))));
    }
}
