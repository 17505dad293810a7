use nicecurve_core::arith::{int, rat, rational_roots};
use nicecurve_core::elliptic::{j_invariant, psi3, TorsionCode};
use nicecurve_core::hyper::{count_points_fp, jacobian_order_fp, pullback_points, quotient_map, search_points, HyperCurve};
use nicecurve_core::nice::{c_to_h, sextic_condition, singular_points, torsion_classification};

#[test]
fn hq_has_seven_small_points() {
    let hq = HyperCurve::h_q();
    let pts = search_points(&hq, 200);
    assert_eq!(pts.len(), 7);
    assert!(pts.iter().all(|p| hq.contains(p)));
    let xs: Vec<_> = pts.iter().filter(|p| !p.is_infinite()).map(|p| p.x() / p.z()).collect();
    for x in [int(-1), rat(-1, 4), int(0), int(2)] {
        assert!(xs.contains(&x), "missing x = {x}");
    }
}

#[test]
fn h_points_are_the_pullback_of_hq_points() {
    let h = HyperCurve::h();
    let hq = HyperCurve::h_q();
    let mut pulled = Vec::new();
    for q in search_points(&hq, 50) {
        pulled.extend(pullback_points(&q, &h).unwrap());
    }
    pulled.sort_by_key(|p| p.to_strings());
    let mut found = search_points(&h, 50);
    found.sort_by_key(|p| p.to_strings());
    assert_eq!(found.len(), 12);
    assert_eq!(pulled, found);
    for p in found.iter().filter(|p| !p.is_infinite()) {
        assert!(hq.contains(&quotient_map(p).unwrap()));
    }
}

#[test]
fn zeta_count_matches_point_count() {
    let hq = HyperCurve::h_q();
    for p in [5, 7, 11] {
        if !hq.has_good_reduction(p) {
            continue;
        }
        let n = count_points_fp(&hq, p).unwrap();
        let order = jacobian_order_fp(&hq, p).unwrap();
        // Weil bounds for a genus-2 curve and its Jacobian
        let sp = (p as f64).sqrt();
        assert!((n as f64 - (p + 1) as f64).abs() <= 4.0 * sp);
        assert!((order as f64) >= (sp - 1.0).powi(4) && (order as f64) <= (sp + 1.0).powi(4));
    }
}

#[test]
fn torsion_of_the_running_example() {
    let l = rat(8, 5);
    assert_eq!(torsion_classification(&l, -15).unwrap().code, TorsionCode::Z2xZ4);
    assert_eq!(torsion_classification(&l, -1).unwrap().code, TorsionCode::Z2xZ2);
    assert!(rational_roots(&psi3(&l)).unwrap().is_empty());
    assert_eq!(j_invariant(&l).unwrap(), rat(686 * 686, 225));
}

#[test]
fn descent_landmarks() {
    let cusps = singular_points().unwrap();
    assert_eq!(cusps.len(), 1);
    assert_eq!((cusps[0].a.clone(), cusps[0].b.clone()), (int(3), int(9)));
    assert_eq!(sextic_condition(&int(0)), Some(int(1)));
    assert_eq!(sextic_condition(&int(1)), Some(int(4)));
    assert_eq!(sextic_condition(&rat(1, 3)), Some(rat(4, 9)));
    let h = HyperCurve::h();
    for (u, v, w) in [(0, 1, 1), (3, 4, 9)] {
        assert!(h.contains(&c_to_h(&int(u), &int(v), &int(w)).unwrap()));
    }
}
