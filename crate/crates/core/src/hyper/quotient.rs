//! The degree-2 map `H → H_q`,
//! `(X, Y, Z) ↦ (XZ⁵, X²YZ¹² − YZ¹⁴, −X²Z⁴ − 2XZ⁵ − Z⁶)`.

use num_traits::Zero;

use super::curve::{HyperCurve, WPPoint};
use crate::arith::{int, is_square, rational_roots};
use crate::error::{Error, Result};
use crate::{QPoly, Rational};

/// Image on `H_q` of a point of `H` with `Z ≠ 0`.
///
/// The displayed formula vanishes identically when `Z = 0`, so points at
/// infinity are refused with [`Error::MapDegenerates`].
pub fn quotient_map(p: &WPPoint) -> Result<WPPoint> {
    if p.weight() != 4 {
        return Err(Error::Domain(format!("{p} is not a point of a genus-3 weighted plane")));
    }
    if p.is_infinite() {
        return Err(Error::MapDegenerates);
    }
    let (x, y, z) = (p.x(), p.y(), p.z());
    let z4 = z * z * z * z;
    let z5 = &z4 * z;
    let z12 = &z4 * &z4 * &z4;
    let z14 = &z12 * z * z;
    let xq = x * &z5;
    let yq = x * x * y * &z12 - y * &z14;
    let zq = -(x * x * &z4) - int(2) * x * &z5 - &z4 * z * z;
    WPPoint::new(xq, yq, zq, 3)
}

/// All rational points of `H` lying over `q ∈ H_q(ℚ)`.
///
/// Affine preimages solve `x_q·x² + (2x_q + 1)·x + x_q = 0`. The points at
/// infinity of `H` are attached to `(0, y_q)` by continuity: along `H` one has
/// `x_q → 0` and `y_q → −Y∞` as `x → ∞`.
pub fn pullback_points(q: &WPPoint, h: &HyperCurve) -> Result<Vec<WPPoint>> {
    if h.genus() != 3 || q.weight() != 3 {
        return Err(Error::Domain("pullback runs from H_q to H".into()));
    }
    let mut out = Vec::new();
    let xs: Vec<Rational> = if q.is_infinite() {
        vec![int(-1)]
    } else {
        let xq = q.x();
        let quad = QPoly::new(vec![xq.clone(), int(2) * xq + int(1), xq.clone()]);
        rational_roots(&quad)?
    };
    for x in xs {
        let Some(y) = is_square(&h.g().eval(&x)) else { continue };
        for y in [-y.clone(), y] {
            let p = h.point(x.clone(), y)?;
            if quotient_map(&p)? == *q && !out.contains(&p) {
                out.push(p);
            }
        }
    }
    if !q.is_infinite() && q.x().is_zero() {
        for p in h.infinite_points() {
            if *p.y() == -q.y().clone() {
                out.push(p);
            }
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn h_pt(x: Rational, y: Rational) -> WPPoint {
        WPPoint::affine(x, y, 4)
    }

    fn q_pt(x: Rational, y: Rational) -> WPPoint {
        WPPoint::affine(x, y, 3)
    }

    #[test]
    fn images() {
        let p = WPPoint::new(int(0), int(1), int(-1), 4).unwrap();
        assert_eq!(quotient_map(&p).unwrap(), q_pt(int(0), int(1)));
        assert_eq!(quotient_map(&h_pt(int(1), int(3))).unwrap(), q_pt(rat(-1, 4), int(0)));
        let hq = HyperCurve::h_q();
        let img = quotient_map(&WPPoint::new(rat(1, 2), rat(1, 16), rat(-1, 2), 4).unwrap()).unwrap();
        assert!(hq.contains(&img));
        assert_eq!(quotient_map(&h_pt(int(-1), int(1))).unwrap(), WPPoint::infinity(int(0), 3));
        assert_eq!(quotient_map(&WPPoint::infinity(int(1), 4)), Err(Error::MapDegenerates));
    }

    #[test]
    fn preimages() {
        let h = HyperCurve::h();
        let pre = pullback_points(&q_pt(rat(-1, 4), int(0)), &h).unwrap();
        assert_eq!(pre, vec![h_pt(int(1), int(-3)), h_pt(int(1), int(3))]);
        let pre = pullback_points(&q_pt(int(2), int(9)), &h).unwrap();
        assert!(pre.iter().all(|p| [int(-2), rat(-1, 2)].contains(p.x())));
        assert_eq!(pre.len(), 2);
        let pre = pullback_points(&q_pt(int(0), int(1)), &h).unwrap();
        assert!(pre.iter().all(|p| p.is_infinite() || p.x().is_zero()));
        assert!(pullback_points(&q_pt(int(-1), int(0)), &h).unwrap().is_empty());
    }
}
