//! From a rational 3-torsion abscissa of `E_L` to a rational point of `H`.
//!
//! With `x` the root of `ψ₃` shifted by `(L + 1)/3`, put `A = (2L − 1)/x` and
//! `B = (L² − L + 1)/x²`. Then `ψ₃` vanishes exactly when `(A, B)` lies on the
//! cuspidal cubic `S : B² − 12AB + 18B = 27 − 4A³`, whose smooth points are
//! `(3 − t², 2t³ − 6t² + 9)`. Requiring `B` to be a square leads to the
//! sextic `3u⁶ + 75u⁴ − 15u² + 1 = (3u² + 1)v²`, i.e. the curve `C`, which is
//! birational to `H`.

use serde_json::json;

use super::param::NiceCurve;
use crate::arith::{int, is_square, rational_roots};
use crate::elliptic::psi3;
use crate::error::{Error, Result};
use crate::hyper::{HyperCurve, WPPoint};
use crate::report::{Claim, ToJson, VerificationReport};
use crate::{QPoly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CuspCubicPoint {
    pub a: Rational,
    pub b: Rational,
}

impl CuspCubicPoint {
    pub fn new(a: Rational, b: Rational) -> Self {
        Self { a, b }
    }

    /// `B² − 12AB + 18B − 27 + 4A³`.
    pub fn s_value(&self) -> Rational {
        s_value(&self.a, &self.b)
    }

    pub fn is_on(&self) -> bool {
        self.s_value() == int(0)
    }

    /// `(∂S/∂A, ∂S/∂B) = (12A² − 12B, 2B − 12A + 18)`.
    pub fn gradient(&self) -> (Rational, Rational) {
        let (a, b) = (&self.a, &self.b);
        (int(12) * a * a - int(12) * b, int(2) * b - int(12) * a + int(18))
    }

    pub fn is_singular(&self) -> bool {
        let (da, db) = self.gradient();
        self.is_on() && da == int(0) && db == int(0)
    }
}

fn s_value(a: &Rational, b: &Rational) -> Rational {
    b * b - int(12) * a * b + int(18) * b - int(27) + int(4) * a * a * a
}

pub fn on_cusp_cubic(a: &Rational, b: &Rational) -> bool {
    s_value(a, b) == int(0)
}

/// `(3 − t², 2t³ − 6t² + 9)`.
pub fn cusp_param(t: &Rational) -> CuspCubicPoint {
    let t2 = t * t;
    CuspCubicPoint { a: int(3) - &t2, b: int(2) * &t2 * t - int(6) * &t2 + int(9) }
}

/// The parameter of a smooth point of `S`: from `B − 9 = 2t²(t − 3)` and
/// `t² = 3 − A`, `t = 3 + (B − 9)/(2(3 − A))`.
pub fn cusp_param_inverse(p: &CuspCubicPoint) -> Option<Rational> {
    if !p.is_on() || p.a == int(3) {
        return None;
    }
    let t = int(3) + (&p.b - int(9)) / (int(2) * (int(3) - &p.a));
    (cusp_param(&t) == *p).then_some(t)
}

/// Singular points of `S` solved from its partial derivatives:
/// `∂S/∂A = 0` gives `B = A²`, and then `∂S/∂B = 0` reads `2A² − 12A + 18 = 0`.
pub fn singular_points() -> Result<Vec<CuspCubicPoint>> {
    let quad = QPoly::new(vec![int(18), int(-12), int(2)]);
    let mut out = Vec::new();
    for a in rational_roots(&quad)? {
        let p = CuspCubicPoint::new(a.clone(), &a * &a);
        if p.is_singular() {
            out.push(p);
        }
    }
    Ok(out)
}

/// `ψ₃(x + (L + 1)/3)`.
pub fn shifted_psi3(l: &Rational) -> QPoly {
    let shift = QPoly::new(vec![(l + int(1)) / int(3), int(1)]);
    psi3(l).compose(&shift)
}

/// `3x⁴ − 2W²x² − (4/9)(2L − 1)(L + 1)(L − 2)x − W⁴/9` with `W² = L² − L + 1`.
pub fn shifted_psi3_expected(l: &Rational) -> QPoly {
    let w2 = l * l - l + int(1);
    QPoly::new(vec![
        -(&w2 * &w2) / int(9),
        -(int(4) * (int(2) * l - int(1)) * (l + int(1)) * (l - int(2))) / int(9),
        int(-2) * &w2,
        int(0),
        int(3),
    ])
}

/// `(3 − 3u²)/(1 + 3u²)`: the smooth points of `S` with `−3(A² − 4B)` a square.
pub fn t_of_u(u: &Rational) -> Rational {
    let u2 = u * u;
    (int(3) - int(3) * &u2) / (int(1) + int(3) * &u2)
}

/// `v ≥ 0` with `(3u² + 1)v² = 3u⁶ + 75u⁴ − 15u² + 1`, if rational.
pub fn sextic_condition(u: &Rational) -> Option<Rational> {
    let u2 = u * u;
    let num = int(3) * &u2 * &u2 * &u2 + int(75) * &u2 * &u2 - int(15) * &u2 + int(1);
    is_square(&(num / (int(3) * &u2 + int(1))))
}

/// Every value along the chain, with the links checked.
#[derive(Debug, Clone, PartialEq)]
pub struct DescentWitness {
    pub l: Rational,
    pub x: Rational,
    pub a: Rational,
    pub b: Rational,
    /// `A² − 4B + 3/x² = 0`.
    pub discriminant_identity: bool,
    /// `S(A, B)·x⁴ = −9·ψ₃(x + (L + 1)/3)`.
    pub quartic_identity: bool,
    pub on_cusp_cubic: bool,
    pub is_shifted_root: bool,
    pub b_root: Option<Rational>,
    pub t: Option<Rational>,
    pub u: Option<Rational>,
    pub v: Option<Rational>,
}

impl DescentWitness {
    pub fn links_hold(&self) -> bool {
        self.discriminant_identity && self.quartic_identity && self.on_cusp_cubic == self.is_shifted_root
    }

    pub fn to_json(&self) -> serde_json::Value {
        let opt = |o: &Option<Rational>| o.as_ref().map(|r| r.to_json());
        json!({
            "L": self.l.to_json(), "x": self.x.to_json(), "A": self.a.to_json(), "B": self.b.to_json(),
            "discriminant_identity": self.discriminant_identity,
            "quartic_identity": self.quartic_identity,
            "on_cusp_cubic": self.on_cusp_cubic, "is_shifted_root": self.is_shifted_root,
            "sqrt_B": opt(&self.b_root), "t": opt(&self.t), "u": opt(&self.u), "v": opt(&self.v),
        })
    }
}

pub fn descent_chain(l: &Rational, x: &Rational) -> Result<DescentWitness> {
    if *x == int(0) {
        return Err(Error::Domain("x = 0".into()));
    }
    let nice = NiceCurve::new(l.clone())?;
    let a = (int(2) * l - int(1)) / x;
    let b = (l * l - l + int(1)) / (x * x);
    let discriminant_identity = &a * &a - int(4) * &b + int(3) / (x * x) == int(0);
    let shifted = shifted_psi3(l).eval(x);
    let x4 = x * x * x * x;
    let quartic_identity = s_value(&a, &b) * x4 == int(-9) * &shifted;
    let on = on_cusp_cubic(&a, &b);
    let p = CuspCubicPoint::new(a.clone(), b.clone());
    let t = if on { cusp_param_inverse(&p) } else { None };
    let u = t.as_ref().and_then(|t| {
        if *t == int(-1) {
            return None;
        }
        is_square(&((int(3) - t) / (int(3) * (int(1) + t))))
    });
    let v = u.as_ref().and_then(sextic_condition);
    Ok(DescentWitness {
        l: nice.l,
        x: x.clone(),
        b_root: is_square(&b),
        a,
        b,
        discriminant_identity,
        quartic_identity,
        on_cusp_cubic: on,
        is_shifted_root: shifted == int(0),
        t,
        u,
        v,
    })
}

/// `3U⁶ + 75U⁴W² − 15U²W⁴ + W⁶ − 3U²V²W² − V²W⁴`.
pub fn c_equation(u: &Rational, v: &Rational, w: &Rational) -> Rational {
    let (u2, v2, w2) = (u * u, v * v, w * w);
    int(3) * &u2 * &u2 * &u2 + int(75) * &u2 * &u2 * &w2 - int(15) * &u2 * &w2 * &w2 + &w2 * &w2 * &w2
        - int(3) * &u2 * &v2 * &w2
        - &v2 * &w2 * &w2
}

/// `(U, V, W) ↦ (U/2 + W/2, −3U²VW/16 − VW³/16, U/2 − W/2)` into the weighted
/// plane of `H`.
pub fn c_to_h(u: &Rational, v: &Rational, w: &Rational) -> Result<WPPoint> {
    if c_equation(u, v, w) != int(0) {
        return Err(Error::Domain(format!("({u}, {v}, {w}) is not on C")));
    }
    let half = int(1) / int(2);
    let x = (u + w) * &half;
    let y = -(int(3) * u * u * v * w) / int(16) - v * w * w * w / int(16);
    let z = (u - w) * &half;
    let p = WPPoint::new(x, y, z, 4)?;
    if !HyperCurve::h().contains(&p) {
        return Err(Error::VerificationFailure(format!("image {p} is not on H")));
    }
    Ok(p)
}

/// `U/W = (X + Z)/(X − Z)` for each point of `H` with `X ≠ Z`, sorted.
pub fn u_values_from_h(points: &[WPPoint]) -> Vec<Rational> {
    let mut out: Vec<Rational> = points
        .iter()
        .filter(|p| p.x() != p.z())
        .map(|p| (p.x() + p.z()) / (p.x() - p.z()))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Runs every `U` back up the chain: `U = 0` forces `A² − 4B = 0`, which
/// `−3/x²` never is; every other value gives `L² − L + 1 = −3B/(A² − 4B) = 1`,
/// so `L ∈ {0, 1}`.
pub fn conclude_no_3torsion(u_values: &[Rational]) -> VerificationReport {
    let mut claim = Claim::new("no-rational-3-torsion");
    claim.param("U_values", u_values.to_vec().to_json());
    for u in u_values {
        let t = t_of_u(u);
        let p = cusp_param(&t);
        let disc = &p.a * &p.a - int(4) * &p.b;
        let ops = json!({ "U": u.to_json(), "t": t.to_json(), "A": p.a.to_json(), "B": p.b.to_json() });
        if *u == int(0) {
            claim.check(format!("U = {u}: A² − 4B = 0, contradiction"), disc == int(0), ops);
        } else if disc == int(0) {
            claim.check(format!("U = {u}: escapes both branches"), false, ops);
        } else {
            let w2 = int(-3) * &p.b / &disc;
            claim.check(format!("U = {u}: L² − L + 1 = 1"), w2 == int(1), ops);
        }
    }
    let mut r = VerificationReport::new();
    r.push(claim);
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn cusp() {
        assert_eq!(cusp_param(&int(0)), CuspCubicPoint::new(int(3), int(9)));
        assert_eq!(cusp_param(&int(1)), CuspCubicPoint::new(int(2), int(5)));
        assert_eq!(cusp_param(&int(3)), CuspCubicPoint::new(int(-6), int(9)));
        assert_eq!(singular_points().unwrap(), vec![CuspCubicPoint::new(int(3), int(9))]);
        let stated = CuspCubicPoint::new(int(-3), rat(9, 2));
        assert!(!stated.is_singular());
        for t in [int(1), int(-2), rat(5, 7)] {
            assert_eq!(cusp_param_inverse(&cusp_param(&t)), Some(t));
        }
    }

    #[test]
    fn chain_identities() {
        let w = descent_chain(&rat(8, 5), &int(2)).unwrap();
        assert!(w.discriminant_identity && w.quartic_identity);
        assert_eq!(&w.a * &w.a - int(4) * &w.b, rat(-3, 4));
        let w = descent_chain(&rat(8, 5), &int(1)).unwrap();
        assert!(!w.on_cusp_cubic && !w.is_shifted_root && w.links_hold());
        for l in [rat(8, 5), rat(21, 16), rat(-39, 16)] {
            assert_eq!(shifted_psi3(&l), shifted_psi3_expected(&l));
        }
    }

    #[test]
    fn sextic() {
        assert_eq!(sextic_condition(&int(0)), Some(int(1)));
        assert_eq!(sextic_condition(&int(1)), Some(int(4)));
        assert_eq!(sextic_condition(&rat(1, 3)), Some(rat(4, 9)));
        assert_eq!(sextic_condition(&int(2)), None);
    }

    #[test]
    fn curve_c_to_h() {
        assert_eq!(c_to_h(&int(1), &int(4), &int(1)).unwrap(), WPPoint::infinity(int(-1), 4));
        assert_eq!(c_to_h(&int(0), &int(1), &int(1)).unwrap(), WPPoint::affine(int(-1), int(-1), 4));
        assert_eq!(c_to_h(&int(3), &int(4), &int(9)).unwrap(), WPPoint::affine(int(-2), int(-3), 4));
        assert!(c_to_h(&int(1), &int(1), &int(1)).is_err());
    }

    #[test]
    fn conclusion() {
        let us = [int(1), rat(1, 3), int(0), int(-1), rat(-1, 3)];
        let r = conclude_no_3torsion(&us);
        assert_eq!(r.exit_code(), 0, "{}", r.to_text());
        let r = conclude_no_3torsion(&[int(2)]);
        assert_eq!(r.exit_code(), 2);
    }
}
