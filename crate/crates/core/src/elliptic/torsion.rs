//! Duplication, 3-division, order-3/4 detection, twists and j-invariants for
//! the family `y² = x(x − 1)(x − L)`.

use serde::Serialize;

use super::curve::{EllipticCurve, EllipticPoint};
use crate::arith::roots::{factor_low_degree, quadratic_discriminant};
use crate::arith::{int, is_square, squarefree_part, QuadExtElem};
use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::{QPoly, QuadCurve, QuadPoint, Rational, RationalCurve, RationalPoint};

/// Exhaustion bound for torsion orders over ℚ and quadratic fields.
pub const TORSION_ORDER_BOUND: u32 = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TorsionCode {
    Z2xZ2,
    Z2xZ4,
}

impl std::fmt::Display for TorsionCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TorsionCode::Z2xZ2 => "Z2xZ2",
            TorsionCode::Z2xZ4 => "Z2xZ4",
        })
    }
}

/// A point over ℚ or over some ℚ(√d).
#[derive(Debug, Clone, PartialEq)]
pub enum FieldPoint {
    Rational(RationalPoint),
    Quad(QuadPoint),
}

/// A scalar that is rational or lives in one ℚ(√d).
#[derive(Debug, Clone, PartialEq)]
pub enum QuadScalar {
    Rational(Rational),
    Quad(QuadExtElem),
}

impl QuadScalar {
    /// `a + b√r`, with `√r` taken in ℚ when `r` is a square.
    fn with_root(a: Rational, b: Rational, radicand: &Rational) -> Result<Self> {
        if let Some(s) = is_square(radicand) {
            return Ok(QuadScalar::Rational(a + b * s));
        }
        let d = QuadExtElem::label(&squarefree_part(radicand)?)?;
        let c = is_square(&(radicand / int(d))).expect("radicand / d is a square");
        Ok(QuadScalar::Quad(QuadExtElem::new(a, b * c, d)?))
    }

    /// The field label, `None` when rational.
    pub fn field(&self) -> Option<i64> {
        match self {
            QuadScalar::Rational(_) => None,
            QuadScalar::Quad(q) => Some(q.d()),
        }
    }

    /// Image in ℚ(√d), if the value lies there.
    pub fn in_field(&self, d: i64) -> Option<QuadExtElem> {
        match self {
            QuadScalar::Rational(r) => QuadExtElem::from_rational(r.clone(), d).ok(),
            QuadScalar::Quad(q) => (q.d() == d).then(|| q.clone()),
        }
    }
}

/// x-coordinate of `2P` from x-coordinate of `P` on `E_L`:
/// `(x² − L)² / (4x(x − 1)(x − L))`.
pub fn duplication_x<F: Field>(x: &F, l: &Rational) -> Result<F> {
    let lf = x.from_rational_like(l);
    let den = x.from_i64_like(4) * x.clone() * (x.clone() - x.one_like()) * (x.clone() - lf.clone());
    let num = (x.square() - lf).square();
    num.checked_div(&den)
        .ok_or_else(|| Error::DivisionByZero(format!("x = {x:?} is a 2-torsion abscissa")))
}

/// `ψ₃` of a curve with `a₁ = a₃ = 0`: `3x⁴ + 4a₂x³ + 6a₄x² + 12a₆x + 4a₂a₆ − a₄²`.
pub fn psi3_of(curve: &RationalCurve) -> QPoly {
    let (a2, a4, a6) = (curve.a2(), curve.a4(), curve.a6());
    QPoly::new(vec![
        int(4) * a2 * a6 - a4 * a4,
        int(12) * a6,
        int(6) * a4,
        int(4) * a2,
        int(3),
    ])
}

/// `3x⁴ − 4(1 + L)x³ + 6Lx² − L²`.
pub fn psi3(l: &Rational) -> QPoly {
    QPoly::new(vec![
        -(l * l),
        int(0),
        int(6) * l,
        int(-4) * (int(1) + l),
        int(3),
    ])
}

/// One of the six abscissae of points `P` with `2P` a nontrivial 2-torsion point.
#[derive(Debug, Clone, PartialEq)]
pub struct Order4Candidate {
    /// Which root: `"±√L"`, `"1±√(1−L)"` or `"L±√(L²−L)"` with the sign resolved.
    pub label: &'static str,
    pub radicand: Rational,
    pub x: QuadScalar,
    /// `f_L(x)` in the field of `x`.
    pub y_squared: QuadScalar,
}

/// `±√L`, `1 ± √(1 − L)`, `L ± √(L² − L)`, listed with the `+` branch of
/// `1 + √(1 − L)` first.
pub fn order4_x_candidates(l: &Rational) -> Result<Vec<Order4Candidate>> {
    if l.is_zero() || l.is_one() {
        return Err(Error::DegenerateParameter {
            parameter: "L".into(),
            reason: format!("L = {l} makes E_L singular"),
        });
    }
    let one = int(1);
    let specs: [(&'static str, Rational, Rational, Rational); 6] = [
        ("1+√(1−L)", one.clone(), one.clone(), &one - l),
        ("1−√(1−L)", one.clone(), -one.clone(), &one - l),
        ("+√L", int(0), one.clone(), l.clone()),
        ("−√L", int(0), -one.clone(), l.clone()),
        ("L+√(L²−L)", l.clone(), one.clone(), l * l - l),
        ("L−√(L²−L)", l.clone(), -one.clone(), l * l - l),
    ];
    let curve = RationalCurve::nice(l)?;
    let mut out = Vec::with_capacity(6);
    for (label, a, b, radicand) in specs {
        let x = QuadScalar::with_root(a, b, &radicand)?;
        let y_squared = match &x {
            QuadScalar::Rational(r) => QuadScalar::Rational(curve.rhs(r)),
            QuadScalar::Quad(q) => {
                let c = curve.base_change(|c| QuadExtElem::from_rational(c.clone(), q.d()).expect("valid d"));
                QuadScalar::Quad(c.rhs(q))
            }
        };
        out.push(Order4Candidate { label, radicand, x, y_squared });
    }
    Ok(out)
}

/// A point of order 4 on `E_L` over ℚ(√d), verified by the group law.
#[derive(Debug, Clone, PartialEq)]
pub struct Order4Witness {
    pub label: &'static str,
    pub point: QuadPoint,
}

/// Searches the six order-4 abscissae for a point defined over ℚ(√d).
pub fn has_order4_over(l: &Rational, d: i64) -> Result<Option<Order4Witness>> {
    QuadExtElem::sqrt_d(d)?;
    let curve = nice_over(l, d)?;
    for cand in order4_x_candidates(l)? {
        let (Some(x), Some(y2)) = (cand.x.in_field(d), cand.y_squared.in_field(d)) else {
            continue;
        };
        let Some(y) = y2.sqrt() else { continue };
        let p = curve.point(x, y)?;
        if is_order_four(&curve, &p) {
            return Ok(Some(Order4Witness { label: cand.label, point: p }));
        }
        return Err(Error::VerificationFailure(format!(
            "candidate {} gives {p:?}, which is not of order 4",
            cand.label
        )));
    }
    Ok(None)
}

/// `P` is not 2-torsion and `2P` is.
pub fn is_order_four<F: Field>(curve: &EllipticCurve<F>, p: &EllipticPoint<F>) -> bool {
    let two_p = curve.double(p);
    let is_two_torsion = |q: &EllipticPoint<F>| match q {
        EllipticPoint::Infinity => false,
        EllipticPoint::Affine { y, .. } => y.is_zero(),
    };
    !p.is_infinity() && !is_two_torsion(p) && is_two_torsion(&two_p)
}

/// `E_L` read over ℚ(√d).
pub fn nice_over(l: &Rational, d: i64) -> Result<QuadCurve> {
    Ok(RationalCurve::nice(l)?.base_change(|c| QuadExtElem::from_rational(c.clone(), d).expect("valid d")))
}

/// Points of order 3 over ℚ (`d = 0`) or ℚ(√d), from the factorization of ψ₃.
#[derive(Debug, Clone, PartialEq)]
pub struct ThreeTorsion {
    /// `|E(K)[3]|`, counting ∞.
    pub count: usize,
    pub points: Vec<FieldPoint>,
}

pub fn three_torsion(curve: &RationalCurve, d: i64) -> Result<ThreeTorsion> {
    if d != 0 {
        QuadExtElem::sqrt_d(d)?;
    }
    let factors = factor_low_degree(&psi3_of(curve))?;
    let mut points = Vec::new();
    let quad_curve = (d != 0).then(|| {
        curve.base_change(|c| QuadExtElem::from_rational(c.clone(), d).expect("valid d"))
    });
    let push_over_k = |x: QuadExtElem, points: &mut Vec<FieldPoint>| -> Result<()> {
        let qc = quad_curve.as_ref().expect("quadratic field");
        if let Some(y) = qc.rhs(&x).sqrt() {
            for y in [y.clone(), -y] {
                points.push(FieldPoint::Quad(qc.point(x.clone(), y)?));
            }
        }
        Ok(())
    };
    for x in &factors.roots {
        let y2 = curve.rhs(x);
        if d == 0 {
            if let Some(y) = is_square(&y2) {
                for y in [y.clone(), -y] {
                    points.push(FieldPoint::Rational(curve.point(x.clone(), y)?));
                }
            }
        } else {
            push_over_k(QuadExtElem::from_rational(x.clone(), d)?, &mut points)?;
        }
    }
    if d != 0 {
        for q in &factors.quadratics {
            let disc = quadratic_discriminant(q);
            if QuadExtElem::label(&squarefree_part(&disc)?)? != d {
                continue;
            }
            let half_b = -q.coeffs()[1].clone() / int(2);
            let c = is_square(&(&disc / int(4 * d))).expect("disc/(4d) is a square");
            for sign in [1, -1] {
                let x = QuadExtElem::new(half_b.clone(), int(sign) * &c, d)?;
                push_over_k(x, &mut points)?;
            }
        }
    }
    points.dedup();
    for p in &points {
        let ok = match p {
            FieldPoint::Rational(p) => curve.order_up_to(p, 3) == Some(3),
            FieldPoint::Quad(p) => quad_curve.as_ref().expect("quadratic").order_up_to(p, 3) == Some(3),
        };
        if !ok {
            return Err(Error::VerificationFailure(format!("{p:?} is not of order 3")));
        }
    }
    Ok(ThreeTorsion { count: points.len() + 1, points })
}

/// An order-3 point over ℚ (`d = 0`) or ℚ(√d), if any.
pub fn has_order3_over(curve: &RationalCurve, d: i64) -> Result<Option<FieldPoint>> {
    Ok(three_torsion(curve, d)?.points.into_iter().next())
}

/// `E_L^D : y² = x(x − D)(x − DL)`.
pub fn quadratic_twist(l: &Rational, d: i64) -> Result<RationalCurve> {
    let dd = int(d);
    RationalCurve::new(-(&dd * (int(1) + l)), &dd * &dd * l, int(0))
}

/// `(x, y) ↦ (Dx, D√D·y)` from `E_L` to `E_L^D` over ℚ(√D).
pub fn twist_transport(p: &RationalPoint, d: i64) -> Result<QuadPoint> {
    let sd = QuadExtElem::sqrt_d(d)?;
    let dd = int(d);
    Ok(match p {
        EllipticPoint::Infinity => EllipticPoint::Infinity,
        EllipticPoint::Affine { x, y } => EllipticPoint::Affine {
            x: QuadExtElem::from_rational(&dd * x, d)?,
            y: sd.clone() * QuadExtElem::from_rational(&dd * y, d)?,
        },
    })
}

/// Inverse of [`twist_transport`]: `(x, y) ↦ (x/D, y/(D√D))`.
pub fn twist_transport_inverse(p: &QuadPoint, d: i64) -> Result<QuadPoint> {
    let sd = QuadExtElem::sqrt_d(d)?;
    let dd = QuadExtElem::from_rational(int(d), d)?;
    let dinv = dd.inv().expect("D ≠ 0");
    Ok(match p {
        EllipticPoint::Infinity => EllipticPoint::Infinity,
        EllipticPoint::Affine { x, y } => EllipticPoint::Affine {
            x: x.clone() * dinv.clone(),
            y: y.clone() * (dd * sd).inv().expect("D√D ≠ 0"),
        },
    })
}

/// The three sides of `E(ℚ(√D))[3] ≅ E(ℚ)[3] ⊕ E^D(ℚ)[3]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TwistDecomposition {
    pub over_k: usize,
    pub over_q: usize,
    pub twist_over_q: usize,
}

impl TwistDecomposition {
    pub fn holds(&self) -> bool {
        self.over_k == self.over_q * self.twist_over_q
    }
}

/// Counts the three groups independently.
pub fn torsion_decomposition_check(l: &Rational, d: i64) -> Result<TwistDecomposition> {
    let e = RationalCurve::nice(l)?;
    let twist = quadratic_twist(l, d)?;
    Ok(TwistDecomposition {
        over_k: three_torsion(&e, d)?.count,
        over_q: three_torsion(&e, 0)?.count,
        twist_over_q: three_torsion(&twist, 0)?.count,
    })
}

/// `256(L² − L + 1)³ / (L² − L)²`.
pub fn j_invariant(l: &Rational) -> Result<Rational> {
    let m = l * l - l;
    if m.is_zero() {
        return Err(Error::Domain(format!("j-invariant undefined at L = {l}")));
    }
    let w2 = &m + int(1);
    Ok(int(256) * &w2 * &w2 * &w2 / (&m * &m))
}

/// `Some(n)` when `n·P = ∞` for some `n ≤ 24`, else `None` (certified
/// non-torsion given the order bound over quadratic fields).
pub fn torsion_order<F: Field>(curve: &EllipticCurve<F>, p: &EllipticPoint<F>) -> Option<u32> {
    curve.order_up_to(p, TORSION_ORDER_BOUND)
}

pub fn is_torsion<F: Field>(curve: &EllipticCurve<F>, p: &EllipticPoint<F>) -> bool {
    torsion_order(curve, p).is_some()
}

/// Rational two-torsion abscissae `0, 1, L` of `E_L` as points.
pub fn nice_two_torsion(l: &Rational) -> [RationalPoint; 3] {
    let pt = |x: Rational| EllipticPoint::Affine { x, y: int(0) };
    [pt(int(0)), pt(int(1)), pt(l.clone())]
}
