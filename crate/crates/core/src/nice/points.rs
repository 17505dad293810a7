use serde::Serialize;

use super::param::{special_l, NiceCurve};
use crate::arith::{int, is_square, QuadExtElem};
use crate::elliptic::torsion::nice_over;
use crate::elliptic::{is_torsion, EllipticPoint};
use crate::error::{Error, Result};
use crate::{QuadPoint, Rational, RationalPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CriticalRoot {
    R,
    S,
}

/// The critical point of `f_L` whose value is a rational square.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalPoint {
    pub nice: NiceCurve,
    pub root: CriticalRoot,
    pub point: RationalPoint,
}

/// For `L` from the `u`-family: `(c, √f_L(c))` with `y > 0`, certified of
/// infinite order.
pub fn rational_critical_point(u: &Rational) -> Result<CriticalPoint> {
    let nice = special_l(u)?;
    let fr = is_square(&nice.f(&nice.r));
    let fs = is_square(&nice.f(&nice.s));
    let (root, x, y) = match (fr, fs) {
        (Some(y), None) => (CriticalRoot::R, nice.r.clone(), y),
        (None, Some(y)) => (CriticalRoot::S, nice.s.clone(), y),
        (a, b) => {
            return Err(Error::ContractViolation(format!(
                "u = {u}: square critical values at r: {}, at s: {}",
                a.is_some(),
                b.is_some()
            )))
        }
    };
    if y == int(0) {
        return Err(Error::ContractViolation(format!("u = {u}: critical point is 2-torsion")));
    }
    let point = nice.curve.point(x, y)?;
    if is_torsion(&nice.curve, &point) {
        return Err(Error::VerificationFailure(format!("{point:?} is torsion")));
    }
    Ok(CriticalPoint { nice, root, point })
}

/// `P` over ℚ and `Q = (c′, q√−3)` over ℚ(√−3), with the checks that make
/// them independent: neither is torsion, `σ(P) = P` and `σ(Q) = −Q`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rank2Witnesses {
    pub nice: NiceCurve,
    pub p_root: CriticalRoot,
    pub p: RationalPoint,
    pub q: QuadPoint,
    /// `q` in `y′ = q√−3`.
    pub q_coeff: Rational,
    pub p_non_torsion: bool,
    pub q_non_torsion: bool,
    pub sigma_q_is_neg_q: bool,
    pub sigma_p_is_p: bool,
}

impl Rank2Witnesses {
    pub fn certified(&self) -> bool {
        self.p_non_torsion && self.q_non_torsion && self.sigma_q_is_neg_q && self.sigma_p_is_p
    }
}

fn conj(p: &QuadPoint) -> QuadPoint {
    match p {
        EllipticPoint::Infinity => EllipticPoint::Infinity,
        EllipticPoint::Affine { x, y } => EllipticPoint::Affine { x: x.conj(), y: y.conj() },
    }
}

pub fn rank2_witnesses(u: &Rational) -> Result<Rank2Witnesses> {
    let cp = rational_critical_point(u)?;
    let nice = cp.nice;
    let other = match cp.root {
        CriticalRoot::R => nice.s.clone(),
        CriticalRoot::S => nice.r.clone(),
    };
    let fc = nice.f(&other);
    let q_coeff = is_square(&(-&fc / int(3)))
        .ok_or_else(|| Error::ContractViolation(format!("f({other}) = {fc} is not in −3·ℚ²")))?;
    let k = nice_over(&nice.l, -3)?;
    let embed = |c: &Rational| QuadExtElem::from_rational(c.clone(), -3).expect("d = −3");
    let q = k.point(embed(&other), QuadExtElem::new(int(0), q_coeff.clone(), -3)?)?;
    let p_k = cp.point.map(embed);
    let sigma_q = conj(&q);
    Ok(Rank2Witnesses {
        p_non_torsion: !is_torsion(&nice.curve, &cp.point),
        q_non_torsion: !is_torsion(&k, &q),
        sigma_q_is_neg_q: k.add(&sigma_q, &q).is_infinity() && sigma_q == k.neg(&q),
        sigma_p_is_p: conj(&p_k) == p_k,
        nice,
        p_root: cp.root,
        p: cp.point,
        q,
        q_coeff,
    })
}
