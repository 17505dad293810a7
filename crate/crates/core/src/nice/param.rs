use serde::Serialize;

use crate::arith::{int, is_square};
use crate::error::{Error, Result};
use crate::report::ToJson;
use crate::{Rational, RationalCurve};

/// `E_L` together with `W = √(L² − L + 1) > 0` and the critical points
/// `r < s` of `f_L`.
#[derive(Debug, Clone, PartialEq)]
pub struct NiceCurve {
    pub l: Rational,
    pub w: Rational,
    pub r: Rational,
    pub s: Rational,
    pub curve: RationalCurve,
}

impl NiceCurve {
    pub fn new(l: Rational) -> Result<Self> {
        if l == int(0) || l == int(1) {
            return Err(degenerate("L", format!("L = {l}")));
        }
        let w2 = &l * &l - &l + int(1);
        let w = is_square(&w2)
            .ok_or_else(|| Error::Domain(format!("L = {l} is not nice: L² − L + 1 = {w2}")))?;
        let three = int(3);
        let r = (int(1) + &l - &w) / &three;
        let s = (int(1) + &l + &w) / &three;
        let curve = RationalCurve::nice(&l)?;
        Ok(Self { l, w, r, s, curve })
    }

    /// `f_L(x) = x(x − 1)(x − L)`.
    pub fn f(&self, x: &Rational) -> Rational {
        x * (x - int(1)) * (x - &self.l)
    }

    pub fn summary(&self) -> NiceSummary {
        NiceSummary {
            l: self.l.to_json(),
            w: self.w.to_json(),
            r: self.r.to_json(),
            s: self.s.to_json(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NiceSummary {
    #[serde(rename = "L")]
    pub l: serde_json::Value,
    #[serde(rename = "W")]
    pub w: serde_json::Value,
    pub r: serde_json::Value,
    pub s: serde_json::Value,
}

fn degenerate(parameter: &str, reason: String) -> Error {
    Error::DegenerateParameter { parameter: parameter.into(), reason }
}

/// `L = (t² − 1)/(2t − 1)`, `W = (t² − t + 1)/(2t − 1)` up to sign, with `W`
/// returned positive.
pub fn param_l(t: &Rational) -> Result<(Rational, Rational)> {
    let den = int(2) * t - int(1);
    if den == int(0) {
        return Err(degenerate("t", "t = 1/2 is a pole of the parametrization".into()));
    }
    let l = (t * t - int(1)) / &den;
    if l == int(1) {
        return Err(degenerate("t", format!("t = {t} gives L = 1")));
    }
    if l == int(0) {
        return Err(degenerate("t", format!("t = {t} gives L = 0")));
    }
    let w = (t * t - t + int(1)) / &den;
    let w = if w < int(0) { -w } else { w };
    Ok((l, w))
}

/// The parameter of `(L, W)` seen from the base point `(0, 1)` of the conic
/// `W² = L² − L + 1`.
pub fn param_inverse(l: &Rational, w: &Rational) -> Result<Rational> {
    if w == &int(1) {
        return Err(degenerate("W", "W = 1 is the base point or its partner".into()));
    }
    let k = l / (w - int(1));
    if k == int(1) {
        return Err(degenerate("W", "line through the base point is parallel to an asymptote".into()));
    }
    Ok((int(1) + int(2) * &k) / (&k - int(1)))
}

/// Both parameters mapping to `L`, one for each sign of `W`.
pub fn param_preimages(l: &Rational) -> Result<Vec<Rational>> {
    let nc = NiceCurve::new(l.clone())?;
    let mut out = Vec::new();
    for w in [nc.w.clone(), -nc.w.clone()] {
        if let Ok(t) = param_inverse(l, &w) {
            if !out.contains(&t) {
                out.push(t);
            }
        }
    }
    Ok(out)
}

/// `L = (u² + 3)(u² − 1)/(4u²)`.
pub fn special_l(u: &Rational) -> Result<NiceCurve> {
    if u == &int(0) {
        return Err(degenerate("u", "u = 0 is a pole".into()));
    }
    let u2 = u * u;
    if u2 == int(1) {
        return Err(degenerate("u", format!("u = {u} gives L = 0")));
    }
    let l = (&u2 + int(3)) * (&u2 - int(1)) / (int(4) * &u2);
    NiceCurve::new(l).map_err(|e| Error::ContractViolation(format!("special L at u = {u}: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn parametrization() {
        assert_eq!(param_l(&int(3)).unwrap(), (rat(8, 5), rat(7, 5)));
        assert_eq!(param_l(&int(5)).unwrap(), (rat(8, 3), rat(7, 3)));
        let check = |t: i64, needle: &str| match param_l(&int(t)) {
            Err(Error::DegenerateParameter { reason, .. }) => assert!(reason.contains(needle), "{reason}"),
            other => panic!("{other:?}"),
        };
        check(2, "L = 1");
        check(0, "L = 1");
        check(1, "L = 0");
        check(-1, "L = 0");
        assert!(param_l(&rat(1, 2)).is_err());
        // negative W is normalized
        let (l, w) = param_l(&rat(1, 3)).unwrap();
        assert!(w > int(0));
        assert_eq!(&w * &w, &l * &l - &l + int(1));
    }

    #[test]
    fn inverse_recovers_parameter() {
        for t in [int(3), int(5), rat(-2, 7), rat(9, 4), rat(1, 3)] {
            let (l, _) = param_l(&t).unwrap();
            assert!(param_preimages(&l).unwrap().contains(&t), "t = {t}");
        }
    }

    #[test]
    fn special_family() {
        let nc = special_l(&int(2)).unwrap();
        assert_eq!((nc.l.clone(), nc.w.clone()), (rat(21, 16), rat(19, 16)));
        assert_eq!((nc.r.clone(), nc.s.clone()), (rat(3, 8), rat(7, 6)));
        let nc = special_l(&int(3)).unwrap();
        assert_eq!((nc.l.clone(), nc.w.clone(), nc.r.clone(), nc.s.clone()), (rat(8, 3), rat(7, 3), rat(4, 9), int(2)));
        for c in [&nc.r, &nc.s] {
            assert_eq!(int(3) * c * c - int(2) * (int(1) + &nc.l) * c + &nc.l, int(0));
        }
        assert!(matches!(special_l(&int(1)), Err(Error::DegenerateParameter { .. })));
        assert!(matches!(special_l(&int(0)), Err(Error::DegenerateParameter { .. })));
    }
}
