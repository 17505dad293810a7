use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::curve::{HyperCurve, WPPoint};
use crate::arith::roots::clear_denominators;
use crate::Rational;

/// All rational points with `height(x) ≤ bound`, plus the rational points at
/// infinity, sorted.
///
/// For `x = a/b` in lowest terms the point exists iff `G(a, b)` is a square,
/// where `G` is the integral binary form proportional to `Z^(2g+2)·g(X/Z)`
/// scaled so that the proportionality constant is itself a square.
pub fn search_points(curve: &HyperCurve, bound: u64) -> Vec<WPPoint> {
    let n = 2 * curve.genus() + 2;
    let ints = clear_denominators(curve.g());
    // g = (cn/cd)·G, so y² = (cn/cd)·G(a,b)/b^n  ⇔  (y·cd·b^(n/2))² = cn·cd·G(a,b)
    let q = curve.lead() / Rational::from_integer(ints.last().expect("nonzero").clone());
    let (cn, cd) = (q.numer().clone(), q.denom().clone());
    let coeffs: Vec<BigInt> = ints.iter().map(|c| c * &cn * &cd).collect();
    let small: Option<Vec<i128>> = coeffs.iter().map(|c| c.to_i128()).collect();
    let denom = Rational::new(cd.clone(), BigInt::from(1));

    let w = curve.weight();
    let mut out: Vec<WPPoint> = (1..=bound)
        .into_par_iter()
        .flat_map_iter(|b| {
            let mut found = Vec::new();
            let bound_i = bound as i64;
            for a in -bound_i..=bound_i {
                if a.unsigned_abs().gcd(&b) != 1 && !(a == 0 && b == 1) {
                    continue;
                }
                let root = match &small {
                    Some(c) => eval_i128(c, a as i128, b as i128, n)
                        .map(|v| sqrt_i128(v).map(BigInt::from))
                        .unwrap_or_else(|| sqrt_big(&eval_big(&coeffs, a, b, n))),
                    None => sqrt_big(&eval_big(&coeffs, a, b, n)),
                };
                if let Some(r) = root {
                    let x = Rational::new(BigInt::from(a), BigInt::from(b));
                    let bpow = num_traits::pow(BigInt::from(b), n / 2);
                    let y = Rational::new(r, BigInt::from(1)) / (&denom * Rational::from_integer(bpow));
                    if y.is_zero() {
                        found.push(WPPoint::affine(x, y, w));
                    } else {
                        found.push(WPPoint::affine(x.clone(), -y.clone(), w));
                        found.push(WPPoint::affine(x, y, w));
                    }
                }
            }
            found
        })
        .collect();
    out.extend(curve.infinite_points());
    out.sort();
    out.dedup();
    debug_assert!(out.iter().all(|p| curve.contains(p)));
    out
}

/// `Σ cᵢ aⁱ b^(n−i)`, `None` on overflow.
fn eval_i128(c: &[i128], a: i128, b: i128, n: usize) -> Option<i128> {
    let mut acc: i128 = 0;
    let mut bpow: i128 = 1;
    // Horner in a with b-powers: Σ c_i a^i b^(n−i) = b^(n−d)·Σ_{i≤d} c_i a^i b^(d−i)
    let d = c.len() - 1;
    for ci in c.iter().rev() {
        acc = acc.checked_mul(a)?.checked_add(ci.checked_mul(bpow)?)?;
        bpow = bpow.checked_mul(b)?;
    }
    for _ in d..n {
        acc = acc.checked_mul(b)?;
    }
    Some(acc)
}

fn eval_big(c: &[BigInt], a: i64, b: u64, n: usize) -> BigInt {
    let (a, b) = (BigInt::from(a), BigInt::from(b));
    let d = c.len() - 1;
    let mut acc = BigInt::zero();
    let mut bpow = BigInt::from(1);
    for ci in c.iter().rev() {
        acc = acc * &a + ci * &bpow;
        bpow *= &b;
    }
    acc * num_traits::pow(b, n - d)
}

fn sqrt_i128(v: i128) -> Option<i128> {
    if v < 0 {
        return None;
    }
    let r = v.isqrt();
    (r * r == v).then_some(r)
}

fn sqrt_big(v: &BigInt) -> Option<BigInt> {
    if v.is_negative() {
        return None;
    }
    let r = v.sqrt();
    (&r * &r == *v).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::QPoly;

    fn affine(x: Rational, y: Rational, w: u32) -> WPPoint {
        WPPoint::affine(x, y, w)
    }

    #[test]
    fn sextic_control() {
        // y² = x⁶ + 1
        let c = HyperCurve::new(QPoly::new(vec![int(1), int(0), int(0), int(0), int(0), int(0), int(1)])).unwrap();
        let pts = search_points(&c, 2);
        let expected = vec![
            WPPoint::infinity(int(-1), 3),
            WPPoint::infinity(int(1), 3),
            affine(int(0), int(-1), 3),
            affine(int(0), int(1), 3),
        ];
        assert_eq!(pts, expected);
    }

    #[test]
    fn quotient_curve_points() {
        let pts = search_points(&HyperCurve::h_q(), 30);
        let expected = vec![
            WPPoint::infinity(int(0), 3),
            affine(int(-1), int(0), 3),
            affine(rat(-1, 4), int(0), 3),
            affine(int(0), int(-1), 3),
            affine(int(0), int(1), 3),
            affine(int(2), int(-9), 3),
            affine(int(2), int(9), 3),
        ];
        assert_eq!(pts, expected);
    }

    #[test]
    fn non_integral_model_matches_brute_force() {
        // y² = (x⁵ − x + 1/4)/9 has (0, ±1/6) and (1, ±1/6)
        let c = HyperCurve::new(QPoly::new(vec![rat(1, 36), rat(-1, 9), int(0), int(0), int(0), rat(1, 9)])).unwrap();
        let pts = search_points(&c, 5);
        for p in &pts {
            assert!(c.contains(p));
        }
        assert!(pts.contains(&affine(int(0), rat(1, 6), 3)));
        assert!(pts.contains(&affine(int(1), rat(-1, 6), 3)));
        // brute force over the same box
        let mut brute = 0;
        for b in 1..=5i64 {
            for a in -5..=5i64 {
                if num_integer::gcd(a, b) != 1 {
                    continue;
                }
                let v = c.g().eval(&rat(a, b));
                if let Some(r) = crate::arith::is_square(&v) {
                    brute += if r.is_zero() { 1 } else { 2 };
                }
            }
        }
        assert_eq!(pts.len(), brute + 1);
    }
}
