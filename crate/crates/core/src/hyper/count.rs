//! Point counts over 𝔽_p and 𝔽_{p²}, and `|J(𝔽_p)|` from the zeta function.

use rayon::prelude::*;
use serde::Serialize;

use super::curve::HyperCurve;
use crate::arith::finite_field::legendre;
use crate::arith::{Fp, Fp2};
use crate::error::{Error, Result};

/// `|C(𝔽_p)|`, points at infinity included.
pub fn count_points_fp(curve: &HyperCurve, p: u64) -> Result<u64> {
    let g = curve.reduce_mod(p)?;
    let affine: u64 = Fp::elements(p)
        .map(|x| (1 + legendre(g.eval(&x).value(), p)) as u64)
        .sum();
    let infinite = if curve.is_odd_degree() {
        1
    } else {
        (1 + legendre(g.lead().expect("nonzero").value(), p)) as u64
    };
    Ok(affine + infinite)
}

/// `|C(𝔽_{p²})|`; every element of 𝔽_p is a square there, so an even model
/// always has two points at infinity.
pub fn count_points_fp2(curve: &HyperCurve, p: u64) -> Result<u64> {
    let g = curve.reduce_mod(p)?;
    let g2 = g.map(|c| Fp2::from_fp(*c));
    let squares = Fp2::square_table(p);
    let zero = Fp2::new(0, 0, p);
    let affine: u64 = Fp2::elements(p)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|x| {
            let v = g2.eval(x);
            if v == zero {
                1
            } else if squares[v.index()] {
                2
            } else {
                0
            }
        })
        .sum();
    Ok(affine + if curve.is_odd_degree() { 1 } else { 2 })
}

/// `N₁, N₂` and the coefficients of `P(T) = 1 + c₁T + c₂T² + pc₁T³ + p²T⁴`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ZetaData {
    pub p: u64,
    pub n1: i64,
    pub n2: i64,
    pub c1: i64,
    pub c2: i64,
}

impl ZetaData {
    /// `P(1) = |J(𝔽_p)|`.
    pub fn jacobian_order(&self) -> i64 {
        let p = self.p as i64;
        1 + self.c1 + self.c2 + p * self.c1 + p * p
    }

    pub fn eval(&self, t: i64) -> i64 {
        let p = self.p as i64;
        1 + self.c1 * t + self.c2 * t * t + p * self.c1 * t * t * t + p * p * t * t * t * t
    }
}

pub fn zeta_coefficients(curve: &HyperCurve, p: u64) -> Result<ZetaData> {
    if curve.genus() != 2 {
        return Err(Error::Domain("zeta data implemented for genus 2".into()));
    }
    let n1 = count_points_fp(curve, p)? as i64;
    let n2 = count_points_fp2(curve, p)? as i64;
    let pi = p as i64;
    let c1 = n1 - (pi + 1);
    let twice_c2 = n2 - (pi * pi + 1) + c1 * c1;
    debug_assert_eq!(twice_c2 % 2, 0);
    Ok(ZetaData { p, n1, n2, c1, c2: twice_c2 / 2 })
}

pub fn jacobian_order_fp(curve: &HyperCurve, p: u64) -> Result<u64> {
    let z = zeta_coefficients(curve, p)?;
    Ok(z.jacobian_order() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::QPoly;

    #[test]
    fn small_counts() {
        // y² = x⁵ + 1 over 𝔽₃
        let c = HyperCurve::new(QPoly::new(vec![int(1), int(0), int(0), int(0), int(0), int(1)])).unwrap();
        assert_eq!(count_points_fp(&c, 3).unwrap(), 4);
        assert!(count_points_fp2(&c, 3).unwrap() >= 4);
        assert_eq!(count_points_fp(&c, 5), Err(Error::BadPrime { p: 5 }));
    }

    #[test]
    fn extension_counts_dominate() {
        let hq = HyperCurve::h_q();
        for p in [3, 5, 7, 11, 13] {
            if let (Ok(n1), Ok(n2)) = (count_points_fp(&hq, p), count_points_fp2(&hq, p)) {
                assert!(n2 >= n1);
                let z = zeta_coefficients(&hq, p).unwrap();
                assert!(z.jacobian_order() > 0);
                assert_eq!(z.eval(1), z.jacobian_order());
            }
        }
    }
}
