use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};

use crate::arith::rational::{rational_to_string, reduce_mod};
use crate::arith::{int, is_square, Fp, UniPoly};
use crate::error::{Error, Result};
use crate::{FpPoly, QPoly, Rational};

/// `y² = g(x)` with `g` squarefree of degree 5 to 8, read in the weighted
/// plane with weights `(1, genus + 1, 1)`: `Y² = Z^(2g+2)·g(X/Z)`.
#[derive(Clone, PartialEq)]
pub struct HyperCurve {
    g: QPoly,
    genus: usize,
}

impl HyperCurve {
    pub fn new(g: QPoly) -> Result<Self> {
        let deg = g.degree().unwrap_or(0);
        if !(5..=8).contains(&deg) {
            return Err(Error::Domain(format!("degree {deg} outside 5..=8")));
        }
        if QPoly::gcd(&g, &g.derivative()).degree() != Some(0) {
            return Err(Error::Domain("g is not squarefree".into()));
        }
        Ok(Self { genus: (deg - 1) / 2, g })
    }

    /// The genus-3 curve `y² = (x² + x + 1)(x⁶ + 3x⁵ − 5x³ + 3x + 1)`.
    pub fn h() -> Self {
        let a = QPoly::new(vec![int(1), int(1), int(1)]);
        let b = QPoly::new([1, 3, 0, -5, 0, 3, 1].iter().map(|&c| int(c)).collect());
        Self::new(&a * &b).expect("H is smooth")
    }

    /// The genus-2 quotient `y² = 4x⁵ − 7x⁴ − 2x³ + 16x² + 8x + 1`.
    pub fn h_q() -> Self {
        Self::new(QPoly::new([1, 8, 16, -2, -7, 4].iter().map(|&c| int(c)).collect()))
            .expect("H_q is smooth")
    }

    pub fn g(&self) -> &QPoly {
        &self.g
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Weight of `Y`.
    pub fn weight(&self) -> u32 {
        self.genus as u32 + 1
    }

    pub fn degree(&self) -> usize {
        self.g.degree().expect("nonzero")
    }

    pub fn is_odd_degree(&self) -> bool {
        self.degree() % 2 == 1
    }

    pub fn lead(&self) -> &Rational {
        self.g.lead().expect("nonzero")
    }

    /// `Z^(2g+2)·g(X/Z)`.
    pub fn homogeneous_rhs(&self, x: &Rational, z: &Rational) -> Rational {
        let n = 2 * self.genus + 2;
        let mut acc = Rational::zero();
        for (i, c) in self.g.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc += c * pow(x, i) * pow(z, n - i);
            }
        }
        acc
    }

    pub fn contains(&self, p: &WPPoint) -> bool {
        p.w == self.weight() && &p.y * &p.y == self.homogeneous_rhs(&p.x, &p.z)
    }

    /// The affine point `(x, y)`, checked.
    pub fn point(&self, x: Rational, y: Rational) -> Result<WPPoint> {
        let p = WPPoint::affine(x, y, self.weight());
        if !self.contains(&p) {
            return Err(Error::Domain(format!("{p} is not on the curve")));
        }
        Ok(p)
    }

    /// Rational points with `Z = 0`: one for odd degree, `(1, ±√lead, 0)` for
    /// even degree when the leading coefficient is a square.
    pub fn infinite_points(&self) -> Vec<WPPoint> {
        let w = self.weight();
        if self.is_odd_degree() {
            return vec![WPPoint::infinity(Rational::zero(), w)];
        }
        match is_square(self.lead()) {
            Some(r) => vec![WPPoint::infinity(-r.clone(), w), WPPoint::infinity(r, w)],
            None => Vec::new(),
        }
    }

    /// `g mod p`, refusing primes of bad reduction.
    pub fn reduce_mod(&self, p: u64) -> Result<FpPoly> {
        let bad = || Error::BadPrime { p };
        let coeffs: Vec<Fp> = self
            .g
            .coeffs()
            .iter()
            .map(|c| reduce_mod(c, p).map(|v| Fp::new(v as i64, p)).ok_or_else(bad))
            .collect::<Result<_>>()?;
        let gp = UniPoly::new(coeffs);
        if gp.degree() != self.g.degree() || p == 2 {
            return Err(bad());
        }
        if UniPoly::gcd(&gp, &gp.derivative()).degree() != Some(0) {
            return Err(bad());
        }
        Ok(gp)
    }

    pub fn has_good_reduction(&self, p: u64) -> bool {
        self.reduce_mod(p).is_ok()
    }
}

fn pow(x: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..k {
        acc *= x;
    }
    acc
}

impl fmt::Debug for HyperCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y² = {:?} (genus {})", self.g, self.genus)
    }
}

/// A point `(X : Y : Z)` of a weighted plane with weights `(1, w, 1)`, kept
/// normalized: `Z = 1` for affine points, `X = 1, Z = 0` at infinity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WPPoint {
    x: Rational,
    y: Rational,
    z: Rational,
    w: u32,
}

impl WPPoint {
    /// Normalizes `(X, Y, Z) ~ (μX, μ^w Y, μZ)`. Fails on `X = Z = 0`.
    pub fn new(x: Rational, y: Rational, z: Rational, w: u32) -> Result<Self> {
        let mu = if !z.is_zero() {
            z.recip()
        } else if !x.is_zero() {
            x.recip()
        } else {
            return Err(Error::Domain("(0 : Y : 0) is not a point".into()));
        };
        Ok(Self { x: &x * &mu, y: &y * pow(&mu, w as usize), z: &z * &mu, w })
    }

    pub fn affine(x: Rational, y: Rational, w: u32) -> Self {
        Self { x, y, z: Rational::one(), w }
    }

    pub fn infinity(y: Rational, w: u32) -> Self {
        Self { x: Rational::one(), y, z: Rational::zero(), w }
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn y(&self) -> &Rational {
        &self.y
    }

    pub fn z(&self) -> &Rational {
        &self.z
    }

    pub fn weight(&self) -> u32 {
        self.w
    }

    pub fn is_infinite(&self) -> bool {
        self.z.is_zero()
    }

    /// The hyperelliptic involution `Y ↦ −Y`.
    pub fn involution(&self) -> Self {
        Self { y: -self.y.clone(), ..self.clone() }
    }

    /// `[X, Y, Z]` as `"a/b"` strings.
    pub fn to_strings(&self) -> [String; 3] {
        [rational_to_string(&self.x), rational_to_string(&self.y), rational_to_string(&self.z)]
    }

    fn key(&self) -> (bool, &Rational, &Rational) {
        (!self.is_infinite(), &self.x, &self.y)
    }
}

impl Ord for WPPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for WPPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for WPPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "(1 : {} : 0)", self.y)
        } else {
            write!(f, "({}, {})", self.x, self.y)
        }
    }
}

impl fmt::Debug for WPPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn normalization() {
        // (3, 4, 9) on C maps to (6, −243, −3) on H
        let p = WPPoint::new(int(6), int(-243), int(-3), 4).unwrap();
        assert_eq!(p, WPPoint::affine(int(-2), int(-3), 4));
        let q = WPPoint::new(rat(2, 3), rat(-1, 27), rat(-1, 3), 4).unwrap();
        assert_eq!(p, q);
        // idempotent
        assert_eq!(WPPoint::new(p.x.clone(), p.y.clone(), p.z.clone(), 4).unwrap(), p);
        let inf = WPPoint::new(int(-2), int(16), int(0), 4).unwrap();
        assert_eq!(inf, WPPoint::infinity(int(1), 4));
        assert!(WPPoint::new(int(0), int(1), int(0), 4).is_err());
    }

    #[test]
    fn named_curves() {
        let h = HyperCurve::h();
        assert_eq!(h.genus(), 3);
        assert_eq!(h.infinite_points().len(), 2);
        assert!(h.contains(&WPPoint::affine(rat(-1, 2), rat(3, 16), 4)));
        let hq = HyperCurve::h_q();
        assert_eq!(hq.genus(), 2);
        assert!(hq.contains(&WPPoint::infinity(int(0), 3)));
        assert!(hq.contains(&WPPoint::affine(int(2), int(9), 3)));
        assert!(!hq.has_good_reduction(2));
    }
}
