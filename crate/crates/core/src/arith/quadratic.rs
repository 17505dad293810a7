use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::rational::{is_square, is_squarefree, rational_to_string};
use crate::error::{Error, Result};
use crate::scalar;
use crate::Rational;

/// The element `a + b√d` of ℚ(√d), `d` squarefree and different from 0 and 1.
///
/// Elements of different fields never meet in arithmetic; doing so is a bug
/// and panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExtElem {
    a: Rational,
    b: Rational,
    d: i64,
}

fn check_d(d: i64) -> Result<()> {
    if d == 0 || d == 1 || !is_squarefree(&BigInt::from(d))? {
        return Err(Error::Domain(format!(
            "ℚ(√{d}) needs squarefree d ∉ {{0, 1}}"
        )));
    }
    Ok(())
}

impl QuadExtElem {
    pub fn new(a: Rational, b: Rational, d: i64) -> Result<Self> {
        check_d(d)?;
        Ok(Self { a, b, d })
    }

    /// Embeds a rational into ℚ(√d).
    pub fn from_rational(a: Rational, d: i64) -> Result<Self> {
        Self::new(a, Rational::zero(), d)
    }

    /// `√d` itself.
    pub fn sqrt_d(d: i64) -> Result<Self> {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    /// Field label from an arbitrary `BigInt` squarefree part.
    pub fn label(d: &BigInt) -> Result<i64> {
        let d = d
            .to_i64()
            .ok_or_else(|| Error::Domain(format!("field label {d} exceeds i64")))?;
        check_d(d)?;
        Ok(d)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { a: self.a.clone(), b: -self.b.clone(), d: self.d }
    }

    /// `a² − d·b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(self.d.into()) * &self.b * &self.b
    }

    pub fn trace(&self) -> Rational {
        Rational::from_integer(2.into()) * &self.a
    }

    /// A square root inside ℚ(√d), if one exists.
    pub fn sqrt(&self) -> Option<Self> {
        let two = Rational::from_integer(2.into());
        if self.b.is_zero() {
            if let Some(r) = is_square(&self.a) {
                return Some(Self { a: r, b: Rational::zero(), d: self.d });
            }
            // a = d·e²  →  √a = e√d
            let d = Rational::from_integer(self.d.into());
            return is_square(&(&self.a / d)).map(|e| Self { a: Rational::zero(), b: e, d: self.d });
        }
        // (c + e√d)² = c² + d e² + 2ce√d
        let n = is_square(&self.norm())?;
        for c2 in [(&self.a + &n) / &two, (&self.a - &n) / &two] {
            if let Some(c) = is_square(&c2) {
                if c.is_zero() {
                    continue;
                }
                let e = &self.b / (&two * &c);
                let cand = Self { a: c, b: e, d: self.d };
                if scalar::Field::square(&cand) == *self {
                    return Some(cand);
                }
            }
        }
        None
    }

    fn same_field(&self, rhs: &Self) {
        assert_eq!(self.d, rhs.d, "mixing ℚ(√{}) with ℚ(√{})", self.d, rhs.d);
    }
}

impl fmt::Debug for QuadExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuadExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "({})√{}", self.b, self.d);
        }
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "{} {} ({})√{}", self.a, sign, self.b.abs(), self.d)
    }
}

impl Serialize for QuadExtElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("QuadExtElem", 3)?;
        st.serialize_field("a", &rational_to_string(&self.a))?;
        st.serialize_field("b", &rational_to_string(&self.b))?;
        st.serialize_field("d", &self.d)?;
        st.end()
    }
}

impl Add for QuadExtElem {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.same_field(&rhs);
        Self { a: self.a + rhs.a, b: self.b + rhs.b, d: self.d }
    }
}

impl Sub for QuadExtElem {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.same_field(&rhs);
        Self { a: self.a - rhs.a, b: self.b - rhs.b, d: self.d }
    }
}

impl Mul for QuadExtElem {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.same_field(&rhs);
        let d = Rational::from_integer(self.d.into());
        Self {
            a: &self.a * &rhs.a + d * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            d: self.d,
        }
    }
}

impl Neg for QuadExtElem {
    type Output = Self;
    fn neg(self) -> Self {
        Self { a: -self.a, b: -self.b, d: self.d }
    }
}

impl scalar::Field for QuadExtElem {
    fn zero_like(&self) -> Self {
        Self { a: Rational::zero(), b: Rational::zero(), d: self.d }
    }

    fn one_like(&self) -> Self {
        Self { a: Rational::one(), b: Rational::zero(), d: self.d }
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }

    fn inv(&self) -> Option<Self> {
        if scalar::Field::is_zero(self) {
            return None;
        }
        // d is not a square, so the norm of a nonzero element is nonzero
        let n = self.norm();
        let c = self.conj();
        Some(Self { a: c.a / &n, b: c.b / n, d: self.d })
    }

    fn from_rational_like(&self, q: &Rational) -> Self {
        Self { a: q.clone(), b: Rational::zero(), d: self.d }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};
    use crate::scalar::Field;

    #[test]
    fn rejects_non_squarefree_label() {
        assert!(QuadExtElem::new(int(1), int(1), 12).is_err());
        assert!(QuadExtElem::new(int(1), int(1), 1).is_err());
        assert!(QuadExtElem::new(int(1), int(1), -15).is_ok());
    }

    #[test]
    fn norm_is_product_with_conjugate() {
        let x = QuadExtElem::new(rat(3, 2), rat(-1, 5), -15).unwrap();
        let p = x.clone() * x.conj();
        assert!(p.is_rational());
        assert_eq!(p.a(), &x.norm());
    }

    #[test]
    fn square_roots_inside_field() {
        let d = -15;
        let x = QuadExtElem::new(rat(1, 3), rat(2, 7), d).unwrap();
        let r = x.square().sqrt().unwrap();
        assert!(r == x || r == -x.clone());
        // -15 is a square in ℚ(√-15); 3 is not
        let m15 = QuadExtElem::from_rational(int(-15), d).unwrap();
        assert_eq!(m15.sqrt().unwrap().square(), m15);
        assert!(QuadExtElem::from_rational(int(3), d).unwrap().sqrt().is_none());
    }
}
