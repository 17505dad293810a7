//! The scalar abstraction every curve and polynomial routine is written against.
//!
//! Most fields in this crate carry runtime context: the `d` of ℚ(√d), the
//! prime of 𝔽_p, the prime and precision cap of ℚ_p. Constants are therefore
//! produced *from an existing element* (`zero_like`, `one_like`, ...) instead
//! of through context-free constructors such as `num_traits::Zero::zero`.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::Rational;

pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// Image of a rational in this field.
    ///
    /// Panics when the denominator is not invertible (for example `p | den`
    /// in 𝔽_p); callers reduce only data of good reduction.
    fn from_rational_like(&self, q: &Rational) -> Self;

    fn from_i64_like(&self, n: i64) -> Self {
        self.from_rational_like(&Rational::from_integer(BigInt::from(n)))
    }

    fn is_one(&self) -> bool {
        (self.clone() - self.one_like()).is_zero()
    }

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.clone() * r)
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    fn pow_u64(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }
}

impl Field for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }

    fn one_like(&self) -> Self {
        Rational::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_rational_like(&self, q: &Rational) -> Self {
        q.clone()
    }
}
