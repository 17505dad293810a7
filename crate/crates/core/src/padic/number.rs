use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::arith::rational::valuation;
use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::Rational;

/// Default number of p-adic digits carried by fresh values.
pub const DEFAULT_PRECISION: u32 = 30;

/// Consumers refuse results carrying fewer digits than this.
pub const PRECISION_FLOOR: u32 = 5;

pub(crate) fn p_pow(p: u64, k: u32) -> BigInt {
    Pow::pow(BigInt::from(p), k)
}

/// A p-adic number `p^val · unit` known modulo `p^(val + prec)`.
///
/// `prec` is the relative precision. A value with `prec == 0` is the tracked
/// zero: it is only known to be divisible by `p^val`. `cap` is the relative
/// precision given to constants derived from this value.
#[derive(Clone, PartialEq, Eq)]
pub struct Padic {
    p: u64,
    val: i64,
    unit: BigInt,
    prec: u32,
    cap: u32,
}

impl Padic {
    /// Zero known modulo `p^abs_prec`.
    pub fn zero(p: u64, abs_prec: i64, cap: u32) -> Self {
        Self { p, val: abs_prec, unit: BigInt::zero(), prec: 0, cap }
    }

    pub fn from_rational(q: &Rational, p: u64, prec: u32) -> Self {
        let Some(v) = valuation(q, p) else {
            return Self::zero(p, prec as i64, prec);
        };
        let pb = BigInt::from(p);
        let mut n = q.numer().clone();
        let mut d = q.denom().clone();
        while (&n % &pb).is_zero() {
            n /= &pb;
        }
        while (&d % &pb).is_zero() {
            d /= &pb;
        }
        let m = p_pow(p, prec);
        let dinv = mod_inverse(&d, &m);
        let unit = (n * dinv).mod_floor(&m);
        Self { p, val: v, unit, prec, cap: prec }
    }

    pub fn from_i64(n: i64, p: u64, prec: u32) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()), p, prec)
    }

    /// Builds `p^val · (r mod p^(abs − val))`, normalizing the valuation.
    fn normalize(p: u64, mut val: i64, mut r: BigInt, abs: i64, cap: u32) -> Self {
        if val >= abs {
            return Self::zero(p, abs, cap);
        }
        let m = p_pow(p, (abs - val) as u32);
        r = r.mod_floor(&m);
        if r.is_zero() {
            return Self::zero(p, abs, cap);
        }
        let pb = BigInt::from(p);
        while (&r % &pb).is_zero() {
            r /= &pb;
            val += 1;
        }
        let prec = (abs - val) as u32;
        Self { p, val, unit: r, prec, cap }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// Exact valuation, `None` for the tracked zero.
    pub fn valuation(&self) -> Option<i64> {
        (self.prec > 0).then_some(self.val)
    }

    /// Lower bound on the valuation: exact for nonzero values, the absolute
    /// precision for the tracked zero.
    pub fn valuation_lower_bound(&self) -> i64 {
        self.val
    }

    /// The value is known modulo `p^abs_precision()`.
    pub fn abs_precision(&self) -> i64 {
        self.val + self.prec as i64
    }

    pub fn rel_precision(&self) -> u32 {
        self.prec
    }

    pub fn unit(&self) -> &BigInt {
        &self.unit
    }

    /// `p^k`.
    pub fn p_power(p: u64, k: i64, prec: u32) -> Self {
        Self { p, val: k, unit: BigInt::one(), prec, cap: prec }
    }

    /// Drops digits beyond absolute precision `abs`.
    pub fn truncate_abs(&self, abs: i64) -> Self {
        if abs >= self.abs_precision() {
            return self.clone();
        }
        if self.prec == 0 {
            return Self::zero(self.p, abs.min(self.val), self.cap);
        }
        Self::normalize(self.p, self.val, self.unit.clone(), abs, self.cap)
    }

    /// Representative in ℤ when the valuation is nonnegative.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.val < 0 && self.prec > 0 {
            return None;
        }
        if self.prec == 0 {
            return Some(BigInt::zero());
        }
        Some(&self.unit * p_pow(self.p, self.val as u32))
    }

    /// `p^val · unit` as a rational (the canonical representative).
    pub fn to_rational(&self) -> Rational {
        if self.prec == 0 {
            return Rational::zero();
        }
        let pv = Rational::from_integer(p_pow(self.p, self.val.unsigned_abs() as u32));
        let u = Rational::from_integer(self.unit.clone());
        if self.val >= 0 {
            u * pv
        } else {
            u / pv
        }
    }

    /// Reduction mod p of an integral value.
    pub fn residue(&self) -> Option<u64> {
        if self.val < 0 && self.prec > 0 {
            return None;
        }
        if self.val > 0 || self.prec == 0 {
            return Some(0);
        }
        (&self.unit % BigInt::from(self.p)).to_u64()
    }

    /// True when `self − other` vanishes to the precision both carry.
    pub fn agrees_with(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).prec == 0
    }

    /// Digits to which the value is known to vanish: the absolute precision
    /// of a tracked zero, otherwise the valuation.
    pub fn vanishing_digits(&self) -> i64 {
        self.val
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one(), "{a} not invertible mod {m}");
    e.x.mod_floor(m)
}

impl fmt::Debug for Padic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.prec == 0 {
            write!(f, "O({}^{})", self.p, self.val)
        } else {
            write!(f, "{}·{}^{} + O({}^{})", self.unit, self.p, self.val, self.p, self.abs_precision())
        }
    }
}

impl fmt::Display for Padic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl Add for Padic {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        let p = self.p;
        let cap = self.cap.min(rhs.cap);
        let abs = self.abs_precision().min(rhs.abs_precision());
        let vmin = self.val.min(rhs.val);
        if vmin >= abs {
            return Self::zero(p, abs, cap);
        }
        let lift = |x: &Padic| {
            if x.prec == 0 || x.val >= abs {
                BigInt::zero()
            } else {
                &x.unit * p_pow(p, (x.val - vmin) as u32)
            }
        };
        Self::normalize(p, vmin, lift(&self) + lift(&rhs), abs, cap)
    }
}

impl Neg for Padic {
    type Output = Self;
    fn neg(self) -> Self {
        if self.prec == 0 {
            return self;
        }
        let m = p_pow(self.p, self.prec);
        Self { unit: (&m - &self.unit).mod_floor(&m), ..self }
    }
}

impl Sub for Padic {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for Padic {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        let cap = self.cap.min(rhs.cap);
        let prec = self.prec.min(rhs.prec);
        let val = self.val + rhs.val;
        if prec == 0 {
            // a tracked zero times x is known modulo p^(abs(zero) + v(x))
            return Self::zero(self.p, val, cap);
        }
        let m = p_pow(self.p, prec);
        Self { p: self.p, val, unit: (self.unit * rhs.unit).mod_floor(&m), prec, cap }
    }
}

impl Field for Padic {
    fn zero_like(&self) -> Self {
        Self::zero(self.p, self.cap as i64, self.cap)
    }

    fn one_like(&self) -> Self {
        Self::from_i64(1, self.p, self.cap)
    }

    fn is_zero(&self) -> bool {
        self.prec == 0
    }

    fn inv(&self) -> Option<Self> {
        if self.prec == 0 {
            return None;
        }
        let m = p_pow(self.p, self.prec);
        Some(Self { p: self.p, val: -self.val, unit: mod_inverse(&self.unit, &m), prec: self.prec, cap: self.cap })
    }

    fn from_rational_like(&self, q: &Rational) -> Self {
        Self::from_rational(q, self.p, self.cap)
    }
}

/// The square root whose leading residue lies in `[1, (p − 1)/2]`.
pub fn padic_sqrt(a: &Padic) -> Result<Padic> {
    let p = a.p;
    if a.prec == 0 {
        return Ok(Padic::zero(p, a.val.div_euclid(2), a.cap));
    }
    if a.val % 2 != 0 {
        return Err(Error::OddValuation { valuation: a.val });
    }
    let pb = BigInt::from(p);
    let u0 = (&a.unit % &pb).to_u64().expect("small");
    let r0 = (1..=(p - 1) / 2)
        .find(|r| (r * r) % p == u0)
        .ok_or(Error::NonResidue { p })?;
    // Newton: r ← (r + u/r)/2, doubling the correct digits each round
    let m = p_pow(p, a.prec);
    let two_inv = mod_inverse(&BigInt::from(2), &m);
    let mut r = BigInt::from(r0);
    let mut digits = 1u32;
    while digits < a.prec {
        digits = (digits * 2).min(a.prec);
        let md = p_pow(p, digits);
        let rinv = mod_inverse(&r, &md);
        r = ((&r + &a.unit * rinv) * &two_inv).mod_floor(&md);
    }
    Ok(Padic { p, val: a.val / 2, unit: r.mod_floor(&m), prec: a.prec, cap: a.cap })
}

/// Hensel lift of a simple root `r0` of `f` mod p to relative precision `prec`.
pub fn hensel_root(f: &crate::QPoly, r0: u64, p: u64, prec: u32) -> Result<Padic> {
    let fp = f.map(|c| Padic::from_rational(c, p, prec + 2));
    let dfp = fp.derivative();
    let mut x = Padic::from_i64(r0 as i64, p, prec + 2);
    let d = dfp.eval(&x);
    if d.valuation() != Some(0) {
        return Err(Error::Domain(format!("{r0} is not a simple root mod {p}")));
    }
    if fp.eval(&x).valuation_lower_bound() < 1 {
        return Err(Error::Domain(format!("{r0} is not a root mod {p}")));
    }
    for _ in 0..(prec + 2).ilog2() + 2 {
        let step = fp.eval(&x).checked_div(&dfp.eval(&x)).expect("unit derivative");
        x = x - step;
    }
    Ok(x.truncate_abs(prec as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    fn q(n: i64, d: i64, p: u64) -> Padic {
        Padic::from_rational(&rat(n, d), p, 20)
    }

    #[test]
    fn field_round_trips() {
        let p = 7;
        let x = q(22, 49, p);
        assert_eq!(x.valuation(), Some(-2));
        let y = x.inv().unwrap();
        assert!((x.clone() * y).is_one());
        assert!((x.clone() - x.clone()).is_zero());
        let sum = q(1, 3, p) + q(2, 3, p);
        assert!(sum.agrees_with(&Padic::from_i64(1, p, 20)));
    }

    #[test]
    fn cancellation_loses_relative_precision() {
        let p = 5;
        let a = Padic::from_rational(&int(1), p, 10);
        let b = Padic::from_rational(&int(1 + 5i64.pow(4)), p, 10);
        let d = b - a;
        assert_eq!(d.valuation(), Some(4));
        assert_eq!(d.abs_precision(), 10);
        assert_eq!(d.rel_precision(), 6);
    }

    #[test]
    fn sqrt_examples() {
        let p = 7;
        let r = padic_sqrt(&Padic::from_i64(4, p, 20)).unwrap();
        assert!(r.agrees_with(&Padic::from_i64(2, p, 20)));

        let r = padic_sqrt(&Padic::from_i64(2, p, 20)).unwrap();
        // residue search: 3² = 9 ≡ 2 (mod 7), and 3 ≤ (7 − 1)/2
        let residue = (1..7u64).find(|x| x * x % 7 == 2).unwrap();
        assert_eq!(r.residue(), Some(residue));
        assert!((r.clone() * r).agrees_with(&Padic::from_i64(2, p, 20)));

        assert_eq!(padic_sqrt(&Padic::from_i64(5, p, 20)), Err(Error::NonResidue { p: 7 }));
        assert_eq!(padic_sqrt(&Padic::from_i64(14, p, 20)), Err(Error::OddValuation { valuation: 1 }));
    }

    #[test]
    fn hensel_lifts_simple_root() {
        let f = crate::QPoly::new(vec![int(-2), int(0), int(1)]);
        let r = hensel_root(&f, 3, 7, 25).unwrap();
        assert!(f.map(|c| Padic::from_rational(c, 7, 25)).eval(&r).is_zero());
    }
}
