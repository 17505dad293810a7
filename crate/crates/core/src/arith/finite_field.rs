//! Prime fields 𝔽_p and their quadratic extensions 𝔽_{p²}, for small odd `p`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::scalar::Field;
use crate::Rational;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Legendre symbol `(a/p)` as -1, 0 or 1.
pub fn legendre(a: u64, p: u64) -> i32 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Least quadratic non-residue mod `p`.
pub fn least_non_residue(p: u64) -> u64 {
    (2..p).find(|&n| legendre(n, p) == -1).expect("odd prime has a non-residue")
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    pub fn new(v: i64, p: u64) -> Self {
        Self { v: v.rem_euclid(p as i64) as u64, p }
    }

    pub fn value(&self) -> u64 {
        self.v
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn is_square(&self) -> bool {
        legendre(self.v, self.p) >= 0
    }

    /// A square root by exhaustive search; `p` is small throughout this crate.
    pub fn sqrt(&self) -> Option<Self> {
        (0..self.p).map(|r| Fp { v: r, p: self.p }).find(|r| r.square() == *self)
    }

    /// All elements of 𝔽_p.
    pub fn elements(p: u64) -> impl Iterator<Item = Fp> {
        (0..p).map(move |v| Fp { v, p })
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.v, self.p)
    }
}

impl Add for Fp {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        Self { v: (self.v + rhs.v) % self.p, p: self.p }
    }
}

impl Sub for Fp {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        Self { v: (self.v + self.p - rhs.v) % self.p, p: self.p }
    }
}

impl Mul for Fp {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        Self { v: mul_mod(self.v, rhs.v, self.p), p: self.p }
    }
}

impl Neg for Fp {
    type Output = Self;
    fn neg(self) -> Self {
        Self { v: (self.p - self.v) % self.p, p: self.p }
    }
}

impl Field for Fp {
    fn zero_like(&self) -> Self {
        Self { v: 0, p: self.p }
    }

    fn one_like(&self) -> Self {
        Self { v: 1, p: self.p }
    }

    fn is_zero(&self) -> bool {
        self.v == 0
    }

    fn inv(&self) -> Option<Self> {
        (self.v != 0).then(|| Self { v: pow_mod(self.v, self.p - 2, self.p), p: self.p })
    }

    fn from_rational_like(&self, q: &Rational) -> Self {
        let p = BigInt::from(self.p);
        let num = q.numer().mod_floor(&p).to_u64().expect("reduced");
        let den = q.denom().mod_floor(&p).to_u64().expect("reduced");
        assert!(den != 0, "denominator of {q} vanishes mod {}", self.p);
        Self { v: mul_mod(num, pow_mod(den, self.p - 2, self.p), self.p), p: self.p }
    }
}

/// `a + b·√n` in 𝔽_{p²} = 𝔽_p[z]/(z² − n), `n` the least non-residue.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp2 {
    a: u64,
    b: u64,
    p: u64,
    n: u64,
}

impl Fp2 {
    pub fn new(a: u64, b: u64, p: u64) -> Self {
        Self { a: a % p, b: b % p, p, n: least_non_residue(p) }
    }

    pub fn from_fp(x: Fp) -> Self {
        Self::new(x.value(), 0, x.modulus())
    }

    /// Index `a + b·p`, used by the square tables.
    pub fn index(&self) -> usize {
        (self.a + self.b * self.p) as usize
    }

    /// Every element of 𝔽_{p²}, in index order.
    pub fn elements(p: u64) -> impl Iterator<Item = Fp2> {
        let n = least_non_residue(p);
        (0..p * p).map(move |i| Fp2 { a: i % p, b: i / p, p, n })
    }

    /// Table `t[x.index()]` = x is a square in 𝔽_{p²}.
    pub fn square_table(p: u64) -> Vec<bool> {
        let mut t = vec![false; (p * p) as usize];
        for x in Fp2::elements(p) {
            t[x.square().index()] = true;
        }
        t
    }
}

impl fmt::Debug for Fp2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}·√{} (mod {})", self.a, self.b, self.n, self.p)
    }
}

impl Add for Fp2 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self { a: (self.a + rhs.a) % self.p, b: (self.b + rhs.b) % self.p, ..self }
    }
}

impl Sub for Fp2 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self {
            a: (self.a + self.p - rhs.a) % self.p,
            b: (self.b + self.p - rhs.b) % self.p,
            ..self
        }
    }
}

impl Mul for Fp2 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let p = self.p;
        let a = (mul_mod(self.a, rhs.a, p) + mul_mod(mul_mod(self.b, rhs.b, p), self.n, p)) % p;
        let b = (mul_mod(self.a, rhs.b, p) + mul_mod(self.b, rhs.a, p)) % p;
        Self { a, b, ..self }
    }
}

impl Neg for Fp2 {
    type Output = Self;
    fn neg(self) -> Self {
        Self { a: (self.p - self.a) % self.p, b: (self.p - self.b) % self.p, ..self }
    }
}

impl Field for Fp2 {
    fn zero_like(&self) -> Self {
        Self { a: 0, b: 0, ..*self }
    }

    fn one_like(&self) -> Self {
        Self { a: 1, b: 0, ..*self }
    }

    fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let p = self.p;
        let norm = (mul_mod(self.a, self.a, p) + p - mul_mod(mul_mod(self.b, self.b, p), self.n, p)) % p;
        let ni = pow_mod(norm, p - 2, p);
        Some(Self { a: mul_mod(self.a, ni, p), b: mul_mod((p - self.b) % p, ni, p), ..*self })
    }

    fn from_rational_like(&self, q: &Rational) -> Self {
        let x = Fp::new(0, self.p).from_rational_like(q);
        Self { a: x.value(), b: 0, ..*self }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_inverse_and_squares() {
        let p = 7;
        for x in Fp::elements(p).skip(1) {
            assert!((x * x.inv().unwrap()).is_one());
        }
        let squares: Vec<u64> = Fp::elements(p)
            .skip(1)
            .filter(|x| x.is_square())
            .map(|x| x.value())
            .collect();
        assert_eq!(squares, vec![1, 2, 4]);
    }

    #[test]
    fn every_fp_element_is_a_square_in_fp2() {
        for p in [3, 5, 7, 11] {
            let table = Fp2::square_table(p);
            for x in Fp::elements(p) {
                assert!(table[Fp2::from_fp(x).index()]);
            }
            // exactly (p² + 1)/2 squares including 0
            assert_eq!(table.iter().filter(|b| **b).count() as u64, (p * p + 1) / 2);
        }
    }

    #[test]
    fn fp2_inverse() {
        for x in Fp2::elements(5).skip(1) {
            assert!((x * x.inv().unwrap()).is_one());
        }
    }
}
