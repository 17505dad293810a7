//! Dense univariate polynomials, low degree first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Field;

#[derive(Clone, PartialEq)]
pub struct UniPoly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> UniPoly<F> {
    /// Builds a polynomial from `c₀, c₁, …`, dropping trailing zeros.
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// `c·x^k`.
    pub fn monomial(c: F, k: usize) -> Self {
        let mut coeffs = vec![c.zero_like(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// `x − r`.
    pub fn linear_root(r: &F) -> Self {
        Self::new(vec![-r.clone(), r.one_like()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&F> {
        self.coeffs.last()
    }

    /// Coefficient of `x^i`, with `zero` standing in past the degree.
    pub fn coeff_or(&self, i: usize, zero: &F) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(|| zero.zero_like())
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn monic(&self) -> Self {
        match self.lead().and_then(|l| l.inv()) {
            Some(li) => self.scale(&li),
            None => self.clone(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.from_i64_like(i as i64) * c.clone())
                .collect(),
        )
    }

    /// Quotient and remainder; `None` when dividing by zero.
    pub fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let li = d.lead()?.inv()?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let zero = li.zero_like();
        let mut q = vec![zero; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].clone() * li.clone();
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] = r[k + j].clone() - c.clone() * dc.clone();
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Some((Self::new(q), Self::new(r)))
    }

    pub fn rem(&self, d: &Self) -> Option<Self> {
        self.div_rem(d).map(|(_, r)| r)
    }

    /// Exact quotient; `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d)?;
        r.is_zero().then_some(q)
    }

    /// Monic gcd together with Bézout cofactors: `g = s·a + t·b`.
    pub fn xgcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let Some(one) = a.lead().or(b.lead()).map(|c| c.one_like()) else {
            return (Self::zero(), Self::zero(), Self::zero());
        };
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::constant(one.clone()), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::constant(one));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lead().and_then(|l| l.inv()) {
            Some(li) => (r0.scale(&li), s0.scale(&li), t0.scale(&li)),
            None => (r0, s0, t0),
        }
    }

    pub fn gcd(a: &Self, b: &Self) -> Self {
        Self::xgcd(a, b).0
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Self::constant(c.clone());
        }
        acc
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> UniPoly<G> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = match self.lead() {
            Some(l) => Self::constant(l.one_like()),
            None => return Self::zero(),
        };
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl<F: Field> Add for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn add(self, rhs: Self) -> UniPoly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.clone() + b.clone(),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        UniPoly::new(out)
    }
}

impl<F: Field> Neg for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn neg(self) -> UniPoly<F> {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

impl<F: Field> Sub for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn sub(self, rhs: Self) -> UniPoly<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Mul for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn mul(self, rhs: Self) -> UniPoly<F> {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        UniPoly::new(out)
    }
}

impl<F: Field + fmt::Display> fmt::Display for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};
    use crate::Rational;

    fn p(c: &[i64]) -> UniPoly<Rational> {
        UniPoly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn division_identity() {
        let a = p(&[1, 8, 16, -2, -7, 4]);
        let b = p(&[3, 0, 2]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn xgcd_bezout() {
        let a = &p(&[-1, 1]) * &p(&[2, 0, 1]);
        let b = &p(&[-1, 1]) * &p(&[5, 3]);
        let (g, s, t) = UniPoly::xgcd(&a, &b);
        assert_eq!(g, p(&[-1, 1]));
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn compose_shift() {
        // (x + 1/2)² = x² + x + 1/4
        let sq = p(&[0, 0, 1]);
        let shifted = sq.compose(&UniPoly::new(vec![rat(1, 2), int(1)]));
        assert_eq!(shifted, UniPoly::new(vec![rat(1, 4), int(1), int(1)]));
    }

    #[test]
    fn derivative_and_eval() {
        let f = p(&[1, 8, 16, -2, -7, 4]);
        assert_eq!(f.derivative(), p(&[8, 32, -6, -28, 20]));
        assert_eq!(f.eval(&int(2)), int(81));
    }
}
