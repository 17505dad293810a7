//! Cantor arithmetic on the Jacobian of an odd-degree genus-2 curve
//! `y² = f(x)`, `deg f = 5`, in Mumford form.

use num_bigint::BigUint;

use crate::arith::rational::{factor, reduce_mod};
use crate::arith::{Fp, UniPoly};
use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::Rational;

/// The class of `D − deg(u)·∞` with `D` cut out by `u(x) = 0, y = v(x)`.
#[derive(Clone, PartialEq)]
pub struct MumfordDivisor<F> {
    pub u: UniPoly<F>,
    pub v: UniPoly<F>,
}

impl<F: Field> std::fmt::Debug for MumfordDivisor<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(u = {:?}, v = {:?})", self.u, self.v)
    }
}

impl<F: Field> MumfordDivisor<F> {
    pub fn is_identity(&self) -> bool {
        self.u.degree() == Some(0)
    }

    pub fn degree(&self) -> usize {
        self.u.degree().unwrap_or(0)
    }
}

impl MumfordDivisor<Rational> {
    /// Coefficientwise reduction; `None` when a denominator is divisible by `p`.
    pub fn reduce_mod(&self, p: u64) -> Option<MumfordDivisor<Fp>> {
        let red = |poly: &UniPoly<Rational>| -> Option<UniPoly<Fp>> {
            let cs: Option<Vec<Fp>> = poly
                .coeffs()
                .iter()
                .map(|c| reduce_mod(c, p).map(|v| Fp::new(v as i64, p)))
                .collect();
            Some(UniPoly::new(cs?))
        };
        Some(MumfordDivisor { u: red(&self.u)?, v: red(&self.v)? })
    }
}

/// `Pic⁰` of `y² = f(x)` with `deg f = 5` (leading coefficient arbitrary).
#[derive(Clone, PartialEq)]
pub struct Jacobian<F> {
    f: UniPoly<F>,
}

impl<F: Field> std::fmt::Debug for Jacobian<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Jac(y² = {:?})", self.f)
    }
}

impl<F: Field> Jacobian<F> {
    pub fn new(f: UniPoly<F>) -> Result<Self> {
        if f.degree() != Some(5) {
            return Err(Error::Domain("Cantor arithmetic needs a quintic model".into()));
        }
        Ok(Self { f })
    }

    pub fn f(&self) -> &UniPoly<F> {
        &self.f
    }

    fn one(&self) -> F {
        self.f.lead().expect("nonzero").one_like()
    }

    pub fn identity(&self) -> MumfordDivisor<F> {
        MumfordDivisor { u: UniPoly::constant(self.one()), v: UniPoly::zero() }
    }

    /// `[(x₀, y₀) − ∞]`, checked to lie on the curve.
    pub fn from_point(&self, x0: &F, y0: &F) -> Result<MumfordDivisor<F>> {
        if y0.square() != self.f.eval(x0) {
            return Err(Error::Domain(format!("({x0:?}, {y0:?}) is not on the curve")));
        }
        Ok(MumfordDivisor { u: UniPoly::linear_root(x0), v: UniPoly::constant(y0.clone()) })
    }

    /// `u` monic of degree ≤ 2, `deg v < deg u`, `u | v² − f`.
    pub fn is_valid(&self, d: &MumfordDivisor<F>) -> bool {
        let monic = d.u.lead().is_some_and(|l| l.is_one());
        let deg_ok = d.u.degree().is_some_and(|k| k <= 2)
            && (d.v.is_zero() || d.v.degree() < d.u.degree());
        let divides = (&(&d.v * &d.v) - &self.f).rem(&d.u).is_some_and(|r| r.is_zero());
        monic && deg_ok && divides
    }

    pub fn neg(&self, d: &MumfordDivisor<F>) -> MumfordDivisor<F> {
        MumfordDivisor { u: d.u.clone(), v: -&d.v }
    }

    /// Composition followed by reduction.
    pub fn add(&self, a: &MumfordDivisor<F>, b: &MumfordDivisor<F>) -> MumfordDivisor<F> {
        self.try_add(a, b).expect("exact arithmetic keeps every division exact")
    }

    /// [`Self::add`] for inexact scalars, where a division that should be
    /// exact can fail once precision runs out.
    pub fn try_add(&self, a: &MumfordDivisor<F>, b: &MumfordDivisor<F>) -> Result<MumfordDivisor<F>> {
        let lost = |what: &str| Error::InsufficientPrecision(format!("Cantor step: {what}"));
        let (d1, e1, e2) = UniPoly::xgcd(&a.u, &b.u);
        let (d, c1, c2) = UniPoly::xgcd(&d1, &(&a.v + &b.v));
        let s1 = &c1 * &e1;
        let s2 = &c1 * &e2;
        let s3 = c2;
        let u = (&a.u * &b.u).exact_div(&(&d * &d)).ok_or_else(|| lost("d² ∤ u₁u₂"))?;
        let num = &(&(&s1 * &a.u) * &b.v) + &(&(&s2 * &b.u) * &a.v);
        let num = &num + &(&s3 * &(&(&a.v * &b.v) + &self.f));
        let v = num.exact_div(&d).ok_or_else(|| lost("d ∤ numerator"))?;
        let v = v.rem(&u).ok_or_else(|| lost("u vanished"))?;
        self.reduce(u, v)
    }

    fn reduce(&self, mut u: UniPoly<F>, mut v: UniPoly<F>) -> Result<MumfordDivisor<F>> {
        let lost = |what: &str| Error::InsufficientPrecision(format!("Cantor reduction: {what}"));
        while u.degree().ok_or_else(|| lost("u vanished"))? > 2 {
            let u2 = (&self.f - &(&v * &v)).exact_div(&u).ok_or_else(|| lost("u ∤ f − v²"))?;
            u = u2.monic();
            v = (-&v).rem(&u).ok_or_else(|| lost("u vanished"))?;
        }
        let u = u.monic();
        let v = v.rem(&u).ok_or_else(|| lost("u vanished"))?;
        Ok(MumfordDivisor { u, v })
    }

    pub fn try_scalar_mul(&self, n: i64, d: &MumfordDivisor<F>) -> Result<MumfordDivisor<F>> {
        let mut base = if n < 0 { self.neg(d) } else { d.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = self.identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.try_add(&acc, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.try_add(&base, &base)?;
            }
        }
        Ok(acc)
    }

    pub fn double(&self, d: &MumfordDivisor<F>) -> MumfordDivisor<F> {
        self.add(d, d)
    }

    /// `n·D`; negative `n` multiplies `−D`.
    pub fn scalar_mul(&self, n: i64, d: &MumfordDivisor<F>) -> MumfordDivisor<F> {
        let mut base = if n < 0 { self.neg(d) } else { d.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = self.identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.double(&base);
            k >>= 1;
        }
        acc
    }
}

/// Least `m ≥ 1` with `m·D = 0`, given a multiple `n` of the order.
pub fn order_in_jfp<F: Field>(jac: &Jacobian<F>, d: &MumfordDivisor<F>, n: u64) -> Result<u64> {
    if !jac.scalar_mul(n as i64, d).is_identity() {
        return Err(Error::VerificationFailure(format!("{n}·D ≠ 0 for D = {d:?}")));
    }
    let mut m = n;
    for (q, _) in factor(&BigUint::from(n))? {
        let q: u64 = q.try_into().expect("factor of a u64");
        while m % q == 0 && jac.scalar_mul((m / q) as i64, d).is_identity() {
            m /= q;
        }
    }
    Ok(m)
}

/// Every element of `J(𝔽_p)` as a reduced Mumford pair.
pub fn enumerate_jacobian(jac: &Jacobian<Fp>) -> Vec<MumfordDivisor<Fp>> {
    let p = jac.f.lead().expect("nonzero").modulus();
    let el = |v: u64| Fp::new(v as i64, p);
    let mut out = vec![jac.identity()];
    for a in 0..p {
        let fa = jac.f.eval(&el(a));
        for b in 0..p {
            if el(b).square() == fa {
                out.push(MumfordDivisor { u: UniPoly::linear_root(&el(a)), v: UniPoly::constant(el(b)) });
            }
        }
    }
    for a0 in 0..p {
        for a1 in 0..p {
            let u = UniPoly::new(vec![el(a0), el(a1), el(1)]);
            let fr = jac.f.rem(&u).expect("monic");
            for b0 in 0..p {
                for b1 in 0..p {
                    let v = UniPoly::new(vec![el(b0), el(b1)]);
                    let r = (&v * &v).rem(&u).expect("monic");
                    if r == fr {
                        out.push(MumfordDivisor { u: u.clone(), v });
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::hyper::HyperCurve;
    use crate::QPoly;

    fn hq_jac() -> Jacobian<Rational> {
        Jacobian::new(HyperCurve::h_q().g().clone()).unwrap()
    }

    #[test]
    fn identity_and_inverse() {
        let j = hq_jac();
        let d = j.from_point(&int(0), &int(-1)).unwrap();
        assert_eq!(j.add(&d, &j.identity()), d);
        assert!(j.add(&d, &j.neg(&d)).is_identity());
    }

    #[test]
    fn doubling_matches_direct_reduction() {
        // 2[(0,−1) − ∞]: the tangent line y = −1 − 4x meets the curve in
        // (0,−1) twice, so the sum is cut out by u = x², v = −1 − 4x
        let j = hq_jac();
        let d = j.from_point(&int(0), &int(-1)).unwrap();
        let two_d = j.double(&d);
        assert_eq!(two_d.u, QPoly::new(vec![int(0), int(0), int(1)]));
        assert_eq!(two_d.v, QPoly::new(vec![int(-1), int(-4)]));
        assert!(j.is_valid(&two_d));
        // independent check: v² − f vanishes to order 2 at x = 0
        let r = &(&two_d.v * &two_d.v) - j.f();
        assert!(r.coeffs()[0] == int(0) && r.coeffs()[1] == int(0));
    }

    #[test]
    fn weierstrass_classes_have_order_two() {
        let j = hq_jac();
        let w = j.from_point(&int(-1), &int(0)).unwrap();
        assert!(j.double(&w).is_identity());
        let p = 7;
        let jp = Jacobian::new(HyperCurve::h_q().reduce_mod(p).unwrap()).unwrap();
        let wp = w.reduce_mod(p).unwrap();
        assert_eq!(order_in_jfp(&jp, &wp, 2).unwrap(), 2);
        assert_eq!(order_in_jfp(&jp, &jp.identity(), 1).unwrap(), 1);
    }
}
