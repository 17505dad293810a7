use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::Rational;

/// `y² = x³ + a₂x² + a₄x + a₆` over a field `F`.
#[derive(Clone, PartialEq)]
pub struct EllipticCurve<F> {
    a2: F,
    a4: F,
    a6: F,
    disc: F,
}

#[derive(Clone, PartialEq)]
pub enum EllipticPoint<F> {
    Infinity,
    Affine { x: F, y: F },
}

impl<F: Field> EllipticCurve<F> {
    pub fn new(a2: F, a4: F, a6: F) -> Result<Self> {
        let disc = discriminant(&a2, &a4, &a6);
        if disc.is_zero() {
            return Err(Error::Domain("singular Weierstrass equation".into()));
        }
        Ok(Self { a2, a4, a6, disc })
    }

    pub fn a2(&self) -> &F {
        &self.a2
    }

    pub fn a4(&self) -> &F {
        &self.a4
    }

    pub fn a6(&self) -> &F {
        &self.a6
    }

    pub fn discriminant(&self) -> &F {
        &self.disc
    }

    /// `x³ + a₂x² + a₄x + a₆`.
    pub fn rhs(&self, x: &F) -> F {
        ((x.clone() + self.a2.clone()) * x.clone() + self.a4.clone()) * x.clone() + self.a6.clone()
    }

    pub fn contains(&self, p: &EllipticPoint<F>) -> bool {
        match p {
            EllipticPoint::Infinity => true,
            EllipticPoint::Affine { x, y } => y.square() == self.rhs(x),
        }
    }

    /// The affine point `(x, y)`, checked to lie on the curve.
    pub fn point(&self, x: F, y: F) -> Result<EllipticPoint<F>> {
        let p = EllipticPoint::Affine { x, y };
        if !self.contains(&p) {
            return Err(Error::Domain(format!("{p:?} is not on the curve")));
        }
        Ok(p)
    }

    pub fn neg(&self, p: &EllipticPoint<F>) -> EllipticPoint<F> {
        match p {
            EllipticPoint::Infinity => EllipticPoint::Infinity,
            EllipticPoint::Affine { x, y } => EllipticPoint::Affine { x: x.clone(), y: -y.clone() },
        }
    }

    /// Chord and tangent addition.
    pub fn add(&self, p: &EllipticPoint<F>, q: &EllipticPoint<F>) -> EllipticPoint<F> {
        let (x1, y1, x2, y2) = match (p, q) {
            (EllipticPoint::Infinity, _) => return q.clone(),
            (_, EllipticPoint::Infinity) => return p.clone(),
            (EllipticPoint::Affine { x: x1, y: y1 }, EllipticPoint::Affine { x: x2, y: y2 }) => {
                (x1, y1, x2, y2)
            }
        };
        let lambda = if x1 == x2 {
            if (y1.clone() + y2.clone()).is_zero() {
                return EllipticPoint::Infinity;
            }
            let three = x1.from_i64_like(3);
            let two = x1.from_i64_like(2);
            let num = three * x1.square() + two.clone() * self.a2.clone() * x1.clone() + self.a4.clone();
            num.checked_div(&(two * y1.clone())).expect("y ≠ 0")
        } else {
            (y2.clone() - y1.clone())
                .checked_div(&(x2.clone() - x1.clone()))
                .expect("x₁ ≠ x₂")
        };
        let x3 = lambda.square() - self.a2.clone() - x1.clone() - x2.clone();
        let y3 = lambda * (x1.clone() - x3.clone()) - y1.clone();
        EllipticPoint::Affine { x: x3, y: y3 }
    }

    /// Like [`add`](Self::add) but refuses points off this curve.
    pub fn checked_add(&self, p: &EllipticPoint<F>, q: &EllipticPoint<F>) -> Result<EllipticPoint<F>> {
        if !self.contains(p) || !self.contains(q) {
            return Err(Error::Domain("adding points that are not on this curve".into()));
        }
        Ok(self.add(p, q))
    }

    pub fn double(&self, p: &EllipticPoint<F>) -> EllipticPoint<F> {
        self.add(p, p)
    }

    /// `n·P` by double-and-add; negative `n` multiplies `−P`.
    pub fn scalar_mul(&self, n: i64, p: &EllipticPoint<F>) -> EllipticPoint<F> {
        let base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = EllipticPoint::Infinity;
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &b);
            }
            b = self.double(&b);
            k >>= 1;
        }
        acc
    }

    /// Least `n ≤ bound` with `n·P = ∞`.
    pub fn order_up_to(&self, p: &EllipticPoint<F>, bound: u32) -> Option<u32> {
        let mut acc = p.clone();
        for n in 1..=bound {
            if acc.is_infinity() {
                return Some(n);
            }
            acc = self.add(&acc, p);
        }
        None
    }

    /// The same equation read in another field.
    pub fn base_change<G: Field>(&self, f: impl Fn(&F) -> G) -> EllipticCurve<G> {
        EllipticCurve { a2: f(&self.a2), a4: f(&self.a4), a6: f(&self.a6), disc: f(&self.disc) }
    }
}

fn discriminant<F: Field>(a2: &F, a4: &F, a6: &F) -> F {
    let c = |n: i64| a2.from_i64_like(n);
    let b2 = c(4) * a2.clone();
    let b4 = c(2) * a4.clone();
    let b6 = c(4) * a6.clone();
    let b8 = c(4) * a2.clone() * a6.clone() - a4.square();
    -(b2.square() * b8) - c(8) * b4.pow_u64(3) - c(27) * b6.square() + c(9) * b2 * b4 * b6
}

impl EllipticCurve<Rational> {
    /// `E_L : y² = x(x − 1)(x − L)`.
    pub fn nice(l: &Rational) -> Result<Self> {
        let one = Rational::from_integer(1.into());
        Self::new(-(&one + l), l.clone(), Rational::from_integer(0.into()))
    }
}

impl<F> EllipticPoint<F> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, EllipticPoint::Infinity)
    }

    pub fn x(&self) -> Option<&F> {
        match self {
            EllipticPoint::Infinity => None,
            EllipticPoint::Affine { x, .. } => Some(x),
        }
    }

    pub fn y(&self) -> Option<&F> {
        match self {
            EllipticPoint::Infinity => None,
            EllipticPoint::Affine { y, .. } => Some(y),
        }
    }

    pub fn map<G>(&self, f: impl Fn(&F) -> G) -> EllipticPoint<G> {
        match self {
            EllipticPoint::Infinity => EllipticPoint::Infinity,
            EllipticPoint::Affine { x, y } => EllipticPoint::Affine { x: f(x), y: f(y) },
        }
    }
}

impl<F: fmt::Debug> fmt::Debug for EllipticPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EllipticPoint::Infinity => write!(f, "∞"),
            EllipticPoint::Affine { x, y } => write!(f, "({x:?}, {y:?})"),
        }
    }
}

impl<F: fmt::Debug> fmt::Debug for EllipticCurve<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y² = x³ + ({:?})x² + ({:?})x + ({:?})", self.a2, self.a4, self.a6)
    }
}
