//! Truncated power series: generic helpers over any [`Field`] and the
//! precision-tracked [`PadicSeries`].

use crate::arith::UniPoly;
use crate::error::{Error, Result};
use crate::scalar::Field;

use super::number::Padic;

/// Product truncated to `n` terms.
pub fn mul_trunc<F: Field>(a: &[F], b: &[F], n: usize) -> Vec<F> {
    let zero = a.first().or(b.first()).expect("nonempty series").zero_like();
    let mut out = vec![zero; n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

/// `1/a` to `n` terms; `a[0]` must be invertible.
pub fn inv_trunc<F: Field>(a: &[F], n: usize) -> Option<Vec<F>> {
    let c0 = a.first()?.inv()?;
    let mut out = vec![c0.clone()];
    for k in 1..n {
        let mut acc = c0.zero_like();
        for j in 1..=k.min(a.len() - 1) {
            acc = acc + a[j].clone() * out[k - j].clone();
        }
        out.push(-(acc * c0.clone()));
    }
    Some(out)
}

/// Square root of a series with constant term 1, normalized to constant 1.
pub fn sqrt_one_trunc<F: Field>(a: &[F], n: usize) -> Option<Vec<F>> {
    let first = a.first()?;
    if !first.is_one() {
        return None;
    }
    let half = first.from_i64_like(2).inv()?;
    let zero = first.zero_like();
    let mut s = vec![first.one_like()];
    for k in 1..n {
        let mut acc = a.get(k).cloned().unwrap_or_else(|| zero.clone());
        for i in 1..k {
            acc = acc - s[i].clone() * s[k - i].clone();
        }
        s.push(acc * half.clone());
    }
    Some(s)
}

/// `outer(inner(t))` to `n` terms; `inner` must have zero constant term.
pub fn compose_trunc<F: Field>(outer: &[F], inner: &[F], n: usize) -> Vec<F> {
    let zero = inner.first().expect("nonempty").zero_like();
    debug_assert!(inner[0].is_zero());
    let mut acc = vec![zero; n];
    for c in outer.iter().rev() {
        acc = mul_trunc(&acc, inner, n);
        acc[0] = acc[0].clone() + c.clone();
    }
    acc
}

/// Evaluates a polynomial at a truncated series.
pub fn poly_at_series<F: Field>(p: &UniPoly<F>, s: &[F], n: usize) -> Vec<F> {
    let zero = s.first().expect("nonempty").zero_like();
    let mut acc = vec![zero; n];
    for c in p.coeffs().iter().rev() {
        acc = mul_trunc(&acc, s, n);
        acc[0] = acc[0].clone() + c.clone();
    }
    acc
}

pub fn derivative<F: Field>(a: &[F]) -> Vec<F> {
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.from_i64_like(k as i64) * c.clone())
        .collect()
}

/// Lower bound on the coefficients a series omits beyond its truncation:
/// the coefficient of `t^k` (k ≥ len) has valuation at least
/// `coeff_val + slope·k`, minus `⌊log_p k⌋` once the series has been
/// integrated termwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Tail {
    pub coeff_val: i64,
    pub slope: i64,
    pub divided: bool,
}

fn floor_log(p: u64, n: u64) -> i64 {
    let mut k = 0;
    let mut x = n;
    while x >= p {
        x /= p;
        k += 1;
    }
    k
}

/// A truncated power series with p-adic coefficients and a tracked tail.
///
/// `tail == None` means the series is exact (a polynomial).
#[derive(Debug, Clone)]
pub struct PadicSeries {
    pub coeffs: Vec<Padic>,
    pub tail: Option<Tail>,
    p: u64,
}

impl PadicSeries {
    pub fn new(coeffs: Vec<Padic>, tail: Option<Tail>) -> Self {
        let p = coeffs.first().expect("nonempty series").prime();
        Self { coeffs, tail, p }
    }

    pub fn exact(coeffs: Vec<Padic>) -> Self {
        Self::new(coeffs, None)
    }

    /// Truncation of a series with p-integral coefficients.
    pub fn integral(coeffs: Vec<Padic>) -> Self {
        Self::new(coeffs, Some(Tail { coeff_val: 0, slope: 0, divided: false }))
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lower bound on the valuation of all omitted terms when evaluated at
    /// any `t` with `val(t) ≥ r`; `i64::MAX` for exact series.
    pub fn tail_valuation_at(&self, r: i64) -> i64 {
        let Some(tail) = self.tail else { return i64::MAX };
        let k = self.coeffs.len().max(1) as i64;
        let rate = tail.slope + r;
        let log = if tail.divided { floor_log(self.p, k as u64) } else { 0 };
        match rate {
            // k·rate − ⌊log_p k⌋ is nondecreasing in k once rate ≥ 1
            x if x >= 1 => tail.coeff_val + rate * k - log,
            0 if !tail.divided => tail.coeff_val,
            _ => i64::MIN,
        }
    }

    /// The omitted-term bound for `val(t) ≥ 1`.
    pub fn tail_valuation(&self) -> i64 {
        self.tail_valuation_at(1)
    }

    /// Termwise antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        let first = &self.coeffs[0];
        let mut out = vec![first.zero_like()];
        for (k, c) in self.coeffs.iter().enumerate() {
            let k1 = first.from_i64_like(k as i64 + 1);
            out.push(c.checked_div(&k1).expect("k + 1 is nonzero"));
        }
        let tail = self.tail.map(|t| Tail { divided: true, ..t });
        Self { coeffs: out, tail, p: self.p }
    }

    /// `s(p·t)`: moves the residue disk `val(t) ≥ 1` onto the unit disk.
    pub fn rescale_by_p(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len());
        let mut pk = self.coeffs[0].one_like();
        let pp = Padic::p_power(self.p, 1, self.coeffs[0].cap());
        for c in &self.coeffs {
            out.push(c.clone() * pk.clone());
            pk = pk * pp.clone();
        }
        let tail = self.tail.map(|t| Tail { slope: t.slope + 1, ..t });
        Self { coeffs: out, tail, p: self.p }
    }

    pub fn scale(&self, c: &Padic) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
            tail: self.tail.map(|t| Tail {
                coeff_val: t.coeff_val + c.valuation_lower_bound(),
                ..t
            }),
            p: self.p,
        }
    }

    /// Coefficientwise sum; the tail bound is the weaker of the two.
    pub fn add(&self, other: &Self) -> Self {
        let n = self.len().min(other.len());
        let coeffs = (0..n)
            .map(|i| self.coeffs[i].clone() + other.coeffs[i].clone())
            .collect();
        let tail = match (self.tail, other.tail) {
            (None, None) if self.len() == other.len() => None,
            (a, b) => {
                let a = a.unwrap_or(Tail { coeff_val: i64::MAX / 4, slope: 1, divided: false });
                let b = b.unwrap_or(Tail { coeff_val: i64::MAX / 4, slope: 1, divided: false });
                Some(Tail {
                    coeff_val: a.coeff_val.min(b.coeff_val),
                    slope: a.slope.min(b.slope),
                    divided: a.divided || b.divided,
                })
            }
        };
        Self { coeffs, tail, p: self.p }
    }

    /// Evaluation at `t` with `val(t) ≥ 1`, correct to the returned precision.
    pub fn evaluate(&self, t: &Padic) -> Result<Padic> {
        let v = t.valuation_lower_bound();
        if v < 1 {
            return Err(Error::DiskViolation(format!("val(t) = {v} < 1")));
        }
        let mut acc = self.coeffs[0].zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc * t.clone() + c.clone();
        }
        Ok(acc.truncate_abs(self.tail_valuation_at(v)))
    }

    /// Largest index attaining the minimal coefficient valuation: an upper
    /// bound on the zeros in the closed unit disk.
    pub fn strassmann_bound(&self) -> Result<usize> {
        self.strassmann_from(0)
    }

    /// Strassmann bound ignoring indices below `start`; with `start = 1` it
    /// bounds the zeros of `s + C` for every constant `C`.
    pub fn strassmann_from(&self, start: usize) -> Result<usize> {
        let exact_min = self
            .coeffs
            .iter()
            .skip(start)
            .filter_map(|c| c.valuation())
            .min()
            .ok_or_else(|| Error::InsufficientPrecision("no coefficient known to be nonzero".into()))?;
        let mut last = start;
        for (k, c) in self.coeffs.iter().enumerate().skip(start) {
            let lb = c.valuation_lower_bound();
            if lb < exact_min {
                return Err(Error::InsufficientPrecision(format!(
                    "coefficient {k} known only modulo p^{lb}, below the minimum {exact_min}"
                )));
            }
            if lb == exact_min {
                last = k;
            }
        }
        let tail = self.tail_valuation_at(0);
        if tail <= exact_min {
            return Err(Error::InsufficientPrecision(format!(
                "tail bound {tail} does not exceed the minimum {exact_min}"
            )));
        }
        Ok(last)
    }

    /// `Σᵢ s(tᵢ)` over the roots of a monic `u` of degree ≤ 2, computed from
    /// power sums so the roots never leave ℚ_p.
    pub fn evaluate_symmetric(&self, u: &UniPoly<Padic>) -> Result<Padic> {
        let first = &self.coeffs[0];
        let (e1, e2, deg) = match u.degree() {
            None => return Err(Error::Domain("symmetric evaluation over the zero polynomial".into())),
            Some(0) => return Ok(first.zero_like()),
            Some(1) => (-u.coeffs()[0].clone(), first.zero_like(), 1),
            Some(2) => {
                let lead = &u.coeffs()[2];
                if !lead.is_one() {
                    return Err(Error::Domain("symmetric evaluation needs a monic polynomial".into()));
                }
                (-u.coeffs()[1].clone(), u.coeffs()[0].clone(), 2)
            }
            Some(d) => return Err(Error::Domain(format!("degree {d} > 2"))),
        };
        let (v1, v2) = (e1.valuation_lower_bound(), e2.valuation_lower_bound());
        if v1 < 1 || (deg == 2 && v2 < 2) {
            return Err(Error::DiskViolation(format!(
                "roots of {u:?} are not all of valuation ≥ 1"
            )));
        }
        // Newton: p_k = e1·p_{k−1} − e2·p_{k−2}
        let mut prev2 = first.from_i64_like(deg);
        let mut prev1 = e1.clone();
        let mut acc = self.coeffs[0].clone() * prev2.clone();
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            let pk = if k == 1 {
                e1.clone()
            } else {
                let next = e1.clone() * prev1.clone() - e2.clone() * prev2.clone();
                prev2 = prev1;
                prev1 = next.clone();
                next
            };
            if k == 1 {
                // prev1 already holds p_1
            }
            acc = acc + c.clone() * pk;
        }
        let tail_root_val = if deg == 1 { v1 } else { v1.min(v2 / 2) };
        Ok(acc.truncate_abs(self.tail_valuation_at(tail_root_val.max(1))))
    }

    /// `F(t₁) − F(t₂)` from `d = t₁ − t₂`, `e₁ = t₁ + t₂` and `e₂ = t₁t₂`,
    /// as `d·Σ cₖ hₖ₋₁(t₁, t₂)` with `hₖ` the complete symmetric sums.
    pub fn evaluate_difference(&self, d: &Padic, e1: &Padic, e2: &Padic) -> Result<Padic> {
        let (v1, v2) = (e1.valuation_lower_bound(), e2.valuation_lower_bound());
        if v1 < 1 || v2 < 2 || d.valuation_lower_bound() < 1 {
            return Err(Error::DiskViolation("difference of points outside the disk".into()));
        }
        let first = &self.coeffs[0];
        let (mut prev2, mut prev1) = (first.zero_like(), first.one_like());
        let mut acc = first.zero_like();
        for c in self.coeffs.iter().skip(1) {
            acc = acc + c.clone() * prev1.clone();
            let next = e1.clone() * prev1.clone() - e2.clone() * prev2;
            prev2 = prev1;
            prev1 = next;
        }
        let r = v1.min(v2 / 2);
        Ok((d.clone() * acc).truncate_abs(self.tail_valuation_at(r)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};
    use crate::Rational;

    const P: u64 = 7;

    fn pz(n: i64) -> Padic {
        Padic::from_i64(n, P, 20)
    }

    fn pq(n: i64, d: i64) -> Padic {
        Padic::from_rational(&rat(n, d), P, 20)
    }

    #[test]
    fn generic_helpers_over_rationals() {
        // 1/(1 − t) = Σ t^k
        let inv = inv_trunc(&[int(1), int(-1)], 6).unwrap();
        assert!(inv.iter().all(|c| *c == int(1)));
        // √(1 + 4t) squared back
        let s = sqrt_one_trunc(&[int(1), int(4)], 8).unwrap();
        let sq = mul_trunc(&s, &s, 8);
        assert_eq!(sq[0], int(1));
        assert_eq!(sq[1], int(4));
        assert!(sq[2..].iter().all(|c| *c == Rational::from_integer(0.into())));
        // (t + t²) ∘ (2t) = 2t + 4t²
        let c = compose_trunc(&[int(0), int(1), int(1)], &[int(0), int(2)], 4);
        assert_eq!(c, vec![int(0), int(2), int(4), int(0)]);
    }

    #[test]
    fn antiderivative_examples() {
        let s = PadicSeries::exact(vec![pz(0), pz(1)]);
        let a = s.antiderivative();
        assert!(a.coeffs[2].agrees_with(&pq(1, 2)));
        assert!(a.coeffs[0].is_zero() && a.coeffs[1].is_zero());

        let geom = PadicSeries::exact(vec![pz(1); 10]);
        let a = geom.antiderivative();
        for k in 0..10 {
            assert!(a.coeffs[k + 1].agrees_with(&pq(1, k as i64 + 1)));
        }
        // the t^(p−1) coefficient is divided by p: one digit lost
        assert_eq!(a.coeffs[P as usize].valuation(), Some(-1));
        assert_eq!(a.coeffs[P as usize].rel_precision(), geom.coeffs[P as usize - 1].rel_precision());
        assert_eq!(
            a.coeffs[P as usize].abs_precision(),
            geom.coeffs[P as usize - 1].abs_precision() - 1
        );
    }

    #[test]
    fn strassmann_examples() {
        let p = P as i64;
        assert_eq!(PadicSeries::exact(vec![pz(p), pz(0), pz(1)]).strassmann_bound(), Ok(2));
        assert_eq!(PadicSeries::exact(vec![pz(0), pz(1)]).strassmann_bound(), Ok(1));
        assert_eq!(PadicSeries::exact(vec![pz(1), pz(p)]).strassmann_bound(), Ok(0));
        // a truncated integral series evaluated on the unit disk is not certified
        assert!(PadicSeries::integral(vec![pz(p), pz(1)]).strassmann_bound().is_err());
    }

    #[test]
    fn symmetric_examples() {
        let p = P as i64;
        let c = pz(p * p * 3);
        let u = UniPoly::new(vec![-c.clone(), pz(0), pz(1)]);
        let t = PadicSeries::exact(vec![pz(0), pz(1)]);
        assert!(t.evaluate_symmetric(&u).unwrap().is_zero());
        let t2 = PadicSeries::exact(vec![pz(0), pz(0), pz(1)]);
        assert!(t2.evaluate_symmetric(&u).unwrap().agrees_with(&(pz(2) * c)));

        // split u = (t − a)(t − b)
        let (a, b) = (pz(p), pz(-2 * p * p));
        let u = UniPoly::new(vec![a.clone() * b.clone(), -(a.clone() + b.clone()), pz(1)]);
        let s = PadicSeries::exact((1..12).map(|k| pq(k, 3)).collect());
        let direct = s.evaluate(&a).unwrap() + s.evaluate(&b).unwrap();
        assert!(s.evaluate_symmetric(&u).unwrap().agrees_with(&direct));

        let bad = UniPoly::new(vec![pz(1), pz(0), pz(1)]);
        assert!(matches!(s.evaluate_symmetric(&bad), Err(Error::DiskViolation(_))));
    }
}
