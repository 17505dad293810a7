//! Rational roots and low-degree factorization over ℚ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::UniPoly;
use super::rational::{int, is_square};
use crate::error::{Error, Result};
use crate::Rational;

type QPoly = UniPoly<Rational>;

/// Integer polynomial proportional to `p`, with content removed.
pub fn clear_denominators(p: &QPoly) -> Vec<BigInt> {
    let l = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

fn sturm_sequence(p: &QPoly) -> Vec<QPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].rem(&seq[n - 1]).expect("nonzero");
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    seq
}

/// Sign of `Σ cᵢ aⁱ b^{n−i}`, i.e. of `p(a/b)` for `b > 0`.
fn sign_at(ints: &[BigInt], x: &Rational) -> i8 {
    let (a, b) = (x.numer(), x.denom());
    let mut acc = ints.last().cloned().unwrap_or_default();
    let mut bpow = BigInt::one();
    for c in ints.iter().rev().skip(1) {
        bpow *= b;
        acc = acc * a + c * &bpow;
    }
    match acc.sign() {
        num_bigint::Sign::Plus => 1,
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
    }
}

fn sign_changes(seq: &[Vec<BigInt>], x: &Rational) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in seq {
        let sg = sign_at(s, x);
        if sg == 0 {
            continue;
        }
        if last != 0 && sg != last {
            count += 1;
        }
        last = sg;
    }
    count
}

/// The rational of least denominator in `[lo, hi]`.
fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    let next = &fl + int(1);
    if &next <= hi {
        return next;
    }
    let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

/// The distinct rational roots of `p`, ascending.
///
/// Real roots of the squarefree part are isolated with a Sturm sequence and
/// refined by bisection to intervals narrower than `1/c_n²`. Two fractions
/// with denominators dividing `c_n` are at least that far apart, so the only
/// candidate in each interval is its simplest fraction, which is checked
/// exactly.
pub fn rational_roots(p: &QPoly) -> Result<Vec<Rational>> {
    if p.is_zero() {
        return Err(Error::Domain("rational roots of the zero polynomial".into()));
    }
    let mut roots = Vec::new();
    let shift = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    if shift > 0 {
        roots.push(Rational::zero());
    }
    let q = QPoly::new(p.coeffs()[shift..].to_vec());
    if q.degree() == Some(0) {
        return Ok(roots);
    }
    let cn = clear_denominators(&q).last().expect("nonconstant").abs();

    let sf = q
        .exact_div(&QPoly::gcd(&q, &q.derivative()))
        .expect("gcd divides");
    let seq: Vec<Vec<BigInt>> = sturm_sequence(&sf).iter().map(clear_denominators).collect();
    let sf_ints = &seq[0];
    let lead = q.lead().expect("nonzero");
    let bound = q
        .coeffs()
        .iter()
        .map(|c| (c / lead).abs())
        .fold(Rational::zero(), |a, b| if b > a { b } else { a })
        .ceil()
        + int(1);
    let width = Rational::new(BigInt::one(), &cn * &cn);

    let check = |r: Rational, roots: &mut Vec<Rational>| {
        if q.eval(&r).is_zero() && !roots.contains(&r) {
            roots.push(r);
        }
    };
    // each interval (lo, hi] holds exactly one root of sf
    let mut stack = vec![(-bound.clone(), bound)];
    let mut isolated = Vec::new();
    while let Some((lo, hi)) = stack.pop() {
        let count = sign_changes(&seq, &lo).saturating_sub(sign_changes(&seq, &hi));
        match count {
            0 => {}
            1 => isolated.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / int(2);
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    for (mut lo, mut hi) in isolated {
        let s_hi = sign_at(sf_ints, &hi);
        if s_hi == 0 {
            check(hi, &mut roots);
            continue;
        }
        let mut exact = None;
        while &hi - &lo >= width {
            let mid = (&lo + &hi) / int(2);
            match sign_at(sf_ints, &mid) {
                0 => {
                    exact = Some(mid);
                    break;
                }
                s if s == s_hi => hi = mid,
                _ => lo = mid,
            }
        }
        check(exact.unwrap_or_else(|| simplest_between(&lo, &hi)), &mut roots);
    }
    roots.sort();
    Ok(roots)
}

/// Factorization of a degree ≤ 4 polynomial over ℚ into its rational roots
/// and the monic irreducible factors of higher degree.
#[derive(Debug, Clone, PartialEq)]
pub struct LowDegreeFactors {
    pub roots: Vec<Rational>,
    pub quadratics: Vec<QPoly>,
    /// Irreducible cubic or quartic remainder, if any.
    pub rest: Option<QPoly>,
}

pub fn factor_low_degree(p: &QPoly) -> Result<LowDegreeFactors> {
    match p.degree() {
        None => return Err(Error::Domain("factoring the zero polynomial".into())),
        Some(d) if d > 4 => {
            return Err(Error::Domain(format!("degree {d} exceeds the quartic factorizer")))
        }
        _ => {}
    }
    let roots = rational_roots(p)?;
    let mut rest = p.monic();
    for r in &roots {
        while let Some(q) = rest.exact_div(&QPoly::linear_root(r)) {
            rest = q;
        }
    }
    let mut out = LowDegreeFactors { roots, quadratics: Vec::new(), rest: None };
    match rest.degree() {
        Some(2) => out.quadratics.push(rest),
        Some(4) => match split_quartic(&rest) {
            Some((a, b)) => {
                out.quadratics.push(a);
                out.quadratics.push(b);
            }
            None => out.rest = Some(rest),
        },
        Some(3) => out.rest = Some(rest),
        _ => {}
    }
    Ok(out)
}

/// Splits a monic quartic without rational roots into two quadratics over ℚ
/// through its resolvent cubic.
fn split_quartic(q: &QPoly) -> Option<(QPoly, QPoly)> {
    let c = |i: usize| q.coeff_or(i, &Rational::zero());
    let a = c(3);
    let shift = -(&a / int(4));
    // depressed: y⁴ + P y² + Q y + R with x = y + shift
    let dep = q.compose(&QPoly::new(vec![shift.clone(), int(1)]));
    let pc = dep.coeff_or(2, &Rational::zero());
    let qc = dep.coeff_or(1, &Rational::zero());
    let rc = dep.coeff_or(0, &Rational::zero());
    let two = int(2);

    let mut candidates: Vec<(QPoly, QPoly)> = Vec::new();
    let resolvent = QPoly::new(vec![
        -(&qc * &qc),
        &pc * &pc - int(4) * &rc,
        int(2) * &pc,
        int(1),
    ]);
    for z in rational_roots(&resolvent).ok()? {
        if z.is_zero() {
            continue;
        }
        let Some(alpha) = is_square(&z) else { continue };
        let sum = &pc + &z;
        let diff = &qc / &alpha;
        let beta = (&sum - &diff) / &two;
        let gamma = (&sum + &diff) / &two;
        candidates.push((
            QPoly::new(vec![beta, alpha.clone(), int(1)]),
            QPoly::new(vec![gamma, -alpha, int(1)]),
        ));
    }
    if qc.is_zero() {
        if let Some(s) = is_square(&(&pc * &pc - int(4) * &rc)) {
            let beta = (&pc - &s) / &two;
            let gamma = (&pc + &s) / &two;
            candidates.push((QPoly::new(vec![beta, int(0), int(1)]), QPoly::new(vec![gamma, int(0), int(1)])));
        }
    }
    let back = QPoly::new(vec![-shift, int(1)]);
    for (f, g) in candidates {
        if &f * &g == dep {
            return Some((f.compose(&back), g.compose(&back)));
        }
    }
    None
}

/// Discriminant `b² − 4ac` of a quadratic.
pub fn quadratic_discriminant(q: &QPoly) -> Rational {
    let c = |i: usize| q.coeff_or(i, &Rational::zero());
    c(1) * c(1) - int(4) * c(2) * c(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{divisors, rat};

    fn qp(c: Vec<Rational>) -> QPoly {
        QPoly::new(c)
    }

    /// Every `±a/b` with `a | c₀`, `b | c_n`, checked by direct evaluation.
    fn brute_force_roots(p: &QPoly) -> Vec<Rational> {
        let shift = p.coeffs().iter().take_while(|c| c.is_zero()).count();
        let q = QPoly::new(p.coeffs()[shift..].to_vec());
        let ints = clear_denominators(&q);
        let mut out = Vec::new();
        if shift > 0 {
            out.push(Rational::zero());
        }
        if q.degree() == Some(0) {
            return out;
        }
        let num = divisors(&ints[0].abs().to_biguint().unwrap()).unwrap();
        let den = divisors(&ints.last().unwrap().abs().to_biguint().unwrap()).unwrap();
        for a in &num {
            for b in &den {
                for s in [1i64, -1] {
                    let r = Rational::new(BigInt::from(a.clone()) * s, BigInt::from(b.clone()));
                    if q.eval(&r).is_zero() && !out.contains(&r) {
                        out.push(r);
                    }
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn simple_examples() {
        let p = qp(vec![int(-1), int(0), int(1)]);
        assert_eq!(rational_roots(&p).unwrap(), vec![int(-1), int(1)]);

        let psi = qp(vec![rat(-64, 25), int(0), rat(48, 5), rat(-52, 5), int(3)]);
        assert!(rational_roots(&psi).unwrap().is_empty());
        assert!(brute_force_roots(&psi).is_empty());

        let cubic = &(&QPoly::linear_root(&int(0)) * &QPoly::linear_root(&int(1)))
            * &QPoly::linear_root(&rat(8, 5));
        assert_eq!(rational_roots(&cubic).unwrap(), vec![int(0), int(1), rat(8, 5)]);
        assert!(rational_roots(&QPoly::zero()).is_err());
    }

    #[test]
    fn repeated_and_close_roots() {
        let p = &(&QPoly::linear_root(&rat(1, 3)) * &QPoly::linear_root(&rat(1, 3)))
            * &(&QPoly::linear_root(&rat(2, 7)) * &QPoly::linear_root(&rat(-5, 2)));
        assert_eq!(rational_roots(&p).unwrap(), brute_force_roots(&p));
        assert_eq!(rational_roots(&p).unwrap().len(), 3);
    }

    #[test]
    fn quartic_splits_into_quadratics() {
        // (x² + 1)(x² − 2x − 5)
        let a = qp(vec![int(1), int(0), int(1)]);
        let b = qp(vec![int(-5), int(-2), int(1)]);
        let f = factor_low_degree(&(&a * &b)).unwrap();
        assert!(f.roots.is_empty());
        assert_eq!(f.quadratics.len(), 2);
        assert!(f.quadratics.contains(&a) && f.quadratics.contains(&b));

        // x⁴ + 1 is irreducible over ℚ
        let f = factor_low_degree(&qp(vec![int(1), int(0), int(0), int(0), int(1)])).unwrap();
        assert!(f.quadratics.is_empty());
        assert!(f.rest.is_some());
    }

    #[test]
    fn biquadratic_split() {
        // (x² − 2)(x² − 3)
        let f = factor_low_degree(&qp(vec![int(6), int(0), int(-5), int(0), int(1)])).unwrap();
        assert_eq!(f.quadratics.len(), 2);
    }
}
