use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// `n/d` as a reduced rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"a"`, `"-a/b"` style rationals.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Domain(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Canonical `"a/b"` text form (integers keep the `/1`).
pub fn rational_to_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// The nonnegative rational square root of `q`, if `q` is a square in ℚ.
pub fn is_square(q: &Rational) -> Option<Rational> {
    let n = exact_sqrt(q.numer())?;
    let d = exact_sqrt(q.denom())?;
    Some(Rational::new(n, d))
}

/// `max(|numerator|, denominator)`; the height of `0/1` is 1.
pub fn height(q: &Rational) -> BigInt {
    let n = q.numer().abs();
    if n > *q.denom() {
        n
    } else {
        q.denom().clone()
    }
}

/// The squarefree integer `d` with `q = d·s²` for some rational `s`.
pub fn squarefree_part(q: &Rational) -> Result<BigInt> {
    if q.is_zero() {
        return Err(Error::Domain("squarefree part of zero".into()));
    }
    // q = (n·d) / d², so the class of q equals the class of n·d.
    let prod = (q.numer() * q.denom()).abs().to_biguint().expect("nonnegative");
    let mut out = BigInt::one();
    for (prime, e) in factor(&prod)? {
        if e % 2 == 1 {
            out *= BigInt::from(prime);
        }
    }
    if q.is_negative() {
        out = -out;
    }
    Ok(out)
}

/// True when `n` has no square factor other than 1.
pub fn is_squarefree(n: &BigInt) -> Result<bool> {
    if n.is_zero() {
        return Ok(false);
    }
    let m = n.abs().to_biguint().expect("nonnegative");
    Ok(factor(&m)?.iter().all(|(_, e)| *e == 1))
}

const TRIAL_LIMIT: u64 = 1 << 12;
const MAX_FACTOR_BITS: u64 = 128;

/// Prime factorization by trial division followed by Pollard–Brent rho.
///
/// Sized for inputs up to 128 bits once small factors are removed.
pub fn factor(n: &BigUint) -> Result<Vec<(BigUint, u32)>> {
    let mut n = n.clone();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    if n.is_zero() {
        return Err(Error::Domain("factor of zero".into()));
    }
    let mut p = 2u64;
    while p < TRIAL_LIMIT {
        let bp = BigUint::from(p);
        if &bp * &bp > n {
            break;
        }
        let mut e = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > BigUint::one() {
        if n.bits() > MAX_FACTOR_BITS {
            return Err(Error::FactorizationTooLarge(n.to_string()));
        }
        let mut stack = vec![n];
        let mut big: Vec<BigUint> = Vec::new();
        while let Some(m) = stack.pop() {
            if m.is_one() {
                continue;
            }
            if is_probable_prime(&m) {
                big.push(m);
                continue;
            }
            let f = pollard_brent(&m);
            stack.push(&m / &f);
            stack.push(f);
        }
        big.sort();
        for q in big {
            match out.last_mut() {
                Some((last, e)) if *last == q => *e += 1,
                _ => out.push((q, 1)),
            }
        }
    }
    out.sort();
    Ok(out)
}

fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for small in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let s = BigUint::from(small);
        if *n == s {
            return true;
        }
        if (n % &s).is_zero() {
            return false;
        }
    }
    let n1 = n - 1u32;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    // deterministic for n < 3.3·10^24; probabilistic beyond, with negligible error
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        if BigUint::from(a) >= *n {
            continue;
        }
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigUint) -> BigUint {
    if n.is_even() {
        return BigUint::from(2u32);
    }
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r = 1u64;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..r.min(128).min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += 128;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if g != *n {
            return g;
        }
        c += 1u32;
    }
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: &BigUint) -> Result<Vec<BigUint>> {
    let mut divs = vec![BigUint::one()];
    for (p, e) in factor(n)? {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = d.clone();
            for _ in 0..=e {
                next.push(pk.clone());
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    Ok(divs)
}

/// `v_p(q)`, or `None` for zero.
pub fn valuation(q: &Rational, p: u64) -> Option<i64> {
    if q.is_zero() {
        return None;
    }
    let bp = BigInt::from(p);
    let count = |n: &BigInt| {
        let mut n = n.clone();
        let mut v = 0i64;
        while (&n % &bp).is_zero() {
            n /= &bp;
            v += 1;
        }
        v
    };
    Some(count(q.numer()) - count(q.denom()))
}

/// `q mod p` for a rational with denominator prime to `p`.
pub fn reduce_mod(q: &Rational, p: u64) -> Option<u64> {
    let bp = BigInt::from(p);
    let den = q.denom().mod_floor(&bp).to_u64()?;
    if den == 0 {
        return None;
    }
    let num = q.numer().mod_floor(&bp).to_u64()?;
    let inv = BigInt::from(den).modpow(&BigInt::from(p - 2), &bp).to_u64()?;
    Some(((num as u128 * inv as u128) % p as u128) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes_are_prime() {
        for q in [41u32, 43, 47, 53, 4099] {
            assert!(is_probable_prime(&BigUint::from(q)), "{q}");
        }
        assert_eq!(factor(&BigUint::from(41u32 * 41)).unwrap(), vec![(BigUint::from(41u32), 2)]);
    }

    #[test]
    fn square_roots() {
        assert_eq!(is_square(&rat(49, 25)), Some(rat(7, 5)));
        assert_eq!(is_square(&int(0)), Some(int(0)));
        assert_eq!(is_square(&rat(24, 25)), None);
        assert_eq!(is_square(&rat(-4, 9)), None);
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_part(&rat(-3, 5)).unwrap(), BigInt::from(-15));
        assert_eq!(squarefree_part(&int(4)).unwrap(), BigInt::from(1));
        assert_eq!(squarefree_part(&int(18)).unwrap(), BigInt::from(2));
        assert!(matches!(squarefree_part(&int(0)), Err(Error::Domain(_))));
    }

    #[test]
    fn heights() {
        assert_eq!(height(&rat(8, 5)), BigInt::from(8));
        assert_eq!(height(&int(0)), BigInt::from(1));
        assert_eq!(height(&rat(-49, 1728)), BigInt::from(1728));
    }

    #[test]
    fn factor_semiprime_beyond_trial_range() {
        let p = BigUint::from(1_000_000_007u64);
        let q = BigUint::from(998_244_353u64);
        let f = factor(&(&p * &q * &q)).unwrap();
        assert_eq!(f, vec![(q, 2), (p, 1)]);
    }

    #[test]
    fn divisor_list() {
        let d: Vec<u32> = divisors(&BigUint::from(12u32))
            .unwrap()
            .iter()
            .map(|x| x.to_u32().unwrap())
            .collect();
        assert_eq!(d, vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rational("-15/10").unwrap(), rat(-3, 2));
        assert_eq!(rational_to_string(&rat(-3, 2)), "-3/2");
        assert_eq!(rational_to_string(&int(7)), "7/1");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn reductions() {
        assert_eq!(reduce_mod(&rat(-1, 4), 5), Some(1));
        assert_eq!(reduce_mod(&rat(1, 5), 5), None);
        assert_eq!(valuation(&rat(50, 3), 5), Some(2));
        assert_eq!(valuation(&rat(3, 125), 5), Some(-3));
    }
}
