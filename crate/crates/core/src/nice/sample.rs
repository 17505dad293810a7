//! Deterministic parameter sampling for the verification campaigns.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::param::param_l;
use crate::arith::rational::is_squarefree;
use crate::arith::{int, rat};
use crate::Rational;

pub const SAMPLE_SEED: u64 = 0x4E1CE;

fn random_rational(rng: &mut ChaCha8Rng, max_height: i64) -> Rational {
    loop {
        let a = rng.random_range(-max_height..=max_height);
        let b = rng.random_range(1..=max_height);
        if a.gcd(&b) == 1 {
            return rat(a, b);
        }
    }
}

/// `n` pairs `(t, L)` with distinct nice `L = param_L(t)`, `height(t) ≤ max_height`,
/// sorted by `L`. Returns fewer when the box is exhausted.
pub fn sample_nice_l(n: usize, seed: u64, max_height: i64) -> Vec<(Rational, Rational)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(n);
    let budget = 50 * n + 1000;
    for _ in 0..budget {
        if out.len() == n {
            break;
        }
        let t = random_rational(&mut rng, max_height);
        if let Ok((l, _)) = param_l(&t) {
            if seen.insert(l.clone()) {
                out.push((t, l));
            }
        }
    }
    out.sort_by(|a, b| a.1.cmp(&b.1));
    out
}

/// `n` parameters `u ∉ {0, ±1}` with distinct `u²`, sorted.
pub fn sample_special_u(n: usize, seed: u64, max_height: i64) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(n);
    for _ in 0..(50 * n + 1000) {
        if out.len() == n {
            break;
        }
        let u = random_rational(&mut rng, max_height);
        let u2 = &u * &u;
        if u2 == int(0) || u2 == int(1) {
            continue;
        }
        if seen.insert(u2) {
            out.push(u);
        }
    }
    out.sort();
    out
}

/// `n` distinct squarefree `d ∉ {0, 1}` with `|d| ≤ bound`, skipping `exclude`.
pub fn sample_squarefree_d(n: usize, seed: u64, bound: i64, exclude: &[i64]) -> Vec<i64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    for _ in 0..(50 * n + 1000) {
        if seen.len() == n {
            break;
        }
        let d = rng.random_range(-bound..=bound);
        if d == 0 || d == 1 || exclude.contains(&d) {
            continue;
        }
        if is_squarefree(&BigInt::from(d)).unwrap_or(false) {
            seen.insert(d);
        }
    }
    seen.into_iter().collect()
}
