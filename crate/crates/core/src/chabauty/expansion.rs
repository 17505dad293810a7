//! Local expansions of `ω_j = x^j dx/(2y)` and tiny integrals.

use crate::error::{Error, Result};
use crate::padic::series::{derivative, inv_trunc, mul_trunc, poly_at_series, sqrt_one_trunc};
use crate::padic::{Padic, PadicSeries};
use crate::scalar::Field;
use crate::QPoly;

use super::setup::{disk_at, ColemanSetup, DiskKind, PadicPoint, ResidueDisk};

/// `a(t)` with `ω_j = a(t) dt` in the disk's parameter.
pub fn local_expansion(setup: &ColemanSetup, disk: &ResidueDisk, j: usize) -> Result<PadicSeries> {
    if j > 1 {
        return Err(Error::Domain(format!("no basis differential ω_{j} in genus 2")));
    }
    let f = setup.f_padic();
    let n = setup.terms;
    match (disk.kind, &disk.center) {
        (DiskKind::Infinite, _) => infinite_expansion(setup.f(), setup.p, setup.precision, n, j),
        (DiskKind::Generic, PadicPoint::Affine { x, y }) => {
            let one = x.one_like();
            let shifted = poly_at_series(&f, &[x.clone(), one.clone()], n);
            let y0_sq_inv = y.square().inv().ok_or_else(|| Error::Domain("generic disk with y₀ = 0".into()))?;
            let mut ratio: Vec<Padic> = shifted.into_iter().map(|c| c * y0_sq_inv.clone()).collect();
            // f(x₀)/y₀² = 1 up to the precision of the lift
            ratio[0] = one.clone();
            let root = sqrt_one_trunc(&ratio, n).expect("constant term 1");
            let two_y: Vec<Padic> = root.into_iter().map(|c| c * y.clone() * one.from_i64_like(2)).collect();
            let mut a = inv_trunc(&two_y, n).expect("2y₀ is a unit");
            if j == 1 {
                a = mul_trunc(&a, &[x.clone(), one], n);
            }
            Ok(PadicSeries::integral(a))
        }
        (DiskKind::Weierstrass, PadicPoint::Affine { x, .. }) => {
            let half = n / 2 + 1;
            let one = x.one_like();
            let c = poly_at_series(&f, &[x.clone(), one.clone()], 6);
            let c1_inv = c[1].inv().filter(|i| i.valuation() == Some(0)).ok_or_else(|| {
                Error::Domain("Weierstrass disk centred at a multiple root".into())
            })?;
            // z(u) with f(x₀ + z) = u, so that t = y and u = t²
            let zero = one.zero_like();
            let mut z = vec![zero.clone(); half];
            for _ in 0..half {
                let mut rhs = vec![zero.clone(); half];
                if half > 1 {
                    rhs[1] = one.clone();
                }
                let mut zk = z.clone();
                for ci in c.iter().skip(2) {
                    zk = mul_trunc(&zk, &z, half);
                    for (r, v) in rhs.iter_mut().zip(&zk) {
                        *r = r.clone() - ci.clone() * v.clone();
                    }
                }
                z = rhs.into_iter().map(|v| v * c1_inv.clone()).collect();
            }
            let mut a = derivative(&z);
            a.resize(half, zero.clone());
            if j == 1 {
                let mut xz = z.clone();
                xz[0] = x.clone();
                a = mul_trunc(&a, &xz, half);
            }
            Ok(PadicSeries::integral(spread_even(&a, n)))
        }
        _ => Err(Error::Domain("disk centre does not match its type".into())),
    }
}

/// Expansion at ∞ in `τ = x²/y`. With `s = 1/x` and `σ = τ²`, `s` solves
/// `s = σ·g(s)` for the reversed quintic `g`, and `ω₀ = −σ s′(σ) dτ`,
/// `ω₁ = −(s′/h) dτ` where `s = σh`.
pub(crate) fn infinite_expansion(f: &QPoly, p: u64, precision: u32, n: usize, j: usize) -> Result<PadicSeries> {
    if f.degree() != Some(5) {
        return Err(Error::Domain("infinite expansion needs a quintic".into()));
    }
    let to_p = |q: &crate::Rational| Padic::from_rational(q, p, precision);
    let g: Vec<Padic> = f.coeffs().iter().rev().map(to_p).collect();
    if g[0].valuation() != Some(0) {
        return Err(Error::BadPrime { p });
    }
    let g = crate::arith::UniPoly::new(g);
    let half = n / 2 + 2;
    let zero = Padic::zero(p, precision as i64, precision);
    let mut s = vec![zero.clone(); half];
    for _ in 0..half {
        let gs = poly_at_series(&g, &s, half);
        let mut next = vec![zero.clone()];
        next.extend(gs.into_iter().take(half - 1));
        s = next;
    }
    let ds = derivative(&s);
    let a: Vec<Padic> = match j {
        0 => {
            let mut v = vec![zero.clone()];
            v.extend(ds.iter().take(half - 1).map(|c| -c.clone()));
            v
        }
        _ => {
            let h: Vec<Padic> = s[1..].to_vec();
            let hinv = inv_trunc(&h, half - 1).expect("h(0) = lead(f) is a unit");
            mul_trunc(&ds, &hinv, half - 1).into_iter().map(|c| -c).collect()
        }
    };
    Ok(PadicSeries::integral(spread_even(&a, n)))
}

/// `Σ aₖ uᵏ ↦ Σ aₖ t^(2k)`, truncated to `n` terms.
fn spread_even(a: &[Padic], n: usize) -> Vec<Padic> {
    let zero = a[0].zero_like();
    let mut out = vec![zero; n];
    for (k, c) in a.iter().enumerate() {
        if 2 * k < n {
            out[2 * k] = c.clone();
        }
    }
    out
}

/// `∫_P^Q ω_j` for `P ≡ Q (mod p)`.
pub fn tiny_integral(setup: &ColemanSetup, p: &PadicPoint, q: &PadicPoint, j: usize) -> Result<Padic> {
    let res = p.residue(setup.p);
    if q.residue(setup.p) != res {
        return Err(Error::NotTiny);
    }
    let disk = disk_at(setup, res)?;
    tiny_integral_in(setup, &disk, p, q, j)
}

/// Tiny integral using a disk already at hand.
pub fn tiny_integral_in(setup: &ColemanSetup, disk: &ResidueDisk, p: &PadicPoint, q: &PadicPoint, j: usize) -> Result<Padic> {
    let (tp, tq) = (disk.parameter(setup, p)?, disk.parameter(setup, q)?);
    let anti = local_expansion(setup, disk, j)?.antiderivative();
    Ok(anti.evaluate(&tq)? - anti.evaluate(&tp)?)
}
