//! Per-disk zero counts for `∫ ω_A` and the global Coleman bound.

use serde::Serialize;

use crate::arith::UniPoly;
use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::Rational;
use crate::hyper::WPPoint;
use crate::padic::{Padic, PadicSeries};

use super::expansion::local_expansion;
use super::integrals::{padic_point_integrals, pair_value};
use super::setup::{residue_disks, ColemanSetup, DiskKind, PadicPoint, Residue, ResidueDisk};

/// How a disk's count was bounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DiskBound {
    /// Zeros of `∫_anchor ω_A`, the anchor a known rational point.
    Anchored,
    /// Zeros of `∫_W ω_A` minus the irrational Weierstrass centre `W`.
    WeierstrassCentre,
    /// Zeros of `∫ ω_A + C` for an unknown constant `C`.
    Unanchored,
    /// Zeros of `C + ∫_centre ω_A` with `C = ∫_∞^centre ω_A` computed through
    /// the kernel of reduction over ℚ_p.
    Located,
    /// Weierstrass disk where `∫_W ω_A = t·G(t²)` and `G` has a single root
    /// `s₁`: nonzero rational zeros need `s₁` to be a square in ℚ_p.
    OddSquareClass,
}

#[derive(Debug, Clone)]
pub struct DiskReport {
    pub residue: Residue,
    pub kind: DiskKind,
    pub method: DiskBound,
    /// `∫_centre^{z(p·t)} ω_A`.
    pub series: PadicSeries,
    pub strassmann: usize,
    /// Upper bound on the rational points in the disk.
    pub bound: usize,
    pub known: Vec<WPPoint>,
    /// `∫_centre^P ω_A` at each known point.
    pub known_values: Vec<Padic>,
    /// The root `s₁` examined by [`DiskBound::OddSquareClass`].
    pub square_root: Option<String>,
}

impl DiskReport {
    pub fn is_closed(&self) -> bool {
        self.bound == self.known.len()
    }
}

#[derive(Debug, Clone)]
pub struct ZeroBounds {
    pub disks: Vec<DiskReport>,
    pub disk_sum: usize,
    /// `|C(𝔽_p)| + 2g − 2`.
    pub coleman: usize,
    pub bound: usize,
}

/// Bounds `|C(ℚ)|` disk by disk for the annihilator `c₀ω₀ + c₁ω₁`.
pub fn disk_zero_bounds(setup: &ColemanSetup, c: &(Padic, Padic)) -> Result<ZeroBounds> {
    if c.0.valuation_lower_bound() >= 1 && c.1.valuation_lower_bound() >= 1 {
        return Err(Error::PrimeUnusable { p: setup.p, reason: "annihilator vanishes mod p".into() });
    }
    let disks = residue_disks(setup)?;
    let reports = disks.iter().map(|d| disk_report(setup, d, c)).collect::<Result<Vec<_>>>()?;
    let disk_sum = reports.iter().map(|r| r.bound).sum();
    let coleman = disks.len() + 2 * setup.curve.genus() - 2;
    Ok(ZeroBounds { disk_sum, coleman, bound: disk_sum.min(coleman), disks: reports })
}

fn disk_report(setup: &ColemanSetup, disk: &ResidueDisk, c: &(Padic, Padic)) -> Result<DiskReport> {
    let a = local_expansion(setup, disk, 0)?.scale(&c.0).add(&local_expansion(setup, disk, 1)?.scale(&c.1));
    let anti = a.antiderivative();
    let series = anti.rescale_by_p();
    let (mut method, strassmann, mut bound) = match (&disk.anchor, disk.kind) {
        (Some(_), _) => {
            let s = series.strassmann_bound()?;
            (DiskBound::Anchored, s, s)
        }
        (None, DiskKind::Weierstrass) => {
            let s = series.strassmann_bound()?;
            (DiskBound::WeierstrassCentre, s, s.saturating_sub(1))
        }
        (None, _) => match located_series(setup, disk, c, &anti) {
            Ok(located) => {
                let s = located.strassmann_bound()?;
                (DiskBound::Located, s, s)
            }
            Err(Error::InsufficientPrecision(_) | Error::PrimeUnusable { .. }) => {
                let s = series.strassmann_from(1)?;
                (DiskBound::Unanchored, s, s)
            }
            Err(e) => return Err(e),
        },
    };
    let mut square_root = None;
    if disk.kind == DiskKind::Weierstrass && strassmann == 3 {
        let centre = usize::from(disk.anchor.is_some());
        match odd_root_square_class(&series) {
            Ok((is_square, root)) => {
                square_root = Some(root.to_string());
                if !is_square {
                    method = DiskBound::OddSquareClass;
                    bound = centre;
                }
            }
            Err(Error::InsufficientPrecision(why)) => square_root = Some(format!("undetermined: {why}")),
            Err(e) => return Err(e),
        }
    }
    let known_values = disk
        .known
        .iter()
        .map(|k| {
            let t = disk.parameter(setup, &PadicPoint::from_rational(setup, k))?;
            anti.evaluate(&t)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DiskReport {
        residue: disk.residue,
        kind: disk.kind,
        method,
        series,
        strassmann,
        bound,
        known: disk.known.clone(),
        known_values,
        square_root,
    })
}

/// The rescaled series of `∫_∞ ω_A` on a generic disk with integral centre.
fn located_series(setup: &ColemanSetup, disk: &ResidueDisk, c: &(Padic, Padic), anti: &PadicSeries) -> Result<PadicSeries> {
    let (Residue::Affine { x, .. }, PadicPoint::Affine { y, .. }) = (disk.residue, &disk.center) else {
        return Err(Error::Domain("located series needs an affine centre".into()));
    };
    let ci = padic_point_integrals(setup, &Rational::from_integer((x as i64).into()), y)?;
    let mut shifted = anti.clone();
    shifted.coeffs[0] = pair_value(c, &ci.values);
    Ok(shifted.rescale_by_p())
}

/// For an odd rescaled series `F(t) = t·G(t²)` whose Strassmann number is 3,
/// `G` has exactly one root `s` with `|s| ≤ 1`, necessarily in ℚ_p. Returns
/// whether `s` is a square in ℚ_p, and `s`.
fn odd_root_square_class(f: &PadicSeries) -> Result<(bool, Padic)> {
    if f.coeffs.iter().step_by(2).any(|c| !c.is_zero()) {
        return Err(Error::Domain("series is not odd".into()));
    }
    let g: Vec<Padic> = f.coeffs.iter().skip(1).step_by(2).cloned().collect();
    let poly = UniPoly::new(g.clone());
    let dpoly = poly.derivative();
    if g[0].is_zero() {
        return Err(Error::InsufficientPrecision("root indistinguishable from 0".into()));
    }
    let mut s = (-g[0].clone())
        .checked_div(&g[1])
        .ok_or_else(|| Error::InsufficientPrecision("linear coefficient vanishes".into()))?;
    for _ in 0..64 {
        let step = poly
            .eval(&s)
            .checked_div(&dpoly.eval(&s))
            .ok_or_else(|| Error::InsufficientPrecision("derivative vanishes at the root".into()))?;
        if step.is_zero() {
            break;
        }
        s = s - step;
    }
    // G = g₁·(s − s₁)·(unit), so |G(s)| = |g₁|·|s − s₁| on the disk
    let tail = f.tail_valuation_at(0);
    let g1 = g[1].valuation().ok_or_else(|| Error::InsufficientPrecision("linear coefficient vanishes".into()))?;
    let residual = poly.eval(&s).valuation_lower_bound().min(tail);
    let Some(v) = s.valuation() else {
        return Err(Error::InsufficientPrecision("root indistinguishable from 0".into()));
    };
    if v < 0 || residual - g1 < v + 1 {
        return Err(Error::InsufficientPrecision(format!("square class of the root not determined (tail {tail})")));
    }
    let p = s.prime();
    let u = (s.unit() % num_bigint::BigInt::from(p)).to_u64_digits().1.first().copied().unwrap_or(0);
    let square = v % 2 == 0 && crate::arith::finite_field::legendre(u, p) == 1;
    Ok((square, s))
}
