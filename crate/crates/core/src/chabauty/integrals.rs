//! Abelian integrals on `J(ℚ)` through the kernel of reduction.

use serde::Serialize;

use crate::arith::rational::reduce_mod;
use crate::arith::{Fp, UniPoly};
use crate::error::{Error, Result};
use crate::hyper::{order_in_jfp, Jacobian, MumfordDivisor, WPPoint};
use crate::padic::{padic_sqrt, Padic, PadicSeries};
use crate::scalar::Field;
use crate::Rational;

use super::expansion::local_expansion;
use super::setup::{disk_at, ColemanSetup, PadicPoint, Residue};

/// Multipliers above this make the exact multiple `m·D` too tall to compute.
pub const MAX_MULTIPLIER: u64 = 400;

/// `∫ ω₀, ∫ ω₁` over a class of `J(ℚ)` and the multiplier that moved it into
/// the kernel of reduction.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassIntegral {
    pub multiplier: u64,
    pub values: [Padic; 2],
}

/// Order of the reduction of `d` in `J(𝔽_p)`.
pub fn reduction_order(setup: &ColemanSetup, d: &MumfordDivisor<Rational>) -> Result<u64> {
    let dp = d.reduce_mod(setup.p).ok_or_else(|| Error::PrimeUnusable {
        p: setup.p,
        reason: format!("{d:?} does not reduce coefficientwise"),
    })?;
    order_in_jfp(&setup.jac_p, &dp, setup.jacobian_order)
}

/// Where the support of a kernel element lies, with the monic polynomial
/// whose roots are the disk parameters of its points.
enum KernelSupport {
    Empty,
    /// Roots `τᵢ = xᵢ²/yᵢ`.
    Infinite(UniPoly<Padic>),
    /// Roots `yᵢ`, in the Weierstrass disk over `x ≡ w`.
    Weierstrass(u64, UniPoly<Padic>),
    /// `P₁, P₂` in the opposite disks over `x ≡ w`, given by `u = x² + a₁x + a₀`
    /// and `v = b₁x + b₀`. Then `∫_∞^P₁ + ∫_∞^P₂ = ∫_{ιP₂}^{P₁}` is tiny.
    Opposite { w: u64, a: [Padic; 2], b: [Padic; 2] },
}

/// Integrals over a class `E = P₁ + P₂ − 2∞` reducing to 0. Either both
/// points lie in the disk at ∞, summed over the roots of the polynomial in
/// `τ = x²/y`, or both lie in one Weierstrass disk, where `∫_∞^W = 0` for the
/// 2-torsion class `[W − ∞]` and the sum runs over the `y`-coordinates.
pub fn kernel_integrals(setup: &ColemanSetup, e: &MumfordDivisor<Rational>) -> Result<[Padic; 2]> {
    let unusable = |reason: String| Error::PrimeUnusable { p: setup.p, reason };
    let q = |n: i64| Rational::from_integer(n.into());
    let c = |poly: &UniPoly<Rational>, i: usize| poly.coeffs().get(i).cloned().unwrap_or_else(|| q(0));
    let (u, v) = (&e.u, &e.v);
    let one = setup.padic(&q(1));
    let support = match e.degree() {
        0 => KernelSupport::Empty,
        1 => {
            let x1 = -c(u, 0);
            let y1 = c(v, 0);
            if y1 == q(0) {
                return Err(unusable("kernel element supported at a Weierstrass point".into()));
            }
            let tau = &x1 * &x1 / y1;
            KernelSupport::Infinite(UniPoly::new(vec![-setup.padic(&tau), one]))
        }
        _ => {
            let (a0, a1) = (c(u, 0), c(u, 1));
            let (b0, b1) = (c(v, 0), c(v, 1));
            // y₁y₂
            let n = &b1 * &b1 * &a0 - &b1 * &b0 * &a1 + &b0 * &b0;
            if n == q(0) {
                return Err(unusable("kernel element meets a Weierstrass point".into()));
            }
            match reduce_mod(&a0, setup.p).zip(reduce_mod(&a1, setup.p)) {
                None => {
                    let e2 = &a0 * &a0 / &n;
                    let e1 = (-&b1 * &a0 * &a1 + &b0 * (&a1 * &a1 - &a0 * q(2))) / &n;
                    KernelSupport::Infinite(UniPoly::new(vec![setup.padic(&e2), -setup.padic(&e1), one]))
                }
                Some(_) => {
                    // ū = (x − w)²
                    let w = reduce_mod(&(-&a1 / q(2)), setup.p).expect("p odd");
                    if is_branch_residue(setup, w) {
                        let e1 = &b0 * q(2) - &b1 * &a1;
                        KernelSupport::Weierstrass(w, UniPoly::new(vec![setup.padic(&n), -setup.padic(&e1), one]))
                    } else {
                        let pa = |x: &Rational| setup.padic(x);
                        KernelSupport::Opposite { w, a: [pa(&a0), pa(&a1)], b: [pa(&b0), pa(&b1)] }
                    }
                }
            }
        }
    };
    support_integrals(setup, support)
}

/// [`kernel_integrals`] for a kernel element with p-adic coefficients.
pub fn kernel_integrals_padic(setup: &ColemanSetup, e: &MumfordDivisor<Padic>) -> Result<[Padic; 2]> {
    let unusable = |reason: String| Error::PrimeUnusable { p: setup.p, reason };
    let zero = Padic::zero(setup.p, setup.precision as i64, setup.precision);
    let c = |poly: &UniPoly<Padic>, i: usize| poly.coeff_or(i, &zero);
    let (u, v) = (&e.u, &e.v);
    let one = zero.one_like();
    let support = match e.degree() {
        0 => KernelSupport::Empty,
        1 => {
            let x1 = -c(u, 0);
            let yi = c(v, 0).inv().ok_or_else(|| unusable("kernel element at a Weierstrass point".into()))?;
            KernelSupport::Infinite(UniPoly::new(vec![-(x1.clone() * x1 * yi), one]))
        }
        _ => {
            let (a0, a1) = (c(u, 0), c(u, 1));
            let (b0, b1) = (c(v, 0), c(v, 1));
            let two = one.from_i64_like(2);
            let n = b1.clone() * b1.clone() * a0.clone() - b1.clone() * b0.clone() * a1.clone() + b0.clone() * b0.clone();
            if a0.valuation_lower_bound() < 0 || a1.valuation_lower_bound() < 0 {
                let ni = n.inv().ok_or_else(|| unusable("kernel element meets a Weierstrass point".into()))?;
                let e2 = a0.clone() * a0.clone() * ni.clone();
                let e1 = (-(b1 * a0.clone() * a1.clone()) + b0 * (a1.clone() * a1 - a0 * two)) * ni;
                KernelSupport::Infinite(UniPoly::new(vec![e2, -e1, one]))
            } else {
                let half = two.inv().expect("p odd");
                let w = (-(a1.clone()) * half).residue().expect("integral");
                if is_branch_residue(setup, w) {
                    let e1 = b0 * two - b1 * a1;
                    KernelSupport::Weierstrass(w, UniPoly::new(vec![n, -e1, one]))
                } else {
                    KernelSupport::Opposite { w, a: [a0, a1], b: [b0, b1] }
                }
            }
        }
    };
    support_integrals(setup, support)
}

fn support_integrals(setup: &ColemanSetup, support: KernelSupport) -> Result<[Padic; 2]> {
    let unusable = |reason: String| Error::PrimeUnusable { p: setup.p, reason };
    let (poly, series): (UniPoly<Padic>, [PadicSeries; 2]) = match support {
        KernelSupport::Empty => {
            let zero = Padic::zero(setup.p, setup.precision as i64, setup.precision);
            return Ok([zero.clone(), zero]);
        }
        KernelSupport::Infinite(poly) => (poly, setup.inf_integrals.clone()),
        KernelSupport::Opposite { w, a, b } => return opposite_integrals(setup, w, a, b),
        KernelSupport::Weierstrass(w, poly) => {
            let disk = disk_at(setup, Residue::Affine { x: w, y: 0 })?;
            let anti = |j| local_expansion(setup, &disk, j).map(|s| s.antiderivative());
            (poly, [anti(0)?, anti(1)?])
        }
    };
    let eval = |j: usize| {
        series[j].evaluate_symmetric(&poly).map_err(|e| match e {
            Error::DiskViolation(r) => unusable(format!("kernel element not in one analyzable disk: {r}")),
            other => other,
        })
    };
    Ok([eval(0)?, eval(1)?])
}

fn is_branch_residue(setup: &ColemanSetup, w: u64) -> bool {
    setup.jac_p.f().eval(&Fp::new(w as i64, setup.p)).is_zero()
}

fn opposite_integrals(setup: &ColemanSetup, w: u64, a: [Padic; 2], b: [Padic; 2]) -> Result<[Padic; 2]> {
    let p = setup.p;
    let unusable = |reason: &str| Error::PrimeUnusable { p, reason: reason.into() };
    let fw = setup.jac_p.f().eval(&Fp::new(w as i64, p));
    let y0 = (1..p).find(|&y| Fp::new((y * y) as i64, p) == fw).ok_or_else(|| unusable("support off the curve mod p"))?;
    let [a0, a1] = a;
    let b1 = b[1].clone();
    let two = a0.from_i64_like(2);
    // x₁ − x₂, signed so that y₁ − y₂ = b₁(x₁ − x₂) ≡ 2ȳ
    let disc = a1.clone() * a1.clone() - a0.from_i64_like(4) * a0.clone();
    let mut d = padic_sqrt(&disc).map_err(|_| unusable("opposite support not defined over ℚ_p"))?;
    let target = Padic::from_i64(2 * y0 as i64, p, setup.precision);
    let sign_ok = |d: &Padic| (b1.clone() * d.clone() - target.clone()).valuation_lower_bound() >= 1;
    if !sign_ok(&d) {
        d = -d;
    }
    if !sign_ok(&d) {
        return Err(unusable("opposite support does not match its disks"));
    }
    let disk = disk_at(setup, Residue::Affine { x: w, y: y0 })?;
    let PadicPoint::Affine { x: x0, .. } = &disk.center else { unreachable!("affine residue") };
    let e1 = -(a1.clone()) - two * x0.clone();
    let e2 = a0 + a1 * x0.clone() + x0.clone() * x0.clone();
    let eval = |j: usize| -> Result<Padic> {
        let anti = local_expansion(setup, &disk, j)?.antiderivative();
        anti.evaluate_difference(&d, &e1, &e2).map_err(|e| match e {
            Error::DiskViolation(r) => Error::PrimeUnusable { p, reason: format!("kernel element not in one analyzable disk: {r}") },
            other => other,
        })
    };
    Ok([eval(0)?, eval(1)?])
}

/// `∫_∞^Q ω_j` for `Q = (x, y)` over ℚ_p with `x` rational, through
/// `m·[Q − ∞]` with `m` the order of its reduction, computed by Cantor
/// arithmetic over ℚ_p. `y` selects the sign; it is recomputed at higher
/// precision.
pub fn padic_point_integrals(setup: &ColemanSetup, x: &Rational, y: &Padic) -> Result<ClassIntegral> {
    let p = setup.p;
    let q = PadicPoint::Affine { x: setup.padic(x), y: y.clone() };
    let Residue::Affine { x: xr, y: yr } = q.residue(p) else {
        return Err(Error::Domain("point in the disk at ∞".into()));
    };
    let dp = setup.jac_p.from_point(&Fp::new(xr as i64, p), &Fp::new(yr as i64, p))?;
    let m = order_in_jfp(&setup.jac_p, &dp, setup.jacobian_order)?;
    // Cantor steps lose digits when intermediate supports meet mod p
    let wide = 2 * setup.precision;
    let jac = Jacobian::new(setup.f().map(|c| Padic::from_rational(c, p, wide)))?;
    let xw = Padic::from_rational(x, p, wide);
    let mut yw = padic_sqrt(&jac.f().eval(&xw))?;
    if !yw.truncate_abs(y.abs_precision()).agrees_with(y) {
        yw = -yw;
    }
    if !yw.truncate_abs(y.abs_precision()).agrees_with(y) {
        return Err(Error::Domain(format!("point is not on the curve: {y:?} vs {yw:?}")));
    }
    let d = MumfordDivisor { u: UniPoly::linear_root(&xw), v: UniPoly::constant(yw) };
    let e = jac.try_scalar_mul(m as i64, &d)?;
    let [i0, i1] = kernel_integrals_padic(setup, &e)?;
    let mp = Padic::from_i64(m as i64, p, setup.precision);
    let div = |v: Padic| v.checked_div(&mp).expect("m ≠ 0");
    Ok(ClassIntegral { multiplier: m, values: [div(i0), div(i1)] })
}

/// `(1/k)·∫` over `k·D`.
pub fn class_integrals_with_multiplier(setup: &ColemanSetup, d: &MumfordDivisor<Rational>, k: u64) -> Result<ClassIntegral> {
    if k > MAX_MULTIPLIER {
        return Err(Error::PrimeUnusable {
            p: setup.p,
            reason: format!("multiplier {k} exceeds {MAX_MULTIPLIER}"),
        });
    }
    let e = setup.jac.scalar_mul(k as i64, d);
    let [i0, i1] = kernel_integrals(setup, &e)?;
    let kp = Padic::from_i64(k as i64, setup.p, setup.precision);
    let div = |x: Padic| x.checked_div(&kp).expect("k ≠ 0");
    Ok(ClassIntegral { multiplier: k, values: [div(i0), div(i1)] })
}

/// Integrals over `D`, using the order of its reduction as multiplier.
pub fn class_integrals(setup: &ColemanSetup, d: &MumfordDivisor<Rational>) -> Result<ClassIntegral> {
    let m = reduction_order(setup, d)?;
    class_integrals_with_multiplier(setup, d, m)
}

pub fn generator_integrals(setup: &ColemanSetup) -> Result<ClassIntegral> {
    class_integrals(setup, &setup.generator)
}

/// The class `[P − ∞]` of a rational point.
pub fn point_class(setup: &ColemanSetup, pt: &WPPoint) -> Result<MumfordDivisor<Rational>> {
    if pt.is_infinite() {
        return Ok(setup.jac.identity());
    }
    setup.jac.from_point(pt.x(), pt.y())
}

/// `(c₀, c₁) = (−I₁, I₀)` scaled to minimal valuation 0.
pub fn annihilating_differential(i0: &Padic, i1: &Padic) -> Result<(Padic, Padic)> {
    if i0.is_zero() && i1.is_zero() {
        return Err(Error::InsufficientPrecision("both generator integrals vanish".into()));
    }
    let (c0, c1) = (-i1.clone(), i0.clone());
    let v = [&c0, &c1].iter().filter(|c| !c.is_zero()).map(|c| c.valuation_lower_bound()).min().expect("one nonzero");
    let scale = Padic::p_power(c0.prime(), -v, c0.cap().max(c1.cap()));
    Ok((c0 * scale.clone(), c1 * scale))
}

/// `c₀·a + c₁·b`.
pub fn pair_value(c: &(Padic, Padic), v: &[Padic; 2]) -> Padic {
    c.0.clone() * v[0].clone() + c.1.clone() * v[1].clone()
}

#[derive(Debug, Clone, Serialize)]
pub struct IntegralSummary {
    pub multiplier: u64,
    pub i0: String,
    pub i1: String,
}

impl From<&ClassIntegral> for IntegralSummary {
    fn from(c: &ClassIntegral) -> Self {
        Self { multiplier: c.multiplier, i0: c.values[0].to_string(), i1: c.values[1].to_string() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn annihilator_kills_generator() {
        let s = ColemanSetup::new(5, 30).unwrap();
        let g = generator_integrals(&s).unwrap();
        let c = annihilating_differential(&g.values[0], &g.values[1]).unwrap();
        assert!(pair_value(&c, &g.values).is_zero());
        assert_eq!(c.0.valuation_lower_bound().min(c.1.valuation_lower_bound()), 0);
    }

    #[test]
    fn two_torsion_integrates_to_zero() {
        let s = ColemanSetup::new(5, 30).unwrap();
        let w = s.jac.from_point(&int(-1), &int(0)).unwrap();
        let d = s.generator.clone();
        let a = class_integrals(&s, &d).unwrap();
        let b = class_integrals(&s, &s.jac.add(&d, &w)).unwrap();
        for j in 0..2 {
            let diff = b.values[j].clone() - a.values[j].clone();
            assert!(diff.vanishing_digits() >= 25, "{diff:?}");
        }
    }

    #[test]
    fn padic_route_matches_exact_route() {
        let s = ColemanSetup::new(7, 30).unwrap();
        for pt in s.known.iter().filter(|k| !k.is_infinite()) {
            let exact = class_integrals(&s, &point_class(&s, pt).unwrap()).unwrap();
            let padic = padic_point_integrals(&s, pt.x(), &s.padic(pt.y())).unwrap();
            for j in 0..2 {
                let d = (exact.values[j].clone() - padic.values[j].clone()).vanishing_digits();
                assert!(d >= 25, "{pt:?} j = {j}: {d} digits; {:?} vs {:?}", exact.values[j], padic.values[j]);
            }
        }
    }

    #[test]
    fn multiplier_linearity() {
        let s = ColemanSetup::new(5, 30).unwrap();
        let m = reduction_order(&s, &s.generator).unwrap();
        let a = class_integrals_with_multiplier(&s, &s.generator, m).unwrap();
        let b = class_integrals_with_multiplier(&s, &s.generator, 2 * m).unwrap();
        for j in 0..2 {
            assert!((a.values[j].clone() - b.values[j].clone()).vanishing_digits() >= 25);
        }
    }

    #[test]
    fn located_integrals_agree_with_tiny_integrals() {
        // (3, ±3) mod 7 holds no known point; its kernel multiples land in opposite disks
        let s = ColemanSetup::new(7, 30).unwrap();
        let lift = |x: i64| {
            let y = padic_sqrt(&s.f_padic().eval(&Padic::from_i64(x, 7, 30))).unwrap();
            if y.residue() == Some(3) { y } else { -y }
        };
        let (ya, yb) = (lift(3), lift(10));
        let a = padic_point_integrals(&s, &int(3), &ya).unwrap();
        let b = padic_point_integrals(&s, &int(10), &yb).unwrap();
        let conj = padic_point_integrals(&s, &int(3), &-ya.clone()).unwrap();
        let (pa, pb) = (
            PadicPoint::Affine { x: s.padic(&int(3)), y: ya },
            PadicPoint::Affine { x: s.padic(&int(10)), y: yb },
        );
        for j in 0..2 {
            let tiny = super::super::expansion::tiny_integral(&s, &pa, &pb, j).unwrap();
            let d = (b.values[j].clone() - a.values[j].clone() - tiny).vanishing_digits();
            assert!(d >= 25, "j = {j}: {d} digits");
            assert!((a.values[j].clone() + conj.values[j].clone()).vanishing_digits() >= 25);
        }
    }
}
