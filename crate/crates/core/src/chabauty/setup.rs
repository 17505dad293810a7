use serde::Serialize;

use crate::arith::rational::reduce_mod;
use crate::arith::{int, rational_roots, Fp, UniPoly};
use crate::error::{Error, Result};
use crate::hyper::{count_points_fp, jacobian_order_fp, search_points, HyperCurve, Jacobian, MumfordDivisor, WPPoint};
use crate::padic::{hensel_root, padic_sqrt, Padic, PadicSeries};
use crate::scalar::Field;
use crate::{QPoly, Rational};

use super::expansion::infinite_expansion;

/// Height bound used to collect the known rational points.
pub const KNOWN_POINT_BOUND: u64 = 50;

/// Everything fixed for one run at one prime: the curve `y² = f(x)` (odd
/// degree, genus 2), the working precision and the trusted generator.
#[derive(Debug, Clone)]
pub struct ColemanSetup {
    pub curve: HyperCurve,
    pub p: u64,
    pub precision: u32,
    /// Series length for local expansions.
    pub terms: usize,
    pub jac: Jacobian<Rational>,
    pub jac_p: Jacobian<Fp>,
    pub jacobian_order: u64,
    pub generator: MumfordDivisor<Rational>,
    pub known: Vec<WPPoint>,
    /// Antiderivatives of `ω₀, ω₁` in the uniformizer `τ = x²/y` at ∞.
    pub(crate) inf_integrals: [PadicSeries; 2],
}

impl ColemanSetup {
    /// `H_q` with generator `[(0, −1) − ∞]`.
    pub fn new(p: u64, precision: u32) -> Result<Self> {
        let curve = HyperCurve::h_q();
        let jac = Jacobian::new(curve.g().clone())?;
        let gen = jac.from_point(&int(0), &int(-1))?;
        Self::with_generator(curve, gen, p, precision)
    }

    pub fn with_generator(curve: HyperCurve, generator: MumfordDivisor<Rational>, p: u64, precision: u32) -> Result<Self> {
        if curve.genus() != 2 || !curve.is_odd_degree() {
            return Err(Error::Domain("Coleman setup needs an odd-degree genus-2 model".into()));
        }
        if p <= 2 * curve.genus() as u64 {
            return Err(Error::PrimeUnusable { p, reason: "p must exceed 2g".into() });
        }
        let gp = curve.reduce_mod(p)?;
        let jac = Jacobian::new(curve.g().clone())?;
        if !jac.is_valid(&generator) {
            return Err(Error::Domain(format!("{generator:?} is not a reduced divisor")));
        }
        let jac_p = Jacobian::new(gp)?;
        let jacobian_order = jacobian_order_fp(&curve, p)?;
        let known = search_points(&curve, KNOWN_POINT_BOUND);
        let terms = series_terms(p, precision);
        let inf_integrals = [
            infinite_expansion(curve.g(), p, precision, terms, 0)?.antiderivative(),
            infinite_expansion(curve.g(), p, precision, terms, 1)?.antiderivative(),
        ];
        Ok(Self { curve, p, precision, terms, jac, jac_p, jacobian_order, generator, known, inf_integrals })
    }

    pub fn f(&self) -> &QPoly {
        self.curve.g()
    }

    pub(crate) fn f_padic(&self) -> UniPoly<Padic> {
        self.f().map(|c| self.padic(c))
    }

    pub fn padic(&self, q: &Rational) -> Padic {
        Padic::from_rational(q, self.p, self.precision)
    }

    pub fn count_fp(&self) -> Result<u64> {
        count_points_fp(&self.curve, self.p)
    }
}

/// Smallest `k` with `k − ⌊log_p k⌋ ≥ N + 2`: after termwise integration the
/// omitted terms then vanish to `N + 2` digits anywhere in a residue disk.
pub fn series_terms(p: u64, precision: u32) -> usize {
    let mut k = precision as usize + 2;
    loop {
        let mut log = 0;
        let mut x = k as u64;
        while x >= p {
            x /= p;
            log += 1;
        }
        if k - log >= precision as usize + 2 {
            return k;
        }
        k += 1;
    }
}

/// A point over ℚ_p on the curve, or ∞.
#[derive(Debug, Clone, PartialEq)]
pub enum PadicPoint {
    Infinity,
    Affine { x: Padic, y: Padic },
}

impl PadicPoint {
    pub fn from_rational(setup: &ColemanSetup, pt: &WPPoint) -> Self {
        if pt.is_infinite() {
            PadicPoint::Infinity
        } else {
            PadicPoint::Affine { x: setup.padic(pt.x()), y: setup.padic(pt.y()) }
        }
    }

    pub fn residue(&self, p: u64) -> Residue {
        match self {
            PadicPoint::Infinity => Residue::Infinity,
            PadicPoint::Affine { x, y } => {
                if x.valuation_lower_bound() < 0 {
                    return Residue::Infinity;
                }
                let r = |v: &Padic| v.residue().expect("integral");
                Residue::Affine { x: r(x), y: r(y) % p }
            }
        }
    }
}

/// A point of the reduction `C(𝔽_p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Residue {
    Infinity,
    Affine { x: u64, y: u64 },
}

impl std::fmt::Display for Residue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Residue::Infinity => f.write_str("∞"),
            Residue::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

/// Reduction of a rational point.
pub fn residue_of(pt: &WPPoint, p: u64) -> Residue {
    if pt.is_infinite() {
        return Residue::Infinity;
    }
    match (reduce_mod(pt.x(), p), reduce_mod(pt.y(), p)) {
        (Some(x), Some(y)) => Residue::Affine { x, y },
        _ => Residue::Infinity,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DiskKind {
    Infinite,
    Weierstrass,
    Generic,
}

/// A residue disk with the point its expansions are centred at: the known
/// rational point in it when there is one, otherwise a Hensel lift of the
/// residue.
#[derive(Debug, Clone)]
pub struct ResidueDisk {
    pub residue: Residue,
    pub kind: DiskKind,
    pub center: PadicPoint,
    pub anchor: Option<WPPoint>,
    pub known: Vec<WPPoint>,
}

impl ResidueDisk {
    /// The disk parameter of `pt`: `x − x₀`, `y` or `x²/y`.
    pub fn parameter(&self, setup: &ColemanSetup, pt: &PadicPoint) -> Result<Padic> {
        if pt.residue(setup.p) != self.residue {
            return Err(Error::NotTiny);
        }
        let t = match (self.kind, pt, &self.center) {
            (DiskKind::Infinite, PadicPoint::Infinity, _) => {
                return Ok(Padic::zero(setup.p, 4 * setup.precision as i64, setup.precision))
            }
            (DiskKind::Infinite, PadicPoint::Affine { x, y }, _) => {
                let yi = y.inv().ok_or(Error::NotTiny)?;
                x.clone() * x.clone() * yi
            }
            (DiskKind::Weierstrass, PadicPoint::Affine { y, .. }, _) => y.clone(),
            (DiskKind::Generic, PadicPoint::Affine { x, .. }, PadicPoint::Affine { x: x0, .. }) => x.clone() - x0.clone(),
            _ => return Err(Error::NotTiny),
        };
        if t.valuation_lower_bound() < 1 {
            return Err(Error::NotTiny);
        }
        Ok(t)
    }
}

/// The disk over `res`, centred at the first known point reducing to it.
pub fn disk_at(setup: &ColemanSetup, res: Residue) -> Result<ResidueDisk> {
    let p = setup.p;
    let known: Vec<WPPoint> = setup.known.iter().filter(|k| residue_of(k, p) == res).cloned().collect();
    let anchor = known.first().cloned();
    let kind = match res {
        Residue::Infinity => DiskKind::Infinite,
        Residue::Affine { y: 0, .. } => DiskKind::Weierstrass,
        Residue::Affine { .. } => DiskKind::Generic,
    };
    let center = match (&anchor, res, kind) {
        (Some(a), _, _) => PadicPoint::from_rational(setup, a),
        (None, Residue::Infinity, _) => PadicPoint::Infinity,
        (None, Residue::Affine { x, .. }, DiskKind::Weierstrass) => PadicPoint::Affine {
            x: hensel_root(setup.f(), x, p, setup.precision)?,
            y: Padic::zero(p, setup.precision as i64, setup.precision),
        },
        (None, Residue::Affine { x, y }, _) => {
            let xp = Padic::from_i64(x as i64, p, setup.precision);
            let mut yp = padic_sqrt(&setup.f_padic().eval(&xp))?;
            if yp.residue() != Some(y) {
                yp = -yp;
            }
            PadicPoint::Affine { x: xp, y: yp }
        }
    };
    Ok(ResidueDisk { residue: res, kind, center, anchor, known })
}

/// All residue disks of `C(𝔽_p)`, ∞ first, then by `(x, y)`.
pub fn residue_disks(setup: &ColemanSetup) -> Result<Vec<ResidueDisk>> {
    let p = setup.p;
    let gp = setup.jac_p.f().clone();
    let mut residues = vec![Residue::Infinity];
    for x in 0..p {
        let v = gp.eval(&Fp::new(x as i64, p));
        for y in 0..p {
            if Fp::new((y * y) as i64, p) == v {
                residues.push(Residue::Affine { x, y });
            }
        }
    }
    residues.into_iter().map(|r| disk_at(setup, r)).collect()
}

/// Rational roots of `f`; each must be a known point for unanchored
/// Weierstrass disks to have an irrational centre.
pub fn rational_weierstrass_points(setup: &ColemanSetup) -> Result<Vec<Rational>> {
    rational_roots(setup.f())
}
