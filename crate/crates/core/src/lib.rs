//! Nice elliptic curves `y² = x(x − 1)(x − L)` with `L² − L + 1` a rational
//! square: torsion over quadratic fields, the descent to a genus-3
//! hyperelliptic curve, and a Chabauty–Coleman certificate for its genus-2
//! quotient.
//!
//! All curve and polynomial code is generic over [`scalar::Field`]; the
//! aliases below fix the scalar for the common cases.

pub mod arith;
pub mod chabauty;
pub mod elliptic;
pub mod error;
pub mod hyper;
pub mod nice;
pub mod padic;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Field;

/// ℚ, backed by `num-rational`.
pub type Rational = num_rational::BigRational;

pub type QPoly = arith::UniPoly<Rational>;
pub type FpPoly = arith::UniPoly<arith::Fp>;
pub type QuadPoly = arith::UniPoly<arith::QuadExtElem>;

pub type RationalCurve = elliptic::EllipticCurve<Rational>;
pub type QuadCurve = elliptic::EllipticCurve<arith::QuadExtElem>;
pub type RationalPoint = elliptic::EllipticPoint<Rational>;
pub type QuadPoint = elliptic::EllipticPoint<arith::QuadExtElem>;

pub type RationalDivisor = hyper::MumfordDivisor<Rational>;
pub type FpDivisor = hyper::MumfordDivisor<arith::Fp>;
