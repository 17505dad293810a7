//! Hyperelliptic curves `y² = g(x)` in weighted projective models, their
//! rational points, reductions mod p, and genus-2 Jacobian arithmetic.

mod count;
mod curve;
mod mumford;
mod quotient;
mod search;

pub use count::{count_points_fp, count_points_fp2, jacobian_order_fp, zeta_coefficients, ZetaData};
pub use curve::{HyperCurve, WPPoint};
pub use mumford::{enumerate_jacobian, order_in_jfp, Jacobian, MumfordDivisor};
pub use quotient::{pullback_points, quotient_map};
pub use search::search_points;
