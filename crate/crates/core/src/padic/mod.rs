//! Capped-precision p-adic numbers and truncated power series.

pub mod number;
pub mod series;

pub use number::{hensel_root, padic_sqrt, Padic, DEFAULT_PRECISION, PRECISION_FLOOR};
pub use series::{PadicSeries, Tail};
