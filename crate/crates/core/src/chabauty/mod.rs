//! Chabauty–Coleman bounds for an odd-degree genus-2 curve whose Jacobian
//! has rank 1, with the rank and a generator taken as input.

mod bounds;
mod certify;
mod expansion;
mod integrals;
mod setup;

pub use bounds::{disk_zero_bounds, DiskBound, DiskReport, ZeroBounds};
pub use certify::{
    certify_count, certify_non_torsion, negative_control, prime_sweep, run_at, run_at_prime, Attempt, PrimeRun, Verdict,
    DEFAULT_PRECISION, RETRY_PRECISION, SLACK, SWEEP_LIMIT,
};
pub use expansion::{local_expansion, tiny_integral, tiny_integral_in};
pub use integrals::{
    annihilating_differential, class_integrals, class_integrals_with_multiplier, generator_integrals, kernel_integrals,
    kernel_integrals_padic, padic_point_integrals,
    pair_value, point_class, reduction_order, ClassIntegral, IntegralSummary, MAX_MULTIPLIER,
};
pub use setup::{
    disk_at, rational_weierstrass_points, residue_disks, residue_of, series_terms, ColemanSetup, DiskKind, PadicPoint,
    Residue, ResidueDisk, KNOWN_POINT_BOUND,
};
