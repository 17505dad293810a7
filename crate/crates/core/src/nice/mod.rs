//! The family `E_L`: parametrizations, torsion over quadratic fields, points
//! of infinite order, the auxiliary genus-1 checks and the descent from
//! 3-torsion to the curve `H`.

mod aux;
mod descent;
mod param;
mod points;
mod sample;
mod torsion;

pub use aux::{aux_lemma_curves_check, lutz_nagell_points};
pub use descent::{
    c_equation, c_to_h, conclude_no_3torsion, cusp_param, cusp_param_inverse, descent_chain,
    on_cusp_cubic, shifted_psi3, shifted_psi3_expected, singular_points, sextic_condition, t_of_u,
    u_values_from_h, CuspCubicPoint, DescentWitness,
};
pub use param::{param_inverse, param_l, param_preimages, special_l, NiceCurve};
pub use points::{rational_critical_point, rank2_witnesses, CriticalPoint, CriticalRoot, Rank2Witnesses};
pub use sample::{sample_nice_l, sample_special_u, sample_squarefree_d, SAMPLE_SEED};
pub use torsion::{distinguished_d, torsion_classification, TorsionClassification};
