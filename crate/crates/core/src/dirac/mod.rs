//! Matrix-field representation of free and externally coupled Dirac particles.
//!
//! Units have `ħ = c = 1`. A field `φ(x, y)` is a 4×4 complex matrix over pairs of
//! points; observables read the `x_D = y − x = 0` slice.

mod basis;
mod boost;
mod conjugation;
mod evaluator;
mod field;
mod observables;
mod reduced;
mod residual;
mod rest;
mod rotation;
mod spectral;

pub use basis::{alpha_dot, dirac_basis, max_entry, mode_exp, pauli, DiracBasis, Mat4, Spinor};
pub use boost::{boost_generator, support_report, BoostSpec, BoostedField, BoostedSlice, SupportReport};
pub use conjugation::{charge_conjugate, charge_conjugate_slice, conjugate_matrix, conjugate_spinor};
pub use evaluator::{swap_defect, Conjugated, EvaluatorSlice, Event, GaugePhased, PointEvaluator};
pub use field::{lift_spinor, FieldKind, LiftedSpinor, MatrixField, SpinorField};
pub use observables::{
    charge_q, continuity_defect, current_j, divergence, energy_e, momentum_p, observables, orbital_l, spin_s,
    DiracObservables, FourCurrentField, SliceData, SliceSource,
};
pub use reduced::ReducedMatrixField;
pub use residual::{
    apply_h0, residual_40_at, residual_41_at, residual_covariant, residual_free, residual_td_family, Coupling,
    CovariantResidual,
};
pub use rest::{rest_matrix, rest_solution, RestKind};
pub use rotation::{apply_rotation, rotate_matrix_part, rotation_generator, RotationSpec};
pub use spectral::{evolve_free, gradient, propagate_td, td_derivative, TdFamily};
pub(crate) use spectral::{forward as spectral_forward, inverse as spectral_inverse};
