//! Electromagnetic coupling: minimal coupling of the matrix field, gauge
//! transformations of `A`, the current source and a Lorenz-gauge Maxwell stepper.
//!
//! Potentials carry upper indices `A^μ`; lowering flips the spatial sign.

mod coupled;
mod interacting;
mod maxwell;
mod potential;

pub use coupled::{coupled_step, CoupledDiagnostics, CoupledState, DIVERGENCE_LIMIT};
pub use interacting::{
    apply_h0_reduced, apply_h1, current_density, evolve_free_reduced, evolve_interacting, from_static_profile,
    line_continuity_defect, reduced_current, reduced_dump, residual_interacting,
};
pub use maxwell::{cfl_limit, maxwell_step, poisson_fd2};
pub use potential::{field_strength, gauge_transform_a, FieldStrength, FourPotential, GaugeFunction};
