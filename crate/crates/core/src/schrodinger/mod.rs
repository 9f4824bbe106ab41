//! Non-relativistic two-point field `φ(x, y)` and its dynamics
//! `iħ ∂_t φ = −ħ²/2m (∂²_x − ∂²_y) φ + [V(x) − V(y)] φ`.

mod density;
mod eigen;
mod evolve;
mod generators;
mod localized;
mod observables;
mod potential;
mod stationary;
mod wavefunction;

pub use density::{
    from_real_rep, lift_mixture, lift_pair, lift_pure, lift_pure_xy, to_real_rep, DensityField, RealRepresentation,
    REAL_REP_HERMITICITY_TOL,
};
pub use eigen::{eigensolve_1d, hamiltonian_matrix, EnergySpectrum, KineticScheme};
pub use evolve::{evolve_dm, evolve_pure, DmStepper, PureStepper};
pub use generators::{apply_p_gen, apply_q_gen, commutator_defect, pure_commutator_residual, translate};
pub use localized::{localized_solution, plane_wave_fits, LocalizedParams};
pub use observables::{
    d_derivative_at_slice, observable_e, observable_e_momentum, observable_norm, observable_p, observable_p_momentum,
    observable_p_momentum_xy, observable_q, observables, SchrodingerObservables,
};
pub use potential::PotentialSpec;
pub use stationary::{stationary_pair, PhaseTracker};
pub use wavefunction::WaveFunction1D;
