use serde::Serialize;

use crate::dirac::ReducedMatrixField;
use crate::error::{Error, Result};

use super::interacting::{evolve_interacting, reduced_current};
use super::maxwell::maxwell_step;
use super::potential::FourPotential;

/// Norm beyond which a coupled run is declared divergent.
pub const DIVERGENCE_LIMIT: f64 = 1e6;

/// Matter field and potential on the z-reduced domain at time `t`.
#[derive(Clone, Debug)]
pub struct CoupledState {
    pub phi: ReducedMatrixField,
    pub a: FourPotential,
    pub t: f64,
}

/// One row of the coupled-run trace.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CoupledDiagnostics {
    pub t: f64,
    /// `∫J⁰ dz`, including the factor `e`.
    pub charge: f64,
    pub field_energy: f64,
    /// Lorenz residual of the latest Maxwell step, zero before the first.
    pub gauge_residual: f64,
    pub hermiticity_defect: f64,
}

impl CoupledState {
    pub fn diagnostics(&self) -> CoupledDiagnostics {
        let e = self.a.coupling();
        CoupledDiagnostics {
            t: self.t,
            charge: e * self.phi.charge(),
            field_energy: self.a.energy_proxy(),
            gauge_residual: self.a.lorenz_residual().unwrap_or(0.0),
            hermiticity_defect: self.phi.hermiticity_swap_defect(),
        }
    }
}

/// Advance `φ` under the current potential, then `A` under the current of the old `φ`.
///
/// The exchange is explicit and first order in the coupling.
pub fn coupled_step(state: &CoupledState, dt: f64) -> Result<CoupledState> {
    let j = reduced_current(&state.phi, state.a.coupling());
    let phi = evolve_interacting(&state.phi, &state.a, dt, 1)?;
    let a = maxwell_step(&state.a, &j, dt)?;
    let (pn, an) = (phi.max_abs(), a.max_abs());
    if !(pn <= DIVERGENCE_LIMIT && an <= DIVERGENCE_LIMIT) {
        return Err(Error::Divergence(format!("coupled run blew up at t = {}: |φ| = {pn:e}, |A| = {an:e}", state.t + dt)));
    }
    Ok(CoupledState { phi, a, t: state.t + dt })
}
