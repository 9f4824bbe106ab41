use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::Result;

use super::density::{lift_pair, DensityField};
use super::wavefunction::WaveFunction1D;

/// `φ_αβ(x, y) = ψ_α(x) ψ_β*(y)` and its beat angular frequency `(E_α − E_β)/ħ`.
pub fn stationary_pair(psi_a: &WaveFunction1D, e_a: f64, psi_b: &WaveFunction1D, e_b: f64) -> Result<(DensityField, f64)> {
    let phi = lift_pair(psi_a, psi_b)?;
    let omega = (e_a - e_b) / psi_a.hbar();
    Ok((phi, omega))
}

/// Tracks the continuous phase of `⟨φ₀|φ(t)⟩` across snapshots.
///
/// Snapshots must be close enough that the phase advances by less than π between them.
#[derive(Clone, Debug)]
pub struct PhaseTracker {
    reference: DensityField,
    last_raw: f64,
    unwrapped: f64,
}

impl PhaseTracker {
    pub fn new(reference: DensityField) -> Self {
        Self { reference, last_raw: 0.0, unwrapped: 0.0 }
    }

    pub fn overlap(&self, phi: &DensityField) -> Complex64 {
        self.reference
            .field()
            .samples()
            .iter()
            .zip(phi.field().samples())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Record a snapshot and return the unwrapped phase.
    pub fn observe(&mut self, phi: &DensityField) -> f64 {
        let raw = self.overlap(phi).arg();
        let mut d = raw - self.last_raw;
        while d > PI {
            d -= 2.0 * PI;
        }
        while d < -PI {
            d += 2.0 * PI;
        }
        self.unwrapped += d;
        self.last_raw = raw;
        self.unwrapped
    }

    pub fn phase(&self) -> f64 {
        self.unwrapped
    }
}
