use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::grid::UniformGrid1D;

/// Real external potential `V(x)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PotentialSpec {
    Zero,
    /// `V = m ω² x² / 2`.
    Harmonic { omega: f64 },
    /// Samples on a periodic grid, linearly interpolated between grid lines.
    Tabulated { grid: UniformGrid1D, samples: Vec<f64> },
}

impl PotentialSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            PotentialSpec::Zero => Ok(()),
            PotentialSpec::Harmonic { omega } => {
                if omega.is_finite() {
                    Ok(())
                } else {
                    Err(invalid("harmonic frequency must be finite"))
                }
            }
            PotentialSpec::Tabulated { grid, samples } => {
                if samples.len() != grid.n() {
                    return Err(invalid("tabulated potential length does not match its grid"));
                }
                if samples.iter().any(|v| !v.is_finite()) {
                    return Err(invalid("tabulated potential must be finite and real"));
                }
                Ok(())
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            PotentialSpec::Zero => true,
            PotentialSpec::Harmonic { omega } => *omega == 0.0,
            PotentialSpec::Tabulated { samples, .. } => samples.iter().all(|&v| v == 0.0),
        }
    }

    pub fn value(&self, x: f64, mass: f64) -> f64 {
        match self {
            PotentialSpec::Zero => 0.0,
            PotentialSpec::Harmonic { omega } => 0.5 * mass * omega * omega * x * x,
            PotentialSpec::Tabulated { grid, samples } => {
                let s = (grid.wrap(x) - grid.x0()) / grid.dx();
                let i = s.floor();
                let t = s - i;
                let i = i as usize % grid.n();
                let j = (i + 1) % grid.n();
                samples[i] * (1.0 - t) + samples[j] * t
            }
        }
    }
}
