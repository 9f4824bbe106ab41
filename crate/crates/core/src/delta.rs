//! Normalized Gaussian profiles standing in for point-supported distributions.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::grid::UniformGrid1D;

/// Narrowest accepted width in units of grid spacing.
///
/// At `σ = dx` the periodic quadrature error of the normalization is
/// `2·exp(−2π²σ²/dx²) ≈ 5e−9`, inside the `1e−8` contract.
pub const MIN_SIGMA_OVER_DX: f64 = 1.0;

/// Clearance between the profile center and the domain edges, in units of `σ`.
pub const EDGE_CLEARANCE_SIGMAS: f64 = 5.0;

/// `g_σ(x) = exp(−(x − c)²/2σ²) / (σ√(2π))`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegularizedDelta {
    pub center: f64,
    pub sigma: f64,
}

impl RegularizedDelta {
    pub fn new(center: f64, sigma: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(invalid(format!("sigma must be positive, got {sigma}")));
        }
        Ok(Self { center, sigma })
    }

    pub fn value(&self, x: f64) -> f64 {
        let u = (x - self.center) / self.sigma;
        (-0.5 * u * u).exp() / (self.sigma * (2.0 * PI).sqrt())
    }

    /// `g'(x) = −(x − c)/σ² · g(x)`.
    pub fn derivative(&self, x: f64) -> f64 {
        -(x - self.center) / (self.sigma * self.sigma) * self.value(x)
    }

    /// Fourier transform `∫ g(x) e^{ikx} dx = e^{ikc − σ²k²/2}` (modulus part).
    pub fn transform_modulus(&self, k: f64) -> f64 {
        (-0.5 * self.sigma * self.sigma * k * k).exp()
    }

    /// Reject widths the grid cannot resolve and centers too close to the edges.
    pub fn check_resolved(&self, grid: &UniformGrid1D) -> Result<()> {
        if self.sigma < MIN_SIGMA_OVER_DX * grid.dx() {
            return Err(invalid(format!(
                "under-resolved delta: sigma = {} < {} * dx = {}",
                self.sigma,
                MIN_SIGMA_OVER_DX,
                MIN_SIGMA_OVER_DX * grid.dx()
            )));
        }
        let lo = grid.x0() + EDGE_CLEARANCE_SIGMAS * self.sigma;
        let hi = grid.x0() + grid.length() - EDGE_CLEARANCE_SIGMAS * self.sigma;
        if self.center < lo || self.center > hi {
            return Err(invalid(format!(
                "delta at {} is within {} sigma of the domain edge [{}, {})",
                self.center,
                EDGE_CLEARANCE_SIGMAS,
                grid.x0(),
                grid.x0() + grid.length()
            )));
        }
        Ok(())
    }

    /// Periodic sum of images, so that samples are smooth across the domain edge.
    pub fn periodic_value(&self, x: f64, length: f64) -> f64 {
        let reach = (12.0 * self.sigma / length).ceil() as i64;
        (-reach..=reach).map(|m| self.value(x - m as f64 * length)).sum()
    }

    pub fn periodic_derivative(&self, x: f64, length: f64) -> f64 {
        let reach = (12.0 * self.sigma / length).ceil() as i64;
        (-reach..=reach).map(|m| self.derivative(x - m as f64 * length)).sum()
    }
}

/// Samples of `g_σ` (periodized) on `grid`, after checking resolution and clearance.
pub fn gaussian_delta(grid: &UniformGrid1D, center: f64, sigma: f64) -> Result<Vec<f64>> {
    let d = RegularizedDelta::new(center, sigma)?;
    d.check_resolved(grid)?;
    let l = grid.length();
    Ok(grid.points().into_iter().map(|x| d.periodic_value(x, l)).collect())
}
