use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::delta::{RegularizedDelta, MIN_SIGMA_OVER_DX};
use crate::error::{invalid, Result};
use crate::grid::UniformGrid1D;

use super::density::DensityField;

/// Parameters of the non-spreading family `g_σ(x_S − x0 − ħk0 t/m) e^{−i k0 x_D}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalizedParams {
    pub x0: f64,
    pub k0: f64,
    pub sigma: f64,
    pub hbar: f64,
    pub mass: f64,
}

impl LocalizedParams {
    pub fn velocity(&self) -> f64 {
        self.hbar * self.k0 / self.mass
    }
}

/// Member of the family at time `t`; the profile is periodized over the x_S domain.
///
/// The field is an exact free solution for any profile. On a periodic x_D grid the
/// plane-wave factor is only representable when `k0·L_D/2π` is an integer.
pub fn localized_solution(grid_s: &UniformGrid1D, grid_d: &UniformGrid1D, p: &LocalizedParams, t: f64) -> Result<DensityField> {
    let g = RegularizedDelta::new(p.x0 + p.velocity() * t, p.sigma)?;
    if p.sigma < MIN_SIGMA_OVER_DX * grid_s.dx() {
        return Err(invalid(format!("under-resolved profile: sigma = {} < dx = {}", p.sigma, grid_s.dx())));
    }
    let l = grid_s.length();
    DensityField::from_fn(*grid_s, *grid_d, p.hbar, p.mass, |s, d| {
        Complex64::from_polar(g.periodic_value(s, l), -p.k0 * d)
    })
}

/// Whether `e^{−i k0 x_D}` is periodic on `grid_d`.
pub fn plane_wave_fits(grid_d: &UniformGrid1D, k0: f64) -> bool {
    let m = k0 / grid_d.dk();
    (m - m.round()).abs() < 1e-9
}
