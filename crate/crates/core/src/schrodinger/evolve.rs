//! Strang split-step propagation of the density field and of a wavefunction.

use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::fft::FftNd;

use super::density::DensityField;
use super::potential::PotentialSpec;
use super::wavefunction::WaveFunction1D;

/// Reusable Strang stepper for `iħ ∂_t φ = (ħ²/m) ∂_S ∂_D φ + [V(x) − V(y)] φ`.
///
/// One step applies the potential half-step, the exact kinetic step
/// `exp(i dt ħ q_S q_D / m)` per Fourier mode `(q_S, q_D)`, and the potential half-step.
/// `V` is evaluated at `x_S ∓ x_D/2` wrapped into the x_S domain.
#[derive(Debug)]
pub struct DmStepper {
    plan: FftNd,
    kinetic: Vec<Complex64>,
    potential_half: Option<Vec<Complex64>>,
}

impl DmStepper {
    pub fn new(template: &DensityField, v: &PotentialSpec, dt: f64) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(invalid(format!("time step must be positive, got {dt}")));
        }
        v.validate()?;
        let (gs, gd) = (*template.grid_s(), *template.grid_d());
        let (hbar, mass) = (template.hbar(), template.mass());
        let (ns, nd) = (gs.n(), gd.n());
        let c = dt * hbar / mass;
        let mut kinetic = Vec::with_capacity(ns * nd);
        for fs in 0..ns {
            let qs = gs.wavenumber(fs);
            for fd in 0..nd {
                // The x_S Nyquist row is its own mirror image, so a non-real multiplier
                // there would break x_D-reflection hermiticity; it is left unpropagated.
                let m = if fs == ns / 2 { Complex64::new(1.0, 0.0) } else { Complex64::from_polar(1.0, c * qs * gd.wavenumber(fd)) };
                kinetic.push(m);
            }
        }
        let potential_half = if v.is_zero() {
            None
        } else {
            let mut w = Vec::with_capacity(ns * nd);
            for i in 0..ns {
                let s = gs.point(i);
                for j in 0..nd {
                    let d = gd.point(j);
                    let vx = v.value(gs.wrap(s - 0.5 * d), mass);
                    let vy = v.value(gs.wrap(s + 0.5 * d), mass);
                    w.push(Complex64::from_polar(1.0, -0.5 * dt / hbar * (vx - vy)));
                }
            }
            Some(w)
        };
        Ok(Self { plan: FftNd::new(&[ns, nd]), kinetic, potential_half })
    }

    pub fn step(&self, phi: &mut DensityField) {
        let data = phi.field_mut().samples_mut();
        assert_eq!(data.len(), self.kinetic.len(), "stepper built for a different grid");
        if let Some(w) = &self.potential_half {
            data.iter_mut().zip(w).for_each(|(a, b)| *a *= b);
        }
        self.plan.forward(data);
        data.iter_mut().zip(&self.kinetic).for_each(|(a, b)| *a *= b);
        self.plan.inverse_normalized(data);
        if let Some(w) = &self.potential_half {
            data.iter_mut().zip(w).for_each(|(a, b)| *a *= b);
        }
    }

    pub fn advance(&self, phi: &mut DensityField, steps: usize) {
        for _ in 0..steps {
            self.step(phi);
        }
    }
}

/// `steps` Strang steps of size `dt` from `phi`.
pub fn evolve_dm(phi: &DensityField, v: &PotentialSpec, dt: f64, steps: usize) -> Result<DensityField> {
    let stepper = DmStepper::new(phi, v, dt)?;
    let mut out = phi.clone();
    stepper.advance(&mut out, steps);
    Ok(out)
}

/// Strang stepper for `iħ ∂_t ψ = −ħ²/2m ∂²ψ + V ψ`; the reference path for lifted fields.
#[derive(Debug)]
pub struct PureStepper {
    plan: FftNd,
    kinetic: Vec<Complex64>,
    potential_half: Vec<Complex64>,
}

impl PureStepper {
    pub fn new(template: &WaveFunction1D, v: &PotentialSpec, dt: f64) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(invalid(format!("time step must be positive, got {dt}")));
        }
        v.validate()?;
        let g = *template.grid();
        let (hbar, mass) = (template.hbar(), template.mass());
        let kinetic = g
            .wavenumbers()
            .iter()
            .map(|k| Complex64::from_polar(1.0, -dt * hbar * k * k / (2.0 * mass)))
            .collect();
        let potential_half = g
            .points()
            .iter()
            .map(|&x| Complex64::from_polar(1.0, -0.5 * dt / hbar * v.value(x, mass)))
            .collect();
        Ok(Self { plan: FftNd::new(&[g.n()]), kinetic, potential_half })
    }

    pub fn step(&self, psi: &mut WaveFunction1D) {
        let data = psi.samples_mut();
        data.iter_mut().zip(&self.potential_half).for_each(|(a, b)| *a *= b);
        self.plan.forward(data);
        data.iter_mut().zip(&self.kinetic).for_each(|(a, b)| *a *= b);
        self.plan.inverse_normalized(data);
        data.iter_mut().zip(&self.potential_half).for_each(|(a, b)| *a *= b);
    }

    pub fn advance(&self, psi: &mut WaveFunction1D, steps: usize) {
        for _ in 0..steps {
            self.step(psi);
        }
    }
}

pub fn evolve_pure(psi: &WaveFunction1D, v: &PotentialSpec, dt: f64, steps: usize) -> Result<WaveFunction1D> {
    let stepper = PureStepper::new(psi, v, dt)?;
    let mut out = psi.clone();
    stepper.advance(&mut out, steps);
    Ok(out)
}
