use num_complex::Complex64;

use crate::derivative::spectral_derivative_1d;
use crate::error::{invalid, Result};
use crate::grid::UniformGrid1D;

use super::potential::PotentialSpec;

/// Sampled 1-D wavefunction with its physical constants.
#[derive(Clone, Debug, PartialEq)]
pub struct WaveFunction1D {
    grid: UniformGrid1D,
    samples: Vec<Complex64>,
    hbar: f64,
    mass: f64,
}

impl WaveFunction1D {
    pub fn new(grid: UniformGrid1D, samples: Vec<Complex64>, hbar: f64, mass: f64) -> Result<Self> {
        if samples.len() != grid.n() {
            return Err(invalid(format!("expected {} samples, got {}", grid.n(), samples.len())));
        }
        check_constants(hbar, mass)?;
        Ok(Self { grid, samples, hbar, mass })
    }

    pub fn from_fn(grid: UniformGrid1D, hbar: f64, mass: f64, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let samples = grid.points().into_iter().map(f).collect();
        Self::new(grid, samples, hbar, mass)
    }

    /// Normalized Gaussian packet `exp(−(x−x0)²/4s² + i k0 x)`, so `|ψ|²` has width `s`.
    pub fn gaussian_packet(grid: UniformGrid1D, x0: f64, width: f64, k0: f64, hbar: f64, mass: f64) -> Result<Self> {
        let psi = Self::from_fn(grid, hbar, mass, |x| {
            let a = (-(x - x0) * (x - x0) / (4.0 * width * width)).exp();
            Complex64::from_polar(a, k0 * x)
        })?;
        Ok(psi.normalized())
    }

    pub fn grid(&self) -> &UniformGrid1D {
        &self.grid
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn samples_mut(&mut self) -> &mut [Complex64] {
        &mut self.samples
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn norm_sq(&self) -> f64 {
        self.samples.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.dx()
    }

    pub fn normalized(mut self) -> Self {
        let s = 1.0 / self.norm_sq().sqrt();
        self.samples.iter_mut().for_each(|v| *v *= s);
        self
    }

    /// `⟨ψ|x|ψ⟩` by quadrature.
    pub fn expectation_x(&self) -> f64 {
        self.grid
            .points()
            .iter()
            .zip(&self.samples)
            .map(|(x, v)| x * v.norm_sqr())
            .sum::<f64>()
            * self.grid.dx()
    }

    /// `⟨ψ| −iħ ∂ |ψ⟩` with a spectral derivative.
    pub fn expectation_p(&self) -> Complex64 {
        let d = spectral_derivative_1d(&self.grid, &self.samples, 1);
        let s: Complex64 = self.samples.iter().zip(&d).map(|(a, b)| a.conj() * b).sum();
        Complex64::new(0.0, -self.hbar) * s * self.grid.dx()
    }

    /// `⟨ψ| −ħ²/2m ∂² + V |ψ⟩` with a spectral second derivative.
    pub fn expectation_h(&self, v: &PotentialSpec) -> Complex64 {
        let d2 = spectral_derivative_1d(&self.grid, &self.samples, 2);
        let c = -self.hbar * self.hbar / (2.0 * self.mass);
        let s: Complex64 = self
            .grid
            .points()
            .iter()
            .zip(self.samples.iter().zip(&d2))
            .map(|(&x, (a, b))| a.conj() * (b * c + a * v.value(x, self.mass)))
            .sum();
        s * self.grid.dx()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

pub(crate) fn check_constants(hbar: f64, mass: f64) -> Result<()> {
    if !(hbar > 0.0 && hbar.is_finite()) {
        return Err(invalid(format!("hbar must be positive, got {hbar}")));
    }
    if !(mass > 0.0 && mass.is_finite()) {
        return Err(invalid(format!("mass must be positive, got {mass}")));
    }
    Ok(())
}
