//! Two-point matrix field reduced to the z axis, sampled in (x, y) = (z_x, z_y).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::UniformGrid1D;

use super::basis::{dirac_basis, max_entry, Mat4, Spinor};
use super::conjugation::conjugate_matrix;

/// `φ(z_x, z_y)` on an `n × n` periodic grid, row index `z_x`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedMatrixField {
    grid: UniformGrid1D,
    samples: Vec<Mat4>,
    mass: f64,
}

impl ReducedMatrixField {
    pub fn new(grid: UniformGrid1D, samples: Vec<Mat4>, mass: f64) -> Result<Self> {
        if samples.len() != grid.n() * grid.n() {
            return Err(Error::GridMismatch(format!("{} samples for a {}² grid", samples.len(), grid.n())));
        }
        Ok(Self { grid, samples, mass })
    }

    pub fn from_fn(grid: UniformGrid1D, mass: f64, f: impl Fn(f64, f64) -> Mat4) -> Self {
        let n = grid.n();
        let samples = (0..n * n).map(|i| f(grid.point(i / n), grid.point(i % n))).collect();
        Self { grid, samples, mass }
    }

    /// `ψ(z_x) ψ†(z_y)`.
    pub fn lift(grid: UniformGrid1D, psi: &[Spinor], mass: f64) -> Result<Self> {
        if psi.len() != grid.n() {
            return Err(Error::GridMismatch("spinor length does not match grid".into()));
        }
        let n = grid.n();
        let samples = (0..n * n).map(|i| psi[i / n] * psi[i % n].adjoint()).collect();
        Ok(Self { grid, samples, mass })
    }

    pub fn grid(&self) -> &UniformGrid1D {
        &self.grid
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn samples(&self) -> &[Mat4] {
        &self.samples
    }

    pub fn samples_mut(&mut self) -> &mut [Mat4] {
        &mut self.samples
    }

    pub fn get(&self, a: usize, b: usize) -> Mat4 {
        self.samples[a * self.grid.n() + b]
    }

    pub fn diagonal(&self) -> Vec<Mat4> {
        (0..self.grid.n()).map(|a| self.get(a, a)).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().map(max_entry).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.samples.iter().zip(&other.samples).map(|(a, b)| max_entry(&(a - b))).fold(0.0, f64::max)
    }

    /// `max ‖φ(y, x) − φ†(x, y)‖`.
    pub fn hermiticity_swap_defect(&self) -> f64 {
        let n = self.grid.n();
        let mut w: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                w = w.max(max_entry(&(self.get(b, a) - self.get(a, b).adjoint())));
            }
        }
        w
    }

    /// `e^{i[θ(z_x) − θ(z_y)]} φ`; the diagonal is untouched.
    pub fn gauge_phase(&self, theta: &[f64]) -> Result<Self> {
        let n = self.grid.n();
        if theta.len() != n {
            return Err(Error::GridMismatch("gauge function length does not match grid".into()));
        }
        let samples = (0..n * n)
            .map(|i| self.samples[i] * Complex64::from_polar(1.0, theta[i / n] - theta[i % n]))
            .collect();
        Ok(Self { grid: self.grid, samples, mass: self.mass })
    }

    /// `+γ² φᵀ(y, x) γ²`.
    pub fn charge_conjugate(&self) -> Self {
        let n = self.grid.n();
        let samples = (0..n * n).map(|i| conjugate_matrix(&self.get(i % n, i / n))).collect();
        Self { grid: self.grid, samples, mass: self.mass }
    }

    /// `J^μ(z) = Tr(φ(z, z) γ⁰γ^μ)` times `e`, real parts.
    pub fn current(&self, e: f64) -> [Vec<f64>; 4] {
        let b = dirac_basis();
        let ops = [Mat4::identity(), b.alpha[0], b.alpha[1], b.alpha[2]];
        let d = self.diagonal();
        [0, 1, 2, 3].map(|mu| d.iter().map(|m| e * (m * ops[mu]).trace().re).collect())
    }

    /// `∫ Tr φ(z, z) dz`.
    pub fn charge(&self) -> f64 {
        self.diagonal().iter().map(|m| m.trace().re).sum::<f64>() * self.grid.dx()
    }
}
