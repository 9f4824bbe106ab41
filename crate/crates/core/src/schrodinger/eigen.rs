//! Dense diagonalization of the periodic 1-D Hamiltonian.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::grid::UniformGrid1D;

use super::potential::PotentialSpec;
use super::wavefunction::{check_constants, WaveFunction1D};

/// Discretization of `−ħ²/2m ∂²`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KineticScheme {
    /// Three-point stencil, error `O(dx²)`.
    FiniteDifference2,
    /// Five-point stencil, error `O(dx⁴)`.
    #[default]
    FiniteDifference4,
    /// Fourier collocation; eigenvectors are stationary under the spectral split-step.
    Spectral,
}

#[derive(Clone, Debug)]
pub struct EnergySpectrum {
    /// Ascending eigenvalues.
    pub energies: Vec<f64>,
    /// Eigenvectors normalized to `∫|ψ|² = 1`, largest-magnitude sample positive.
    pub states: Vec<WaveFunction1D>,
}

pub fn hamiltonian_matrix(grid: &UniformGrid1D, v: &PotentialSpec, hbar: f64, mass: f64, scheme: KineticScheme) -> DMatrix<f64> {
    let n = grid.n();
    let h = grid.dx();
    let c = hbar * hbar / (2.0 * mass);
    let mut m = DMatrix::<f64>::zeros(n, n);
    let mut add = |i: usize, o: i64, w: f64| {
        let j = (i as i64 + o).rem_euclid(n as i64) as usize;
        m[(i, j)] += w;
    };
    for i in 0..n {
        match scheme {
            KineticScheme::FiniteDifference2 => {
                let w = c / (h * h);
                add(i, -1, -w);
                add(i, 0, 2.0 * w);
                add(i, 1, -w);
            }
            KineticScheme::FiniteDifference4 => {
                let w = c / (12.0 * h * h);
                add(i, -2, w);
                add(i, -1, -16.0 * w);
                add(i, 0, 30.0 * w);
                add(i, 1, -16.0 * w);
                add(i, 2, w);
            }
            KineticScheme::Spectral => {}
        }
    }
    if scheme == KineticScheme::Spectral {
        let ks = grid.wavenumbers();
        for i in 0..n {
            for j in 0..n {
                let d = (i as f64 - j as f64) * h;
                let s: f64 = ks.iter().map(|k| k * k * (k * d).cos()).sum();
                m[(i, j)] += c * s / n as f64;
            }
        }
    }
    for i in 0..n {
        m[(i, i)] += v.value(grid.point(i), mass);
    }
    m
}

/// Lowest `n_levels` eigenpairs of the periodic Hamiltonian.
pub fn eigensolve_1d(
    grid: &UniformGrid1D,
    v: &PotentialSpec,
    hbar: f64,
    mass: f64,
    n_levels: usize,
    scheme: KineticScheme,
) -> Result<EnergySpectrum> {
    check_constants(hbar, mass)?;
    v.validate()?;
    if n_levels == 0 || n_levels > grid.n() {
        return Err(invalid(format!("n_levels must be in 1..={}, got {n_levels}", grid.n())));
    }
    let h = hamiltonian_matrix(grid, v, hbar, mass, scheme);
    let eig = SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..grid.n()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let scale = 1.0 / grid.dx().sqrt();
    let mut energies = Vec::with_capacity(n_levels);
    let mut states = Vec::with_capacity(n_levels);
    for &c in order.iter().take(n_levels) {
        energies.push(eig.eigenvalues[c]);
        let col = eig.eigenvectors.column(c);
        let peak = col.iter().copied().fold(0.0f64, |a, b| if b.abs() > a.abs() { b } else { a });
        let sign = if peak < 0.0 { -1.0 } else { 1.0 };
        let samples = col.iter().map(|&x| Complex64::new(sign * scale * x, 0.0)).collect();
        states.push(WaveFunction1D::new(*grid, samples, hbar, mass)?);
    }
    Ok(EnergySpectrum { energies, states })
}
