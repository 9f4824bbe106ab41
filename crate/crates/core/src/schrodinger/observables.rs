//! Slice functionals: charge-like quadratures of φ and its x_D-derivatives at `x_D = 0`.
//!
//! `Q = ∫ x_S φ|₀`, `P = iħ ∫ ∂_D φ|₀`, `E = ∫ [−ħ²/2m ∂²_D φ + V(x_S) φ]|₀`.
//! The momentum-space forms read `Φ(k_S, k_D = 0)` instead.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::derivative::{fd4_first, fd4_second, spectral_multiplier, DerivativeMode};
use crate::error::{invalid, Error, Result};
use crate::fft::FftNd;
use crate::field2d::{ComplexScalarField2D, Coords};

use super::density::DensityField;
use super::potential::PotentialSpec;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchrodingerObservables {
    pub q: f64,
    pub p: f64,
    pub e: f64,
    /// Imaginary parts of (Q, P, E); zero up to rounding for hermitian fields.
    pub imag: [f64; 3],
}

/// x_D-derivative of order `order` at `x_D = 0`, one value per x_S line.
pub fn d_derivative_at_slice(phi: &DensityField, order: u32, mode: DerivativeMode) -> Vec<Complex64> {
    let gd = *phi.grid_d();
    let nd = gd.n();
    let j0 = phi.zero_d_index();
    let ns = phi.grid_s().n();
    match mode {
        DerivativeMode::FiniteDifference4 => (0..ns)
            .map(|i| {
                let line = phi.d_line(i);
                match order {
                    0 => line[j0],
                    1 => fd4_first(line, j0, gd.dx()),
                    2 => fd4_second(line, j0, gd.dx()),
                    _ => panic!("finite-difference mode supports orders 0..=2"),
                }
            })
            .collect(),
        DerivativeMode::Spectral => {
            let plan = FftNd::new(&[nd]);
            let kernel: Vec<Complex64> = (0..nd)
                .map(|f| {
                    let k = gd.wavenumber(f);
                    spectral_multiplier(&gd, f, order) * Complex64::from_polar(1.0, -k * gd.x0()) / nd as f64
                })
                .collect();
            let mut buf = vec![Complex64::new(0.0, 0.0); nd];
            (0..ns)
                .map(|i| {
                    buf.copy_from_slice(phi.d_line(i));
                    plan.forward(&mut buf);
                    buf.iter().zip(&kernel).map(|(a, b)| a * b).sum()
                })
                .collect()
        }
    }
}

pub fn observable_q(phi: &DensityField) -> Complex64 {
    let gs = phi.grid_s();
    let diag = phi.diagonal();
    diag.iter().enumerate().map(|(i, v)| v * gs.point(i)).sum::<Complex64>() * gs.dx()
}

pub fn observable_p(phi: &DensityField, mode: DerivativeMode) -> Complex64 {
    let d1 = d_derivative_at_slice(phi, 1, mode);
    Complex64::new(0.0, phi.hbar()) * d1.iter().sum::<Complex64>() * phi.grid_s().dx()
}

pub fn observable_e(phi: &DensityField, v: &PotentialSpec, mode: DerivativeMode) -> Complex64 {
    let gs = phi.grid_s();
    let d2 = d_derivative_at_slice(phi, 2, mode);
    let diag = phi.diagonal();
    let c = -phi.hbar() * phi.hbar() / (2.0 * phi.mass());
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..gs.n() {
        acc += d2[i] * c + diag[i] * v.value(gs.point(i), phi.mass());
    }
    acc * gs.dx()
}

/// Total norm `∫ φ(x_S, 0) dx_S`.
pub fn observable_norm(phi: &DensityField) -> Complex64 {
    phi.diagonal().iter().sum::<Complex64>() * phi.grid_s().dx()
}

pub fn observables(phi: &DensityField, v: &PotentialSpec, mode: DerivativeMode) -> SchrodingerObservables {
    let q = observable_q(phi);
    let p = observable_p(phi, mode);
    let e = observable_e(phi, v, mode);
    SchrodingerObservables { q: q.re, p: p.re, e: e.re, imag: [q.im, p.im, e.im] }
}

/// `P = ∫ ħ k_S Φ(k_S, 0) dk_S` on a `KSd` field.
pub fn observable_p_momentum(phi_k: &ComplexScalarField2D, hbar: f64) -> Result<Complex64> {
    phi_k.expect_coords(Coords::KSd)?;
    let (gk, gkd) = (phi_k.grid_s(), phi_k.grid_d());
    let j0 = gkd.zero_index().ok_or_else(|| invalid("k_D grid lacks k_D = 0"))?;
    Ok((0..gk.n()).map(|i| phi_k.get(i, j0) * (hbar * gk.point(i))).sum::<Complex64>() * gk.dx())
}

/// `E = ∫ (ħk_S)²/2m Φ(k_S, 0) dk_S`, the free-field form; any nonzero potential is rejected.
pub fn observable_e_momentum(phi_k: &ComplexScalarField2D, hbar: f64, mass: f64, v: &PotentialSpec) -> Result<Complex64> {
    if !v.is_zero() {
        return Err(Error::Unsupported("momentum-space energy is the free-field form; V must be zero".into()));
    }
    phi_k.expect_coords(Coords::KSd)?;
    let (gk, gkd) = (phi_k.grid_s(), phi_k.grid_d());
    let j0 = gkd.zero_index().ok_or_else(|| invalid("k_D grid lacks k_D = 0"))?;
    Ok((0..gk.n())
        .map(|i| {
            let p = hbar * gk.point(i);
            phi_k.get(i, j0) * (p * p / (2.0 * mass))
        })
        .sum::<Complex64>()
        * gk.dx())
}

/// `P = ∫ ħ k Φ(k, k) dk` on a `KXy` field: the diagonal `k_x = k_y` is `k_D = 0`.
pub fn observable_p_momentum_xy(phi_k: &ComplexScalarField2D, hbar: f64) -> Result<Complex64> {
    phi_k.expect_coords(Coords::KXy)?;
    let g = phi_k.grid_s();
    if !g.same_as(phi_k.grid_d()) {
        return Err(invalid("k_x and k_y grids must coincide"));
    }
    Ok((0..g.n()).map(|i| phi_k.get(i, i) * (hbar * g.point(i))).sum::<Complex64>() * g.dx())
}
