//! Position and momentum generators acting on the two-point field.
//!
//! On `φ(x, y)` position acts as `(x − y)` and momentum as `−iħ(∂_x + ∂_y)`. In SD
//! coordinates these are multiplication by `−x_D` and `−iħ ∂_S`, which commute.

use num_complex::Complex64;

use crate::derivative::{spectral_derivative, spectral_derivative_1d};
use crate::field2d::shift_factor;
use crate::fft::FftNd;

use super::density::DensityField;
use super::wavefunction::WaveFunction1D;

pub fn apply_q_gen(phi: &DensityField) -> DensityField {
    let mut out = phi.clone();
    let gd = *phi.grid_d();
    let nd = gd.n();
    for (idx, v) in out.field_mut().samples_mut().iter_mut().enumerate() {
        *v *= -gd.point(idx % nd);
    }
    out
}

pub fn apply_p_gen(phi: &DensityField) -> DensityField {
    let d = spectral_derivative(phi.field(), 0, 1);
    let mut out = phi.clone();
    let c = Complex64::new(0.0, -phi.hbar());
    for (a, b) in out.field_mut().samples_mut().iter_mut().zip(d.samples()) {
        *a = b * c;
    }
    out
}

/// `max |(QP − PQ) φ|`.
pub fn commutator_defect(phi: &DensityField) -> f64 {
    let qp = apply_q_gen(&apply_p_gen(phi));
    let pq = apply_p_gen(&apply_q_gen(phi));
    qp.max_abs_diff(&pq)
}

/// `exp(i Δx P/ħ) φ = φ(x_S + Δx, x_D)`, applied spectrally along x_S.
pub fn translate(phi: &DensityField, dx: f64) -> DensityField {
    let gs = *phi.grid_s();
    let shape = phi.field().shape();
    let plan = FftNd::new(&shape);
    let mut out = phi.clone();
    let data = out.field_mut().samples_mut();
    plan.forward_axis(data, 0);
    let w: Vec<Complex64> = (0..gs.n()).map(|f| shift_factor(&gs, f, dx)).collect();
    crate::field2d::scale_axis(data, &shape, 0, &w);
    plan.inverse_axis(data, 0);
    let s = 1.0 / gs.n() as f64;
    data.iter_mut().for_each(|v| *v *= s);
    out
}

/// `max |([Q, P] − iħ) ψ|` in the wavefunction representation, `Q = x`, `P = −iħ∂`.
pub fn pure_commutator_residual(psi: &WaveFunction1D) -> f64 {
    let g = psi.grid();
    let x = g.points();
    let hbar = psi.hbar();
    let mi = Complex64::new(0.0, -hbar);
    let s = psi.samples();
    let p_psi: Vec<Complex64> = spectral_derivative_1d(g, s, 1).into_iter().map(|v| v * mi).collect();
    let q_p_psi: Vec<Complex64> = p_psi.iter().zip(&x).map(|(v, x)| v * x).collect();
    let q_psi: Vec<Complex64> = s.iter().zip(&x).map(|(v, x)| v * x).collect();
    let p_q_psi: Vec<Complex64> = spectral_derivative_1d(g, &q_psi, 1).into_iter().map(|v| v * mi).collect();
    let ih = Complex64::new(0.0, hbar);
    q_p_psi
        .iter()
        .zip(&p_q_psi)
        .zip(s)
        .map(|((a, b), v)| (a - b - ih * v).norm())
        .fold(0.0, f64::max)
}
