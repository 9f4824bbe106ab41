//! Fourier-space operations on x_D-independent matrix fields.
//!
//! Every free flow of an x_D-independent field is a per-mode two-sided product
//! `φ̂ → e^{−iXt} φ̂ e^{−iYt}` with `X, Y` linear in `α·k` and `β`, so propagation in
//! `t_S` or `t_D` is exact.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::fft::FftNd;
use crate::grid::Lattice;

use super::basis::{alpha_dot, dirac_basis, mode_exp, Mat4};
use super::field::MatrixField;

/// Unnormalized forward FFT of all 16 components.
pub(crate) fn forward(lattice: &Lattice, samples: &[Mat4]) -> Vec<Mat4> {
    transform(lattice, samples, true)
}

/// Inverse FFT divided by the point count.
pub(crate) fn inverse(lattice: &Lattice, spectrum: &[Mat4]) -> Vec<Mat4> {
    transform(lattice, spectrum, false)
}

fn transform(lattice: &Lattice, data: &[Mat4], fwd: bool) -> Vec<Mat4> {
    let plan = FftNd::new(&lattice.shape());
    let n = data.len();
    let channels: Vec<Vec<Complex64>> = (0..16)
        .into_par_iter()
        .map(|ch| {
            let (r, c) = (ch / 4, ch % 4);
            let mut buf: Vec<Complex64> = data.iter().map(|m| m[(r, c)]).collect();
            if fwd {
                plan.forward(&mut buf);
            } else {
                plan.inverse_normalized(&mut buf);
            }
            buf
        })
        .collect();
    (0..n)
        .map(|i| Mat4::from_fn(|r, c| channels[r * 4 + c][i]))
        .collect()
}

/// Wavevector of FFT bin `idx` with Nyquist components zeroed, as used by odd-order operators.
pub(crate) fn odd_wavevector(lattice: &Lattice, idx: usize) -> [f64; 3] {
    let m = lattice.unravel(idx);
    let mut k = [0.0; 3];
    for (a, g) in lattice.axes().iter().enumerate() {
        if m[a] != g.n() / 2 {
            k[a] = g.wavenumber(m[a]);
        }
    }
    k
}

/// Spectral `∂_k φ` for `k = 1, 2, 3`.
pub fn gradient(field: &MatrixField) -> [Vec<Mat4>; 3] {
    let lat = field.lattice();
    let spec = forward(lat, field.samples());
    [0, 1, 2].map(|a| {
        let d: Vec<Mat4> = spec
            .iter()
            .enumerate()
            .map(|(i, m)| m * Complex64::new(0.0, odd_wavevector(lat, i)[a]))
            .collect();
        inverse(lat, &d)
    })
}

fn two_sided(field: &MatrixField, left: impl Fn([f64; 3]) -> Mat4 + Sync, right: impl Fn([f64; 3]) -> Mat4 + Sync) -> MatrixField {
    let lat = field.lattice();
    let spec = forward(lat, field.samples());
    let out: Vec<Mat4> = spec
        .par_iter()
        .enumerate()
        .map(|(i, m)| {
            let k = odd_wavevector(lat, i);
            left(k) * m * right(k)
        })
        .collect();
    field.with_samples(inverse(lat, &out))
}

/// Exact flow in the time-difference coordinate:
/// `φ̂(t_D) = e^{−iL t_D} φ̂ e^{−iR t_D}`, `L = −α·k/4 − mβ/2`, `R = α·k/4 − mβ/2`.
pub fn propagate_td(field: &MatrixField, t_d: f64) -> MatrixField {
    if t_d == 0.0 {
        return field.clone();
    }
    let m = field.mass();
    two_sided(
        field,
        |k| mode_exp([-0.25 * k[0], -0.25 * k[1], -0.25 * k[2]], -0.5 * m, t_d),
        |k| mode_exp([0.25 * k[0], 0.25 * k[1], 0.25 * k[2]], -0.5 * m, t_d),
    )
}

/// `∂φ/∂t_D = −i(Lφ + φR)` evaluated spectrally.
pub fn td_derivative(field: &MatrixField) -> MatrixField {
    let m = field.mass();
    let beta = dirac_basis().beta;
    let lat = field.lattice();
    let spec = forward(lat, field.samples());
    let out: Vec<Mat4> = spec
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let k = odd_wavevector(lat, i);
            let ak = alpha_dot(k) * Complex64::from(0.25);
            let hb = beta * Complex64::from(0.5 * m);
            let l = -ak - hb;
            let r = ak - hb;
            (l * f + f * r) * Complex64::new(0.0, -1.0)
        })
        .collect();
    field.with_samples(inverse(lat, &out))
}

/// Exact free evolution in `t_S` (the equal-time equation) of an x_D-independent field:
/// `φ̂(t) = e^{−iAt} φ̂ e^{−iBt}`, `A = α·k/2 + mβ`, `B = α·k/2 − mβ`.
pub fn evolve_free(field: &MatrixField, t: f64) -> MatrixField {
    if t == 0.0 {
        return field.clone();
    }
    let m = field.mass();
    two_sided(
        field,
        |k| mode_exp([0.5 * k[0], 0.5 * k[1], 0.5 * k[2]], m, t),
        |k| mode_exp([0.5 * k[0], 0.5 * k[1], 0.5 * k[2]], -m, t),
    )
}

/// Continuous family `φ0(x_S, t_D)` generated from an x_D-independent field.
///
/// Grid slices use the FFT; arbitrary points use the trigonometric interpolant, whose
/// every mode is an exact solution, so derivatives of the interpolant satisfy the
/// equations of motion to rounding.
#[derive(Clone, Debug)]
pub struct TdFamily {
    base: MatrixField,
    modes: Vec<Mode>,
}

#[derive(Clone, Debug)]
struct Mode {
    idx: [usize; 3],
    lam: f64,
    // Precomputed products with the unit generators L/λ and R/λ.
    f: Mat4,
    lf: Mat4,
    fr: Mat4,
    lfr: Mat4,
}

impl TdFamily {
    pub fn new(base: &MatrixField) -> Self {
        let lat = base.lattice();
        let n = lat.len() as f64;
        let m = base.mass();
        let beta = dirac_basis().beta;
        let spec = forward(lat, base.samples());
        let cutoff = 1e-18 * spec.iter().map(super::basis::max_entry).fold(0.0, f64::max);
        let modes = spec
            .iter()
            .enumerate()
            .filter(|(_, f)| super::basis::max_entry(f) > cutoff)
            .map(|(i, f)| {
                let f = f / Complex64::from(n);
                let k = odd_wavevector(lat, i);
                let ak = alpha_dot(k) * Complex64::from(0.25);
                let hb = beta * Complex64::from(0.5 * m);
                let lam = ((k[0] * k[0] + k[1] * k[1] + k[2] * k[2]) / 16.0 + 0.25 * m * m).sqrt();
                let l = (-ak - hb) / Complex64::from(lam);
                let r = (ak - hb) / Complex64::from(lam);
                let lf = l * f;
                let fr = f * r;
                let lfr = lf * r;
                let u = lat.unravel(i);
                Mode { idx: u, lam, f, lf, fr, lfr }
            })
            .collect();
        Self { base: base.clone(), modes }
    }

    pub fn base(&self) -> &MatrixField {
        &self.base
    }

    pub fn mass(&self) -> f64 {
        self.base.mass()
    }

    /// Grid slice at `t_D`.
    pub fn at(&self, t_d: f64) -> MatrixField {
        propagate_td(&self.base, t_d)
    }

    /// `φ0(x_S, t_D)` at an arbitrary point.
    pub fn eval(&self, x_s: [f64; 3], t_d: f64) -> Mat4 {
        let lat = self.base.lattice();
        let w: Vec<Vec<Complex64>> = lat
            .axes()
            .iter()
            .enumerate()
            .map(|(a, g)| {
                (0..g.n())
                    .map(|f| crate::field2d::shift_factor(g, f, x_s[a] - g.x0()))
                    .collect()
            })
            .collect();
        let mut acc = Mat4::zeros();
        for md in &self.modes {
            let ph = w[0][md.idx[0]] * w[1][md.idx[1]] * w[2][md.idx[2]];
            let (s, c) = (md.lam * t_d).sin_cos();
            // (c − i s L̂) f (c − i s R̂)
            let term = md.f * Complex64::from(c * c) - (md.lf + md.fr) * Complex64::new(0.0, s * c) - md.lfr * Complex64::from(s * s);
            acc += term * ph;
        }
        acc
    }
}

/// Spectral gradient of a spinor field.
pub(crate) fn spinor_gradient(lattice: &Lattice, samples: &[super::basis::Spinor]) -> [Vec<super::basis::Spinor>; 3] {
    let plan = FftNd::new(&lattice.shape());
    let chans: Vec<Vec<Complex64>> = (0..4)
        .map(|c| {
            let mut b: Vec<Complex64> = samples.iter().map(|s| s[c]).collect();
            plan.forward(&mut b);
            b
        })
        .collect();
    [0, 1, 2].map(|a| {
        let d: Vec<Vec<Complex64>> = chans
            .iter()
            .map(|ch| {
                let mut b: Vec<Complex64> = ch
                    .iter()
                    .enumerate()
                    .map(|(i, v)| v * Complex64::new(0.0, odd_wavevector(lattice, i)[a]))
                    .collect();
                plan.inverse_normalized(&mut b);
                b
            })
            .collect();
        (0..samples.len())
            .map(|i| super::basis::Spinor::new(d[0][i], d[1][i], d[2][i], d[3][i]))
            .collect()
    })
}
