//! Slice functionals of the matrix field at `x_D = 0`, `t_D = 0`.
//!
//! `J^μ = Tr(φ γ⁰γ^μ)`, `ℰ = Tr(i α_k ∂_{D,k}φ + m β φ)`, `𝒫_i = i Tr ∂_{D,i}φ`,
//! `𝒮_i = ½ Tr(Σ_i φ)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fft::FftNd;
use crate::grid::Lattice;

use super::basis::{dirac_basis, Mat4};
use super::field::MatrixField;
use super::spectral::odd_wavevector;

/// Field value and x_D-gradient on the `x_D = 0` surface.
#[derive(Clone, Debug)]
pub struct SliceData {
    pub lattice: Lattice,
    pub mass: f64,
    pub value: Vec<Mat4>,
    /// `∂φ/∂x_{D,k}` at `x_D = 0`.
    pub d_grad: [Vec<Mat4>; 3],
}

impl SliceData {
    /// Slice of an x_D-independent field: the gradient vanishes identically.
    pub fn from_static(field: &MatrixField) -> Self {
        let n = field.samples().len();
        Self {
            lattice: field.lattice().clone(),
            mass: field.mass(),
            value: field.samples().to_vec(),
            d_grad: [vec![Mat4::zeros(); n], vec![Mat4::zeros(); n], vec![Mat4::zeros(); n]],
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let d = |a: &[Mat4], b: &[Mat4]| a.iter().zip(b).map(|(x, y)| super::basis::max_entry(&(x - y))).fold(0.0, f64::max);
        let mut w = d(&self.value, &other.value);
        for k in 0..3 {
            w = w.max(d(&self.d_grad[k], &other.d_grad[k]));
        }
        w
    }
}

/// Anything that can supply the data observables need.
pub trait SliceSource {
    fn slice(&self) -> Result<SliceData>;
}

impl SliceSource for MatrixField {
    fn slice(&self) -> Result<SliceData> {
        Ok(SliceData::from_static(self))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DiracObservables {
    pub q: f64,
    pub e: f64,
    pub p: [f64; 3],
    pub s: [f64; 3],
    /// Largest imaginary part among the integrated quantities.
    pub imag: f64,
}

/// `J^μ(x)` on the slice lattice.
#[derive(Clone, Debug)]
pub struct FourCurrentField {
    pub lattice: Lattice,
    pub j: [Vec<f64>; 4],
    pub imag: f64,
}

impl FourCurrentField {
    pub fn integral(&self) -> [f64; 4] {
        let dv = self.lattice.cell_volume();
        [0, 1, 2, 3].map(|m| self.j[m].iter().sum::<f64>() * dv)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (0..4)
            .flat_map(|m| self.j[m].iter().zip(&other.j[m]).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.j.iter().flatten().fold(0.0f64, |a, b| a.max(b.abs()))
    }
}

pub fn current_j(slice: &SliceData) -> FourCurrentField {
    let b = dirac_basis();
    let ops = [Mat4::identity(), b.alpha[0], b.alpha[1], b.alpha[2]];
    let mut imag: f64 = 0.0;
    let j = [0, 1, 2, 3].map(|mu| {
        slice
            .value
            .iter()
            .map(|phi| {
                let t = (phi * ops[mu]).trace();
                imag = imag.max(t.im.abs());
                t.re
            })
            .collect()
    });
    FourCurrentField { lattice: slice.lattice.clone(), j, imag }
}

fn integrate(slice: &SliceData, f: impl Fn(usize) -> Complex64) -> Complex64 {
    (0..slice.value.len()).map(f).sum::<Complex64>() * slice.lattice.cell_volume()
}

pub fn charge_q(slice: &SliceData) -> Complex64 {
    integrate(slice, |i| slice.value[i].trace())
}

pub fn energy_e(slice: &SliceData) -> Complex64 {
    let b = dirac_basis();
    let i1 = Complex64::new(0.0, 1.0);
    integrate(slice, |i| {
        let mut t = (b.beta * slice.value[i]).trace() * slice.mass;
        for k in 0..3 {
            t += i1 * (b.alpha[k] * slice.d_grad[k][i]).trace();
        }
        t
    })
}

pub fn momentum_p(slice: &SliceData) -> [Complex64; 3] {
    let i1 = Complex64::new(0.0, 1.0);
    [0, 1, 2].map(|k| integrate(slice, |i| i1 * slice.d_grad[k][i].trace()))
}

pub fn spin_s(slice: &SliceData) -> [Complex64; 3] {
    let b = dirac_basis();
    [0, 1, 2].map(|k| integrate(slice, |i| (b.sigma[k] * slice.value[i]).trace() * 0.5))
}

/// Orbital part `∫ x × 𝒫` of the angular momentum.
pub fn orbital_l(slice: &SliceData) -> [Complex64; 3] {
    let i1 = Complex64::new(0.0, 1.0);
    let pd = |k: usize, i: usize| i1 * slice.d_grad[k][i].trace();
    [0, 1, 2].map(|k| {
        let (a, b) = ((k + 1) % 3, (k + 2) % 3);
        integrate(slice, |i| {
            let x = slice.lattice.position(i);
            pd(b, i) * x[a] - pd(a, i) * x[b]
        })
    })
}

pub fn observables(slice: &SliceData) -> DiracObservables {
    let q = charge_q(slice);
    let e = energy_e(slice);
    let p = momentum_p(slice);
    let s = spin_s(slice);
    let imag = [q, e, p[0], p[1], p[2], s[0], s[1], s[2]].iter().map(|v| v.im.abs()).fold(0.0, f64::max);
    DiracObservables { q: q.re, e: e.re, p: p.map(|v| v.re), s: s.map(|v| v.re), imag }
}

/// Spectral `∇·(J¹, J², J³)` of a current field.
pub fn divergence(current: &FourCurrentField) -> Vec<f64> {
    let lat = &current.lattice;
    let plan = FftNd::new(&lat.shape());
    let mut acc = vec![Complex64::new(0.0, 0.0); lat.len()];
    for a in 0..3 {
        let mut buf: Vec<Complex64> = current.j[a + 1].iter().map(|&v| Complex64::from(v)).collect();
        plan.forward(&mut buf);
        for (i, (dst, v)) in acc.iter_mut().zip(&buf).enumerate() {
            *dst += v * Complex64::new(0.0, odd_wavevector(lat, i)[a]);
        }
    }
    plan.inverse_normalized(&mut acc);
    acc.into_iter().map(|v| v.re).collect()
}

/// `max |∂_t J⁰ + ∇·J|` at the middle of five snapshots spaced `dt` apart
/// (fourth-order central difference in time).
pub fn continuity_defect(snapshots: &[FourCurrentField], dt: f64) -> Result<f64> {
    if snapshots.len() != 5 {
        return Err(Error::InvalidParameter(format!("need 5 snapshots, got {}", snapshots.len())));
    }
    let lat = &snapshots[2].lattice;
    if !snapshots.iter().all(|s| s.lattice.same_as(lat)) {
        return Err(Error::GridMismatch("snapshots on different lattices".into()));
    }
    let div = divergence(&snapshots[2]);
    let j0 = |k: usize, i: usize| snapshots[k].j[0][i];
    Ok((0..lat.len())
        .map(|i| {
            let dt_j0 = (-j0(4, i) + 8.0 * j0(3, i) - 8.0 * j0(1, i) + j0(0, i)) / (12.0 * dt);
            (dt_j0 + div[i]).abs()
        })
        .fold(0.0, f64::max))
}
