//! Finite spatial rotations `φ'(x) = U φ(R⁻¹x) U†`, `U = cos(θ/2) − i sin(θ/2) n·Σ`.
//!
//! Sample coordinates are rotated exactly for quarter turns about lattice axes and by
//! three Fourier shears otherwise. The shears run on a plane upsampled twofold so that
//! the sheared spectrum stays below the Nyquist limit.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::field2d::shift_factor;
use crate::grid::{Lattice, UniformGrid1D};

use super::basis::{dirac_basis, Mat4};
use super::boost::check_unit;
use super::field::MatrixField;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RotationSpec {
    pub angle: f64,
    pub axis: [f64; 3],
}

impl RotationSpec {
    pub fn validate(&self) -> Result<()> {
        if !self.angle.is_finite() {
            return Err(invalid("rotation angle must be finite"));
        }
        check_unit(self.axis)
    }

    pub fn spin_matrix(&self) -> Mat4 {
        let b = dirac_basis();
        let n = self.axis;
        let ns = b.sigma[0] * Complex64::from(n[0]) + b.sigma[1] * Complex64::from(n[1]) + b.sigma[2] * Complex64::from(n[2]);
        let (s, c) = (0.5 * self.angle).sin_cos();
        Mat4::identity() * Complex64::from(c) - ns * Complex64::new(0.0, s)
    }

    /// Active rotation matrix (Rodrigues form).
    pub fn matrix(&self) -> [[f64; 3]; 3] {
        let n = self.axis;
        let (s, c) = self.angle.sin_cos();
        let mut r = [[0.0; 3]; 3];
        for (i, row) in r.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                let delta = if i == j { 1.0 } else { 0.0 };
                let cross = match (i, j) {
                    (0, 1) => -n[2],
                    (0, 2) => n[1],
                    (1, 0) => n[2],
                    (1, 2) => -n[0],
                    (2, 0) => -n[1],
                    (2, 1) => n[0],
                    _ => 0.0,
                };
                *v = c * delta + (1.0 - c) * n[i] * n[j] + s * cross;
            }
        }
        r
    }
}

/// `R_k φ = −½ Σ_k φ + ½ φ Σ_k`.
pub fn rotation_generator(phi: &Mat4, k: usize) -> Mat4 {
    let s = dirac_basis().sigma[k];
    (phi * s - s * phi) * Complex64::from(0.5)
}

/// Spin part only: `φ → U φ U†` at every point, coordinates untouched.
pub fn rotate_matrix_part(field: &MatrixField, spec: &RotationSpec) -> Result<MatrixField> {
    spec.validate()?;
    let u = spec.spin_matrix();
    let ud = u.adjoint();
    Ok(field.map(|m| u * m * ud))
}

pub fn apply_rotation(field: &MatrixField, spec: &RotationSpec) -> Result<MatrixField> {
    spec.validate()?;
    let lat = field.lattice().clone();
    let steps = elementary_steps(spec);
    for &(c, _) in &steps {
        check_plane(&lat, c)?;
    }
    let n = lat.len();
    let channels: Vec<Vec<Complex64>> = (0..16)
        .into_par_iter()
        .map(|ch| {
            let (r, c) = (ch / 4, ch % 4);
            let mut buf: Vec<Complex64> = field.samples().iter().map(|m| m[(r, c)]).collect();
            if buf.iter().any(|v| v.norm() > 0.0) {
                for &(axis, angle) in &steps {
                    buf = rotate_about_axis(&lat, buf, axis, angle);
                }
            }
            buf
        })
        .collect();
    let u = spec.spin_matrix();
    let ud = u.adjoint();
    let samples = (0..n).map(|i| u * Mat4::from_fn(|r, c| channels[r * 4 + c][i]) * ud).collect();
    Ok(field.with_samples(samples))
}

/// Rotations about lattice axes, in application order, composing to the requested one.
fn elementary_steps(spec: &RotationSpec) -> Vec<(usize, f64)> {
    let n = spec.axis;
    let mut theta = spec.angle.rem_euclid(2.0 * PI);
    if theta > PI {
        theta -= 2.0 * PI;
    }
    // Whole turns act trivially on positions; skipping them avoids interpolation error.
    if theta.abs() < 1e-14 {
        return Vec::new();
    }
    if let Some(c) = (0..3).find(|&c| (n[c].abs() - 1.0).abs() < 1e-12) {
        return vec![(c, theta * n[c].signum())];
    }
    let pol = n[2].clamp(-1.0, 1.0).acos();
    let azi = n[1].atan2(n[0]);
    // R = Rz(φ) Ry(ϑ) Rz(θ) Ry(−ϑ) Rz(−φ); the rightmost factor acts first.
    vec![(2, -azi), (1, -pol), (2, theta), (1, pol), (2, azi)]
}

fn plane(c: usize) -> (usize, usize) {
    ((c + 1) % 3, (c + 2) % 3)
}

fn check_plane(lat: &Lattice, c: usize) -> Result<()> {
    let (p, q) = plane(c);
    let (gp, gq) = (lat.axis(p), lat.axis(q));
    let centered = |g: &UniformGrid1D| (g.x0() + 0.5 * g.length()).abs() < 1e-12 * g.length();
    if !(gp.same_as(gq) && centered(gp)) {
        return Err(invalid("rotations need equal, origin-centered axes in the rotation plane"));
    }
    Ok(())
}

/// `f'(r) = f(R⁻¹r)` for a rotation by `angle` about lattice axis `c`.
fn rotate_about_axis(lat: &Lattice, mut data: Vec<Complex64>, c: usize, angle: f64) -> Vec<Complex64> {
    let mut a = angle.rem_euclid(2.0 * PI);
    if a > PI {
        a -= 2.0 * PI;
    }
    let quarters = (a / FRAC_PI_2).round();
    let rest = a - quarters * FRAC_PI_2;
    let turns = (quarters as i64).rem_euclid(4) as usize;
    if turns != 0 {
        data = quarter_turns(lat, &data, c, turns);
    }
    if rest.abs() > 1e-14 {
        debug_assert!(rest.abs() <= FRAC_PI_4 + 1e-12);
        data = shear_rotate(lat, &data, c, rest);
    }
    data
}

fn quarter_turns(lat: &Lattice, data: &[Complex64], c: usize, turns: usize) -> Vec<Complex64> {
    let (p, q) = plane(c);
    let n = lat.axis(p).n();
    let neg = |i: usize| (n - i) % n;
    let mut out = vec![Complex64::new(0.0, 0.0); data.len()];
    for (idx, dst) in out.iter_mut().enumerate() {
        let u = lat.unravel(idx);
        let (ip, iq) = (u[p], u[q]);
        let (sp, sq) = match turns {
            1 => (iq, neg(ip)),
            2 => (neg(ip), neg(iq)),
            _ => (neg(iq), ip),
        };
        let mut s = u;
        s[p] = sp;
        s[q] = sq;
        *dst = data[lat.ravel(&s)];
    }
    out
}

/// Rotation by `|θ| ≤ π/4` as shears `p += t·q`, `q −= s·p`, `p += t·q`
/// with `t = tan(θ/2)`, `s = sin θ`.
fn shear_rotate(lat: &Lattice, data: &[Complex64], c: usize, theta: f64) -> Vec<Complex64> {
    let (p, q) = plane(c);
    let shape = lat.shape();
    let n = shape[p];
    let fine = 2 * n;
    let mut up = resample_axis(data, &shape, p, fine);
    let mut sh = shape.clone();
    sh[p] = fine;
    up = resample_axis(&up, &sh, q, fine);
    sh[q] = fine;
    let g = lat.axis(p);
    let fg = UniformGrid1D::new(fine, g.x0(), 0.5 * g.dx()).expect("upsampled grid is valid");
    let t = (0.5 * theta).tan();
    let s = theta.sin();
    shear(&mut up, &sh, p, q, &fg, t);
    shear(&mut up, &sh, q, p, &fg, -s);
    shear(&mut up, &sh, p, q, &fg, t);
    let mut down = resample_axis(&up, &sh, p, n);
    sh[p] = n;
    down = resample_axis(&down, &sh, q, n);
    down
}

/// Replace every line along `along` by its interpolant evaluated at `x + factor·y`,
/// `y` the coordinate along `by`.
fn shear(data: &mut [Complex64], shape: &[usize], along: usize, by: usize, g: &UniformGrid1D, factor: f64) {
    let n = shape[along];
    let mut planner = FftPlanner::new();
    let fwd = planner.plan_fft_forward(n);
    let inv = planner.plan_fft_inverse(n);
    let stride: usize = shape[along + 1..].iter().product();
    let by_stride: usize = shape[by + 1..].iter().product();
    let mut line = vec![Complex64::new(0.0, 0.0); n];
    let starts: Vec<usize> = (0..data.len()).filter(|i| (i / stride) % n == 0).collect();
    for start in starts {
        let y = g.point((start / by_stride) % shape[by]);
        for (j, v) in line.iter_mut().enumerate() {
            *v = data[start + j * stride];
        }
        fwd.process(&mut line);
        for (f, v) in line.iter_mut().enumerate() {
            *v *= shift_factor(g, f, factor * y) / n as f64;
        }
        inv.process(&mut line);
        for (j, v) in line.iter().enumerate() {
            data[start + j * stride] = *v;
        }
    }
}

/// Trigonometric resampling of every line along `axis` to `m` points on the same period.
fn resample_axis(data: &[Complex64], shape: &[usize], axis: usize, m: usize) -> Vec<Complex64> {
    let n = shape[axis];
    let mut out_shape = shape.to_vec();
    out_shape[axis] = m;
    let inner: usize = shape[axis + 1..].iter().product();
    let outer: usize = shape[..axis].iter().product();
    let mut planner = FftPlanner::new();
    let fwd = planner.plan_fft_forward(n);
    let inv = planner.plan_fft_inverse(m);
    let mut out = vec![Complex64::new(0.0, 0.0); outer * m * inner];
    let mut a = vec![Complex64::new(0.0, 0.0); n];
    let mut b = vec![Complex64::new(0.0, 0.0); m];
    let (lo, hi) = (n.min(m), n.max(m));
    for o in 0..outer {
        for i in 0..inner {
            for (j, v) in a.iter_mut().enumerate() {
                *v = data[(o * n + j) * inner + i];
            }
            fwd.process(&mut a);
            b.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
            let h = lo / 2;
            b[..h].copy_from_slice(&a[..h]);
            for f in 1..h {
                b[m - f] = a[n - f];
            }
            if m > n {
                // The old Nyquist bin splits evenly between ±k_N.
                b[h] = a[h] * 0.5;
                b[m - h] = a[h] * 0.5;
            } else {
                b[h] = a[h] + a[hi - h];
            }
            inv.process(&mut b);
            for (j, v) in b.iter().enumerate() {
                out[(o * m + j) * inner + i] = v / n as f64;
            }
        }
    }
    out
}
