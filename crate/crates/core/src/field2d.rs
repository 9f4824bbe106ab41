//! Complex scalar fields on 2-D periodic grids and their Fourier transforms.
//!
//! Position-space fields are tagged `SD` (axes `x_S`, `x_D`) or `XY` (axes `x`, `y`).
//! Momentum-space fields live on centered wavenumber grids and are tagged
//! `KSd` (axes `k_S`, `k_D`) or `KXy` (axes `k_x`, `k_y`).
//!
//! The transform is `Φ(k_x, k_y) = (1/2π) ∫∫ φ(x, y) e^{−i k_x x + i k_y y} dx dy`.
//! Substituting `x = x_S − x_D/2`, `y = x_S + x_D/2` gives the same transform in
//! sum/difference form, `Φ(k_S, k_D) = (1/2π) ∫∫ φ e^{i (k_D x_S + k_S x_D)}`, with
//! `k_S = (k_x + k_y)/2` and `k_D = k_y − k_x`. Note that `k_S` is conjugate to `x_D`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::fft::{fftshift_axis, ifftshift_axis, FftNd};
use crate::grid::UniformGrid1D;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Coords {
    SD,
    XY,
    KSd,
    KXy,
}

/// Complex field sampled on `grid_s × grid_d`, row-major in `(i_0, i_1)`.
///
/// The first axis is `x_S`, `x`, `k_S` or `k_x` and the second `x_D`, `y`, `k_D`
/// or `k_y`, depending on [`Coords`].
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexScalarField2D {
    grid_s: UniformGrid1D,
    grid_d: UniformGrid1D,
    samples: Vec<Complex64>,
    coords: Coords,
}

impl ComplexScalarField2D {
    pub fn new(
        grid_s: UniformGrid1D,
        grid_d: UniformGrid1D,
        samples: Vec<Complex64>,
        coords: Coords,
    ) -> Result<Self> {
        if samples.len() != grid_s.n() * grid_d.n() {
            return Err(Error::GridMismatch(format!(
                "expected {}x{} samples, got {}",
                grid_s.n(),
                grid_d.n(),
                samples.len()
            )));
        }
        Ok(Self { grid_s, grid_d, samples, coords })
    }

    pub fn zeros(grid_s: UniformGrid1D, grid_d: UniformGrid1D, coords: Coords) -> Self {
        let samples = vec![Complex64::new(0.0, 0.0); grid_s.n() * grid_d.n()];
        Self { grid_s, grid_d, samples, coords }
    }

    pub fn from_fn(
        grid_s: UniformGrid1D,
        grid_d: UniformGrid1D,
        coords: Coords,
        f: impl Fn(f64, f64) -> Complex64,
    ) -> Self {
        let mut samples = Vec::with_capacity(grid_s.n() * grid_d.n());
        for i in 0..grid_s.n() {
            let a = grid_s.point(i);
            for j in 0..grid_d.n() {
                samples.push(f(a, grid_d.point(j)));
            }
        }
        Self { grid_s, grid_d, samples, coords }
    }

    pub fn grid_s(&self) -> &UniformGrid1D {
        &self.grid_s
    }

    pub fn grid_d(&self) -> &UniformGrid1D {
        &self.grid_d
    }

    pub fn coords(&self) -> Coords {
        self.coords
    }

    pub fn shape(&self) -> [usize; 2] {
        [self.grid_s.n(), self.grid_d.n()]
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn samples_mut(&mut self) -> &mut [Complex64] {
        &mut self.samples
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.samples[i * self.grid_d.n() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        let n1 = self.grid_d.n();
        self.samples[i * n1 + j] = v;
    }

    /// DMF1 dump with dims `[n_0, n_1]` and one component.
    pub fn to_dump(&self) -> crate::io::FieldDump {
        let [a, b] = self.shape();
        crate::io::FieldDump::new(vec![a as u32, b as u32], 1, self.samples.clone()).expect("dims match payload")
    }

    pub fn expect_coords(&self, expected: Coords) -> Result<()> {
        if self.coords != expected {
            return Err(Error::Coords { expected, found: self.coords });
        }
        Ok(())
    }

    /// `Σ |φ|² · d0 · d1`, summed in index order.
    pub fn norm_sq(&self) -> f64 {
        self.samples.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid_s.dx() * self.grid_d.dx()
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.samples.len(), other.samples.len(), "field shapes differ");
        self.samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Swap defect `max |φ(x_S, −x_D) − φ*(x_S, x_D)|` (SD) or `max |φ(y, x) − φ*(x, y)|` (XY).
    pub fn hermiticity_defect(&self) -> Result<f64> {
        let (n0, n1) = (self.grid_s.n(), self.grid_d.n());
        match self.coords {
            Coords::SD => {
                if self.grid_d.zero_index() != Some(n1 / 2) {
                    return Err(invalid("x_D grid must be centered on x_D = 0"));
                }
                let mut worst: f64 = 0.0;
                for i in 0..n0 {
                    for j in 0..n1 {
                        let m = (n1 - j) % n1;
                        worst = worst.max((self.get(i, m) - self.get(i, j).conj()).norm());
                    }
                }
                Ok(worst)
            }
            Coords::XY => {
                if !self.grid_s.same_as(&self.grid_d) {
                    return Err(invalid("x and y grids must coincide"));
                }
                let mut worst: f64 = 0.0;
                for i in 0..n0 {
                    for j in 0..n1 {
                        worst = worst.max((self.get(j, i) - self.get(i, j).conj()).norm());
                    }
                }
                Ok(worst)
            }
            c => Err(Error::Unsupported(format!("hermiticity defect in {c:?} coordinates"))),
        }
    }
}

fn phase(theta: f64) -> Complex64 {
    Complex64::new(theta.cos(), theta.sin())
}

/// `F(k) = Σ_j f(x_j) e^{sign·i k x_j}` along `axis`, output in centered wavenumber order.
fn dft_axis_centered(data: &mut [Complex64], shape: &[usize], axis: usize, grid: &UniformGrid1D, sign: f64, plan: &FftNd) {
    if sign < 0.0 {
        plan.forward_axis(data, axis);
    } else {
        plan.inverse_axis(data, axis);
    }
    let ks = grid.wavenumbers();
    let tw: Vec<Complex64> = ks.iter().map(|k| phase(sign * k * grid.x0())).collect();
    scale_axis(data, shape, axis, &tw);
    fftshift_axis(data, shape, axis);
}

/// Inverse of [`dft_axis_centered`] without the `1/n` factor: `f(x_j) = Σ_k F(k) e^{−sign·i k x_j}`.
fn idft_axis_centered(data: &mut [Complex64], shape: &[usize], axis: usize, grid: &UniformGrid1D, sign: f64, plan: &FftNd) {
    ifftshift_axis(data, shape, axis);
    let ks = grid.wavenumbers();
    let tw: Vec<Complex64> = ks.iter().map(|k| phase(-sign * k * grid.x0())).collect();
    scale_axis(data, shape, axis, &tw);
    if sign < 0.0 {
        plan.inverse_axis(data, axis);
    } else {
        plan.forward_axis(data, axis);
    }
}

/// Multiply every line along `axis` elementwise by `w`.
pub(crate) fn scale_axis(data: &mut [Complex64], shape: &[usize], axis: usize, w: &[Complex64]) {
    let n = shape[axis];
    let inner: usize = shape[axis + 1..].iter().product();
    for (idx, v) in data.iter_mut().enumerate() {
        *v *= w[(idx / inner) % n];
    }
}

fn transpose(data: &[Complex64], n0: usize, n1: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); data.len()];
    for i in 0..n0 {
        for j in 0..n1 {
            out[j * n0 + i] = data[i * n1 + j];
        }
    }
    out
}

/// Position (x, y) field to momentum `Φ(k_x, k_y)`.
pub fn dft2(field: &ComplexScalarField2D) -> Result<ComplexScalarField2D> {
    field.expect_coords(Coords::XY)?;
    let (gx, gy) = (*field.grid_s(), *field.grid_d());
    let shape = [gx.n(), gy.n()];
    let plan = FftNd::new(&shape);
    let mut data = field.samples().to_vec();
    dft_axis_centered(&mut data, &shape, 0, &gx, -1.0, &plan);
    dft_axis_centered(&mut data, &shape, 1, &gy, 1.0, &plan);
    let s = gx.dx() * gy.dx() / (2.0 * PI);
    data.iter_mut().for_each(|v| *v *= s);
    ComplexScalarField2D::new(gx.reciprocal(), gy.reciprocal(), data, Coords::KXy)
}

/// Inverse of [`dft2`]; `position_x`/`position_y` are the target position grids.
pub fn idft2(
    field: &ComplexScalarField2D,
    position_x: &UniformGrid1D,
    position_y: &UniformGrid1D,
) -> Result<ComplexScalarField2D> {
    field.expect_coords(Coords::KXy)?;
    check_reciprocal(field.grid_s(), position_x)?;
    check_reciprocal(field.grid_d(), position_y)?;
    let shape = [position_x.n(), position_y.n()];
    let plan = FftNd::new(&shape);
    let mut data = field.samples().to_vec();
    idft_axis_centered(&mut data, &shape, 0, position_x, -1.0, &plan);
    idft_axis_centered(&mut data, &shape, 1, position_y, 1.0, &plan);
    let s = field.grid_s().dx() * field.grid_d().dx() / (2.0 * PI);
    data.iter_mut().for_each(|v| *v *= s);
    ComplexScalarField2D::new(*position_x, *position_y, data, Coords::XY)
}

/// Position (x_S, x_D) field to momentum `Φ(k_S, k_D)`; output axes are `(k_S, k_D)`.
pub fn dft2_sd(field: &ComplexScalarField2D) -> Result<ComplexScalarField2D> {
    field.expect_coords(Coords::SD)?;
    let (gs, gd) = (*field.grid_s(), *field.grid_d());
    let shape = [gs.n(), gd.n()];
    let plan = FftNd::new(&shape);
    let mut data = field.samples().to_vec();
    dft_axis_centered(&mut data, &shape, 0, &gs, 1.0, &plan);
    dft_axis_centered(&mut data, &shape, 1, &gd, 1.0, &plan);
    let s = gs.dx() * gd.dx() / (2.0 * PI);
    data.iter_mut().for_each(|v| *v *= s);
    let data = transpose(&data, gs.n(), gd.n());
    ComplexScalarField2D::new(gd.reciprocal(), gs.reciprocal(), data, Coords::KSd)
}

/// Inverse of [`dft2_sd`].
pub fn idft2_sd(
    field: &ComplexScalarField2D,
    position_s: &UniformGrid1D,
    position_d: &UniformGrid1D,
) -> Result<ComplexScalarField2D> {
    field.expect_coords(Coords::KSd)?;
    check_reciprocal(field.grid_s(), position_d)?;
    check_reciprocal(field.grid_d(), position_s)?;
    let shape = [position_s.n(), position_d.n()];
    let plan = FftNd::new(&shape);
    let mut data = transpose(field.samples(), position_d.n(), position_s.n());
    idft_axis_centered(&mut data, &shape, 0, position_s, 1.0, &plan);
    idft_axis_centered(&mut data, &shape, 1, position_d, 1.0, &plan);
    let s = field.grid_s().dx() * field.grid_d().dx() / (2.0 * PI);
    data.iter_mut().for_each(|v| *v *= s);
    ComplexScalarField2D::new(*position_s, *position_d, data, Coords::SD)
}

fn check_reciprocal(k: &UniformGrid1D, x: &UniformGrid1D) -> Result<()> {
    if !k.same_as(&x.reciprocal()) {
        return Err(Error::GridMismatch("momentum grid is not reciprocal to the position grid".into()));
    }
    Ok(())
}

/// The x_D grid paired with a wavefunction grid: `n` points, spacing `2·dx`, centered.
///
/// On the paired grid every sample `(x_S, x_D)` with `x_S` on the wavefunction grid
/// corresponds to two wavefunction grid points `x_S ∓ x_D/2`.
pub fn paired_d_grid(psi_grid: &UniformGrid1D) -> UniformGrid1D {
    let n = psi_grid.n();
    UniformGrid1D::new(n, -(n as f64) * psi_grid.dx(), 2.0 * psi_grid.dx())
        .expect("paired grid inherits valid parameters")
}

/// Whether `(grid_s, grid_d)` is the paired SD grid of `grid_s`.
pub fn is_paired(grid_s: &UniformGrid1D, grid_d: &UniformGrid1D) -> bool {
    grid_d.same_as(&paired_d_grid(grid_s))
}

/// Indices `(a, b)` of `x = x_S − x_D/2` and `y = x_S + x_D/2` for paired-grid sample `(i, j)`.
pub fn paired_xy_indices(n: usize, i: usize, j: usize) -> (usize, usize) {
    let m = j as i64 - (n / 2) as i64;
    let n_i = n as i64;
    let a = (i as i64 - m).rem_euclid(n_i) as usize;
    let b = (i as i64 + m).rem_euclid(n_i) as usize;
    (a, b)
}

/// Resample an (x, y) field onto the paired SD grid; exact (pure subsampling).
pub fn xy_to_sd(field: &ComplexScalarField2D) -> Result<ComplexScalarField2D> {
    field.expect_coords(Coords::XY)?;
    let g = *field.grid_s();
    if !g.same_as(field.grid_d()) {
        return Err(invalid("x and y grids must coincide"));
    }
    let n = g.n();
    let gd = paired_d_grid(&g);
    let mut out = ComplexScalarField2D::zeros(g, gd, Coords::SD);
    for i in 0..n {
        for j in 0..n {
            let (a, b) = paired_xy_indices(n, i, j);
            out.set(i, j, field.get(a, b));
        }
    }
    Ok(out)
}

/// Resample a paired-grid SD field onto the (x, y) grid.
///
/// Pairs with even index difference are read directly; the others lie half a cell
/// off the SD lattice and are obtained by spectral shifts of `dx/2` in `x_S` and
/// `dx` in `x_D`, which is exact for fields band-limited to half the x Nyquist.
pub fn sd_to_xy(field: &ComplexScalarField2D) -> Result<ComplexScalarField2D> {
    field.expect_coords(Coords::SD)?;
    let (gs, gd) = (*field.grid_s(), *field.grid_d());
    if !is_paired(&gs, &gd) {
        return Err(invalid("sd_to_xy requires the paired x_D grid"));
    }
    let n = gs.n();
    let dx = gs.dx();
    let shape = [n, n];
    let plan = FftNd::new(&shape);
    let mut shifted = field.samples().to_vec();
    plan.forward(&mut shifted);
    let ws: Vec<Complex64> = (0..n).map(|f| shift_factor(&gs, f, 0.5 * dx)).collect();
    let wd: Vec<Complex64> = (0..n).map(|f| shift_factor(&gd, f, dx)).collect();
    scale_axis(&mut shifted, &shape, 0, &ws);
    scale_axis(&mut shifted, &shape, 1, &wd);
    plan.inverse_normalized(&mut shifted);

    let mut out = ComplexScalarField2D::zeros(gs, gs, Coords::XY);
    for a in 0..n {
        for b in 0..n {
            let d = (b + n - a) % n;
            let v = if d % 2 == 0 {
                let m = d / 2;
                field.get((a + m) % n, m + n / 2)
            } else {
                let m = (d - 1) / 2;
                shifted[((a + m) % n) * n + m + n / 2]
            };
            out.set(a, b, v);
        }
    }
    Ok(out)
}

/// Multiplier of FFT bin `f` that evaluates a trigonometric interpolant at `x + shift`.
///
/// The Nyquist bin uses the symmetric (cosine) interpolant.
pub(crate) fn shift_factor(grid: &UniformGrid1D, f: usize, shift: f64) -> Complex64 {
    let k = grid.wavenumber(f);
    if grid.n() % 2 == 0 && f == grid.n() / 2 {
        Complex64::new((k * shift).cos(), 0.0)
    } else {
        phase(k * shift)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n: usize, l: f64) -> UniformGrid1D {
        UniformGrid1D::centered(n, l).unwrap()
    }

    fn smooth_field(gx: UniformGrid1D, gy: UniformGrid1D) -> ComplexScalarField2D {
        ComplexScalarField2D::from_fn(gx, gy, Coords::XY, |x, y| {
            let e = (-(x - 0.3) * (x - 0.3) / 2.0 - (y + 0.5) * (y + 0.5) / 3.0).exp();
            Complex64::new(e * (1.0 + 0.2 * x), 0.3 * e * y.sin())
        })
    }

    #[test]
    fn dft2_roundtrip() {
        let (gx, gy) = (grid(16, 12.0), grid(20, 14.0));
        let f = smooth_field(gx, gy);
        let k = dft2(&f).unwrap();
        let back = idft2(&k, &gx, &gy).unwrap();
        assert!(back.max_abs_diff(&f) < 1e-13);
    }

    #[test]
    fn dft2_sd_roundtrip() {
        let (gs, gd) = (grid(16, 12.0), grid(12, 10.0));
        let f = ComplexScalarField2D::from_fn(gs, gd, Coords::SD, |s, d| {
            Complex64::new((-s * s).exp(), 0.0) * phase(0.7 * d) * (-d * d / 4.0).exp()
        });
        let k = dft2_sd(&f).unwrap();
        assert_eq!(k.shape(), [12, 16]);
        let back = idft2_sd(&k, &gs, &gd).unwrap();
        assert!(back.max_abs_diff(&f) < 1e-13);
    }

    #[test]
    fn wrong_coords_rejected() {
        let f = ComplexScalarField2D::zeros(grid(8, 1.0), grid(8, 1.0), Coords::SD);
        assert!(matches!(dft2(&f), Err(Error::Coords { .. })));
    }

    #[test]
    fn paired_resampling_roundtrip() {
        let g = grid(64, 16.0);
        let f = ComplexScalarField2D::from_fn(g, g, Coords::XY, |x, y| {
            let gx = (-(x - 1.0) * (x - 1.0) / 2.0).exp();
            let gy = (-(y - 1.0) * (y - 1.0) / 2.0).exp();
            Complex64::new(gx * gy, 0.1 * gx * gy * (x - y))
        });
        let sd = xy_to_sd(&f).unwrap();
        let xy = sd_to_xy(&sd).unwrap();
        assert!(xy.max_abs_diff(&f) < 1e-8, "{}", xy.max_abs_diff(&f));
    }
}
