//! Spectral and fourth-order finite-difference derivatives on periodic grids.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::field2d::{scale_axis, ComplexScalarField2D};
use crate::fft::FftNd;
use crate::grid::UniformGrid1D;

/// How x_D-derivatives at a slice are evaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DerivativeMode {
    /// Multiplication by `(ik)^p` in transform space; global stencil.
    #[default]
    Spectral,
    /// Five-point central differences; stencil reaches two grid lines.
    FiniteDifference4,
}

/// Spectral multiplier `(ik)^order` for FFT bin `f`; the Nyquist bin is dropped for odd orders.
pub fn spectral_multiplier(grid: &UniformGrid1D, f: usize, order: u32) -> Complex64 {
    if order % 2 == 1 && f == grid.n() / 2 {
        return Complex64::new(0.0, 0.0);
    }
    Complex64::new(0.0, grid.wavenumber(f)).powu(order)
}

/// `d^order/dx^order` of periodic samples by FFT.
pub fn spectral_derivative_1d(grid: &UniformGrid1D, samples: &[Complex64], order: u32) -> Vec<Complex64> {
    assert_eq!(samples.len(), grid.n(), "sample count does not match grid");
    let plan = FftNd::new(&[grid.n()]);
    let mut data = samples.to_vec();
    plan.forward(&mut data);
    for (f, v) in data.iter_mut().enumerate() {
        *v *= spectral_multiplier(grid, f, order);
    }
    plan.inverse_normalized(&mut data);
    data
}

/// Spectral derivative of a 2-D field along `axis` (0 or 1).
pub fn spectral_derivative(field: &ComplexScalarField2D, axis: usize, order: u32) -> ComplexScalarField2D {
    assert!(axis < 2, "axis must be 0 or 1");
    let shape = field.shape();
    let grid = if axis == 0 { *field.grid_s() } else { *field.grid_d() };
    let plan = FftNd::new(&shape);
    let mut data = field.samples().to_vec();
    plan.forward_axis(&mut data, axis);
    let w: Vec<Complex64> = (0..grid.n()).map(|f| spectral_multiplier(&grid, f, order)).collect();
    scale_axis(&mut data, &shape, axis, &w);
    plan.inverse_axis(&mut data, axis);
    let s = 1.0 / grid.n() as f64;
    data.iter_mut().for_each(|v| *v *= s);
    ComplexScalarField2D::new(*field.grid_s(), *field.grid_d(), data, field.coords())
        .expect("shape preserved")
}

/// Central five-point first derivative at `j` with periodic wrap.
pub fn fd4_first(samples: &[Complex64], j: usize, h: f64) -> Complex64 {
    let n = samples.len();
    let at = |o: i64| samples[(j as i64 + o).rem_euclid(n as i64) as usize];
    (-at(2) + at(1) * 8.0 - at(-1) * 8.0 + at(-2)) / (12.0 * h)
}

/// Central five-point second derivative at `j` with periodic wrap.
pub fn fd4_second(samples: &[Complex64], j: usize, h: f64) -> Complex64 {
    let n = samples.len();
    let at = |o: i64| samples[(j as i64 + o).rem_euclid(n as i64) as usize];
    (-at(2) + at(1) * 16.0 - at(0) * 30.0 + at(-1) * 16.0 - at(-2)) / (12.0 * h * h)
}

/// Derivative of order 1 or 2 of one periodic line, evaluated only at index `j`.
pub fn derivative_at(grid: &UniformGrid1D, line: &[Complex64], j: usize, order: u32, mode: DerivativeMode) -> Complex64 {
    match mode {
        DerivativeMode::FiniteDifference4 => match order {
            0 => line[j],
            1 => fd4_first(line, j, grid.dx()),
            2 => fd4_second(line, j, grid.dx()),
            _ => panic!("finite-difference mode supports orders 0..=2"),
        },
        DerivativeMode::Spectral => {
            let plan = FftNd::new(&[grid.n()]);
            let mut data = line.to_vec();
            plan.forward(&mut data);
            let x = grid.point(j) - grid.x0();
            let mut acc = Complex64::new(0.0, 0.0);
            for (f, v) in data.iter().enumerate() {
                let k = grid.wavenumber(f);
                acc += v * spectral_multiplier(grid, f, order) * Complex64::new((k * x).cos(), (k * x).sin());
            }
            acc / grid.n() as f64
        }
    }
}
