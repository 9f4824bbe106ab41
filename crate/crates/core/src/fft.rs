//! Unnormalized multi-dimensional FFTs over row-major arrays.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

/// Planned forward/inverse transforms for a fixed row-major shape.
///
/// `forward` applies `Σ_j f_j e^{−2πi jm/n}` along every axis; `inverse` the
/// conjugate kernel. Neither normalizes.
#[derive(Clone)]
pub struct FftNd {
    shape: Vec<usize>,
    fwd: Vec<Arc<dyn Fft<f64>>>,
    inv: Vec<Arc<dyn Fft<f64>>>,
}

impl std::fmt::Debug for FftNd {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FftNd").field("shape", &self.shape).finish()
    }
}

impl FftNd {
    pub fn new(shape: &[usize]) -> Self {
        let mut planner = FftPlanner::new();
        let fwd = shape.iter().map(|&n| planner.plan_fft_forward(n)).collect();
        let inv = shape.iter().map(|&n| planner.plan_fft_inverse(n)).collect();
        Self { shape: shape.to_vec(), fwd, inv }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn len(&self) -> usize {
        self.shape.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn forward(&self, data: &mut [Complex64]) {
        for axis in 0..self.shape.len() {
            self.forward_axis(data, axis);
        }
    }

    pub fn inverse(&self, data: &mut [Complex64]) {
        for axis in 0..self.shape.len() {
            self.inverse_axis(data, axis);
        }
    }

    /// Inverse transform divided by the total point count.
    pub fn inverse_normalized(&self, data: &mut [Complex64]) {
        self.inverse(data);
        let s = 1.0 / self.len() as f64;
        for v in data.iter_mut() {
            *v *= s;
        }
    }

    pub fn forward_axis(&self, data: &mut [Complex64], axis: usize) {
        apply_axis(data, &self.shape, axis, self.fwd[axis].as_ref());
    }

    pub fn inverse_axis(&self, data: &mut [Complex64], axis: usize) {
        apply_axis(data, &self.shape, axis, self.inv[axis].as_ref());
    }
}

fn apply_axis(data: &mut [Complex64], shape: &[usize], axis: usize, fft: &dyn Fft<f64>) {
    assert_eq!(data.len(), shape.iter().product::<usize>(), "array length does not match shape");
    let n = shape[axis];
    let inner: usize = shape[axis + 1..].iter().product();
    let outer: usize = shape[..axis].iter().product();
    if inner == 1 {
        fft.process(data);
        return;
    }
    let mut line = vec![Complex64::new(0.0, 0.0); n];
    for o in 0..outer {
        let base = o * n * inner;
        for i in 0..inner {
            for (j, v) in line.iter_mut().enumerate() {
                *v = data[base + j * inner + i];
            }
            fft.process(&mut line);
            for (j, v) in line.iter().enumerate() {
                data[base + j * inner + i] = *v;
            }
        }
    }
}

/// Move FFT bin order to centered order (`k = −n/2 … n/2−1`) along one axis.
pub fn fftshift_axis(data: &mut [Complex64], shape: &[usize], axis: usize) {
    roll_axis(data, shape, axis, shape[axis] / 2);
}

/// Inverse of [`fftshift_axis`]; identical for even lengths.
pub fn ifftshift_axis(data: &mut [Complex64], shape: &[usize], axis: usize) {
    let n = shape[axis];
    roll_axis(data, shape, axis, n - n / 2);
}

fn roll_axis(data: &mut [Complex64], shape: &[usize], axis: usize, by: usize) {
    let n = shape[axis];
    let inner: usize = shape[axis + 1..].iter().product();
    let outer: usize = shape[..axis].iter().product();
    let mut line = vec![Complex64::new(0.0, 0.0); n];
    for o in 0..outer {
        let base = o * n * inner;
        for i in 0..inner {
            for j in 0..n {
                line[(j + by) % n] = data[base + j * inner + i];
            }
            for (j, v) in line.iter().enumerate() {
                data[base + j * inner + i] = *v;
            }
        }
    }
}
