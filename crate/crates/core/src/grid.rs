//! Uniform periodic grids and the (x, y) <-> (x_S, x_D) coordinate change.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Uniform periodic 1-D grid with points `x0 + i·dx`, `i = 0..n`.
///
/// `n` is even and at least 4 so that the wavenumber set
/// `{2πj/L : j = −n/2 … n/2−1}` is symmetric up to the Nyquist mode.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UniformGrid1D {
    n: usize,
    x0: f64,
    dx: f64,
}

impl UniformGrid1D {
    pub fn new(n: usize, x0: f64, dx: f64) -> Result<Self> {
        if n < 4 || n % 2 != 0 {
            return Err(invalid(format!("grid point count must be even and >= 4, got {n}")));
        }
        if !(dx > 0.0 && dx.is_finite()) {
            return Err(invalid(format!("grid spacing must be positive and finite, got {dx}")));
        }
        if !x0.is_finite() {
            return Err(invalid(format!("grid origin must be finite, got {x0}")));
        }
        Ok(Self { n, x0, dx })
    }

    pub fn with_length(n: usize, x0: f64, length: f64) -> Result<Self> {
        if n == 0 {
            return Err(invalid("grid point count must be positive"));
        }
        Self::new(n, x0, length / n as f64)
    }

    /// Grid on `[−L/2, L/2)`; with even `n` the origin is the grid line `n/2`.
    pub fn centered(n: usize, length: f64) -> Result<Self> {
        Self::with_length(n, -0.5 * length, length)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn periodic(&self) -> bool {
        true
    }

    pub fn length(&self) -> f64 {
        self.n as f64 * self.dx
    }

    pub fn point(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.dx
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.point(i)).collect()
    }

    /// Wavenumber spacing `2π/L`.
    pub fn dk(&self) -> f64 {
        2.0 * PI / self.length()
    }

    /// Wavenumber of FFT bin `j` (FFT ordering; bin `n/2` is `−n/2·dk`).
    pub fn wavenumber(&self, j: usize) -> f64 {
        let n = self.n as i64;
        let j = j as i64;
        let signed = if j < n / 2 { j } else { j - n };
        signed as f64 * self.dk()
    }

    /// Wavenumbers in FFT ordering.
    pub fn wavenumbers(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.wavenumber(j)).collect()
    }

    /// Centered wavenumber grid `k = −n/2·dk + m·dk` used for momentum-space fields.
    pub fn reciprocal(&self) -> UniformGrid1D {
        let dk = self.dk();
        UniformGrid1D { n: self.n, x0: -(self.n as f64 / 2.0) * dk, dx: dk }
    }

    /// Index of the grid line at `x`, if `x` lies on the grid (tolerance 1e−9·dx).
    pub fn index_of(&self, x: f64) -> Option<usize> {
        let s = (x - self.x0) / self.dx;
        let r = s.round();
        if (s - r).abs() > 1e-9 || r < 0.0 || r >= self.n as f64 {
            return None;
        }
        Some(r as usize)
    }

    pub fn zero_index(&self) -> Option<usize> {
        self.index_of(0.0)
    }

    /// Periodic image of `x` in `[x0, x0 + L)`.
    pub fn wrap(&self, x: f64) -> f64 {
        let l = self.length();
        let mut s = (x - self.x0).rem_euclid(l);
        if s >= l {
            s -= l;
        }
        self.x0 + s
    }

    /// Riemann (trapezoid on a periodic grid) quadrature, summed in index order.
    pub fn quadrature(&self, samples: &[f64]) -> f64 {
        samples.iter().sum::<f64>() * self.dx
    }

    pub fn same_as(&self, other: &UniformGrid1D) -> bool {
        self.n == other.n
            && (self.dx - other.dx).abs() <= 1e-12 * self.dx
            && (self.x0 - other.x0).abs() <= 1e-12 * self.length()
    }
}

/// `(x, y) -> (x_S, x_D) = ((x + y)/2, y − x)`.
pub fn sd_from_xy(x: f64, y: f64) -> (f64, f64) {
    (0.5 * (x + y), y - x)
}

/// `(x_S, x_D) -> (x, y) = (x_S − x_D/2, x_S + x_D/2)`.
pub fn xy_from_sd(x_s: f64, x_d: f64) -> (f64, f64) {
    (x_s - 0.5 * x_d, x_s + 0.5 * x_d)
}

/// Periodic box of rank 1 to 3, row-major with the last axis fastest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lattice {
    axes: Vec<UniformGrid1D>,
}

impl Lattice {
    pub fn new(axes: Vec<UniformGrid1D>) -> Result<Self> {
        if axes.is_empty() || axes.len() > 3 {
            return Err(invalid(format!("lattice rank must be 1..=3, got {}", axes.len())));
        }
        Ok(Self { axes })
    }

    /// Cube with `n` points per axis on `[−L/2, L/2)³`.
    pub fn cube(n: usize, length: f64) -> Result<Self> {
        let g = UniformGrid1D::centered(n, length)?;
        Self::new(vec![g; 3])
    }

    pub fn line(grid: UniformGrid1D) -> Self {
        Self { axes: vec![grid] }
    }

    pub fn rank(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[UniformGrid1D] {
        &self.axes
    }

    pub fn axis(&self, a: usize) -> &UniformGrid1D {
        &self.axes[a]
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|g| g.n()).collect()
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|g| g.n()).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn cell_volume(&self) -> f64 {
        self.axes.iter().map(|g| g.dx()).product()
    }

    pub fn min_spacing(&self) -> f64 {
        self.axes.iter().map(|g| g.dx()).fold(f64::INFINITY, f64::min)
    }

    /// Multi-index of flat index `idx`.
    pub fn unravel(&self, mut idx: usize) -> [usize; 3] {
        let mut out = [0usize; 3];
        for a in (0..self.rank()).rev() {
            let n = self.axes[a].n();
            out[a] = idx % n;
            idx /= n;
        }
        out
    }

    pub fn ravel(&self, multi: &[usize]) -> usize {
        let mut idx = 0;
        for (a, g) in self.axes.iter().enumerate() {
            idx = idx * g.n() + multi[a];
        }
        idx
    }

    /// Coordinates of flat index `idx`; unused trailing components are zero.
    pub fn position(&self, idx: usize) -> [f64; 3] {
        let m = self.unravel(idx);
        let mut out = [0.0; 3];
        for (a, g) in self.axes.iter().enumerate() {
            out[a] = g.point(m[a]);
        }
        out
    }

    pub fn same_as(&self, other: &Lattice) -> bool {
        self.rank() == other.rank()
            && self.axes.iter().zip(&other.axes).all(|(a, b)| a.same_as(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_odd_and_small_grids() {
        assert!(UniformGrid1D::new(3, 0.0, 1.0).is_err());
        assert!(UniformGrid1D::new(2, 0.0, 1.0).is_err());
        assert!(UniformGrid1D::new(8, 0.0, 0.0).is_err());
        assert!(UniformGrid1D::new(8, 0.0, 0.5).is_ok());
    }

    #[test]
    fn centered_grid_contains_origin() {
        let g = UniformGrid1D::centered(64, 20.0).unwrap();
        assert_eq!(g.zero_index(), Some(32));
        assert_eq!(g.point(32), 0.0);
    }

    #[test]
    fn wavenumbers_span_symmetric_set() {
        let g = UniformGrid1D::centered(8, 2.0 * PI).unwrap();
        let k = g.wavenumbers();
        assert_eq!(k, vec![0.0, 1.0, 2.0, 3.0, -4.0, -3.0, -2.0, -1.0]);
        let r = g.reciprocal();
        assert_eq!(r.point(0), -4.0);
        assert_eq!(r.zero_index(), Some(4));
    }

    #[test]
    fn sd_examples() {
        assert_eq!(sd_from_xy(1.0, 1.0), (1.0, 0.0));
        assert_eq!(sd_from_xy(0.0, 2.0), (1.0, 2.0));
    }

    #[test]
    fn wrap_lands_in_domain() {
        let g = UniformGrid1D::centered(16, 4.0).unwrap();
        for x in [-7.3, -2.0, 0.0, 1.999, 2.0, 9.1] {
            let w = g.wrap(x);
            assert!((-2.0..2.0).contains(&w), "{x} -> {w}");
            assert!((((x - w) / 4.0).round() * 4.0 - (x - w)).abs() < 1e-12);
        }
    }

    #[test]
    fn lattice_ravel_roundtrip() {
        let l = Lattice::cube(4, 1.0).unwrap();
        for idx in 0..l.len() {
            assert_eq!(l.ravel(&l.unravel(idx)), idx);
        }
    }
}
