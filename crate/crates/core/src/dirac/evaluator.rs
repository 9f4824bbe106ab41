//! Pointwise access to fields that depend on both coordinates and both times.

use super::basis::{dirac_basis, Mat4};
use super::spectral::TdFamily;

/// A point of the doubled space-time, in sum/difference coordinates.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Event {
    pub t_s: f64,
    pub x_s: [f64; 3],
    pub t_d: f64,
    pub x_d: [f64; 3],
}

impl Event {
    pub fn on_slice(t_s: f64, x_s: [f64; 3]) -> Self {
        Self { t_s, x_s, t_d: 0.0, x_d: [0.0; 3] }
    }

    /// From the two four-vectors `x = (t_x, x)` and `y = (t_y, y)`.
    pub fn from_xy(x: [f64; 4], y: [f64; 4]) -> Self {
        Self {
            t_s: 0.5 * (x[0] + y[0]),
            x_s: [1, 2, 3].map(|k| 0.5 * (x[k] + y[k])),
            t_d: y[0] - x[0],
            x_d: [1, 2, 3].map(|k| y[k] - x[k]),
        }
    }

    pub fn to_xy(&self) -> ([f64; 4], [f64; 4]) {
        let x = [self.t_s - 0.5 * self.t_d, self.x_s[0] - 0.5 * self.x_d[0], self.x_s[1] - 0.5 * self.x_d[1], self.x_s[2] - 0.5 * self.x_d[2]];
        let y = [self.t_s + 0.5 * self.t_d, self.x_s[0] + 0.5 * self.x_d[0], self.x_s[1] + 0.5 * self.x_d[1], self.x_s[2] + 0.5 * self.x_d[2]];
        (x, y)
    }

    /// The same pair with `x` and `y` exchanged.
    pub fn swapped(&self) -> Self {
        Self { t_s: self.t_s, x_s: self.x_s, t_d: -self.t_d, x_d: self.x_d.map(|v| -v) }
    }
}

/// A matrix field that can be evaluated anywhere; evaluation must be pure.
pub trait PointEvaluator: Sync {
    fn eval(&self, e: &Event) -> Mat4;
    fn mass(&self) -> f64;
}

impl PointEvaluator for TdFamily {
    /// Independent of `t_S` and `x_D`.
    fn eval(&self, e: &Event) -> Mat4 {
        TdFamily::eval(self, e.x_s, e.t_d)
    }

    fn mass(&self) -> f64 {
        TdFamily::mass(self)
    }
}

/// `φ'(x, y) = +γ² φᵀ(y, x) γ²`.
pub struct Conjugated<'a, E: PointEvaluator + ?Sized>(pub &'a E);

impl<E: PointEvaluator + ?Sized> PointEvaluator for Conjugated<'_, E> {
    fn eval(&self, e: &Event) -> Mat4 {
        let g2 = dirac_basis().gamma2;
        g2 * self.0.eval(&e.swapped()).transpose() * g2
    }

    fn mass(&self) -> f64 {
        self.0.mass()
    }
}

/// `φ'(x, y) = e^{i[θ(x) − θ(y)]} φ(x, y)` for a gauge function `θ(t, x)`.
pub struct GaugePhased<'a, E: PointEvaluator + ?Sized, F: Fn([f64; 4]) -> f64 + Sync> {
    pub field: &'a E,
    pub theta: F,
}

impl<E: PointEvaluator + ?Sized, F: Fn([f64; 4]) -> f64 + Sync> PointEvaluator for GaugePhased<'_, E, F> {
    fn eval(&self, e: &Event) -> Mat4 {
        let (x, y) = e.to_xy();
        let ph = (self.theta)(x) - (self.theta)(y);
        self.field.eval(e) * num_complex::Complex64::from_polar(1.0, ph)
    }

    fn mass(&self) -> f64 {
        self.field.mass()
    }
}

/// `max ‖φ(y, x) − φ†(x, y)‖` over the given events.
pub fn swap_defect<E: PointEvaluator + ?Sized>(field: &E, events: &[Event]) -> f64 {
    events
        .iter()
        .map(|e| super::basis::max_entry(&(field.eval(&e.swapped()) - field.eval(e).adjoint())))
        .fold(0.0, f64::max)
}

/// Slice of an arbitrary evaluator on `lattice` at `t_S`, with x_D-gradients by
/// five-point differences of step `h`.
pub struct EvaluatorSlice<'a, E: PointEvaluator + ?Sized> {
    pub field: &'a E,
    pub lattice: crate::grid::Lattice,
    pub t_s: f64,
    pub h: f64,
}

impl<E: PointEvaluator + ?Sized> super::observables::SliceSource for EvaluatorSlice<'_, E> {
    fn slice(&self) -> crate::error::Result<super::observables::SliceData> {
        use num_complex::Complex64;
        use rayon::prelude::*;
        let lat = &self.lattice;
        let h = self.h;
        let rows: Vec<(Mat4, [Mat4; 3])> = (0..lat.len())
            .into_par_iter()
            .map(|i| {
                let x = lat.position(i);
                let at = |k: usize, s: f64| {
                    let mut xd = [0.0; 3];
                    xd[k] = s;
                    self.field.eval(&Event { t_s: self.t_s, x_s: x, t_d: 0.0, x_d: xd })
                };
                let v = at(0, 0.0);
                let g = [0, 1, 2].map(|k| {
                    (-at(k, 2.0 * h) + at(k, h) * Complex64::from(8.0) - at(k, -h) * Complex64::from(8.0) + at(k, -2.0 * h)) / Complex64::from(12.0 * h)
                });
                (v, g)
            })
            .collect();
        Ok(super::observables::SliceData {
            lattice: lat.clone(),
            mass: self.field.mass(),
            value: rows.iter().map(|r| r.0).collect(),
            d_grad: [0, 1, 2].map(|k| rows.iter().map(|r| r.1[k]).collect()),
        })
    }
}
