//! Residuals of the equations of motion.

use num_complex::Complex64;
use rayon::prelude::*;

use super::basis::{dirac_basis, max_entry, Mat4};
use super::evaluator::{Event, PointEvaluator};
use super::field::MatrixField;
use super::spectral::{gradient, TdFamily};

/// Pointwise `H₀φ` for an x_D-independent field, where `∂_x = ∂_y = ½∂_S`.
pub fn apply_h0(field: &MatrixField) -> Vec<Mat4> {
    let b = dirac_basis();
    let grad = gradient(field);
    let m = Complex64::from(field.mass());
    let mi = Complex64::new(0.0, -0.5);
    field
        .samples()
        .iter()
        .enumerate()
        .map(|(i, phi)| {
            let mut acc = (b.beta * phi - phi * b.beta) * m;
            for k in 0..3 {
                acc += (b.alpha[k] * grad[k][i] + grad[k][i] * b.alpha[k]) * mi;
            }
            acc
        })
        .collect()
}

/// `max ‖i∂_tφ − H₀φ‖` for a static candidate (`∂_tφ = 0`).
pub fn residual_free(field: &MatrixField) -> f64 {
    apply_h0(field).iter().map(max_entry).fold(0.0, f64::max)
}

/// Residuals of the separate `t_x` and `t_y` equations along a `t_D` family at `t_D`,
/// with `∂_{t_D}` by fourth-order differences of step `h`.
///
/// The family is `t_S`-independent, so `∂_{t_x} = −∂_{t_D}` and `∂_{t_y} = ∂_{t_D}`.
pub fn residual_td_family(family: &TdFamily, t_d: f64, h: f64) -> (f64, f64) {
    let b = dirac_basis();
    let at = |s: f64| family.at(t_d + s * h);
    let (p2, p1, m1, m2) = (at(2.0), at(1.0), at(-1.0), at(-2.0));
    let center = at(0.0);
    let grad = gradient(&center);
    let m = Complex64::from(family.mass());
    let i1 = Complex64::new(0.0, 1.0);
    let mut r42: f64 = 0.0;
    let mut r43: f64 = 0.0;
    for i in 0..center.samples().len() {
        let dtd = (-p2.samples()[i] + p1.samples()[i] * Complex64::from(8.0) - m1.samples()[i] * Complex64::from(8.0) + m2.samples()[i]) / Complex64::from(12.0 * h);
        let phi = center.samples()[i];
        let mut ax = Mat4::zeros();
        let mut ay = Mat4::zeros();
        for k in 0..3 {
            let d = grad[k][i] * Complex64::from(0.5);
            ax += b.alpha[k] * d;
            ay += d * b.alpha[k];
        }
        // i ∂_{t_x}φ = −i α_k ∂_{x_k}φ + m β φ
        let e42 = dtd * (-i1) - (ax * (-i1) + b.beta * phi * m);
        // i ∂_{t_y}φ = −i ∂_{y_k}φ α_k − m φ β
        let e43 = dtd * i1 - (ay * (-i1) - phi * b.beta * m);
        r42 = r42.max(max_entry(&e42));
        r43 = r43.max(max_entry(&e43));
    }
    (r42, r43)
}

/// External four-potential `A^μ(t, x)` (upper index) and coupling `e`.
pub struct Coupling<'a> {
    pub potential: &'a (dyn Fn([f64; 4]) -> [f64; 4] + Sync),
    pub charge: f64,
}

fn lower(a: [f64; 4]) -> [f64; 4] {
    [a[0], -a[1], -a[2], -a[3]]
}

fn fd4(f: impl Fn(f64) -> Mat4, h: f64) -> Mat4 {
    (-f(2.0 * h) + f(h) * Complex64::from(8.0) - f(-h) * Complex64::from(8.0) + f(-2.0 * h)) / Complex64::from(12.0 * h)
}

/// `∂φ/∂x^μ` (first argument) or `∂φ/∂y^μ` (second) at `e`.
fn partial<E: PointEvaluator + ?Sized>(field: &E, e: &Event, mu: usize, second: bool, h: f64) -> Mat4 {
    let (x, y) = e.to_xy();
    fd4(
        |s| {
            let (mut xx, mut yy) = (x, y);
            if second {
                yy[mu] += s;
            } else {
                xx[mu] += s;
            }
            field.eval(&Event::from_xy(xx, yy))
        },
        h,
    )
}

/// `iγ^μ(∂_{x^μ} − ieA_μ(x))φ − mφ` at one event.
pub fn residual_40_at<E: PointEvaluator + ?Sized>(field: &E, e: &Event, h: f64, coupling: Option<&Coupling>) -> Mat4 {
    let b = dirac_basis();
    let i1 = Complex64::new(0.0, 1.0);
    let phi = field.eval(e);
    let a = coupling.map(|c| (lower((c.potential)(e.to_xy().0)), c.charge));
    let mut acc = -phi * Complex64::from(field.mass());
    for mu in 0..4 {
        let mut d = partial(field, e, mu, false, h);
        if let Some((al, q)) = a {
            d -= phi * (i1 * q * al[mu]);
        }
        acc += b.gamma[mu] * d * i1;
    }
    acc
}

/// `i(∂_{y^μ} + ieA_μ(y))φ γ⁰γ^μ + mφγ⁰` at one event.
pub fn residual_41_at<E: PointEvaluator + ?Sized>(field: &E, e: &Event, h: f64, coupling: Option<&Coupling>) -> Mat4 {
    let b = dirac_basis();
    let i1 = Complex64::new(0.0, 1.0);
    let phi = field.eval(e);
    let a = coupling.map(|c| (lower((c.potential)(e.to_xy().1)), c.charge));
    let mut acc = phi * b.gamma[0] * Complex64::from(field.mass());
    for mu in 0..4 {
        let mut d = partial(field, e, mu, true, h);
        if let Some((al, q)) = a {
            d += phi * (i1 * q * al[mu]);
        }
        acc += d * b.gamma[0] * b.gamma[mu] * i1;
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CovariantResidual {
    pub eq40: f64,
    pub eq41: f64,
}

/// Max-norm of both covariant residuals over `events`, derivatives by five-point
/// differences of step `h`.
pub fn residual_covariant<E: PointEvaluator + ?Sized>(field: &E, events: &[Event], h: f64, coupling: Option<&Coupling>) -> CovariantResidual {
    let per: Vec<(f64, f64)> = events
        .par_iter()
        .map(|e| (max_entry(&residual_40_at(field, e, h, coupling)), max_entry(&residual_41_at(field, e, h, coupling))))
        .collect();
    CovariantResidual {
        eq40: per.iter().map(|p| p.0).fold(0.0, f64::max),
        eq41: per.iter().map(|p| p.1).fold(0.0, f64::max),
    }
}
