//! Finite boosts of `t_D`-propagated static solutions.
//!
//! `φ'(t'_S, x'_S, t'_D, x'_D) = M φ0(x_S, t_D) M`, `M = cosh(ξ/2) + sinh(ξ/2) n·α`,
//! where `(t_S, x_S)` and `(t_D, x_D)` are the inverse-boosted primed pairs.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::grid::{Lattice, UniformGrid1D};

use super::basis::{alpha_dot, dirac_basis, Mat4};
use super::evaluator::{Event, PointEvaluator};
use super::field::MatrixField;
use super::observables::{SliceData, SliceSource};
use super::spectral::TdFamily;

const UNIT_TOL: f64 = 1e-12;

pub(crate) fn check_unit(n: [f64; 3]) -> Result<()> {
    let len = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    if (len - 1.0).abs() > UNIT_TOL {
        return Err(invalid(format!("direction must be a unit vector, |n| = {len}")));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoostSpec {
    /// Rapidity, `tanh ξ = v`.
    pub rapidity: f64,
    pub direction: [f64; 3],
}

impl BoostSpec {
    pub fn from_velocity(v: f64, direction: [f64; 3]) -> Result<Self> {
        if !(v.abs() < 1.0) {
            return Err(invalid(format!("speed must satisfy |v| < 1, got {v}")));
        }
        check_unit(direction)?;
        Ok(Self { rapidity: v.atanh(), direction })
    }

    pub fn validate(&self) -> Result<()> {
        if !self.rapidity.is_finite() {
            return Err(invalid("rapidity must be finite"));
        }
        check_unit(self.direction)
    }

    pub fn velocity(&self) -> f64 {
        self.rapidity.tanh()
    }

    pub fn gamma(&self) -> f64 {
        self.rapidity.cosh()
    }

    /// `e^{iξ n·B}` acts as `φ → MφM`.
    pub fn spinor_matrix(&self) -> Mat4 {
        let h = 0.5 * self.rapidity;
        Mat4::identity() * Complex64::from(h.cosh()) + alpha_dot(self.direction) * Complex64::from(h.sinh())
    }

    /// Unprimed `(t, x)` of a primed pair, `t = t' cosh ξ − (x'·n) sinh ξ`,
    /// `x = x' + (x'·n) n (cosh ξ − 1) − n t' sinh ξ`.
    pub fn inverse(&self, t: f64, x: [f64; 3]) -> (f64, [f64; 3]) {
        let n = self.direction;
        let (ch, sh) = (self.rapidity.cosh(), self.rapidity.sinh());
        let xn = x[0] * n[0] + x[1] * n[1] + x[2] * n[2];
        let t0 = t * ch - xn * sh;
        let x0 = [0, 1, 2].map(|k| x[k] + xn * n[k] * (ch - 1.0) - n[k] * t * sh);
        (t0, x0)
    }

    /// Forward map, the inverse of [`BoostSpec::inverse`].
    pub fn forward(&self, t: f64, x: [f64; 3]) -> (f64, [f64; 3]) {
        let n = self.direction;
        let (ch, sh) = (self.rapidity.cosh(), self.rapidity.sinh());
        let xn = x[0] * n[0] + x[1] * n[1] + x[2] * n[2];
        let t1 = t * ch + xn * sh;
        let x1 = [0, 1, 2].map(|k| x[k] + xn * n[k] * (ch - 1.0) + n[k] * t * sh);
        (t1, x1)
    }

    /// Index of the coordinate axis `n` points along, if any.
    pub fn axis(&self) -> Option<usize> {
        (0..3).find(|&a| (self.direction[a].abs() - 1.0).abs() < UNIT_TOL)
    }
}

/// Lazily evaluated boosted solution.
#[derive(Clone, Debug)]
pub struct BoostedField {
    family: TdFamily,
    spec: BoostSpec,
    m: Mat4,
    fd_step: f64,
}

impl BoostedField {
    /// `fd_step` is the x'_D difference step used for slice gradients.
    pub fn new(rest: &MatrixField, spec: BoostSpec, fd_step: f64) -> Result<Self> {
        spec.validate()?;
        if !(fd_step > 0.0) {
            return Err(invalid("finite-difference step must be positive"));
        }
        Ok(Self { family: TdFamily::new(rest), spec, m: spec.spinor_matrix(), fd_step })
    }

    pub fn spec(&self) -> &BoostSpec {
        &self.spec
    }

    pub fn family(&self) -> &TdFamily {
        &self.family
    }

    fn axis(&self) -> Result<usize> {
        self.spec.axis().ok_or_else(|| invalid("sliced boosts need a direction along a lattice axis"))
    }

    /// Primed lattice at `t'_S` whose points map exactly onto the rest lattice:
    /// the spacing along `n` contracts by `cosh ξ` and the grid rides with the particle.
    pub fn comoving_lattice(&self, t_s: f64) -> Result<Lattice> {
        let a = self.axis()?;
        let sign = self.spec.direction[a];
        let lat = self.family.base().lattice();
        let (ch, sh) = (self.spec.rapidity.cosh(), self.spec.rapidity.sinh());
        let mut axes = lat.axes().to_vec();
        let g = lat.axis(a);
        // x∥ = x'∥ cosh ξ − t' sinh ξ along n, so x'∥ = (x∥ + t' sinh ξ)/cosh ξ.
        let x0 = if sign > 0.0 { (g.x0() + t_s * sh) / ch } else { (g.x0() - t_s * sh) / ch };
        axes[a] = UniformGrid1D::new(g.n(), x0, g.dx() / ch)?;
        Lattice::new(axes)
    }

    /// Samples on the co-moving lattice at `t'_S`, with primed difference coordinates
    /// `(t'_D, x'_D)`. Only `t_D` enters the rest family, so every sample is exact.
    pub fn slice_at(&self, t_s: f64, t_d: f64, x_d: [f64; 3]) -> Result<(Lattice, Vec<Mat4>)> {
        let lat = self.comoving_lattice(t_s)?;
        let (td0, _) = self.spec.inverse(t_d, x_d);
        let src = self.family.at(td0);
        // Primed point i maps to rest point i for either sign of n.
        let samples = src.samples().iter().map(|s| self.m * s * self.m).collect();
        Ok((lat, samples))
    }
}

impl PointEvaluator for BoostedField {
    fn eval(&self, e: &Event) -> Mat4 {
        let (_, xs) = self.spec.inverse(e.t_s, e.x_s);
        let (td, _) = self.spec.inverse(e.t_d, e.x_d);
        self.m * self.family.eval(xs, td) * self.m
    }

    fn mass(&self) -> f64 {
        self.family.mass()
    }
}

/// Physical slice `t'_D = x'_D = 0` at a fixed `t'_S`.
#[derive(Clone, Debug)]
pub struct BoostedSlice<'a> {
    pub field: &'a BoostedField,
    pub t_s: f64,
}

impl SliceSource for BoostedSlice<'_> {
    /// x'_D-gradient by central fourth-order differences of step `fd_step`.
    fn slice(&self) -> Result<SliceData> {
        let h = self.field.fd_step;
        let (lat, value) = self.field.slice_at(self.t_s, 0.0, [0.0; 3])?;
        let n = lat.len();
        let mut d_grad = [vec![Mat4::zeros(); n], vec![Mat4::zeros(); n], vec![Mat4::zeros(); n]];
        for (k, dst) in d_grad.iter_mut().enumerate() {
            if self.field.spec.direction[k] == 0.0 {
                // x'_D ⊥ n leaves t_D unchanged and the family ignores x_D.
                continue;
            }
            let at = |s: f64| {
                let mut xd = [0.0; 3];
                xd[k] = s * h;
                self.field.slice_at(self.t_s, 0.0, xd).map(|r| r.1)
            };
            let (p2, p1, m1, m2) = (at(2.0)?, at(1.0)?, at(-1.0)?, at(-2.0)?);
            for i in 0..n {
                dst[i] = (-p2[i] + p1[i] * Complex64::from(8.0) - m1[i] * Complex64::from(8.0) + m2[i]) / Complex64::from(12.0 * h);
            }
        }
        Ok(SliceData { lattice: lat, mass: self.field.mass(), value, d_grad })
    }
}

/// `B_k φ = −(i/2)(α_k φ + φ α_k)`.
pub fn boost_generator(phi: &Mat4, k: usize) -> Mat4 {
    let a = dirac_basis().alpha[k];
    (a * phi + phi * a) * Complex64::new(0.0, -0.5)
}

/// How far a sliced field reaches along the boost axis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupportReport {
    pub peak: f64,
    /// Largest `‖φ‖/peak` at `|s − center| > half_width`.
    pub outside_ratio: f64,
    /// Largest `|s − center|` where `‖φ‖ > threshold · peak`.
    pub extent: f64,
}

pub fn support_report(lattice: &Lattice, samples: &[Mat4], axis: usize, center: f64, half_width: f64, threshold: f64, reference_peak: Option<f64>) -> SupportReport {
    let peak = reference_peak.unwrap_or_else(|| samples.iter().map(super::basis::max_entry).fold(0.0, f64::max));
    let mut outside: f64 = 0.0;
    let mut extent: f64 = 0.0;
    for (i, m) in samples.iter().enumerate() {
        let d = (lattice.position(i)[axis] - center).abs();
        let v = super::basis::max_entry(m);
        if d > half_width {
            outside = outside.max(v / peak);
        }
        if v > threshold * peak {
            extent = extent.max(d);
        }
    }
    SupportReport { peak, outside_ratio: outside, extent }
}
