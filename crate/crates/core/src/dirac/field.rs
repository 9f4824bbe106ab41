use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::grid::Lattice;
use crate::io::FieldDump;

use super::basis::{max_entry, Mat4, Spinor};
use super::observables::{SliceData, SliceSource};
use super::rest::RestKind;
use super::spectral::spinor_gradient;

/// Origin of a matrix field, carried for reports and dumps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldKind {
    Rest(RestKind),
    Lifted,
    Generic,
}

/// 4×4 matrix field independent of x_D, sampled on a periodic 3-D x_S lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixField {
    lattice: Lattice,
    samples: Vec<Mat4>,
    mass: f64,
    kind: FieldKind,
}

impl MatrixField {
    pub fn new(lattice: Lattice, samples: Vec<Mat4>, mass: f64, kind: FieldKind) -> Result<Self> {
        if lattice.rank() != 3 {
            return Err(invalid(format!("matrix fields live on 3-D lattices, got rank {}", lattice.rank())));
        }
        if samples.len() != lattice.len() {
            return Err(Error::GridMismatch(format!("{} samples for {} lattice points", samples.len(), lattice.len())));
        }
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(invalid(format!("mass must be positive, got {mass}")));
        }
        Ok(Self { lattice, samples, mass, kind })
    }

    pub fn zeros(lattice: Lattice, mass: f64) -> Result<Self> {
        let n = lattice.len();
        Self::new(lattice, vec![Mat4::zeros(); n], mass, FieldKind::Generic)
    }

    pub fn from_fn(lattice: Lattice, mass: f64, kind: FieldKind, f: impl Fn([f64; 3]) -> Mat4) -> Result<Self> {
        let samples = (0..lattice.len()).map(|i| f(lattice.position(i))).collect();
        Self::new(lattice, samples, mass, kind)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn samples(&self) -> &[Mat4] {
        &self.samples
    }

    pub fn samples_mut(&mut self) -> &mut [Mat4] {
        &mut self.samples
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub(crate) fn with_samples(&self, samples: Vec<Mat4>) -> Self {
        Self { lattice: self.lattice.clone(), samples, mass: self.mass, kind: self.kind }
    }

    pub fn map(&self, f: impl Fn(&Mat4) -> Mat4) -> Self {
        self.with_samples(self.samples.iter().map(f).collect())
    }

    /// For x_D-independent fields the swap condition `φ(y, x) = φ†(x, y)` is pointwise hermiticity.
    pub fn hermiticity_defect(&self) -> f64 {
        self.samples.iter().map(|m| max_entry(&(m - m.adjoint()))).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().map(max_entry).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert!(self.lattice.same_as(&other.lattice), "fields on different lattices");
        self.samples.iter().zip(&other.samples).map(|(a, b)| max_entry(&(a - b))).fold(0.0, f64::max)
    }

    /// DMF1 dump with 16 row-major components per point.
    pub fn to_dump(&self) -> FieldDump {
        let dims = self.lattice.shape().iter().map(|&n| n as u32).collect();
        let mut data = Vec::with_capacity(16 * self.samples.len());
        for m in &self.samples {
            for r in 0..4 {
                for c in 0..4 {
                    data.push(m[(r, c)]);
                }
            }
        }
        FieldDump::new(dims, 16, data).expect("consistent dump layout")
    }
}

/// Four-component spinor field on a 3-D lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinorField {
    lattice: Lattice,
    samples: Vec<Spinor>,
}

impl SpinorField {
    pub fn new(lattice: Lattice, samples: Vec<Spinor>) -> Result<Self> {
        if lattice.rank() != 3 {
            return Err(invalid("spinor fields live on 3-D lattices"));
        }
        if samples.len() != lattice.len() {
            return Err(Error::GridMismatch("spinor sample count does not match lattice".into()));
        }
        Ok(Self { lattice, samples })
    }

    pub fn from_fn(lattice: Lattice, f: impl Fn([f64; 3]) -> Spinor) -> Result<Self> {
        let samples = (0..lattice.len()).map(|i| f(lattice.position(i))).collect();
        Self::new(lattice, samples)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn samples(&self) -> &[Spinor] {
        &self.samples
    }

    /// `∫ ψ†ψ`.
    pub fn norm_sq(&self) -> f64 {
        self.samples.iter().map(|s| s.norm_squared()).sum::<f64>() * self.lattice.cell_volume()
    }
}

/// `φ(x, y) = ψ(x) ψ†(y)` over all pairs of lattice points.
#[derive(Clone, Debug)]
pub struct LiftedSpinor {
    psi: SpinorField,
    mass: f64,
}

pub fn lift_spinor(psi: &SpinorField, mass: f64) -> LiftedSpinor {
    LiftedSpinor { psi: psi.clone(), mass }
}

impl LiftedSpinor {
    pub fn spinor(&self) -> &SpinorField {
        &self.psi
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// `φ(x_a, y_b)` for flat lattice indices `a`, `b`.
    pub fn pair(&self, a: usize, b: usize) -> Mat4 {
        self.psi.samples[a] * self.psi.samples[b].adjoint()
    }

    /// Restriction to `x = y`.
    pub fn diagonal(&self) -> MatrixField {
        let s = self.psi.samples.iter().map(|v| v * v.adjoint()).collect();
        MatrixField::new(self.psi.lattice.clone(), s, self.mass, FieldKind::Lifted).expect("lattice already validated")
    }

    /// `max ‖φ(y, x) − φ†(x, y)‖` over every `x` and a strided subset of `y`.
    pub fn hermiticity_swap_defect(&self) -> f64 {
        let n = self.psi.samples.len();
        let stride = (n / 64).max(1);
        let mut worst: f64 = 0.0;
        for b in (0..n).step_by(stride) {
            for a in 0..n {
                worst = worst.max(max_entry(&(self.pair(b, a) - self.pair(a, b).adjoint())));
            }
        }
        worst
    }
}

impl SliceSource for LiftedSpinor {
    /// `∂_{D,k}[ψ(x_S − x_D/2) ψ†(x_S + x_D/2)] = ½(ψ ∂_kψ† − ∂_kψ ψ†)`, spectrally.
    fn slice(&self) -> Result<SliceData> {
        let lat = self.psi.lattice();
        let s = self.psi.samples();
        let g = spinor_gradient(lat, s);
        let half = Complex64::from(0.5);
        let d_grad = [0, 1, 2].map(|k| {
            s.iter()
                .zip(&g[k])
                .map(|(v, d)| (v * d.adjoint() - d * v.adjoint()) * half)
                .collect()
        });
        Ok(SliceData { lattice: lat.clone(), mass: self.mass, value: s.iter().map(|v| v * v.adjoint()).collect(), d_grad })
    }
}
