//! The four static solutions localized at `x_S = 0`, with `δ` replaced by a Gaussian.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::delta::RegularizedDelta;
use crate::error::{invalid, Result};
use crate::grid::Lattice;

use super::basis::Mat4;
use super::field::{FieldKind, MatrixField};

/// `A`, `B`: positive charge with spin up, down. `C`, `D`: negative charge with spin down, up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RestKind {
    A,
    B,
    C,
    D,
}

impl RestKind {
    pub const ALL: [RestKind; 4] = [RestKind::A, RestKind::B, RestKind::C, RestKind::D];

    /// Expected `(Q, S₃)`.
    pub fn charge_and_spin(self) -> (f64, f64) {
        match self {
            RestKind::A => (1.0, 0.5),
            RestKind::B => (1.0, -0.5),
            RestKind::C => (-1.0, -0.5),
            RestKind::D => (-1.0, 0.5),
        }
    }

    /// Partner under charge conjugation.
    pub fn conjugate(self) -> RestKind {
        match self {
            RestKind::A => RestKind::D,
            RestKind::B => RestKind::C,
            RestKind::C => RestKind::B,
            RestKind::D => RestKind::A,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            RestKind::A => "A",
            RestKind::B => "B",
            RestKind::C => "C",
            RestKind::D => "D",
        }
    }
}

/// The rest matrix for profile value `g` and gradient `dg`.
pub fn rest_matrix(kind: RestKind, mass: f64, g: f64, dg: [f64; 3]) -> Mat4 {
    let i = Complex64::new(0.0, 1.0);
    let r = Complex64::from;
    let (d1, d2, d3) = (r(dg[0]), r(dg[1]), r(dg[2]));
    let md = r(4.0 * mass * g);
    let z = r(0.0);
    #[rustfmt::skip]
    let m = match kind {
        RestKind::A => Mat4::new(
            md, z, i * d3, i * d1 + d2,
            z, z, z, z,
            -i * d3, z, z, z,
            d2 - i * d1, z, z, z,
        ),
        RestKind::B => Mat4::new(
            z, z, z, z,
            z, md, i * d1 - d2, -i * d3,
            z, -i * d1 - d2, z, z,
            z, i * d3, z, z,
        ),
        RestKind::C => Mat4::new(
            z, z, -i * d3, z,
            z, z, d2 - i * d1, z,
            i * d3, i * d1 + d2, -md, z,
            z, z, z, z,
        ),
        RestKind::D => Mat4::new(
            z, z, z, -i * d1 - d2,
            z, z, z, i * d3,
            z, z, z, z,
            i * d1 - d2, -i * d3, z, -md,
        ),
    };
    m / r(4.0 * mass)
}

/// Rest solution of `kind` centered at the origin, periodized over the lattice.
pub fn rest_solution(kind: RestKind, sigma: f64, mass: f64, lattice: &Lattice) -> Result<MatrixField> {
    if lattice.rank() != 3 {
        return Err(invalid("rest solutions need a 3-D lattice"));
    }
    if !(mass > 0.0 && mass.is_finite()) {
        return Err(invalid(format!("mass must be positive, got {mass}")));
    }
    let delta = RegularizedDelta::new(0.0, sigma)?;
    for g in lattice.axes() {
        delta.check_resolved(g)?;
    }
    let ls: Vec<f64> = lattice.axes().iter().map(|g| g.length()).collect();
    MatrixField::from_fn(lattice.clone(), mass, FieldKind::Rest(kind), |x| {
        let v = [0, 1, 2].map(|a| delta.periodic_value(x[a], ls[a]));
        let dv = [0, 1, 2].map(|a| delta.periodic_derivative(x[a], ls[a]));
        let g = v[0] * v[1] * v[2];
        let dg = [dv[0] * v[1] * v[2], v[0] * dv[1] * v[2], v[0] * v[1] * dv[2]];
        rest_matrix(kind, mass, g, dg)
    })
}
