use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::field2d::{is_paired, paired_d_grid, paired_xy_indices, sd_to_xy, xy_to_sd, ComplexScalarField2D, Coords};
use crate::grid::UniformGrid1D;

use super::wavefunction::{check_constants, WaveFunction1D};

/// Scalar two-point field `φ(x_S, x_D)` with its physical constants.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityField {
    field: ComplexScalarField2D,
    hbar: f64,
    mass: f64,
}

impl DensityField {
    /// Wrap an SD field; the x_D grid must be centered so that `x_D = 0` is the line `n_D/2`.
    pub fn new(field: ComplexScalarField2D, hbar: f64, mass: f64) -> Result<Self> {
        field.expect_coords(Coords::SD)?;
        check_constants(hbar, mass)?;
        let gd = field.grid_d();
        if gd.zero_index() != Some(gd.n() / 2) {
            return Err(invalid("x_D grid must contain x_D = 0 at index n_D/2 (x0 = -L_D/2)"));
        }
        Ok(Self { field, hbar, mass })
    }

    pub fn from_fn(
        grid_s: UniformGrid1D,
        grid_d: UniformGrid1D,
        hbar: f64,
        mass: f64,
        f: impl Fn(f64, f64) -> Complex64,
    ) -> Result<Self> {
        Self::new(ComplexScalarField2D::from_fn(grid_s, grid_d, Coords::SD, f), hbar, mass)
    }

    pub fn field(&self) -> &ComplexScalarField2D {
        &self.field
    }

    pub fn field_mut(&mut self) -> &mut ComplexScalarField2D {
        &mut self.field
    }

    pub fn into_field(self) -> ComplexScalarField2D {
        self.field
    }

    pub fn grid_s(&self) -> &UniformGrid1D {
        self.field.grid_s()
    }

    pub fn grid_d(&self) -> &UniformGrid1D {
        self.field.grid_d()
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// Column index of `x_D = 0`.
    pub fn zero_d_index(&self) -> usize {
        self.grid_d().n() / 2
    }

    /// `φ(x_S, 0)` for every `x_S`.
    pub fn diagonal(&self) -> Vec<Complex64> {
        let j0 = self.zero_d_index();
        (0..self.grid_s().n()).map(|i| self.field.get(i, j0)).collect()
    }

    /// The x_D line at fixed `x_S` index.
    pub fn d_line(&self, i: usize) -> &[Complex64] {
        let n1 = self.grid_d().n();
        &self.field.samples()[i * n1..(i + 1) * n1]
    }

    pub fn hermiticity_defect(&self) -> f64 {
        self.field.hermiticity_defect().expect("SD field with centered x_D grid")
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.field.max_abs_diff(&other.field)
    }

    /// View on the (x, y) grid; requires the paired x_D grid.
    pub fn to_xy(&self) -> Result<ComplexScalarField2D> {
        sd_to_xy(&self.field)
    }

    pub fn from_xy(field: &ComplexScalarField2D, hbar: f64, mass: f64) -> Result<Self> {
        Self::new(xy_to_sd(field)?, hbar, mass)
    }
}

/// `φ(x, y) = ψ(x) ψ*(y)` on the paired SD grid of `ψ`'s grid.
pub fn lift_pure(psi: &WaveFunction1D) -> DensityField {
    lift_pair(psi, psi).expect("a wavefunction pairs with itself")
}

/// `φ(x, y) = ψ_a(x) ψ_b*(y)` on the paired SD grid.
pub fn lift_pair(a: &WaveFunction1D, b: &WaveFunction1D) -> Result<DensityField> {
    if !a.grid().same_as(b.grid()) {
        return Err(Error::GridMismatch("lifted wavefunctions must share a grid".into()));
    }
    let g = *a.grid();
    let n = g.n();
    let gd = paired_d_grid(&g);
    let mut f = ComplexScalarField2D::zeros(g, gd, Coords::SD);
    let (sa, sb) = (a.samples(), b.samples());
    for i in 0..n {
        for j in 0..n {
            let (ia, ib) = paired_xy_indices(n, i, j);
            f.set(i, j, sa[ia] * sb[ib].conj());
        }
    }
    DensityField::new(f, a.hbar(), a.mass())
}

/// `φ(x, y) = ψ(x) ψ*(y)` sampled directly on the (x, y) grid.
pub fn lift_pure_xy(psi: &WaveFunction1D) -> ComplexScalarField2D {
    let g = *psi.grid();
    let s = psi.samples();
    let n = g.n();
    let mut out = ComplexScalarField2D::zeros(g, g, Coords::XY);
    for a in 0..n {
        for b in 0..n {
            out.set(a, b, s[a] * s[b].conj());
        }
    }
    out
}

/// Weighted sum of lifts, a hermitian mixed-state field.
pub fn lift_mixture(states: &[(f64, WaveFunction1D)]) -> Result<DensityField> {
    let (w0, first) = states.first().ok_or_else(|| invalid("empty mixture"))?;
    let mut acc = lift_pure(first);
    acc.field_mut().samples_mut().iter_mut().for_each(|v| *v *= *w0);
    for (w, psi) in &states[1..] {
        let l = lift_pure(psi);
        if !is_paired(l.grid_s(), acc.grid_d()) {
            return Err(Error::GridMismatch("mixture states must share a grid".into()));
        }
        for (a, b) in acc.field_mut().samples_mut().iter_mut().zip(l.field().samples()) {
            *a += b * *w;
        }
    }
    Ok(acc)
}

/// Real representation `φ_R = Re φ + Im φ` on the SD grid.
#[derive(Clone, Debug, PartialEq)]
pub struct RealRepresentation {
    pub grid_s: UniformGrid1D,
    pub grid_d: UniformGrid1D,
    pub samples: Vec<f64>,
}

/// Hermiticity tolerance accepted by [`to_real_rep`].
pub const REAL_REP_HERMITICITY_TOL: f64 = 1e-8;

pub fn to_real_rep(phi: &DensityField) -> Result<RealRepresentation> {
    let defect = phi.hermiticity_defect();
    if defect > REAL_REP_HERMITICITY_TOL {
        return Err(Error::NotHermitian(defect));
    }
    Ok(RealRepresentation {
        grid_s: *phi.grid_s(),
        grid_d: *phi.grid_d(),
        samples: phi.field().samples().iter().map(|v| v.re + v.im).collect(),
    })
}

/// Split `φ_R` into its part even under `x_D → −x_D` (the real part) and its odd part
/// (the imaginary part).
pub fn from_real_rep(rep: &RealRepresentation, hbar: f64, mass: f64) -> Result<DensityField> {
    let (n0, n1) = (rep.grid_s.n(), rep.grid_d.n());
    if rep.samples.len() != n0 * n1 {
        return Err(Error::GridMismatch("real representation has the wrong length".into()));
    }
    let mut f = ComplexScalarField2D::zeros(rep.grid_s, rep.grid_d, Coords::SD);
    for i in 0..n0 {
        for j in 0..n1 {
            let m = (n1 - j) % n1;
            let (p, q) = (rep.samples[i * n1 + j], rep.samples[i * n1 + m]);
            f.set(i, j, Complex64::new(0.5 * (p + q), 0.5 * (p - q)));
        }
    }
    DensityField::new(f, hbar, mass)
}
