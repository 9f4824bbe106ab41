//! Minimal coupling on the z-reduced domain, where `φ(z_x, z_y)` varies only along z.
//!
//! `i∂_tφ = H₀φ + eH₁φ` with
//! `H₀φ = −i(α₃∂_xφ + ∂_yφ α₃) + m(βφ − φβ)` and
//! `H₁φ = P(x)φ − φP(y)`, `P = −A⁰ + A^kα_k`,
//! which is `A⁰(y)φ − A⁰(x)φ + A^k(x)α_kφ − A^k(y)φα_k`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::dirac::{dirac_basis, max_entry, mode_exp, spectral_forward, spectral_inverse, FourCurrentField, Mat4, ReducedMatrixField, SliceSource};
use crate::error::{invalid, Error, Result};
use crate::grid::{Lattice, UniformGrid1D};
use crate::io::FieldDump;

use super::potential::{spatial_derivative, FourPotential};

fn plane(grid: &UniformGrid1D) -> Lattice {
    Lattice::new(vec![*grid, *grid]).expect("rank 2")
}

fn check_domain(phi: &ReducedMatrixField, a: &FourPotential) -> Result<()> {
    let lat = a.lattice();
    if lat.rank() != 1 || !lat.axis(0).same_as(phi.grid()) {
        return Err(Error::GridMismatch("the reduced field needs a potential on its own z grid".into()));
    }
    Ok(())
}

/// `P(z) = −A⁰(z) + A^k(z) α_k`.
fn coupling_matrix(a: [f64; 4]) -> Mat4 {
    let b = dirac_basis();
    let mut p = Mat4::identity() * Complex64::from(-a[0]);
    for k in 0..3 {
        p += b.alpha[k] * Complex64::from(a[k + 1]);
    }
    p
}

/// `e^{−iτP}` in closed form: `e^{iτA⁰}(cos τ|A| − i sin τ|A| Â·α)`.
fn coupling_exp(a: [f64; 4], tau: f64) -> Mat4 {
    mode_exp([a[1], a[2], a[3]], 0.0, tau) * Complex64::from_polar(1.0, tau * a[0])
}

/// `H₁φ` without the factor `e`.
pub fn apply_h1(phi: &ReducedMatrixField, a: &FourPotential) -> Result<ReducedMatrixField> {
    check_domain(phi, a)?;
    let n = phi.grid().n();
    let p: Vec<Mat4> = (0..n).map(|i| coupling_matrix(a.at(i))).collect();
    let samples = (0..n * n).into_par_iter().map(|i| p[i / n] * phi.samples()[i] - phi.samples()[i] * p[i % n]).collect();
    ReducedMatrixField::new(*phi.grid(), samples, phi.mass())
}

/// Spectral `H₀φ`.
pub fn apply_h0_reduced(phi: &ReducedMatrixField) -> ReducedMatrixField {
    let (g, m) = (*phi.grid(), phi.mass());
    let lat = plane(&g);
    let b = dirac_basis();
    let n = g.n();
    let spec = spectral_forward(&lat, phi.samples());
    let kz = |bin: usize| if bin == n / 2 { 0.0 } else { g.wavenumber(bin) };
    let out: Vec<Mat4> = spec
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let l = b.alpha[2] * Complex64::from(kz(i / n)) + b.beta * Complex64::from(m);
            let r = b.alpha[2] * Complex64::from(kz(i % n)) - b.beta * Complex64::from(m);
            l * f + f * r
        })
        .collect();
    ReducedMatrixField::new(g, spectral_inverse(&lat, &out), m).expect("shape preserved")
}

/// Exact free flow `φ̂ → e^{−iLt} φ̂ e^{−iRt}`, `L = α₃k_x + mβ`, `R = α₃k_y − mβ`.
pub fn evolve_free_reduced(phi: &ReducedMatrixField, t: f64) -> ReducedMatrixField {
    let (g, m) = (*phi.grid(), phi.mass());
    let lat = plane(&g);
    let n = g.n();
    let kz = |bin: usize| if bin == n / 2 { 0.0 } else { g.wavenumber(bin) };
    let left: Vec<Mat4> = (0..n).map(|p| mode_exp([0.0, 0.0, kz(p)], m, t)).collect();
    let right: Vec<Mat4> = (0..n).map(|q| mode_exp([0.0, 0.0, kz(q)], -m, t)).collect();
    let spec = spectral_forward(&lat, phi.samples());
    let out: Vec<Mat4> = spec.par_iter().enumerate().map(|(i, f)| left[i / n] * f * right[i % n]).collect();
    ReducedMatrixField::new(g, spectral_inverse(&lat, &out), m).expect("shape preserved")
}

/// Exact flow of `i∂_tφ = eH₁φ` over `tau` for a frozen potential.
fn interaction_flow(phi: &ReducedMatrixField, a: &FourPotential, tau: f64) -> ReducedMatrixField {
    let n = phi.grid().n();
    let e = a.coupling();
    let u: Vec<Mat4> = (0..n).map(|i| coupling_exp(a.at(i), e * tau)).collect();
    let samples = (0..n * n).into_par_iter().map(|i| u[i / n] * phi.samples()[i] * u[i % n].adjoint()).collect();
    ReducedMatrixField::new(*phi.grid(), samples, phi.mass()).expect("shape preserved")
}

fn check_step(phi: &ReducedMatrixField, dt: f64) -> Result<()> {
    let dx = phi.grid().dx();
    if !(dt > 0.0) || dt > dx {
        return Err(invalid(format!("dt = {dt} must lie in (0, dx = {dx}]")));
    }
    Ok(())
}

/// Strang splitting of `i∂_tφ = H₀φ + eH₁φ` under a static potential.
///
/// With `e = 0` the interaction half-steps are skipped, so the run is bitwise the free one.
pub fn evolve_interacting(phi: &ReducedMatrixField, a: &FourPotential, dt: f64, steps: usize) -> Result<ReducedMatrixField> {
    check_domain(phi, a)?;
    check_step(phi, dt)?;
    let coupled = a.coupling() != 0.0 && !a.is_zero();
    let mut out = phi.clone();
    for _ in 0..steps {
        out = strang_step(&out, a, dt, coupled);
    }
    Ok(out)
}

fn strang_step(phi: &ReducedMatrixField, a: &FourPotential, dt: f64, coupled: bool) -> ReducedMatrixField {
    if !coupled {
        return evolve_free_reduced(phi, dt);
    }
    let half = interaction_flow(phi, a, 0.5 * dt);
    interaction_flow(&evolve_free_reduced(&half, dt), a, 0.5 * dt)
}

/// `max ‖i∂_tφ − H₀φ − eH₁φ‖` at the middle of five snapshots spaced `dt`,
/// with a fourth-order central difference in time.
pub fn residual_interacting(window: &[ReducedMatrixField], dt: f64, a: &FourPotential, e: f64) -> Result<f64> {
    if window.len() != 5 {
        return Err(invalid(format!("need 5 snapshots, got {}", window.len())));
    }
    let mid = &window[2];
    let h0 = apply_h0_reduced(mid);
    let h1 = apply_h1(mid, a)?;
    let i_over = Complex64::new(0.0, 1.0 / (12.0 * dt));
    Ok((0..mid.samples().len())
        .map(|i| {
            let s = |k: usize| window[k].samples()[i];
            let dphi = (s(0) - s(1) * Complex64::from(8.0) + s(3) * Complex64::from(8.0) - s(4)) * i_over;
            max_entry(&(dphi - h0.samples()[i] - h1.samples()[i] * Complex64::from(e)))
        })
        .fold(0.0, f64::max))
}

/// `J^μ(z) = e Tr(φ(z, z) γ⁰γ^μ)` on the z line.
pub fn reduced_current(phi: &ReducedMatrixField, e: f64) -> FourCurrentField {
    let b = dirac_basis();
    let ops = [Mat4::identity(), b.alpha[0], b.alpha[1], b.alpha[2]];
    let d = phi.diagonal();
    let mut imag: f64 = 0.0;
    let j = [0, 1, 2, 3].map(|mu| {
        d.iter()
            .map(|m| {
                let t = (m * ops[mu]).trace() * Complex64::from(e);
                imag = imag.max(t.im.abs());
                t.re
            })
            .collect()
    });
    FourCurrentField { lattice: Lattice::line(*phi.grid()), j, imag }
}

/// `J^μ = e Tr(φ γ⁰γ^μ)` on the `x_D = 0` slice of a 3-D source.
pub fn current_density<S: SliceSource + ?Sized>(phi: &S, e: f64) -> Result<FourCurrentField> {
    let mut j = crate::dirac::current_j(&phi.slice()?);
    for v in j.j.iter_mut().flatten() {
        *v *= e;
    }
    j.imag *= e.abs();
    Ok(j)
}

/// `max |∂_tJ⁰ + ∂_zJ³|` at the middle of five z-line currents spaced `dt`.
pub fn line_continuity_defect(snapshots: &[FourCurrentField], dt: f64) -> Result<f64> {
    if snapshots.len() != 5 {
        return Err(invalid(format!("need 5 snapshots, got {}", snapshots.len())));
    }
    let lat = &snapshots[2].lattice;
    if lat.rank() != 1 || !snapshots.iter().all(|s| s.lattice.same_as(lat)) {
        return Err(Error::GridMismatch("continuity on the z line needs matching rank-1 currents".into()));
    }
    let dz = spatial_derivative(lat, &snapshots[2].j[3], 2);
    let j0 = |k: usize, i: usize| snapshots[k].j[0][i];
    Ok((0..lat.len())
        .map(|i| ((-j0(4, i) + 8.0 * j0(3, i) - 8.0 * j0(1, i) + j0(0, i)) / (12.0 * dt) + dz[i]).abs())
        .fold(0.0, f64::max))
}

/// Smooth step from 1 on `|d| ≤ a` to 0 at `|d| ≥ b`, flat to all orders at both ends.
fn plateau(d: f64, a: f64, b: f64) -> f64 {
    let d = d.abs();
    if d <= a {
        return 1.0;
    }
    if d >= b {
        return 0.0;
    }
    let s = |u: f64| if u > 0.0 { (-1.0 / u).exp() } else { 0.0 };
    let u = (b - d) / (b - a);
    s(u) / (s(u) + s(1.0 - u))
}

/// Torus image of an x_D-independent field `F(x_S)`.
///
/// `x_D` is taken as the minimal image of `y − x` and the field is windowed to 1 for
/// `|x_D| ≤ plateau_half_width`, falling smoothly to 0 at `|x_D| = L/2`, where the
/// image would otherwise be discontinuous. Near the diagonal it is exactly `F`.
pub fn from_static_profile(grid: UniformGrid1D, mass: f64, plateau_half_width: f64, profile: impl Fn(f64) -> Mat4 + Sync) -> Result<ReducedMatrixField> {
    let half = 0.5 * grid.length();
    if !(plateau_half_width > 0.0 && plateau_half_width < half) {
        return Err(invalid(format!("plateau half-width must lie in (0, L/2 = {half})")));
    }
    let n = grid.n();
    let samples = (0..n * n)
        .into_par_iter()
        .map(|i| {
            let (x, y) = (grid.point(i / n), grid.point(i % n));
            let d = grid.wrap(y - x + grid.x0() + half) - grid.x0() - half;
            let w = plateau(d, plateau_half_width, half);
            if w == 0.0 {
                Mat4::zeros()
            } else {
                profile(grid.wrap(x + 0.5 * d)) * Complex64::from(w)
            }
        })
        .collect();
    ReducedMatrixField::new(grid, samples, mass)
}

/// DMF1 dump with dims `[n, n]` and 16 components.
pub fn reduced_dump(phi: &ReducedMatrixField) -> FieldDump {
    let n = phi.grid().n() as u32;
    let data = phi.samples().iter().flat_map(|m| (0..16).map(move |c| m[(c / 4, c % 4)])).collect();
    FieldDump::new(vec![n, n], 16, data).expect("dims match payload")
}
