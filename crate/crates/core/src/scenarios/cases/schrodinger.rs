use std::f64::consts::PI;

use num_complex::Complex64;

use crate::delta::gaussian_delta;
use crate::derivative::DerivativeMode;
use crate::error::{invalid, Result};
use crate::field2d::{dft2, dft2_sd, ComplexScalarField2D, Coords};
use crate::grid::UniformGrid1D;
use crate::io::CsvTrace;
use crate::schrodinger::*;

use super::super::config::Params;
use super::super::Context;
use super::base;

/// Normalized superposition of three packets with distinct centers and carriers.
///
/// Widths stay below one unit so that `x ψ` is negligible at the edges of the default
/// domain, where the periodic derivative sees the jump in `x`.
fn smooth_state(g: UniformGrid1D, p: &Params) -> Result<WaveFunction1D> {
    let bump = |x: f64, c: f64, w: f64| (-(x - c).powi(2) / (2.0 * w * w)).exp();
    let psi = WaveFunction1D::from_fn(g, p.hbar, p.mass, |x| {
        Complex64::from_polar(0.8 * bump(x, p.x0 - 1.2, 0.9), p.k0 * x)
            + Complex64::new(0.5, 0.3) * Complex64::from_polar(bump(x, p.x0 + 1.0, 0.8), -0.7 * x)
            + Complex64::from_polar(0.3 * bump(x, p.x0 + 0.2, 0.7), 1.2 * x)
    })?;
    Ok(psi.normalized())
}

pub(super) fn localized_defaults() -> Params {
    Params { n: 256, length: 20.0, n_d: 64, length_d: 8.0 * PI, sigma: 0.3, k0: 2.0, dt: 1e-3, steps: 1000, ..base() }
}

pub(super) fn free_localized(p: &Params, ctx: &mut Context) -> Result<()> {
    let gs = UniformGrid1D::centered(p.n, p.length)?;
    let gd = UniformGrid1D::centered(p.n_d, p.length_d)?;
    if !plane_wave_fits(&gd, p.k0) {
        return Err(invalid(format!("k0 = {} is not a wavenumber of the x_D grid (spacing {})", p.k0, gd.dk())));
    }
    let lp = LocalizedParams { x0: p.x0, k0: p.k0, sigma: p.sigma, hbar: p.hbar, mass: p.mass };
    let v = PotentialSpec::Zero;
    let mut phi = localized_solution(&gs, &gd, &lp, 0.0)?;
    let stepper = DmStepper::new(&phi, &v, p.dt)?;
    let mut trace = CsvTrace::new(["t", "position", "momentum", "energy", "position_exact"]);
    let first = observables(&phi, &v, DerivativeMode::Spectral);
    let mut done = 0;
    let mut snaps = p.snapshot_steps();
    if snaps.last() != Some(&p.steps) {
        snaps.push(p.steps);
    }
    let mut last = first;
    for s in snaps {
        stepper.advance(&mut phi, s - done);
        done = s;
        let t = s as f64 * p.dt;
        last = observables(&phi, &v, DerivativeMode::Spectral);
        trace.push(&[t, last.q, last.p, last.e, p.x0 + lp.velocity() * t]);
        let f = phi.field().clone();
        ctx.write_dump(&format!("phi_{s:06}.dmf1"), || f.to_dump())?;
    }
    ctx.write_csv("trace.csv", &trace)?;
    let t = p.total_time();
    let exact = localized_solution(&gs, &gd, &lp, t)?;
    ctx.within("position", last.q, p.x0 + lp.velocity() * t, 1e-6);
    ctx.within("momentum-drift", last.p, first.p, 1e-10);
    ctx.within("energy", last.e, p.hbar * p.hbar * p.k0 * p.k0 / (2.0 * p.mass), 1e-6);
    ctx.at_most("shape", phi.max_abs_diff(&exact), 0.0, 1e-8);
    Ok(())
}

pub(super) fn commutator_defaults() -> Params {
    Params { n: 128, length: 20.0, k0: 0.9, omega: 1.0, dt: 1e-3, steps: 1000, ..base() }
}

pub(super) fn commutator(p: &Params, ctx: &mut Context) -> Result<()> {
    let g = UniformGrid1D::centered(p.n, p.length)?;
    let psi = smooth_state(g, p)?;
    let phi = lift_pure(&psi);
    ctx.at_most("generator-commutator", commutator_defect(&phi), 0.0, 1e-12);
    ctx.at_most("canonical-commutator", pure_commutator_residual(&psi), 0.0, 1e-10);

    let v = PotentialSpec::Harmonic { omega: p.omega };
    let dm = DmStepper::new(&phi, &v, p.dt)?;
    let pure = PureStepper::new(&psi, &v, p.dt)?;
    let (mut a, mut b) = (phi, psi);
    let mut trace = CsvTrace::new(["t", "lift_discrepancy"]);
    let mut done = 0;
    let mut worst: f64 = 0.0;
    let mut snaps = p.snapshot_steps();
    if snaps.last() != Some(&p.steps) {
        snaps.push(p.steps);
    }
    for s in snaps {
        dm.advance(&mut a, s - done);
        pure.advance(&mut b, s - done);
        done = s;
        let d = a.max_abs_diff(&lift_pure(&b));
        worst = worst.max(d);
        trace.push(&[s as f64 * p.dt, d]);
    }
    ctx.write_csv("lift_evolution.csv", &trace)?;
    ctx.at_most("lift-evolution", worst, 0.0, 1e-8);
    Ok(())
}

pub(super) fn momentum_defaults() -> Params {
    Params { n: 128, length: 20.0, n_d: 64, length_d: 8.0 * PI, sigma: 0.5, x0: 1.0, k0: 2.0, ..base() }
}

pub(super) fn momentum_symmetry(p: &Params, ctx: &mut Context) -> Result<()> {
    let g = UniformGrid1D::centered(p.n, p.length)?;
    let psi = smooth_state(g, p)?;
    let phi = lift_pure(&psi);
    let p_slice = observable_p(&phi, DerivativeMode::Spectral);
    let p_sd = observable_p_momentum(&dft2_sd(phi.field())?, p.hbar)?;
    let p_xy = observable_p_momentum_xy(&dft2(&lift_pure_xy(&psi))?, p.hbar)?;
    ctx.at_most("momentum-forms[sd]", (p_slice - p_sd).norm(), 0.0, 1e-8);
    ctx.at_most("momentum-forms[xy]", (p_slice - p_xy).norm(), 0.0, 1e-8);
    let v = PotentialSpec::Zero;
    let e_slice = observable_e(&phi, &v, DerivativeMode::Spectral);
    let e_k = observable_e_momentum(&dft2_sd(phi.field())?, p.hbar, p.mass, &v)?;
    ctx.at_most("energy-forms", (e_slice - e_k).norm(), 0.0, 1e-8);

    // g_σ(x_S − x0) e^{−i k0 x_D} transforms to δ_{k_S,k0} e^{i k_D x0} e^{−σ²k_D²/2}.
    let gd = UniformGrid1D::centered(p.n_d, p.length_d)?;
    let prof = gaussian_delta(&g, p.x0, p.sigma)?;
    let mut f = ComplexScalarField2D::zeros(g, gd, Coords::SD);
    for i in 0..g.n() {
        for j in 0..gd.n() {
            f.set(i, j, Complex64::from_polar(prof[i], -p.k0 * gd.point(j)));
        }
    }
    let k = dft2_sd(&f)?;
    let (gks, gkd) = (*k.grid_s(), *k.grid_d());
    let row = gks
        .index_of(p.k0)
        .ok_or_else(|| invalid(format!("k0 = {} is not a point of the k_S grid (spacing {})", p.k0, gks.dx())))?;
    let mut worst: f64 = 0.0;
    let mut trace = CsvTrace::new(["k_d", "re", "im", "re_exact", "im_exact"]);
    for a in 0..gks.n() {
        for b in 0..gkd.n() {
            let kd = gkd.point(b);
            let got = k.get(a, b) * gks.dx();
            let want = if a == row { Complex64::from_polar((-0.5 * p.sigma * p.sigma * kd * kd).exp(), kd * p.x0) } else { Complex64::new(0.0, 0.0) };
            worst = worst.max((got - want).norm());
            if a == row {
                trace.push(&[kd, got.re, got.im, want.re, want.im]);
            }
        }
    }
    ctx.write_csv("transform_row.csv", &trace)?;
    ctx.at_most("localized-transform", worst, 0.0, 1e-6);
    Ok(())
}

pub(super) fn beats_defaults() -> Params {
    Params { n: 96, length: 20.0, omega: 1.0, dt: 2.5e-4, steps: 40_000, ..base() }
}

pub(super) fn oscillator_beats(p: &Params, ctx: &mut Context) -> Result<()> {
    let g = UniformGrid1D::centered(p.n, p.length)?;
    let v = PotentialSpec::Harmonic { omega: p.omega };
    let s = eigensolve_1d(&g, &v, p.hbar, p.mass, 2, KineticScheme::Spectral)?;
    let (phi10, omega) = stationary_pair(&s.states[1], s.energies[1], &s.states[0], s.energies[0])?;
    ctx.within("level-spacing", s.energies[1] - s.energies[0], p.hbar * p.omega, 1e-6 * p.hbar * p.omega);
    let phi00 = lift_pure(&s.states[0]);
    let stepper = DmStepper::new(&phi10, &v, p.dt)?;
    // Keep the phase advance between observations well below π.
    let cadence = ((0.1 / (omega.abs() * p.dt)).floor() as usize).clamp(1, p.steps);
    let mut tracker = PhaseTracker::new(phi10.clone());
    let (mut a, mut b) = (phi10, phi00.clone());
    let mut trace = CsvTrace::new(["t", "phase", "phase_exact", "ground_drift"]);
    let mut done = 0;
    let mut drift: f64 = 0.0;
    while done < p.steps {
        let k = cadence.min(p.steps - done);
        stepper.advance(&mut a, k);
        stepper.advance(&mut b, k);
        done += k;
        let t = done as f64 * p.dt;
        let phase = tracker.observe(&a);
        let d = b.max_abs_diff(&phi00);
        drift = drift.max(d);
        trace.push(&[t, phase, -omega * t, d]);
    }
    ctx.write_csv("beats.csv", &trace)?;
    let rate = -tracker.phase() / p.total_time();
    ctx.within("beat-rate", rate, omega, 1e-3 * omega.abs());
    ctx.at_most("ground-drift", drift, 0.0, 1e-8);
    Ok(())
}
