use std::f64::consts::PI;

use num_complex::Complex64;

use crate::delta::RegularizedDelta;
use crate::dirac::{FourCurrentField, ReducedMatrixField, Spinor};
use crate::em::*;
use crate::error::Result;
use crate::grid::{Lattice, UniformGrid1D};
use crate::io::CsvTrace;

use super::super::config::Params;
use super::super::Context;
use super::base;

/// Duration of the smooth switch-on of the static Coulomb source.
const COULOMB_RAMP: f64 = 150.0;
/// Half-width of the interior box where the Coulomb profile is compared.
const COULOMB_INTERIOR: f64 = 4.0;

/// Gaussian packet with a fixed unit spinor and carrier `k0`.
fn packet(g: &UniformGrid1D, p: &Params) -> Vec<Spinor> {
    let u = Spinor::new(Complex64::new(0.6, 0.1), Complex64::new(-0.2, 0.4), Complex64::new(0.3, -0.5), Complex64::new(0.1, 0.2));
    let u = u / Complex64::from(u.norm());
    g.points()
        .iter()
        .map(|&z| {
            let d = g.wrap(z - p.x0);
            u * Complex64::from_polar((-d * d / (2.0 * p.sigma * p.sigma)).exp(), p.k0 * z)
        })
        .collect()
}

/// Smooth periodic external potential on the reduced line.
fn external_potential(g: &UniformGrid1D, e: f64) -> Result<FourPotential> {
    let k = 2.0 * PI / g.length();
    FourPotential::from_fn(Lattice::line(*g), e, |x| [0.5 * (k * x[0]).cos(), 0.1 * (k * x[0]).sin(), 0.0, 0.2 * (2.0 * k * x[0]).sin()])
}

fn zero_current(lat: &Lattice) -> FourCurrentField {
    FourCurrentField { lattice: lat.clone(), j: [0, 1, 2, 3].map(|_| vec![0.0; lat.len()]), imag: 0.0 }
}

/// Smooth step from 0 to 1 over `[0, tau]`, flat to all orders at both ends.
fn ramp(t: f64, tau: f64) -> f64 {
    let s = |u: f64| if u > 0.0 { (-1.0 / u).exp() } else { 0.0 };
    let u = (t / tau).clamp(0.0, 1.0);
    s(u) / (s(u) + s(1.0 - u))
}

pub(super) fn gauge_defaults() -> Params {
    Params { n: 64, length: 16.0, charge: 0.1, k0: 0.5, theta_amplitude: 0.3, dt: 1e-3, steps: 1000, ..base() }
}

pub(super) fn gauge_invariance(p: &Params, ctx: &mut Context) -> Result<()> {
    let g = UniformGrid1D::centered(p.n, p.length)?;
    let a = external_potential(&g, p.charge)?;
    let k = 2.0 * PI / p.length;
    let amp = p.theta_amplitude;
    let theta = GaugeFunction::from_fn(Lattice::line(g), |x| amp * ((k * x[0]).sin() + (2.0 / 3.0) * (2.0 * k * x[0]).cos()))?;
    let ap = gauge_transform_a(&a, &theta)?;
    let tv = theta.values();
    let phi0 = ReducedMatrixField::lift(g, &packet(&g, p), p.mass)?;
    let (mut lhs, mut rhs) = (phi0.gauge_phase(&tv)?, phi0);
    let mut trace = CsvTrace::new(["t", "discrepancy"]);
    let mut done = 0;
    let mut worst: f64 = 0.0;
    let mut snaps = p.snapshot_steps();
    if snaps.last() != Some(&p.steps) {
        snaps.push(p.steps);
    }
    for s in snaps {
        if s > done {
            lhs = evolve_interacting(&lhs, &ap, p.dt, s - done)?;
            rhs = evolve_interacting(&rhs, &a, p.dt, s - done)?;
            done = s;
        }
        let d = lhs.max_abs_diff(&rhs.gauge_phase(&tv)?);
        worst = worst.max(d);
        trace.push(&[s as f64 * p.dt, d]);
    }
    ctx.write_csv("gauge_trace.csv", &trace)?;
    ctx.at_most("gauge-evolution", worst, 0.0, 1e-6);
    let (j0, j1) = (reduced_current(&rhs, p.charge), reduced_current(&rhs.gauge_phase(&tv)?, p.charge));
    ctx.at_most("current-invariance", j0.max_abs_diff(&j1), 0.0, 1e-14);
    ctx.at_most("field-strength-invariance", field_strength(&a).max_abs_diff(&field_strength(&ap)), 0.0, 1e-10);
    ctx.write_dump("phi_final.dmf1", || reduced_dump(&lhs))?;
    Ok(())
}

pub(super) fn maxwell_defaults() -> Params {
    // The plane-wave run: dt = dx/2 on 256 points over L = 20, reaching T = 5.
    Params { n: 256, length: 20.0, dt: 20.0 / 512.0, steps: 128, ..base() }
}

pub(super) fn maxwell_vacuum(p: &Params, ctx: &mut Context) -> Result<()> {
    plane_wave(p, ctx)?;
    coulomb(p, ctx)?;
    lorenz(ctx)?;
    continuity(p, ctx)
}

fn plane_wave(p: &Params, ctx: &mut Context) -> Result<()> {
    let g = UniformGrid1D::centered(p.n, p.length)?;
    let lat = Lattice::line(g);
    let k = 2.0 * PI / p.length;
    let wave = |x: [f64; 3], t: f64| [0.0, (k * (x[0] - t)).cos(), 0.0, 0.0];
    let mut a = FourPotential::from_fn_at(lat.clone(), 1.0, 0.0, p.dt, wave)?;
    let zero = zero_current(&lat);
    for _ in 0..p.steps {
        a = maxwell_step(&a, &zero, p.dt)?;
    }
    let t = p.total_time();
    let mut trace = CsvTrace::new(["z", "a1", "a1_exact"]);
    let mut err: f64 = 0.0;
    for i in 0..lat.len() {
        let want = wave(lat.position(i), t)[1];
        err = err.max((a.component(1)[i] - want).abs());
        trace.push(&[lat.position(i)[0], a.component(1)[i], want]);
    }
    ctx.write_csv("plane_wave.csv", &trace)?;
    ctx.at_most("plane-wave", err, 0.0, 1e-4);
    Ok(())
}

fn coulomb(p: &Params, ctx: &mut Context) -> Result<()> {
    let (n, l) = (32, 16.0);
    let lat = Lattice::cube(n, l)?;
    let d = RegularizedDelta::new(0.0, p.sigma)?;
    let raw: Vec<f64> = (0..lat.len()).map(|i| lat.position(i).iter().map(|&x| d.periodic_value(x, l)).product()).collect();
    // A periodic box needs a neutralizing background.
    let mean = raw.iter().sum::<f64>() / raw.len() as f64;
    let rho: Vec<f64> = raw.iter().map(|v| v - mean).collect();
    let oracle = poisson_fd2(&lat, &rho)?;
    let dt = 0.9 * cfl_limit(&lat);
    let steps = (COULOMB_RAMP / dt).ceil() as usize;
    let mut a = FourPotential::zeros(lat.clone(), 1.0)?;
    for s in 0..steps {
        let w = ramp(s as f64 * dt, COULOMB_RAMP);
        let mut j = zero_current(&lat);
        j.j[0] = rho.iter().map(|v| v * w).collect();
        a = maxwell_step(&a, &j, dt)?;
    }
    let interior: Vec<usize> = (0..lat.len()).filter(|&i| lat.position(i).iter().all(|x| x.abs() <= COULOMB_INTERIOR)).collect();
    let peak = interior.iter().map(|&i| oracle[i].abs()).fold(0.0, f64::max);
    let err = interior.iter().map(|&i| (a.component(0)[i] - oracle[i]).abs()).fold(0.0, f64::max) / peak;
    let mut trace = CsvTrace::new(["z", "a0", "a0_poisson"]);
    for kz in 0..n {
        let i = lat.ravel(&[n / 2, n / 2, kz]);
        trace.push(&[lat.position(i)[2], a.component(0)[i], oracle[i]]);
    }
    ctx.write_csv("coulomb_axis.csv", &trace)?;
    ctx.at_most("coulomb", err, 0.0, 1e-3);
    ctx.write_dump("coulomb_potential.dmf1", || a.to_dump())?;
    Ok(())
}

/// A source built from a moving blob `χ` with `J⁰ = ∂_zχ`, `J³ = −∂_tχ` in the discrete
/// stencils of the stepper, so discrete continuity holds exactly.
fn lorenz(ctx: &mut Context) -> Result<()> {
    let n = 16;
    let lat = Lattice::cube(n, 8.0)?;
    let dt = 0.5 * cfl_limit(&lat);
    let h = lat.axis(2).dx();
    let chi = |x: [f64; 3], t: f64| ramp(t - 0.5, 1.0) * (-(x[0] * x[0] + x[1] * x[1] + (x[2] - 0.3 * t).powi(2))).exp();
    let field = |t: f64| (0..lat.len()).map(|i| chi(lat.position(i), t)).collect::<Vec<f64>>();
    let shifted = |f: &[f64], i: usize, s: i64| {
        let mut m = lat.unravel(i);
        m[2] = ((m[2] as i64 + s).rem_euclid(n as i64)) as usize;
        f[lat.ravel(&m)]
    };
    let mut a = FourPotential::zeros(lat.clone(), 1.0)?;
    let mut worst: f64 = 0.0;
    for step in 0..120 {
        let t = step as f64 * dt;
        let (now, next, prev) = (field(t), field(t + dt), field(t - dt));
        let mut j = zero_current(&lat);
        j.j[0] = (0..lat.len()).map(|i| (shifted(&now, i, 1) - shifted(&now, i, -1)) / (2.0 * h)).collect();
        j.j[3] = (0..lat.len()).map(|i| -(next[i] - prev[i]) / (2.0 * dt)).collect();
        a = maxwell_step(&a, &j, dt)?;
        worst = worst.max(a.lorenz_residual().unwrap_or(0.0));
    }
    ctx.at_most("lorenz-gauge", worst, 0.0, 1e-6);
    Ok(())
}

/// Continuity of the current carried by an interacting reduced matter field.
fn continuity(p: &Params, ctx: &mut Context) -> Result<()> {
    let g = UniformGrid1D::centered(64, 16.0)?;
    let e = 1.0;
    let a = external_potential(&g, e)?;
    let dt = 2e-3;
    let local = Params { sigma: 1.0, k0: 0.4, x0: 0.0, ..p.clone() };
    let mut phi = evolve_interacting(&ReducedMatrixField::lift(g, &packet(&g, &local), p.mass)?, &a, dt, 50)?;
    let mut currents = vec![reduced_current(&phi, e)];
    for _ in 0..4 {
        phi = evolve_interacting(&phi, &a, dt, 1)?;
        currents.push(reduced_current(&phi, e));
    }
    ctx.at_most("current-continuity", line_continuity_defect(&currents, dt)?, 0.0, 1e-4);
    Ok(())
}

pub(super) fn coupled_defaults() -> Params {
    Params { n: 64, length: 16.0, charge: 0.01, k0: 0.5, dt: 0.01, steps: 100, ..base() }
}

pub(super) fn coupled_smoke(p: &Params, ctx: &mut Context) -> Result<()> {
    let g = UniformGrid1D::centered(p.n, p.length)?;
    let phi = ReducedMatrixField::lift(g, &packet(&g, p), p.mass)?;
    let mut state = CoupledState { phi, a: external_potential(&g, p.charge)?, t: 0.0 };
    let snaps = p.snapshot_steps();
    let mut trace = CsvTrace::new(["t", "charge", "field_energy", "gauge_residual", "hermiticity_defect"]);
    let row = |d: &CoupledDiagnostics| [d.t, d.charge, d.field_energy, d.gauge_residual, d.hermiticity_defect];
    let first = state.diagnostics();
    trace.push(&row(&first));
    let (mut drift, mut herm): (f64, f64) = (0.0, first.hermiticity_defect);
    for s in 0..=p.steps {
        if s > 0 {
            state = coupled_step(&state, p.dt)?;
            let d = state.diagnostics();
            trace.push(&row(&d));
            drift = drift.max((d.charge - first.charge).abs());
            herm = herm.max(d.hermiticity_defect);
        }
        if snaps.contains(&s) {
            let (phi, a) = (&state.phi, &state.a);
            ctx.write_dump(&format!("phi_{s:06}.dmf1"), || reduced_dump(phi))?;
            ctx.write_dump(&format!("a_{s:06}.dmf1"), || a.to_dump())?;
        }
    }
    ctx.write_csv("trace.csv", &trace)?;
    ctx.at_most("charge-drift", drift, 0.0, 1e-4);
    ctx.at_most("hermiticity", herm, 0.0, 1e-10);
    Ok(())
}
