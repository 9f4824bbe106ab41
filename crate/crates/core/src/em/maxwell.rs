//! Leapfrog stepper for the Maxwell equations in Lorenz gauge, `□A^μ = J^μ`.

use rayon::prelude::*;

use crate::dirac::FourCurrentField;
use crate::error::{invalid, Error, Result};
use crate::grid::Lattice;

use super::potential::{direction_axis, neighbor, FourPotential};

/// Second-order periodic Laplacian.
pub(crate) fn laplacian(lattice: &Lattice, f: &[f64]) -> Vec<f64> {
    (0..lattice.len())
        .into_par_iter()
        .map(|i| {
            (0..lattice.rank())
                .map(|a| {
                    let h2 = lattice.axis(a).dx().powi(2);
                    (f[neighbor(lattice, i, a, 1)] - 2.0 * f[i] + f[neighbor(lattice, i, a, -1)]) / h2
                })
                .sum()
        })
        .collect()
}

/// Centered difference `∇·V` of the spatial components `V = (v¹, v², v³)`.
///
/// Commutes with [`laplacian`], so the leapfrog carries a discretely conserved source
/// into a discretely Lorenz-gauge potential.
pub(crate) fn centered_divergence(lattice: &Lattice, v: [&[f64]; 3]) -> Vec<f64> {
    (0..lattice.len())
        .map(|i| {
            (0..3)
                .filter_map(|k| direction_axis(lattice, k).map(|a| (k, a)))
                .map(|(k, a)| (v[k][neighbor(lattice, i, a, 1)] - v[k][neighbor(lattice, i, a, -1)]) / (2.0 * lattice.axis(a).dx()))
                .sum()
        })
        .collect()
}

/// Largest stable step, `dx_min/√d`.
pub fn cfl_limit(lattice: &Lattice) -> f64 {
    lattice.min_spacing() / (lattice.rank() as f64).sqrt()
}

/// One leapfrog step `A^{n+1} = 2A^n − A^{n−1} + dt²(ΔA^n + J^n)`.
///
/// The returned potential records the Lorenz residual
/// `max |(A⁰^{n+1} − A⁰^{n−1})/2dt + ∇·A^n|` at level `n`.
pub fn maxwell_step(a: &FourPotential, j: &FourCurrentField, dt: f64) -> Result<FourPotential> {
    let lat = a.lattice();
    if !lat.same_as(&j.lattice) {
        return Err(Error::GridMismatch("current and potential lattices differ".into()));
    }
    if !(dt > 0.0) || dt > cfl_limit(lat) * (1.0 + 1e-12) {
        return Err(invalid(format!("dt = {dt} violates the CFL bound {}", cfl_limit(lat))));
    }
    if a.level_dt() > 0.0 && (a.level_dt() - dt).abs() > 1e-12 * dt {
        return Err(invalid(format!("step {dt} differs from the potential's level spacing {}", a.level_dt())));
    }
    let dt2 = dt * dt;
    let next: [Vec<f64>; 4] = [0, 1, 2, 3].map(|mu| {
        let (cur, prev) = (a.component(mu), a.previous(mu));
        let lap = laplacian(lat, cur);
        (0..lat.len()).map(|i| 2.0 * cur[i] - prev[i] + dt2 * (lap[i] + j.j[mu][i])).collect()
    });
    let div = centered_divergence(lat, [a.component(1), a.component(2), a.component(3)]);
    let lorenz = (0..lat.len())
        .map(|i| ((next[0][i] - a.previous(0)[i]) / (2.0 * dt) + div[i]).abs())
        .fold(0.0, f64::max);
    let mut out = a.clone();
    {
        let (cur, prev) = out.levels_mut();
        *prev = std::mem::replace(cur, next);
    }
    out.set_step_state(dt, a.time() + dt, lorenz);
    Ok(out)
}

/// Zero-mean solution of `−Δu = ρ − ⟨ρ⟩` for the same second-order Laplacian, by FFT.
///
/// The mean of `ρ` is removed first: a periodic box only admits neutral sources.
pub fn poisson_fd2(lattice: &Lattice, rho: &[f64]) -> Result<Vec<f64>> {
    if rho.len() != lattice.len() {
        return Err(Error::GridMismatch("source length does not match lattice".into()));
    }
    let shape = lattice.shape();
    let plan = crate::fft::FftNd::new(&shape);
    let mut buf: Vec<num_complex::Complex64> = rho.iter().map(|&v| v.into()).collect();
    plan.forward(&mut buf);
    for (i, v) in buf.iter_mut().enumerate() {
        let m = lattice.unravel(i);
        let symbol: f64 = (0..lattice.rank())
            .map(|a| {
                let g = lattice.axis(a);
                let s = (0.5 * g.wavenumber(m[a]) * g.dx()).sin();
                4.0 * s * s / (g.dx() * g.dx())
            })
            .sum();
        *v = if i == 0 { 0.0.into() } else { *v / symbol };
    }
    plan.inverse_normalized(&mut buf);
    Ok(buf.into_iter().map(|v| v.re).collect())
}
