mod common;

use std::f64::consts::PI;

use densimat::dirac::*;
use densimat::em::*;
use densimat::grid::{Lattice, UniformGrid1D};
use nalgebra::Matrix4;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;
use rustfft::FftPlanner;

const M: f64 = 1.0;
const L: f64 = 16.0;

fn c(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

fn zgrid(n: usize) -> UniformGrid1D {
    UniformGrid1D::centered(n, L).unwrap()
}

fn packet(g: &UniformGrid1D, z0: f64, width: f64, p: f64, seed: u64) -> Vec<Spinor> {
    let mut r = common::rng(seed);
    let mut v = || Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
    let u = Spinor::new(v(), v(), v(), v());
    let norm = u.norm();
    g.points()
        .iter()
        .map(|&z| {
            let d = g.wrap(z - z0);
            u * Complex64::from_polar((-d * d / (2.0 * width * width)).exp() / norm, p * z)
        })
        .collect()
}

fn smooth_potential(g: &UniformGrid1D, e: f64) -> FourPotential {
    let k = 2.0 * PI / L;
    FourPotential::from_fn(Lattice::line(*g), e, |x| [0.5 * (k * x[0]).cos(), 0.1 * (k * x[0]).sin(), 0.0, 0.2 * (2.0 * k * x[0]).sin()]).unwrap()
}

/// Split-step for the minimally coupled 1-D Dirac spinor, with matrix exponentials
/// taken by nalgebra from the explicit Hamiltonian.
fn spinor_oracle(g: &UniformGrid1D, psi: &[Spinor], a: &FourPotential, dt: f64, steps: usize) -> Vec<Spinor> {
    let b = dirac_basis();
    let n = g.n();
    let e = a.coupling();
    let mi = Complex64::new(0.0, -1.0);
    let free: Vec<Matrix4<Complex64>> = (0..n)
        .map(|j| {
            let k = if j == n / 2 { 0.0 } else { g.wavenumber(j) };
            ((b.alpha[2] * c(k) + b.beta * c(M)) * (mi * dt)).exp()
        })
        .collect();
    let half: Vec<Matrix4<Complex64>> = (0..n)
        .map(|i| {
            let v = a.at(i);
            let h = Mat4::identity() * c(-v[0]) + b.alpha[0] * c(v[1]) + b.alpha[1] * c(v[2]) + b.alpha[2] * c(v[3]);
            (h * (mi * (0.5 * dt * e))).exp()
        })
        .collect();
    let mut planner = FftPlanner::new();
    let (fwd, inv) = (planner.plan_fft_forward(n), planner.plan_fft_inverse(n));
    let mut out = psi.to_vec();
    for _ in 0..steps {
        for (s, u) in out.iter_mut().zip(&half) {
            *s = u * *s;
        }
        let mut comps: Vec<Vec<Complex64>> = (0..4).map(|r| out.iter().map(|s| s[r]).collect()).collect();
        for cbuf in comps.iter_mut() {
            fwd.process(cbuf);
        }
        for j in 0..n {
            let s = free[j] * Spinor::new(comps[0][j], comps[1][j], comps[2][j], comps[3][j]);
            for r in 0..4 {
                comps[r][j] = s[r] / n as f64;
            }
        }
        for cbuf in comps.iter_mut() {
            inv.process(cbuf);
        }
        for (i, s) in out.iter_mut().enumerate() {
            *s = half[i] * Spinor::new(comps[0][i], comps[1][i], comps[2][i], comps[3][i]);
        }
    }
    out
}

#[test]
fn h1_vanishes_for_zero_and_constant_scalar_potential() {
    let g = zgrid(32);
    let phi = ReducedMatrixField::lift(g, &packet(&g, 0.0, 1.0, 0.5, 1), M).unwrap();
    let zero = FourPotential::zeros(Lattice::line(g), 1.0).unwrap();
    assert!(apply_h1(&phi, &zero).unwrap().samples().iter().all(|m| *m == Mat4::zeros()));
    let scalar = FourPotential::from_fn(Lattice::line(g), 1.0, |_| [0.37, 0.0, 0.0, 0.0]).unwrap();
    assert!(apply_h1(&phi, &scalar).unwrap().samples().iter().all(|m| *m == Mat4::zeros()));
}

#[test]
fn h1_of_lift_matches_coupled_spinor_operator() {
    let g = zgrid(32);
    let psi = packet(&g, 0.5, 1.2, -0.7, 2);
    let a = smooth_potential(&g, 1.0);
    let b = dirac_basis();
    let h1psi: Vec<Spinor> = psi
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let v = a.at(i);
            (b.alpha[0] * c(v[1]) + b.alpha[1] * c(v[2]) + b.alpha[2] * c(v[3])) * s - s * c(v[0])
        })
        .collect();
    let out = apply_h1(&ReducedMatrixField::lift(g, &psi, M).unwrap(), &a).unwrap();
    let n = g.n();
    let mut worst: f64 = 0.0;
    for x in 0..n {
        for y in 0..n {
            let want = h1psi[x] * psi[y].adjoint() - psi[x] * h1psi[y].adjoint();
            worst = worst.max(max_entry(&(out.get(x, y) - want)));
        }
    }
    assert!(worst < 1e-12, "{worst:e}");
}

#[test]
fn h1_rejects_foreign_grid() {
    let g = zgrid(32);
    let phi = ReducedMatrixField::lift(g, &packet(&g, 0.0, 1.0, 0.0, 3), M).unwrap();
    let a = FourPotential::zeros(Lattice::line(zgrid(64)), 1.0).unwrap();
    assert!(apply_h1(&phi, &a).is_err());
}

/// Reduced analogue of a rest solution: z-profile `g`, transverse directions flat.
fn reduced_rest(g: &UniformGrid1D, kind: RestKind, sigma: f64) -> ReducedMatrixField {
    let d = densimat::delta::RegularizedDelta::new(0.0, sigma).unwrap();
    from_static_profile(*g, M, 0.25 * L, |s| {
        rest_matrix(kind, M, d.periodic_value(s, L), [0.0, 0.0, d.periodic_derivative(s, L)])
    })
    .unwrap()
}

#[test]
fn free_reduced_rest_profile_is_static_on_the_diagonal() {
    let g = zgrid(128);
    for kind in RestKind::ALL {
        let phi = reduced_rest(&g, kind, 0.5);
        let zero = FourPotential::zeros(Lattice::line(g), 1.0).unwrap();
        let out = evolve_interacting(&phi, &zero, 0.05, 20).unwrap();
        let drift = phi.diagonal().iter().zip(out.diagonal()).map(|(a, b)| max_entry(&(a - b))).fold(0.0, f64::max);
        assert!(drift < 1e-6, "{kind:?}: {drift:e}");
        let (q0, q1) = (phi.charge(), out.charge());
        assert!((q0 - q1).abs() < 1e-12);
    }
}

#[test]
fn zero_coupling_is_bitwise_the_free_run() {
    let g = zgrid(64);
    let phi = ReducedMatrixField::lift(g, &packet(&g, 0.0, 1.0, 0.8, 4), M).unwrap();
    let off = evolve_interacting(&phi, &smooth_potential(&g, 0.0), 0.01, 30).unwrap();
    let free = evolve_interacting(&phi, &FourPotential::zeros(Lattice::line(g), 1.0).unwrap(), 0.01, 30).unwrap();
    assert_eq!(off, free);
}

#[test]
fn interacting_lift_follows_the_spinor_oracle() {
    let g = zgrid(64);
    let psi = packet(&g, -1.0, 1.0, 0.6, 5);
    let k = 2.0 * PI / L;
    let a = FourPotential::from_fn(Lattice::line(g), 1.0, |x| [0.8 * (k * x[0]).cos(), 0.0, 0.0, 0.0]).unwrap();
    let (dt, steps) = (0.01, 100);
    let phi = evolve_interacting(&ReducedMatrixField::lift(g, &psi, M).unwrap(), &a, dt, steps).unwrap();
    let oracle = ReducedMatrixField::lift(g, &spinor_oracle(&g, &psi, &a, dt, steps), M).unwrap();
    let err = phi.max_abs_diff(&oracle);
    assert!(err < 1e-6, "{err:e}");
}

#[test]
fn interacting_step_rejects_large_dt() {
    let g = zgrid(64);
    let phi = ReducedMatrixField::lift(g, &packet(&g, 0.0, 1.0, 0.0, 6), M).unwrap();
    assert!(evolve_interacting(&phi, &smooth_potential(&g, 1.0), 1.1 * g.dx(), 1).is_err());
}

fn window(phi: &ReducedMatrixField, a: &FourPotential, dt: f64) -> Vec<ReducedMatrixField> {
    let mut out = vec![phi.clone()];
    for _ in 0..4 {
        out.push(evolve_interacting(out.last().unwrap(), a, dt, 1).unwrap());
    }
    out
}

#[test]
fn interacting_trajectory_solves_the_coupled_equation() {
    let g = zgrid(64);
    let a = smooth_potential(&g, 1.0);
    let phi = evolve_interacting(&ReducedMatrixField::lift(g, &packet(&g, 0.0, 1.0, 0.4, 7), M).unwrap(), &a, 2e-3, 50).unwrap();
    let w = window(&phi, &a, 2e-3);
    let r = residual_interacting(&w, 2e-3, &a, 1.0).unwrap();
    assert!(r < 1e-4, "{r:e}");
    // Wrong coupling sign as a negative control.
    assert!(residual_interacting(&w, 2e-3, &a, -1.0).unwrap() > 1e-2);
    let cc: Vec<ReducedMatrixField> = w.iter().map(|p| p.charge_conjugate()).collect();
    let rc = residual_interacting(&cc, 2e-3, &a, -1.0).unwrap();
    assert!(rc < 1e-4, "{rc:e}");
    let currents: Vec<FourCurrentField> = w.iter().map(|p| reduced_current(p, 1.0)).collect();
    let cont = line_continuity_defect(&currents, 2e-3).unwrap();
    assert!(cont < 1e-4, "{cont:e}");
    assert!(w[4].hermiticity_swap_defect() < 1e-12);
}

fn gauge(g: &UniformGrid1D) -> GaugeFunction {
    let k = 2.0 * PI / L;
    GaugeFunction::from_fn(Lattice::line(*g), |x| 0.3 * (k * x[0]).sin() + 0.2 * (2.0 * k * x[0]).cos()).unwrap()
}

#[test]
fn gauge_transformed_evolution_matches_phased_field() {
    let g = zgrid(64);
    let e = 0.1;
    let a = smooth_potential(&g, e);
    let theta = gauge(&g);
    let ap = gauge_transform_a(&a, &theta).unwrap();
    let phi = ReducedMatrixField::lift(g, &packet(&g, 0.0, 1.0, 0.5, 8), M).unwrap();
    let tv = theta.values();
    let (dt, steps) = (1e-3, 1000);
    let lhs = evolve_interacting(&phi.gauge_phase(&tv).unwrap(), &ap, dt, steps).unwrap();
    let rhs = evolve_interacting(&phi, &a, dt, steps).unwrap().gauge_phase(&tv).unwrap();
    let err = lhs.max_abs_diff(&rhs);
    assert!(err < 1e-6, "{err:e}");
    let (j0, j1) = (reduced_current(&lhs, e), reduced_current(&lhs.gauge_phase(&tv).unwrap(), e));
    assert_eq!(j0.j, j1.j);
}

#[test]
fn constant_gauge_leaves_potential_unchanged() {
    let g = zgrid(32);
    let a = smooth_potential(&g, 0.3);
    let theta = GaugeFunction::from_fn(Lattice::line(g), |_| 1.7).unwrap();
    assert_eq!(gauge_transform_a(&a, &theta).unwrap(), a);
    assert!(gauge_transform_a(&a.with_coupling(0.0), &theta).is_err());
}

#[test]
fn linear_gauge_is_a_pure_gauge_potential() {
    let lat = Lattice::cube(8, 8.0).unwrap();
    let (cz, e) = (0.4, 0.5);
    let a = FourPotential::zeros(lat.clone(), e).unwrap();
    let theta = GaugeFunction::with_slope(lat.clone(), [0.0, 0.0, cz], vec![0.0; lat.len()]).unwrap();
    let ap = gauge_transform_a(&a, &theta).unwrap();
    // A'_3 = c/e with a lower index, so A'^3 = −c/e.
    assert!(ap.component(3).iter().all(|&v| v == -cz / e));
    assert!(ap.component(1).iter().chain(ap.component(2)).chain(ap.component(0)).all(|&v| v == 0.0));
    assert_eq!(field_strength(&ap).max_abs(), 0.0);
}

#[test]
fn field_strength_is_gauge_invariant() {
    let lat = Lattice::cube(16, 10.0).unwrap();
    let mut r = common::rng(9);
    let coeffs: Vec<(f64, [f64; 3])> = (0..5).map(|_| (r.gen_range(-1.0..1.0), [0, 1, 2].map(|_| r.gen_range(-2i32..=2) as f64))).collect();
    let k = 2.0 * PI / 10.0;
    let smooth = |x: [f64; 3], s: f64| coeffs.iter().map(|(a, m)| a * (k * (m[0] * x[0] + m[1] * x[1] + m[2] * x[2]) + s).sin()).sum::<f64>();
    let a = FourPotential::from_fn_at(lat.clone(), 0.7, 0.0, 0.05, |x, t| [smooth(x, t), smooth(x, 1.0 + t), smooth(x, 2.0), smooth(x, 3.0 - t)]).unwrap();
    let theta = GaugeFunction::from_fn(lat, |x| smooth(x, 0.4)).unwrap();
    let (f0, f1) = (field_strength(&a), field_strength(&gauge_transform_a(&a, &theta).unwrap()));
    assert!(f0.max_abs() > 0.1);
    assert!(f0.max_abs_diff(&f1) < 1e-10, "{:e}", f0.max_abs_diff(&f1));
}

#[test]
fn rest_current_density_carries_unit_charge() {
    let lat = Lattice::cube(32, 16.0).unwrap();
    let sigma = 1.0;
    let f = rest_solution(RestKind::A, sigma, M, &lat).unwrap();
    let j = current_density(&f, 1.0).unwrap();
    let total = j.integral();
    assert!((total[0] - 1.0).abs() < 1e-6);
    assert!(total[1..].iter().all(|v| v.abs() < 1e-10), "{total:?}");
    // Pointwise the spatial current is the spin magnetization curl ∇×(g ẑ)/2m, not zero.
    let d = densimat::delta::RegularizedDelta::new(0.0, sigma).unwrap();
    let mut worst: f64 = 0.0;
    for i in 0..lat.len() {
        let x = lat.position(i);
        let gv = [0, 1, 2].map(|k| d.periodic_value(x[k], 16.0));
        let dg = [0, 1, 2].map(|k| d.periodic_derivative(x[k], 16.0));
        let g_dy = gv[0] * dg[1] * gv[2];
        let g_dx = dg[0] * gv[1] * gv[2];
        worst = worst.max((j.j[1][i] - g_dy / (2.0 * M)).abs()).max((j.j[2][i] + g_dx / (2.0 * M)).abs()).max(j.j[3][i].abs());
    }
    assert!(worst < 1e-10, "{worst:e}");
    let jc = current_density(&charge_conjugate(&f), 1.0).unwrap();
    for mu in 0..4 {
        assert!(j.j[mu].iter().zip(&jc.j[mu]).all(|(a, b)| a == &-b));
    }
    assert_eq!(current_density(&f, 0.0).unwrap().max_abs(), 0.0);
}

#[test]
fn vacuum_plane_wave_propagates_at_unit_speed() {
    let g = UniformGrid1D::centered(256, 20.0).unwrap();
    let lat = Lattice::line(g);
    let k = 2.0 * PI / 20.0;
    let dt = 0.5 * g.dx();
    let wave = |x: [f64; 3], t: f64| [0.0, (k * (x[0] - t)).cos(), 0.0, 0.0];
    let mut a = FourPotential::from_fn_at(lat.clone(), 1.0, 0.0, dt, wave).unwrap();
    let zero = FourCurrentField { lattice: lat.clone(), j: [0, 1, 2, 3].map(|_| vec![0.0; 256]), imag: 0.0 };
    let steps = (5.0 / dt).round() as usize;
    for _ in 0..steps {
        a = maxwell_step(&a, &zero, dt).unwrap();
    }
    let t = steps as f64 * dt;
    let err = (0..256).map(|i| (a.component(1)[i] - wave(lat.position(i), t)[1]).abs()).fold(0.0, f64::max);
    assert!((t - 5.0).abs() < 1e-12);
    assert!(err < 1e-4, "{err:e}");
}

#[test]
fn maxwell_rejects_cfl_violation_and_foreign_current() {
    let lat = Lattice::cube(8, 8.0).unwrap();
    let a = FourPotential::zeros(lat.clone(), 1.0).unwrap();
    let j = FourCurrentField { lattice: lat.clone(), j: [0, 1, 2, 3].map(|_| vec![0.0; lat.len()]), imag: 0.0 };
    assert!(maxwell_step(&a, &j, 0.6).is_err());
    assert!(maxwell_step(&a, &j, cfl_limit(&lat)).is_ok());
    let other = Lattice::cube(4, 8.0).unwrap();
    let j2 = FourCurrentField { lattice: other.clone(), j: [0, 1, 2, 3].map(|_| vec![0.0; other.len()]), imag: 0.0 };
    assert!(maxwell_step(&a, &j2, 0.1).is_err());
}

/// Conjugate gradients on the periodic seven-point `−Δ` with a zero-mean right-hand side.
fn poisson_cg(lat: &Lattice, rhs: &[f64]) -> Vec<f64> {
    let n = lat.len();
    let shape = lat.shape();
    let h2 = lat.axis(0).dx().powi(2);
    let apply = |u: &[f64]| -> Vec<f64> {
        (0..n)
            .map(|i| {
                let m = lat.unravel(i);
                let mut acc = 6.0 * u[i];
                for a in 0..3 {
                    for s in [1i64, -1] {
                        let mut mm = m;
                        mm[a] = ((m[a] as i64 + s).rem_euclid(shape[a] as i64)) as usize;
                        acc -= u[lat.ravel(&mm)];
                    }
                }
                acc / h2
            })
            .collect()
    };
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let mut x = vec![0.0; n];
    let mut r = rhs.to_vec();
    let mut p = r.clone();
    let mut rr = dot(&r, &r);
    for _ in 0..2000 {
        let ap = apply(&p);
        let alpha = rr / dot(&p, &ap);
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        let rr_new = dot(&r, &r);
        if rr_new.sqrt() < 1e-13 {
            break;
        }
        for i in 0..n {
            p[i] = r[i] + rr_new / rr * p[i];
        }
        rr = rr_new;
    }
    let mean = x.iter().sum::<f64>() / n as f64;
    x.iter().map(|v| v - mean).collect()
}

/// Smooth ramp from 0 to 1 over `[0, tau]`, flat to all orders at both ends.
fn ramp(t: f64, tau: f64) -> f64 {
    let s = |u: f64| if u > 0.0 { (-1.0 / u).exp() } else { 0.0 };
    let u = (t / tau).clamp(0.0, 1.0);
    s(u) / (s(u) + s(1.0 - u))
}

#[test]
fn static_source_settles_to_the_lattice_coulomb_profile() {
    let lat = Lattice::cube(32, 16.0).unwrap();
    let d = densimat::delta::RegularizedDelta::new(0.0, 1.0).unwrap();
    let raw: Vec<f64> = (0..lat.len()).map(|i| lat.position(i).iter().map(|&x| d.periodic_value(x, 16.0)).product()).collect();
    // A periodic box needs a neutralizing background.
    let mean = raw.iter().sum::<f64>() / raw.len() as f64;
    let rho: Vec<f64> = raw.iter().map(|v| v - mean).collect();
    let oracle = poisson_cg(&lat, &rho);
    let dt = 0.9 * cfl_limit(&lat);
    let tau = 150.0;
    let steps = (tau / dt).ceil() as usize;
    let mut a = FourPotential::zeros(lat.clone(), 1.0).unwrap();
    for s in 0..steps {
        let w = ramp(s as f64 * dt, tau);
        let j = FourCurrentField { lattice: lat.clone(), j: [rho.iter().map(|v| v * w).collect(), vec![0.0; lat.len()], vec![0.0; lat.len()], vec![0.0; lat.len()]], imag: 0.0 };
        a = maxwell_step(&a, &j, dt).unwrap();
    }
    let interior: Vec<usize> = (0..lat.len()).filter(|&i| lat.position(i).iter().all(|x| x.abs() <= 4.0)).collect();
    let peak = interior.iter().map(|&i| oracle[i].abs()).fold(0.0, f64::max);
    let err = interior.iter().map(|&i| (a.component(0)[i] - oracle[i]).abs()).fold(0.0, f64::max) / peak;
    assert!(err < 1e-3, "relative error {err:e}");
}

#[test]
fn conserved_source_keeps_lorenz_gauge() {
    // J⁰ = ∂_zχ, J³ = −(χ^{n+1} − χ^{n−1})/2dt satisfies the discrete continuity exactly.
    let lat = Lattice::cube(16, 8.0).unwrap();
    let dt = 0.5 * cfl_limit(&lat);
    let h = lat.axis(2).dx();
    let chi = |x: [f64; 3], t: f64| ramp(t - 0.5, 1.0) * (-(x[0] * x[0] + x[1] * x[1] + (x[2] - 0.3 * t).powi(2))).exp();
    let field = |t: f64| (0..lat.len()).map(|i| chi(lat.position(i), t)).collect::<Vec<f64>>();
    let zplus = |f: &[f64], i: usize, s: i64| {
        let mut m = lat.unravel(i);
        m[2] = ((m[2] as i64 + s).rem_euclid(16)) as usize;
        f[lat.ravel(&m)]
    };
    let mut a = FourPotential::zeros(lat.clone(), 1.0).unwrap();
    let mut worst: f64 = 0.0;
    for n in 0..120 {
        let t = n as f64 * dt;
        let (now, next, prev) = (field(t), field(t + dt), field(t - dt));
        let j0 = (0..lat.len()).map(|i| (zplus(&now, i, 1) - zplus(&now, i, -1)) / (2.0 * h)).collect();
        let j3 = (0..lat.len()).map(|i| -(next[i] - prev[i]) / (2.0 * dt)).collect();
        let j = FourCurrentField { lattice: lat.clone(), j: [j0, vec![0.0; lat.len()], vec![0.0; lat.len()], j3], imag: 0.0 };
        a = maxwell_step(&a, &j, dt).unwrap();
        worst = worst.max(a.lorenz_residual().unwrap());
    }
    assert!(a.max_abs() > 1e-3);
    assert!(worst < 1e-6, "{worst:e}");
}

fn coupled_initial(g: &UniformGrid1D, e: f64) -> CoupledState {
    let phi = ReducedMatrixField::lift(*g, &packet(g, 0.0, 1.0, 0.5, 10), M).unwrap();
    CoupledState { phi, a: smooth_potential(g, e), t: 0.0 }
}

#[test]
fn uncoupled_state_evolves_as_separate_runs() {
    let g = zgrid(64);
    let dt = 0.5 * g.dx();
    let mut s = coupled_initial(&g, 0.0);
    let (phi0, a0) = (s.phi.clone(), s.a.clone());
    for _ in 0..20 {
        s = coupled_step(&s, dt).unwrap();
    }
    let phi = evolve_interacting(&phi0, &FourPotential::zeros(Lattice::line(g), 1.0).unwrap(), dt, 20).unwrap();
    let zero = FourCurrentField { lattice: Lattice::line(g), j: [0, 1, 2, 3].map(|_| vec![0.0; 64]), imag: 0.0 };
    let mut a = a0;
    for _ in 0..20 {
        a = maxwell_step(&a, &zero, dt).unwrap();
    }
    assert_eq!(s.phi, phi);
    assert_eq!(s.a.component(0), a.component(0));
    assert_eq!(s.a.component(3), a.component(3));
}

#[test]
fn weakly_coupled_run_conserves_charge() {
    let g = zgrid(64);
    let dt = 0.01;
    let mut s = coupled_initial(&g, 0.01);
    let q0 = s.diagnostics().charge;
    for _ in 0..100 {
        s = coupled_step(&s, dt).unwrap();
    }
    let d = s.diagnostics();
    assert!((d.charge - q0).abs() < 1e-4, "{} vs {q0}", d.charge);
    assert!(d.hermiticity_defect < 1e-10);
    assert!((d.t - 1.0).abs() < 1e-12);
}

#[test]
fn runaway_potential_is_reported_as_divergence() {
    let g = zgrid(32);
    let mut s = coupled_initial(&g, 1.0);
    s.a = FourPotential::from_fn(Lattice::line(g), 1.0, |x| [0.0, 0.0, 0.0, 2e6 * (x[0]).cos()]).unwrap();
    match coupled_step(&s, 0.1) {
        Err(densimat::Error::Divergence(_)) => {}
        other => panic!("expected divergence, got {other:?}"),
    }
}

#[test]
fn potential_dump_layout() {
    let g = zgrid(8);
    let a = smooth_potential(&g, 1.0);
    let d = a.to_dump();
    assert_eq!(d.dims, vec![8, 4]);
    assert_eq!(d.data[4 * 3 + 3].re, a.component(3)[3]);
    let phi = ReducedMatrixField::lift(g, &packet(&g, 0.0, 1.0, 0.0, 11), M).unwrap();
    let dp = reduced_dump(&phi);
    assert_eq!((dp.dims.clone(), dp.components), (vec![8, 8], 16));
    assert_eq!(dp.data[16 * 9 + 5], phi.get(1, 1)[(1, 1)]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn gauge_phase_never_moves_the_current(seed in 0u64..1000, amp in -2.0f64..2.0) {
        let g = zgrid(32);
        let phi = ReducedMatrixField::lift(g, &packet(&g, 0.3, 1.0, 0.2, seed), M).unwrap();
        let theta: Vec<f64> = g.points().iter().map(|z| amp * (z * 0.7).sin()).collect();
        let ph = phi.gauge_phase(&theta).unwrap();
        prop_assert_eq!(reduced_current(&phi, 1.0).j, reduced_current(&ph, 1.0).j);
        prop_assert!(ph.hermiticity_swap_defect() < 1e-14);
    }

    #[test]
    fn interacting_flow_preserves_charge_and_hermiticity(seed in 0u64..1000, e in -1.0f64..1.0) {
        let g = zgrid(32);
        let phi = ReducedMatrixField::lift(g, &packet(&g, 0.0, 1.0, 0.5, seed), M).unwrap();
        let out = evolve_interacting(&phi, &smooth_potential(&g, e), 0.05, 10).unwrap();
        prop_assert!((out.charge() - phi.charge()).abs() < 1e-12);
        prop_assert!(out.hermiticity_swap_defect() < 1e-12);
    }
}

