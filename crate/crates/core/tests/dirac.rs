#![allow(clippy::needless_range_loop)]

mod common;

use std::f64::consts::PI;

use densimat::dirac::*;
use densimat::grid::Lattice;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;

const M: f64 = 1.0;

fn lattice() -> Lattice {
    Lattice::cube(32, 16.0).unwrap()
}

fn rest(kind: RestKind) -> MatrixField {
    rest_solution(kind, 1.0, M, &lattice()).unwrap()
}

fn c(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// Gaussian packet with carrier `p` and constant spinor `u`, plus its analytic gradient.
fn packet(lat: &Lattice, center: [f64; 3], width: f64, p: [f64; 3], u: Spinor) -> (SpinorField, [Vec<Spinor>; 3]) {
    let env = |x: [f64; 3]| {
        let r2: f64 = (0..3).map(|k| (x[k] - center[k]).powi(2)).sum();
        Complex64::from_polar((-r2 / (2.0 * width * width)).exp(), p[0] * x[0] + p[1] * x[1] + p[2] * x[2])
    };
    let psi = SpinorField::from_fn(lat.clone(), |x| u * env(x)).unwrap();
    let grad = [0, 1, 2].map(|k| {
        (0..lat.len())
            .map(|i| {
                let x = lat.position(i);
                u * (env(x) * Complex64::new(-(x[k] - center[k]) / (width * width), p[k]))
            })
            .collect()
    });
    (psi, grad)
}

fn random_spinor(seed: u64) -> Spinor {
    let mut r = common::rng(seed);
    let mut g = || Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
    Spinor::new(g(), g(), g(), g())
}

#[test]
fn lift_of_basis_spinor_fills_one_entry() {
    let lat = Lattice::cube(8, 8.0).unwrap();
    let u = Spinor::new(c(1.0), c(0.0), c(0.0), c(0.0));
    let (psi, _) = packet(&lat, [0.0; 3], 1.0, [0.0; 3], u);
    let d = lift_spinor(&psi, M).diagonal();
    for (m, s) in d.samples().iter().zip(psi.samples()) {
        for r in 0..4 {
            for col in 0..4 {
                let want = if r == 0 && col == 0 { s[0].norm_sqr() } else { 0.0 };
                assert_eq!(m[(r, col)], c(want));
            }
        }
    }
}

#[test]
fn lifted_current_and_trace_match_spinor_bilinears() {
    let lat = Lattice::cube(16, 12.0).unwrap();
    let (psi, _) = packet(&lat, [0.3, -0.2, 0.1], 1.2, [0.5, 0.0, -0.4], random_spinor(1));
    let lifted = lift_spinor(&psi, M);
    assert!(lifted.hermiticity_swap_defect() < 1e-13);
    let slice = lifted.slice().unwrap();
    let j = current_j(&slice);
    let b = dirac_basis();
    for (i, s) in psi.samples().iter().enumerate() {
        assert!((j.j[0][i] - s.norm_squared()).abs() < 1e-12);
        for k in 0..3 {
            let want = (s.adjoint() * b.alpha[k] * s)[(0, 0)].re;
            assert!((j.j[k + 1][i] - want).abs() < 1e-12);
        }
        assert!((slice.value[i].trace().re - s.norm_squared()).abs() <= 4.0 * f64::EPSILON * s.norm_squared());
    }
    assert!((charge_q(&slice).re - psi.norm_sq()).abs() < 1e-9);
}

#[test]
fn lifted_energy_momentum_match_spinor_expectations() {
    let lat = Lattice::cube(32, 16.0).unwrap();
    let p = [0.6, -0.3, 0.9];
    let (psi, grad) = packet(&lat, [0.2, 0.1, -0.3], 1.3, p, random_spinor(7));
    let obs = observables(&lift_spinor(&psi, M).slice().unwrap());
    let b = dirac_basis();
    let dv = lat.cell_volume();
    let mut e = c(0.0);
    let mut pp = [c(0.0); 3];
    for (i, s) in psi.samples().iter().enumerate() {
        let mut h = b.beta * s * c(M);
        for k in 0..3 {
            h += b.alpha[k] * grad[k][i] * Complex64::new(0.0, -1.0);
            pp[k] += (s.adjoint() * grad[k][i])[(0, 0)] * Complex64::new(0.0, -1.0);
        }
        e += (s.adjoint() * h)[(0, 0)];
    }
    assert!((obs.e - e.re * dv).abs() < 1e-9, "{} vs {}", obs.e, e.re * dv);
    for k in 0..3 {
        assert!((obs.p[k] - pp[k].re * dv).abs() < 1e-9);
    }
    assert!(obs.imag < 1e-10);
}

#[test]
fn rest_solutions_reproduce_the_observable_table() {
    for kind in RestKind::ALL {
        let f = rest(kind);
        let o = observables(&f.slice().unwrap());
        let (q, s3) = kind.charge_and_spin();
        assert!((o.q - q).abs() < 1e-6 && (o.e - M).abs() < 1e-6 && (o.s[2] - s3).abs() < 1e-6, "{kind:?}: {o:?}");
        assert!(o.p.iter().all(|v| v.abs() < 1e-6));
        assert!(o.s[0].abs() < 1e-10 && o.s[1].abs() < 1e-10);
        assert_eq!(f.hermiticity_defect(), 0.0);
        assert!(residual_free(&f) < 1e-6, "{kind:?} residual {}", residual_free(&f));
    }
}

#[test]
fn rest_current_integrates_to_zero() {
    let j = current_j(&rest(RestKind::A).slice().unwrap());
    let total = j.integral();
    assert!(total[1..].iter().all(|v| v.abs() < 1e-12), "{total:?}");
    // Pointwise the spatial current is a curl, (∂₂g, −∂₁g, 0)/2m.
    assert!(j.j[1].iter().any(|v| v.abs() > 1e-3));
}

#[test]
fn free_residual_controls() {
    let lat = Lattice::cube(16, 12.0).unwrap();
    assert_eq!(residual_free(&MatrixField::zeros(lat.clone(), M).unwrap()), 0.0);
    let mut r = common::rng(3);
    let coeff: Vec<Complex64> = (0..16).map(|_| Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))).collect();
    let base = Mat4::from_fn(|i, j| coeff[i * 4 + j]);
    let herm = (base + base.adjoint()) * c(0.5);
    let f = MatrixField::from_fn(lat, M, FieldKind::Generic, |x| {
        herm * c((-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) / 2.0).exp())
    })
    .unwrap();
    assert!(residual_free(&f) > 0.01);
}

#[test]
fn td_propagation_identity_and_zero_mode_phase() {
    let a = rest(RestKind::A);
    assert!(propagate_td(&a, 0.0).max_abs_diff(&a) == 0.0);
    let lat = Lattice::cube(8, 8.0).unwrap();
    let mut e11 = Mat4::zeros();
    e11[(0, 0)] = c(1.0);
    let flat = MatrixField::from_fn(lat, M, FieldKind::Generic, |_| e11).unwrap();
    let t = 0.83;
    let out = propagate_td(&flat, t);
    let want = Complex64::from_polar(1.0, M * t);
    assert!(out.samples().iter().all(|m| (m[(0, 0)] - want).norm() < 1e-14 && max_entry(&(m - e11 * want)) < 1e-14));
}

#[test]
fn td_family_satisfies_both_time_equations() {
    let fam = TdFamily::new(&rest(RestKind::B));
    for t in [0.0, 0.4, 1.5] {
        let (r42, r43) = residual_td_family(&fam, t, 1e-2);
        assert!(r42 < 1e-6 && r43 < 1e-6, "t_D = {t}: {r42:e} {r43:e}");
    }
}

#[test]
fn td_derivative_matches_difference_quotient() {
    let a = rest(RestKind::C);
    let h = 1e-3;
    let fd = propagate_td(&a, h).samples().iter().zip(propagate_td(&a, -h).samples()).map(|(p, m)| (p - m) / c(2.0 * h)).collect::<Vec<_>>();
    let an = td_derivative(&a);
    let err = an.samples().iter().zip(&fd).map(|(x, y)| max_entry(&(x - y))).fold(0.0, f64::max);
    assert!(err < 1e-7, "{err:e}");
}

#[test]
fn full_turn_rotation_is_identity() {
    let a = rest(RestKind::A);
    for axis in [[1.0, 0.0, 0.0], [0.0, 0.6, 0.8]] {
        let r = apply_rotation(&a, &RotationSpec { angle: 2.0 * PI, axis }).unwrap();
        let d = r.max_abs_diff(&a);
        assert!(d < 1e-12 * a.max_abs(), "{d:e}");
    }
}

#[test]
fn half_turn_about_x_flips_spin() {
    let a = rest(RestKind::A);
    let r = apply_rotation(&a, &RotationSpec { angle: PI, axis: [1.0, 0.0, 0.0] }).unwrap();
    let o = observables(&r.slice().unwrap());
    assert!((o.s[2] + 0.5).abs() < 1e-6 && (o.q - 1.0).abs() < 1e-6 && (o.e - M).abs() < 1e-6, "{o:?}");
    assert!(r.hermiticity_defect() < 1e-10);
}

#[test]
fn oblique_rotation_turns_spin_and_keeps_a_solution() {
    let spec = RotationSpec { angle: 0.7, axis: [0.6, 0.0, 0.8] };
    let r = apply_rotation(&rest(RestKind::A), &spec).unwrap();
    let o = observables(&r.slice().unwrap());
    let rm = spec.matrix();
    for k in 0..3 {
        assert!((o.s[k] - 0.5 * rm[k][2]).abs() < 1e-6, "{o:?}");
    }
    assert!(residual_free(&r) < 1e-6, "{:e}", residual_free(&r));
    assert!(r.hermiticity_defect() < 1e-10);
}

#[test]
fn rotation_generator_is_the_first_order_term() {
    let a = rest(RestKind::D);
    let n = [0.0, 0.6, 0.8];
    let defect = |theta: f64| {
        let r = rotate_matrix_part(&a, &RotationSpec { angle: theta, axis: n }).unwrap();
        r.samples()
            .iter()
            .zip(a.samples())
            .map(|(rp, p)| {
                let gen: Mat4 = (0..3).map(|k| rotation_generator(p, k) * c(n[k])).sum();
                max_entry(&(rp - p - gen * Complex64::new(0.0, theta)))
            })
            .fold(0.0, f64::max)
    };
    let (d1, d2) = (defect(1e-4), defect(5e-5));
    assert!(d1 < 1e-7 && (d1 / d2 - 4.0).abs() < 0.1, "{d1:e} {d2:e}");
}

#[test]
fn boost_generator_is_the_first_order_term() {
    let phi = rest(RestKind::A).samples()[1000];
    let n = [0.0, 0.0, 1.0];
    let defect = |xi: f64| {
        let m = BoostSpec { rapidity: xi, direction: n }.spinor_matrix();
        max_entry(&(m * phi * m - phi - boost_generator(&phi, 2) * Complex64::new(0.0, xi)))
    };
    let (d1, d2) = (defect(1e-4), defect(5e-5));
    assert!((d1 / d2 - 4.0).abs() < 0.1, "{d1:e} {d2:e}");
}

#[test]
fn boosted_rest_solutions_carry_relativistic_energy_momentum() {
    let spec = BoostSpec::from_velocity(0.5, [0.0, 0.0, 1.0]).unwrap();
    for kind in RestKind::ALL {
        let b = BoostedField::new(&rest(kind), spec, 1.0 / 20.0).unwrap();
        let o = observables(&BoostedSlice { field: &b, t_s: 0.0 }.slice().unwrap());
        let (q, _) = kind.charge_and_spin();
        assert!((o.e - M * spec.rapidity.cosh()).abs() < 1e-4 * M, "{kind:?} {o:?}");
        assert!((o.p[2] - M * spec.rapidity.sinh()).abs() < 1e-4 * M, "{kind:?} {o:?}");
        assert!((o.q - q).abs() < 1e-6);
    }
}

#[test]
fn boosted_particle_rides_at_its_velocity() {
    let v = -0.3;
    let spec = BoostSpec::from_velocity(v, [0.0, 1.0, 0.0]).unwrap();
    let b = BoostedField::new(&rest(RestKind::B), spec, 1.0 / 20.0).unwrap();
    let t = 2.5;
    let s = BoostedSlice { field: &b, t_s: t }.slice().unwrap();
    let j = current_j(&s);
    let dv = s.lattice.cell_volume();
    let q: f64 = j.j[0].iter().sum::<f64>() * dv;
    let y: f64 = j.j[0].iter().enumerate().map(|(i, w)| w * s.lattice.position(i)[1]).sum::<f64>() * dv / q;
    assert!((y - v * t).abs() < 1e-6, "centroid {y} vs {}", v * t);
}

#[test]
fn boosted_field_solves_both_covariant_equations() {
    let spec = BoostSpec::from_velocity(0.5, [0.0, 0.0, 1.0]).unwrap();
    let b = BoostedField::new(&rest(RestKind::A), spec, 1.0 / 20.0).unwrap();
    let events: Vec<Event> = (0..4)
        .map(|i| {
            let f = i as f64;
            Event { t_s: 0.4 * f, x_s: [0.3 - 0.1 * f, 0.2 * f - 0.4, 0.2 * f + 0.1], t_d: 0.1 * f - 0.2, x_d: [0.05 * f, -0.1, 0.2 - 0.07 * f] }
        })
        .collect();
    let r = residual_covariant(&b, &events, 0.02, None);
    assert!(r.eq40 < 1e-5 && r.eq41 < 1e-5, "{r:?}");
    let g0 = dirac_basis().gamma[0];
    for e in &events {
        let direct = residual_41_at(&b, e, 0.02, None);
        let via_adjoint = -residual_40_at(&b, &e.swapped(), 0.02, None).adjoint() * g0;
        assert!(max_entry(&(direct - via_adjoint)) < 1e-12);
    }
    assert!(swap_defect(&b, &events) < 1e-10);
    let zero = TdFamily::new(&MatrixField::zeros(Lattice::cube(8, 8.0).unwrap(), M).unwrap());
    let r0 = residual_covariant(&zero, &events, 0.02, None);
    assert_eq!((r0.eq40, r0.eq41), (0.0, 0.0));
}

#[test]
fn charge_conjugation_pairs_rest_kinds() {
    for kind in RestKind::ALL {
        let cc = charge_conjugate(&rest(kind));
        assert!(cc.max_abs_diff(&rest(kind.conjugate())) < 1e-10);
        assert!(charge_conjugate(&cc).max_abs_diff(&rest(kind)) < 1e-12);
    }
}

#[test]
fn charge_conjugation_flips_current_and_keeps_the_rest() {
    let spec = BoostSpec::from_velocity(0.5, [0.0, 0.0, 1.0]).unwrap();
    let b = BoostedField::new(&rest(RestKind::B), spec, 1.0 / 20.0).unwrap();
    let s = BoostedSlice { field: &b, t_s: 0.7 }.slice().unwrap();
    let cs = charge_conjugate_slice(&s);
    let (j, jc) = (current_j(&s), current_j(&cs));
    for mu in 0..4 {
        assert!(j.j[mu].iter().zip(&jc.j[mu]).all(|(a, b)| (a + b).abs() < 1e-12));
    }
    let (o, oc) = (observables(&s), observables(&cs));
    assert!((o.q + oc.q).abs() < 1e-8 && (o.e - oc.e).abs() < 1e-8);
    for k in 0..3 {
        assert!((o.p[k] - oc.p[k]).abs() < 1e-8 && (o.s[k] - oc.s[k]).abs() < 1e-8);
    }
    let conj = Conjugated(&b);
    let e = Event { t_s: 0.2, x_s: [0.1, 0.0, 0.3], t_d: 0.3, x_d: [0.0, 0.2, -0.1] };
    assert!(swap_defect(&conj, &[e]) < 1e-10);
}

#[test]
fn conjugating_the_spinor_lifts_to_the_opposite_sign() {
    let lat = Lattice::cube(6, 8.0).unwrap();
    let (psi, _) = packet(&lat, [0.0; 3], 1.0, [0.4, 0.0, 0.2], random_spinor(5));
    let a = lift_spinor(&psi, M);
    let b = lift_spinor(&conjugate_spinor(&psi), M);
    let g2 = dirac_basis().gamma2;
    let n = lat.len();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let want = -(g2 * a.pair(j, i).transpose() * g2);
            worst = worst.max(max_entry(&(b.pair(i, j) - want)));
        }
    }
    assert!(worst < 1e-12);
}

#[test]
fn gauge_phase_on_reduced_field_matches_lift() {
    let g = densimat::grid::UniformGrid1D::centered(32, 12.0).unwrap();
    let u = random_spinor(9);
    let psi: Vec<Spinor> = g.points().iter().map(|&z| u * c((-z * z / 2.0).exp())).collect();
    let theta: Vec<f64> = g.points().iter().map(|&z| 0.7 * z).collect();
    let phased: Vec<Spinor> = psi.iter().zip(&theta).map(|(s, t)| s * Complex64::from_polar(1.0, *t)).collect();
    let lifted = ReducedMatrixField::lift(g, &psi, M).unwrap();
    let a = lifted.gauge_phase(&theta).unwrap();
    let b = ReducedMatrixField::lift(g, &phased, M).unwrap();
    assert!(a.max_abs_diff(&b) < 1e-12);
    assert!(a.hermiticity_swap_defect() < 1e-14);
    let (j0, j1) = (lifted.current(1.0), a.current(1.0));
    for mu in 0..4 {
        assert!(j0[mu].iter().zip(&j1[mu]).all(|(x, y)| (x - y).abs() < 1e-15));
    }
    let constant = lifted.gauge_phase(&vec![1.3; 32]).unwrap();
    assert!(constant.max_abs_diff(&lifted) == 0.0);
}

#[test]
fn gauge_phase_leaves_the_slice_current_unchanged() {
    let spec = BoostSpec::from_velocity(0.4, [1.0, 0.0, 0.0]).unwrap();
    let b = BoostedField::new(&rest(RestKind::C), spec, 1.0 / 20.0).unwrap();
    let phased = GaugePhased { field: &b, theta: |x: [f64; 4]| 0.3 * x[1] * x[1] - 0.2 * x[0] + (x[3]).sin() };
    let lat = Lattice::cube(6, 6.0).unwrap();
    let s0 = densimat::dirac::EvaluatorSlice { field: &b, lattice: lat.clone(), t_s: 0.1, h: 0.05 }.slice().unwrap();
    let s1 = densimat::dirac::EvaluatorSlice { field: &phased, lattice: lat, t_s: 0.1, h: 0.05 }.slice().unwrap();
    let (j0, j1) = (current_j(&s0), current_j(&s1));
    assert!(j0.max_abs_diff(&j1) <= 1e-15 * j0.max_abs().max(1.0));
    let events = [Event { t_s: 0.1, x_s: [0.2, 0.1, 0.0], t_d: 0.2, x_d: [0.3, -0.1, 0.2] }];
    assert!(swap_defect(&phased, &events) < 1e-10);
}

#[test]
fn free_evolution_conserves_current_and_hermiticity() {
    let lat = Lattice::cube(24, 14.0).unwrap();
    let mut r = common::rng(21);
    let coeff: Vec<Complex64> = (0..16).map(|_| Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))).collect();
    let base = Mat4::from_fn(|i, j| coeff[i * 4 + j]);
    let herm = (base + base.adjoint()) * c(0.5);
    let f = MatrixField::from_fn(lat, M, FieldKind::Generic, |x| {
        herm * c((-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) / 3.0).exp() * (1.0 + 0.5 * (0.4 * x[0]).cos()))
    })
    .unwrap();
    let dt = 0.01;
    let snaps: Vec<FourCurrentField> = (0..5).map(|k| current_j(&SliceData::from_static(&evolve_free(&f, 0.5 + dt * k as f64)))).collect();
    let defect = continuity_defect(&snaps, dt).unwrap();
    assert!(defect < 1e-5, "{defect:e}");
    assert!(evolve_free(&f, 1.3).hermiticity_defect() < 1e-10);
}

#[test]
fn slice_observables_ignore_the_field_away_from_the_diagonal() {
    struct Bumped<'a>(&'a BoostedField, f64);
    impl PointEvaluator for Bumped<'_> {
        fn eval(&self, e: &Event) -> Mat4 {
            let r = (e.x_d[0].powi(2) + e.x_d[1].powi(2) + e.x_d[2].powi(2)).sqrt();
            let bump = if r > self.1 { Mat4::identity() * c((r - self.1).powi(2)) } else { Mat4::zeros() };
            self.0.eval(e) + bump
        }
        fn mass(&self) -> f64 {
            self.0.mass()
        }
    }
    let spec = BoostSpec::from_velocity(0.5, [0.0, 0.0, 1.0]).unwrap();
    let b = BoostedField::new(&rest(RestKind::A), spec, 1.0 / 20.0).unwrap();
    let lat = Lattice::cube(6, 6.0).unwrap();
    let h = 0.05;
    let radius = 3.0 * lat.min_spacing();
    let bumped = Bumped(&b, radius);
    let s0 = densimat::dirac::EvaluatorSlice { field: &b, lattice: lat.clone(), t_s: 0.0, h }.slice().unwrap();
    let s1 = densimat::dirac::EvaluatorSlice { field: &bumped, lattice: lat, t_s: 0.0, h }.slice().unwrap();
    let (o0, o1) = (observables(&s0), observables(&s1));
    assert_eq!(o0.q, o1.q);
    assert_eq!(o0.s, o1.s);
    // The five-point stencil reaches 2h < 3·dx, so energy and momentum are untouched too.
    assert_eq!(o0.e, o1.e);
    assert_eq!(o0.p, o1.p);
}

#[test]
fn matrix_field_dump_roundtrips() {
    let f = rest(RestKind::A);
    let bytes = f.to_dump().to_bytes();
    let back = densimat::io::FieldDump::from_bytes(&bytes).unwrap();
    assert_eq!(back.components, 16);
    assert_eq!(back.data[16 * 5 + 2], f.samples()[5][(0, 2)]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn boost_maps_energy_momentum_covariantly(v in -0.8f64..0.8, w in proptest::collection::vec(0.1f64..1.0, 4), shift in -1.0f64..1.0) {
        let lat = Lattice::cube(24, 16.0).unwrap();
        let kinds = RestKind::ALL;
        let mut acc = MatrixField::zeros(lat.clone(), M).unwrap();
        for (k, wk) in kinds.iter().zip(&w) {
            let f = rest_solution(*k, 1.2, M, &lat).unwrap();
            // Translate each component along x by a whole number of cells.
            let cells = (shift * 2.0).round() as i64 * (*k as i64 - 1);
            let n = lat.axis(0).n() as i64;
            let s: Vec<Mat4> = (0..lat.len()).map(|i| {
                let mut u = lat.unravel(i);
                u[0] = ((u[0] as i64 - cells).rem_euclid(n)) as usize;
                f.samples()[lat.ravel(&u)] * c(*wk)
            }).collect();
            for (a, b) in acc.samples_mut().iter_mut().zip(s) { *a += b; }
        }
        let o = observables(&acc.slice().unwrap());
        let spec = BoostSpec::from_velocity(v, [0.0, 0.0, 1.0]).unwrap();
        let b = BoostedField::new(&acc, spec, 1.2 / 20.0).unwrap();
        let ob = observables(&BoostedSlice { field: &b, t_s: 0.0 }.slice().unwrap());
        let (ch, sh) = (spec.rapidity.cosh(), spec.rapidity.sinh());
        let e_want = o.e * ch + o.p[2] * sh;
        let p_want = o.p[2] * ch + o.e * sh;
        prop_assert!((ob.e - e_want).abs() < 1e-4 * e_want.abs());
        prop_assert!((ob.p[2] - p_want).abs() < 1e-4 * e_want.abs());
    }

    #[test]
    fn conjugation_is_an_involution(seed in 0u64..1000) {
        let mut r = common::rng(seed);
        let m = Mat4::from_fn(|_, _| Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)));
        prop_assert!(max_entry(&(conjugate_matrix(&conjugate_matrix(&m)) - m)) < 1e-15);
    }

    #[test]
    fn rotations_compose(a in -1.5f64..1.5, b in -1.5f64..1.5) {
        let f = rest_solution(RestKind::B, 1.0, M, &lattice()).unwrap();
        let n = [0.0, 0.0, 1.0];
        let two = apply_rotation(&apply_rotation(&f, &RotationSpec { angle: a, axis: n }).unwrap(), &RotationSpec { angle: b, axis: n }).unwrap();
        let one = apply_rotation(&f, &RotationSpec { angle: a + b, axis: n }).unwrap();
        prop_assert!(two.max_abs_diff(&one) < 1e-8 * f.max_abs());
    }
}
