use num_complex::Complex64;

use crate::dirac::*;
use crate::error::{invalid, Result};
use crate::grid::Lattice;
use crate::io::CsvTrace;

use super::super::config::Params;
use super::super::report::Table;
use super::super::Context;
use super::{base, max_diff};

/// Off-slice separations `|x'_D|` probed along the boost axis.
const OFF_SLICE_SEPARATIONS: [f64; 3] = [1.0, 2.0, 4.0];
/// Relative amplitude below which the field counts as absent.
const SUPPORT_THRESHOLD: f64 = 1e-8;
/// Support half-width in units of the contracted width `σ/cosh ξ`.
const SUPPORT_SIGMAS: f64 = 3.0;

pub(super) fn lattice_defaults() -> Params {
    Params { n: 32, length: 16.0, ..base() }
}

pub(super) fn boost_defaults() -> Params {
    Params { dt: 0.5, steps: 5, ..lattice_defaults() }
}

pub(super) fn support_defaults() -> Params {
    Params { dt: 1.0, steps: 1, ..lattice_defaults() }
}

fn rest(kind: RestKind, p: &Params) -> Result<MatrixField> {
    rest_solution(kind, p.sigma, p.mass, &Lattice::cube(p.n, p.length)?)
}

fn boost(p: &Params) -> Result<(BoostSpec, usize)> {
    let spec = BoostSpec::from_velocity(p.velocity, p.direction)?;
    let axis = spec.axis().ok_or_else(|| invalid("boost direction must lie along a lattice axis"))?;
    Ok((spec, axis))
}

/// Finite-difference step for x'_D gradients, a twentieth of the rest width.
fn fd_step(p: &Params) -> f64 {
    p.sigma / 20.0
}

fn parallel(v: [f64; 3], n: [f64; 3]) -> f64 {
    v[0] * n[0] + v[1] * n[1] + v[2] * n[2]
}

pub(super) fn rest_table(p: &Params, ctx: &mut Context) -> Result<()> {
    let columns = ["Q", "E", "P1", "P2", "P3", "S1", "S2", "S3"];
    let mut table = Table { columns: columns.iter().map(|s| s.to_string()).collect(), ..Table::default() };
    let mut trace = CsvTrace::new(std::iter::once("kind").chain(columns));
    for kind in RestKind::ALL {
        let f = rest(kind, p)?;
        let o = observables(&f.slice()?);
        let row = vec![o.q, o.e, o.p[0], o.p[1], o.p[2], o.s[0], o.s[1], o.s[2]];
        trace.push_labeled(kind.label(), &row);
        table.rows.insert(kind.label().to_string(), row);
        let (q, s3) = kind.charge_and_spin();
        let l = kind.label();
        ctx.within(format!("charge[{l}]"), o.q, q, 1e-6);
        ctx.within(format!("energy[{l}]"), o.e, p.mass, 1e-6);
        ctx.at_most(format!("momentum[{l}]"), o.p.iter().map(|v| v.abs()).fold(0.0, f64::max), 0.0, 1e-6);
        ctx.within(format!("spin[{l}]"), o.s[2], s3, 1e-6);
        ctx.at_most(format!("transverse-spin[{l}]"), o.s[0].abs().max(o.s[1].abs()), 0.0, 1e-10);
        ctx.at_most(format!("residual[{l}]"), residual_free(&f), 0.0, 1e-6);
        ctx.write_dump(&format!("rest_{l}.dmf1"), || f.to_dump())?;
    }
    ctx.write_csv("rest_table.csv", &trace)?;
    ctx.set_table(table);
    Ok(())
}

fn centroid(j: &FourCurrentField, axis: usize) -> f64 {
    let lat = &j.lattice;
    let q: f64 = j.j[0].iter().sum();
    j.j[0].iter().enumerate().map(|(i, w)| w * lat.position(i)[axis]).sum::<f64>() / q
}

pub(super) fn boost_observables(p: &Params, ctx: &mut Context) -> Result<()> {
    let (spec, axis) = boost(p)?;
    let n = spec.direction;
    let (e_want, p_want) = (p.mass * spec.rapidity.cosh(), p.mass * spec.rapidity.sinh());
    let mut summary = CsvTrace::new(["kind", "Q", "E", "P_parallel", "E_exact", "P_exact"]);
    let mut track = CsvTrace::new(["kind", "t", "centroid", "centroid_exact"]);
    for kind in RestKind::ALL {
        let l = kind.label();
        let b = BoostedField::new(&rest(kind, p)?, spec, fd_step(p))?;
        let o = observables(&BoostedSlice { field: &b, t_s: 0.0 }.slice()?);
        let p_par = parallel(o.p, n);
        summary.push_labeled(l, &[o.q, o.e, p_par, e_want, p_want]);
        ctx.within(format!("charge[{l}]"), o.q, kind.charge_and_spin().0, 1e-6);
        ctx.within(format!("energy[{l}]"), o.e, e_want, 1e-4 * e_want.abs());
        ctx.within(format!("momentum[{l}]"), p_par, p_want, 1e-4 * p_want.abs());
        let mut worst: f64 = 0.0;
        for t in p.snapshot_times.iter().copied().chain(std::iter::once(p.total_time())) {
            let c = centroid(&current_j(&BoostedSlice { field: &b, t_s: t }.slice()?), axis) * n[axis];
            let want = spec.velocity() * t;
            worst = worst.max((c - want).abs());
            track.push_labeled(l, &[t, c, want]);
        }
        ctx.at_most(format!("centroid[{l}]"), worst, 0.0, 1e-6);
    }
    ctx.write_csv("boosted_observables.csv", &summary)?;
    ctx.write_csv("centroid.csv", &track)?;
    Ok(())
}

pub(super) fn support_region(p: &Params, ctx: &mut Context) -> Result<()> {
    let (spec, axis) = boost(p)?;
    let n = spec.direction;
    let v = spec.velocity();
    let t = p.total_time();
    let center = v * t * n[axis];
    let sigma_c = p.sigma / spec.rapidity.cosh();
    let half = SUPPORT_SIGMAS * sigma_c;
    let mut trace = CsvTrace::new(["kind", "x_d", "extent", "bound", "outside_ratio"]);
    for kind in RestKind::ALL {
        let l = kind.label();
        let b = BoostedField::new(&rest(kind, p)?, spec, fd_step(p))?;
        let (lat, on) = b.slice_at(t, 0.0, [0.0; 3])?;
        let r0 = support_report(&lat, &on, axis, center, half, SUPPORT_THRESHOLD, None);
        trace.push_labeled(l, &[0.0, r0.extent, half, r0.outside_ratio]);
        ctx.at_most(format!("slice-support[{l}]"), r0.outside_ratio, 0.0, SUPPORT_THRESHOLD);
        for s in OFF_SLICE_SEPARATIONS {
            let x_d = n.map(|c| c * s);
            let (lat, off) = b.slice_at(t, 0.0, x_d)?;
            let bound = 0.5 * v.abs() * s + half;
            let r = support_report(&lat, &off, axis, center, bound, SUPPORT_THRESHOLD, Some(r0.peak));
            trace.push_labeled(l, &[s, r.extent, bound, r.outside_ratio]);
            ctx.at_most(format!("off-slice-support[{l},x_D={s}]"), r.extent, bound, 0.0);
        }
    }
    ctx.write_csv("support.csv", &trace)?;
    Ok(())
}

pub(super) fn charge_conjugation(p: &Params, ctx: &mut Context) -> Result<()> {
    let mut trace = CsvTrace::new(["field", "Q", "E", "P1", "P2", "P3", "S1", "S2", "S3"]);
    for kind in RestKind::ALL {
        let f = rest(kind, p)?;
        let d = charge_conjugate(&f).max_abs_diff(&rest(kind.conjugate(), p)?);
        ctx.at_most(format!("pair[{}]", kind.label()), d, 0.0, 1e-10);
    }

    let (spec, _) = boost(p)?;
    let b = BoostedField::new(&rest(RestKind::B, p)?, spec, fd_step(p))?;
    let s = BoostedSlice { field: &b, t_s: 0.7 }.slice()?;
    let cs = charge_conjugate_slice(&s);
    let (j, jc) = (current_j(&s), current_j(&cs));
    let flip = (0..4).map(|mu| max_diff(&j.j[mu], &jc.j[mu], |a, b| (a + b).abs())).fold(0.0, f64::max);
    ctx.at_most("current-flip", flip, 0.0, 1e-12);
    let (o, oc) = (observables(&s), observables(&cs));
    for (label, x) in [("boosted", &o), ("conjugated", &oc)] {
        trace.push_labeled(label, &[x.q, x.e, x.p[0], x.p[1], x.p[2], x.s[0], x.s[1], x.s[2]]);
    }
    let vec_diff = |a: [f64; 3], b: [f64; 3]| (0..3).map(|k| (a[k] - b[k]).abs()).fold(0.0, f64::max);
    ctx.within("charge-flip", oc.q, -o.q, 1e-8);
    ctx.within("energy", oc.e, o.e, 1e-8);
    ctx.at_most("momentum", vec_diff(o.p, oc.p), 0.0, 1e-8);
    ctx.at_most("spin", vec_diff(o.s, oc.s), 0.0, 1e-8);

    // Lift of the conjugated spinor against the conjugated lift, on a small lattice
    // because the pair table is quadratic in its size.
    let lat = Lattice::cube(6, 8.0)?;
    let u = Spinor::new(Complex64::new(0.6, 0.1), Complex64::new(-0.2, 0.4), Complex64::new(0.3, -0.5), Complex64::new(0.1, 0.2));
    let psi = SpinorField::from_fn(lat.clone(), |x| {
        let r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        u * Complex64::from_polar((-r2 / 2.0).exp(), 0.4 * x[0] + 0.2 * x[2])
    })?;
    let (a, bb) = (lift_spinor(&psi, p.mass), lift_spinor(&conjugate_spinor(&psi), p.mass));
    let g2 = dirac_basis().gamma2;
    let mut worst: f64 = 0.0;
    for i in 0..lat.len() {
        for k in 0..lat.len() {
            let want = -(g2 * a.pair(k, i).transpose() * g2);
            worst = worst.max(max_entry(&(bb.pair(i, k) - want)));
        }
    }
    ctx.at_most("lift-identity", worst, 0.0, 1e-12);
    ctx.write_csv("conjugation.csv", &trace)?;
    Ok(())
}
