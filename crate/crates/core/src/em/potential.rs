use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::fft::FftNd;
use crate::grid::Lattice;
use crate::io::FieldDump;

/// Lattice axis carrying spatial direction `k` (0-based), if any.
///
/// Rank-3 lattices carry all three directions; rank-1 lattices are the z axis of a
/// reduced problem in which `∂₁ = ∂₂ = 0`.
pub(crate) fn direction_axis(lattice: &Lattice, k: usize) -> Option<usize> {
    match lattice.rank() {
        3 => Some(k),
        1 => (k == 2).then_some(0),
        _ => None,
    }
}

fn check_rank(lattice: &Lattice) -> Result<()> {
    if lattice.rank() == 2 {
        return Err(invalid("potentials live on a z line (rank 1) or a 3-D box"));
    }
    Ok(())
}

/// Spectral `∂_k f` along spatial direction `k`; zero where the lattice has no such axis.
///
/// The mean is removed before transforming so constant inputs give exact zeros.
pub(crate) fn spatial_derivative(lattice: &Lattice, samples: &[f64], k: usize) -> Vec<f64> {
    let Some(axis) = direction_axis(lattice, k) else {
        return vec![0.0; samples.len()];
    };
    let mean = samples.iter().sum::<f64>() / samples.len() as f64;
    let mut buf: Vec<Complex64> = samples.iter().map(|&v| Complex64::from(v - mean)).collect();
    let shape = lattice.shape();
    let plan = FftNd::new(&shape);
    plan.forward_axis(&mut buf, axis);
    let g = lattice.axis(axis);
    let n = g.n();
    let inner: usize = shape[axis + 1..].iter().product();
    for (i, v) in buf.iter_mut().enumerate() {
        let bin = (i / inner) % n;
        let k = if bin == n / 2 { 0.0 } else { g.wavenumber(bin) };
        *v *= Complex64::new(0.0, k / n as f64);
    }
    plan.inverse_axis(&mut buf, axis);
    buf.into_iter().map(|v| v.re).collect()
}

/// `A^μ` on a periodic lattice with two leapfrog time levels and coupling `e`.
#[derive(Clone, Debug, PartialEq)]
pub struct FourPotential {
    lattice: Lattice,
    coupling: f64,
    current: [Vec<f64>; 4],
    previous: [Vec<f64>; 4],
    /// Spacing between `previous` and `current`; zero marks a static history.
    level_dt: f64,
    time: f64,
    lorenz: Option<f64>,
}

impl FourPotential {
    /// Static potential: both time levels hold `current`.
    pub fn new(lattice: Lattice, coupling: f64, current: [Vec<f64>; 4]) -> Result<Self> {
        Self::with_levels(lattice, coupling, current.clone(), current, 0.0)
    }

    /// Potential with explicit time levels `A(t)` and `A(t − level_dt)`.
    pub fn with_levels(lattice: Lattice, coupling: f64, current: [Vec<f64>; 4], previous: [Vec<f64>; 4], level_dt: f64) -> Result<Self> {
        check_rank(&lattice)?;
        if !coupling.is_finite() || !level_dt.is_finite() || level_dt < 0.0 {
            return Err(invalid("coupling and level spacing must be finite, spacing non-negative"));
        }
        let n = lattice.len();
        for c in current.iter().chain(&previous) {
            if c.len() != n {
                return Err(Error::GridMismatch(format!("{} samples for {n} lattice points", c.len())));
            }
            if c.iter().any(|v| !v.is_finite()) {
                return Err(invalid("potential samples must be finite"));
            }
        }
        Ok(Self { lattice, coupling, current, previous, level_dt, time: 0.0, lorenz: None })
    }

    pub fn zeros(lattice: Lattice, coupling: f64) -> Result<Self> {
        let n = lattice.len();
        Self::new(lattice, coupling, [0, 1, 2, 3].map(|_| vec![0.0; n]))
    }

    /// Static potential sampled from `f(x) = [A⁰, A¹, A², A³]`.
    pub fn from_fn(lattice: Lattice, coupling: f64, f: impl Fn([f64; 3]) -> [f64; 4]) -> Result<Self> {
        let values: Vec<[f64; 4]> = (0..lattice.len()).map(|i| f(lattice.position(i))).collect();
        let current = [0, 1, 2, 3].map(|mu| values.iter().map(|v| v[mu]).collect());
        Self::new(lattice, coupling, current)
    }

    /// Time-dependent potential `f(x, t)` sampled at `t` and `t − dt`.
    pub fn from_fn_at(lattice: Lattice, coupling: f64, t: f64, dt: f64, f: impl Fn([f64; 3], f64) -> [f64; 4]) -> Result<Self> {
        let level = |s: f64| {
            let values: Vec<[f64; 4]> = (0..lattice.len()).map(|i| f(lattice.position(i), s)).collect();
            [0, 1, 2, 3].map(|mu| values.iter().map(|v| v[mu]).collect::<Vec<f64>>())
        };
        let (cur, prev) = (level(t), level(t - dt));
        let mut a = Self::with_levels(lattice, coupling, cur, prev, dt)?;
        a.time = t;
        Ok(a)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn with_coupling(&self, coupling: f64) -> Self {
        Self { coupling, ..self.clone() }
    }

    pub fn component(&self, mu: usize) -> &[f64] {
        &self.current[mu]
    }

    pub fn previous(&self, mu: usize) -> &[f64] {
        &self.previous[mu]
    }

    pub fn level_dt(&self) -> f64 {
        self.level_dt
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    /// `∂_μA^μ` at the level before the latest step, or `None` before any step.
    pub fn lorenz_residual(&self) -> Option<f64> {
        self.lorenz
    }

    /// `[A⁰, A¹, A², A³]` at flat index `i`.
    pub fn at(&self, i: usize) -> [f64; 4] {
        [0, 1, 2, 3].map(|mu| self.current[mu][i])
    }

    pub fn is_zero(&self) -> bool {
        self.current.iter().flatten().all(|&v| v == 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.current.iter().flatten().fold(0.0f64, |a, v| a.max(v.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.current
            .iter()
            .zip(&other.current)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()))
            .fold(0.0, f64::max)
    }

    /// DMF1 dump of the current level: dims are the lattice shape followed by 4.
    pub fn to_dump(&self) -> FieldDump {
        let mut dims: Vec<u32> = self.lattice.shape().iter().map(|&n| n as u32).collect();
        dims.push(4);
        let data = (0..self.lattice.len())
            .flat_map(|i| self.at(i).map(Complex64::from))
            .collect();
        FieldDump::new(dims, 1, data).expect("dims match payload")
    }

    /// `Σ_μ ∫ [(∂_t A^μ)² + |∇A^μ|²]` with one-sided differences.
    pub fn energy_proxy(&self) -> f64 {
        let lat = &self.lattice;
        let mut acc = 0.0;
        for mu in 0..4 {
            let a = &self.current[mu];
            if self.level_dt > 0.0 {
                acc += a.iter().zip(&self.previous[mu]).map(|(x, y)| ((x - y) / self.level_dt).powi(2)).sum::<f64>();
            }
            for axis in 0..lat.rank() {
                let h = lat.axis(axis).dx();
                acc += (0..lat.len()).map(|i| ((a[neighbor(lat, i, axis, 1)] - a[i]) / h).powi(2)).sum::<f64>();
            }
        }
        acc * lat.cell_volume()
    }

    pub(crate) fn levels_mut(&mut self) -> (&mut [Vec<f64>; 4], &mut [Vec<f64>; 4]) {
        (&mut self.current, &mut self.previous)
    }

    pub(crate) fn set_step_state(&mut self, dt: f64, time: f64, lorenz: f64) {
        self.level_dt = dt;
        self.time = time;
        self.lorenz = Some(lorenz);
    }
}

/// Flat index of the periodic neighbor `offset` cells along `axis`.
pub(crate) fn neighbor(lattice: &Lattice, i: usize, axis: usize, offset: i64) -> usize {
    let mut m = lattice.unravel(i);
    let n = lattice.axis(axis).n() as i64;
    m[axis] = (m[axis] as i64 + offset).rem_euclid(n) as usize;
    lattice.ravel(&m[..lattice.rank()])
}

/// Time-independent gauge function `θ(x) = s·x + θ_p(x)` with periodic part `θ_p`.
///
/// The linear part is only periodic as a phase when `s·L ∈ 2πℤ`; it is kept for
/// pure-gauge checks on the potential.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeFunction {
    lattice: Lattice,
    slope: [f64; 3],
    periodic: Vec<f64>,
}

impl GaugeFunction {
    pub fn new(lattice: Lattice, periodic: Vec<f64>) -> Result<Self> {
        Self::with_slope(lattice, [0.0; 3], periodic)
    }

    pub fn with_slope(lattice: Lattice, slope: [f64; 3], periodic: Vec<f64>) -> Result<Self> {
        check_rank(&lattice)?;
        if periodic.len() != lattice.len() {
            return Err(Error::GridMismatch("gauge function length does not match lattice".into()));
        }
        if periodic.iter().chain(&slope).any(|v| !v.is_finite()) {
            return Err(invalid("gauge function must be finite"));
        }
        Ok(Self { lattice, slope, periodic })
    }

    pub fn from_fn(lattice: Lattice, f: impl Fn([f64; 3]) -> f64) -> Result<Self> {
        let periodic = (0..lattice.len()).map(|i| f(lattice.position(i))).collect();
        Self::new(lattice, periodic)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// `θ` at every lattice point.
    pub fn values(&self) -> Vec<f64> {
        (0..self.lattice.len())
            .map(|i| {
                let x = self.lattice.position(i);
                let lin: f64 = (0..3).filter(|&k| direction_axis(&self.lattice, k).is_some()).map(|k| self.slope[k] * coord(&self.lattice, &x, k)).sum();
                lin + self.periodic[i]
            })
            .collect()
    }

    /// `∂_k θ` for spatial direction `k`.
    pub fn gradient(&self, k: usize) -> Vec<f64> {
        if direction_axis(&self.lattice, k).is_none() {
            return vec![0.0; self.lattice.len()];
        }
        spatial_derivative(&self.lattice, &self.periodic, k).into_iter().map(|d| d + self.slope[k]).collect()
    }
}

/// Coordinate along spatial direction `k` of a lattice position.
fn coord(lattice: &Lattice, x: &[f64; 3], k: usize) -> f64 {
    direction_axis(lattice, k).map_or(0.0, |a| x[a])
}

/// `A'_μ = A_μ + (1/e) ∂_μθ` for a time-independent `θ`, i.e. `A'^k = A^k − ∂_kθ/e`.
pub fn gauge_transform_a(a: &FourPotential, theta: &GaugeFunction) -> Result<FourPotential> {
    if a.coupling == 0.0 {
        return Err(invalid("gauge transformation of A needs a nonzero coupling"));
    }
    if !a.lattice.same_as(&theta.lattice) {
        return Err(Error::GridMismatch("gauge function and potential lattices differ".into()));
    }
    let mut out = a.clone();
    for k in 0..3 {
        if direction_axis(&a.lattice, k).is_none() {
            continue;
        }
        let g = theta.gradient(k);
        let (cur, prev) = out.levels_mut();
        for level in [cur, prev] {
            for (v, d) in level[k + 1].iter_mut().zip(&g) {
                *v -= d / a.coupling;
            }
        }
    }
    Ok(out)
}

/// Electric and magnetic fields `E = −∇A⁰ − ∂_t A`, `B = ∇×A`.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldStrength {
    pub e: [Vec<f64>; 3],
    pub b: [Vec<f64>; 3],
}

impl FieldStrength {
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.e
            .iter()
            .chain(&self.b)
            .zip(other.e.iter().chain(&other.b))
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()))
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.e.iter().chain(&self.b).flatten().fold(0.0f64, |a, v| a.max(v.abs()))
    }
}

/// Spectral field strength; `∂_t A` comes from the two time levels.
pub fn field_strength(a: &FourPotential) -> FieldStrength {
    let lat = &a.lattice;
    let d = |mu: usize, k: usize| spatial_derivative(lat, &a.current[mu], k);
    let grad0 = [0, 1, 2].map(|k| d(0, k));
    let e = [0, 1, 2].map(|k| {
        (0..lat.len())
            .map(|i| {
                let dt = if a.level_dt > 0.0 { (a.current[k + 1][i] - a.previous[k + 1][i]) / a.level_dt } else { 0.0 };
                -grad0[k][i] - dt
            })
            .collect()
    });
    let b = [0, 1, 2].map(|k| {
        let (p, q) = ((k + 1) % 3, (k + 2) % 3);
        let (dpq, dqp) = (d(q + 1, p), d(p + 1, q));
        dpq.iter().zip(&dqp).map(|(x, y)| x - y).collect()
    });
    FieldStrength { e, b }
}
