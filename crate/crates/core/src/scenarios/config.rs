use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// JSON run configuration. Every field other than `scenario` is optional and falls back
/// to the scenario's defaults; unknown keys are rejected at every level.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: String,
    #[serde(default)]
    pub grid: GridParams,
    #[serde(default)]
    pub physics: PhysicsParams,
    #[serde(default)]
    pub integrator: IntegratorParams,
    /// Absolute tolerance per check name, replacing the default.
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
    #[serde(default)]
    pub dump_fields: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridParams {
    /// Points per axis of the primary grid (x_S, z or each axis of a cube).
    pub n: Option<usize>,
    pub length: Option<f64>,
    /// Points and length of the x_D grid, for two-coordinate scalar fields.
    pub n_d: Option<usize>,
    pub length_d: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicsParams {
    pub mass: Option<f64>,
    pub hbar: Option<f64>,
    /// Coupling `e`.
    pub charge: Option<f64>,
    pub omega: Option<f64>,
    pub sigma: Option<f64>,
    pub x0: Option<f64>,
    pub k0: Option<f64>,
    /// Boost velocity; mutually exclusive with `rapidity`.
    pub velocity: Option<f64>,
    pub rapidity: Option<f64>,
    pub direction: Option<[f64; 3]>,
    /// Amplitude of the static gauge function.
    pub theta_amplitude: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegratorParams {
    pub dt: Option<f64>,
    pub steps: Option<usize>,
    /// Times at which traces are sampled; defaults to ten evenly spaced points.
    pub snapshot_times: Option<Vec<f64>>,
}

impl ScenarioConfig {
    pub fn named(scenario: &str) -> Self {
        Self { scenario: scenario.to_string(), ..Self::default() }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

/// Fully resolved parameters after merging a config over scenario defaults.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Params {
    pub n: usize,
    pub length: f64,
    pub n_d: usize,
    pub length_d: f64,
    pub mass: f64,
    pub hbar: f64,
    pub charge: f64,
    pub omega: f64,
    pub sigma: f64,
    pub x0: f64,
    pub k0: f64,
    pub velocity: f64,
    pub direction: [f64; 3],
    pub theta_amplitude: f64,
    pub dt: f64,
    pub steps: usize,
    pub snapshot_times: Vec<f64>,
}

impl Params {
    pub fn total_time(&self) -> f64 {
        self.dt * self.steps as f64
    }

    /// Step indices at which snapshots fall, rounded to the nearest step.
    pub fn snapshot_steps(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.snapshot_times.iter().map(|t| (t / self.dt).round() as usize).collect();
        s.sort_unstable();
        s.dedup();
        s
    }
}

fn config_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(config_err(format!("{name} must be positive and finite, got {v}")))
    }
}

fn finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(config_err(format!("{name} must be finite, got {v}")))
    }
}

fn grid_size(name: &str, n: usize) -> Result<()> {
    if n >= 4 && n % 2 == 0 {
        Ok(())
    } else {
        Err(config_err(format!("{name} must be even and at least 4, got {n}")))
    }
}

/// Merge `cfg` over `defaults` and validate every value before anything is allocated.
pub fn resolve(cfg: &ScenarioConfig, defaults: &Params, check_names: &[&str]) -> Result<Params> {
    let g = &cfg.grid;
    let ph = &cfg.physics;
    let it = &cfg.integrator;
    let mut p = defaults.clone();
    p.n = g.n.unwrap_or(p.n);
    p.length = g.length.unwrap_or(p.length);
    p.n_d = g.n_d.unwrap_or(p.n_d);
    p.length_d = g.length_d.unwrap_or(p.length_d);
    p.mass = ph.mass.unwrap_or(p.mass);
    p.hbar = ph.hbar.unwrap_or(p.hbar);
    p.charge = ph.charge.unwrap_or(p.charge);
    p.omega = ph.omega.unwrap_or(p.omega);
    p.sigma = ph.sigma.unwrap_or(p.sigma);
    p.x0 = ph.x0.unwrap_or(p.x0);
    p.k0 = ph.k0.unwrap_or(p.k0);
    p.theta_amplitude = ph.theta_amplitude.unwrap_or(p.theta_amplitude);
    match (ph.velocity, ph.rapidity) {
        (Some(_), Some(_)) => return Err(config_err("give either velocity or rapidity, not both")),
        (Some(v), None) => p.velocity = v,
        (None, Some(r)) => {
            finite("rapidity", r)?;
            p.velocity = r.tanh();
        }
        (None, None) => {}
    }
    if let Some(d) = ph.direction {
        let norm = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(config_err("direction must be a nonzero finite vector"));
        }
        p.direction = d.map(|c| c / norm);
    }
    p.dt = it.dt.unwrap_or(p.dt);
    p.steps = it.steps.unwrap_or(p.steps);

    grid_size("grid.n", p.n)?;
    grid_size("grid.n_d", p.n_d)?;
    positive("grid.length", p.length)?;
    positive("grid.length_d", p.length_d)?;
    positive("physics.mass", p.mass)?;
    positive("physics.hbar", p.hbar)?;
    positive("physics.sigma", p.sigma)?;
    finite("physics.charge", p.charge)?;
    finite("physics.omega", p.omega)?;
    finite("physics.x0", p.x0)?;
    finite("physics.k0", p.k0)?;
    finite("physics.theta_amplitude", p.theta_amplitude)?;
    if !(p.velocity.abs() < 1.0) {
        return Err(config_err(format!("|velocity| must be below 1, got {}", p.velocity)));
    }
    positive("integrator.dt", p.dt)?;
    if p.steps == 0 {
        return Err(config_err("integrator.steps must be at least 1"));
    }
    let total = p.total_time();
    p.snapshot_times = match &it.snapshot_times {
        Some(ts) => {
            if ts.iter().any(|t| !(t.is_finite() && *t >= 0.0 && *t <= total * (1.0 + 1e-12))) {
                return Err(config_err(format!("snapshot times must lie in [0, {total}]")));
            }
            ts.clone()
        }
        None => (0..=10).map(|k| total * k as f64 / 10.0).collect(),
    };
    for (name, tol) in &cfg.tolerances {
        if !check_names.contains(&name.as_str()) {
            return Err(config_err(format!("unknown tolerance '{name}'; this scenario checks {}", check_names.join(", "))));
        }
        positive(&format!("tolerances.{name}"), *tol)?;
    }
    Ok(p)
}
