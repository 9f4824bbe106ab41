//! Named regression scenarios: each resolves a JSON config over its defaults, runs,
//! and reports measured values against expectations with artifacts on disk.

mod cases;
mod config;
mod report;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::io::{CsvTrace, FieldDump};

pub use config::{GridParams, IntegratorParams, Params, PhysicsParams, ScenarioConfig};
pub use report::{Check, Relation, RunReport, Table};

/// Output directory used when neither the CLI, the environment nor the config names one.
pub const DEFAULT_OUTPUT_DIR: &str = "densimat-out";
/// Environment variable that overrides the config's output directory.
pub const OUTPUT_ENV: &str = "DENSIMAT_OUT";

/// Registry entry.
pub struct Scenario {
    pub name: &'static str,
    pub description: &'static str,
    /// Check families this scenario reports; the valid keys for tolerance overrides.
    pub checks: &'static [&'static str],
    pub(crate) defaults: fn() -> Params,
    pub(crate) run: fn(&Params, &mut Context) -> Result<()>,
}

impl Scenario {
    pub fn defaults(&self) -> Params {
        (self.defaults)()
    }
}

/// All scenarios in lexicographic order.
pub fn registry() -> &'static [Scenario] {
    cases::REGISTRY
}

pub fn find(name: &str) -> Result<&'static Scenario> {
    registry()
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::Config(format!("unknown scenario '{name}'; see `list`")))
}

/// `(name, description)` pairs in lexicographic order.
pub fn list_scenarios() -> Vec<(&'static str, &'static str)> {
    registry().iter().map(|s| (s.name, s.description)).collect()
}

/// Settings that come from the command line rather than the config file.
#[derive(Clone, Debug, PartialEq)]
pub struct RunOptions {
    /// Root output directory; each scenario writes into `<root>/<name>/`.
    pub output_dir: Option<PathBuf>,
    /// Multiplies every tolerance, defaults and overrides alike.
    pub tolerance_scale: f64,
    pub dump_fields: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self { output_dir: None, tolerance_scale: 1.0, dump_fields: false }
    }
}

/// Root output directory: command line, then `DENSIMAT_OUT`, then the config, then the default.
pub fn resolve_output_root(opts: &RunOptions, cfg: &ScenarioConfig) -> PathBuf {
    if let Some(d) = &opts.output_dir {
        return d.clone();
    }
    if let Some(d) = std::env::var_os(OUTPUT_ENV).filter(|v| !v.is_empty()) {
        return PathBuf::from(d);
    }
    cfg.output_dir.clone().unwrap_or_else(|| PathBuf::from(DEFAULT_OUTPUT_DIR))
}

/// A finished run plus its wall-clock time, which is kept out of the report.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: RunReport,
    pub elapsed: Duration,
    pub directory: PathBuf,
}

/// Per-run state handed to scenario bodies.
pub struct Context {
    dir: PathBuf,
    overrides: BTreeMap<String, f64>,
    scale: f64,
    dump_fields: bool,
    checks: Vec<Check>,
    artifacts: Vec<String>,
    table: Option<Table>,
}

impl Context {
    fn tolerance(&self, name: &str, default: f64) -> f64 {
        let family = report::family_of(name);
        self.overrides.get(family).copied().unwrap_or(default) * self.scale
    }

    /// Record `|measured − expected| ≤ tol`.
    pub fn within(&mut self, name: impl Into<String>, measured: f64, expected: f64, tol: f64) {
        let name = name.into();
        let tol = self.tolerance(&name, tol);
        self.checks.push(Check::new(name, Relation::Within, measured, expected, tol));
    }

    /// Record `measured ≤ bound + tol`.
    pub fn at_most(&mut self, name: impl Into<String>, measured: f64, bound: f64, tol: f64) {
        let name = name.into();
        let tol = self.tolerance(&name, tol);
        self.checks.push(Check::new(name, Relation::AtMost, measured, bound, tol));
    }

    pub fn set_table(&mut self, table: Table) {
        self.table = Some(table);
    }

    pub fn dump_fields(&self) -> bool {
        self.dump_fields
    }

    pub fn write_csv(&mut self, file: &str, trace: &CsvTrace) -> Result<()> {
        trace.write(&self.dir.join(file))?;
        self.artifacts.push(file.to_string());
        Ok(())
    }

    /// Write a field dump; a no-op unless field dumps were requested.
    pub fn write_dump(&mut self, file: &str, dump: impl FnOnce() -> FieldDump) -> Result<()> {
        if self.dump_fields {
            dump().write(&self.dir.join(file))?;
            self.artifacts.push(file.to_string());
        }
        Ok(())
    }
}

/// Run one scenario and write `report.json` (deterministic) and `timing.txt` next to its artifacts.
pub fn run_scenario(cfg: &ScenarioConfig, opts: &RunOptions) -> Result<Outcome> {
    let scenario = find(&cfg.scenario)?;
    if !(opts.tolerance_scale.is_finite() && opts.tolerance_scale > 0.0) {
        return Err(Error::Config(format!("tolerance scale must be positive, got {}", opts.tolerance_scale)));
    }
    let params = config::resolve(cfg, &scenario.defaults(), scenario.checks)?;
    let dir = resolve_output_root(opts, cfg).join(scenario.name);
    std::fs::create_dir_all(&dir)?;
    let mut ctx = Context {
        dir: dir.clone(),
        overrides: cfg.tolerances.clone(),
        scale: opts.tolerance_scale,
        dump_fields: opts.dump_fields || cfg.dump_fields,
        checks: Vec::new(),
        artifacts: Vec::new(),
        table: None,
    };
    let start = Instant::now();
    (scenario.run)(&params, &mut ctx)?;
    let elapsed = start.elapsed();
    ctx.artifacts.push("report.json".into());
    ctx.artifacts.sort();
    let report = RunReport {
        scenario: scenario.name.to_string(),
        description: scenario.description.to_string(),
        passed: !ctx.checks.is_empty() && ctx.checks.iter().all(|c| c.passed),
        checks: ctx.checks,
        table: ctx.table,
        artifacts: ctx.artifacts,
    };
    std::fs::write(dir.join("report.json"), report.to_json())?;
    std::fs::write(dir.join("timing.txt"), format!("{:.3}\n", elapsed.as_secs_f64()))?;
    Ok(Outcome { report, elapsed, directory: dir })
}

/// Names matching a glob pattern, or all names when `filter` is `None`.
pub fn select(filter: Option<&str>) -> Result<Vec<&'static str>> {
    let pattern = match filter {
        Some(f) => Some(glob::Pattern::new(f).map_err(|e| Error::Config(format!("bad filter '{f}': {e}")))?),
        None => None,
    };
    Ok(registry().iter().map(|s| s.name).filter(|n| pattern.as_ref().map_or(true, |p| p.matches(n))).collect())
}

/// Run every selected scenario with default parameters, concurrently. Results keep
/// registry order.
pub fn check_all(filter: Option<&str>, opts: &RunOptions) -> Result<Vec<(&'static str, Result<Outcome>)>> {
    let names = select(filter)?;
    Ok(names.par_iter().map(|&n| (n, run_scenario(&ScenarioConfig::named(n), opts))).collect())
}

/// Process exit code for a single run: 0 pass, 1 failed check, 2 configuration or
/// parameter error, 3 numeric divergence, 4 I/O or other failure.
pub fn exit_code(result: &Result<Outcome>) -> i32 {
    match result {
        Ok(o) if o.report.passed => 0,
        Ok(_) => 1,
        Err(Error::Config(_) | Error::InvalidParameter(_) | Error::Unsupported(_)) => 2,
        Err(Error::Divergence(_)) => 3,
        Err(_) => 4,
    }
}

/// Combined exit code of several runs: the largest individual code.
pub fn combined_exit_code<'a>(results: impl IntoIterator<Item = &'a Result<Outcome>>) -> i32 {
    results.into_iter().map(exit_code).max().unwrap_or(0)
}

/// Read `path` as a config; a helper for callers that only hold a file name.
pub fn load_config(path: &Path) -> Result<ScenarioConfig> {
    ScenarioConfig::load(path)
}
