use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use densimat::scenarios::{self, Outcome, RunOptions, ScenarioConfig};

/// Run the density-matrix field regression scenarios.
#[derive(Parser, Debug)]
#[command(name = "densimat", version)]
struct Cli {
    /// Root output directory; overrides DENSIMAT_OUT and the config.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Multiply every tolerance by this factor.
    #[arg(long, global = true, default_value_t = 1.0)]
    tolerance_scale: f64,
    /// Write DMF1 field dumps at snapshot times.
    #[arg(long, global = true)]
    dump_fields: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one scenario from a JSON config.
    Run { config: PathBuf },
    /// List registered scenarios.
    List,
    /// Run every scenario with default parameters.
    CheckAll {
        /// Glob over scenario names, e.g. `dirac-*`.
        #[arg(long)]
        filter: Option<String>,
    },
}

fn summarize(name: &str, result: &densimat::Result<Outcome>) {
    match result {
        Ok(o) => {
            let r = &o.report;
            println!("{} {name} ({:.1} s) -> {}", if r.passed { "PASS" } else { "FAIL" }, o.elapsed.as_secs_f64(), o.directory.display());
            for c in r.failed_checks() {
                println!("    {}: measured {:e}, expected {:e}, tolerance {:e}", c.name, c.measured, c.expected, c.tolerance);
            }
        }
        Err(e) => println!("ERROR {name}: {e}"),
    }
}

fn run(cli: &Cli) -> u8 {
    let opts = RunOptions { output_dir: cli.out.clone(), tolerance_scale: cli.tolerance_scale, dump_fields: cli.dump_fields };
    let code = match &cli.command {
        Command::List => {
            for (name, description) in scenarios::list_scenarios() {
                println!("{name:<20} {description}");
            }
            0
        }
        Command::Run { config } => {
            let result = ScenarioConfig::load(config).and_then(|cfg| scenarios::run_scenario(&cfg, &opts));
            let name = config.display().to_string();
            summarize(&name, &result);
            scenarios::exit_code(&result)
        }
        Command::CheckAll { filter } => match scenarios::check_all(filter.as_deref(), &opts) {
            Ok(results) => {
                for (name, r) in &results {
                    summarize(name, r);
                }
                let passed = results.iter().filter(|(_, r)| scenarios::exit_code(r) == 0).count();
                println!("{passed}/{} scenarios passed", results.len());
                scenarios::combined_exit_code(results.iter().map(|(_, r)| r))
            }
            Err(e) => {
                println!("ERROR: {e}");
                scenarios::exit_code(&Err(e))
            }
        },
    };
    code as u8
}

fn main() -> ExitCode {
    ExitCode::from(run(&Cli::parse()))
}

#[cfg(test)]
mod tests {
    use std::fs;
    use std::path::Path;

    use super::*;

    fn invoke(args: &[&str]) -> u8 {
        run(&Cli::try_parse_from(std::iter::once("densimat").chain(args.iter().copied())).expect("arguments parse"))
    }

    fn write_config(dir: &Path, body: &str) -> String {
        let p = dir.join("config.json");
        fs::write(&p, body).unwrap();
        p.to_string_lossy().into_owned()
    }

    fn data_files(root: &Path) -> Vec<(String, Vec<u8>)> {
        let mut out = Vec::new();
        for scenario in fs::read_dir(root).unwrap() {
            for f in fs::read_dir(scenario.unwrap().path()).unwrap() {
                let p = f.unwrap().path();
                let name = p.file_name().unwrap().to_string_lossy();
                if name.ends_with(".csv") || name == "report.json" {
                    out.push((p.strip_prefix(root).unwrap().display().to_string(), fs::read(&p).unwrap()));
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn flags_parse_before_or_after_the_subcommand() {
        let a = Cli::try_parse_from(["densimat", "--out", "x", "check-all", "--filter", "c*"]).unwrap();
        let b = Cli::try_parse_from(["densimat", "check-all", "--filter", "c*", "--out", "x", "--tolerance-scale", "2"]).unwrap();
        assert_eq!(a.out, b.out);
        assert_eq!(b.tolerance_scale, 2.0);
        assert!(matches!(a.command, Command::CheckAll { filter: Some(ref f) } if f == "c*"));
        assert!(Cli::try_parse_from(["densimat", "run"]).is_err());
        assert_eq!(invoke(&["list"]), 0);
    }

    #[test]
    fn odd_grid_size_is_a_config_error() {
        let tmp = tempfile::tempdir().unwrap();
        let cfg = write_config(tmp.path(), r#"{"scenario": "free-localized", "grid": {"n": 3}}"#);
        assert_eq!(invoke(&["run", &cfg, "--out", tmp.path().to_str().unwrap()]), 2);
        assert!(!tmp.path().join("free-localized").exists(), "nothing is written before validation");
    }

    #[test]
    fn unknown_keys_and_names_are_config_errors() {
        let tmp = tempfile::tempdir().unwrap();
        let out_dir = tmp.path().join("out");
        for body in [
            r#"{"scenario": "free-localized", "grid": {"points": 64}}"#,
            r#"{"scenario": "free-localized", "tolerances": {"positon": 1e-3}}"#,
            r#"{"scenario": "no-such-scenario"}"#,
            r#"{"scenario": "free-localized", "physics": {"velocity": 0.5, "rapidity": 0.5}}"#,
            "not json",
        ] {
            let cfg = write_config(tmp.path(), body);
            assert_eq!(invoke(&["run", &cfg, "--out", out_dir.to_str().unwrap()]), 2, "{body}");
        }
        assert_eq!(invoke(&["run", "/nonexistent/config.json", "--out", out_dir.to_str().unwrap()]), 2);
        assert_eq!(invoke(&["check-all", "--filter", "[", "--out", out_dir.to_str().unwrap()]), 2);
    }

    #[test]
    fn passing_run_writes_report_and_artifacts() {
        let tmp = tempfile::tempdir().unwrap();
        let cfg = write_config(tmp.path(), r#"{"scenario": "free-localized", "integrator": {"steps": 200, "snapshot_times": [0.0, 0.1, 0.2]}}"#);
        assert_eq!(invoke(&["run", &cfg, "--out", tmp.path().to_str().unwrap(), "--dump-fields"]), 0);
        let dir = tmp.path().join("free-localized");
        let report = fs::read_to_string(dir.join("report.json")).unwrap();
        assert!(report.contains("\"passed\": true"));
        assert!(!report.contains("elapsed"), "wall-clock stays out of the report");
        assert_eq!(fs::read_to_string(dir.join("trace.csv")).unwrap().lines().count(), 4);
        assert!(dir.join("phi_000100.dmf1").exists() && dir.join("timing.txt").exists());
    }

    #[test]
    fn failing_checks_and_tolerance_scale_set_exit_one() {
        let tmp = tempfile::tempdir().unwrap();
        let cfg = write_config(tmp.path(), r#"{"scenario": "commutator"}"#);
        let out_dir = tmp.path().to_str().unwrap();
        assert_eq!(invoke(&["run", &cfg, "--out", out_dir]), 0);
        assert_eq!(invoke(&["run", &cfg, "--out", out_dir, "--tolerance-scale", "1e-8"]), 1);
        assert_eq!(invoke(&["run", &cfg, "--out", out_dir, "--tolerance-scale=-1"]), 2);
    }

    #[test]
    fn divergence_sets_exit_three() {
        let tmp = tempfile::tempdir().unwrap();
        let cfg = write_config(tmp.path(), r#"{"scenario": "coupled-smoke", "physics": {"charge": 1e9}}"#);
        assert_eq!(invoke(&["run", &cfg, "--out", tmp.path().to_str().unwrap()]), 3);
    }

    #[test]
    fn environment_overrides_config_output_dir() {
        let tmp = tempfile::tempdir().unwrap();
        let (from_cfg, from_env, from_flag) = (tmp.path().join("cfg"), tmp.path().join("env"), tmp.path().join("flag"));
        let body = format!(r#"{{"scenario": "momentum-symmetry", "output_dir": {:?}}}"#, from_cfg.to_str().unwrap());
        let cfg = write_config(tmp.path(), &body);
        // Only this test runs without --out, so setting the variable cannot leak elsewhere.
        std::env::set_var(scenarios::OUTPUT_ENV, &from_env);
        let via_env = invoke(&["run", &cfg]);
        let via_flag = invoke(&["run", &cfg, "--out", from_flag.to_str().unwrap()]);
        std::env::remove_var(scenarios::OUTPUT_ENV);
        assert_eq!((via_env, via_flag), (0, 0));
        assert!(from_env.join("momentum-symmetry/report.json").exists());
        assert!(from_flag.join("momentum-symmetry/report.json").exists());
        assert!(!from_cfg.exists());
    }

    #[test]
    fn check_all_is_byte_identical_across_runs() {
        let tmp = tempfile::tempdir().unwrap();
        let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
        for d in [&a, &b] {
            assert_eq!(invoke(&["check-all", "--filter", "c*", "--out", d.to_str().unwrap()]), 0);
        }
        let (fa, fb) = (data_files(&a), data_files(&b));
        assert_eq!(fa.iter().map(|f| &f.0).collect::<Vec<_>>(), fb.iter().map(|f| &f.0).collect::<Vec<_>>());
        assert!(fa.len() >= 6);
        assert!(fa == fb, "artifacts differ between runs");
    }
}
