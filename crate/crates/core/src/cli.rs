//! Command-line front end. Every command writes one JSON document whose header records
//! the tool version, seed, configuration and parameters; curves go to an optional CSV.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::counterexamples::{reproduce_example54, reproduce_example71, reproduce_example72, Report};
use crate::error::{Error, Result};
use crate::kernels::log_sine;
use crate::perturb::{perturbation_trials, widening_trials};
use crate::problem_file::parse_problem;
use crate::solvers::{
    brute_force, solve_equioscillation, solve_maximin, solve_minimax, trace_mu, trace_to_csv,
    uniform_anchors, SolveConfig,
};
use crate::sumtrans::Problem;
use crate::torus::TorusPoint;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable capping the worker threads.
pub const THREADS_ENV: &str = "EQUIOSC_THREADS";

#[derive(Debug, Parser)]
#[command(name = "equiosc", version, about = "Weighted minimax and maximin node systems on the torus")]
struct Cli {
    /// Seed of the multistart and trial generators.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write the JSON output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Equioscillation tolerance on arc-maxima values.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Mode {
    Minimax,
    Maximin,
    Equi,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Minimax, maximin or anchored equioscillation solve.
    Solve {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Position of node 1; required with `--mode equi`.
        #[arg(long)]
        anchor: Option<f64>,
    },
    /// Anchored equioscillation solve.
    Equi {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long)]
        anchor: f64,
    },
    /// Equioscillation value over `grid` evenly spaced anchors.
    TraceMu {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long, default_value_t = 64)]
        grid: usize,
        /// CSV of `a, mu, y_1..y_n`.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Grid oracle for the minimax and maximin values.
    Oracle {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Reproduction report for one of the bundled counterexamples.
    Reproduce {
        #[command(subcommand)]
        which: Reproduce,
        /// CSV of the equioscillation-value sweep (example71 only).
        #[arg(long, global = true)]
        csv: Option<PathBuf>,
    },
    /// Random perturbation and pair-move trials on a problem.
    CheckPerturbation {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Sample points per arc in the pointwise comparison.
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
}

#[derive(Debug, Subcommand)]
enum Reproduce {
    Example71,
    Example72 {
        #[arg(long, default_value_t = 4.0 * std::f64::consts::PI + 1.0)]
        alpha: f64,
    },
    Example54 {
        #[arg(long, default_value_t = 100)]
        lmax: usize,
        #[arg(long, default_value_t = 64)]
        grid: usize,
    },
}

/// Failures split by exit code.
enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidProblem(_)
            | Error::InvalidConfig(_)
            | Error::InvalidField(_)
            | Error::InvalidEta(_)
            | Error::NonPeriodicKernel(_)
            | Error::NonFinite(_) => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    configure_threads();
    match dispatch(&cli) {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            EXIT_FAILED
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        // a pool may already exist when `run` is called twice in one process
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
}

fn load(path: &Path, cli: &Cli) -> std::result::Result<(Problem, SolveConfig), Failure> {
    let (p, cfg) = parse_problem(path)?;
    Ok((p, apply_flags(cfg, cli)?))
}

fn apply_flags(mut cfg: SolveConfig, cli: &Cli) -> Result<SolveConfig> {
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(tol) = cli.tol {
        cfg.tol_value = tol;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn emit(cli: &Cli, command: &str, cfg: &SolveConfig, params: Value, result: Value) -> std::result::Result<(), Failure> {
    let doc = json!({
        "tool": "equiosc",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "seed": cfg.seed,
        "config": cfg,
        "parameters": params,
        "result": result,
    });
    let text = serde_json::to_string_pretty(&doc).expect("serializable output") + "\n";
    match &cli.out {
        Some(path) => write_file(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> std::result::Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable output")
}

fn anchor_point(a: f64) -> std::result::Result<TorusPoint, Failure> {
    TorusPoint::new(a).map_err(|_| Failure::Usage(format!("anchor must be finite, got {a}")))
}

fn report_exit(r: &Report) -> i32 {
    if r.passed {
        EXIT_OK
    } else {
        for c in r.failures() {
            eprintln!("failed: {}", c.name);
        }
        EXIT_FAILED
    }
}

fn dispatch(cli: &Cli) -> std::result::Result<i32, Failure> {
    let started = Instant::now();
    let code = match &cli.command {
        Command::Solve {
            problem,
            mode,
            anchor,
        } => {
            let (p, cfg) = load(problem, cli)?;
            let result = match mode {
                Mode::Minimax => solve_minimax(&p, &cfg)?,
                Mode::Maximin => solve_maximin(&p, &cfg)?,
                Mode::Equi => {
                    let a = anchor.ok_or_else(|| Failure::Usage("--mode equi requires --anchor".into()))?;
                    solve_equioscillation(&p, anchor_point(a)?, &cfg, None)?
                }
            };
            let params = json!({ "problem": problem, "mode": mode, "anchor": anchor });
            emit(cli, "solve", &cfg, params, to_value(&result))?;
            EXIT_OK
        }
        Command::Equi { problem, anchor } => {
            let (p, cfg) = load(problem, cli)?;
            let result = solve_equioscillation(&p, anchor_point(*anchor)?, &cfg, None)?;
            let params = json!({ "problem": problem, "anchor": anchor });
            emit(cli, "equi", &cfg, params, to_value(&result))?;
            EXIT_OK
        }
        Command::TraceMu { problem, grid, csv } => {
            let (p, cfg) = load(problem, cli)?;
            if *grid == 0 {
                return Err(Failure::Usage("--grid must be positive".into()));
            }
            let points = trace_mu(&p, &uniform_anchors(*grid), &cfg)?;
            let mus: Vec<f64> = points.iter().filter_map(|t| t.mu).collect();
            let summary = json!({
                "min_mu": mus.iter().copied().reduce(f64::min),
                "max_mu": mus.iter().copied().reduce(f64::max),
                "failures": points.len() - mus.len(),
                "points": points,
            });
            if let Some(path) = csv {
                write_file(path, &trace_to_csv(&points, p.n()))?;
            }
            let params = json!({ "problem": problem, "grid": grid });
            emit(cli, "trace-mu", &cfg, params, summary)?;
            EXIT_OK
        }
        Command::Oracle { problem, grid } => {
            let (p, mut cfg) = load(problem, cli)?;
            if let Some(g) = grid {
                cfg.grid_resolution = *g;
                cfg.validate()?;
            }
            let result = brute_force(&p, &cfg)?;
            let params = json!({ "problem": problem, "grid": cfg.grid_resolution });
            emit(cli, "oracle", &cfg, params, to_value(&result))?;
            EXIT_OK
        }
        Command::Reproduce { which, csv } => {
            let cfg = apply_flags(SolveConfig::default(), cli)?;
            let (report, params) = match which {
                Reproduce::Example71 => (reproduce_example71(&cfg)?, json!({ "example": "example71" })),
                Reproduce::Example72 { alpha } => (
                    reproduce_example72(*alpha, &cfg)?,
                    json!({ "example": "example72", "alpha": alpha }),
                ),
                Reproduce::Example54 { lmax, grid } => (
                    reproduce_example54(*lmax, *grid, &cfg)?,
                    json!({ "example": "example54", "lmax": lmax, "grid": grid }),
                ),
            };
            if let (Some(path), Some(text)) = (csv, &report.csv) {
                write_file(path, text)?;
            }
            // timings vary between runs and stay out of the JSON
            let mut stable = report.clone();
            stable.data.retain(|d| !d.name.ends_with("seconds"));
            emit(cli, "reproduce", &cfg, params, to_value(&stable))?;
            report_exit(&report)
        }
        Command::CheckPerturbation {
            problem,
            trials,
            samples,
        } => {
            let (p, cfg) = load(problem, cli)?;
            let summary = perturbation_trials(&p, *trials, cfg.seed, *samples, &cfg.max_config())?;
            let widening = widening_trials(&log_sine(), *trials, cfg.seed)?;
            let strict_expected = p.kernel().is_strictly_concave();
            let passed = summary.errors == 0
                && summary.report.ok()
                && (!strict_expected || summary.report.strict_ok())
                && widening.violations == 0;
            let params = json!({ "problem": problem, "trials": trials, "samples": samples });
            let result = json!({ "passed": passed, "perturbation": summary, "widening": widening });
            emit(cli, "check-perturbation", &cfg, params, result)?;
            if passed {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
    };
    eprintln!("wall time: {:.3?}", started.elapsed());
    Ok(code)
}
