//! JSON problem files.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "kernel": { "name": "log_sine" },
//!   "nu": [1.0, 1.0],
//!   "field": { "name": "example71" },
//!   "solver": { "seed": 7 }
//! }
//! ```
//!
//! Kernels: `log_sine`, `zero`, or `smoothed` with `base`, `eta` and `mode` (`upper`/`lower`).
//! Fields: `example71`, `zero`, `tilde` with `alpha`, `harmonic` with `lmax`, or `piecewise`
//! with `pieces` (`constant`, `linear`, `minus_infinity`) and optional point `overrides`.
//! An optional `n` must match the length of `nu`. Unknown keys are rejected with their path.

use std::path::Path;

use serde::{Deserialize, Deserializer};

use crate::error::{Error, Result};
use crate::fields::{
    example71_field, harmonic_step_field, tilde_field, zero_field, Piece, PieceForm, PiecewiseField,
};
use crate::kernels::{log_sine, smooth, zero_kernel, Kernel, SmoothingMode};
use crate::solvers::SolveConfig;
use crate::sumtrans::Problem;
use crate::torus::TorusPoint;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemSpecFile {
    schema_version: u32,
    kernel: KernelSpec,
    nu: Vec<f64>,
    n: Option<usize>,
    field: FieldSpec,
    solver: Option<SolveConfig>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case", deny_unknown_fields)]
// empty braces keep unknown keys rejected on the parameterless variants
enum KernelSpec {
    LogSine {},
    Zero {},
    Smoothed {
        base: BaseKernel,
        eta: f64,
        mode: SmoothingMode,
    },
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
enum BaseKernel {
    LogSine,
    Zero,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case", deny_unknown_fields)]
enum FieldSpec {
    Example71 {},
    Zero {},
    Tilde {
        alpha: f64,
    },
    Harmonic {
        lmax: usize,
    },
    Piecewise {
        pieces: Vec<PieceSpec>,
        #[serde(default)]
        overrides: Vec<OverrideSpec>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum PieceSpec {
    Constant { start: f64, end: f64, value: f64 },
    Linear { start: f64, end: f64, slope: f64, value_at_start: f64 },
    MinusInfinity { start: f64, end: f64 },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct OverrideSpec {
    at: f64,
    #[serde(deserialize_with = "ext_real")]
    value: f64,
}

/// A number, or one of the strings `"-inf"`, `"inf"`.
fn ext_real<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Ext {
        Num(f64),
        Text(String),
    }
    match Ext::deserialize(d)? {
        Ext::Num(x) => Ok(x),
        Ext::Text(s) if s == "-inf" => Ok(f64::NEG_INFINITY),
        Ext::Text(s) if s == "inf" => Ok(f64::INFINITY),
        Ext::Text(s) => Err(serde::de::Error::custom(format!("expected a number or \"-inf\", got {s:?}"))),
    }
}

impl KernelSpec {
    fn build(self) -> Result<Kernel> {
        Ok(match self {
            KernelSpec::LogSine {} => log_sine(),
            KernelSpec::Zero {} => zero_kernel(),
            KernelSpec::Smoothed { base, eta, mode } => {
                let base = match base {
                    BaseKernel::LogSine => log_sine(),
                    BaseKernel::Zero => zero_kernel(),
                };
                smooth(&base, eta, mode)?.into()
            }
        })
    }
}

impl FieldSpec {
    fn build(self) -> Result<PiecewiseField> {
        match self {
            FieldSpec::Example71 {} => Ok(example71_field()),
            FieldSpec::Zero {} => Ok(zero_field()),
            FieldSpec::Tilde { alpha } => tilde_field(alpha),
            FieldSpec::Harmonic { lmax } => harmonic_step_field(lmax),
            FieldSpec::Piecewise { pieces, overrides } => {
                let pieces = pieces
                    .into_iter()
                    .map(|p| match p {
                        PieceSpec::Constant { start, end, value } => {
                            Piece::new(start, end, PieceForm::Constant(value))
                        }
                        PieceSpec::Linear {
                            start,
                            end,
                            slope,
                            value_at_start,
                        } => Piece::new(
                            start,
                            end,
                            PieceForm::Linear {
                                slope,
                                value_at_start,
                            },
                        ),
                        PieceSpec::MinusInfinity { start, end } => {
                            Piece::new(start, end, PieceForm::MinusInfinity)
                        }
                    })
                    .collect();
                let overrides = overrides
                    .into_iter()
                    .map(|o| Ok((TorusPoint::new(o.at)?, o.value)))
                    .collect::<Result<Vec<_>>>()?;
                PiecewiseField::new(pieces, overrides)
            }
        }
    }
}

/// Parses problem-file text into a validated problem and its solver configuration.
pub fn parse_problem_str(text: &str) -> Result<(Problem, SolveConfig)> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let spec: ProblemSpecFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::InvalidProblem(format!("at {path}: {}", e.into_inner()))
    })?;
    if spec.schema_version != SCHEMA_VERSION {
        return Err(Error::InvalidProblem(format!(
            "unsupported schema_version {} (expected {SCHEMA_VERSION})",
            spec.schema_version
        )));
    }
    if let Some(n) = spec.n {
        if n != spec.nu.len() {
            return Err(Error::InvalidProblem(format!(
                "n = {n} but nu has {} entries",
                spec.nu.len()
            )));
        }
    }
    let cfg = spec.solver.unwrap_or_default();
    cfg.validate()?;
    let problem = Problem::new(spec.kernel.build()?, spec.nu, spec.field.build()?)?;
    Ok((problem, cfg))
}

/// Reads and parses a problem file.
pub fn parse_problem(path: &Path) -> Result<(Problem, SolveConfig)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidProblem(format!("{}: {e}", path.display())))?;
    parse_problem_str(&text)
}
