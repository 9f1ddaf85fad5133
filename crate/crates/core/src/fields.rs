//! External fields `J: T -> R ∪ {-inf}` given as piecewise forms on `[0, 1)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::torus::TorusPoint;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PieceForm {
    Constant(f64),
    /// `value_at_start + slope * (t - start)`.
    Linear { slope: f64, value_at_start: f64 },
    MinusInfinity,
}

/// The form on the half-open interval `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Piece {
    pub start: f64,
    pub end: f64,
    pub form: PieceForm,
}

impl Piece {
    pub fn new(start: f64, end: f64, form: PieceForm) -> Self {
        Piece { start, end, form }
    }

    /// The form's formula at `t`, also meaningful at the excluded right end.
    pub fn formula(&self, t: f64) -> f64 {
        match self.form {
            PieceForm::Constant(v) => v,
            PieceForm::Linear {
                slope,
                value_at_start,
            } => value_at_start + slope * (t - self.start),
            PieceForm::MinusInfinity => f64::NEG_INFINITY,
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self.form, PieceForm::MinusInfinity)
    }

    fn sup(&self) -> f64 {
        self.formula(self.start).max(self.formula(self.end))
    }
}

/// A field made of pieces partitioning `[0, 1)`, with point overrides taking precedence.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PiecewiseField {
    pieces: Vec<Piece>,
    overrides: Vec<(TorusPoint, f64)>,
}

impl PiecewiseField {
    pub fn new(pieces: Vec<Piece>, overrides: Vec<(TorusPoint, f64)>) -> Result<Self> {
        let partition_err = || Error::InvalidField("pieces must partition [0,1)".into());
        let first = pieces.first().ok_or_else(partition_err)?;
        let last = pieces.last().ok_or_else(partition_err)?;
        if first.start != 0.0 || last.end != 1.0 {
            return Err(partition_err());
        }
        if pieces.iter().any(|p| !(p.start < p.end)) {
            return Err(partition_err());
        }
        if pieces.windows(2).any(|w| w[0].end != w[1].start) {
            return Err(partition_err());
        }
        for p in &pieces {
            let ok = match p.form {
                PieceForm::Constant(v) => v.is_finite(),
                PieceForm::Linear {
                    slope,
                    value_at_start,
                } => slope.is_finite() && value_at_start.is_finite(),
                PieceForm::MinusInfinity => true,
            };
            if !ok {
                return Err(Error::InvalidField(format!(
                    "piece [{}, {}) has a non-finite parameter",
                    p.start, p.end
                )));
            }
        }
        if let Some((t, v)) = overrides
            .iter()
            .find(|(_, v)| v.is_nan() || *v == f64::INFINITY)
        {
            return Err(Error::InvalidField(format!(
                "override at {} has value {v}",
                t.value()
            )));
        }
        Ok(PiecewiseField { pieces, overrides })
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn overrides(&self) -> &[(TorusPoint, f64)] {
        &self.overrides
    }

    pub fn override_at(&self, t: TorusPoint) -> Option<f64> {
        self.overrides
            .iter()
            .find(|(p, _)| *p == t)
            .map(|&(_, v)| v)
    }

    pub fn piece_at(&self, t: TorusPoint) -> &Piece {
        let x = t.value();
        let idx = self.pieces.partition_point(|p| p.start <= x);
        &self.pieces[idx.saturating_sub(1)]
    }

    pub fn eval(&self, t: TorusPoint) -> f64 {
        self.override_at(t)
            .unwrap_or_else(|| self.piece_at(t).formula(t.value()))
    }

    /// `sup J`, including limits at excluded piece ends.
    pub fn sup(&self) -> f64 {
        self.pieces
            .iter()
            .map(Piece::sup)
            .chain(self.overrides.iter().map(|&(_, v)| v))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Whether `J > -inf` on more than `n` points.
    pub fn validate_n_field(&self, n: usize) -> bool {
        if self.pieces.iter().any(Piece::is_finite) {
            return true;
        }
        let finite = self
            .overrides
            .iter()
            .filter(|(_, v)| v.is_finite())
            .count();
        finite > n
    }

    /// Intervals where the pieces are `-inf` (overrides not subtracted).
    pub fn singularity_set(&self) -> Vec<(f64, f64)> {
        self.pieces
            .iter()
            .filter(|p| !p.is_finite())
            .map(|p| (p.start, p.end))
            .collect()
    }
}

pub fn constant_field(v: f64) -> PiecewiseField {
    PiecewiseField::new(vec![Piece::new(0.0, 1.0, PieceForm::Constant(v))], vec![])
        .expect("single piece partitions [0,1)")
}

pub fn zero_field() -> PiecewiseField {
    constant_field(0.0)
}

/// `J = 0` on `{0} ∪ [1/2, 1)` and `-inf` on `(0, 1/2)`.
pub fn example71_field() -> PiecewiseField {
    PiecewiseField::new(
        vec![
            Piece::new(0.0, 0.5, PieceForm::MinusInfinity),
            Piece::new(0.5, 1.0, PieceForm::Constant(0.0)),
        ],
        vec![(TorusPoint::ZERO, 0.0)],
    )
    .expect("valid partition")
}

/// The continuous tent-shaped field: `-alpha t` on `[0,1/4)`, `alpha (t - 1/2)` on `[1/4,1/2)`, `0` on `[1/2,1)`.
pub fn tilde_field(alpha: f64) -> Result<PiecewiseField> {
    if !(alpha > 4.0 * PI) || !alpha.is_finite() {
        return Err(Error::InvalidField(format!(
            "alpha must exceed 4*pi, got {alpha}"
        )));
    }
    PiecewiseField::new(
        vec![
            Piece::new(
                0.0,
                0.25,
                PieceForm::Linear {
                    slope: -alpha,
                    value_at_start: 0.0,
                },
            ),
            Piece::new(
                0.25,
                0.5,
                PieceForm::Linear {
                    slope: alpha,
                    value_at_start: -alpha / 4.0,
                },
            ),
            Piece::new(0.5, 1.0, PieceForm::Constant(0.0)),
        ],
        vec![],
    )
}

/// Zero field with `J(1/l) = 1 - 1/l` for `l = 2..=l_max`.
pub fn harmonic_step_field(l_max: usize) -> Result<PiecewiseField> {
    if l_max < 2 {
        return Err(Error::InvalidField(format!(
            "l_max must be at least 2, got {l_max}"
        )));
    }
    let overrides = (2..=l_max)
        .map(|l| {
            let l = l as f64;
            (TorusPoint::new(1.0 / l).expect("finite"), 1.0 - 1.0 / l)
        })
        .collect();
    PiecewiseField::new(vec![Piece::new(0.0, 1.0, PieceForm::Constant(0.0))], overrides)
}
