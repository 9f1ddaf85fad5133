//! Concave kernels on `[-1, 1]` and their smoothed variants.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::torus::TorusPoint;

/// Step of the central differences used by [`check_pm`].
pub const FD_STEP: f64 = 1e-6;
/// Tolerance of the sampled derivative checks.
pub const FD_TOL: f64 = 1e-4;

type Evaluator = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
enum KernelKind {
    LogSine,
    Zero,
    Smoothed(Box<SmoothedKernel>),
    Custom(Evaluator),
}

/// A concave kernel with its structural flags.
#[derive(Clone)]
pub struct Kernel {
    kind: KernelKind,
    name: String,
    singular: bool,
    strictly_concave: bool,
    periodic: bool,
}

impl fmt::Debug for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Kernel")
            .field("name", &self.name)
            .field("singular", &self.singular)
            .field("strictly_concave", &self.strictly_concave)
            .field("periodic", &self.periodic)
            .finish()
    }
}

/// Which side of the base kernel the smoothing term lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SmoothingMode {
    /// `K(t) + eta |sin(pi t)|`, an upper bound of `K`.
    Upper,
    /// `K(t) + eta (|sin(pi t)| - 1)`, a lower bound of `K`.
    Lower,
}

/// A kernel perturbed by a multiple of `|sin(pi t)|`, which makes it strictly concave.
#[derive(Debug, Clone)]
pub struct SmoothedKernel {
    pub base: Kernel,
    pub eta: f64,
    pub mode: SmoothingMode,
}

impl SmoothedKernel {
    pub fn eval(&self, t: f64) -> f64 {
        let s = abs_sin_pi(t);
        let bump = match self.mode {
            SmoothingMode::Upper => self.eta * s,
            SmoothingMode::Lower => self.eta * (s - 1.0),
        };
        self.base.eval(t) + bump
    }
}

impl From<SmoothedKernel> for Kernel {
    fn from(s: SmoothedKernel) -> Kernel {
        let mode = match s.mode {
            SmoothingMode::Upper => "upper",
            SmoothingMode::Lower => "lower",
        };
        Kernel {
            name: format!("smoothed({}, eta={}, {mode})", s.base.name, s.eta),
            singular: s.base.singular,
            strictly_concave: true,
            periodic: s.base.periodic,
            kind: KernelKind::Smoothed(Box::new(s)),
        }
    }
}

/// Distance-to-nearest-integer representative, exact for `|t| <= 1`.
fn reduce(t: f64) -> f64 {
    t - t.round()
}

fn abs_sin_pi(t: f64) -> f64 {
    (PI * reduce(t)).sin().abs()
}

impl Kernel {
    /// A user supplied kernel. The flags are trusted; only sampled checks back them.
    pub fn custom<F>(name: &str, f: F, singular: bool, strictly_concave: bool, periodic: bool) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Kernel {
            kind: KernelKind::Custom(Arc::new(f)),
            name: name.to_string(),
            singular,
            strictly_concave,
            periodic,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_singular(&self) -> bool {
        self.singular
    }

    pub fn is_strictly_concave(&self) -> bool {
        self.strictly_concave
    }

    pub fn is_periodic(&self) -> bool {
        self.periodic
    }

    /// Value at `t` in `[-1, 1]`; `-inf` at singular points.
    pub fn eval(&self, t: f64) -> f64 {
        match &self.kind {
            KernelKind::LogSine => abs_sin_pi(t).ln(),
            KernelKind::Zero => 0.0,
            KernelKind::Smoothed(s) => s.eval(t),
            KernelKind::Custom(f) => f(t),
        }
    }

    /// Value at a signed torus difference in `[-1/2, 1/2)`.
    pub(crate) fn eval_diff(&self, d: f64) -> f64 {
        self.eval(d)
    }
}

/// `K(t) = log|sin(pi t)|`: periodic, singular and strictly concave.
pub fn log_sine() -> Kernel {
    Kernel {
        kind: KernelKind::LogSine,
        name: "log_sine".into(),
        singular: true,
        strictly_concave: true,
        periodic: true,
    }
}

/// The constant zero kernel.
pub fn zero_kernel() -> Kernel {
    Kernel {
        kind: KernelKind::Zero,
        name: "zero".into(),
        singular: false,
        strictly_concave: false,
        periodic: true,
    }
}

/// Single translate `K(t - node)` on the torus.
pub fn eval_translate(k: &Kernel, t: TorusPoint, node: TorusPoint) -> Result<f64> {
    if !k.periodic {
        return Err(Error::NonPeriodicKernel(k.name.clone()));
    }
    Ok(k.eval_diff(t.signed_diff(node)))
}

pub fn smooth(k: &Kernel, eta: f64, mode: SmoothingMode) -> Result<SmoothedKernel> {
    if !(eta > 0.0 && eta.is_finite()) {
        return Err(Error::InvalidEta(eta));
    }
    if !k.periodic {
        return Err(Error::NonPeriodicKernel(k.name.clone()));
    }
    Ok(SmoothedKernel {
        base: k.clone(),
        eta,
        mode,
    })
}

/// Sampled check of `K'(t) - K'(t-1) >= c` on a grid of `resolution` points in `(0, 1)`.
pub fn check_pm(k: &Kernel, c: f64, resolution: usize) -> bool {
    let h = FD_STEP;
    let deriv = |t: f64| (k.eval(t + h) - k.eval(t - h)) / (2.0 * h);
    (1..resolution)
        .map(|i| i as f64 / resolution as f64)
        .filter(|&t| t > 10.0 * h && t < 1.0 - 10.0 * h)
        .all(|t| {
            let diff = deriv(t) - deriv(t - 1.0);
            !diff.is_finite() || diff >= c - FD_TOL
        })
}
