//! Sums of translates `f(y, t) = Σ ν_j K(t - y_j)`, `F = J + f`, and their arc maxima.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::PiecewiseField;
use crate::kernels::{log_sine, Kernel};
use crate::search::golden_max;
use crate::torus::{arcs_of, cut_lift, cyclic_order, frac, Arc, TorusPoint};

/// Configuration of the arc maximizer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MaxConfig {
    /// Golden-section bracket width in `t`.
    pub tol_t: f64,
}

impl Default for MaxConfig {
    fn default() -> Self {
        MaxConfig { tol_t: 1e-12 }
    }
}

/// Kernel, coefficients `ν` and field of a weighted node problem.
#[derive(Debug, Clone)]
pub struct Problem {
    kernel: Kernel,
    nu: Vec<f64>,
    field: PiecewiseField,
}

impl Problem {
    pub fn new(kernel: Kernel, nu: Vec<f64>, field: PiecewiseField) -> Result<Self> {
        if nu.is_empty() {
            return Err(Error::InvalidProblem("at least one node is required".into()));
        }
        if nu.iter().any(|&v| !(v > 0.0 && v.is_finite())) {
            return Err(Error::InvalidProblem("nu must be positive".into()));
        }
        if !kernel.is_periodic() {
            return Err(Error::NonPeriodicKernel(kernel.name().to_string()));
        }
        if !field.validate_n_field(nu.len()) {
            return Err(Error::InvalidProblem(format!(
                "field is not finite at more than {} points",
                nu.len()
            )));
        }
        Ok(Problem { kernel, nu, field })
    }

    pub fn n(&self) -> usize {
        self.nu.len()
    }

    pub fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    pub fn nu(&self) -> &[f64] {
        &self.nu
    }

    pub fn field(&self) -> &PiecewiseField {
        &self.field
    }

    /// Same coefficients and field with another kernel.
    pub fn with_kernel(&self, kernel: Kernel) -> Result<Self> {
        Problem::new(kernel, self.nu.clone(), self.field.clone())
    }

    /// Same kernel and field with other coefficients.
    pub fn with_nu(&self, nu: Vec<f64>) -> Result<Self> {
        Problem::new(self.kernel.clone(), nu, self.field.clone())
    }
}

/// Nodes in weak cyclic order.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct NodeSystem(Vec<TorusPoint>);

impl NodeSystem {
    pub fn new(nodes: Vec<TorusPoint>) -> Result<Self> {
        if nodes.is_empty() || !cyclic_order(&nodes).ordered {
            return Err(Error::Unordered);
        }
        Ok(NodeSystem(nodes))
    }

    pub fn from_reals(values: &[f64]) -> Result<Self> {
        let nodes = values
            .iter()
            .map(|&r| TorusPoint::new(r))
            .collect::<Result<Vec<_>>>()?;
        NodeSystem::new(nodes)
    }

    pub fn nodes(&self) -> &[TorusPoint] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> Vec<f64> {
        self.0.iter().map(|p| p.value()).collect()
    }

    pub fn is_strict(&self) -> bool {
        cyclic_order(&self.0).strict
    }

    pub fn arcs(&self) -> Vec<Arc> {
        arcs_of(&self.0).expect("node systems are ordered")
    }

    /// Every node moved by `delta`; arc labels are unchanged.
    pub fn rotated(&self, delta: f64) -> NodeSystem {
        NodeSystem(self.0.iter().map(|p| p.shifted(delta)).collect())
    }

    /// The same nodes listed from index `k` on.
    pub fn relabeled(&self, k: usize) -> NodeSystem {
        let n = self.0.len();
        NodeSystem((0..n).map(|j| self.0[(j + k) % n]).collect())
    }

    /// Largest torus distance between corresponding nodes.
    pub fn dist(&self, other: &NodeSystem) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.dist(*b))
            .fold(0.0, f64::max)
    }

    /// [`NodeSystem::dist`] minimized over cyclic relabelings of `other`.
    pub fn dist_up_to_relabeling(&self, other: &NodeSystem) -> f64 {
        if self.len() != other.len() {
            return f64::INFINITY;
        }
        (0..other.len())
            .map(|k| self.dist(&other.relabeled(k)))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Per-arc suprema of `F` with their locations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArcMaxima {
    #[serde(serialize_with = "crate::ext_real::vec::serialize")]
    pub values: Vec<f64>,
    pub maximizers: Vec<TorusPoint>,
    /// `false` when the supremum is only approached at the reported point.
    pub attained: Vec<bool>,
}

impl ArcMaxima {
    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// `max_j m_j - min_j m_j`; infinite when some arc is `-inf`.
    pub fn gap(&self) -> f64 {
        let (hi, lo) = (self.max(), self.min());
        if lo == f64::NEG_INFINITY {
            f64::INFINITY
        } else {
            hi - lo
        }
    }

    /// CSV rows `j,m_j,t_j,attained` with 1-based arc index.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("j,m_j,t_j,attained\n");
        for j in 0..self.values.len() {
            out.push_str(&format!(
                "{},{},{},{}\n",
                j + 1,
                crate::ext_real::format(self.values[j]),
                self.maximizers[j].value(),
                self.attained[j]
            ));
        }
        out
    }
}

/// Pure sum of translates.
pub fn f_eval(p: &Problem, y: &NodeSystem, t: TorusPoint) -> f64 {
    p.nu
        .iter()
        .zip(y.nodes())
        .map(|(&nu, &node)| nu * p.kernel.eval_diff(t.signed_diff(node)))
        .sum()
}

/// `J(t) + f(y, t)`.
#[allow(non_snake_case)]
pub fn F_eval(p: &Problem, y: &NodeSystem, t: TorusPoint) -> f64 {
    p.field.eval(t) + f_eval(p, y, t)
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    value: f64,
    at: TorusPoint,
    attained: bool,
}

impl Candidate {
    fn offer(best: &mut Option<Candidate>, c: Candidate) {
        match best {
            None => *best = Some(c),
            Some(b) => {
                let tie = 1e-15 * (1.0 + b.value.abs());
                let better = c.value > b.value + tie
                    || (c.value >= b.value - tie && c.attained && !b.attained)
                    || (!b.value.is_finite() && c.value > b.value);
                if better {
                    *best = Some(c);
                }
            }
        }
    }
}

/// Supremum of `F(y, ·)` over the closed arc `start .. start+len`, whose endpoint is `end`.
///
/// On each field piece `F` is concave plus linear, so a golden-section search per piece
/// plus the two piece ends gives the supremum. Open piece ends contribute their limit
/// with `attained = false`.
fn segment_sup(
    p: &Problem,
    y: &NodeSystem,
    start: TorusPoint,
    len: f64,
    end: TorusPoint,
    cfg: &MaxConfig,
) -> Candidate {
    let field = &p.field;
    if len <= 0.0 {
        return Candidate {
            value: F_eval(p, y, start),
            at: start,
            attained: true,
        };
    }
    let s0 = start.value();
    let s1 = s0 + len;
    let point = |u: f64| -> TorusPoint {
        if u == s0 {
            start
        } else if u == s1 {
            end
        } else {
            TorusPoint::new(frac(u)).expect("finite")
        }
    };
    let shadowed = |t: TorusPoint| field.override_at(t).is_some();
    let mut best: Option<Candidate> = None;

    for &(q, v) in field.overrides() {
        let d = start.offset_to(q);
        if len >= 1.0 || d <= len {
            Candidate::offer(
                &mut best,
                Candidate {
                    value: v + f_eval(p, y, q),
                    at: q,
                    attained: true,
                },
            );
        }
    }

    for shift in [0.0, 1.0] {
        for piece in field.pieces() {
            if !piece.is_finite() {
                continue;
            }
            let (a, b) = (piece.start + shift, piece.end + shift);
            let lo = s0.max(a);
            let hi = s1.min(b);
            if lo > hi || lo >= b {
                continue;
            }
            let g = |u: f64| piece.formula(u - shift) + f_eval(p, y, point(u));
            let mut offer = |u: f64, value: f64, closed: bool| {
                let at = point(u);
                Candidate::offer(
                    &mut best,
                    Candidate {
                        value,
                        at,
                        attained: closed && !shadowed(at),
                    },
                );
            };
            offer(lo, g(lo), true);
            if hi > lo {
                offer(hi, g(hi), hi < b);
                let (u, v) = golden_max(g, lo, hi, cfg.tol_t);
                offer(u, v, true);
            }
        }
    }

    best.unwrap_or(Candidate {
        value: f64::NEG_INFINITY,
        at: start,
        attained: true,
    })
}

/// Suprema of `F(y, ·)` over every arc `[y_j, y_{j+1}]`.
pub fn arc_maxima(p: &Problem, y: &NodeSystem, cfg: &MaxConfig) -> Result<ArcMaxima> {
    if y.len() != p.n() {
        return Err(Error::InvalidProblem(format!(
            "expected {} nodes, got {}",
            p.n(),
            y.len()
        )));
    }
    let n = y.len();
    let arcs = arcs_of(y.nodes())?;
    let mut out = ArcMaxima {
        values: Vec::with_capacity(n),
        maximizers: Vec::with_capacity(n),
        attained: Vec::with_capacity(n),
    };
    for (j, arc) in arcs.iter().enumerate() {
        let end = y.nodes()[(j + 1) % n];
        let c = segment_sup(p, y, arc.start, arc.len, end, cfg);
        out.values.push(c.value);
        out.maximizers.push(c.at);
        out.attained.push(c.attained);
    }
    Ok(out)
}

/// `max_j m_j* = sup_T F(y, ·)`.
pub fn m_bar_star(p: &Problem, y: &NodeSystem, cfg: &MaxConfig) -> Result<f64> {
    Ok(arc_maxima(p, y, cfg)?.max())
}

/// `min_j m_j*`.
pub fn m_under_star(p: &Problem, y: &NodeSystem, cfg: &MaxConfig) -> Result<f64> {
    Ok(arc_maxima(p, y, cfg)?.min())
}

/// Consecutive differences `m_{j+1}* - m_j*`, `j = 1..n-1`.
pub fn phi_star(p: &Problem, y: &NodeSystem, cfg: &MaxConfig) -> Result<Vec<f64>> {
    let m = arc_maxima(p, y, cfg)?;
    phi_from_maxima(&m)
}

pub(crate) fn phi_from_maxima(m: &ArcMaxima) -> Result<Vec<f64>> {
    if let Some(j) = m.values.iter().position(|v| !v.is_finite()) {
        return Err(Error::InfiniteArcMaximum(j));
    }
    Ok(m.values.windows(2).map(|w| w[1] - w[0]).collect())
}

/// Weighted sup norm of the monic product `Π |sin π(t - z_j)|^{ν_j}` with log-weight `log_weight`.
pub fn gtp_weighted_norm(
    log_weight: &PiecewiseField,
    nu: &[f64],
    z: &NodeSystem,
    cfg: &MaxConfig,
) -> Result<f64> {
    let p = Problem::new(log_sine(), nu.to_vec(), log_weight.clone())?;
    Ok(m_bar_star(&p, z, cfg)?.exp())
}

/// Maxima of the problem cut open at `c` into the interval `[0, 1]`.
#[doc(hidden)]
#[derive(Debug, Clone)]
pub struct IntervalMaxima {
    /// `m_0, ..., m_n` over `[0, x_1], [x_1, x_2], ..., [x_n, 1]`.
    pub values: Vec<f64>,
    /// Arc index of each interval; the first and last both map to the arc containing `c`.
    pub arc_of_interval: Vec<usize>,
}

#[doc(hidden)]
pub fn interval_maxima(
    p: &Problem,
    y: &NodeSystem,
    c: TorusPoint,
    cfg: &MaxConfig,
) -> Result<IntervalMaxima> {
    let n = y.len();
    let lifted: Vec<f64> = y.nodes().iter().map(|&node| cut_lift(c, node)).collect();
    // first node after the cut: the smallest lifted coordinate
    let first = (0..n)
        .min_by(|&a, &b| lifted[a].partial_cmp(&lifted[b]).unwrap())
        .unwrap();
    let order: Vec<usize> = (0..n).map(|k| (first + k) % n).collect();
    let mut bounds = vec![0.0];
    bounds.extend(order.iter().map(|&j| lifted[j]));
    bounds.push(1.0);
    let mut values = Vec::with_capacity(n + 1);
    let mut arc_of_interval = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let (lo, hi) = (bounds[k], bounds[k + 1]);
        let start = if k == 0 { c } else { y.nodes()[order[k - 1]] };
        let end = if k == n { c } else { y.nodes()[order[k]] };
        values.push(segment_sup(p, y, start, hi - lo, end, cfg).value);
        arc_of_interval.push(if k == 0 || k == n {
            order[n - 1]
        } else {
            order[k - 1]
        });
    }
    Ok(IntervalMaxima {
        values,
        arc_of_interval,
    })
}
