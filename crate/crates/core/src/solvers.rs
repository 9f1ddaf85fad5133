//! Minimax, maximin and anchored equioscillation solvers, the anchor curve `μ(a)`,
//! the smoothing homotopy and a brute-force grid oracle.

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::{smooth, Kernel, SmoothingMode};
use crate::search::{bisect_increasing, golden_min, nelder_mead};
use crate::sumtrans::{arc_maxima, phi_from_maxima, ArcMaxima, MaxConfig, NodeSystem, Problem};
use crate::torus::TorusPoint;

/// Jacobian step of the anchored Newton iteration.
pub const FD_JACOBIAN_STEP: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolveConfig {
    pub multistart_count: usize,
    pub tol_value: f64,
    pub tol_node: f64,
    pub tol_residual: f64,
    pub max_iters: usize,
    /// Points per coordinate of the grid oracle.
    pub grid_resolution: usize,
    pub eta_schedule: Vec<f64>,
    pub seed: u64,
    /// Anchors of the `μ(a)` scan used by the extremal solvers on singular kernels.
    pub scan_anchors: usize,
    /// Largest `N^n` the grid oracle accepts.
    pub oracle_cap: u64,
    /// Golden-section width of the arc maximizer.
    pub tol_t: f64,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            multistart_count: 16,
            tol_value: 1e-8,
            tol_node: 1e-9,
            tol_residual: 1e-12,
            max_iters: 500,
            grid_resolution: 512,
            eta_schedule: vec![0.1, 0.03, 0.01, 0.003, 0.001],
            seed: 0,
            scan_anchors: 64,
            oracle_cap: 100_000_000,
            tol_t: 1e-12,
        }
    }
}

impl SolveConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidConfig(m.to_string()));
        let positive = [
            self.tol_value,
            self.tol_node,
            self.tol_residual,
            self.tol_t,
        ];
        if positive.iter().any(|&t| !(t > 0.0 && t.is_finite())) {
            return bad("tolerances must be positive");
        }
        if self.eta_schedule.iter().any(|&e| !(e > 0.0 && e.is_finite())) {
            return bad("eta_schedule entries must be positive");
        }
        if self.eta_schedule.windows(2).any(|w| !(w[0] > w[1])) {
            return bad("eta_schedule must be strictly decreasing");
        }
        if self.multistart_count == 0 || self.max_iters == 0 {
            return bad("multistart_count and max_iters must be at least 1");
        }
        if self.grid_resolution == 0 {
            return bad("grid_resolution must be at least 1");
        }
        Ok(())
    }

    pub fn max_config(&self) -> MaxConfig {
        MaxConfig { tol_t: self.tol_t }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Minimax,
    Maximin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Certificate {
    /// All arc maxima agree to `tol_value`.
    Equioscillating,
    GapReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveResult {
    pub nodes: NodeSystem,
    #[serde(serialize_with = "crate::ext_real::serialize")]
    pub value: f64,
    pub arc_maxima: ArcMaxima,
    #[serde(serialize_with = "crate::ext_real::serialize")]
    pub equioscillation_gap: f64,
    pub certificate: Certificate,
    pub iterations: usize,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl SolveResult {
    fn build(
        nodes: NodeSystem,
        value: f64,
        arc_maxima: ArcMaxima,
        iterations: usize,
        tol_value: f64,
        started: Instant,
    ) -> Self {
        let gap = arc_maxima.gap();
        SolveResult {
            nodes,
            value,
            equioscillation_gap: gap,
            certificate: if gap <= tol_value {
                Certificate::Equioscillating
            } else {
                Certificate::GapReport
            },
            arc_maxima,
            iterations,
            wall_time: started.elapsed(),
        }
    }
}

fn objective(target: Target, m: &ArcMaxima) -> f64 {
    match target {
        Target::Minimax => m.max(),
        Target::Maximin => -m.min(),
    }
}

fn reported(target: Target, m: &ArcMaxima) -> f64 {
    match target {
        Target::Minimax => m.max(),
        Target::Maximin => m.min(),
    }
}

/// Largest offset from the anchor; a full turn would land back on it.
const MAX_OFFSET: f64 = 1.0 - 1e-13;

/// Nodes `a, a + u_1, ..., a + u_{n-1}` with `0 <= u_1 <= ... <= u_{n-1} < 1`.
fn anchored_nodes(a: TorusPoint, u: &[f64]) -> NodeSystem {
    let mut nodes = Vec::with_capacity(u.len() + 1);
    nodes.push(a);
    nodes.extend(u.iter().map(|&x| a.shifted(x.clamp(0.0, MAX_OFFSET))));
    NodeSystem::new(nodes).expect("sorted offsets are cyclically ordered")
}

fn offsets_of(w: &NodeSystem) -> Vec<f64> {
    let a = w.nodes()[0];
    let mut u: Vec<f64> = w.nodes()[1..].iter().map(|&y| a.offset_to(y)).collect();
    // a node coinciding with the anchor but listed after others sits at offset 1
    for k in 0..u.len() {
        let prev = if k == 0 { 0.0 } else { u[k - 1] };
        if u[k] < prev {
            u[k] = 1.0;
        }
    }
    u
}

fn evaluate(p: &Problem, y: &NodeSystem, cfg: &MaxConfig) -> ArcMaxima {
    arc_maxima(p, y, cfg).expect("node count checked by the caller")
}

fn check_problem_nodes(p: &Problem, w: &NodeSystem) -> Result<()> {
    if w.len() != p.n() {
        return Err(Error::InvalidProblem(format!(
            "expected {} nodes, got {}",
            p.n(),
            w.len()
        )));
    }
    Ok(())
}

/// State of an anchored solve in offset coordinates.
struct Anchored<'a> {
    p: &'a Problem,
    a: TorusPoint,
    mcfg: MaxConfig,
    evals: usize,
}

impl Anchored<'_> {
    fn maxima(&mut self, u: &[f64]) -> ArcMaxima {
        self.evals += 1;
        evaluate(self.p, &anchored_nodes(self.a, u), &self.mcfg)
    }

    /// One Gauss-Seidel sweep: node `k` balances arcs `k-1` and `k`.
    fn sweep(&mut self, u: &mut [f64], width: f64) {
        let m = u.len();
        for k in 0..m {
            let lo = if k == 0 { 0.0 } else { u[k - 1] };
            let hi = if k + 1 == m { MAX_OFFSET } else { u[k + 1] };
            if hi <= lo {
                continue;
            }
            let mut trial = u.to_vec();
            let x = bisect_increasing(
                |x| {
                    trial[k] = x;
                    let mx = self.maxima(&trial);
                    let d = mx.values[k] - mx.values[k + 1];
                    // both arcs singular: no information, keep searching upward
                    if d.is_nan() {
                        -1.0
                    } else {
                        d
                    }
                },
                lo,
                hi,
                width,
            );
            u[k] = x;
        }
    }

    fn residual(&mut self, u: &[f64]) -> (f64, Option<Vec<f64>>) {
        let mx = self.maxima(u);
        match phi_from_maxima(&mx) {
            Ok(phi) => (phi.iter().fold(0.0, |acc: f64, v| acc.max(v.abs())), Some(phi)),
            Err(_) => (f64::INFINITY, None),
        }
    }

    fn project(u: &mut [f64], margin: f64) {
        let m = u.len();
        for k in 0..m {
            let lo = if k == 0 { 0.0 } else { u[k - 1] } + margin;
            let hi = MAX_OFFSET - margin * (m - k) as f64;
            u[k] = u[k].clamp(lo.min(hi), hi.max(lo));
        }
    }

    /// Damped Newton step with forward-difference Jacobian; `false` when it cannot improve.
    fn newton_step(&mut self, u: &mut Vec<f64>, margin: f64) -> bool {
        let m = u.len();
        let (r0, phi0) = self.residual(u);
        let Some(phi0) = phi0 else { return false };
        let mut jac = DMatrix::<f64>::zeros(m, m);
        for k in 0..m {
            let mut up = u.clone();
            let hi = if k + 1 == m { MAX_OFFSET } else { u[k + 1] };
            let step = if u[k] + FD_JACOBIAN_STEP < hi {
                FD_JACOBIAN_STEP
            } else {
                -FD_JACOBIAN_STEP
            };
            up[k] += step;
            let (_, phi) = self.residual(&up);
            let Some(phi) = phi else { return false };
            for i in 0..m {
                jac[(i, k)] = (phi[i] - phi0[i]) / step;
            }
        }
        let Some(delta) = jac.lu().solve(&-DVector::from_vec(phi0)) else {
            return false;
        };
        let mut lambda = 1.0;
        for _ in 0..40 {
            let mut trial: Vec<f64> = u.iter().zip(delta.iter()).map(|(x, d)| x + lambda * d).collect();
            Self::project(&mut trial, margin);
            let (r, _) = self.residual(&trial);
            if r < r0 {
                *u = trial;
                return true;
            }
            lambda *= 0.5;
        }
        false
    }
}

/// Equioscillating node system with node 1 pinned at `anchor`.
///
/// Coordinate bisection sweeps bring the differences of neighboring arc maxima close to
/// zero; a damped Newton iteration on the difference map finishes the solve.
pub fn solve_equioscillation(
    p: &Problem,
    anchor: TorusPoint,
    cfg: &SolveConfig,
    warm_start: Option<&NodeSystem>,
) -> Result<SolveResult> {
    cfg.validate()?;
    let started = Instant::now();
    let n = p.n();
    let mut u: Vec<f64> = match warm_start {
        Some(w) => {
            check_problem_nodes(p, w)?;
            offsets_of(w)
        }
        None => (1..n).map(|k| k as f64 / n as f64).collect(),
    };
    let mut st = Anchored {
        p,
        a: anchor,
        mcfg: cfg.max_config(),
        evals: 0,
    };
    let mut iterations = 0;
    let mut residual = st.residual(&u).0;
    // sweeps alone are exact for two nodes; for more, they only need to get close
    let coarse = if n <= 2 { cfg.tol_residual } else { 1e-6 };
    while residual > coarse && iterations < cfg.max_iters {
        st.sweep(&mut u, 1e-16);
        iterations += 1;
        let r = st.residual(&u).0;
        let stalled = r >= residual && r.is_finite();
        residual = r;
        if stalled {
            break;
        }
    }
    while residual > cfg.tol_residual && iterations < cfg.max_iters {
        iterations += 1;
        if !st.newton_step(&mut u, cfg.tol_node) {
            st.sweep(&mut u, 1e-16);
        }
        let r = st.residual(&u).0;
        if r >= residual && n <= 2 {
            break;
        }
        residual = r;
    }
    let nodes = anchored_nodes(anchor, &u);
    let m = evaluate(p, &nodes, &cfg.max_config());
    if let Some(j) = m.values.iter().position(|v| *v == f64::NEG_INFINITY) {
        return Err(Error::InfiniteArcMaximum(j));
    }
    if !(m.gap() <= cfg.tol_value) {
        return Err(Error::Divergence {
            iterations,
            residual: m.gap(),
        });
    }
    let value = m.max();
    Ok(SolveResult::build(
        nodes,
        value,
        m,
        iterations,
        cfg.tol_value,
        started,
    ))
}

/// One point of an anchor sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TracePoint {
    pub anchor: TorusPoint,
    /// Equioscillation value `λ(a)`, absent when the solve failed.
    pub mu: Option<f64>,
    pub nodes: Option<NodeSystem>,
    pub error: Option<String>,
}

/// Equioscillation value along `grid`, each solve warm-started from the previous success.
pub fn trace_mu(p: &Problem, grid: &[TorusPoint], cfg: &SolveConfig) -> Result<Vec<TracePoint>> {
    cfg.validate()?;
    let mut warm: Option<NodeSystem> = None;
    let mut out = Vec::with_capacity(grid.len());
    for &a in grid {
        match solve_equioscillation(p, a, cfg, warm.as_ref()) {
            Ok(r) => {
                out.push(TracePoint {
                    anchor: a,
                    mu: Some(r.value),
                    nodes: Some(r.nodes.clone()),
                    error: None,
                });
                warm = Some(r.nodes);
            }
            Err(e) => out.push(TracePoint {
                anchor: a,
                mu: None,
                nodes: None,
                error: Some(e.to_string()),
            }),
        }
    }
    Ok(out)
}

/// `k / count` for `k = 0..count`.
pub fn uniform_anchors(count: usize) -> Vec<TorusPoint> {
    (0..count)
        .map(|k| TorusPoint::new(k as f64 / count as f64).expect("finite"))
        .collect()
}

/// CSV with columns `a,mu,y_1..y_n`; failed points leave `mu` and the nodes empty.
pub fn trace_to_csv(points: &[TracePoint], n: usize) -> String {
    let mut out = String::from("a,mu");
    for j in 1..=n {
        out.push_str(&format!(",y_{j}"));
    }
    out.push('\n');
    for pt in points {
        out.push_str(&format!("{}", pt.anchor.value()));
        match (&pt.mu, &pt.nodes) {
            (Some(mu), Some(y)) => {
                out.push_str(&format!(",{mu}"));
                for v in y.values() {
                    out.push_str(&format!(",{v}"));
                }
            }
            _ => out.push_str(&",".repeat(n + 1)),
        }
        out.push('\n');
    }
    out
}

/// Maps simplex coordinates `(a, u_1, .., u_{n-1})` to a node system, clamping and sorting
/// the offsets so the cyclic order is kept.
fn simplex_nodes(v: &[f64]) -> NodeSystem {
    let a = TorusPoint::new(v[0].rem_euclid(1.0)).expect("finite").shifted(0.0);
    let mut u: Vec<f64> = v[1..].iter().map(|x| x.clamp(0.0, 1.0)).collect();
    u.sort_by(|x, y| x.partial_cmp(y).unwrap_or(Ordering::Equal));
    anchored_nodes(a, &u)
}

fn to_simplex(w: &NodeSystem) -> Vec<f64> {
    let mut v = vec![w.nodes()[0].value()];
    v.extend(offsets_of(w));
    v
}

struct Candidate {
    nodes: NodeSystem,
    maxima: ArcMaxima,
    objective: f64,
    iterations: usize,
}

/// Smaller objective first, then lexicographically smaller nodes.
fn better(a: &Candidate, b: &Candidate) -> bool {
    match a.objective.partial_cmp(&b.objective) {
        Some(Ordering::Less) => true,
        Some(Ordering::Greater) => false,
        _ => {
            let (x, y) = (a.nodes.values(), b.nodes.values());
            x.partial_cmp(&y) == Some(Ordering::Less)
        }
    }
}

fn multistart(
    p: &Problem,
    target: Target,
    cfg: &SolveConfig,
    warm: Option<&NodeSystem>,
) -> Candidate {
    let n = p.n();
    let mcfg = cfg.max_config();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut starts: Vec<Vec<f64>> = (0..cfg.multistart_count)
        .map(|_| {
            let mut ys: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
            ys.sort_by(|x, y| x.partial_cmp(y).unwrap());
            to_simplex(&NodeSystem::from_reals(&ys).expect("sorted values are ordered"))
        })
        .collect();
    if let Some(w) = warm {
        starts.push(to_simplex(w));
    }
    let runs: Vec<Candidate> = starts
        .par_iter()
        .map(|x0| {
            let f = |v: &[f64]| objective(target, &evaluate(p, &simplex_nodes(v), &mcfg));
            let first = nelder_mead(f, x0, 0.05, cfg.max_iters, 1e-14);
            let second = nelder_mead(f, &first.x, 0.005, cfg.max_iters, 1e-15);
            let nodes = simplex_nodes(&second.x);
            let maxima = evaluate(p, &nodes, &mcfg);
            Candidate {
                objective: objective(target, &maxima),
                nodes,
                maxima,
                iterations: first.iterations + second.iterations,
            }
        })
        .collect();
    let iterations = runs.iter().map(|c| c.iterations).sum();
    let mut best = runs
        .into_iter()
        .reduce(|a, b| if better(&b, &a) { b } else { a })
        .expect("at least one start");
    best.iterations = iterations;
    best
}

fn equi_candidate(
    p: &Problem,
    target: Target,
    a: f64,
    cfg: &SolveConfig,
    warm: Option<&NodeSystem>,
) -> Option<Candidate> {
    let anchor = TorusPoint::new(a.rem_euclid(1.0)).ok()?.shifted(0.0);
    let r = solve_equioscillation(p, anchor, cfg, warm).ok()?;
    Some(Candidate {
        objective: objective(target, &r.arc_maxima),
        nodes: r.nodes,
        maxima: r.arc_maxima,
        iterations: r.iterations,
    })
}

/// Scans the anchor curve and refines its extremum by golden-section search.
fn anchor_scan(p: &Problem, target: Target, cfg: &SolveConfig) -> Option<Candidate> {
    let count = cfg.scan_anchors.max(3);
    let grid = uniform_anchors(count);
    let trace = trace_mu(p, &grid, cfg).ok()?;
    let score = |mu: f64| match target {
        Target::Minimax => mu,
        Target::Maximin => -mu,
    };
    let (k, best_pt) = trace
        .iter()
        .enumerate()
        .filter(|(_, t)| t.mu.is_some())
        .min_by(|(_, x), (_, y)| score(x.mu.unwrap()).total_cmp(&score(y.mu.unwrap())))?;
    let h = 1.0 / count as f64;
    let center = k as f64 * h;
    let mut warm = best_pt.nodes.clone();
    let mut iterations = 0;
    let (a_star, _) = golden_min(
        |a| match equi_candidate(p, target, a, cfg, warm.as_ref()) {
            Some(c) => {
                iterations += c.iterations;
                warm = Some(c.nodes);
                c.objective
            }
            None => f64::INFINITY,
        },
        center - h,
        center + h,
        1e-10,
    );
    let mut refined = equi_candidate(p, target, a_star, cfg, warm.as_ref())?;
    refined.iterations += iterations;
    let scanned = equi_candidate(p, target, center, cfg, best_pt.nodes.as_ref())?;
    Some(if better(&scanned, &refined) {
        scanned
    } else {
        refined
    })
}

fn solve_extremal(
    p: &Problem,
    target: Target,
    cfg: &SolveConfig,
    warm: Option<&NodeSystem>,
) -> Result<SolveResult> {
    cfg.validate()?;
    if let Some(w) = warm {
        check_problem_nodes(p, w)?;
    }
    let started = Instant::now();
    let mut best = multistart(p, target, cfg, warm);
    let mut iterations = best.iterations;
    if p.kernel().is_singular() {
        // an equioscillating system within tol_value of the descent result is preferred
        let anchored = equi_candidate(p, target, best.nodes.nodes()[0].value(), cfg, Some(&best.nodes));
        for cand in anchored.into_iter().chain(anchor_scan(p, target, cfg)) {
            iterations += cand.iterations;
            if cand.objective <= best.objective + cfg.tol_value
                && (cand.maxima.gap() < best.maxima.gap() || better(&cand, &best))
            {
                best = cand;
            }
        }
    }
    let value = reported(target, &best.maxima);
    Ok(SolveResult::build(
        best.nodes,
        value,
        best.maxima,
        iterations,
        cfg.tol_value,
        started,
    ))
}

/// Node system minimizing the largest arc maximum.
pub fn solve_minimax(p: &Problem, cfg: &SolveConfig) -> Result<SolveResult> {
    solve_extremal(p, Target::Minimax, cfg, None)
}

/// Node system maximizing the smallest arc maximum.
pub fn solve_maximin(p: &Problem, cfg: &SolveConfig) -> Result<SolveResult> {
    solve_extremal(p, Target::Maximin, cfg, None)
}

/// [`solve_minimax`] or [`solve_maximin`] with an extra start at `warm`.
pub fn solve_target(
    p: &Problem,
    target: Target,
    cfg: &SolveConfig,
    warm: Option<&NodeSystem>,
) -> Result<SolveResult> {
    solve_extremal(p, target, cfg, warm)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HomotopyStep {
    pub eta: f64,
    pub value: f64,
    pub nodes: NodeSystem,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HomotopyResult {
    /// Solution at the last `η` of the schedule.
    pub result: SolveResult,
    pub steps: Vec<HomotopyStep>,
    /// Minimax values nonincreasing (maximin nondecreasing) as `η` decreases, to `1e-9`.
    pub monotone: bool,
}

/// Slack of the homotopy monotonicity record.
pub const HOMOTOPY_SLACK: f64 = 1e-9;

/// Solves the smoothed problems down `cfg.eta_schedule`, warm-starting each from the last.
///
/// Minimax uses upper smoothing `K + η|sin πt|`, maximin lower smoothing
/// `K + η(|sin πt| - 1)`, so the values approach the unsmoothed extremum monotonically.
pub fn smoothing_homotopy(p: &Problem, cfg: &SolveConfig, target: Target) -> Result<HomotopyResult> {
    cfg.validate()?;
    if !p.kernel().is_singular() {
        return Err(Error::InvalidProblem(format!(
            "smoothing homotopy needs a singular kernel, got {}",
            p.kernel().name()
        )));
    }
    if cfg.eta_schedule.is_empty() {
        return Err(Error::InvalidConfig("eta_schedule is empty".into()));
    }
    let mode = match target {
        Target::Minimax => SmoothingMode::Upper,
        Target::Maximin => SmoothingMode::Lower,
    };
    let mut steps: Vec<HomotopyStep> = Vec::new();
    let mut last: Option<SolveResult> = None;
    for &eta in &cfg.eta_schedule {
        let k: Kernel = smooth(p.kernel(), eta, mode)?.into();
        let q = p.with_kernel(k)?;
        let r = solve_target(&q, target, cfg, last.as_ref().map(|r| &r.nodes))?;
        steps.push(HomotopyStep {
            eta,
            value: r.value,
            nodes: r.nodes.clone(),
        });
        last = Some(r);
    }
    let monotone = steps.windows(2).all(|w| match target {
        Target::Minimax => w[1].value <= w[0].value + HOMOTOPY_SLACK,
        Target::Maximin => w[1].value >= w[0].value - HOMOTOPY_SLACK,
    });
    Ok(HomotopyResult {
        result: last.expect("nonempty schedule"),
        steps,
        monotone,
    })
}

/// Grid extrema of `m̄*` and `m̲*`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult {
    pub grid: usize,
    /// Ordered grid systems evaluated.
    pub cells: u64,
    /// Smallest `m̄*` on the grid.
    #[serde(serialize_with = "crate::ext_real::serialize")]
    pub minimax_estimate: f64,
    /// Largest `m̲*` on the grid.
    #[serde(serialize_with = "crate::ext_real::serialize")]
    pub maximin_estimate: f64,
    pub argmin: NodeSystem,
    pub argmax: NodeSystem,
}

/// Grid width of the oracle's arc maximizer.
pub const ORACLE_TOL_T: f64 = 1e-9;

#[derive(Clone)]
struct GridBest {
    min_val: f64,
    min_at: Vec<usize>,
    max_val: f64,
    max_at: Vec<usize>,
    cells: u64,
}

impl GridBest {
    fn empty() -> Self {
        GridBest {
            min_val: f64::INFINITY,
            min_at: Vec::new(),
            max_val: f64::NEG_INFINITY,
            max_at: Vec::new(),
            cells: 0,
        }
    }

    fn offer(&mut self, idx: &[usize], hi: f64, lo: f64) {
        self.cells += 1;
        let first_min = self.min_at.is_empty();
        if first_min || hi < self.min_val || (hi == self.min_val && idx < self.min_at.as_slice()) {
            self.min_val = hi;
            self.min_at = idx.to_vec();
        }
        let first_max = self.max_at.is_empty();
        if first_max || lo > self.max_val || (lo == self.max_val && idx < self.max_at.as_slice()) {
            self.max_val = lo;
            self.max_at = idx.to_vec();
        }
    }

    fn merge(mut self, other: GridBest) -> GridBest {
        let cells = self.cells + other.cells;
        if !other.min_at.is_empty() {
            self.offer(&other.min_at, other.min_val, f64::NEG_INFINITY);
        }
        if !other.max_at.is_empty() {
            self.offer(&other.max_at, f64::INFINITY, other.max_val);
        }
        self.cells = cells;
        self
    }
}

/// Exhaustive evaluation over node systems with coordinates on the grid `k / N`.
///
/// The first node runs over the grid; the others follow it at nondecreasing grid offsets
/// below one full turn, which covers every cyclically ordered grid system. Cells are
/// evaluated in parallel and merged deterministically.
pub fn brute_force(p: &Problem, cfg: &SolveConfig) -> Result<OracleResult> {
    cfg.validate()?;
    let n = p.n();
    let big_n = cfg.grid_resolution;
    let cells = (big_n as u128).saturating_pow(n as u32);
    if cells > cfg.oracle_cap as u128 {
        return Err(Error::ResourceGuard {
            cells,
            cap: cfg.oracle_cap as u128,
        });
    }
    let mcfg = MaxConfig {
        tol_t: cfg.tol_t.max(ORACLE_TOL_T),
    };
    let best = (0..big_n)
        .into_par_iter()
        .map(|i0| {
            let mut best = GridBest::empty();
            let mut offs = vec![0usize; n - 1];
            loop {
                let mut idx = Vec::with_capacity(n);
                idx.push(i0);
                idx.extend(offs.iter().map(|d| (i0 + d) % big_n));
                let y = grid_system(&idx, big_n);
                let m = evaluate(p, &y, &mcfg);
                best.offer(&idx, m.max(), m.min());
                if !next_nondecreasing(&mut offs, big_n) {
                    break;
                }
            }
            best
        })
        .reduce(GridBest::empty, GridBest::merge);
    Ok(OracleResult {
        grid: big_n,
        cells: best.cells,
        minimax_estimate: best.min_val,
        maximin_estimate: best.max_val,
        argmin: grid_system(&best.min_at, big_n),
        argmax: grid_system(&best.max_at, big_n),
    })
}

fn grid_system(idx: &[usize], big_n: usize) -> NodeSystem {
    let vals: Vec<f64> = idx.iter().map(|&i| i as f64 / big_n as f64).collect();
    NodeSystem::from_reals(&vals).expect("grid systems are ordered")
}

/// Advances a nondecreasing tuple with entries below `limit`; `false` after the last one.
fn next_nondecreasing(offs: &mut [usize], limit: usize) -> bool {
    let m = offs.len();
    for k in (0..m).rev() {
        if offs[k] + 1 < limit {
            offs[k] += 1;
            let v = offs[k];
            for later in offs.iter_mut().skip(k + 1) {
                *later = v;
            }
            return true;
        }
    }
    false
}
