//! Solver behavior on the bundled problems beyond the acceptance gate.

use std::f64::consts::LN_2;

use equiosc::counterexamples::{example54_problem, example71_problem};
use equiosc::fields::zero_field;
use equiosc::kernels::log_sine;
use equiosc::solvers::{
    brute_force, smoothing_homotopy, solve_maximin, solve_minimax, trace_mu, uniform_anchors,
    Certificate, SolveConfig, Target,
};
use equiosc::Problem;

fn mus(p: &Problem, grid: usize) -> Vec<f64> {
    trace_mu(p, &uniform_anchors(grid), &SolveConfig::default())
        .unwrap()
        .iter()
        .map(|t| t.mu.expect("every anchor admits an equioscillating system"))
        .collect()
}

#[test]
fn anchor_curve_of_the_counterexample() {
    let p = example71_problem();
    let m = mus(&p, 64);
    let grid_lo = m.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = m.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    println!("grid min mu {grid_lo:.8} max mu {hi:.8}");
    // the maximizing anchor 1/4 is a grid point
    assert!((hi + LN_2).abs() <= 1e-3, "max mu {hi}");
    // mu has a corner at its minimum and the minimizing anchors 7/12, 11/12 are off the
    // grid, so the raw grid minimum lags by about slope * 1/192
    assert!(grid_lo >= -2.0 * LN_2 - 1e-9 && grid_lo <= -2.0 * LN_2 + 0.025, "grid min mu {grid_lo}");
    // golden refinement between neighboring anchors recovers the corner
    let lo = solve_minimax(&p, &SolveConfig::default()).unwrap().value;
    assert!((lo + 2.0 * LN_2).abs() <= 1e-3, "refined min mu {lo}");
    assert!(hi - lo >= 0.69);
}

#[test]
fn anchor_curve_without_field_is_constant() {
    let p = Problem::new(log_sine(), vec![1.0, 1.0], zero_field()).unwrap();
    let m = mus(&p, 16);
    assert!(m.iter().all(|v| (v + LN_2).abs() <= 1e-9), "{m:?}");
}

#[test]
fn smoothed_values_stay_in_the_band() {
    let p = example71_problem();
    let cfg = SolveConfig {
        eta_schedule: vec![0.1, 0.01, 0.001],
        ..Default::default()
    };
    let direct = solve_minimax(&p, &cfg).unwrap().value;
    let h = smoothing_homotopy(&p, &cfg, Target::Minimax).unwrap();
    assert!(h.monotone);
    let band = |eta: f64| 1.0 * 2.0 * eta;
    for s in &h.steps {
        assert!(s.value >= direct - 1e-9 && s.value <= direct + band(s.eta) + 1e-9, "{s:?}");
    }
    let direct = solve_maximin(&p, &cfg).unwrap().value;
    let h = smoothing_homotopy(&p, &cfg, Target::Maximin).unwrap();
    assert!(h.monotone);
    for s in &h.steps {
        assert!(s.value <= direct + 1e-9 && s.value >= direct - band(s.eta) - 1e-9, "{s:?}");
    }
}

#[test]
fn homotopy_rejects_nonsingular_kernels() {
    let p = example54_problem(100).unwrap();
    assert!(smoothing_homotopy(&p, &SolveConfig::default(), Target::Minimax).is_err());
}

#[test]
fn nonsingular_counterexample_has_no_certificate() {
    let p = example54_problem(100).unwrap();
    let cfg = SolveConfig::default();
    let lo = solve_minimax(&p, &cfg).unwrap();
    assert_eq!(lo.value, 0.99);
    assert_eq!(lo.certificate, Certificate::GapReport);
    // the supremum of the smallest arc maximum is only reached by a node exactly at 1/100
    let hi = solve_maximin(&p, &cfg).unwrap();
    assert!(hi.value <= 0.99);
    assert_eq!(hi.certificate, Certificate::GapReport);
}

#[test]
fn solvers_do_not_beat_the_oracle() {
    let p = Problem::new(log_sine(), vec![1.0, 2.0, 1.0], equiosc::fields::example71_field()).unwrap();
    let cfg = SolveConfig {
        grid_resolution: 48,
        ..Default::default()
    };
    let o = brute_force(&p, &cfg).unwrap();
    let lo = solve_minimax(&p, &cfg).unwrap();
    let hi = solve_maximin(&p, &cfg).unwrap();
    println!(
        "oracle {} / {}, solver {} / {}",
        o.minimax_estimate, o.maximin_estimate, lo.value, hi.value
    );
    assert!(lo.value <= o.minimax_estimate + 1e-12);
    assert!(hi.value >= o.maximin_estimate - 1e-12);
    // grid spacing 1/48 bounds how far the grid values can lag behind
    assert!(o.minimax_estimate - lo.value <= 0.2);
    assert!(hi.value - o.maximin_estimate <= 0.2);
    assert_eq!(lo.certificate, Certificate::Equioscillating);
    assert_eq!(hi.certificate, Certificate::Equioscillating);
}

#[test]
fn outputs_are_deterministic() {
    let p = example71_problem();
    let cfg = SolveConfig::default();
    let a = solve_minimax(&p, &cfg).unwrap();
    let b = solve_minimax(&p, &cfg).unwrap();
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
    let o1 = brute_force(&p, &SolveConfig { grid_resolution: 64, ..cfg.clone() }).unwrap();
    let o2 = brute_force(&p, &SolveConfig { grid_resolution: 64, ..cfg }).unwrap();
    assert_eq!(o1, o2);
}
