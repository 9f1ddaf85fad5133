//! Property tests for the geometric, analytic and solver invariants.

use std::f64::consts::PI;

use equiosc::counterexamples::{equi_value_of_x, identity23};
use equiosc::fields::{example71_field, tilde_field, zero_field};
use equiosc::kernels::{log_sine, smooth, SmoothingMode};
use equiosc::perturb::{default_step, perturb_general, verify_perturbation, Partition};
use equiosc::solvers::{solve_equioscillation, Certificate, SolveConfig};
use equiosc::sumtrans::{arc_maxima, f_eval, interval_maxima};
use equiosc::torus::{cut_lift, cut_project, cyclic_order};
use equiosc::{MaxConfig, NodeSystem, Problem, TorusPoint};
use proptest::prelude::*;

fn tp(x: f64) -> TorusPoint {
    TorusPoint::new(x).unwrap()
}

fn sorted_nodes(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0..1.0f64, n).prop_map(|mut v| {
        v.sort_by(f64::total_cmp);
        v
    })
}

fn weights(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.3..3.0f64, n)
}

fn separated(v: &[f64], min_sep: f64) -> bool {
    let n = v.len();
    (0..n).all(|i| tp(v[i]).dist(tp(v[(i + 1) % n])) >= min_sep)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn cut_round_trip(c in 0.0..1.0f64, y in 0.0..1.0f64) {
        let back = cut_project(tp(c), cut_lift(tp(c), tp(y)));
        prop_assert!(back.dist(tp(y)) <= 1e-15);
        let x = cut_lift(tp(c), tp(y));
        prop_assert!((0.0..1.0).contains(&x));
    }

    #[test]
    fn cut_preserves_cyclic_order(ys in sorted_nodes(5), c in 0.0..1.0f64) {
        let nodes: Vec<TorusPoint> = ys.iter().map(|&y| tp(y)).collect();
        prop_assert!(cyclic_order(&nodes).ordered);
        let k = nodes
            .iter()
            .enumerate()
            .min_by(|a, b| cut_lift(tp(c), *a.1).total_cmp(&cut_lift(tp(c), *b.1)))
            .unwrap()
            .0;
        let lifted: Vec<f64> = (0..5).map(|j| cut_lift(tp(c), nodes[(k + j) % 5])).collect();
        prop_assert!(lifted.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn arc_lengths_sum_to_one(ys in sorted_nodes(4)) {
        let y = NodeSystem::from_reals(&ys).unwrap();
        let total: f64 = y.arcs().iter().map(|a| a.len).sum();
        prop_assert!((total - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn log_sine_midpoint_concavity(a in 1e-3..0.999f64, b in 1e-3..0.999f64) {
        let k = log_sine();
        let mid = k.eval((a + b) / 2.0);
        prop_assert!(mid >= (k.eval(a) + k.eval(b)) / 2.0 - 1e-12);
    }

    #[test]
    fn smoothing_brackets_the_kernel(t in -1.0..1.0f64, eta in 1e-4..0.5f64) {
        let k = log_sine();
        let up = smooth(&k, eta, SmoothingMode::Upper).unwrap();
        let lo = smooth(&k, eta, SmoothingMode::Lower).unwrap();
        let v = k.eval(t);
        if v.is_finite() {
            prop_assert!(lo.eval(t) <= v && v <= up.eval(t));
            prop_assert!(up.eval(t) - v <= eta + 1e-15);
            prop_assert!(v - lo.eval(t) <= eta + 1e-15);
        }
    }

    #[test]
    fn identity_agrees_off_nodes(x in 0.0..2.0f64, z in 1e-3..0.999f64, t in 0.0..1.0f64) {
        let (y1, y2) = ((x - z) / 2.0, (x + z) / 2.0);
        prop_assume!(tp(t).dist(tp(y1)) >= 1e-3 && tp(t).dist(tp(y2)) >= 1e-3);
        let p = Problem::new(log_sine(), vec![1.0, 1.0], zero_field()).unwrap();
        let y = NodeSystem::from_reals(&[y1, y2]).unwrap();
        prop_assert!((f_eval(&p, &y, tp(t)) - identity23(x, z, t)).abs() <= 1e-12);
    }

    #[test]
    fn rotation_without_field_keeps_arc_maxima(ys in sorted_nodes(3), nu in weights(3), d in 0.0..1.0f64) {
        prop_assume!(separated(&ys, 1e-3));
        let p = Problem::new(log_sine(), nu, zero_field()).unwrap();
        let cfg = MaxConfig::default();
        let y = NodeSystem::from_reals(&ys).unwrap();
        let a = arc_maxima(&p, &y, &cfg).unwrap();
        let b = arc_maxima(&p, &y.rotated(d), &cfg).unwrap();
        for (u, v) in a.values.iter().zip(&b.values) {
            prop_assert!((u - v).abs() <= 1e-9, "{u} vs {v}");
        }
    }

    #[test]
    fn cut_correspondence(ys in sorted_nodes(3), c in 0.0..1.0f64) {
        prop_assume!(separated(&ys, 1e-3));
        prop_assume!(ys.iter().all(|&y| tp(y).dist(tp(c)) > 1e-9));
        let p = Problem::new(log_sine(), vec![1.0, 2.0, 0.5], example71_field()).unwrap();
        let cfg = MaxConfig::default();
        let y = NodeSystem::from_reals(&ys).unwrap();
        let arcs = arc_maxima(&p, &y, &cfg).unwrap();
        let cut = interval_maxima(&p, &y, tp(c), &cfg).unwrap();
        let n = ys.len();
        let j = cut.arc_of_interval[0];
        let joined = cut.values[0].max(cut.values[n]);
        prop_assert!(joined == arcs.values[j] || (joined - arcs.values[j]).abs() <= 1e-12);
        for k in 1..n {
            let v = arcs.values[cut.arc_of_interval[k]];
            prop_assert!(cut.values[k] == v || (cut.values[k] - v).abs() <= 1e-12);
        }
    }

    #[test]
    fn arc_maxima_are_continuous(ys in sorted_nodes(3), d in prop::collection::vec(-1e-7..1e-7f64, 3)) {
        prop_assume!(separated(&ys, 1e-2));
        let p = Problem::new(log_sine(), vec![1.0, 1.0, 1.0], tilde_field(4.0 * PI + 1.0).unwrap()).unwrap();
        let cfg = MaxConfig::default();
        let y = NodeSystem::from_reals(&ys).unwrap();
        let moved: Vec<f64> = ys.iter().zip(&d).map(|(a, b)| a + b).collect();
        let z = NodeSystem::from_reals(&moved).unwrap();
        let a = arc_maxima(&p, &y, &cfg).unwrap();
        let b = arc_maxima(&p, &z, &cfg).unwrap();
        for (u, v) in a.values.iter().zip(&b.values) {
            prop_assert!((u - v).abs() <= 1e-4, "{u} vs {v}");
        }
    }

    #[test]
    fn perturbation_inequalities(ys in sorted_nodes(4), nu in weights(4), mask in 1u8..15, scale in 0.1..1.0f64) {
        let flags: Vec<bool> = (0..4).map(|i| mask & (1 << i) != 0).collect();
        let part = Partition::from_flags(flags).unwrap();
        let p = Problem::new(log_sine(), nu, example71_field()).unwrap();
        let w = NodeSystem::from_reals(&ys).unwrap();
        prop_assume!(w.arcs().iter().all(|a| a.len > 1e-6));
        let h = default_step(&w, p.nu()) * scale;
        let w_new = perturb_general(&p, &w, &part, h).unwrap();
        let rep = verify_perturbation(&p, &w, &w_new, &part, 15, &MaxConfig::default()).unwrap();
        prop_assert!(rep.ok(), "{rep:?}");
        prop_assert!(rep.strict_ok(), "{rep:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn anchored_solutions_are_unique(a in 0.0..1.0f64, u1 in 0.05..0.45f64, u2 in 0.55..0.95f64) {
        let p = Problem::new(log_sine(), vec![1.0, 2.0, 0.5], example71_field()).unwrap();
        let cfg = SolveConfig::default();
        let anchor = tp(a);
        let reference = solve_equioscillation(&p, anchor, &cfg, None).unwrap();
        let warm = NodeSystem::new(vec![anchor, anchor.shifted(u1), anchor.shifted(u2)]).unwrap();
        let r = solve_equioscillation(&p, anchor, &cfg, Some(&warm)).unwrap();
        prop_assert!(r.nodes.dist(&reference.nodes) <= 1e-8, "{:?} vs {:?}", r.nodes, reference.nodes);
        prop_assert_eq!(r.certificate, Certificate::Equioscillating);
        prop_assert!(r.equioscillation_gap <= cfg.tol_value);
    }
}

#[test]
fn equioscillation_value_is_continuous_at_the_joint() {
    let below = equi_value_of_x(1.5 - 1e-12).unwrap();
    let at = equi_value_of_x(1.5).unwrap();
    assert!((below - at).abs() < 1e-9);
}
