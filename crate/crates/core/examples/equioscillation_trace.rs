//! Anchored equioscillation solves and the curve of equioscillation values over anchors.

use equiosc::counterexamples::example71_problem;
use equiosc::solvers::{solve_equioscillation, trace_mu, trace_to_csv, uniform_anchors, SolveConfig};
use equiosc::TorusPoint;

fn main() -> equiosc::Result<()> {
    let p = example71_problem();
    let cfg = SolveConfig::default();

    for a in [0.25, 7.0 / 12.0, 0.9] {
        let r = solve_equioscillation(&p, TorusPoint::new(a)?, &cfg, None)?;
        println!(
            "anchor {a:.4}: nodes {:?} value {:.10} gap {:.1e}",
            r.nodes.values(),
            r.value,
            r.equioscillation_gap
        );
    }

    let trace = trace_mu(&p, &uniform_anchors(16), &cfg)?;
    print!("\n{}", trace_to_csv(&trace, p.n()));
    Ok(())
}
