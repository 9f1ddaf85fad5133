//! Upper smoothing for the minimax value and lower smoothing for the maximin value,
//! each solved down a decreasing schedule of smoothing parameters.

use equiosc::counterexamples::example71_problem;
use equiosc::solvers::{smoothing_homotopy, SolveConfig, Target};

fn main() -> equiosc::Result<()> {
    let p = example71_problem();
    let cfg = SolveConfig::default();
    for target in [Target::Minimax, Target::Maximin] {
        let h = smoothing_homotopy(&p, &cfg, target)?;
        println!("{target:?} (monotone: {})", h.monotone);
        for s in &h.steps {
            println!("  eta {:<6} value {:.10}  nodes {:?}", s.eta, s.value, s.nodes.values());
        }
        println!("  limit estimate {:.10}", h.result.value);
    }
    Ok(())
}
