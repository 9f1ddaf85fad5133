//! Brute-force grid estimates of the minimax and maximin values, compared to the solvers.

use equiosc::counterexamples::example71_problem;
use equiosc::solvers::{brute_force, solve_maximin, solve_minimax, SolveConfig};

fn main() -> equiosc::Result<()> {
    let p = example71_problem();
    for grid in [64, 128, 256] {
        let cfg = SolveConfig {
            grid_resolution: grid,
            ..Default::default()
        };
        let o = brute_force(&p, &cfg)?;
        println!(
            "N = {grid:>3}: {} cells, minimax <= {:.8} at {:?}, maximin >= {:.8} at {:?}",
            o.cells, o.minimax_estimate, o.argmin, o.maximin_estimate, o.argmax
        );
    }
    let cfg = SolveConfig::default();
    println!(
        "solvers: minimax {:.8}, maximin {:.8}",
        solve_minimax(&p, &cfg)?.value,
        solve_maximin(&p, &cfg)?.value
    );
    Ok(())
}
