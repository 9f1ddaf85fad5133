//! Minimax and maximin node systems for the two-node weighted problem whose
//! minimax value lies strictly below its maximin value.

use std::f64::consts::LN_2;

use equiosc::fields::example71_field;
use equiosc::kernels::log_sine;
use equiosc::solvers::{solve_maximin, solve_minimax, SolveConfig};
use equiosc::Problem;

fn main() -> equiosc::Result<()> {
    let p = Problem::new(log_sine(), vec![1.0, 1.0], example71_field())?;
    let cfg = SolveConfig::default();

    let lo = solve_minimax(&p, &cfg)?;
    println!(
        "minimax  {:.10}  nodes {:?}  {:?}  gap {:.1e}  ({:.2?})",
        lo.value,
        lo.nodes.values(),
        lo.certificate,
        lo.equioscillation_gap,
        lo.wall_time
    );
    let hi = solve_maximin(&p, &cfg)?;
    println!(
        "maximin  {:.10}  nodes {:?}  {:?}  gap {:.1e}  ({:.2?})",
        hi.value,
        hi.nodes.values(),
        hi.certificate,
        hi.equioscillation_gap,
        hi.wall_time
    );
    println!("closed forms: -2 log 2 = {:.10}, -log 2 = {:.10}", -2.0 * LN_2, -LN_2);
    println!("minimax < maximin: {}", lo.value < hi.value);
    Ok(())
}
