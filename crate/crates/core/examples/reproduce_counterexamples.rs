//! Runs the three reproduction reports and prints every check.

use std::f64::consts::PI;

use equiosc::counterexamples::{reproduce_example54, reproduce_example71, reproduce_example72, Report};
use equiosc::solvers::SolveConfig;

fn show(r: &Report) {
    println!("== {} ({})", r.example, if r.passed { "pass" } else { "FAIL" });
    for c in &r.checks {
        let mark = if c.passed { "ok  " } else { "FAIL" };
        match (c.expected, c.observed) {
            (Some(e), Some(o)) => println!("  {mark} {:<42} expected {e:.10} observed {o:.10}", c.name),
            _ => println!("  {mark} {:<42} {}", c.name, c.detail.as_deref().unwrap_or("")),
        }
    }
    for d in &r.data {
        println!("  data {:<37} {}", d.name, d.value);
    }
    for n in &r.notes {
        println!("  note {n}");
    }
}

fn main() -> equiosc::Result<()> {
    let cfg = SolveConfig::default();
    show(&reproduce_example71(&cfg)?);
    show(&reproduce_example72(4.0 * PI + 1.0, &cfg)?);
    show(&reproduce_example54(100, 64, &cfg)?);
    Ok(())
}
