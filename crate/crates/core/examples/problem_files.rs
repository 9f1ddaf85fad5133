//! Loads every bundled JSON problem and solves it.

use std::path::Path;

use equiosc::problem_file::{parse_problem, parse_problem_str};
use equiosc::solvers::{solve_maximin, solve_minimax};

fn main() -> equiosc::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("problems");
    let mut paths: Vec<_> = std::fs::read_dir(&dir)
        .expect("bundled problems")
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    for path in paths {
        let (p, cfg) = parse_problem(&path)?;
        let lo = solve_minimax(&p, &cfg)?;
        let hi = solve_maximin(&p, &cfg)?;
        println!(
            "{:<26} n={} minimax {:>12.8} ({:?})  maximin {:>12.8} ({:?})",
            path.file_name().unwrap().to_string_lossy(),
            p.n(),
            lo.value,
            lo.certificate,
            hi.value,
            hi.certificate
        );
    }

    let bad = r#"{"schema_version": 1, "kernel": {"name": "log_sine"}, "nu": [1, 1], "field": {"name": "tilde", "alpha": 1.0}}"#;
    match parse_problem_str(bad) {
        Ok(_) => println!("unexpectedly accepted"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
