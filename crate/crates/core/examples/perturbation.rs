//! Moves nodes so chosen arcs lose height while the rest gain, then checks the result
//! pointwise and on the arc maxima.

use equiosc::fields::example71_field;
use equiosc::kernels::log_sine;
use equiosc::perturb::{
    check_widening, default_step, perturb_general, perturbation_trials, verify_perturbation, widen_pair, widening_samples, widening_trials,
    Partition,
};
use equiosc::sumtrans::arc_maxima;
use equiosc::{MaxConfig, NodeSystem, Problem};

fn main() -> equiosc::Result<()> {
    let p = Problem::new(log_sine(), vec![1.0, 2.0, 0.5, 1.5], example71_field())?;
    let w = NodeSystem::from_reals(&[0.12, 0.29, 0.52, 0.69])?;
    let part = Partition::new(4, &[0, 2])?;
    let cfg = MaxConfig::default();

    let h = default_step(&w, p.nu());
    let moved = perturb_general(&p, &w, &part, h)?;
    println!("step {h:.3e}");
    println!("before {:?}", w.values());
    println!("after  {:?}", moved.values());
    let before = arc_maxima(&p, &w, &cfg)?;
    let after = arc_maxima(&p, &moved, &cfg)?;
    for j in 0..4 {
        let kind = if part.is_shrink(j) { "shrink" } else { "grow" };
        println!("arc {j} {kind:>6}: {:.8} -> {:.8}", before.values[j], after.values[j]);
    }
    let rep = verify_perturbation(&p, &w, &moved, &part, 50, &cfg)?;
    println!("checks {} ok {} strict {}", rep.pointwise_checks, rep.ok(), rep.strict_ok());

    let summary = perturbation_trials(&p, 100, 7, 20, &cfg)?;
    println!("\n{} random trials, {} rejected, ok {}", summary.trials, summary.errors, summary.report.ok());

    // pulling the pair (0.1, 0.7) in to (0.2, 0.6) with equal weights is balanced
    let mu = widen_pair(0.1, 0.2, 0.6, 0.7, 1.0, 1.0)?;
    let ts = widening_samples((0.1, 0.2, 0.6, 0.7), 200);
    let r = check_widening(&log_sine(), (0.1, 0.2, 0.6, 0.7), (1.0, 1.0), &ts)?;
    println!(
        "pair move ratio {mu:.6}: {} outside, {} inside, {} violations, strict {}",
        r.samples_outside, r.samples_inside, r.violations, r.strict
    );
    let wide = widening_trials(&log_sine(), 1000, 7)?;
    println!("{} pair-move samples, {} violations", wide.samples, wide.violations);
    Ok(())
}
