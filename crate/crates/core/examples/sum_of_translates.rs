//! Evaluates a weighted sum of translates, its arc maxima and the weighted sup norm of
//! the matching trigonometric product.

use equiosc::fields::{example71_field, zero_field};
use equiosc::kernels::log_sine;
use equiosc::sumtrans::{arc_maxima, f_eval, gtp_weighted_norm, m_bar_star, m_under_star, F_eval};
use equiosc::{MaxConfig, NodeSystem, Problem, TorusPoint};

fn main() -> equiosc::Result<()> {
    let p = Problem::new(log_sine(), vec![1.0, 2.0, 0.5], example71_field())?;
    let y = NodeSystem::from_reals(&[0.1, 0.45, 0.8])?;
    let cfg = MaxConfig::default();

    println!("t      f(t)        F(t)");
    for k in 0..10 {
        let t = TorusPoint::new(0.05 + k as f64 / 10.0)?;
        println!("{:.2}  {:>10.6}  {:>10.6}", t.value(), f_eval(&p, &y, t), F_eval(&p, &y, t));
    }

    let m = arc_maxima(&p, &y, &cfg)?;
    println!("\narc maxima (csv):\n{}", m.to_csv());
    println!("largest {:.6}  smallest {:.6}", m_bar_star(&p, &y, &cfg)?, m_under_star(&p, &y, &cfg)?);

    // equally spaced unit-weight zeros give the sup norm 2^{1-n} without a weight
    let z = NodeSystem::from_reals(&[0.0, 1.0 / 3.0, 2.0 / 3.0])?;
    let norm = gtp_weighted_norm(&zero_field(), &[1.0, 1.0, 1.0], &z, &cfg)?;
    println!("unweighted norm of three equispaced factors {norm:.10} (expected {:.10})", 0.25);
    Ok(())
}
