//! One-dimensional and simplex searches used by the arc maximizer and the solvers.

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section maximization of a unimodal `g` on `[lo, hi]`.
///
/// Returns the best interior probe; the caller compares against the endpoints.
pub(crate) fn golden_max<G: Fn(f64) -> f64>(g: G, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut gc = g(c);
    let mut gd = g(d);
    for _ in 0..200 {
        if b - a <= tol {
            break;
        }
        if gc >= gd {
            b = d;
            d = c;
            gd = gc;
            c = b - INV_PHI * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + INV_PHI * (b - a);
            gd = g(d);
        }
    }
    if gc >= gd {
        (c, gc)
    } else {
        (d, gd)
    }
}

/// Golden-section minimization; used for the one-dimensional anchor refinement.
pub(crate) fn golden_min<G: FnMut(f64) -> f64>(mut g: G, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut gc = g(c);
    let mut gd = g(d);
    for _ in 0..200 {
        if b - a <= tol {
            break;
        }
        if gc <= gd {
            b = d;
            d = c;
            gd = gc;
            c = b - INV_PHI * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + INV_PHI * (b - a);
            gd = g(d);
        }
    }
    if gc <= gd {
        (c, gc)
    } else {
        (d, gd)
    }
}

/// Root of a nondecreasing `g` on `[lo, hi]`; clamps to an end when there is no sign change.
///
/// Infinite values are fine; `NaN` is treated as zero.
pub(crate) fn bisect_increasing<G: FnMut(f64) -> f64>(
    mut g: G,
    lo: f64,
    hi: f64,
    width: f64,
) -> f64 {
    let (mut a, mut b) = (lo, hi);
    if g(a) >= 0.0 {
        return a;
    }
    if g(b) <= 0.0 {
        return b;
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if b - a <= width || m <= a || m >= b {
            break;
        }
        let v = g(m);
        if v.is_nan() || v == 0.0 {
            return m;
        }
        if v < 0.0 {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

pub(crate) struct SimplexResult {
    pub x: Vec<f64>,
    pub iterations: usize,
}

/// Nelder–Mead minimization with the standard coefficients.
pub(crate) fn nelder_mead<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    step: f64,
    max_iters: usize,
    ftol: f64,
) -> SimplexResult {
    let n = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), f(x0)));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += step;
        let v = f(&x);
        simplex.push((x, v));
    }
    let order = |s: &mut Vec<(Vec<f64>, f64)>| {
        s.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal))
    };
    let mut iterations = 0;
    while iterations < max_iters {
        iterations += 1;
        order(&mut simplex);
        let best = simplex[0].1;
        let worst = simplex[n].1;
        if worst.is_finite() && (worst - best).abs() <= ftol {
            break;
        }
        let centroid: Vec<f64> = (0..n)
            .map(|k| simplex[..n].iter().map(|(x, _)| x[k]).sum::<f64>() / n as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[n].0)
                .map(|(c, w)| c + t * (w - c))
                .collect()
        };
        let xr = along(-1.0);
        let fr = f(&xr);
        if fr < simplex[0].1 {
            let xe = along(-2.0);
            let fe = f(&xe);
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
            continue;
        }
        let (xc, fc) = if fr < simplex[n].1 {
            let xc = along(-0.5);
            let fc = f(&xc);
            (xc, fc)
        } else {
            let xc = along(0.5);
            let fc = f(&xc);
            (xc, fc)
        };
        if fc < simplex[n].1.min(fr) {
            simplex[n] = (xc, fc);
            continue;
        }
        // shrink towards the best vertex
        let x_best = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let x: Vec<f64> = x_best
                .iter()
                .zip(&vertex.0)
                .map(|(b, v)| b + 0.5 * (v - b))
                .collect();
            let v = f(&x);
            *vertex = (x, v);
        }
    }
    order(&mut simplex);
    let (x, _) = simplex.swap_remove(0);
    SimplexResult {
        x,
        iterations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_concave_peak() {
        let (t, v) = golden_max(|t| -(t - 0.3).powi(2), 0.0, 1.0, 1e-12);
        assert!((t - 0.3).abs() < 1e-7);
        assert!(v.abs() < 1e-14);
        let (t, _) = golden_min(|t| (t - 0.7).abs(), 0.0, 1.0, 1e-12);
        assert!((t - 0.7).abs() < 1e-11);
    }

    #[test]
    fn golden_handles_infinite_ends() {
        let g = |t: f64| (std::f64::consts::PI * t).sin().ln();
        let (t, v) = golden_max(g, 0.0, 1.0, 1e-12);
        assert!((t - 0.5).abs() < 1e-7);
        assert!(v.abs() < 1e-14);
    }

    #[test]
    fn bisection_root() {
        let r = bisect_increasing(|x| x * x * x - 0.125, 0.0, 1.0, 1e-15);
        assert!((r - 0.5).abs() < 1e-14);
        assert_eq!(bisect_increasing(|x| x + 1.0, 0.0, 1.0, 1e-15), 0.0);
        let r = bisect_increasing(
            |x| if x < 0.25 { f64::NEG_INFINITY } else { x - 0.6 },
            0.0,
            1.0,
            1e-15,
        );
        assert!((r - 0.6).abs() < 1e-14);
    }

    #[test]
    fn simplex_rosenbrock() {
        let f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let r = nelder_mead(
            f,
            &[-1.2, 1.0],
            0.1,
            5000,
            1e-16,
        );
        assert!((r.x[0] - 1.0).abs() < 1e-4, "{:?}", r.x);
        assert!(f(&r.x) < 1e-8);
    }
}
