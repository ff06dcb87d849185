//! Logarithmic capacity of finite unions of intervals via Fekete points.

use crate::error::{Error, Result};
use crate::interval::IntervalSet;

const REFINEMENT_SWEEPS: usize = 200;
const GOLDEN_STEPS: usize = 48;

/// Approximate Fekete points: greedy insertion over a fine candidate grid,
/// then coordinate-wise maximization of the log-product, point by point.
pub fn fekete_points(set: &IntervalSet, npoints: usize) -> Vec<f64> {
    let ivs = &set.intervals;
    let total: f64 = set.measure();
    let budget = (60 * npoints).max(4000) as f64;
    let mut candidates = Vec::new();
    for &(a, b) in ivs {
        let k = ((budget * (b - a) / total).ceil() as usize).max(2);
        candidates.extend((0..k).map(|i| a + (b - a) * i as f64 / (k - 1) as f64));
    }
    let first = ivs[0].0;
    let last = ivs[ivs.len() - 1].1;
    let mut pts = vec![first, last];
    let mut score: Vec<f64> = candidates.iter().map(|&c| log_abs(c - first) + log_abs(c - last)).collect();
    while pts.len() < npoints {
        let (best, _) = score.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).expect("candidates exist");
        let x = candidates[best];
        pts.push(x);
        for (s, &c) in score.iter_mut().zip(&candidates) {
            *s += log_abs(c - x);
        }
    }
    pts.sort_by(f64::total_cmp);

    for _ in 0..REFINEMENT_SWEEPS {
        let mut moved = 0.0f64;
        for i in 0..pts.len() {
            let (a, b) = *ivs
                .iter()
                .find(|&&(a, b)| a <= pts[i] && pts[i] <= b)
                .expect("point stays in its component");
            let lo = if i > 0 && pts[i - 1] >= a { pts[i - 1] } else { a };
            let hi = if i + 1 < pts.len() && pts[i + 1] <= b { pts[i + 1] } else { b };
            let (current, pick, gain) = {
                let energy = |x: f64| -> f64 {
                    pts.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &p)| log_abs(x - p)).sum()
                };
                let mut options = vec![golden_max(&energy, lo, hi)];
                if lo == a {
                    options.push(a);
                }
                if hi == b {
                    options.push(b);
                }
                let pick = options.into_iter().max_by(|p, q| energy(*p).total_cmp(&energy(*q))).unwrap();
                (pts[i], pick, energy(pick) - energy(pts[i]))
            };
            if gain > 0.0 {
                moved = moved.max((pick - current).abs());
                pts[i] = pick;
            }
        }
        if moved < 1e-14 {
            break;
        }
    }
    pts
}

fn log_abs(d: f64) -> f64 {
    if d == 0.0 {
        -1e300
    } else {
        d.abs().ln()
    }
}

fn golden_max(g: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    const R: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - R * (hi - lo);
    let mut x2 = lo + R * (hi - lo);
    let (mut g1, mut g2) = (g(x1), g(x2));
    for _ in 0..GOLDEN_STEPS {
        if g1 < g2 {
            lo = x1;
            x1 = x2;
            g1 = g2;
            x2 = lo + R * (hi - lo);
            g2 = g(x2);
        } else {
            hi = x2;
            x2 = x1;
            g2 = g1;
            x1 = hi - R * (hi - lo);
            g1 = g(x1);
        }
    }
    0.5 * (lo + hi)
}

fn mean_log_distance(pts: &[f64]) -> f64 {
    let n = pts.len();
    let mut s = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            s += log_abs(pts[i] - pts[j]);
        }
    }
    s / (n * (n - 1) / 2) as f64
}

fn check(set: &IntervalSet, npoints: usize) -> Result<bool> {
    if npoints < 16 {
        return Err(Error::Invalid(format!("need at least 16 points, got {npoints}")));
    }
    Ok(set.measure() > 0.0)
}

/// The `npoints`-th diameter: geometric mean of pairwise distances of the
/// Fekete points. Decreases towards the capacity as `npoints` grows.
pub fn transfinite_diameter(set: &IntervalSet, npoints: usize) -> Result<f64> {
    if !check(set, npoints)? {
        return Ok(0.0);
    }
    Ok(mean_log_distance(&fekete_points(set, npoints)).exp())
}

/// Capacity estimate from the `n`-th and `n/2`-th diameters.
///
/// For unions of intervals `log d_n = log C + (ln n + c)/n + o(1/n)`; the
/// two diameters eliminate the unknown `c`.
pub fn capacity_estimate(set: &IntervalSet, npoints: usize) -> Result<f64> {
    if !check(set, npoints)? {
        return Ok(0.0);
    }
    let full = mean_log_distance(&fekete_points(set, npoints));
    let half = mean_log_distance(&fekete_points(set, npoints / 2));
    let n = npoints as f64;
    let m = (npoints / 2) as f64;
    // n log d_n - m log d_m = (n - m) log C + ln(n/m)
    Ok(((n * full - m * half - (n / m).ln()) / (n - m)).exp())
}
