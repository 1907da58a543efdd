use serde::Serialize;

use crate::arith::{binomial, to_f64, BigRational};
use crate::error::{Error, Result};

const GRID: usize = 4096;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct BipartiteOptimum {
    /// Maximizer of `h` in `[0, 1/2]`; `1 - alpha` is the mirror maximizer.
    pub alpha: f64,
    /// `C(a + b, a)/pi * h(alpha)`.
    pub value: f64,
}

fn h(a: i32, b: i32, x: f64) -> f64 {
    let y = 1.0 - x;
    x.powi(a) * y.powi(b) + x.powi(b) * y.powi(a)
}

fn dh(a: i32, b: i32, x: f64) -> f64 {
    let y = 1.0 - x;
    let term = |p: i32, q: i32| {
        let left = if p == 0 { 0.0 } else { p as f64 * x.powi(p - 1) * y.powi(q) };
        let right = if q == 0 { 0.0 } else { q as f64 * x.powi(p) * y.powi(q - 1) };
        left - right
    };
    term(a, b) + term(b, a)
}

/// Inducibility of `K_{a,b}`: maximizes `x^a (1-x)^b + x^b (1-x)^a` on `[0, 1]`.
pub fn bipartite_inducibility(a: u32, b: u32, tol: f64) -> Result<BipartiteOptimum> {
    if (a as u64) * (b as u64) <= 1 {
        return Err(Error::Domain(format!("need a*b > 1, got a={a}, b={b}")));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain("tolerance must be positive".into()));
    }
    let (ai, bi) = (a as i32, b as i32);
    // h is symmetric about 1/2, so search [0, 1/2]
    let step = 0.5 / GRID as f64;
    let best = (0..=GRID)
        .max_by(|&i, &j| h(ai, bi, i as f64 * step).total_cmp(&h(ai, bi, j as f64 * step)))
        .expect("nonempty grid");
    let mut lo = best.saturating_sub(1) as f64 * step;
    let mut hi = (best + 1).min(GRID) as f64 * step;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if dh(ai, bi, mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let alpha = [lo, 0.5 * (lo + hi), hi]
        .into_iter()
        .max_by(|x, y| h(ai, bi, *x).total_cmp(&h(ai, bi, *y)))
        .expect("three candidates");
    let pi = if a == b { 2 } else { 1 };
    let scale = to_f64(&BigRational::new(binomial((a + b) as u64, a as u64), pi.into()));
    Ok(BipartiteOptimum { alpha, value: scale * h(ai, bi, alpha) })
}
