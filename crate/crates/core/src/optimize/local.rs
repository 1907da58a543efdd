//! One local run: projected gradient ascent, face Newton steps, merges and
//! pairwise balance moves along `Q(a)`.

use serde::Serialize;

use crate::density::DensityPolynomial;

use super::OptimizerConfig;

const ARMIJO: f64 = 1e-4;
const NEWTON_STEPS: usize = 30;
const BALANCE_ROUNDS: usize = 200;
const ROOT_GRID: usize = 64;
/// PG hands over to Newton once the KKT residual drops below this.
const NEWTON_START: f64 = 1e-5;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "move", rename_all = "kebab-case")]
pub enum Move {
    /// Mass of `from` moved onto `into`.
    Merge { from: usize, into: usize, mass: f64, before: f64, after: f64 },
    /// Coordinates `i`, `j` re-split as `a`, `1 - a` of their joint mass.
    Balance { i: usize, j: usize, a_before: f64, a_after: f64, before: f64, after: f64 },
}

pub(super) struct LocalRun {
    pub point: Vec<f64>,
    pub value: f64,
    pub residual: f64,
    pub iterations: usize,
    pub trace: Vec<Move>,
}

/// Spread of the gradient over the support plus the largest off-support excess.
pub(crate) fn kkt_residual(x: &[f64], g: &[f64]) -> f64 {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut off = f64::NEG_INFINITY;
    for (&xi, &gi) in x.iter().zip(g) {
        if xi > 0.0 {
            lo = lo.min(gi);
            hi = hi.max(gi);
        } else {
            off = off.max(gi);
        }
    }
    (hi - lo).max(off - hi).max(0.0)
}

/// Euclidean projection onto the probability simplex.
pub(crate) fn project_simplex(v: &[f64]) -> Vec<f64> {
    let mut u = v.to_vec();
    u.sort_by(|a, b| b.total_cmp(a));
    let mut cumulative = 0.0;
    let mut theta = 0.0;
    for (k, &uk) in u.iter().enumerate() {
        cumulative += uk;
        let t = (cumulative - 1.0) / (k + 1) as f64;
        if uk - t > 0.0 {
            theta = t;
        }
    }
    let mut out: Vec<f64> = v.iter().map(|&vi| (vi - theta).max(0.0)).collect();
    renormalize(&mut out);
    out
}

fn renormalize(x: &mut [f64]) {
    let sum: f64 = x.iter().sum();
    if sum > 0.0 {
        x.iter_mut().for_each(|v| *v /= sum);
    }
}

pub(super) struct Local<'a> {
    poly: &'a DensityPolynomial,
    config: &'a OptimizerConfig,
    iterations: usize,
    trace: Vec<Move>,
}

impl<'a> Local<'a> {
    pub fn new(poly: &'a DensityPolynomial, config: &'a OptimizerConfig) -> Self {
        Local { poly, config, iterations: 0, trace: Vec::new() }
    }

    fn value(&self, x: &[f64]) -> f64 {
        self.poly.evaluate_numeric(x).expect("dimension checked")
    }

    fn grad(&self, x: &[f64]) -> Vec<f64> {
        self.poly.gradient(x).expect("dimension checked")
    }

    pub fn run(mut self, start: Vec<f64>) -> LocalRun {
        let mut x = start;
        for _ in 0..BALANCE_ROUNDS {
            x = self.ascend(x);
            match self.balance(&x) {
                Some(next) => x = next,
                None => break,
            }
        }
        let value = self.value(&x);
        let residual = kkt_residual(&x, &self.grad(&x));
        LocalRun { point: x, value, residual, iterations: self.iterations, trace: self.trace }
    }

    fn ascend(&mut self, mut x: Vec<f64>) -> Vec<f64> {
        let tol = self.config.tolerance;
        let mut eta: f64 = 1.0;
        let mut fx = self.value(&x);
        let mut newton_below = NEWTON_START;
        loop {
            let g = self.grad(&x);
            let res = kkt_residual(&x, &g);
            if res <= tol {
                break;
            }
            if res < newton_below {
                newton_below = res * 0.1;
                x = self.merge(x);
                if let Some(polished) = self.newton(&x) {
                    x = polished;
                }
                fx = self.value(&x);
                let g = self.grad(&x);
                if kkt_residual(&x, &g) <= tol {
                    break;
                }
            }
            if self.iterations >= self.config.max_iterations {
                break;
            }
            self.iterations += 1;
            let g = self.grad(&x);
            eta = (eta * 2.0).min(1e6);
            let mut accepted = false;
            while eta > 1e-30 {
                let trial: Vec<f64> = x.iter().zip(&g).map(|(xi, gi)| xi + eta * gi).collect();
                let y = project_simplex(&trial);
                let gain: f64 = g.iter().zip(y.iter().zip(&x)).map(|(gi, (yi, xi))| gi * (yi - xi)).sum();
                let fy = self.value(&y);
                if fy >= fx + ARMIJO * gain && fy >= fx {
                    accepted = fy > fx || y != x;
                    x = y;
                    fx = fy;
                    break;
                }
                eta *= 0.5;
            }
            if !accepted {
                break;
            }
        }
        self.merge(x)
    }

    /// Moves every coordinate below the merge threshold onto the largest one.
    fn merge(&mut self, mut x: Vec<f64>) -> Vec<f64> {
        let thr = self.config.merge_threshold;
        let largest = (0..x.len()).fold(0, |b, i| if x[i] > x[b] { i } else { b });
        for j in 0..x.len() {
            if j != largest && x[j] > 0.0 && x[j] < thr {
                let before = self.value(&x);
                let mass = x[j];
                x[largest] += mass;
                x[j] = 0.0;
                let after = self.value(&x);
                self.trace.push(Move::Merge { from: j, into: largest, mass, before, after });
            }
        }
        x
    }

    /// Newton iterations on the face spanned by the current support.
    fn newton(&self, x: &[f64]) -> Option<Vec<f64>> {
        let support: Vec<usize> = (0..x.len()).filter(|&i| x[i] > 0.0).collect();
        let n = support.len();
        if n < 2 {
            return None;
        }
        let mut cur = x.to_vec();
        let mut best_res = kkt_residual(&cur, &self.grad(&cur));
        let mut fcur = self.value(&cur);
        let mut improved = false;
        for _ in 0..NEWTON_STEPS {
            let g = self.grad(&cur);
            let Ok(h) = self.poly.hessian(&cur) else { break };
            // [H 1; 1^T 0] [d; -mu] = [-g; 0]
            let mut a = vec![vec![0.0; n + 2]; n + 1];
            for (r, &i) in support.iter().enumerate() {
                for (c, &j) in support.iter().enumerate() {
                    a[r][c] = h[i][j];
                }
                a[r][n] = 1.0;
                a[r][n + 1] = -g[i];
            }
            for c in 0..n {
                a[n][c] = 1.0;
            }
            let Some(sol) = solve(a) else { break };
            let mut next = cur.clone();
            for (r, &i) in support.iter().enumerate() {
                next[i] += sol[r];
            }
            if support.iter().any(|&i| next[i] <= 0.0) {
                break;
            }
            renormalize(&mut next);
            let fnext = self.value(&next);
            let res = kkt_residual(&next, &self.grad(&next));
            if fnext < fcur - 1e-15 * fcur.abs().max(1.0) || res >= best_res {
                break;
            }
            cur = next;
            fcur = fnext;
            best_res = res;
            improved = true;
            if res <= self.config.tolerance * 1e-2 {
                break;
            }
        }
        improved.then_some(cur)
    }

    /// Best strictly improving pairwise re-split, if any.
    fn balance(&mut self, x: &[f64]) -> Option<Vec<f64>> {
        let current = self.value(x);
        let mut best: Option<(f64, usize, usize, f64, f64)> = None;
        for i in 0..x.len() {
            for j in i + 1..x.len() {
                let mass = x[i] + x[j];
                if mass <= 0.0 {
                    continue;
                }
                let q = self.poly.split_restriction_numeric(x, i, j).ok()?;
                let a0 = x[i] / mass;
                let q0 = q.eval(&a0);
                let dq = derivative(q.coeffs());
                let mut cands = vec![0.5, 0.0, 1.0];
                cands.extend(critical_points(&dq));
                for a in cands {
                    let qa = q.eval(&a);
                    let margin = 1e-14 * q0.abs().max(1e-300).max(current.abs());
                    if qa > q0 + margin && best.as_ref().is_none_or(|b| qa > b.0) {
                        best = Some((qa, i, j, a0, a));
                    }
                }
            }
        }
        let (_, i, j, a0, a) = best?;
        let mass = x[i] + x[j];
        let mut next = x.to_vec();
        next[i] = a * mass;
        next[j] = (1.0 - a) * mass;
        let after = self.value(&next);
        if after <= current {
            return None;
        }
        self.trace.push(Move::Balance { i, j, a_before: a0, a_after: a, before: current, after });
        Some(next)
    }
}

fn derivative(c: &[f64]) -> Vec<f64> {
    c.iter().enumerate().skip(1).map(|(k, v)| k as f64 * v).collect()
}

fn horner(c: &[f64], a: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, v| acc * a + v)
}

/// Sign changes of `p` on a grid over `(0, 1)`, refined by bisection.
fn critical_points(p: &[f64]) -> Vec<f64> {
    let mut out = Vec::new();
    if p.is_empty() {
        return out;
    }
    let grid: Vec<f64> = (0..=ROOT_GRID).map(|k| k as f64 / ROOT_GRID as f64).collect();
    for w in grid.windows(2) {
        let (mut lo, mut hi) = (w[0], w[1]);
        let (flo, fhi) = (horner(p, lo), horner(p, hi));
        if flo == 0.0 {
            out.push(lo);
            continue;
        }
        if fhi == 0.0 || flo.signum() == fhi.signum() {
            continue;
        }
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if horner(p, mid).signum() == flo.signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out.push(0.5 * (lo + hi));
    }
    if horner(p, 1.0) == 0.0 {
        out.push(1.0);
    }
    out
}

/// Gaussian elimination with partial pivoting on an augmented matrix.
fn solve(mut a: Vec<Vec<f64>>) -> Option<Vec<f64>> {
    let n = a.len();
    let scale = a.iter().flat_map(|row| row[..n].iter()).fold(0.0f64, |m, v| m.max(v.abs()));
    for col in 0..n {
        let piv = (col..n).max_by(|&r, &s| a[r][col].abs().total_cmp(&a[s][col].abs()))?;
        if a[piv][col].abs() <= 1e-13 * scale.max(1.0) {
            return None;
        }
        a.swap(col, piv);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            if f != 0.0 {
                for c in col..=n {
                    a[r][c] -= f * a[col][c];
                }
            }
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (a[r][n] - s) / a[r][r];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projection_lands_on_simplex() {
        let p = project_simplex(&[0.8, 0.6, -0.3]);
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert!((p[0] - 0.6).abs() < 1e-15 && (p[1] - 0.4).abs() < 1e-15 && p[2] == 0.0);
        assert_eq!(project_simplex(&[0.25; 4]), vec![0.25; 4]);
    }

    #[test]
    fn residual_sees_off_support_excess() {
        assert_eq!(kkt_residual(&[0.5, 0.5, 0.0], &[1.0, 1.0, 0.5]), 0.0);
        assert_eq!(kkt_residual(&[0.5, 0.5, 0.0], &[1.0, 1.0, 1.5]), 0.5);
        assert_eq!(kkt_residual(&[0.5, 0.5], &[1.0, 1.25]), 0.25);
    }

    #[test]
    fn roots_of_a_cubic() {
        // (a - 1/4)(a - 1/2)(a - 3/4)
        let p = [-3.0 / 32.0, 11.0 / 16.0, -1.5, 1.0];
        let r = critical_points(&p);
        assert_eq!(r.len(), 3);
        for (got, want) in r.iter().zip([0.25, 0.5, 0.75]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn linear_solve() {
        let a = vec![vec![2.0, 1.0, 3.0], vec![1.0, 3.0, 5.0]];
        let x = solve(a).unwrap();
        assert!((x[0] - 0.8).abs() < 1e-15 && (x[1] - 1.4).abs() < 1e-15);
        assert!(solve(vec![vec![1.0, 2.0, 1.0], vec![2.0, 4.0, 2.0]]).is_none());
    }
}
