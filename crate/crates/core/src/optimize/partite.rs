use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{certify, maximize_with_starts, OptimizationReport, OptimizerConfig, CERTIFY_MAX_DEN};
use crate::arith::{approximate_rational, format_rational, ratio, to_f64, BigRational};
use crate::density::{density_polynomial, DensityPolynomial};
use crate::error::{Error, Result};
use crate::graphs::is_strongly_unbalanced;
use crate::optimize::local::kkt_residual;
use crate::profile::PartiteProfile;

/// Improvements below this between consecutive part counts count as a plateau.
const PLATEAU: f64 = 1e-10;

/// `i_k(F)`: the maximum of `P_{F, k-1}` over the simplex, with exact
/// certification at equipartitions and one-distinguished-part patterns.
pub fn inducibility_partite(
    profile: &PartiteProfile,
    k: u32,
    config: &OptimizerConfig,
) -> Result<OptimizationReport> {
    if k < 3 {
        return Err(Error::Domain(format!("need k >= 3, got {k}")));
    }
    solve(profile, k as usize - 1, config, Vec::new())
}

fn solve(
    profile: &PartiteProfile,
    m: usize,
    config: &OptimizerConfig,
    extra: Vec<Vec<f64>>,
) -> Result<OptimizationReport> {
    let poly = density_polynomial(profile, m)?;
    if poly.is_zero() {
        return Ok(OptimizationReport {
            vars: m,
            point: vec![1.0 / m as f64; m],
            value: 0.0,
            restarts: 0,
            iterations: 0,
            gradient_norm: 0.0,
            stationary: true,
            exact: Some(BigRational::zero()),
            exact_point: Some(vec![ratio(1, m as u64); m]),
            lipschitz: 0.0,
            trace: Vec::new(),
        });
    }
    let mut report = maximize_with_starts(&poly, config, extra)?;
    for cand in structured_candidates(&poly, &report.point) {
        let value = poly.evaluate_exact(&cand)?;
        let numeric = to_f64(&value);
        if numeric > report.value + 1e-12 * report.value.abs().max(1.0) {
            let point: Vec<f64> = cand.iter().map(to_f64).collect();
            report.gradient_norm = kkt_residual(&point, &poly.gradient(&point)?);
            report.stationary = report.gradient_norm <= config.tolerance;
            report.point = point;
            report.value = numeric;
            report.exact = None;
            report.exact_point = None;
        }
        if report.exact.is_none() {
            if let Some(v) = certify(&poly, &cand, report.value) {
                report.exact = Some(v);
                report.exact_point = Some(cand);
            }
        }
    }
    Ok(report)
}

/// Equipartitions on `r..=m` parts, then `(b, ..., b, 1 - (n-1) b)` patterns
/// fitted to the numeric optimum.
fn structured_candidates(poly: &DensityPolynomial, best: &[f64]) -> Vec<Vec<BigRational>> {
    let m = poly.vars();
    let r = poly.profile().num_parts();
    let mut out: Vec<Vec<BigRational>> = (r..=m)
        .map(|l| {
            let mut xs = vec![ratio(1, l as u64); l];
            xs.resize(m, BigRational::zero());
            xs
        })
        .collect();
    let support: Vec<f64> = best.iter().copied().filter(|&x| x > 0.0).collect();
    let n = support.len();
    if n >= 2 {
        for distinguished in [0, n - 1] {
            let rest: Vec<f64> = (0..n).filter(|&i| i != distinguished).map(|i| support[i]).collect();
            let mean = rest.iter().sum::<f64>() / rest.len() as f64;
            if rest.iter().any(|v| (v - mean).abs() > 1e-6) {
                continue;
            }
            let Some(b) = approximate_rational(mean, CERTIFY_MAX_DEN) else { continue };
            let last = BigRational::one() - b.clone() * BigRational::from_integer((n as i64 - 1).into());
            if last.is_negative() {
                continue;
            }
            let mut xs = vec![last];
            xs.extend(std::iter::repeat_n(b, n - 1));
            xs.resize(m, BigRational::zero());
            xs.sort_by(|a, b| b.cmp(a));
            out.push(xs);
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct LimitStep {
    pub m: usize,
    pub value: f64,
    #[serde(serialize_with = "ser_opt_rational")]
    pub exact: Option<BigRational>,
    pub point: Vec<f64>,
}

fn ser_opt_rational<S: serde::Serializer>(
    q: &Option<BigRational>,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => ser.serialize_str(&format_rational(q)),
        None => ser.serialize_none(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LimitReport {
    pub steps: Vec<LimitStep>,
    /// Part count at which the value stopped improving, if it did.
    pub stabilized_at: Option<usize>,
    /// Whether `a_{r-1} >= 2`, under which a plateau is expected.
    pub plateau_expected: bool,
    pub warning: Option<String>,
}

/// Optimum over `m`-part graphons for `m = r..=m_max`, each run also started
/// from the previous optimum so the sequence cannot drop.
pub fn inducibility_limit(
    profile: &PartiteProfile,
    m_max: usize,
    config: &OptimizerConfig,
) -> Result<LimitReport> {
    let r = profile.num_parts();
    if m_max < r {
        return Err(Error::Domain(format!("m_max={m_max} is below r={r}")));
    }
    let mut steps: Vec<LimitStep> = Vec::new();
    for m in r..=m_max {
        let extra = steps
            .last()
            .map(|prev| {
                let mut x = prev.point.clone();
                x.push(0.0);
                vec![x]
            })
            .unwrap_or_default();
        let report = solve(profile, m, config, extra)?;
        steps.push(LimitStep { m, value: report.value, exact: report.exact, point: report.point });
    }
    let stabilized_at = steps
        .windows(2)
        .find(|w| w[1].value - w[0].value < PLATEAU)
        .map(|w| w[0].m);
    let plateau_expected = r >= 2 && profile.parts()[r - 2] >= 2;
    let warning = (profile.singletons() >= 2).then(|| {
        format!(
            "{profile} has two singleton parts: the supremum may not be attained by any graphon with finitely many parts"
        )
    });
    Ok(LimitReport { steps, stabilized_at, plateau_expected, warning })
}

/// Whether the nonzero parts of the optimal `(k-1)`-part graphon are pairwise
/// more than `separation` apart.
pub fn check_distinct_parts(
    profile: &PartiteProfile,
    k: u32,
    separation: f64,
    config: &OptimizerConfig,
) -> Result<bool> {
    if !is_strongly_unbalanced(profile) {
        return Err(Error::Domain(format!("{profile} is not strongly unbalanced")));
    }
    if k as usize <= profile.num_parts() {
        return Err(Error::Domain(format!("need k > r, got k={k}")));
    }
    let report = inducibility_partite(profile, k, config)?;
    let parts: Vec<f64> = report.point.iter().copied().filter(|&x| x > config.merge_threshold).collect();
    Ok(parts.windows(2).all(|w| w[0] - w[1] > separation))
}
