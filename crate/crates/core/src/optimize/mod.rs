//! Multi-start maximization of density polynomials over the simplex.

mod local;
mod partite;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::arith::{approximate_rational, format_rational, to_f64, BigRational};
use crate::density::DensityPolynomial;
use crate::error::{Error, Result};

pub use local::Move;
pub use partite::{check_distinct_parts, inducibility_limit, inducibility_partite, LimitReport, LimitStep};

/// Numeric and exact values closer than this count as matching.
pub const CERTIFY_TOLERANCE: f64 = 1e-9;
const CERTIFY_MAX_DEN: u64 = 10_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub max_iterations: usize,
    pub tolerance: f64,
    pub seed: u64,
    pub merge_threshold: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            restarts: 64,
            max_iterations: 5000,
            tolerance: 1e-12,
            seed: 0,
            merge_threshold: 1e-9,
        }
    }
}

impl OptimizerConfig {
    fn validate(&self) -> Result<()> {
        if self.restarts == 0
            || self.max_iterations == 0
            || !(self.tolerance > 0.0)
            || !(self.merge_threshold > 0.0)
        {
            return Err(Error::Domain("optimizer settings must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OptimizationReport {
    /// Number of parts `m` of the graphon searched over.
    pub vars: usize,
    /// Best point, sorted nonincreasing.
    pub point: Vec<f64>,
    pub value: f64,
    pub restarts: usize,
    pub iterations: usize,
    /// KKT residual at `point`.
    pub gradient_norm: f64,
    pub stationary: bool,
    #[serde(serialize_with = "ser_exact")]
    pub exact: Option<BigRational>,
    #[serde(serialize_with = "ser_exact_point")]
    pub exact_point: Option<Vec<BigRational>>,
    /// Bound on `|P(x) - P(y)|` per unit of mass moved between two coordinates.
    pub lipschitz: f64,
    /// Moves of the winning start; indices refer to its unsorted coordinates.
    pub trace: Vec<Move>,
}

fn ser_exact<S: Serializer>(q: &Option<BigRational>, ser: S) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Exact {
        num: String,
        den: String,
        fraction: String,
    }
    match q {
        Some(q) => Exact {
            num: q.numer().to_string(),
            den: q.denom().to_string(),
            fraction: format_rational(q),
        }
        .serialize(ser),
        None => ser.serialize_none(),
    }
}

fn ser_exact_point<S: Serializer>(
    p: &Option<Vec<BigRational>>,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    match p {
        Some(xs) => ser.collect_seq(xs.iter().map(format_rational)),
        None => ser.serialize_none(),
    }
}

fn sorted_desc(x: &[f64]) -> Vec<f64> {
    let mut v = x.to_vec();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

fn equipartition_f64(parts: usize, dim: usize) -> Vec<f64> {
    let mut x = vec![1.0 / parts as f64; parts];
    x.resize(dim, 0.0);
    x
}

fn random_start(seed: u64, stream: u64, dim: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    // exponential spacings give the uniform distribution on the simplex
    let w: Vec<f64> = (0..dim).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let sum: f64 = w.iter().sum();
    w.into_iter().map(|v| v / sum).collect()
}

fn lipschitz(poly: &DensityPolynomial) -> f64 {
    // every monomial has coefficient c and each partial is at most c * s on the simplex
    let c = poly
        .canonical_terms()
        .next()
        .map_or(0.0, |(_, c)| to_f64(&BigRational::from_integer(c.clone())));
    2.0 * poly.degree() as f64 * c * poly.monomial_count() as f64
}

/// Maximizes `poly` over the simplex from equipartition and random starts.
pub fn maximize_on_simplex(poly: &DensityPolynomial, config: &OptimizerConfig) -> Result<OptimizationReport> {
    maximize_with_starts(poly, config, Vec::new())
}

pub(crate) fn maximize_with_starts(
    poly: &DensityPolynomial,
    config: &OptimizerConfig,
    extra: Vec<Vec<f64>>,
) -> Result<OptimizationReport> {
    config.validate()?;
    if poly.is_zero() {
        return Err(Error::Precondition(
            "the density polynomial is identically zero (fewer parts than the target)".into(),
        ));
    }
    let m = poly.vars();
    let r = poly.profile().num_parts();
    let mut starts: Vec<Vec<f64>> = (r..=m).map(|l| equipartition_f64(l, m)).collect();
    let random = config.restarts.saturating_sub(starts.len());
    starts.extend((0..random).map(|i| random_start(config.seed, i as u64, m)));
    starts.extend(extra);
    let restarts = starts.len();

    let runs: Vec<local::LocalRun> = starts
        .into_par_iter()
        .map(|x0| local::Local::new(poly, config).run(x0))
        .collect();
    let iterations = runs.iter().map(|r| r.iterations).sum();

    let stationary_exists = runs.iter().any(|r| r.residual <= config.tolerance);
    let best = runs
        .into_iter()
        .filter(|r| !stationary_exists || r.residual <= config.tolerance)
        .fold(None::<local::LocalRun>, |best, run| match best {
            None => Some(run),
            Some(b) => {
                let scale = b.value.abs().max(1.0) * 1e-12;
                let tied = (run.value - b.value).abs() <= scale;
                if run.value > b.value + scale || (tied && sorted_desc(&run.point) > sorted_desc(&b.point)) {
                    Some(run)
                } else {
                    Some(b)
                }
            }
        })
        .expect("at least one start");

    let mut report = OptimizationReport {
        vars: m,
        point: sorted_desc(&best.point),
        value: best.value,
        restarts,
        iterations,
        gradient_norm: best.residual,
        stationary: best.residual <= config.tolerance,
        exact: None,
        exact_point: None,
        lipschitz: lipschitz(poly),
        trace: best.trace,
    };
    let approx: Option<Vec<BigRational>> = report
        .point
        .iter()
        .map(|&x| approximate_rational(x, CERTIFY_MAX_DEN))
        .collect();
    if let Some(xs) = approx {
        if let Some(v) = certify(poly, &xs, report.value) {
            report.exact = Some(v);
            report.exact_point = Some(xs);
        }
    }
    if !report.stationary {
        return Err(Error::NonConvergence(Box::new(report)));
    }
    Ok(report)
}

/// Exact value at `xs` when it lies on the simplex, is exactly KKT-stationary,
/// and agrees with `numeric` within [`CERTIFY_TOLERANCE`].
pub(crate) fn certify(poly: &DensityPolynomial, xs: &[BigRational], numeric: f64) -> Option<BigRational> {
    if xs.iter().any(Signed::is_negative) || xs.iter().sum::<BigRational>() != BigRational::from_integer(1.into()) {
        return None;
    }
    let value = poly.evaluate_exact(xs).ok()?;
    if (to_f64(&value) - numeric).abs() > CERTIFY_TOLERANCE {
        return None;
    }
    let g = poly.gradient_exact(xs).ok()?;
    let mut on_support = xs.iter().zip(&g).filter(|(x, _)| !x.is_zero()).map(|(_, gi)| gi);
    let lambda = on_support.next()?.clone();
    if on_support.any(|gi| *gi != lambda) {
        return None;
    }
    if xs.iter().zip(&g).any(|(x, gi)| x.is_zero() && *gi > lambda) {
        return None;
    }
    Some(value)
}
