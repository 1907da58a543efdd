use num_traits::{Signed, Zero};

use crate::arith::{ratio, to_f64, BigRational};
use crate::error::{Error, Result};

/// Numeric points must sum to one within this.
pub const NUMERIC_SUM_TOLERANCE: f64 = 1e-12;
/// Slightly negative numeric coordinates at or above `-NEGATIVE_CLAMP` are clamped to zero.
pub const NEGATIVE_CLAMP: f64 = 1e-15;

/// Part sizes `(x_1, ..., x_m)` of a complete multipartite graphon.
#[derive(Clone, Debug, PartialEq)]
pub enum SimplexPoint {
    Exact(Vec<BigRational>),
    Numeric(Vec<f64>),
}

impl SimplexPoint {
    pub fn exact(coords: Vec<BigRational>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Domain("empty simplex point".into()));
        }
        if coords.iter().any(Signed::is_negative) {
            return Err(Error::Domain("negative coordinate".into()));
        }
        let sum: BigRational = coords.iter().sum();
        if sum != BigRational::from_integer(1.into()) {
            return Err(Error::Domain(format!("coordinates sum to {sum}, not 1")));
        }
        Ok(SimplexPoint::Exact(coords))
    }

    pub fn numeric(mut coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Domain("empty simplex point".into()));
        }
        for x in coords.iter_mut() {
            if !x.is_finite() || *x < -NEGATIVE_CLAMP {
                return Err(Error::Domain(format!("coordinate {x} outside the simplex")));
            }
            if *x < 0.0 {
                *x = 0.0;
            }
        }
        let sum: f64 = coords.iter().sum();
        if (sum - 1.0).abs() > NUMERIC_SUM_TOLERANCE {
            return Err(Error::Domain(format!("coordinates sum to {sum}, not 1")));
        }
        Ok(SimplexPoint::Numeric(coords))
    }

    /// `(1/parts, ..., 1/parts, 0, ..., 0)` in dimension `dim`.
    pub fn equipartition(parts: usize, dim: usize) -> Result<Self> {
        if parts == 0 || parts > dim {
            return Err(Error::Domain(format!(
                "cannot spread over {parts} parts in dimension {dim}"
            )));
        }
        let share = ratio(1, parts as u64);
        let mut coords = vec![share; parts];
        coords.resize(dim, BigRational::zero());
        Ok(SimplexPoint::Exact(coords))
    }

    pub fn dim(&self) -> usize {
        match self {
            SimplexPoint::Exact(xs) => xs.len(),
            SimplexPoint::Numeric(xs) => xs.len(),
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            SimplexPoint::Exact(xs) => xs.iter().map(to_f64).collect(),
            SimplexPoint::Numeric(xs) => xs.clone(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, SimplexPoint::Exact(_))
    }
}
