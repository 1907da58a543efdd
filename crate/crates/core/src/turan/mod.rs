//! Inducibility of Turán graphs `T(s, r)` through the equipartite graphon on
//! `ell = min(k - 1, t)` parts, where `t` is the last `ell` at which
//! `g(ell)/g(ell - 1) > 1`.

mod bipartite;
mod certify;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::arith::{factorial, format_rational, BigRational};
use crate::density::SimplexPoint;
use crate::error::{Error, Result};
use crate::profile::PartiteProfile;

pub use bipartite::{bipartite_inducibility, BipartiteOptimum};
pub use certify::{certifier, certifiers, Certificate, TuranCertifier};

const SCAN_CAP: u64 = 10_000_000;

/// Number of parts of the optimal equipartite graphon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Threshold {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::Finite(t) => write!(f, "{t}"),
            Threshold::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for Threshold {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Threshold::Finite(t) => ser.serialize_u64(*t),
            Threshold::Infinite => ser.serialize_str("infinite"),
        }
    }
}

fn check_sr(s: u32, r: u32) -> Result<()> {
    if r < 2 || r > s {
        return Err(Error::Domain(format!("need 2 <= r <= s, got s={s}, r={r}")));
    }
    Ok(())
}

/// Density of `T(s, r)` in the equipartite graphon on `ell` parts.
pub fn g_value(s: u32, r: u32, ell: u64) -> Result<BigRational> {
    check_sr(s, r)?;
    if ell < r as u64 {
        return Err(Error::Domain(format!("ell={ell} is below r={r}")));
    }
    let (p, q) = ((s / r) as u64, (s % r) as u64);
    let r = r as u64;
    let falling: BigInt = (ell - r + 1..=ell).map(BigInt::from).product();
    let num = falling * factorial(s as u64);
    let den = factorial(r - q)
        * factorial(q)
        * num_traits::pow(factorial(p), r as usize)
        * num_traits::pow(BigInt::from(p + 1), q as usize)
        * num_traits::pow(BigInt::from(ell), s as usize);
    Ok(BigRational::new(num, den))
}

/// `g(ell)/g(ell - 1) = (ell/(ell - r)) (1 - 1/ell)^s`.
pub fn f_ratio(s: u32, r: u32, ell: u64) -> Result<BigRational> {
    check_sr(s, r)?;
    if ell <= r as u64 {
        return Err(Error::Domain(format!("ell={ell} must exceed r={r}")));
    }
    let e = BigInt::from(ell);
    Ok(BigRational::new(
        e.clone() * num_traits::pow(&e - 1, s as usize),
        (&e - r) * num_traits::pow(e, s as usize),
    ))
}

fn ratio_exceeds_one(s: u32, r: u32, ell: u64) -> bool {
    let e = BigInt::from(ell);
    &e * num_traits::pow(&e - 1, s as usize) > (&e - r) * num_traits::pow(e, s as usize)
}

/// Largest `ell` with `f(ell) > 1`, or `r` when there is none; infinite for `s = r`.
pub fn threshold_t(s: u32, r: u32) -> Result<Threshold> {
    check_sr(s, r)?;
    if s == r {
        return Ok(Threshold::Infinite);
    }
    let mut ell = r as u64 + 1;
    while ell <= SCAN_CAP {
        if !ratio_exceeds_one(s, r, ell) {
            return Ok(Threshold::Finite(ell - 1));
        }
        ell += 1;
    }
    Err(Error::Internal(format!(
        "threshold scan for T({s},{r}) passed {SCAN_CAP}"
    )))
}

/// `(1 + 1/r)^s (1 - s/(floor(s/r)(r + 1)))`.
pub fn bs_lhs(s: u32, r: u32) -> Result<BigRational> {
    if r < 2 || r >= s {
        return Err(Error::Domain(format!("need 2 <= r < s, got s={s}, r={r}")));
    }
    let rr = BigInt::from(r);
    let grow = BigRational::new(num_traits::pow(&rr + 1, s as usize), num_traits::pow(rr.clone(), s as usize));
    let p = BigInt::from(s / r);
    Ok(grow * (BigRational::one() - BigRational::new(BigInt::from(s), p * (rr + 1))))
}

/// Whether [`bs_lhs`] exceeds 1.
pub fn bs_condition(s: u32, r: u32) -> Result<bool> {
    Ok(bs_lhs(s, r)? > BigRational::one())
}

#[derive(Clone, Debug, Serialize)]
pub struct TuranResult {
    pub s: u32,
    pub r: u32,
    /// Forbidden clique size; absent for the unrestricted inducibility.
    pub k: Option<u32>,
    pub t: Threshold,
    /// Parts of the equipartite graphon used.
    pub ell: Option<u64>,
    #[serde(serialize_with = "ser_rational")]
    pub value: BigRational,
    pub value_float: f64,
    #[serde(serialize_with = "ser_point")]
    pub graphon: Option<SimplexPoint>,
    pub certificate: Certificate,
    /// False when the value is a supremum not reached by any finite-part graphon.
    pub attained: bool,
    /// False for conjectural results.
    pub proven: bool,
}

fn ser_rational<S: Serializer>(q: &BigRational, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&format_rational(q))
}

fn ser_point<S: Serializer>(p: &Option<SimplexPoint>, ser: S) -> std::result::Result<S::Ok, S::Error> {
    match p {
        Some(SimplexPoint::Exact(xs)) => ser.collect_seq(xs.iter().map(format_rational)),
        Some(SimplexPoint::Numeric(xs)) => ser.collect_seq(xs.iter().map(|x| x.to_string())),
        None => ser.serialize_none(),
    }
}

/// `i_k(T(s, r))`, or `i(T(s, r))` when `k` is absent.
pub fn inducibility_turan(s: u32, r: u32, k: Option<u32>) -> Result<TuranResult> {
    check_sr(s, r)?;
    let cert = certifiers()
        .iter()
        .find(|c| c.applies(s, r))
        .ok_or_else(|| Error::Internal("no certifier applies".into()))?;
    let t = cert.threshold(s, r)?;
    let mut result = TuranResult {
        s,
        r,
        k,
        t,
        ell: None,
        value: BigRational::zero(),
        value_float: 0.0,
        graphon: None,
        certificate: cert.certificate(),
        attained: true,
        proven: cert.certificate() != Certificate::Conjectural,
    };
    if let Some(k) = k {
        if k <= r {
            result.certificate = Certificate::TrivialZero;
            result.proven = true;
            if k >= 2 {
                result.ell = Some(k as u64 - 1);
                result.graphon = Some(SimplexPoint::equipartition(k as usize - 1, k as usize - 1)?);
            }
            return Ok(result);
        }
    }
    let ell = match (k, t) {
        (Some(k), Threshold::Finite(t)) => Some(t.min(k as u64 - 1)),
        (Some(k), Threshold::Infinite) => Some(k as u64 - 1),
        (None, Threshold::Finite(t)) => Some(t),
        (None, Threshold::Infinite) => None,
    };
    match ell {
        Some(ell) => {
            result.value = g_value(s, r, ell)?;
            result.ell = Some(ell);
            result.graphon = Some(SimplexPoint::equipartition(ell as usize, ell as usize)?);
        }
        None => {
            result.value = BigRational::one();
            result.attained = false;
        }
    }
    result.value_float = crate::arith::to_f64(&result.value);
    Ok(result)
}

/// Every `T(s, r)` with `3 <= s <= 14`, `2 <= r < s`, sorted by `(s, r)`.
pub fn table14() -> Result<Vec<TuranResult>> {
    let pairs: Vec<(u32, u32)> = (3..=14).flat_map(|s| (2..s).map(move |r| (s, r))).collect();
    pairs
        .into_par_iter()
        .map(|(s, r)| inducibility_turan(s, r, None))
        .collect()
}

pub const TABLE_CSV_HEADER: &str = "s,r,t,numerator,denominator,certificate";

pub fn table_csv(rows: &[TuranResult]) -> String {
    let mut out = String::from(TABLE_CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.s,
            row.r,
            row.t,
            row.value.numer(),
            row.value.denom(),
            row.certificate
        ));
    }
    out
}

/// Inducibility of a disjoint union of cliques, through its complement `K_{sizes}`.
pub fn inducibility_clique_union(clique_sizes: &[u32]) -> Result<TuranResult> {
    let profile = PartiteProfile::new(clique_sizes.to_vec())?;
    let s = profile.vertices();
    if profile.num_parts() == 1 {
        return inducibility_turan(s, s, None);
    }
    if !profile.is_turan() {
        return Err(Error::Domain(format!(
            "complement {profile} is not a Turán graph"
        )));
    }
    inducibility_turan(s, profile.num_parts() as u32, None)
}

#[cfg(test)]
mod tests;
