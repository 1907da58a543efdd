//! Exact integer and rational helpers shared by every other module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::profile::PartiteProfile;

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        // exact at every step: acc = C(n, i) * (n - i) / (i + 1) is C(n, i + 1)
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `s! / (a_1! ... a_r!)` for the parts of the profile.
pub fn multinomial(profile: &PartiteProfile) -> BigInt {
    let mut acc = BigInt::one();
    let mut placed = 0u64;
    for &a in profile.parts() {
        placed += a as u64;
        acc *= binomial(placed, a as u64);
    }
    acc
}

/// `prod_n c(n)!` where `c(n)` is the number of parts of size exactly `n`.
pub fn pi_factor(profile: &PartiteProfile) -> BigInt {
    profile
        .size_classes()
        .iter()
        .fold(BigInt::one(), |acc, &(_, count)| acc * factorial(count as u64))
}

/// The generic lower bound `r! / (r^r - r)` for an `r`-vertex target.
pub fn generic_lower_bound(r: u32) -> Result<BigRational> {
    if r < 2 {
        return Err(Error::Domain(format!(
            "generic lower bound needs r >= 2, got {r}"
        )));
    }
    let rr = BigInt::from(r);
    let denom = num_traits::pow(rr.clone(), r as usize) - rr;
    Ok(BigRational::new(factorial(r as u64), denom))
}

/// Lower bound on the induced copies of an `r`-vertex `F` in its nested
/// blowup of depth `s`: `r^(s-1) (r^(s(r-1)) - 1) / (r^(r-1) - 1)`.
pub fn nested_blowup_bound(r: u32, s: u32) -> Result<BigInt> {
    if r < 2 || s == 0 {
        return Err(Error::Domain(format!("need r >= 2 and s >= 1, got r={r}, s={s}")));
    }
    let rr = BigInt::from(r);
    let num = num_traits::pow(rr.clone(), (s * (r - 1)) as usize) - 1;
    let den = num_traits::pow(rr.clone(), (r - 1) as usize) - 1;
    Ok(num_traits::pow(rr, (s - 1) as usize) * num / den)
}

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

pub fn rational_from_u64(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Lossy conversion for reporting; exact paths never call this.
pub fn to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    match q.to_f64() {
        Some(v) if v.is_finite() => v,
        _ => {
            // numerator/denominator too large for direct conversion: scale down first
            let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(1000);
            let n = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

/// `"num/den"` in lowest terms; integers still carry `/1`.
pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn is_reduced(q: &BigRational) -> bool {
    q.denom() > &BigInt::zero() && q.numer().gcd(q.denom()).is_one()
}

/// Best rational approximation of `x` with denominator at most `max_den`
/// (continued fraction convergents and semiconvergents).
pub fn approximate_rational(x: f64, max_den: u64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let negative = x < 0.0;
    let mut frac = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (0u128, 1u128, 1u128, 0u128);
    for _ in 0..64 {
        let a = frac.floor();
        if a > u64::MAX as f64 {
            break;
        }
        let a = a as u128;
        let p2 = a * p1 + p0;
        let q2 = a * q1 + q0;
        if q2 > max_den as u128 {
            // largest admissible semiconvergent
            let k = (max_den as u128 - q0) / q1.max(1);
            let ps = k * p1 + p0;
            let qs = k * q1 + q0;
            if qs > 0 && q1 > 0 {
                let cand_s = ps as f64 / qs as f64;
                let cand_c = p1 as f64 / q1 as f64;
                if (cand_s - x.abs()).abs() < (cand_c - x.abs()).abs() {
                    p1 = ps;
                    q1 = qs;
                }
            }
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let rest = frac - a as f64;
        if rest < 1e-16 {
            break;
        }
        frac = 1.0 / rest;
    }
    if q1 == 0 {
        return None;
    }
    let num = BigInt::from(p1);
    let num = if negative { -num } else { num };
    Some(BigRational::new(num, BigInt::from(q1)))
}
