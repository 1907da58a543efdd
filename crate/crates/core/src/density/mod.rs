//! Induced density of a complete multipartite `F` in the complete `m`-partite
//! graphon `W[x_1, ..., x_m]`, as an explicit symmetric polynomial.
//!
//! Every monomial of `P_{F,m}` is a permutation of the part sizes of `F`
//! padded with zeros, and every one carries the same coefficient: the number
//! of ways to split `s` labeled points into the parts, `s!/(a_1!...a_r!)`
//! divided by `pi(F)` and multiplied back by the `pi(F)` injections that
//! realize each exponent vector.

mod injection;
mod point;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{binomial, multinomial, pi_factor, BigRational};
use crate::error::{Error, Result};
use crate::graphs::{complete_multipartite, induced_density};
use crate::profile::PartiteProfile;

pub use injection::{PlacementStates, UPoly};
pub use point::{SimplexPoint, NEGATIVE_CLAMP, NUMERIC_SUM_TOLERANCE};

#[derive(Clone, Debug)]
pub struct DensityPolynomial {
    profile: PartiteProfile,
    vars: usize,
    /// Canonical (nonincreasing) exponent vector -> coefficient of each of its permutations.
    canonical: BTreeMap<Vec<u32>, BigInt>,
    states: PlacementStates,
}

#[derive(Clone, Debug, PartialEq)]
pub enum DensityValue {
    Exact(BigRational),
    Numeric(f64),
}

impl DensityValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            DensityValue::Exact(q) => crate::arith::to_f64(q),
            DensityValue::Numeric(v) => *v,
        }
    }
}

/// `P_{F,m}`; the zero polynomial when `m < r`.
pub fn density_polynomial(profile: &PartiteProfile, m: usize) -> Result<DensityPolynomial> {
    if m == 0 {
        return Err(Error::Domain("the graphon needs at least one part".into()));
    }
    let mut canonical = BTreeMap::new();
    if m >= profile.num_parts() {
        let mut exponents = profile.parts().to_vec();
        exponents.resize(m, 0);
        // injections sigma: [r] -> [m] producing this exponent vector permute equal parts
        let injections = pi_factor(profile);
        let coeff = multinomial(profile) / pi_factor(profile) * injections;
        canonical.insert(exponents, coeff);
    }
    Ok(DensityPolynomial {
        profile: profile.clone(),
        vars: m,
        canonical,
        states: PlacementStates::new(profile),
    })
}

impl DensityPolynomial {
    pub fn profile(&self) -> &PartiteProfile {
        &self.profile
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn degree(&self) -> u32 {
        self.profile.vertices()
    }

    pub fn is_zero(&self) -> bool {
        self.canonical.is_empty()
    }

    /// Canonical exponent vectors and their per-monomial coefficients.
    pub fn canonical_terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.canonical.iter()
    }

    fn common_coefficient(&self) -> Option<&BigInt> {
        self.canonical.values().next()
    }

    /// Every monomial `(coefficient, exponents)`, sorted lexicographically by exponents.
    pub fn monomials(&self) -> Vec<(BigInt, Vec<u32>)> {
        let mut out = Vec::new();
        for (exps, coeff) in &self.canonical {
            let mut perm = exps.clone();
            perm.sort_unstable();
            loop {
                out.push((coeff.clone(), perm.clone()));
                if !next_permutation(&mut perm) {
                    break;
                }
            }
        }
        out.sort_by(|a, b| a.1.cmp(&b.1));
        out
    }

    pub fn monomial_count(&self) -> usize {
        self.canonical
            .keys()
            .map(|e| distinct_permutations(e))
            .sum()
    }

    /// `coeff e1 ... em` per line, monomials in lexicographic exponent order.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (coeff, exps) in self.monomials() {
            out.push_str(&coeff.to_string());
            for e in exps {
                out.push(' ');
                out.push_str(&e.to_string());
            }
            out.push('\n');
        }
        out
    }

    fn check_dim(&self, got: usize) -> Result<()> {
        if got != self.vars {
            Err(Error::Dimension { expected: self.vars, got })
        } else {
            Ok(())
        }
    }

    pub fn evaluate(&self, point: &SimplexPoint) -> Result<DensityValue> {
        match point {
            SimplexPoint::Exact(xs) => self.evaluate_exact(xs).map(DensityValue::Exact),
            SimplexPoint::Numeric(xs) => self.evaluate_numeric(xs).map(DensityValue::Numeric),
        }
    }

    /// Exact value by expanding the symmetric closure of every canonical term.
    pub fn evaluate_exact(&self, xs: &[BigRational]) -> Result<BigRational> {
        self.check_dim(xs.len())?;
        let max_exp = self.profile.parts()[0] as usize;
        let powers: Vec<Vec<BigRational>> = xs
            .iter()
            .map(|x| {
                let mut p = vec![BigRational::one()];
                for _ in 0..max_exp {
                    let next = p.last().expect("nonempty").clone() * x;
                    p.push(next);
                }
                p
            })
            .collect();
        let mut total = BigRational::zero();
        for (exps, coeff) in &self.canonical {
            let mut perm = exps.clone();
            perm.sort_unstable();
            let mut sum = BigRational::zero();
            loop {
                let mut term = BigRational::one();
                for (j, &e) in perm.iter().enumerate() {
                    if e > 0 {
                        term *= &powers[j][e as usize];
                        if term.is_zero() {
                            break;
                        }
                    }
                }
                sum += term;
                if !next_permutation(&mut perm) {
                    break;
                }
            }
            total += sum * BigRational::from_integer(coeff.clone());
        }
        Ok(total)
    }

    /// Exact value through the placement recursion instead of monomial expansion.
    pub fn evaluate_exact_by_placements(&self, xs: &[BigRational]) -> Result<BigRational> {
        self.check_dim(xs.len())?;
        let Some(coeff) = self.common_coefficient() else {
            return Ok(BigRational::zero());
        };
        let weights: Vec<Vec<BigRational>> = xs
            .iter()
            .map(|x| self.states.sizes().iter().map(|&n| num_traits::pow(x.clone(), n as usize)).collect())
            .collect();
        let table = self.states.table(&weights);
        Ok(table[self.states.full()].clone() * BigRational::from_integer(coeff.clone()))
    }

    fn coefficient_f64(&self) -> f64 {
        self.common_coefficient()
            .map(|c| crate::arith::to_f64(&BigRational::from_integer(c.clone())))
            .unwrap_or(0.0)
    }

    fn numeric_weights(&self, xs: &[f64]) -> Vec<Vec<f64>> {
        xs.iter()
            .map(|&x| self.states.sizes().iter().map(|&n| x.powi(n as i32)).collect())
            .collect()
    }

    pub fn evaluate_numeric(&self, xs: &[f64]) -> Result<f64> {
        self.check_dim(xs.len())?;
        if self.is_zero() {
            return Ok(0.0);
        }
        let table = self.states.table(&self.numeric_weights(xs));
        Ok(table[self.states.full()] * self.coefficient_f64())
    }

    /// `dP/dx_j` at `xs`.
    pub fn gradient(&self, xs: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(xs.len())?;
        let m = xs.len();
        if self.is_zero() {
            return Ok(vec![0.0; m]);
        }
        let weights = self.numeric_weights(xs);
        let coeff = self.coefficient_f64();
        let full = self.states.full();
        let sizes = self.states.sizes();
        let mut grad = vec![0.0; m];
        for (j, g) in grad.iter_mut().enumerate() {
            let others: Vec<Vec<f64>> = (0..m).filter(|&k| k != j).map(|k| weights[k].clone()).collect();
            let table = self.states.table(&others);
            let mut acc = 0.0;
            for (c, &n) in sizes.iter().enumerate() {
                if let Some(prev) = self.states.without(full, c) {
                    acc += n as f64 * xs[j].powi(n as i32 - 1) * table[prev];
                }
            }
            *g = acc * coeff;
        }
        Ok(grad)
    }

    /// Second partial derivatives at `xs`.
    pub fn hessian(&self, xs: &[f64]) -> Result<Vec<Vec<f64>>> {
        self.check_dim(xs.len())?;
        let m = xs.len();
        let mut h = vec![vec![0.0; m]; m];
        if self.is_zero() {
            return Ok(h);
        }
        let weights = self.numeric_weights(xs);
        let coeff = self.coefficient_f64();
        let full = self.states.full();
        let sizes = self.states.sizes();
        let d1 = |n: u32, x: f64| n as f64 * x.powi(n as i32 - 1);
        for j in 0..m {
            let others: Vec<Vec<f64>> = (0..m).filter(|&k| k != j).map(|k| weights[k].clone()).collect();
            let table = self.states.table(&others);
            let mut acc = 0.0;
            for (c, &n) in sizes.iter().enumerate() {
                if n >= 2 {
                    if let Some(prev) = self.states.without(full, c) {
                        acc += (n * (n - 1)) as f64 * xs[j].powi(n as i32 - 2) * table[prev];
                    }
                }
            }
            h[j][j] = acc * coeff;
            for k in j + 1..m {
                let others: Vec<Vec<f64>> = (0..m)
                    .filter(|&l| l != j && l != k)
                    .map(|l| weights[l].clone())
                    .collect();
                let table = self.states.table(&others);
                let mut acc = 0.0;
                for (c, &n) in sizes.iter().enumerate() {
                    let Some(s1) = self.states.without(full, c) else { continue };
                    for (c2, &n2) in sizes.iter().enumerate() {
                        if let Some(s2) = self.states.without(s1, c2) {
                            acc += d1(n, xs[j]) * d1(n2, xs[k]) * table[s2];
                        }
                    }
                }
                h[j][k] = acc * coeff;
                h[k][j] = h[j][k];
            }
        }
        Ok(h)
    }

    /// Exact gradient, used to certify rational stationary points.
    pub fn gradient_exact(&self, xs: &[BigRational]) -> Result<Vec<BigRational>> {
        self.check_dim(xs.len())?;
        let m = xs.len();
        let Some(coeff) = self.common_coefficient() else {
            return Ok(vec![BigRational::zero(); m]);
        };
        let coeff = BigRational::from_integer(coeff.clone());
        let sizes = self.states.sizes();
        let weights: Vec<Vec<BigRational>> = xs
            .iter()
            .map(|x| sizes.iter().map(|&n| num_traits::pow(x.clone(), n as usize)).collect())
            .collect();
        let full = self.states.full();
        (0..m)
            .map(|j| {
                let others: Vec<Vec<BigRational>> =
                    (0..m).filter(|&k| k != j).map(|k| weights[k].clone()).collect();
                let table = self.states.table(&others);
                let mut acc = BigRational::zero();
                for (c, &n) in sizes.iter().enumerate() {
                    if let Some(prev) = self.states.without(full, c) {
                        acc += BigRational::from_integer(n.into())
                            * num_traits::pow(xs[j].clone(), n as usize - 1)
                            * &table[prev];
                    }
                }
                Ok(acc * &coeff)
            })
            .collect()
    }

    /// `Q(a) = P(p(a))` where coordinate `i` carries `a (x_i + x_j)` and
    /// coordinate `j` carries `(1 - a)(x_i + x_j)`.
    pub fn split_restriction(
        &self,
        point: &SimplexPoint,
        i: usize,
        j: usize,
    ) -> Result<UnivariateRestriction> {
        let xs = match point {
            SimplexPoint::Exact(xs) => xs.clone(),
            SimplexPoint::Numeric(_) => {
                return Err(Error::Precondition(
                    "exact restriction needs an exact point; use split_restriction_numeric".into(),
                ))
            }
        };
        self.check_dim(xs.len())?;
        self.check_pair(i, j)?;
        let mass = xs[i].clone() + &xs[j];
        let coeffs = self.restriction_table(&xs, i, j, &mass, BigRational::from_integer);
        Ok(UnivariateRestriction { coeffs: coeffs.0, mass, i, j })
    }

    /// Floating-point counterpart of [`split_restriction`](Self::split_restriction).
    pub fn split_restriction_numeric(&self, xs: &[f64], i: usize, j: usize) -> Result<UPoly<f64>> {
        self.check_dim(xs.len())?;
        self.check_pair(i, j)?;
        let mass = xs[i] + xs[j];
        Ok(self.restriction_table(xs, i, j, &mass, |c| {
            crate::arith::to_f64(&BigRational::from_integer(c))
        }))
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        if i >= self.vars || j >= self.vars || i == j {
            return Err(Error::Index(format!(
                "split indices ({i}, {j}) invalid for {} variables",
                self.vars
            )));
        }
        Ok(())
    }

    fn restriction_table<T>(
        &self,
        xs: &[T],
        i: usize,
        j: usize,
        mass: &T,
        lift: impl Fn(BigInt) -> T,
    ) -> UPoly<T>
    where
        T: Clone + Zero + One + std::ops::Add<Output = T> + std::ops::Sub<Output = T> + for<'a> std::ops::Mul<&'a T, Output = T>,
    {
        let Some(coeff) = self.common_coefficient() else {
            return UPoly::zero();
        };
        let sizes = self.states.sizes();
        let a = UPoly(vec![T::zero(), mass.clone()]);
        let b = UPoly(vec![mass.clone(), T::zero() - mass.clone()]);
        let weights: Vec<Vec<UPoly<T>>> = xs
            .iter()
            .enumerate()
            .map(|(k, x)| {
                sizes
                    .iter()
                    .map(|&n| {
                        if k == i {
                            a.pow(n)
                        } else if k == j {
                            b.pow(n)
                        } else {
                            UPoly::constant(pow_generic(x, n))
                        }
                    })
                    .collect()
            })
            .collect();
        let table = self.states.table(&weights);
        let c = UPoly::constant(lift(coeff.clone()));
        table[self.states.full()].clone() * &c
    }
}

fn pow_generic<T: Clone + One + for<'a> std::ops::Mul<&'a T, Output = T>>(x: &T, n: u32) -> T {
    (0..n).fold(T::one(), |acc, _| acc * x)
}

/// Exact coefficients of `Q(a)`, lowest degree first.
#[derive(Clone, Debug, PartialEq)]
pub struct UnivariateRestriction {
    pub coeffs: Vec<BigRational>,
    /// `x_i + x_j`.
    pub mass: BigRational,
    pub i: usize,
    pub j: usize,
}

impl UnivariateRestriction {
    pub fn eval(&self, a: &BigRational) -> BigRational {
        UPoly(self.coeffs.clone()).eval(a)
    }

    /// Coefficients of `Q(1 - a)`.
    pub fn reflected(&self) -> Vec<BigRational> {
        let one_minus = UPoly(vec![BigRational::one(), -BigRational::one()]);
        let mut acc = UPoly::<BigRational>::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            acc = acc + one_minus.pow(k as u32) * &UPoly::constant(c.clone());
        }
        let mut out = acc.0;
        out.resize(self.coeffs.len().max(1), BigRational::zero());
        out
    }

    pub fn is_symmetric(&self) -> bool {
        let mut mine = self.coeffs.clone();
        let mut refl = self.reflected();
        let len = mine.len().max(refl.len());
        mine.resize(len, BigRational::zero());
        refl.resize(len, BigRational::zero());
        mine == refl
    }
}

/// Exact density of `F` in the complete multipartite graph with parts `n * x_i`.
pub fn finite_approximation(
    profile: &PartiteProfile,
    point: &[BigRational],
    n: u64,
) -> Result<BigRational> {
    let scale = BigRational::from_integer(n.into());
    let mut sizes = Vec::new();
    for x in point {
        let part = x * &scale;
        if !part.is_integer() {
            return Err(Error::Precondition(format!(
                "n * x = {part} is not an integer"
            )));
        }
        let size: u64 = part
            .to_integer()
            .try_into()
            .map_err(|_| Error::Precondition("part size out of range".into()))?;
        if size > 0 {
            sizes.push(size as u32);
        }
    }
    let host = PartiteProfile::new(sizes)?;
    if host.vertices() as u64 != n {
        return Err(Error::Precondition("point does not sum to one".into()));
    }
    let f = complete_multipartite(profile)?;
    let g = complete_multipartite(&host)?;
    Ok(induced_density(&f, &g))
}

/// Induced copies of `K_profile` in the complete multipartite graph with the given part sizes.
pub fn copies_in_complete_multipartite(profile: &PartiteProfile, host_parts: &[u64]) -> BigInt {
    let states = PlacementStates::new(profile);
    let weights: Vec<Vec<BigInt>> = host_parts
        .iter()
        .map(|&h| states.sizes().iter().map(|&n| binomial(h, n as u64)).collect())
        .collect();
    states.table(&weights)[states.full()].clone()
}

pub(crate) fn next_permutation(perm: &mut [u32]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

fn distinct_permutations(exps: &[u32]) -> usize {
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for &e in exps {
        *counts.entry(e).or_default() += 1;
    }
    let mut total: u128 = 1;
    let mut placed = 0u64;
    for &c in counts.values() {
        placed += c as u64;
        total *= u128::try_from(binomial(placed, c as u64)).unwrap_or(u128::MAX);
    }
    total as usize
}
