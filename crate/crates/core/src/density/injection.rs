//! Sums over injective placements of the parts of a profile into the parts of
//! a host, grouped by part size so that equal parts are placed once.
//!
//! For a profile with size classes `(n_1, c_1), ..., (n_q, c_q)` and per-host-part
//! weights `w_j(n)`, computes `sum over distinct placements of prod_j w_j(n_{sigma^-1(j)})`.
//! With `w_j(n) = x_j^n` this is the density polynomial divided by its common
//! coefficient; with `w_j(n) = C(|V_j|, n)` it counts induced copies in a
//! complete multipartite host.

use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use crate::profile::PartiteProfile;

/// Mixed-radix layout of "how many parts of each size class are placed".
#[derive(Clone, Debug)]
pub struct PlacementStates {
    sizes: Vec<u32>,
    counts: Vec<usize>,
    strides: Vec<usize>,
    len: usize,
}

impl PlacementStates {
    pub fn new(profile: &PartiteProfile) -> Self {
        let classes = profile.size_classes();
        let mut strides = Vec::with_capacity(classes.len());
        let mut len = 1usize;
        for &(_, count) in &classes {
            strides.push(len);
            len *= count + 1;
        }
        PlacementStates {
            sizes: classes.iter().map(|c| c.0).collect(),
            counts: classes.iter().map(|c| c.1).collect(),
            strides,
            len,
        }
    }

    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    pub fn full(&self) -> usize {
        self.len - 1
    }

    fn used(&self, state: usize, class: usize) -> usize {
        state / self.strides[class] % (self.counts[class] + 1)
    }

    /// State with one fewer part of `class` placed.
    pub fn without(&self, state: usize, class: usize) -> Option<usize> {
        (self.used(state, class) > 0).then(|| state - self.strides[class])
    }

    /// Folds host parts into the placement table; `weights[j][c]` is the weight
    /// of placing a part of size class `c` on host part `j`.
    pub fn table<T>(&self, weights: &[Vec<T>]) -> Vec<T>
    where
        T: Clone + Zero + One + Add<Output = T> + for<'a> Mul<&'a T, Output = T>,
    {
        let mut table = vec![T::zero(); self.len];
        table[0] = T::one();
        for w in weights {
            self.absorb(&mut table, w);
        }
        table
    }

    fn absorb<T>(&self, table: &mut [T], w: &[T])
    where
        T: Clone + Zero + Add<Output = T> + for<'a> Mul<&'a T, Output = T>,
    {
        // descending states read only smaller, not yet updated entries
        for state in (1..self.len).rev() {
            let mut acc = table[state].clone();
            for (c, wc) in w.iter().enumerate() {
                if let Some(prev) = self.without(state, c) {
                    if !table[prev].is_zero() {
                        acc = acc + table[prev].clone() * wc;
                    }
                }
            }
            table[state] = acc;
        }
    }
}

/// Dense univariate polynomial, lowest degree first.
#[derive(Clone, Debug, PartialEq)]
pub struct UPoly<T>(pub Vec<T>);

impl<T: Clone + Zero> UPoly<T> {
    pub fn constant(c: T) -> Self {
        UPoly(vec![c])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.0
    }

    fn trimmed(mut self) -> Self {
        while self.0.len() > 1 && self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }
}

impl<T: Clone + Zero> Zero for UPoly<T> {
    fn zero() -> Self {
        UPoly(vec![T::zero()])
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl<T: Clone + Zero + One + for<'a> Mul<&'a T, Output = T>> One for UPoly<T> {
    fn one() -> Self {
        UPoly(vec![T::one()])
    }
}

impl<T: Clone + Zero> Add for UPoly<T> {
    type Output = UPoly<T>;

    fn add(self, rhs: UPoly<T>) -> UPoly<T> {
        let (mut long, short) = if self.0.len() >= rhs.0.len() { (self, rhs) } else { (rhs, self) };
        for (a, b) in long.0.iter_mut().zip(short.0) {
            *a = a.clone() + b;
        }
        long.trimmed()
    }
}

impl<T: Clone + Zero + Sub<Output = T>> Sub for UPoly<T> {
    type Output = UPoly<T>;

    fn sub(self, rhs: UPoly<T>) -> UPoly<T> {
        let len = self.0.len().max(rhs.0.len());
        let get = |p: &UPoly<T>, i: usize| p.0.get(i).cloned().unwrap_or_else(T::zero);
        UPoly((0..len).map(|i| get(&self, i) - get(&rhs, i)).collect()).trimmed()
    }
}

impl<'b, T: Clone + Zero + for<'a> Mul<&'a T, Output = T>> Mul<&'b UPoly<T>> for UPoly<T> {
    type Output = UPoly<T>;

    fn mul(self, rhs: &'b UPoly<T>) -> UPoly<T> {
        let mut out = vec![T::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b;
            }
        }
        UPoly(out).trimmed()
    }
}

impl<T: Clone + Zero + for<'a> Mul<&'a T, Output = T>> Mul<UPoly<T>> for UPoly<T> {
    type Output = UPoly<T>;

    fn mul(self, rhs: UPoly<T>) -> UPoly<T> {
        self * &rhs
    }
}

impl<T> UPoly<T>
where
    T: Clone + Zero + One + Add<Output = T> + for<'a> Mul<&'a T, Output = T>,
{
    /// Horner evaluation.
    pub fn eval(&self, a: &T) -> T {
        self.0
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * a + c.clone())
    }

    pub fn pow(&self, e: u32) -> UPoly<T> {
        (0..e).fold(UPoly::one(), |acc, _| acc * self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn placements_of_two_equal_parts() {
        // K_{1,1} into three host parts: x1 x2 + x1 x3 + x2 x3
        let p = PartiteProfile::new(vec![1, 1]).unwrap();
        let st = PlacementStates::new(&p);
        let xs = [2.0, 3.0, 5.0];
        let w: Vec<Vec<f64>> = xs.iter().map(|&x| vec![x]).collect();
        assert_eq!(st.table(&w)[st.full()], 6.0 + 10.0 + 15.0);
    }

    #[test]
    fn placements_of_distinct_parts() {
        // K_{2,1} into two host parts: x1^2 x2 + x2^2 x1
        let p = PartiteProfile::new(vec![2, 1]).unwrap();
        let st = PlacementStates::new(&p);
        let w = vec![vec![4.0, 2.0], vec![9.0, 3.0]];
        assert_eq!(st.table(&w)[st.full()], 4.0 * 3.0 + 9.0 * 2.0);
    }

    #[test]
    fn upoly_arithmetic() {
        let a = UPoly(vec![1.0, 1.0]);
        let sq = a.pow(2);
        assert_eq!(sq.coeffs(), &[1.0, 2.0, 1.0]);
        assert_eq!(sq.eval(&3.0), 16.0);
        let d = sq.clone() - UPoly(vec![1.0, 2.0, 1.0]);
        assert!(d.is_zero());
        assert_eq!((sq + UPoly(vec![0.0, 0.0, -1.0])).coeffs(), &[1.0, 2.0]);
    }
}
