use num_bigint::BigInt;
use rayon::prelude::*;

use super::{pair_index, predicates::is_isomorphic, Graph};
use crate::arith::{binomial, BigRational};
use crate::error::{Error, Result};

/// Largest target order matched through a precomputed table of labeled codes.
const TABLE_ORDER: usize = 7;

/// Decides whether a vertex subset induces a copy of some member of a target family.
pub struct InducedMatcher {
    order: usize,
    kind: MatcherKind,
}

enum MatcherKind {
    /// Bit `c` set iff the labeled graph with code `c` is isomorphic to a member.
    Table(Vec<u64>),
    Search(Vec<Graph>),
}

impl InducedMatcher {
    pub fn new(family: &[Graph]) -> Result<Self> {
        let order = family
            .first()
            .map(Graph::order)
            .ok_or_else(|| Error::Precondition("empty target family".into()))?;
        if family.iter().any(|f| f.order() != order) {
            return Err(Error::Precondition(
                "family members must share a vertex count".into(),
            ));
        }
        let kind = if order <= TABLE_ORDER {
            let bits = order * order.saturating_sub(1) / 2;
            let mut table = vec![0u64; (1usize << bits).div_ceil(64)];
            for member in family {
                let mut perm: Vec<usize> = (0..order).collect();
                loop {
                    let code = member.permuted(&perm).code() as usize;
                    table[code / 64] |= 1 << (code % 64);
                    if !next_permutation(&mut perm) {
                        break;
                    }
                }
            }
            MatcherKind::Table(table)
        } else {
            MatcherKind::Search(family.to_vec())
        };
        Ok(InducedMatcher { order, kind })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Membership of a labeled `order`-vertex graph given by its code, when a table is available.
    pub fn contains_code(&self, code: u64) -> Option<bool> {
        match &self.kind {
            MatcherKind::Table(table) => Some(table[code as usize / 64] >> (code % 64) & 1 == 1),
            MatcherKind::Search(_) => None,
        }
    }

    fn matches(&self, g: &Graph, mask: u64, code: u64) -> bool {
        match &self.kind {
            MatcherKind::Table(table) => table[code as usize / 64] >> (code % 64) & 1 == 1,
            MatcherKind::Search(members) => {
                let sub = g.induced(mask);
                members.iter().any(|m| is_isomorphic(m, &sub))
            }
        }
    }

    /// Calls `visit(mask)` for every matching `order`-subset of `V(g)` whose
    /// smallest vertex is `first`.
    fn scan_from<F: FnMut(u64)>(&self, g: &Graph, first: usize, visit: &mut F) {
        let k = self.order;
        let mut chosen = Vec::with_capacity(k);
        chosen.push(first);
        self.extend(g, &mut chosen, 1u64 << first, 0, visit);
    }

    fn extend<F: FnMut(u64)>(
        &self,
        g: &Graph,
        chosen: &mut Vec<usize>,
        mask: u64,
        code: u64,
        visit: &mut F,
    ) {
        let k = self.order;
        if chosen.len() == k {
            if self.matches(g, mask, code) {
                visit(mask);
            }
            return;
        }
        let pos = chosen.len();
        let last = *chosen.last().expect("nonempty");
        let remaining = k - pos;
        for v in last + 1..=g.order() - remaining {
            let mut next_code = code;
            if k <= TABLE_ORDER {
                for (i, &u) in chosen.iter().enumerate() {
                    if g.has_edge(u, v) {
                        next_code |= 1 << pair_index(i, pos);
                    }
                }
            }
            chosen.push(v);
            self.extend(g, chosen, mask | 1 << v, next_code, visit);
            chosen.pop();
        }
    }

    /// Number of matching subsets.
    pub fn count(&self, g: &Graph) -> u64 {
        let k = self.order;
        if k > g.order() {
            return 0;
        }
        if k == 0 {
            return 1;
        }
        (0..=g.order() - k)
            .into_par_iter()
            .map(|first| {
                let mut c = 0u64;
                self.scan_from(g, first, &mut |_| c += 1);
                c
            })
            .sum()
    }

    /// Per-vertex number of matching subsets through that vertex.
    pub fn per_vertex(&self, g: &Graph) -> Vec<u64> {
        let n = g.order();
        let k = self.order;
        if k > n || k == 0 {
            return vec![0; n];
        }
        (0..=n - k)
            .into_par_iter()
            .map(|first| {
                let mut local = vec![0u64; n];
                self.scan_from(g, first, &mut |mask| {
                    let mut m = mask;
                    while m != 0 {
                        local[m.trailing_zeros() as usize] += 1;
                        m &= m - 1;
                    }
                });
                local
            })
            .reduce(
                || vec![0u64; n],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            )
    }
}

pub(crate) fn next_permutation(perm: &mut [usize]) -> bool {
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

/// Number of `|V(F)|`-subsets of `V(G)` inducing a copy of `F`; zero when `F` is larger.
pub fn count_induced(f: &Graph, g: &Graph) -> BigInt {
    if f.order() > g.order() {
        return BigInt::from(0);
    }
    let matcher = InducedMatcher::new(std::slice::from_ref(f)).expect("singleton family");
    BigInt::from(matcher.count(g))
}

/// `count_induced(F, G) / C(|V(G)|, |V(F)|)`, exact.
pub fn induced_density(f: &Graph, g: &Graph) -> BigRational {
    if f.order() > g.order() {
        return BigRational::from_integer(BigInt::from(0));
    }
    let total = binomial(g.order() as u64, f.order() as u64);
    BigRational::new(count_induced(f, g), total)
}

/// `s(v)` for every vertex: induced copies of family members through `v`,
/// plus the total copy count.
pub fn per_vertex_copies(g: &Graph, family: &[Graph]) -> Result<(Vec<u64>, u64)> {
    let matcher = InducedMatcher::new(family)?;
    let per = matcher.per_vertex(g);
    let total = if matcher.order() == 0 {
        1
    } else {
        per.iter().sum::<u64>() / matcher.order() as u64
    };
    Ok((per, total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::complete_multipartite;
    use crate::profile::PartiteProfile;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cm(parts: &[u32]) -> Graph {
        complete_multipartite(&PartiteProfile::new(parts.to_vec()).unwrap()).unwrap()
    }

    /// Independent oracle: test every subset with an explicit isomorphism search.
    fn brute_count(f: &Graph, g: &Graph) -> u64 {
        let (k, n) = (f.order(), g.order());
        (0u64..1 << n)
            .filter(|m| m.count_ones() as usize == k)
            .filter(|&m| is_isomorphic(f, &g.induced(m)))
            .count() as u64
    }

    #[test]
    fn count_examples() {
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(count_induced(&k3, &k3), BigInt::from(1));
        assert_eq!(count_induced(&k3, &cm(&[2, 2, 1])), BigInt::from(4));
        assert_eq!(count_induced(&cm(&[2, 1]), &Graph::cycle(4).unwrap()), BigInt::from(4));
        assert_eq!(count_induced(&Graph::complete(5).unwrap(), &k3), BigInt::from(0));
    }

    #[test]
    fn density_examples() {
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(
            induced_density(&k3, &cm(&[2, 2, 1])),
            BigRational::new(2.into(), 5.into())
        );
        let g = Graph::cycle(6).unwrap();
        assert_eq!(induced_density(&g, &g), BigRational::from_integer(1.into()));
        let k2 = Graph::complete(2).unwrap();
        assert_eq!(
            induced_density(&k2, &Graph::empty(5).unwrap()),
            BigRational::from_integer(0.into())
        );
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for i in 0..40 {
            let f = Graph::random(2 + i % 3, 0.5, &mut rng).unwrap();
            let g = Graph::random(6 + i % 4, 0.5, &mut rng).unwrap();
            assert_eq!(count_induced(&f, &g), BigInt::from(brute_count(&f, &g)));
        }
    }

    #[test]
    fn search_mode_agrees_with_table_mode() {
        // order 8 targets go through the isomorphism search path
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = Graph::random(8, 0.5, &mut rng).unwrap();
        let g = Graph::random(10, 0.5, &mut rng).unwrap();
        assert_eq!(count_induced(&f, &g), BigInt::from(brute_count(&f, &g)));
        let k8 = cm(&[2, 2, 2, 2]);
        let big = cm(&[3, 3, 2, 2]);
        assert_eq!(count_induced(&k8, &big), BigInt::from(brute_count(&k8, &big)));
    }

    #[test]
    fn complement_preserves_counts() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for i in 0..60 {
            let f = Graph::random(1 + i % 4, 0.5, &mut rng).unwrap();
            let g = Graph::random(4 + i % 4, 0.5, &mut rng).unwrap();
            assert_eq!(
                count_induced(&f, &g),
                count_induced(&f.complement(), &g.complement())
            );
        }
    }

    #[test]
    fn per_vertex_counts_sum_to_order_times_total() {
        let g = Graph::path(5).unwrap();
        let fam = vec![cm(&[2, 1])];
        let (per, total) = per_vertex_copies(&g, &fam).unwrap();
        assert_eq!(total, 3);
        assert_eq!(per, vec![1, 2, 3, 2, 1]);
    }
}
