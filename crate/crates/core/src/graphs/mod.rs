//! Finite labeled graphs on at most 64 vertices, stored as adjacency bit rows.

mod count;
mod ops;
mod predicates;

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::profile::PartiteProfile;

pub use count::{count_induced, induced_density, per_vertex_copies, InducedMatcher};
pub use ops::{
    blowup, complete_multipartite, lexicographic_product, nested_blowup, symmetrize_step,
    symmetrize_to_multipartite, StepKind, SymmetrizationStep, SymmetrizationTrace,
};
pub use predicates::{
    coloring_stats, is_complete_multipartite, is_isomorphic, is_robust, is_strongly_unbalanced,
    is_symmetrizable_family, robustness_witness, strongly_unbalanced_witness,
    symmetrizable_witness, ColoringStats, SymmetrizationFailure,
};

pub const MAX_VERTICES: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Capacity(format!(
                "graphs are limited to {MAX_VERTICES} vertices, requested {n}"
            )));
        }
        Ok(Graph { n, rows: vec![0; n] })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for u in 0..n {
            g.rows[u] = g.all_mask() & !(1u64 << u);
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for u in 0..n {
            g.add_edge(u, (u + 1) % n)?;
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for u in 1..n {
            g.add_edge(u - 1, u)?;
        }
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// `G(n, p)` sample.
    pub fn random<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v)?;
                }
            }
        }
        Ok(g)
    }

    /// Graph whose upper-triangle pairs `(0,1), (0,2), (1,2), (0,3), ...`
    /// follow the bits of `code`, pair `(i, j)` with `i < j` at bit `j(j-1)/2 + i`.
    pub fn from_code(n: usize, code: u64) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for j in 1..n {
            for i in 0..j {
                if code >> pair_index(i, j) & 1 == 1 {
                    g.add_edge(i, j)?;
                }
            }
        }
        Ok(g)
    }

    pub fn code(&self) -> u64 {
        let mut code = 0u64;
        for j in 1..self.n {
            for i in 0..j {
                if self.has_edge(i, j) {
                    code |= 1 << pair_index(i, j);
                }
            }
        }
        code
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn all_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    pub fn neighbors(&self, u: usize) -> u64 {
        self.rows[u]
    }

    pub fn degree(&self, u: usize) -> u32 {
        self.rows[u].count_ones()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Domain(format!("self-loop at vertex {u}")));
        }
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        self.rows[u] &= !(1 << v);
        self.rows[v] &= !(1 << u);
        Ok(())
    }

    pub fn complement(&self) -> Graph {
        let all = self.all_mask();
        let rows = (0..self.n)
            .map(|u| !self.rows[u] & all & !(1u64 << u))
            .collect();
        Graph { n: self.n, rows }
    }

    /// Subgraph induced on the vertices of `mask`, relabeled in increasing order.
    pub fn induced(&self, mask: u64) -> Graph {
        let verts: Vec<usize> = (0..self.n).filter(|&v| mask >> v & 1 == 1).collect();
        let mut g = Graph { n: verts.len(), rows: vec![0; verts.len()] };
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate() {
                if self.has_edge(u, v) {
                    g.rows[i] |= 1 << j;
                }
            }
        }
        g
    }

    /// Vertices with `u` relabeled to `perm[u]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut g = Graph { n: self.n, rows: vec![0; self.n] };
        for (u, v) in self.edges() {
            g.rows[perm[u]] |= 1 << perm[v];
            g.rows[perm[v]] |= 1 << perm[u];
        }
        g
    }

    pub(crate) fn set_row(&mut self, u: usize, row: u64) {
        // keep the relation symmetric: clear u's column, then write the new row
        let old = self.rows[u];
        for w in 0..self.n {
            if old >> w & 1 == 1 {
                self.rows[w] &= !(1 << u);
            }
        }
        self.rows[u] = row;
        for w in 0..self.n {
            if row >> w & 1 == 1 {
                self.rows[w] |= 1 << u;
            }
        }
    }

    fn check_vertex(&self, u: usize) -> Result<()> {
        if u >= self.n {
            Err(Error::Index(format!("vertex {u} out of range for {} vertices", self.n)))
        } else {
            Ok(())
        }
    }

    /// Edge-list text: first line `n`, then one `u v` pair per line.
    pub fn to_edge_file(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn profile(&self) -> Option<PartiteProfile> {
        is_complete_multipartite(self)
    }
}

pub(crate) fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

impl FromStr for Graph {
    type Err = Error;

    /// Duplicate and reversed edges are accepted; self-loops are not.
    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty graph file".into()))?;
        let n: usize = header
            .parse()
            .map_err(|_| Error::Parse(format!("bad vertex count {header:?}")))?;
        let mut g = Graph::empty(n)?;
        for line in lines {
            let mut toks = line.split_whitespace();
            let mut next = || -> Result<usize> {
                let tok = toks
                    .next()
                    .ok_or_else(|| Error::Parse(format!("edge line {line:?} needs two vertices")))?;
                tok.parse()
                    .map_err(|_| Error::Parse(format!("bad vertex {tok:?} in line {line:?}")))
            };
            let (u, v) = (next()?, next()?);
            if toks.next().is_some() {
                return Err(Error::Parse(format!("trailing tokens in line {line:?}")));
            }
            if u == v {
                return Err(Error::Parse(format!("self-loop {u} {v}")));
            }
            g.add_edge(u, v)
                .map_err(|e| Error::Parse(format!("line {line:?}: {e}")))?;
        }
        Ok(g)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn edge_file_round_trip() {
        let g = Graph::cycle(5).unwrap();
        let text = g.to_edge_file();
        assert_eq!(text.parse::<Graph>().unwrap(), g);
    }

    #[test]
    fn edge_file_tolerates_duplicates_and_reversals() {
        let g: Graph = "3\n0 1\n1 0\n0 1\n2 1\n".parse().unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn edge_file_rejects_loops_and_garbage() {
        assert!(matches!("3\n1 1\n".parse::<Graph>(), Err(Error::Parse(_))));
        assert!("3\n0 5\n".parse::<Graph>().is_err());
        assert!("x\n".parse::<Graph>().is_err());
        assert!("3\n0\n".parse::<Graph>().is_err());
        assert!(matches!("65\n".parse::<Graph>(), Err(Error::Capacity(_))));
    }

    #[test]
    fn complement_examples() {
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(k3.complement(), Graph::empty(3).unwrap());
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(c4.complement().edges(), vec![(0, 2), (1, 3)]);
    }

    #[test]
    fn complement_is_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for i in 0..100 {
            let n = 1 + i % 10;
            let g = Graph::random(n, 0.5, &mut rng).unwrap();
            assert_eq!(g.complement().complement(), g);
        }
    }

    #[test]
    fn code_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let g = Graph::random(8, 0.4, &mut rng).unwrap();
            assert_eq!(Graph::from_code(8, g.code()).unwrap(), g);
        }
    }

    #[test]
    fn full_width_graph() {
        let g = Graph::complete(64).unwrap();
        assert_eq!(g.edge_count(), 64 * 63 / 2);
        assert_eq!(g.complement().edge_count(), 0);
    }
}
