use serde::Serialize;

use super::{count::per_vertex_copies, is_complete_multipartite, Graph, MAX_VERTICES};
use crate::arith::binomial;
use crate::error::{Error, Result};
use crate::profile::PartiteProfile;

/// Largest input accepted by [`symmetrize_to_multipartite`].
pub const MAX_SYMMETRIZE_VERTICES: usize = 14;

pub fn complete_multipartite(profile: &PartiteProfile) -> Result<Graph> {
    let sizes: Vec<usize> = profile.parts().iter().map(|&a| a as usize).collect();
    let k = Graph::complete(sizes.len())?;
    blowup(&k, &sizes)
}

/// Replaces vertex `v` of `f` by an independent set of `sizes[v]` vertices,
/// joined completely to the sets of the neighbors of `v`.
pub fn blowup(f: &Graph, sizes: &[usize]) -> Result<Graph> {
    if sizes.len() != f.order() {
        return Err(Error::Dimension { expected: f.order(), got: sizes.len() });
    }
    if sizes.contains(&0) {
        return Err(Error::Domain("blowup part sizes must be positive".into()));
    }
    let total: usize = sizes.iter().sum();
    if total > MAX_VERTICES {
        return Err(Error::Capacity(format!(
            "blowup would have {total} vertices (limit {MAX_VERTICES})"
        )));
    }
    let mut owner = Vec::with_capacity(total);
    for (v, &s) in sizes.iter().enumerate() {
        owner.extend(std::iter::repeat_n(v, s));
    }
    let mut g = Graph::empty(total)?;
    for x in 0..total {
        for y in x + 1..total {
            if f.has_edge(owner[x], owner[y]) {
                g.add_edge(x, y)?;
            }
        }
    }
    Ok(g)
}

/// `F[H]`: vertex `(v, w)` is numbered `v * |H| + w`; `(v, w) ~ (v', w')` iff
/// `v ~ v'` in `F`, or `v = v'` and `w ~ w'` in `H`.
pub fn lexicographic_product(f: &Graph, h: &Graph) -> Result<Graph> {
    let (a, b) = (f.order(), h.order());
    if a * b > MAX_VERTICES {
        return Err(Error::Capacity(format!(
            "lexicographic product would have {} vertices (limit {MAX_VERTICES})",
            a * b
        )));
    }
    let mut g = Graph::empty(a * b)?;
    for x in 0..a * b {
        for y in x + 1..a * b {
            let (v, w) = (x / b, x % b);
            let (v2, w2) = (y / b, y % b);
            if f.has_edge(v, v2) || (v == v2 && h.has_edge(w, w2)) {
                g.add_edge(x, y)?;
            }
        }
    }
    Ok(g)
}

/// `B_1(F) = F`, `B_d(F) = F[B_{d-1}(F)]`; `|V(F)|^depth` vertices.
pub fn nested_blowup(f: &Graph, depth: u32) -> Result<Graph> {
    if depth == 0 {
        return Err(Error::Domain("nested blowup depth must be at least 1".into()));
    }
    let r = f.order() as u128;
    let size = r.checked_pow(depth).unwrap_or(u128::MAX);
    if size > MAX_VERTICES as u128 {
        return Err(Error::Capacity(format!(
            "nested blowup of depth {depth} needs {size} vertices (limit {MAX_VERTICES})"
        )));
    }
    let mut g = f.clone();
    for _ in 1..depth {
        g = lexicographic_product(f, &g)?;
    }
    Ok(g)
}

/// Replaces `u` by a twin of `v`: `N(u) := N(v)`.
pub fn symmetrize_step(g: &Graph, u: usize, v: usize) -> Result<Graph> {
    if u >= g.order() || v >= g.order() {
        return Err(Error::Index(format!("vertex out of range for {} vertices", g.order())));
    }
    if u == v {
        return Err(Error::Precondition("cannot symmetrize a vertex onto itself".into()));
    }
    if g.has_edge(u, v) {
        return Err(Error::Precondition(format!(
            "vertices {u} and {v} are adjacent"
        )));
    }
    let mut out = g.clone();
    out.set_row(u, g.neighbors(v));
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepKind {
    /// `s(replaced) < s(source)`: strictly increases the copy count.
    Improve,
    /// Moves a vertex between two twin classes with no edges between them.
    Absorb,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetrizationStep {
    pub kind: StepKind,
    /// Vertex whose neighborhood is copied.
    pub source: usize,
    /// Vertex that becomes a twin of `source`.
    pub replaced: usize,
    pub count_before: u64,
    pub count_after: u64,
}

#[derive(Clone, Debug)]
pub struct SymmetrizationTrace {
    pub steps: Vec<SymmetrizationStep>,
    pub graph: Graph,
}

impl SymmetrizationTrace {
    pub fn is_monotone(&self) -> bool {
        self.steps.iter().all(|s| s.count_after >= s.count_before)
    }
}

/// Zykov symmetrization until the graph is complete multipartite.
///
/// Strict-improvement steps are taken first, scanning nonadjacent pairs in
/// lexicographic order and cloning the vertex with the larger `s(.)`. Only
/// when none exists are twin classes with no edges between them absorbed,
/// lower class index first.
pub fn symmetrize_to_multipartite(g: &Graph, family: &[Graph]) -> Result<SymmetrizationTrace> {
    let n = g.order();
    if n > MAX_SYMMETRIZE_VERTICES {
        return Err(Error::Capacity(format!(
            "symmetrization is limited to {MAX_SYMMETRIZE_VERTICES} vertices, got {n}"
        )));
    }
    let order = family.first().map(Graph::order).unwrap_or(0) as u64;
    // every improvement gains at least one copy; absorption moves at most n vertices per class merge
    let cap = (n * n) as u64 + u64::try_from(binomial(n as u64, order)).unwrap_or(u64::MAX);

    let mut graph = g.clone();
    let mut steps = Vec::new();
    let (mut per, mut total) = per_vertex_copies(&graph, family)?;
    loop {
        if steps.len() as u64 > cap {
            return Err(Error::Internal(format!(
                "symmetrization exceeded {cap} steps without terminating"
            )));
        }
        let step = improvement(&graph, &per)
            .map(|(source, replaced)| (StepKind::Improve, source, replaced))
            .or_else(|| absorption(&graph).map(|(s, r)| (StepKind::Absorb, s, r)));
        let Some((kind, source, replaced)) = step else {
            break;
        };
        graph = symmetrize_step(&graph, replaced, source)?;
        let (next_per, next_total) = per_vertex_copies(&graph, family)?;
        steps.push(SymmetrizationStep {
            kind,
            source,
            replaced,
            count_before: total,
            count_after: next_total,
        });
        per = next_per;
        total = next_total;
    }
    debug_assert!(is_complete_multipartite(&graph).is_some());
    Ok(SymmetrizationTrace { steps, graph })
}

fn improvement(g: &Graph, per: &[u64]) -> Option<(usize, usize)> {
    let n = g.order();
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) || per[u] == per[v] {
                continue;
            }
            return Some(if per[u] > per[v] { (u, v) } else { (v, u) });
        }
    }
    None
}

/// First pair of twin classes `X < Y` with no edges between them; returns
/// `(representative of X, first vertex of Y)`.
fn absorption(g: &Graph) -> Option<(usize, usize)> {
    let classes = twin_classes(g);
    for (i, x) in classes.iter().enumerate() {
        for y in &classes[i + 1..] {
            if !g.has_edge(x[0], y[0]) {
                return Some((x[0], y[0]));
            }
        }
    }
    None
}

/// Classes of vertices with identical neighborhoods, ordered by smallest member.
pub(crate) fn twin_classes(g: &Graph) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in 0..g.order() {
        match classes
            .iter_mut()
            .find(|c| g.neighbors(c[0]) == g.neighbors(v))
        {
            Some(c) => c.push(v),
            None => classes.push(vec![v]),
        }
    }
    classes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{coloring_stats, count_induced, is_isomorphic};
    use num_bigint::BigInt;

    fn cm(parts: &[u32]) -> Graph {
        complete_multipartite(&PartiteProfile::new(parts.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn complete_multipartite_examples() {
        assert_eq!(cm(&[1, 1]).edges(), vec![(0, 1)]);
        assert_eq!(cm(&[2, 2, 1]).edge_count(), 8);
        assert!(is_isomorphic(&cm(&[2, 2]), &Graph::cycle(4).unwrap()));
        let too_big = PartiteProfile::new(vec![40, 25]).unwrap();
        assert!(matches!(complete_multipartite(&too_big), Err(Error::Capacity(_))));
    }

    #[test]
    fn blowup_examples() {
        let k2 = Graph::complete(2).unwrap();
        assert!(is_isomorphic(&blowup(&k2, &[2, 2]).unwrap(), &Graph::cycle(4).unwrap()));
        let k3 = Graph::complete(3).unwrap();
        let b = blowup(&k3, &[2, 2, 2]).unwrap();
        assert_eq!(count_induced(&k3, &b), BigInt::from(8));
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(blowup(&c5, &[1; 5]).unwrap(), c5);
        assert!(matches!(blowup(&k2, &[1]), Err(Error::Dimension { .. })));
        assert!(matches!(blowup(&k2, &[40, 30]), Err(Error::Capacity(_))));
    }

    #[test]
    fn nested_blowup_examples() {
        let p3 = cm(&[2, 1]);
        assert_eq!(nested_blowup(&p3, 1).unwrap(), p3);
        let b2 = nested_blowup(&p3, 2).unwrap();
        assert_eq!(b2.order(), 9);
        assert_eq!(count_induced(&p3, &b2), BigInt::from(42));
        assert!(matches!(nested_blowup(&p3, 4), Err(Error::Capacity(_))));
        assert_eq!(nested_blowup(&Graph::complete(4).unwrap(), 3).unwrap().order(), 64);
    }

    #[test]
    fn nested_blowup_clique_number_is_power() {
        let c5 = Graph::cycle(5).unwrap();
        let b2 = nested_blowup(&c5, 2).unwrap();
        assert_eq!(coloring_stats(&c5).unwrap().clique_number, 2);
        let big = nested_blowup(&Graph::cycle(4).unwrap(), 2).unwrap();
        assert_eq!(coloring_stats(&big).unwrap().clique_number, 4);
        assert_eq!(b2.order(), 25);
    }

    #[test]
    fn symmetrize_step_on_path() {
        // path a-b-c: a and c are already twins
        let p = Graph::path(3).unwrap();
        let out = symmetrize_step(&p, 0, 2).unwrap();
        assert_eq!(out, p);
        assert!(matches!(symmetrize_step(&p, 0, 1), Err(Error::Precondition(_))));
        assert!(matches!(symmetrize_step(&p, 1, 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn already_multipartite_needs_no_steps() {
        let trace = symmetrize_to_multipartite(&Graph::cycle(4).unwrap(), &[cm(&[2, 1])]).unwrap();
        assert!(trace.steps.is_empty());
    }

    #[test]
    fn path_four_symmetrizes_to_multipartite() {
        let p4 = Graph::path(4).unwrap();
        let cherry = cm(&[2, 1]);
        assert_eq!(count_induced(&cherry, &p4), BigInt::from(2));
        let trace = symmetrize_to_multipartite(&p4, std::slice::from_ref(&cherry)).unwrap();
        assert!(trace.is_monotone());
        assert!(is_complete_multipartite(&trace.graph).is_some());
        assert!(count_induced(&cherry, &trace.graph) >= BigInt::from(2));
    }

    #[test]
    fn symmetrization_rejects_large_inputs() {
        let g = Graph::empty(15).unwrap();
        assert!(matches!(
            symmetrize_to_multipartite(&g, &[cm(&[1])]),
            Err(Error::Capacity(_))
        ));
    }
}
