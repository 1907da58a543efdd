use serde::Serialize;

use super::{ops::twin_classes, symmetrize_step, Graph};
use crate::error::{Error, Result};
use crate::profile::PartiteProfile;

pub const MAX_COLORING_VERTICES: usize = 16;
pub const MAX_ISOMORPHISM_VERTICES: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ColoringStats {
    pub clique_number: usize,
    pub chromatic_number: usize,
}

/// Exact clique and chromatic numbers for graphs on at most 16 vertices.
pub fn coloring_stats(g: &Graph) -> Result<ColoringStats> {
    let n = g.order();
    if n > MAX_COLORING_VERTICES {
        return Err(Error::Capacity(format!(
            "exact coloring is limited to {MAX_COLORING_VERTICES} vertices, got {n}"
        )));
    }
    let clique_number = max_clique(g, 0, g.all_mask());
    let chromatic_number = (clique_number..=n)
        .find(|&k| colorable(g, k))
        .unwrap_or(n);
    Ok(ColoringStats { clique_number, chromatic_number })
}

/// Bron-Kerbosch style bound on `candidates`, `size` already chosen.
fn max_clique(g: &Graph, size: usize, candidates: u64) -> usize {
    if candidates == 0 {
        return size;
    }
    let mut best = size;
    let mut cand = candidates;
    while cand != 0 {
        if size + cand.count_ones() as usize <= best {
            break;
        }
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        best = best.max(max_clique(g, size + 1, cand & g.neighbors(v)));
    }
    best
}

fn colorable(g: &Graph, k: usize) -> bool {
    let n = g.order();
    if n == 0 {
        return true;
    }
    if k == 0 {
        return false;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut color = vec![usize::MAX; n];
    fn go(g: &Graph, order: &[usize], idx: usize, k: usize, used: usize, color: &mut [usize]) -> bool {
        if idx == order.len() {
            return true;
        }
        let v = order[idx];
        // a fresh color is interchangeable with any other unused one
        for c in 0..k.min(used + 1) {
            let clash = (0..g.order())
                .any(|w| color[w] == c && g.has_edge(v, w));
            if clash {
                continue;
            }
            color[v] = c;
            if go(g, order, idx + 1, k, used.max(c + 1), color) {
                return true;
            }
            color[v] = usize::MAX;
        }
        false
    }
    go(g, &order, 0, k, 0, &mut color)
}

/// The part profile when `g` is complete multipartite: twin classes pairwise
/// joined completely.
pub fn is_complete_multipartite(g: &Graph) -> Option<PartiteProfile> {
    let n = g.order();
    if n == 0 {
        return None;
    }
    let classes = twin_classes(g);
    let all = g.all_mask();
    for class in &classes {
        let members = class.iter().fold(0u64, |m, &v| m | 1 << v);
        if g.neighbors(class[0]) != all & !members {
            return None;
        }
    }
    PartiteProfile::new(classes.iter().map(|c| c.len() as u32).collect()).ok()
}

/// Backtracking over degree-compatible vertex maps.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.order();
    if n != b.order() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da: Vec<u32> = (0..n).map(|v| a.degree(v)).collect();
    let mut db: Vec<u32> = (0..n).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    // map high-degree vertices of `a` first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(a.degree(v)));
    let mut image = vec![usize::MAX; n];
    let mut used = 0u64;
    fn go(a: &Graph, b: &Graph, order: &[usize], idx: usize, image: &mut [usize], used: &mut u64) -> bool {
        if idx == order.len() {
            return true;
        }
        let v = order[idx];
        for w in 0..b.order() {
            if *used >> w & 1 == 1 || a.degree(v) != b.degree(w) {
                continue;
            }
            let consistent = order[..idx]
                .iter()
                .all(|&u| a.has_edge(u, v) == b.has_edge(image[u], w));
            if !consistent {
                continue;
            }
            image[v] = w;
            *used |= 1 << w;
            if go(a, b, order, idx + 1, image, used) {
                return true;
            }
            *used &= !(1 << w);
            image[v] = usize::MAX;
        }
        false
    }
    go(a, b, &order, 0, &mut image, &mut used)
}

/// A symmetrization leaving the family: replacing `replaced` in member
/// `member` by a twin of `source` gives a graph isomorphic to no member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetrizationFailure {
    pub member: usize,
    pub source: usize,
    pub replaced: usize,
}

pub fn symmetrizable_witness(graphs: &[Graph]) -> Result<Option<SymmetrizationFailure>> {
    let Some(first) = graphs.first() else {
        return Ok(None);
    };
    let n = first.order();
    if graphs.iter().any(|g| g.order() != n) {
        return Err(Error::Precondition(
            "family members must share a vertex count".into(),
        ));
    }
    if n > MAX_ISOMORPHISM_VERTICES {
        return Err(Error::Capacity(format!(
            "isomorphism-based checks are limited to {MAX_ISOMORPHISM_VERTICES} vertices"
        )));
    }
    for (idx, g) in graphs.iter().enumerate() {
        for u in 0..n {
            for v in 0..n {
                if u == v || g.has_edge(u, v) {
                    continue;
                }
                let h = symmetrize_step(g, u, v)?;
                if !graphs.iter().any(|m| is_isomorphic(m, &h)) {
                    return Ok(Some(SymmetrizationFailure { member: idx, source: v, replaced: u }));
                }
            }
        }
    }
    Ok(None)
}

/// Closed under symmetrization of every nonadjacent pair, up to isomorphism.
pub fn is_symmetrizable_family(graphs: &[Graph]) -> Result<bool> {
    symmetrizable_witness(graphs).map(|w| w.is_none())
}

/// A partition into `2..r-1` blocks with every pair of blocks completely
/// joined or completely disjoint, when one exists.
pub fn robustness_witness(f: &Graph) -> Result<Option<Vec<Vec<usize>>>> {
    let n = f.order();
    if n > MAX_ISOMORPHISM_VERTICES {
        return Err(Error::Capacity(format!(
            "robustness check is limited to {MAX_ISOMORPHISM_VERTICES} vertices, got {n}"
        )));
    }
    if n < 3 {
        return Ok(None);
    }
    // restricted growth strings enumerate set partitions
    let mut labels = vec![0usize; n];
    fn go(f: &Graph, labels: &mut [usize], idx: usize, blocks: usize) -> Option<Vec<Vec<usize>>> {
        let n = f.order();
        if idx == n {
            if blocks < 2 || blocks > n - 1 {
                return None;
            }
            let mut masks = vec![0u64; blocks];
            for (v, &b) in labels.iter().enumerate() {
                masks[b] |= 1 << v;
            }
            let homogeneous = (0..n).all(|w| {
                masks.iter().enumerate().all(|(b, &m)| {
                    b == labels[w] || {
                        let seen = f.neighbors(w) & m;
                        seen == 0 || seen == m
                    }
                })
            });
            if !homogeneous {
                return None;
            }
            let mut out = vec![Vec::new(); blocks];
            for (v, &b) in labels.iter().enumerate() {
                out[b].push(v);
            }
            return Some(out);
        }
        for b in 0..=blocks {
            if b == blocks && blocks == n - 1 {
                continue;
            }
            labels[idx] = b;
            if let Some(w) = go(f, labels, idx + 1, blocks.max(b + 1)) {
                return Some(w);
            }
        }
        None
    }
    Ok(go(f, &mut labels, 0, 0))
}

/// Not a fuzzy blowup of any graph on at least two and fewer than `|V(F)|` vertices.
pub fn is_robust(f: &Graph) -> Result<bool> {
    robustness_witness(f).map(|w| w.is_none())
}

/// First part pair `(i, j)` with `(a_i - a_j)^2 <= a_i + a_j`.
pub fn strongly_unbalanced_witness(profile: &PartiteProfile) -> Option<(usize, usize)> {
    let parts = profile.parts();
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            let (a, b) = (parts[i] as i64, parts[j] as i64);
            if (a - b) * (a - b) <= a + b {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn is_strongly_unbalanced(profile: &PartiteProfile) -> bool {
    strongly_unbalanced_witness(profile).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::complete_multipartite;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cm(parts: &[u32]) -> Graph {
        complete_multipartite(&PartiteProfile::new(parts.to_vec()).unwrap()).unwrap()
    }

    fn paw() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2)]).unwrap()
    }

    #[test]
    fn coloring_examples() {
        let stats = |g: Graph| {
            let s = coloring_stats(&g).unwrap();
            (s.clique_number, s.chromatic_number)
        };
        assert_eq!(stats(Graph::cycle(5).unwrap()), (2, 3));
        assert_eq!(stats(Graph::cycle(7).unwrap()), (2, 3));
        assert_eq!(stats(Graph::complete(4).unwrap()), (4, 4));
        assert_eq!(stats(Graph::empty(3).unwrap()), (1, 1));
        assert_eq!(stats(Graph::empty(0).unwrap()), (0, 0));
        assert!(matches!(coloring_stats(&Graph::empty(17).unwrap()), Err(Error::Capacity(_))));
    }

    #[test]
    fn chromatic_number_of_multipartite_is_part_count() {
        let s = coloring_stats(&cm(&[3, 2, 2, 1])).unwrap();
        assert_eq!((s.clique_number, s.chromatic_number), (4, 4));
    }

    #[test]
    fn multipartite_recognition() {
        assert_eq!(is_complete_multipartite(&Graph::cycle(4).unwrap()).unwrap().parts(), &[2, 2]);
        assert!(is_complete_multipartite(&Graph::path(4).unwrap()).is_none());
        assert_eq!(is_complete_multipartite(&Graph::empty(3).unwrap()).unwrap().parts(), &[3]);
        for parts in [vec![1], vec![3, 1, 1], vec![4, 4, 2, 1], vec![2, 2, 2]] {
            let p = PartiteProfile::new(parts).unwrap();
            let g = complete_multipartite(&p).unwrap();
            assert_eq!(is_complete_multipartite(&g), Some(p));
        }
    }

    #[test]
    fn isomorphism_of_relabelings() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..30 {
            let g = Graph::random(8, 0.5, &mut rng).unwrap();
            let mut perm: Vec<usize> = (0..8).collect();
            perm.rotate_left(3);
            perm.swap(0, 5);
            assert!(is_isomorphic(&g, &g.permuted(&perm)));
        }
        assert!(!is_isomorphic(&Graph::path(4).unwrap(), &cm(&[3, 1])));
        assert!(!is_isomorphic(&Graph::cycle(6).unwrap(), &{
            // two disjoint triangles share the degree sequence of C6
            Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap()
        }));
    }

    #[test]
    fn symmetrizable_examples() {
        let k13 = cm(&[3, 1]);
        let k4m = cm(&[2, 1, 1]);
        assert!(is_symmetrizable_family(&[k13, k4m, paw()]).unwrap());
        assert!(is_symmetrizable_family(&[cm(&[2, 1])]).unwrap());
        let c5 = Graph::cycle(5).unwrap();
        let w = symmetrizable_witness(&[c5]).unwrap();
        assert!(w.is_some());
        assert!(matches!(
            is_symmetrizable_family(&[cm(&[2, 1]), cm(&[1, 1])]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn single_multipartite_graphs_are_symmetrizable() {
        for parts in [vec![2, 2], vec![3, 1, 1], vec![2, 2, 1], vec![1, 1, 1, 1]] {
            assert!(is_symmetrizable_family(&[cm(&parts)]).unwrap());
        }
        assert!(!is_symmetrizable_family(&[Graph::path(4).unwrap()]).unwrap());
    }

    #[test]
    fn robustness_examples() {
        assert!(is_robust(&Graph::cycle(5).unwrap()).unwrap());
        assert!(!is_robust(&cm(&[2, 2])).unwrap());
        assert!(!is_robust(&cm(&[2, 1])).unwrap());
        let w = robustness_witness(&cm(&[2, 1])).unwrap().unwrap();
        assert_eq!(w.len(), 2);
        assert!(matches!(is_robust(&Graph::empty(11).unwrap()), Err(Error::Capacity(_))));
    }

    #[test]
    fn strongly_unbalanced_examples() {
        let p = |v: &[u32]| PartiteProfile::new(v.to_vec()).unwrap();
        assert!(is_strongly_unbalanced(&p(&[8, 4, 1])));
        assert!(!is_strongly_unbalanced(&p(&[3, 1, 1])));
        assert_eq!(strongly_unbalanced_witness(&p(&[3, 1, 1])), Some((0, 1)));
        assert!(is_strongly_unbalanced(&p(&[2])));
    }
}
