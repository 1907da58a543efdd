//! Brute-force maxima of induced densities over all labeled graphs and over
//! complete multipartite graphs.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::arith::{binomial, format_rational, BigRational};
use crate::density::copies_in_complete_multipartite;
use crate::error::{Error, Result};
use crate::graphs::{complete_multipartite, count_induced, is_complete_multipartite, pair_index, Graph, InducedMatcher};
use crate::profile::PartiteProfile;

/// Default cap on `n` for the all-graphs search.
pub const DEFAULT_ALL_GRAPHS_CAP: usize = 7;
/// Codes fit in 64 bits up to this order.
pub const MAX_ALL_GRAPHS: usize = 11;
pub const MAX_MULTIPARTITE: usize = 40;

const CHUNK_BITS: u32 = 12;

#[derive(Clone, Debug, Serialize)]
pub struct OracleResult {
    #[serde(serialize_with = "ser_rational")]
    pub density: BigRational,
    pub density_float: f64,
    #[serde(serialize_with = "ser_bigint")]
    pub copies: BigInt,
    #[serde(serialize_with = "ser_graph")]
    pub witness: Graph,
    /// Part sizes of the witness when it is complete multipartite.
    pub partition: Option<PartiteProfile>,
    pub examined: u64,
    /// Forbidden clique size, if any.
    pub forbid_k: Option<usize>,
    pub constraint: String,
}

fn ser_rational<S: Serializer>(q: &BigRational, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&format_rational(q))
}

fn ser_bigint<S: Serializer>(v: &BigInt, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&v.to_string())
}

fn ser_graph<S: Serializer>(g: &Graph, ser: S) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Wire {
        n: usize,
        edges: Vec<(usize, usize)>,
    }
    Wire { n: g.order(), edges: g.edges() }.serialize(ser)
}

fn has_clique(g: &Graph, cand: u64, need: usize) -> bool {
    if need == 0 {
        return true;
    }
    if (cand.count_ones() as usize) < need {
        return false;
    }
    let mut rest = cand;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if has_clique(g, rest & g.neighbors(v), need - 1) {
            return true;
        }
    }
    false
}

fn describe(forbid_k: Option<usize>) -> String {
    match forbid_k {
        Some(k) => format!("K_{k}-free"),
        None => "none".into(),
    }
}

/// Maximum of `p(F, G)` over all labeled graphs on `n <= 7` vertices, optionally `K_k`-free.
pub fn max_over_all_graphs(f: &Graph, n: usize, forbid_k: Option<usize>) -> Result<OracleResult> {
    max_over_all_graphs_capped(f, n, forbid_k, DEFAULT_ALL_GRAPHS_CAP)
}

/// As [`max_over_all_graphs`] with an explicit cap, itself at most [`MAX_ALL_GRAPHS`].
pub fn max_over_all_graphs_capped(
    f: &Graph,
    n: usize,
    forbid_k: Option<usize>,
    cap: usize,
) -> Result<OracleResult> {
    if n > cap.min(MAX_ALL_GRAPHS) {
        return Err(Error::Capacity(format!(
            "exhaustive search is capped at n = {}, requested {n}",
            cap.min(MAX_ALL_GRAPHS)
        )));
    }
    let s = f.order();
    if s > n {
        return Err(Error::Precondition(format!("target has {s} vertices, more than n = {n}")));
    }
    if matches!(forbid_k, Some(k) if k < 2) && n > 0 {
        return Err(Error::Precondition("every nonempty graph contains K_1".into()));
    }
    let matcher = InducedMatcher::new(std::slice::from_ref(f))?;
    let subsets: Vec<Vec<(u32, u32)>> = subsets_of(n, s)
        .into_iter()
        .map(|vs| {
            let mut pairs = Vec::new();
            for b in 1..vs.len() {
                for a in 0..b {
                    pairs.push((pair_index(vs[a], vs[b]) as u32, pair_index(a, b) as u32));
                }
            }
            pairs
        })
        .collect();
    let bits = (n * n.saturating_sub(1) / 2) as u32;
    let total: u64 = 1 << bits;
    let chunk = 1u64 << CHUNK_BITS.min(bits);
    let chunks = total.div_ceil(chunk);

    let count_in = |code: u64| -> u64 {
        let g = Graph::from_code(n, code).expect("n is capped");
        if let Some(k) = forbid_k {
            if has_clique(&g, g.all_mask(), k) {
                return u64::MAX;
            }
        }
        if matcher.contains_code(0).is_some() {
            subsets
                .iter()
                .filter(|pairs| {
                    let sub = pairs
                        .iter()
                        .fold(0u64, |acc, &(gb, sb)| acc | ((code >> gb) & 1) << sb);
                    matcher.contains_code(sub) == Some(true)
                })
                .count() as u64
        } else {
            matcher.count(&g)
        }
    };

    // u64::MAX copies marks an excluded graph
    let per_chunk: Vec<(Option<(u64, u64)>, u64)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut best: Option<(u64, u64)> = None;
            let mut examined = 0u64;
            for code in c * chunk..((c + 1) * chunk).min(total) {
                let copies = count_in(code);
                if copies == u64::MAX {
                    continue;
                }
                examined += 1;
                if best.is_none_or(|(b, _)| copies > b) {
                    best = Some((copies, code));
                }
            }
            (best, examined)
        })
        .collect();
    let examined = per_chunk.iter().map(|c| c.1).sum();
    // chunks are in code order, so keeping the earlier one on ties keeps the smallest code
    let (copies, code) = per_chunk
        .iter()
        .filter_map(|c| c.0)
        .fold(None, |acc: Option<(u64, u64)>, b| match acc {
            Some(a) if a.0 >= b.0 => Some(a),
            _ => Some(b),
        })
        .expect("the empty graph is always admissible");
    let witness = Graph::from_code(n, code)?;
    let copies = BigInt::from(copies);
    let density = BigRational::new(copies.clone(), binomial(n as u64, s as u64));
    Ok(OracleResult {
        density_float: crate::arith::to_f64(&density),
        density,
        copies,
        partition: is_complete_multipartite(&witness),
        witness,
        examined,
        forbid_k,
        constraint: describe(forbid_k),
    })
}

fn subsets_of(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Maximum of `p(F, G)` over complete multipartite `G` on `n <= 40` vertices
/// with at most `max_parts` parts.
pub fn max_over_multipartite(f: &Graph, n: usize, max_parts: usize) -> Result<OracleResult> {
    if n > MAX_MULTIPARTITE {
        return Err(Error::Capacity(format!(
            "multipartite search is capped at n = {MAX_MULTIPARTITE}, requested {n}"
        )));
    }
    let s = f.order();
    if s > n {
        return Err(Error::Precondition(format!("target has {s} vertices, more than n = {n}")));
    }
    if max_parts == 0 {
        return Err(Error::Domain("need at least one part".into()));
    }
    let target = is_complete_multipartite(f);
    let fg = f.clone();
    let partitions = PartiteProfile::all_with_vertices(n as u32, max_parts);
    let examined = partitions.len() as u64;
    let counts: Vec<BigInt> = partitions
        .par_iter()
        .map(|p| match &target {
            Some(tp) => {
                let sizes: Vec<u64> = p.parts().iter().map(|&a| a as u64).collect();
                copies_in_complete_multipartite(tp, &sizes)
            }
            None => count_induced(&fg, &complete_multipartite(p).expect("n <= 40")),
        })
        .collect();
    let mut best = 0;
    for (i, c) in counts.iter().enumerate() {
        if *c > counts[best] {
            best = i;
        }
    }
    let copies = counts.get(best).cloned().unwrap_or_else(BigInt::zero);
    let density = BigRational::new(copies.clone(), binomial(n as u64, s as u64));
    let partition = partitions[best].clone();
    Ok(OracleResult {
        density_float: crate::arith::to_f64(&density),
        density,
        copies,
        witness: complete_multipartite(&partition)?,
        partition: Some(partition),
        examined,
        forbid_k: Some(max_parts + 1),
        constraint: format!("complete multipartite, at most {max_parts} parts"),
    })
}
