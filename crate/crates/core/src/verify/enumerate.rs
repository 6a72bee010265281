//! Exhaustive enumeration of small MNT graphs.
//!
//! Labeled graphs are enumerated by edge subset; isomorphic copies are merged
//! by the minimum adjacency code over all `n!` relabelings.

use std::collections::BTreeMap;

use itertools::Itertools;
use rayon::prelude::*;

use super::{Verifier, VerifyError};
use crate::graph::Graph;

pub const SEARCH_MIN_ORDER: usize = 4;
pub const SEARCH_MAX_ORDER: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinSearch {
    pub n: usize,
    /// Minimum size of a 2-connected MNT graph, `None` if there is none.
    pub min_size: Option<usize>,
    /// One representative per isomorphism class, in canonical labeling.
    pub extremal: Vec<Graph>,
    pub graphs_examined: u64,
}

fn check_order(n: usize) -> Result<(), VerifyError> {
    if !(SEARCH_MIN_ORDER..=SEARCH_MAX_ORDER).contains(&n) {
        return Err(VerifyError::SearchSize { n, min: SEARCH_MIN_ORDER, max: SEARCH_MAX_ORDER });
    }
    Ok(())
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).tuple_combinations().collect()
}

fn graph_of(n: usize, pairs: &[(usize, usize)], mask: u32) -> Graph {
    let mut g = Graph::empty(n).expect("small order");
    for (i, &(u, v)) in pairs.iter().enumerate() {
        if mask & 1 << i != 0 {
            g.add_edge(u, v).expect("valid pair");
        }
    }
    g
}

/// Adjacency code of `g` under `perm`: bit `i` set iff the `i`th pair is an edge
/// after relabeling `v -> perm[v]`.
fn code(g: &Graph, pairs: &[(usize, usize)], inverse: &[usize]) -> u32 {
    pairs.iter().enumerate().filter(|(_, &(u, v))| g.has_edge(inverse[u], inverse[v])).fold(0, |c, (i, _)| c | 1 << i)
}

/// Isomorphism-invariant representative: the relabeling with minimum code.
pub fn canonical_form(g: &Graph) -> Graph {
    let n = g.order();
    let ps = pairs(n);
    let best = (0..n).permutations(n).map(|inv| code(g, &ps, &inv)).min().unwrap_or(0);
    graph_of(n, &ps, best)
}

/// Every edge mask with exactly `k` of `bits` bits set, ascending.
fn masks_with(bits: usize, k: usize) -> Vec<u32> {
    if k == 0 {
        return vec![0];
    }
    if k > bits {
        return Vec::new();
    }
    let limit = 1u32 << bits;
    let mut out = Vec::new();
    let mut m = (1u32 << k) - 1;
    while m < limit {
        out.push(m);
        // next mask with the same popcount
        let c = m & m.wrapping_neg();
        let r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
    out
}

fn min_degree_at_least_two(g: &Graph) -> bool {
    (0..g.order()).all(|v| g.degree(v) >= 2)
}

fn dedup(graphs: Vec<Graph>) -> Vec<Graph> {
    let mut classes: BTreeMap<String, Graph> = BTreeMap::new();
    for g in graphs {
        let c = canonical_form(&g);
        classes.entry(c.to_graph6()).or_insert(c);
    }
    classes.into_values().collect()
}

/// Minimum size of a 2-connected MNT graph on `n` vertices, by increasing edge count.
pub fn exhaustive_min_search(n: usize, verifier: &Verifier) -> Result<MinSearch, VerifyError> {
    check_order(n)?;
    let ps = pairs(n);
    let mut examined = 0;
    for m in n..=ps.len() {
        let masks = masks_with(ps.len(), m);
        examined += masks.len() as u64;
        let hits = masks
            .par_iter()
            .map(|&mask| -> Result<Option<Graph>, VerifyError> {
                let g = graph_of(n, &ps, mask);
                if !min_degree_at_least_two(&g) || !g.is_two_connected().unwrap_or(false) {
                    return Ok(None);
                }
                Ok(is_mnt(&g, verifier)?.then_some(g))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let found: Vec<Graph> = hits.into_iter().flatten().collect();
        if !found.is_empty() {
            return Ok(MinSearch { n, min_size: Some(m), extremal: dedup(found), graphs_examined: examined });
        }
    }
    Ok(MinSearch { n, min_size: None, extremal: Vec::new(), graphs_examined: examined })
}

fn is_mnt(g: &Graph, verifier: &Verifier) -> Result<bool, VerifyError> {
    if verifier.is_traceable(g)? {
        return Ok(false);
    }
    for (u, v) in g.nonedges() {
        if !verifier.is_traceable(&g.with_edge(u, v).expect("non-edge"))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All MNT graphs on `n` vertices up to isomorphism, connected or not.
pub fn mnt_graphs(n: usize, verifier: &Verifier) -> Result<Vec<Graph>, VerifyError> {
    if n > SEARCH_MAX_ORDER {
        return Err(VerifyError::SearchSize { n, min: 1, max: SEARCH_MAX_ORDER });
    }
    let ps = pairs(n);
    let hits = (0..1u32 << ps.len())
        .into_par_iter()
        .map(|mask| -> Result<Option<Graph>, VerifyError> {
            let g = graph_of(n, &ps, mask);
            Ok(is_mnt(&g, verifier)?.then_some(g))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(dedup(hits.into_iter().flatten().collect()))
}
