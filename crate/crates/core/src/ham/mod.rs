//! Exact Hamiltonian path and cycle decisions.
//!
//! [`solve`] is the only search primitive the rest of the crate trusts.
//! Every positive answer carries a witness that [`validate_witness`] can
//! re-check in linear time; every negative answer carries the number of search
//! nodes expanded and a `completed` flag. [`oracle::oracle_solve`] is an
//! independent subset-DP used to cross-check the search on small graphs.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

pub mod oracle;
mod search;

pub use oracle::oracle_solve;

/// Node cap applied by default to graphs above this order.
pub const UNLIMITED_BUDGET_MAX_ORDER: usize = 40;
pub const DEFAULT_LARGE_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QueryKind {
    Path,
    Cycle,
}

/// A constrained Hamiltonian path or cycle request.
///
/// For paths, `start`/`end` pin the first/last vertex of the witness. For
/// cycles `start` only anchors where the reported witness begins and `end`
/// is ignored. `required_edges` must all be traversed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamQuery {
    pub kind: QueryKind,
    pub start: Option<usize>,
    pub end: Option<usize>,
    pub required_edges: Vec<(usize, usize)>,
    /// `None` applies the default policy, see [`HamQuery::effective_budget`].
    pub node_budget: Option<u64>,
}

impl HamQuery {
    pub fn cycle() -> Self {
        HamQuery { kind: QueryKind::Cycle, start: None, end: None, required_edges: Vec::new(), node_budget: None }
    }

    pub fn path() -> Self {
        HamQuery { kind: QueryKind::Path, ..HamQuery::cycle() }
    }

    pub fn path_between(start: usize, end: usize) -> Self {
        HamQuery::path().from(start).to(end)
    }

    pub fn from(mut self, v: usize) -> Self {
        self.start = Some(v);
        self
    }

    pub fn to(mut self, v: usize) -> Self {
        self.end = Some(v);
        self
    }

    pub fn require(mut self, u: usize, v: usize) -> Self {
        self.required_edges.push((u, v));
        self
    }

    pub fn budget(mut self, nodes: Option<u64>) -> Self {
        self.node_budget = nodes;
        self
    }

    /// Unlimited up to order 40, `10^9` nodes above, unless overridden.
    pub fn effective_budget(&self, n: usize) -> u64 {
        match self.node_budget {
            Some(b) => b,
            None if n <= UNLIMITED_BUDGET_MAX_ORDER => u64::MAX,
            None => DEFAULT_LARGE_BUDGET,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Found,
    None,
    BudgetExhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SearchAttestation {
    pub nodes_expanded: u64,
    pub completed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamResult {
    pub verdict: Verdict,
    pub witness: Option<Vec<usize>>,
    pub attestation: SearchAttestation,
}

impl HamResult {
    pub fn is_found(&self) -> bool {
        self.verdict == Verdict::Found
    }

    pub(crate) fn none(nodes: u64) -> Self {
        HamResult {
            verdict: Verdict::None,
            witness: None,
            attestation: SearchAttestation { nodes_expanded: nodes, completed: true },
        }
    }

    pub(crate) fn found(witness: Vec<usize>, nodes: u64) -> Self {
        HamResult {
            verdict: Verdict::Found,
            witness: Some(witness),
            attestation: SearchAttestation { nodes_expanded: nodes, completed: true },
        }
    }

    pub(crate) fn exhausted(nodes: u64) -> Self {
        HamResult {
            verdict: Verdict::BudgetExhausted,
            witness: None,
            attestation: SearchAttestation { nodes_expanded: nodes, completed: false },
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QueryError {
    #[error("vertex {v} out of range for order {n}")]
    Vertex { v: usize, n: usize },
    #[error("required edge {0}-{1} is not an edge of the graph")]
    MissingEdge(usize, usize),
    #[error("path start and end coincide at {0}")]
    StartIsEnd(usize),
    #[error("oracle limited to {max} vertices, graph has {n}")]
    TooLarge { n: usize, max: usize },
}

pub(crate) fn check_query(g: &Graph, q: &HamQuery) -> Result<(), QueryError> {
    let n = g.order();
    let in_range = |v: usize| if v < n { Ok(()) } else { Err(QueryError::Vertex { v, n }) };
    if let Some(s) = q.start {
        in_range(s)?;
    }
    if let Some(t) = q.end {
        in_range(t)?;
    }
    for &(u, v) in &q.required_edges {
        in_range(u)?;
        in_range(v)?;
        if !g.has_edge(u, v) {
            return Err(QueryError::MissingEdge(u, v));
        }
    }
    if q.kind == QueryKind::Path && n > 1 {
        if let (Some(s), Some(t)) = (q.start, q.end) {
            if s == t {
                return Err(QueryError::StartIsEnd(s));
            }
        }
    }
    Ok(())
}

/// Decides `q` on `g` exactly, within the query's node budget.
///
/// A cycle needs at least three vertices; the one-vertex graph has the
/// trivial Hamiltonian path `[0]`.
pub fn solve(g: &Graph, q: &HamQuery) -> Result<HamResult, QueryError> {
    check_query(g, q)?;
    Ok(search::run(g, q))
}

/// Checks `witness` against every clause of `q` on `g`, without searching.
pub fn validate_witness(g: &Graph, q: &HamQuery, witness: &[usize]) -> bool {
    let n = g.order();
    if witness.len() != n || check_query(g, q).is_err() {
        return false;
    }
    let mut seen = 0u128;
    for &v in witness {
        if v >= n || seen & (1u128 << v) != 0 {
            return false;
        }
        seen |= 1u128 << v;
    }
    if witness.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
        return false;
    }
    let consecutive = |u: usize, v: usize| {
        let wrap = q.kind == QueryKind::Cycle;
        witness.windows(2).any(|w| (w[0], w[1]) == (u, v) || (w[0], w[1]) == (v, u))
            || (wrap && {
                let (first, last) = (witness[0], witness[n - 1]);
                (first, last) == (u, v) || (first, last) == (v, u)
            })
    };
    match q.kind {
        QueryKind::Cycle => {
            if n < 3 || !g.has_edge(witness[n - 1], witness[0]) {
                return false;
            }
            if q.start.is_some_and(|s| witness[0] != s) {
                return false;
            }
        }
        QueryKind::Path => {
            if q.start.is_some_and(|s| witness[0] != s) || q.end.is_some_and(|t| witness[n - 1] != t) {
                return false;
            }
        }
    }
    q.required_edges.iter().all(|&(u, v)| consecutive(u, v))
}
