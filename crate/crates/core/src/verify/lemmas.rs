//! Checkers for the structural facts every MNT or MHH graph must satisfy.
//!
//! Each check runs on one concrete graph. A violation means either the input was
//! not what its certificate claims or one of the checkers is wrong.

use rayon::prelude::*;
use thiserror::Error;

use super::{graph_hash, Certificate, Claim, Verifier};
use crate::blocks::BlockSpec;
use crate::graph::Graph;
use crate::ham::{self, HamQuery, Verdict};
use crate::inflate::open_at;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LemmaError {
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("search ran out of budget: {0}")]
    Incomplete(String),
}

fn require_certified(g: &Graph, cert: &Certificate, accept: fn(&Claim) -> bool, what: &str) -> Result<(), LemmaError> {
    if !accept(&cert.claim) {
        return Err(LemmaError::Precondition(format!("certificate is for {:?}, not {what}", cert.claim)));
    }
    if cert.claim.graph_hash() != graph_hash(g) {
        return Err(LemmaError::Precondition("certificate belongs to a different graph".into()));
    }
    if !cert.is_certified() {
        return Err(LemmaError::Precondition(format!("graph is not {what}: {:?}", cert.verdict)));
    }
    Ok(())
}

fn require_mnt(g: &Graph, cert: &Certificate) -> Result<(), LemmaError> {
    require_certified(g, cert, |c| matches!(c, Claim::Mnt { .. } | Claim::CubicMnt { .. }), "MNT")
}

/// If `⟨V(Q)⟩` is not complete, some internal vertex of the path `q` has a
/// neighbour outside `V(Q)`.
pub fn lemma_subgraph_check(g: &Graph, mnt: &Certificate, q: &[usize]) -> Result<bool, LemmaError> {
    require_mnt(g, mnt)?;
    let n = g.order();
    if q.iter().any(|&v| v >= n) || q.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
        return Err(LemmaError::Precondition(format!("{q:?} is not a path")));
    }
    let on_path = q.iter().fold(0u128, |m, &v| m | 1 << v);
    if on_path.count_ones() as usize != q.len() {
        return Err(LemmaError::Precondition(format!("{q:?} repeats a vertex")));
    }
    let complete = q.iter().all(|&v| (g.row(v) | 1 << v) & on_path == on_path);
    if complete {
        return Err(LemmaError::Precondition(format!("{q:?} induces a complete graph")));
    }
    let internal = &q[1..q.len() - 1];
    Ok(internal.iter().any(|&v| g.row(v) & !on_path != 0))
}

/// Every path with at most `max_len` edges and at least one edge, each listed
/// once (first vertex smaller than the last).
pub fn all_paths_up_to(g: &Graph, max_len: usize) -> Vec<Vec<usize>> {
    fn extend(g: &Graph, path: &mut Vec<usize>, used: u128, max_len: usize, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        if path.len() > 1 && path[0] < last {
            out.push(path.clone());
        }
        if path.len() > max_len {
            return;
        }
        for v in g.neighbors(last) {
            if used & 1 << v == 0 {
                path.push(v);
                extend(g, path, used | 1 << v, max_len, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..g.order() {
        extend(g, &mut vec![s], 1 << s, max_len, &mut out);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Deg2Violation {
    NeighboursNotAdjacent { v: usize },
    LowNeighbourDegree { v: usize, x: usize, degree: usize },
    SharedNeighbourDegree { v1: usize, v2: usize, x: usize, degree: usize },
    TwinNeighbourhoodsDiffer { v1: usize, v2: usize, x1: usize, x2: usize },
    TwinNeighbourDegree { v1: usize, v2: usize, x: usize, degree: usize },
    TripleRemainderIncomplete { vs: [usize; 3] },
    TripleEdgeCount { vs: [usize; 3], size: usize, expected: usize },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Deg2Report {
    pub degree2: Vec<usize>,
    pub two_connected: bool,
    pub violations: Vec<Deg2Violation>,
}

impl Deg2Report {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `½(n² − 7n + 24)`, the size forced by three degree-2 vertices with the same neighbours.
pub fn triple_twin_size(n: usize) -> usize {
    (n * n + 24 - 7 * n) / 2
}

/// Structure around degree-2 vertices of an MNT graph.
pub fn deg2_structure_check(g: &Graph, mnt: &Certificate) -> Result<Deg2Report, LemmaError> {
    require_mnt(g, mnt)?;
    let n = g.order();
    let two_connected = n >= 3 && g.is_two_connected().unwrap_or(false);
    let degree2: Vec<usize> = (0..n).filter(|&v| g.degree(v) == 2).collect();
    let mut violations = Vec::new();

    for &v in &degree2 {
        let [x1, x2] = pair(g, v);
        if !g.has_edge(x1, x2) {
            violations.push(Deg2Violation::NeighboursNotAdjacent { v });
        }
        if two_connected {
            for x in [x1, x2] {
                if g.degree(x) < 4 {
                    violations.push(Deg2Violation::LowNeighbourDegree { v, x, degree: g.degree(x) });
                }
            }
        }
    }

    for (i, &v1) in degree2.iter().enumerate() {
        for &v2 in &degree2[i + 1..] {
            let common = g.row(v1) & g.row(v2);
            match common.count_ones() {
                1 if two_connected => {
                    let x = common.trailing_zeros() as usize;
                    if g.degree(x) < 5 {
                        violations.push(Deg2Violation::SharedNeighbourDegree { v1, v2, x, degree: g.degree(x) });
                    }
                }
                2 => {
                    let [x1, x2] = pair(g, v1);
                    if g.row(x1) & !(1 << x2) != g.row(x2) & !(1 << x1) {
                        violations.push(Deg2Violation::TwinNeighbourhoodsDiffer { v1, v2, x1, x2 });
                    }
                    for x in [x1, x2] {
                        if g.degree(x) < 5 {
                            violations.push(Deg2Violation::TwinNeighbourDegree { v1, v2, x, degree: g.degree(x) });
                        }
                    }
                }
                _ => {}
            }
        }
    }

    if n >= 6 {
        for (i, &v1) in degree2.iter().enumerate() {
            for (j, &v2) in degree2.iter().enumerate().skip(i + 1) {
                for &v3 in &degree2[j + 1..] {
                    if g.row(v1) != g.row(v2) || g.row(v1) != g.row(v3) {
                        continue;
                    }
                    let vs = [v1, v2, v3];
                    let rest = g.full_mask() & !(1 << v1 | 1 << v2 | 1 << v3);
                    if (0..n).filter(|&u| rest & 1 << u != 0).any(|u| g.row(u) & rest != rest & !(1 << u)) {
                        violations.push(Deg2Violation::TripleRemainderIncomplete { vs });
                    }
                    let expected = triple_twin_size(n);
                    if g.size() != expected {
                        violations.push(Deg2Violation::TripleEdgeCount { vs, size: g.size(), expected });
                    }
                }
            }
        }
    }

    Ok(Deg2Report { degree2, two_connected, violations })
}

fn pair(g: &Graph, v: usize) -> [usize; 2] {
    let mut it = g.neighbors(v);
    [it.next().unwrap(), it.next().unwrap()]
}

/// `⌈(3n + m) / 2⌉`, the minimum size of a 2-connected MNT graph of order
/// `n >= 7` with `m` vertices of degree 2.
pub fn edge_bound(n: usize, m: usize) -> usize {
    (3 * n + m).div_ceil(2)
}

/// `|E(G)| >= edge_bound(n, m)` for a 2-connected MNT graph with `n >= 7`.
pub fn bound_check(g: &Graph, mnt: &Certificate) -> Result<bool, LemmaError> {
    require_mnt(g, mnt)?;
    if g.order() < 7 {
        return Err(LemmaError::Precondition(format!("order {} is below 7", g.order())));
    }
    if !g.is_two_connected().unwrap_or(false) {
        return Err(LemmaError::Precondition("graph is not 2-connected".into()));
    }
    Ok(g.size() >= edge_bound(g.order(), g.count_degree2()))
}

/// Failures of the path facts for `F = H - z`, in the labels of `F`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HypoPathsReport {
    /// Vertices of `F` at which no Hamiltonian path of `F` ends.
    pub missing_ends: Vec<usize>,
    /// Exit pairs joined by a Hamiltonian path of `F`.
    pub exit_paths: Vec<(usize, usize)>,
    /// Exits `y` with no Hamiltonian path of `F - y` between the other two exits.
    pub missing_deletion_paths: Vec<usize>,
    /// Non-edges `u1 u2` of `F` for which `F + u1u2` has no Hamiltonian path between exits.
    pub missing_augmented_paths: Vec<(usize, usize)>,
    pub queries: usize,
}

impl HypoPathsReport {
    pub fn is_clean(&self) -> bool {
        self.missing_ends.is_empty()
            && self.exit_paths.is_empty()
            && self.missing_deletion_paths.is_empty()
            && self.missing_augmented_paths.is_empty()
    }
}

enum Check {
    EndsAt(usize),
    ExitPair(usize, usize),
    AvoidsExit(usize),
    Augmented(usize, usize),
}

/// Path facts for a block opened at its designated vertex `z`: `F` has a
/// Hamiltonian path ending at each vertex, none joining two exits, one
/// joining two exits in `F - y` for each exit `y`, and one joining two exits
/// in `F + u1u2` for each non-edge of `F`.
pub fn lemma_hypo_paths_check(
    block: &BlockSpec,
    mhh: &Certificate,
    verifier: &Verifier,
) -> Result<HypoPathsReport, LemmaError> {
    require_certified(&block.graph, mhh, |c| matches!(c, Claim::Mhh { .. }), "MHH")?;
    let opened = open_at(block).map_err(|e| LemmaError::Precondition(e.to_string()))?;
    let f = &opened.graph;
    let [a, b, c] = opened.exits;
    let exit_pairs = [(a, b), (a, c), (b, c)];

    let mut checks: Vec<Check> = (0..f.order()).map(Check::EndsAt).collect();
    checks.extend(exit_pairs.iter().map(|&(s, t)| Check::ExitPair(s, t)));
    checks.extend(opened.exits.iter().map(|&y| Check::AvoidsExit(y)));
    checks.extend(f.nonedges().into_iter().map(|(u, v)| Check::Augmented(u, v)));

    let budget = verifier.node_budget;
    let found = |h: &Graph, q: HamQuery| -> Result<bool, LemmaError> {
        let q = q.budget(budget);
        let r = ham::solve(h, &q).expect("queries are built consistently");
        match r.verdict {
            Verdict::Found => Ok(true),
            Verdict::None => Ok(false),
            Verdict::BudgetExhausted => Err(LemmaError::Incomplete(format!("{q:?}"))),
        }
    };
    let outcomes: Vec<Result<bool, LemmaError>> = checks
        .par_iter()
        .map(|check| match *check {
            Check::EndsAt(v) => found(f, HamQuery::path().to(v)),
            Check::ExitPair(s, t) => found(f, HamQuery::path_between(s, t)),
            Check::AvoidsExit(y) => {
                let (fy, old) = f.delete_vertex(y).expect("exit is a vertex of F");
                let [s, t]: [usize; 2] = exit_pairs
                    .iter()
                    .find(|&&(s, t)| s != y && t != y)
                    .map(|&(s, t)| [s, t].map(|e| old.iter().position(|&o| o == e).unwrap()))
                    .unwrap();
                found(&fy, HamQuery::path_between(s, t))
            }
            Check::Augmented(u, v) => {
                let fuv = f.with_edge(u, v).expect("non-edge of F");
                for (s, t) in exit_pairs {
                    if found(&fuv, HamQuery::path_between(s, t))? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        })
        .collect();

    let mut report = HypoPathsReport { queries: checks.len(), ..Default::default() };
    for (check, outcome) in checks.iter().zip(outcomes) {
        let ok = outcome?;
        match *check {
            Check::EndsAt(v) if !ok => report.missing_ends.push(v),
            Check::ExitPair(s, t) if ok => report.exit_paths.push((s, t)),
            Check::AvoidsExit(y) if !ok => report.missing_deletion_paths.push(y),
            Check::Augmented(u, v) if !ok => report.missing_augmented_paths.push((u, v)),
            _ => {}
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::petersen;
    use crate::inflate::build;

    #[test]
    fn edge_bound_values() {
        assert_eq!(edge_bound(7, 1), 11);
        assert_eq!(edge_bound(10, 0), 15);
        assert_eq!(edge_bound(28, 0), 42);
        assert_eq!(triple_twin_size(7), 12);
    }

    #[test]
    fn preconditions() {
        let v = Verifier::default();
        let p = petersen().graph;
        let not_mnt = v.is_mnt(&p);
        assert!(matches!(deg2_structure_check(&p, &not_mnt), Err(LemmaError::Precondition(_))));
        assert!(matches!(lemma_subgraph_check(&p, &not_mnt, &[0, 1, 2]), Err(LemmaError::Precondition(_))));
        // a certificate for another graph is not accepted
        let k3k3 = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let cert = v.is_mnt(&k3k3);
        assert!(cert.is_certified());
        assert!(matches!(bound_check(&p, &cert), Err(LemmaError::Precondition(_))));
        // path inducing a triangle
        assert!(matches!(lemma_subgraph_check(&k3k3, &cert, &[0, 1, 2]), Err(LemmaError::Precondition(_))));
        let report = deg2_structure_check(&k3k3, &cert).unwrap();
        assert_eq!(report.degree2.len(), 6);
        assert!(report.is_clean(), "{report:?}");
    }

    #[test]
    fn ppp_lemmas() {
        let p = petersen();
        let g = build(&p, &p, &p).unwrap().graph;
        let cert = Verifier::default().certify_cubic_mnt(&g);
        let report = deg2_structure_check(&g, &cert).unwrap();
        assert!(report.degree2.is_empty() && report.is_clean());
        assert!(bound_check(&g, &cert).unwrap());
        let paths = all_paths_up_to(&g, 2);
        // 28 vertices with 3 choose 2 two-edge paths through each, plus 42 edges
        assert_eq!(paths.len(), 28 * 3 + 42);
        for q in paths.iter().filter(|q| q.len() == 3 && !g.has_edge(q[0], q[2])) {
            assert!(lemma_subgraph_check(&g, &cert, q).unwrap());
        }
    }

    #[test]
    fn petersen_path_facts() {
        let v = Verifier::default();
        let p = petersen();
        let mhh = v.is_mhh(&p.graph);
        let report = lemma_hypo_paths_check(&p, &mhh, &v).unwrap();
        assert!(report.is_clean(), "{report:?}");
        // 9 ends, 3 exit pairs, 3 deletions, 36 - 12 non-edges of F
        assert_eq!(report.queries, 9 + 3 + 3 + 24);
        let k4 = crate::blocks::BlockSpec::new(
            crate::blocks::BlockName::Custom("k4".into()),
            Graph::complete(4).unwrap(),
            0,
            [1, 2, 3],
        )
        .unwrap();
        let not_mhh = v.is_mhh(&k4.graph);
        assert!(matches!(lemma_hypo_paths_check(&k4, &not_mhh, &v), Err(LemmaError::Precondition(_))));
    }
}
