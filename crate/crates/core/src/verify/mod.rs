//! Graph-theoretic predicates and their certificates.
//!
//! Positive parts of a claim (some augmented or vertex-deleted graph has a
//! Hamiltonian path or cycle) are backed by stored witnesses. Negative parts
//! (no Hamiltonian path or cycle) are backed by exhaustive-search
//! attestations. A budget-limited search that does not finish makes the whole
//! certificate [`Verdict::Incomplete`], never refuted or certified.

use rayon::prelude::*;
use thiserror::Error;

use crate::blocks::BlockSpec;
use crate::graph::Graph;
use crate::ham::{self, SearchAttestation};

mod certificate;
pub mod enumerate;
pub mod lemmas;

pub use certificate::{
    condition_c_targets, describe_counterexample, graph_hash, parse_records, replay_lines, replay_records, Attestation,
    Certificate, Claim, Counterexample, CycleRole, Record, RecordData, RecordKind, ReplayError, StructureFacts,
    SubClaim, Verdict, Witness,
};
pub use enumerate::{canonical_form, exhaustive_min_search, mnt_graphs, MinSearch};
pub use lemmas::{
    all_paths_up_to, bound_check, deg2_structure_check, edge_bound, lemma_hypo_paths_check, lemma_subgraph_check,
    triple_twin_size, Deg2Report, Deg2Violation, HypoPathsReport, LemmaError,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("search for {subclaim} stopped at its node budget after {nodes} nodes")]
    Incomplete { subclaim: String, nodes: u64 },
    #[error("exhaustive search supports {min}..={max} vertices, got {n}")]
    SearchSize { n: usize, min: usize, max: usize },
}

/// Result of one sub-claim search.
#[derive(Debug, Clone)]
enum Outcome {
    Found(Vec<usize>),
    Absent(SearchAttestation),
    OutOfBudget(SearchAttestation),
}

/// Non-edge sweeps run in parallel chunks of this size; the first failure in
/// lexicographic order ends the sweep.
const SWEEP_CHUNK: usize = 64;

/// Runs the Hamiltonicity predicates with a shared search budget.
#[derive(Debug, Clone, Default)]
pub struct Verifier {
    /// Per-query node budget; `None` uses the engine's default policy.
    pub node_budget: Option<u64>,
}

impl Verifier {
    pub fn with_budget(node_budget: Option<u64>) -> Self {
        Verifier { node_budget }
    }

    /// Searches `sub` on `g`, optionally adding `hint` as a required edge.
    /// Witnesses come back in the labels of `g`.
    fn run(&self, g: &Graph, sub: &SubClaim, hint: Option<(usize, usize)>) -> Outcome {
        let (h, mut q, old) = sub.instance(g).expect("sub-claims are built from valid graphs");
        if let Some((u, v)) = hint {
            q = q.require(u, v);
        }
        let q = q.budget(self.node_budget);
        let r = ham::solve(&h, &q).expect("queries are built consistently");
        match r.verdict {
            ham::Verdict::Found => Outcome::Found(r.witness.unwrap().into_iter().map(|v| old[v]).collect()),
            ham::Verdict::None => Outcome::Absent(r.attestation),
            ham::Verdict::BudgetExhausted => Outcome::OutOfBudget(r.attestation),
        }
    }

    /// Runs positive sub-claims in parallel, recording witnesses in order.
    /// Stops at the first sub-claim without a witness and returns it.
    fn sweep(
        &self,
        g: &Graph,
        cert: &mut Certificate,
        subs: Vec<(SubClaim, Option<(usize, usize)>)>,
    ) -> Option<(SubClaim, Outcome)> {
        for chunk in subs.chunks(SWEEP_CHUNK) {
            let outcomes: Vec<Outcome> = chunk.par_iter().map(|(s, hint)| self.run(g, s, *hint)).collect();
            for ((sub, _), out) in chunk.iter().zip(outcomes) {
                match out {
                    Outcome::Found(seq) => {
                        cert.positive_witnesses.push(Witness { subclaim: sub.clone(), sequence: seq })
                    }
                    other => return Some((sub.clone(), other)),
                }
            }
        }
        None
    }

    /// Runs a negative sub-claim. Returns false when the certificate is settled
    /// (refuted or incomplete).
    fn attest(&self, g: &Graph, cert: &mut Certificate, sub: SubClaim) -> bool {
        match self.run(g, &sub, None) {
            Outcome::Absent(att) => {
                cert.negative_attestations.push(Attestation {
                    subclaim: sub,
                    nodes_expanded: att.nodes_expanded,
                    completed: att.completed,
                });
                true
            }
            Outcome::Found(seq) => {
                cert.verdict = Verdict::Refuted(match sub {
                    SubClaim::NonTraceable => Counterexample::Traceable { path: seq },
                    _ => Counterexample::Hamiltonian { cycle: seq },
                });
                false
            }
            Outcome::OutOfBudget(att) => {
                cert.negative_attestations.push(Attestation {
                    subclaim: sub.clone(),
                    nodes_expanded: att.nodes_expanded,
                    completed: false,
                });
                cert.verdict = Verdict::Incomplete(format!("{sub:?} after {} nodes", att.nodes_expanded));
                false
            }
        }
    }

    /// Turns a failed positive sweep into the certificate verdict.
    fn settle(
        cert: &mut Certificate,
        failure: Option<(SubClaim, Outcome)>,
        refute: impl Fn(&SubClaim) -> Counterexample,
    ) {
        match failure {
            None => {}
            Some((sub, Outcome::Absent(att))) => {
                cert.negative_attestations.push(Attestation {
                    subclaim: sub.clone(),
                    nodes_expanded: att.nodes_expanded,
                    completed: true,
                });
                cert.verdict = Verdict::Refuted(refute(&sub));
            }
            Some((sub, Outcome::OutOfBudget(att))) => {
                cert.verdict = Verdict::Incomplete(format!("{sub:?} after {} nodes", att.nodes_expanded));
            }
            Some((_, Outcome::Found(_))) => unreachable!("sweep only reports failures"),
        }
    }

    /// `Ok(true)` iff `g` has a Hamiltonian cycle; `Err` when the budget runs out.
    pub fn is_hamiltonian(&self, g: &Graph) -> Result<bool, VerifyError> {
        self.decide(g, SubClaim::NonHamiltonian)
    }

    /// `Ok(true)` iff `g` has a Hamiltonian path; `Err` when the budget runs out.
    pub fn is_traceable(&self, g: &Graph) -> Result<bool, VerifyError> {
        self.decide(g, SubClaim::NonTraceable)
    }

    fn decide(&self, g: &Graph, sub: SubClaim) -> Result<bool, VerifyError> {
        match self.run(g, &sub, None) {
            Outcome::Found(_) => Ok(true),
            Outcome::Absent(_) => Ok(false),
            Outcome::OutOfBudget(att) => {
                Err(VerifyError::Incomplete { subclaim: format!("{sub:?}"), nodes: att.nodes_expanded })
            }
        }
    }

    /// Maximal nontraceable: no Hamiltonian path, but `G + uv` has one for every non-edge.
    pub fn is_mnt(&self, g: &Graph) -> Certificate {
        let mut cert = Certificate::new(Claim::Mnt { graph: graph_hash(g) });
        self.mnt_parts(g, &mut cert);
        cert
    }

    fn mnt_parts(&self, g: &Graph, cert: &mut Certificate) {
        if !self.attest(g, cert, SubClaim::NonTraceable) {
            return;
        }
        // G is nontraceable, so every Hamiltonian path of G + uv uses uv.
        let subs = g.nonedges().into_iter().map(|(u, v)| (SubClaim::TraceableWith { u, v }, Some((u, v)))).collect();
        let failure = self.sweep(g, cert, subs);
        Self::settle(cert, failure, |s| match *s {
            SubClaim::TraceableWith { u, v } => Counterexample::StillNonTraceable { u, v },
            _ => unreachable!(),
        });
    }

    /// Maximal nonhamiltonian: no Hamiltonian cycle, but `G + uv` has one for every non-edge.
    pub fn is_mnh(&self, g: &Graph) -> Certificate {
        let mut cert = Certificate::new(Claim::Mnh { graph: graph_hash(g) });
        if self.attest(g, &mut cert, SubClaim::NonHamiltonian) {
            self.mnh_sweep(g, &mut cert);
        }
        cert
    }

    fn mnh_sweep(&self, g: &Graph, cert: &mut Certificate) {
        // G is nonhamiltonian, so every Hamiltonian cycle of G + uv uses uv.
        let subs = g.nonedges().into_iter().map(|(u, v)| (SubClaim::HamiltonianWith { u, v }, Some((u, v)))).collect();
        let failure = self.sweep(g, cert, subs);
        Self::settle(cert, failure, |s| match *s {
            SubClaim::HamiltonianWith { u, v } => Counterexample::StillNonHamiltonian { u, v },
            _ => unreachable!(),
        });
    }

    fn deletion_sweep(&self, g: &Graph, cert: &mut Certificate) {
        let subs = (0..g.order()).map(|v| (SubClaim::HamiltonianWithout { v }, None)).collect();
        let failure = self.sweep(g, cert, subs);
        Self::settle(cert, failure, |s| match *s {
            SubClaim::HamiltonianWithout { v } => Counterexample::NonHamiltonianDeletion { v },
            _ => unreachable!(),
        });
    }

    /// Nonhamiltonian with every vertex-deleted subgraph hamiltonian.
    pub fn is_hypohamiltonian(&self, g: &Graph) -> Certificate {
        let mut cert = Certificate::new(Claim::Hypohamiltonian { graph: graph_hash(g) });
        if self.attest(g, &mut cert, SubClaim::NonHamiltonian) {
            self.deletion_sweep(g, &mut cert);
        }
        cert
    }

    /// Maximal hypohamiltonian: hypohamiltonian and MNH. Deletions are checked
    /// before non-edges.
    pub fn is_mhh(&self, g: &Graph) -> Certificate {
        let mut cert = Certificate::new(Claim::Mhh { graph: graph_hash(g) });
        if !self.attest(g, &mut cert, SubClaim::NonHamiltonian) {
            return cert;
        }
        self.deletion_sweep(g, &mut cert);
        if cert.is_certified() {
            self.mnh_sweep(g, &mut cert);
        }
        cert
    }

    /// Condition (C): for every `u` outside `N[z]`, `H + zu` has a Hamiltonian
    /// cycle through `az` and one avoiding `az`.
    pub fn condition_c(&self, block: &BlockSpec) -> Result<Certificate, VerifyError> {
        let g = &block.graph;
        if !g.is_cubic() {
            return Err(VerifyError::Precondition("block is not cubic".into()));
        }
        let (z, a) = (block.z, block.exits[0]);
        let mut cert = Certificate::new(Claim::ConditionC { graph: graph_hash(g), z, a });
        let mut subs = Vec::new();
        for u in condition_c_targets(g, z) {
            subs.push((SubClaim::CycleThrough { added: (z, u), through: (z, a) }, None));
            subs.push((SubClaim::CycleAvoiding { added: (z, u), avoided: (z, a) }, None));
        }
        let failure = self.sweep(g, &mut cert, subs);
        Self::settle(&mut cert, failure, |s| match *s {
            SubClaim::CycleThrough { added: (_, u), .. } => {
                Counterexample::ConditionC { u, missing: CycleRole::Through }
            }
            SubClaim::CycleAvoiding { added: (_, u), .. } => {
                Counterexample::ConditionC { u, missing: CycleRole::Avoiding }
            }
            _ => unreachable!(),
        });
        Ok(cert)
    }

    /// For every vertex `z`, every `v` outside `N[z]` and every `u` in `N(z)`,
    /// `H + zv` has a Hamiltonian cycle through `uz`. The block must be MHH.
    pub fn extended_condition(&self, block: &BlockSpec) -> Result<Certificate, VerifyError> {
        let g = &block.graph;
        if !g.is_cubic() {
            return Err(VerifyError::Precondition("block is not cubic".into()));
        }
        let mhh = self.is_mhh(g);
        if !mhh.is_certified() {
            return Err(VerifyError::Precondition(format!("block is not MHH: {:?}", mhh.verdict)));
        }
        let mut cert = Certificate::new(Claim::ExtendedCondition { graph: graph_hash(g) });
        let mut subs = Vec::new();
        for z in 0..g.order() {
            for v in condition_c_targets(g, z) {
                for u in g.neighbors(z) {
                    subs.push((SubClaim::CycleThrough { added: (z, v), through: (z, u) }, None));
                }
            }
        }
        let failure = self.sweep(g, &mut cert, subs);
        Self::settle(&mut cert, failure, |s| match *s {
            SubClaim::CycleThrough { added: (z, v), through: (_, u) } => Counterexample::ExtendedCondition { z, u, v },
            _ => unreachable!(),
        });
        Ok(cert)
    }

    /// Cubic, 2-connected and MNT, with order, size and girth recorded.
    pub fn certify_cubic_mnt(&self, g: &Graph) -> Certificate {
        let mut cert = Certificate::new(Claim::CubicMnt { graph: graph_hash(g) });
        let two_connected = g.order() >= 3 && g.is_two_connected().unwrap_or(false);
        cert.facts = Some(StructureFacts {
            order: g.order(),
            size: g.size(),
            girth: g.girth(),
            cubic: g.is_cubic(),
            two_connected,
        });
        if let Some(v) = (0..g.order()).find(|&v| g.degree(v) != 3) {
            cert.verdict = Verdict::Refuted(Counterexample::NotCubic { vertex: v, degree: g.degree(v) });
            return cert;
        }
        if !two_connected {
            cert.verdict = Verdict::Refuted(Counterexample::NotTwoConnected);
            return cert;
        }
        self.mnt_parts(g, &mut cert);
        cert
    }
}
