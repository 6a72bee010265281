//! Certificates, their line-delimited JSON form, and solver-free replay.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::graph::Graph;
use crate::ham::{validate_witness, HamQuery};

/// Short content hash of a graph's labeled graph6 encoding.
pub fn graph_hash(g: &Graph) -> String {
    let digest = Sha256::digest(g.to_graph6().as_bytes());
    hex::encode(&digest[..12])
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Claim {
    Mnt { graph: String },
    Mnh { graph: String },
    Hypohamiltonian { graph: String },
    Mhh { graph: String },
    ConditionC { graph: String, z: usize, a: usize },
    ExtendedCondition { graph: String },
    CubicMnt { graph: String },
}

impl Claim {
    pub fn graph_hash(&self) -> &str {
        match self {
            Claim::Mnt { graph }
            | Claim::Mnh { graph }
            | Claim::Hypohamiltonian { graph }
            | Claim::Mhh { graph }
            | Claim::ConditionC { graph, .. }
            | Claim::ExtendedCondition { graph }
            | Claim::CubicMnt { graph } => graph,
        }
    }

    /// Every sub-claim a certified certificate for this claim must cover.
    pub fn required_subclaims(&self, g: &Graph) -> BTreeSet<SubClaim> {
        let mut out = BTreeSet::new();
        let nonedges = g.nonedges();
        match *self {
            Claim::Mnt { .. } | Claim::CubicMnt { .. } => {
                out.insert(SubClaim::NonTraceable);
                out.extend(nonedges.iter().map(|&(u, v)| SubClaim::TraceableWith { u, v }));
            }
            Claim::Mnh { .. } => {
                out.insert(SubClaim::NonHamiltonian);
                out.extend(nonedges.iter().map(|&(u, v)| SubClaim::HamiltonianWith { u, v }));
            }
            Claim::Hypohamiltonian { .. } => {
                out.insert(SubClaim::NonHamiltonian);
                out.extend((0..g.order()).map(|v| SubClaim::HamiltonianWithout { v }));
            }
            Claim::Mhh { .. } => {
                out.insert(SubClaim::NonHamiltonian);
                out.extend((0..g.order()).map(|v| SubClaim::HamiltonianWithout { v }));
                out.extend(nonedges.iter().map(|&(u, v)| SubClaim::HamiltonianWith { u, v }));
            }
            Claim::ConditionC { z, a, .. } => {
                for u in condition_c_targets(g, z) {
                    out.insert(SubClaim::CycleThrough { added: (z, u), through: (z, a) });
                    out.insert(SubClaim::CycleAvoiding { added: (z, u), avoided: (z, a) });
                }
            }
            Claim::ExtendedCondition { .. } => {
                for z in 0..g.order() {
                    for v in condition_c_targets(g, z) {
                        for u in g.neighbors(z) {
                            out.insert(SubClaim::CycleThrough { added: (z, v), through: (z, u) });
                        }
                    }
                }
            }
        }
        out
    }
}

/// Vertices other than `z` and its neighbours.
pub fn condition_c_targets(g: &Graph, z: usize) -> Vec<usize> {
    (0..g.order()).filter(|&u| u != z && !g.has_edge(z, u)).collect()
}

/// One search obligation derived from the certified graph `G`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SubClaim {
    /// `G` has no Hamiltonian path.
    NonTraceable,
    /// `G` has no Hamiltonian cycle.
    NonHamiltonian,
    /// `G + uv` has a Hamiltonian path.
    TraceableWith { u: usize, v: usize },
    /// `G + uv` has a Hamiltonian cycle.
    HamiltonianWith { u: usize, v: usize },
    /// `G - v` has a Hamiltonian cycle (witness in the labels of `G`).
    HamiltonianWithout { v: usize },
    /// `G + added` has a Hamiltonian cycle using the edge `through`.
    CycleThrough { added: (usize, usize), through: (usize, usize) },
    /// `G + added - avoided` has a Hamiltonian cycle.
    CycleAvoiding { added: (usize, usize), avoided: (usize, usize) },
}

impl SubClaim {
    /// Whether the sub-claim asserts existence (witness) or absence (attestation).
    pub fn is_positive(&self) -> bool {
        !matches!(self, SubClaim::NonTraceable | SubClaim::NonHamiltonian)
    }

    /// The graph and query this sub-claim is about, plus the label in `G` of
    /// each vertex of that graph.
    pub fn instance(&self, g: &Graph) -> Option<(Graph, HamQuery, Vec<usize>)> {
        let identity = || (0..g.order()).collect::<Vec<_>>();
        Some(match *self {
            SubClaim::NonTraceable => (g.clone(), HamQuery::path(), identity()),
            SubClaim::NonHamiltonian => (g.clone(), HamQuery::cycle(), identity()),
            SubClaim::TraceableWith { u, v } => (plus(g, u, v)?, HamQuery::path(), identity()),
            SubClaim::HamiltonianWith { u, v } => (plus(g, u, v)?, HamQuery::cycle(), identity()),
            SubClaim::HamiltonianWithout { v } => {
                let (h, old) = g.delete_vertex(v).ok()?;
                (h, HamQuery::cycle(), old)
            }
            SubClaim::CycleThrough { added: (x, y), through: (s, t) } => {
                let h = if g.has_edge(x, y) { return None } else { g.with_edge(x, y).ok()? };
                if !h.has_edge(s, t) {
                    return None;
                }
                (h, HamQuery::cycle().require(s, t), identity())
            }
            SubClaim::CycleAvoiding { added: (x, y), avoided: (s, t) } => {
                if g.has_edge(x, y) || (x, y) == (s, t) || (x, y) == (t, s) {
                    return None;
                }
                let h = g.with_edge(x, y).ok()?.without_edge(s, t).ok()?;
                (h, HamQuery::cycle(), identity())
            }
        })
    }

    /// Checks a witness given in the labels of `G`.
    pub fn validate(&self, g: &Graph, witness: &[usize]) -> bool {
        let Some((h, q, old)) = self.instance(g) else { return false };
        let mut new_of = vec![usize::MAX; g.order()];
        for (i, &o) in old.iter().enumerate() {
            new_of[o] = i;
        }
        let mut mapped = Vec::with_capacity(witness.len());
        for &w in witness {
            match new_of.get(w) {
                Some(&m) if m != usize::MAX => mapped.push(m),
                _ => return false,
            }
        }
        validate_witness(&h, &q, &mapped)
    }
}

fn plus(g: &Graph, u: usize, v: usize) -> Option<Graph> {
    if u == v || g.has_edge(u, v) {
        None
    } else {
        g.with_edge(u, v).ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub subclaim: SubClaim,
    pub sequence: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attestation {
    pub subclaim: SubClaim,
    pub nodes_expanded: u64,
    pub completed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CycleRole {
    Through,
    Avoiding,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Counterexample {
    /// The graph itself has a Hamiltonian path.
    Traceable {
        path: Vec<usize>,
    },
    /// The graph itself has a Hamiltonian cycle.
    Hamiltonian {
        cycle: Vec<usize>,
    },
    StillNonTraceable {
        u: usize,
        v: usize,
    },
    StillNonHamiltonian {
        u: usize,
        v: usize,
    },
    NonHamiltonianDeletion {
        v: usize,
    },
    ConditionC {
        u: usize,
        missing: CycleRole,
    },
    ExtendedCondition {
        z: usize,
        u: usize,
        v: usize,
    },
    NotCubic {
        vertex: usize,
        degree: usize,
    },
    NotTwoConnected,
}

pub fn describe_counterexample(cx: &Counterexample) -> String {
    match cx {
        Counterexample::Traceable { path } => format!("graph is traceable: {path:?}"),
        Counterexample::Hamiltonian { cycle } => format!("graph is hamiltonian: {cycle:?}"),
        Counterexample::StillNonTraceable { u, v } => format!("G + ({u},{v}) is not traceable"),
        Counterexample::StillNonHamiltonian { u, v } => format!("G + ({u},{v}) is not hamiltonian"),
        Counterexample::NonHamiltonianDeletion { v } => format!("G minus vertex {v} is not hamiltonian"),
        Counterexample::ConditionC { u, missing: CycleRole::Through } => {
            format!("H + zu for u = {u} has no hamiltonian cycle through az")
        }
        Counterexample::ConditionC { u, missing: CycleRole::Avoiding } => {
            format!("H + zu for u = {u} has no hamiltonian cycle avoiding az")
        }
        Counterexample::ExtendedCondition { z, u, v } => {
            format!("H + ({z},{v}) has no hamiltonian cycle through ({u},{z})")
        }
        Counterexample::NotCubic { vertex, degree } => format!("vertex {vertex} has degree {degree}"),
        Counterexample::NotTwoConnected => "graph is not 2-connected".to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Certified,
    Refuted(Counterexample),
    /// A search hit its node budget; the message names the sub-claim.
    Incomplete(String),
}

/// Structural data recorded alongside a cubic MNT certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureFacts {
    pub order: usize,
    pub size: usize,
    pub girth: Option<usize>,
    pub cubic: bool,
    pub two_connected: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub claim: Claim,
    pub positive_witnesses: Vec<Witness>,
    pub negative_attestations: Vec<Attestation>,
    pub verdict: Verdict,
    pub facts: Option<StructureFacts>,
}

impl Certificate {
    pub fn new(claim: Claim) -> Self {
        Certificate {
            claim,
            positive_witnesses: Vec::new(),
            negative_attestations: Vec::new(),
            verdict: Verdict::Certified,
            facts: None,
        }
    }

    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }

    /// Records in deterministic order: attestations first, then witnesses by sub-claim.
    pub fn to_records(&self) -> Vec<Record> {
        let mut atts: Vec<_> = self.negative_attestations.iter().collect();
        atts.sort_by(|a, b| a.subclaim.cmp(&b.subclaim));
        let mut wits: Vec<_> = self.positive_witnesses.iter().collect();
        wits.sort_by(|a, b| a.subclaim.cmp(&b.subclaim));
        atts.into_iter()
            .map(|a| Record {
                claim: self.claim.clone(),
                subclaim: a.subclaim.clone(),
                kind: RecordKind::Attestation,
                data: RecordData::Attestation { nodes_expanded: a.nodes_expanded, completed: a.completed },
            })
            .chain(wits.into_iter().map(|w| Record {
                claim: self.claim.clone(),
                subclaim: w.subclaim.clone(),
                kind: RecordKind::Witness,
                data: RecordData::Witness { sequence: w.sequence.clone() },
            }))
            .collect()
    }

    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in self.to_records() {
            out.push_str(&serde_json::to_string(&r).expect("records serialize"));
            out.push('\n');
        }
        out
    }

    /// Re-validates the certificate against `g` using only its stored data.
    pub fn replay(&self, g: &Graph) -> Result<(), ReplayError> {
        if let Verdict::Refuted(_) | Verdict::Incomplete(_) = self.verdict {
            return Err(ReplayError::NotCertified);
        }
        replay_records(g, &self.to_records()).map(|_| ())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordKind {
    Witness,
    Attestation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RecordData {
    Witness { sequence: Vec<usize> },
    Attestation { nodes_expanded: u64, completed: bool },
}

/// One line of a certificate file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub claim: Claim,
    pub subclaim: SubClaim,
    pub kind: RecordKind,
    pub data: RecordData,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReplayError {
    #[error("certificate verdict is not certified")]
    NotCertified,
    #[error("certificate has no records")]
    Empty,
    #[error("record {line}: {reason}")]
    BadRecord { line: usize, reason: String },
    #[error("missing record for {0}")]
    Missing(String),
    #[error("graph fails structural requirement: {0}")]
    Structure(String),
}

/// Parses a JSON-lines certificate. Blank lines are skipped; line numbers are 1-based.
pub fn parse_records(text: &str) -> Result<Vec<(usize, Record)>, ReplayError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let rec: Record = serde_json::from_str(line)
            .map_err(|e| ReplayError::BadRecord { line: i + 1, reason: format!("unparsable: {e}") })?;
        out.push((i + 1, rec));
    }
    Ok(out)
}

/// Replays a parsed certificate file; returns its claim when every record
/// checks and the records cover every required sub-claim.
pub fn replay_lines(g: &Graph, text: &str) -> Result<Claim, ReplayError> {
    let recs = parse_records(text)?;
    replay_numbered(g, &recs)
}

pub fn replay_records(g: &Graph, records: &[Record]) -> Result<Claim, ReplayError> {
    let numbered: Vec<_> = records.iter().cloned().enumerate().map(|(i, r)| (i + 1, r)).collect();
    replay_numbered(g, &numbered)
}

fn replay_numbered(g: &Graph, records: &[(usize, Record)]) -> Result<Claim, ReplayError> {
    let (_, first) = records.first().ok_or(ReplayError::Empty)?;
    let claim = first.claim.clone();
    let hash = graph_hash(g);
    let bad = |line: usize, reason: String| ReplayError::BadRecord { line, reason };

    match claim {
        Claim::CubicMnt { .. } => {
            if let Some(v) = (0..g.order()).find(|&v| g.degree(v) != 3) {
                return Err(ReplayError::Structure(format!("vertex {v} has degree {}", g.degree(v))));
            }
            if !g.is_two_connected().unwrap_or(false) {
                return Err(ReplayError::Structure("not 2-connected".into()));
            }
        }
        Claim::ConditionC { z, a, .. } if z >= g.order() || !g.has_edge(z, a) || g.degree(z) != 3 => {
            return Err(ReplayError::Structure(format!("z = {z}, a = {a} is not a designated cubic vertex")));
        }
        _ => {}
    }

    let required = claim.required_subclaims(g);
    let mut covered = BTreeSet::new();
    for (line, rec) in records {
        let line = *line;
        if rec.claim != claim {
            return Err(bad(line, "claim differs from the first record".into()));
        }
        if rec.claim.graph_hash() != hash {
            return Err(bad(line, format!("graph hash {} does not match input {hash}", rec.claim.graph_hash())));
        }
        if !required.contains(&rec.subclaim) {
            return Err(bad(line, format!("{:?} is not part of this claim", rec.subclaim)));
        }
        match (&rec.kind, &rec.data, rec.subclaim.is_positive()) {
            (RecordKind::Witness, RecordData::Witness { sequence }, true) => {
                if !rec.subclaim.validate(g, sequence) {
                    return Err(bad(line, format!("witness for {:?} does not validate", rec.subclaim)));
                }
            }
            (RecordKind::Attestation, RecordData::Attestation { completed, .. }, false) => {
                if !completed {
                    return Err(bad(line, format!("search for {:?} did not complete", rec.subclaim)));
                }
            }
            _ => return Err(bad(line, format!("record kind does not fit {:?}", rec.subclaim))),
        }
        if !covered.insert(rec.subclaim.clone()) {
            return Err(bad(line, format!("duplicate record for {:?}", rec.subclaim)));
        }
    }
    if let Some(missing) = required.difference(&covered).next() {
        return Err(ReplayError::Missing(format!("{missing:?}")));
    }
    Ok(claim)
}
