//! Cubic building blocks with a designated vertex `z` and its labeled
//! neighbours `(a, b, c)`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{Graph, Graph6Error, GraphError};
use crate::verify::{self, Counterexample, Verdict, Verifier};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BlockName {
    Petersen,
    Coxeter,
    FlowerSnark(usize),
    Snark22,
    Custom(String),
}

impl fmt::Display for BlockName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockName::Petersen => write!(f, "petersen"),
            BlockName::Coxeter => write!(f, "coxeter"),
            BlockName::FlowerSnark(k) => write!(f, "jk={k}"),
            BlockName::Snark22 => write!(f, "snark22"),
            BlockName::Custom(name) => write!(f, "custom:{name}"),
        }
    }
}

impl FromStr for BlockName {
    type Err = BlockError;

    fn from_str(s: &str) -> Result<Self, BlockError> {
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "petersen" | "p" => return Ok(BlockName::Petersen),
            "coxeter" | "c" => return Ok(BlockName::Coxeter),
            "snark22" | "s22" | "s" => return Ok(BlockName::Snark22),
            _ => {}
        }
        let k = lower.strip_prefix("jk=").or_else(|| lower.strip_prefix('j')).and_then(|k| k.parse::<usize>().ok());
        if let Some(k) = k {
            return Ok(BlockName::FlowerSnark(k));
        }
        if let Some(name) = s.trim().strip_prefix("custom:") {
            return Ok(BlockName::Custom(name.to_string()));
        }
        Err(BlockError::UnknownName(s.to_string()))
    }
}

#[derive(Debug, Error)]
pub enum BlockError {
    #[error("unknown block name {0:?}")]
    UnknownName(String),
    #[error("flower snark needs odd k >= 5, got {0}")]
    FlowerParameter(usize),
    #[error("block has {actual} vertices, expected {expected}")]
    WrongOrder { expected: usize, actual: usize },
    #[error("block is not cubic (vertex {vertex} has degree {degree})")]
    NotCubic { vertex: usize, degree: usize },
    #[error("exit labels {exits:?} are not the three neighbours of z = {z}")]
    BadExits { z: usize, exits: [usize; 3] },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph6: {0}")]
    Graph6(#[from] Graph6Error),
    #[error("block file: {0}")]
    Format(String),
    #[error("certification failed in {check}: {detail}")]
    Certification { check: &'static str, detail: String },
}

/// A named cubic block `H` with designated vertex `z` and exits `(a, b, c)`.
///
/// The label `a` is the exit wired to the hub of the inflation and the one
/// Condition (C) refers to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSpec {
    pub name: BlockName,
    pub graph: Graph,
    pub z: usize,
    pub exits: [usize; 3],
}

impl BlockSpec {
    /// Wraps `graph`, checking it is cubic and that `exits` are exactly `N(z)`.
    pub fn new(name: BlockName, graph: Graph, z: usize, exits: [usize; 3]) -> Result<Self, BlockError> {
        if let Some(v) = (0..graph.order()).find(|&v| graph.degree(v) != 3) {
            return Err(BlockError::NotCubic { vertex: v, degree: graph.degree(v) });
        }
        if z >= graph.order() {
            return Err(GraphError::Vertex { v: z, n: graph.order() }.into());
        }
        let mask = exits.iter().fold(0u128, |m, &e| m | 1u128.checked_shl(e as u32).unwrap_or(0));
        if mask != graph.row(z) || mask.count_ones() != 3 {
            return Err(BlockError::BadExits { z, exits });
        }
        Ok(BlockSpec { name, graph, z, exits })
    }

    /// Same graph with a different designated vertex; exits in ascending order.
    pub fn redesignate(&self, z: usize) -> Result<Self, BlockError> {
        if z >= self.graph.order() {
            return Err(GraphError::Vertex { v: z, n: self.graph.order() }.into());
        }
        let nb: Vec<usize> = self.graph.neighbors(z).collect();
        let exits = [nb[0], nb[1], nb[2]];
        BlockSpec::new(self.name.clone(), self.graph.clone(), z, exits)
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    /// Block data file: a header line then one graph6 line.
    pub fn to_file_string(&self) -> String {
        let [a, b, c] = self.exits;
        format!("# {}\nz={} a={a} b={b} c={c}\n{}\n", self.name, self.z, self.graph.to_graph6())
    }

    /// Parses the block data file format. Blank lines and `#` comments are skipped.
    pub fn parse_file(name: BlockName, text: &str) -> Result<Self, BlockError> {
        let mut header: Option<(usize, [usize; 3])> = None;
        let mut graph: Option<Graph> = None;
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            if line.starts_with("z=") {
                header = Some(parse_header(line)?);
            } else if graph.is_none() {
                graph = Some(Graph::from_graph6(line)?);
            } else {
                return Err(BlockError::Format("more than one graph6 line".into()));
            }
        }
        let graph = graph.ok_or_else(|| BlockError::Format("missing graph6 line".into()))?;
        let (z, exits) = header.ok_or_else(|| BlockError::Format("missing `z=.. a=.. b=.. c=..` header".into()))?;
        BlockSpec::new(name, graph, z, exits)
    }
}

/// Parses `z=<v> a=<v> b=<v> c=<v>`.
pub fn parse_header(line: &str) -> Result<(usize, [usize; 3]), BlockError> {
    let mut vals = [None; 4];
    for tok in line.split_whitespace() {
        let (key, val) = tok.split_once('=').ok_or_else(|| BlockError::Format(format!("bad header token {tok:?}")))?;
        let slot = match key {
            "z" => 0,
            "a" => 1,
            "b" => 2,
            "c" => 3,
            _ => return Err(BlockError::Format(format!("unknown header key {key:?}"))),
        };
        let v = val.parse::<usize>().map_err(|_| BlockError::Format(format!("bad vertex {val:?} for {key}")))?;
        vals[slot] = Some(v);
    }
    match vals {
        [Some(z), Some(a), Some(b), Some(c)] => Ok((z, [a, b, c])),
        _ => Err(BlockError::Format(format!("header {line:?} must set z, a, b and c"))),
    }
}

/// Outer 5-cycle `u_i = i`, inner pentagram `v_i = 5 + i` with `v_i v_{i+2}`,
/// spokes `u_i v_i`. `z = u_0`, exits `(u_1, u_4, v_0)`.
pub fn petersen() -> BlockSpec {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, 5 + i));
    }
    let g = Graph::from_edges(10, &edges).expect("static construction");
    BlockSpec::new(BlockName::Petersen, g, 0, [1, 4, 5]).expect("static construction")
}

/// Three heptagons on `a_i = i`, `b_i = 7 + i`, `c_i = 14 + i` with steps 1, 2
/// and 3, and hubs `d_i = 21 + i` joined to `a_i, b_i, c_i`.
/// `z = d_0`, exits `(a_0, b_0, c_0)`.
pub fn coxeter() -> BlockSpec {
    let mut edges = Vec::with_capacity(42);
    for i in 0..7 {
        edges.push((i, (i + 1) % 7));
        edges.push((7 + i, 7 + (i + 2) % 7));
        edges.push((14 + i, 14 + (i + 3) % 7));
        edges.extend([(21 + i, i), (21 + i, 7 + i), (21 + i, 14 + i)]);
    }
    let g = Graph::from_edges(28, &edges).expect("static construction");
    BlockSpec::new(BlockName::Coxeter, g, 21, [0, 7, 14]).expect("static construction")
}

/// Flower snark `J_k`: claws with centres `h_i = i` and leaves `t_i = k + i`,
/// `u_i = 2k + i`, `w_i = 3k + i`; the cycle `t_0 .. t_{k-1}` and the
/// `2k`-cycle `u_0 .. u_{k-1} w_0 .. w_{k-1}`. `z = h_0`, exits `(t_0, u_0, w_0)`.
pub fn flower_snark(k: usize) -> Result<BlockSpec, BlockError> {
    if k < 5 || k.is_multiple_of(2) || 4 * k > crate::graph::MAX_ORDER {
        return Err(BlockError::FlowerParameter(k));
    }
    let (h, t, u, w) = (0, k, 2 * k, 3 * k);
    let mut edges = Vec::with_capacity(6 * k);
    for i in 0..k {
        edges.extend([(h + i, t + i), (h + i, u + i), (h + i, w + i)]);
        edges.push((t + i, t + (i + 1) % k));
    }
    // the 2k-cycle u_0 .. u_{k-1} w_0 .. w_{k-1}
    let inner: Vec<usize> = (0..k).map(|i| u + i).chain((0..k).map(|i| w + i)).collect();
    for i in 0..2 * k {
        edges.push((inner[i], inner[(i + 1) % (2 * k)]));
    }
    let g = Graph::from_edges(4 * k, &edges)?;
    BlockSpec::new(BlockName::FlowerSnark(k), g, h, [t, u, w])
}

/// Wraps an externally supplied order-22 snark and certifies it.
///
/// Structural checks run first; then MHH and Condition (C) are certified and
/// the first failing sub-check is reported.
pub fn snark22(source: &str, z: usize, exits: [usize; 3], verifier: &Verifier) -> Result<BlockSpec, BlockError> {
    let graph = Graph::from_graph6(source)?;
    if graph.order() != 22 {
        return Err(BlockError::WrongOrder { expected: 22, actual: graph.order() });
    }
    let block = BlockSpec::new(BlockName::Snark22, graph, z, exits)?;
    certify_block(&block, verifier)?;
    Ok(block)
}

/// Loads a block data file for the order-22 snark and certifies it.
pub fn snark22_from_file(text: &str, verifier: &Verifier) -> Result<BlockSpec, BlockError> {
    let mut header = None;
    let mut record = None;
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        if line.starts_with("z=") {
            header = Some(parse_header(line)?);
        } else {
            record = Some(line.to_string());
        }
    }
    let (z, exits) = header.ok_or_else(|| BlockError::Format("missing header".into()))?;
    let record = record.ok_or_else(|| BlockError::Format("missing graph6 line".into()))?;
    snark22(&record, z, exits, verifier)
}

/// Certifies a block for use in the inflation: MHH and Condition (C).
pub fn certify_block(block: &BlockSpec, verifier: &Verifier) -> Result<(), BlockError> {
    let mhh = verifier.is_mhh(&block.graph);
    check_verdict("mhh", &mhh.verdict)?;
    let cond = verifier
        .condition_c(block)
        .map_err(|e| BlockError::Certification { check: "condition_c", detail: e.to_string() })?;
    check_verdict("condition_c", &cond.verdict)
}

fn check_verdict(check: &'static str, verdict: &Verdict) -> Result<(), BlockError> {
    match verdict {
        Verdict::Certified => Ok(()),
        Verdict::Refuted(cx) => Err(BlockError::Certification { check, detail: describe(cx) }),
        Verdict::Incomplete(what) => Err(BlockError::Certification { check, detail: format!("incomplete: {what}") }),
    }
}

fn describe(cx: &Counterexample) -> String {
    verify::describe_counterexample(cx)
}

/// The blocks the toolkit can build without external data.
pub fn builtin(name: &BlockName) -> Result<BlockSpec, BlockError> {
    match name {
        BlockName::Petersen => Ok(petersen()),
        BlockName::Coxeter => Ok(coxeter()),
        BlockName::FlowerSnark(k) => flower_snark(*k),
        other => Err(BlockError::UnknownName(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn petersen_shape() {
        let p = petersen();
        assert_eq!((p.order(), p.graph.size()), (10, 15));
        assert!(p.graph.is_cubic());
        assert_eq!(p.graph.count_degree2(), 0);
        assert_eq!(p.graph.girth(), Some(5));
    }

    #[test]
    fn coxeter_shape() {
        let c = coxeter();
        assert_eq!((c.order(), c.graph.size()), (28, 42));
        assert!(c.graph.is_cubic());
        assert_eq!(c.graph.girth(), Some(7));
    }

    #[test]
    fn flower_snarks() {
        for k in [5, 7, 9, 11] {
            let j = flower_snark(k).unwrap();
            assert_eq!(j.order(), 4 * k);
            assert_eq!(j.graph.size(), 6 * k);
            assert!(j.graph.is_cubic());
            assert!(j.graph.is_three_connected(), "J{k}");
        }
        assert_eq!(flower_snark(5).unwrap().graph.girth(), Some(5));
        assert_eq!(flower_snark(7).unwrap().graph.girth(), Some(6));
        for bad in [3, 4, 6, 33] {
            assert!(matches!(flower_snark(bad), Err(BlockError::FlowerParameter(_))));
        }
    }

    #[test]
    fn names_parse() {
        assert_eq!("petersen".parse::<BlockName>().unwrap(), BlockName::Petersen);
        assert_eq!("jk=7".parse::<BlockName>().unwrap(), BlockName::FlowerSnark(7));
        assert_eq!("J5".parse::<BlockName>().unwrap(), BlockName::FlowerSnark(5));
        assert_eq!("snark22".parse::<BlockName>().unwrap(), BlockName::Snark22);
        assert!("dodecahedron".parse::<BlockName>().is_err());
        for name in [BlockName::Petersen, BlockName::Coxeter, BlockName::FlowerSnark(9), BlockName::Snark22] {
            assert_eq!(name.to_string().parse::<BlockName>().unwrap(), name);
        }
    }

    #[test]
    fn file_roundtrip() {
        let c = coxeter();
        let text = c.to_file_string();
        let back = BlockSpec::parse_file(BlockName::Coxeter, &text).unwrap();
        assert_eq!(back, c);
        assert!(BlockSpec::parse_file(BlockName::Coxeter, "z=0 a=1 b=2\nI???????G\n").is_err());
    }

    #[test]
    fn exits_must_match_neighbourhood() {
        let p = petersen();
        let err = BlockSpec::new(BlockName::Petersen, p.graph.clone(), 0, [1, 4, 6]).unwrap_err();
        assert!(matches!(err, BlockError::BadExits { .. }));
        let re = p.redesignate(7).unwrap();
        assert_eq!(re.exits, [2, 5, 9]);
    }

    #[test]
    fn snark22_rejects_wrong_shapes() {
        let v = Verifier::default();
        // 22-vertex cycle: right order, not cubic
        let c22 = Graph::cycle(22).unwrap().to_graph6();
        assert!(matches!(snark22(&c22, 0, [1, 21, 2], &v), Err(BlockError::NotCubic { .. })));
        let p = petersen().graph.to_graph6();
        assert!(matches!(snark22(&p, 0, [1, 4, 5], &v), Err(BlockError::WrongOrder { actual: 10, .. })));
    }
}
