//! Opening blocks at `z` and assembling the inflated `K4[H1, H2, H3]`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::blocks::{BlockName, BlockSpec};
use crate::graph::{Graph, GraphError, MAX_ORDER};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InflateError {
    #[error("opened block {block}: vertex {vertex} has degree {degree}, expected {expected}")]
    Degree { block: String, vertex: usize, degree: usize, expected: usize },
    #[error("inflation would have {0} vertices, more than {MAX_ORDER}")]
    TooLarge(usize),
    #[error("order table limited to n <= {max}, got {n}")]
    OrderLimit { n: usize, max: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// `F = H - z` with the exits `(a, b, c)` relabeled into `F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenedGraph {
    pub graph: Graph,
    pub exits: [usize; 3],
    pub provenance: BlockName,
    /// Label in `H` of each vertex of `F`.
    pub original: Vec<usize>,
}

impl OpenedGraph {
    fn validate(&self) -> Result<(), InflateError> {
        for v in 0..self.graph.order() {
            let expected = if self.exits.contains(&v) { 2 } else { 3 };
            let degree = self.graph.degree(v);
            if degree != expected {
                return Err(InflateError::Degree { block: self.provenance.to_string(), vertex: v, degree, expected });
            }
        }
        Ok(())
    }

    /// Puts `z` back and joins it to the exits, restoring the original labels.
    pub fn reclose(&self) -> Result<Graph, GraphError> {
        let n = self.graph.order() + 1;
        let z = (0..n).find(|v| !self.original.contains(v)).expect("one label is free");
        let mut h = Graph::empty(n)?;
        for (u, v) in self.graph.edges() {
            h.add_edge(self.original[u], self.original[v])?;
        }
        for &e in &self.exits {
            h.add_edge(z, self.original[e])?;
        }
        Ok(h)
    }
}

pub fn open_at(block: &BlockSpec) -> Result<OpenedGraph, InflateError> {
    let (graph, original) = block.graph.delete_vertex(block.z)?;
    let relabel = |v: usize| original.iter().position(|&o| o == v).expect("exit survives deletion");
    let opened = OpenedGraph { exits: block.exits.map(relabel), graph, provenance: block.name.clone(), original };
    opened.validate()?;
    Ok(opened)
}

/// The inflated graph with the layout needed to interpret it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inflation {
    pub graph: Graph,
    pub hub: usize,
    /// First vertex of each block; block `i` occupies `offsets[i]..offsets[i] + |F_i|`.
    pub offsets: [usize; 3],
    /// `(a_i, b_i, c_i)` in the inflated labeling.
    pub exits: [[usize; 3]; 3],
    pub blocks: [BlockName; 3],
}

impl Inflation {
    /// Index of the block containing `v`, or `None` for the hub.
    pub fn block_of(&self, v: usize) -> Option<usize> {
        if v == self.hub {
            return None;
        }
        (0..3).rev().find(|&i| v >= self.offsets[i])
    }

    pub fn provenance(&self) -> String {
        format!("# K4[{},{},{}] wiring=b_i-c_{{i-1}}", self.blocks[0], self.blocks[1], self.blocks[2])
    }
}

/// Hub `x = 0` joined to every `a_i`; cross edges `b_i c_{i-1}` (indices mod 3),
/// i.e. `b_1 c_3`, `b_2 c_1`, `b_3 c_2`.
pub fn k4_inflate(o1: &OpenedGraph, o2: &OpenedGraph, o3: &OpenedGraph) -> Result<Inflation, InflateError> {
    let parts = [o1, o2, o3];
    for p in parts {
        p.validate()?;
    }
    let n = 1 + parts.iter().map(|p| p.graph.order()).sum::<usize>();
    if n > MAX_ORDER {
        return Err(InflateError::TooLarge(n));
    }
    let hub = 0;
    let mut offsets = [0; 3];
    let mut next = 1;
    for (i, p) in parts.iter().enumerate() {
        offsets[i] = next;
        next += p.graph.order();
    }
    let mut g = Graph::empty(n)?;
    let mut exits = [[0; 3]; 3];
    for (i, p) in parts.iter().enumerate() {
        for (u, v) in p.graph.edges() {
            g.add_edge(offsets[i] + u, offsets[i] + v)?;
        }
        exits[i] = p.exits.map(|e| offsets[i] + e);
    }
    for i in 0..3 {
        let [a, b, _] = exits[i];
        g.add_edge(hub, a)?;
        let c_prev = exits[(i + 2) % 3][2];
        g.add_edge(b, c_prev)?;
    }
    Ok(Inflation {
        graph: g,
        hub,
        offsets,
        exits,
        blocks: [o1.provenance.clone(), o2.provenance.clone(), o3.provenance.clone()],
    })
}

/// Opens three blocks and inflates.
pub fn build(b1: &BlockSpec, b2: &BlockSpec, b3: &BlockSpec) -> Result<Inflation, InflateError> {
    k4_inflate(&open_at(b1)?, &open_at(b2)?, &open_at(b3)?)
}

/// Order of `K4[H1, H2, H3]` for blocks of the given orders.
pub fn inflated_order(orders: [usize; 3]) -> usize {
    1 + orders.iter().map(|h| h - 1).sum::<usize>()
}

pub const ORDER_TABLE_MAX: usize = 200;

/// One block of the catalog used for the order table.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CatalogEntry {
    pub order: usize,
    pub name: BlockName,
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            BlockName::Petersen => write!(f, "P"),
            BlockName::Coxeter => write!(f, "C"),
            BlockName::Snark22 => write!(f, "S22"),
            BlockName::FlowerSnark(k) => write!(f, "J{k}"),
            BlockName::Custom(s) => write!(f, "{s}"),
        }
    }
}

impl PartialOrd for BlockName {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BlockName {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.to_string().cmp(&other.to_string())
    }
}

/// Petersen (10), the order-22 snark, Coxeter (28) and `J_k` (4k) for odd `k >= 5`.
pub fn block_catalog(max_block_order: usize) -> Vec<CatalogEntry> {
    let mut cat = vec![
        CatalogEntry { order: 10, name: BlockName::Petersen },
        CatalogEntry { order: 22, name: BlockName::Snark22 },
        CatalogEntry { order: 28, name: BlockName::Coxeter },
    ];
    cat.extend(
        (5..)
            .step_by(2)
            .take_while(|k| 4 * k <= max_block_order)
            .map(|k| CatalogEntry { order: 4 * k, name: BlockName::FlowerSnark(k) }),
    );
    cat.retain(|e| e.order <= max_block_order);
    cat.sort();
    cat
}

/// Every order `n <= n_max` reachable as `K4[H1, H2, H3]` over the catalog, with
/// the block multisets realising it.
pub fn achievable_orders(n_max: usize) -> Result<BTreeMap<usize, Vec<[CatalogEntry; 3]>>, InflateError> {
    if n_max > ORDER_TABLE_MAX {
        return Err(InflateError::OrderLimit { n: n_max, max: ORDER_TABLE_MAX });
    }
    // the two other blocks take at least 9 vertices each
    let cat = block_catalog(n_max.saturating_sub(18));
    let mut table: BTreeMap<usize, Vec<[CatalogEntry; 3]>> = BTreeMap::new();
    for i in 0..cat.len() {
        for j in i..cat.len() {
            for k in j..cat.len() {
                let n = inflated_order([cat[i].order, cat[j].order, cat[k].order]);
                if n <= n_max {
                    table.entry(n).or_default().push([cat[i].clone(), cat[j].clone(), cat[k].clone()]);
                }
            }
        }
    }
    Ok(table)
}
