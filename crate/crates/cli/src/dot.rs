use std::fmt::Write;

use cubic_mnt::graph::Graph;
use cubic_mnt::inflate::Inflation;

/// Vertex roles used for coloring.
#[derive(Debug, Default)]
pub struct Marks {
    pub hub: Option<usize>,
    pub exits: Vec<usize>,
    /// Block index of each vertex, for inflations.
    pub block: Vec<Option<usize>>,
}

impl Marks {
    pub fn block(z: usize, exits: [usize; 3]) -> Self {
        Marks { hub: Some(z), exits: exits.to_vec(), block: Vec::new() }
    }

    pub fn inflation(inf: &Inflation) -> Self {
        Marks {
            hub: Some(inf.hub),
            exits: inf.exits.iter().flatten().copied().collect(),
            block: (0..inf.graph.order()).map(|v| inf.block_of(v)).collect(),
        }
    }
}

const BLOCK_COLORS: [&str; 3] = ["lightblue", "palegreen", "khaki"];

pub fn to_dot(g: &Graph, marks: &Marks) -> String {
    let mut out = String::from("graph G {\n  node [shape=circle];\n");
    for v in 0..g.order() {
        let mut attrs = Vec::new();
        if marks.hub == Some(v) {
            attrs.push("style=filled, fillcolor=red".to_string());
        } else if marks.exits.contains(&v) {
            attrs.push("style=filled, fillcolor=orange".to_string());
        } else if let Some(Some(b)) = marks.block.get(v) {
            attrs.push(format!("style=filled, fillcolor={}", BLOCK_COLORS[*b]));
        }
        if attrs.is_empty() {
            writeln!(out, "  {v};").unwrap();
        } else {
            writeln!(out, "  {v} [{}];", attrs.join(", ")).unwrap();
        }
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}
