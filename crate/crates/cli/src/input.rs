use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use cubic_mnt::blocks::{builtin, parse_header, snark22_from_file, BlockName, BlockSpec};
use cubic_mnt::graph::Graph;
use cubic_mnt::verify::Verifier;

/// A graph file: `#` comment lines, an optional `z=.. a=.. b=.. c=..` header,
/// and one graph6 line.
#[derive(Debug)]
pub struct GraphFile {
    pub graph: Graph,
    pub header: Option<(usize, [usize; 3])>,
    pub comments: Vec<String>,
}

impl GraphFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut graph = None;
        let mut header = None;
        let mut comments = Vec::new();
        for (i, line) in text.lines().map(str::trim).enumerate() {
            if line.is_empty() {
                continue;
            }
            if let Some(c) = line.strip_prefix('#') {
                comments.push(c.trim().to_string());
            } else if line.starts_with("z=") {
                header = Some(parse_header(line)?);
            } else if graph.is_some() {
                bail!("line {}: more than one graph6 record", i + 1);
            } else {
                graph = Some(Graph::from_graph6(line).with_context(|| format!("line {}", i + 1))?);
            }
        }
        let graph = graph.context("no graph6 record")?;
        Ok(GraphFile { graph, header, comments })
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        GraphFile::parse(&text).with_context(|| format!("parsing {}", path.display()))
    }

    /// The file as a block, when it carries a header.
    pub fn block(&self, name: BlockName) -> Result<Option<BlockSpec>> {
        match self.header {
            Some((z, exits)) => Ok(Some(BlockSpec::new(name, self.graph.clone(), z, exits)?)),
            None => Ok(None),
        }
    }
}

/// How a block argument was resolved.
pub enum Resolved {
    /// Already certified while loading.
    Certified(BlockSpec),
    Unchecked(BlockSpec),
}

/// Resolves a block argument: a built-in name, `snark22` (read from
/// `snark22`), or a path to a block file.
pub fn resolve_block(arg: &str, snark22: Option<&Path>, verifier: &Verifier, force: bool) -> Result<Resolved> {
    let path = Path::new(arg);
    if path.is_file() {
        let file = GraphFile::read(path)?;
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("block");
        let block = file
            .block(BlockName::Custom(stem.to_string()))?
            .with_context(|| format!("{arg} has no z=.. a=.. b=.. c=.. header"))?;
        return Ok(Resolved::Unchecked(block));
    }
    let name: BlockName = arg.parse()?;
    if name != BlockName::Snark22 {
        return Ok(Resolved::Unchecked(builtin(&name)?));
    }
    let Some(path) = snark22 else {
        bail!("the order-22 snark is not built in; pass its block file with --snark22 PATH");
    };
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if force {
        Ok(Resolved::Unchecked(BlockSpec::parse_file(BlockName::Snark22, &text)?))
    } else {
        Ok(Resolved::Certified(snark22_from_file(&text, verifier)?))
    }
}
