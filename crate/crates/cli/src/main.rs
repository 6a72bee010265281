use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use cubic_mnt::blocks::{builtin, certify_block, BlockError, BlockName, BlockSpec};
use cubic_mnt::inflate::{achievable_orders, build};
use cubic_mnt::verify::{
    all_paths_up_to, bound_check, deg2_structure_check, describe_counterexample, edge_bound, exhaustive_min_search,
    lemma_hypo_paths_check, lemma_subgraph_check, replay_lines, Certificate, LemmaError, Verdict, Verifier,
    VerifyError,
};

mod dot;
mod input;

use input::{resolve_block, GraphFile, Resolved};

#[derive(Parser, Debug)]
#[command(name = "cubic-mnt", version, about = "Build and certify cubic maximal nontraceable graphs")]
struct Cli {
    /// Worker threads for the parallel sweeps (default: one per CPU).
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Node budget per Hamiltonicity query (default: unlimited up to 40 vertices).
    #[arg(long, global = true)]
    budget: Option<u64>,

    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Block file for the order-22 snark.
    #[arg(long, global = true)]
    snark22: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a built-in block (petersen, coxeter, jk=<k>, snark22) in block file format.
    Gen { block: String },
    /// Build K4[b1, b2, b3]; each argument is a block name or a block file.
    Build {
        b1: String,
        b2: String,
        b3: String,
        /// Skip certifying the blocks (MHH and Condition C) before building.
        #[arg(long)]
        force: bool,
    },
    /// Certify a property of the graph in FILE.
    Verify { file: PathBuf, property: Property },
    /// Re-check a certificate against a graph without searching.
    Replay { file: PathBuf, certificate: PathBuf },
    /// Orders reachable by the inflation up to N_MAX, with the block multisets.
    Orders { n_max: usize },
    /// Minimum size of a 2-connected MNT graph on N vertices (N <= 7).
    SearchMin {
        n: usize,
        /// Also print the extremal graphs as graph6.
        #[arg(long)]
        emit: bool,
    },
    /// Graphviz DOT for the graph in FILE, coloring hub and exits when known.
    ExportDot { file: PathBuf },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Property {
    Mnt,
    Mnh,
    Hypo,
    Mhh,
    #[value(name = "condC")]
    CondC,
    #[value(name = "extC")]
    ExtC,
    Bounds,
    Lemmas,
}

enum Failure {
    Refuted(String),
    Usage(anyhow::Error),
    Block(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<BlockError>() {
            Some(BlockError::Certification { .. }) => Failure::Block(format!("{e:#}")),
            _ => Failure::Usage(e),
        }
    }
}

macro_rules! usage {
    ($e:expr) => {
        $e.map_err(|e| Failure::Usage(anyhow!(e)))
    };
}

type Outcome = Result<(), Failure>;

fn emit(out: &Option<PathBuf>, text: &str) -> Outcome {
    match out {
        Some(path) => usage!(fs::write(path, text).with_context(|| format!("writing {}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn certificate_outcome(cert: &Certificate, out: &Option<PathBuf>) -> Outcome {
    match &cert.verdict {
        Verdict::Certified => {
            let text = cert.to_json_lines();
            emit(out, &text)?;
            eprintln!("certified: {} records", text.lines().count());
            Ok(())
        }
        Verdict::Refuted(cx) => Err(Failure::Refuted(describe_counterexample(cx))),
        Verdict::Incomplete(what) => Err(Failure::Refuted(format!("incomplete, budget exhausted: {what}"))),
    }
}

fn lemma_failure(e: LemmaError) -> Failure {
    match e {
        LemmaError::Precondition(msg) => Failure::Refuted(format!("precondition not met: {msg}")),
        LemmaError::Incomplete(msg) => Failure::Refuted(format!("incomplete, budget exhausted: {msg}")),
    }
}

fn load_block(file: &GraphFile, path: &Path) -> Result<BlockSpec, Failure> {
    let name = BlockName::Custom(path.file_stem().and_then(|s| s.to_str()).unwrap_or("block").to_string());
    usage!(file.block(name))?
        .ok_or_else(|| Failure::Usage(anyhow!("{} has no z=.. a=.. b=.. c=.. header", path.display())))
}

fn verify(cli: &Cli, v: &Verifier, path: &Path, property: Property) -> Outcome {
    let file = usage!(GraphFile::read(path))?;
    let g = &file.graph;
    match property {
        Property::Mnt => certificate_outcome(&v.is_mnt(g), &cli.out),
        Property::Mnh => certificate_outcome(&v.is_mnh(g), &cli.out),
        Property::Hypo => certificate_outcome(&v.is_hypohamiltonian(g), &cli.out),
        Property::Mhh => certificate_outcome(&v.is_mhh(g), &cli.out),
        Property::CondC | Property::ExtC => {
            let block = load_block(&file, path)?;
            let cert = match property {
                Property::CondC => v.condition_c(&block),
                _ => v.extended_condition(&block),
            };
            match cert {
                Ok(cert) => certificate_outcome(&cert, &cli.out),
                Err(VerifyError::Precondition(msg)) => Err(Failure::Refuted(format!("precondition not met: {msg}"))),
                Err(e) => Err(Failure::Usage(e.into())),
            }
        }
        Property::Bounds => {
            let cert = v.is_mnt(g);
            let holds = bound_check(g, &cert).map_err(lemma_failure)?;
            let (n, m) = (g.order(), g.count_degree2());
            let line = format!("n={n} m={m} size={} bound={}\n", g.size(), edge_bound(n, m));
            emit(&cli.out, &line)?;
            if holds {
                Ok(())
            } else {
                Err(Failure::Refuted(format!("size below the bound: {}", line.trim())))
            }
        }
        Property::Lemmas => {
            let mut report = String::new();
            if file.header.is_some() {
                let block = load_block(&file, path)?;
                let mhh = v.is_mhh(g);
                let r = lemma_hypo_paths_check(&block, &mhh, v).map_err(lemma_failure)?;
                report.push_str(&format!("path facts: {} queries, clean={}\n", r.queries, r.is_clean()));
                emit(&cli.out, &report)?;
                return if r.is_clean() { Ok(()) } else { Err(Failure::Refuted(format!("{r:?}"))) };
            }
            let cert = v.is_mnt(g);
            let d = deg2_structure_check(g, &cert).map_err(lemma_failure)?;
            report.push_str(&format!("degree-2 vertices: {:?}, violations: {}\n", d.degree2, d.violations.len()));
            let mut checked = 0;
            let mut bad = Vec::new();
            for q in all_paths_up_to(g, 5) {
                match lemma_subgraph_check(g, &cert, &q) {
                    Ok(true) => checked += 1,
                    Ok(false) => bad.push(q),
                    Err(LemmaError::Precondition(_)) => {}
                    Err(e) => return Err(lemma_failure(e)),
                }
            }
            report.push_str(&format!("short paths: {checked} checked, {} violations\n", bad.len()));
            emit(&cli.out, &report)?;
            if d.is_clean() && bad.is_empty() {
                Ok(())
            } else {
                Err(Failure::Refuted(format!("{:?} {bad:?}", d.violations)))
            }
        }
    }
}

fn build_cmd(cli: &Cli, v: &Verifier, names: [&str; 3], force: bool) -> Outcome {
    let mut blocks = Vec::new();
    for name in names {
        let block = match resolve_block(name, cli.snark22.as_deref(), v, force)? {
            Resolved::Certified(b) => b,
            Resolved::Unchecked(b) => {
                if !force {
                    certify_block(&b, v).map_err(|e| Failure::Block(format!("{}: {e}", b.name)))?;
                }
                b
            }
        };
        blocks.push(block);
    }
    let inf = usage!(build(&blocks[0], &blocks[1], &blocks[2]))?;
    eprintln!("n = {}, |E| = {}", inf.graph.order(), inf.graph.size());
    emit(&cli.out, &format!("{}\n{}\n", inf.provenance(), inf.graph.to_graph6()))
}

fn export_dot(cli: &Cli, path: &Path) -> Outcome {
    let file = usage!(GraphFile::read(path))?;
    let marks = if let Some((z, exits)) = file.header {
        dot::Marks::block(z, exits)
    } else {
        inflation_marks(cli, &file).unwrap_or_default()
    };
    emit(&cli.out, &dot::to_dot(&file.graph, &marks))
}

/// Rebuilds the inflation named in a `# K4[..]` comment and uses its layout
/// if it reproduces the graph.
fn inflation_marks(cli: &Cli, file: &GraphFile) -> Option<dot::Marks> {
    let layout = file.comments.iter().find_map(|c| c.strip_prefix("K4["))?;
    let names: Vec<&str> = layout.split(']').next()?.split(',').collect();
    let [a, b, c] = names.as_slice() else { return None };
    let v = Verifier::default();
    let resolve = |n: &str| -> Option<BlockSpec> {
        let name: BlockName = n.parse().ok()?;
        match name {
            BlockName::Snark22 => match resolve_block(n, cli.snark22.as_deref(), &v, true).ok()? {
                Resolved::Certified(b) | Resolved::Unchecked(b) => Some(b),
            },
            other => builtin(&other).ok(),
        }
    };
    let inf = build(&resolve(a)?, &resolve(b)?, &resolve(c)?).ok()?;
    (inf.graph == file.graph).then(|| dot::Marks::inflation(&inf))
}

fn run(cli: &Cli) -> Outcome {
    if let Some(workers) = cli.workers {
        if workers == 0 {
            return Err(Failure::Usage(anyhow!("--workers must be at least 1")));
        }
        usage!(rayon::ThreadPoolBuilder::new().num_threads(workers).build_global())?;
    }
    let v = Verifier::with_budget(cli.budget);
    match &cli.command {
        Command::Gen { block } => {
            let name: BlockName = usage!(block.parse::<BlockName>())?;
            let spec = match name {
                BlockName::Snark22 => match resolve_block(block, cli.snark22.as_deref(), &v, false)? {
                    Resolved::Certified(b) | Resolved::Unchecked(b) => b,
                },
                other => usage!(builtin(&other))?,
            };
            emit(&cli.out, &spec.to_file_string())
        }
        Command::Build { b1, b2, b3, force } => build_cmd(cli, &v, [b1, b2, b3], *force),
        Command::Verify { file, property } => verify(cli, &v, file, *property),
        Command::Replay { file, certificate } => {
            let g = usage!(GraphFile::read(file))?.graph;
            let text =
                usage!(fs::read_to_string(certificate).with_context(|| format!("reading {}", certificate.display())))?;
            match replay_lines(&g, &text) {
                Ok(claim) => {
                    eprintln!("replayed: {claim:?}");
                    Ok(())
                }
                Err(e) => Err(Failure::Refuted(format!("replay failed: {e}"))),
            }
        }
        Command::Orders { n_max } => {
            let table = usage!(achievable_orders(*n_max))?;
            let mut text = String::new();
            for (n, multisets) in table {
                let sets: Vec<String> =
                    multisets.iter().map(|m| m.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")).collect();
                text.push_str(&format!("{n}\t{}\n", sets.join(" ")));
            }
            emit(&cli.out, &text)
        }
        Command::SearchMin { n, emit: emit_graphs } => {
            let s = usage!(exhaustive_min_search(*n, &v))?;
            let mut text = match s.min_size {
                Some(m) => format!("n={n} min_size={m} extremal={} examined={}\n", s.extremal.len(), s.graphs_examined),
                None => format!("n={n} min_size=none examined={}\n", s.graphs_examined),
            };
            if *emit_graphs {
                for g in &s.extremal {
                    text.push_str(&format!("{}\n", g.to_graph6()));
                }
            }
            emit(&cli.out, &text)
        }
        Command::ExportDot { file } => export_dot(cli, file),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Refuted(msg)) => {
            eprintln!("refuted: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Block(msg)) => {
            eprintln!("block certification failed: {msg}");
            ExitCode::from(3)
        }
    }
}
