//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cubic_mnt::blocks::{coxeter, flower_snark, petersen, BlockSpec};
use cubic_mnt::graph::Graph;
use cubic_mnt::ham::{oracle_solve, solve, HamQuery};
use cubic_mnt::inflate::build;
use cubic_mnt::verify::{
    all_paths_up_to, bound_check, deg2_structure_check, edge_bound, exhaustive_min_search, lemma_hypo_paths_check,
    lemma_subgraph_check, mnt_graphs, replay_lines, replay_records, Certificate, RecordData, SubClaim, Verifier,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = Box<dyn Fn(&mut Run) -> Outcome>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed <= limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn count_witnesses(cert: &Certificate, pred: fn(&SubClaim) -> bool) -> usize {
    cert.positive_witnesses.iter().filter(|w| pred(&w.subclaim)).count()
}

/// Certificates gathered along the way for the replay criterion.
struct Run {
    verifier: Verifier,
    certificates: Vec<(String, Graph, Certificate)>,
    inflations: Vec<(String, Graph, Certificate)>,
}

impl Run {
    fn keep(&mut self, label: &str, g: &Graph, cert: &Certificate) {
        self.certificates.push((label.to_string(), g.clone(), cert.clone()));
    }
}

fn petersen_mhh(run: &mut Run) -> Outcome {
    let t = Instant::now();
    let p = petersen().graph;
    let cert = run.verifier.is_mhh(&p);
    let elapsed = t.elapsed();
    ensure(cert.is_certified(), || format!("verdict {:?}", cert.verdict))?;
    let deletions = count_witnesses(&cert, |s| matches!(s, SubClaim::HamiltonianWithout { .. }));
    let nonedges = count_witnesses(&cert, |s| matches!(s, SubClaim::HamiltonianWith { .. }));
    let att = &cert.negative_attestations;
    ensure(att.len() == 1 && att[0].completed && att[0].subclaim == SubClaim::NonHamiltonian, || {
        format!("attestations {att:?}")
    })?;
    ensure((deletions, nonedges) == (10, 30), || format!("{deletions} deletion and {nonedges} non-edge witnesses"))?;
    within(elapsed, Duration::from_secs(1))?;
    run.keep("petersen mhh", &p, &cert);
    Ok(format!("1 attestation, 10 deletion witnesses, 30 non-edge witnesses in {elapsed:.2?}"))
}

fn condition_c(run: &mut Run) -> Outcome {
    let t = Instant::now();
    let blocks = [petersen(), flower_snark(5).unwrap(), flower_snark(7).unwrap(), coxeter()];
    let mut detail = Vec::new();
    for b in &blocks {
        let cert = run.verifier.condition_c(b).map_err(|e| e.to_string())?;
        ensure(cert.is_certified(), || format!("{}: {:?}", b.name, cert.verdict))?;
        detail.push(format!("{} ({} witnesses)", b.name, cert.positive_witnesses.len()));
        run.keep(&format!("{} condition C", b.name), &b.graph, &cert);
    }
    let elapsed = t.elapsed();
    within(elapsed, Duration::from_secs(30))?;
    Ok(format!("{} in {elapsed:.2?}", detail.join(", ")))
}

fn extended(run: &mut Run) -> Outcome {
    let t = Instant::now();
    let j5 = flower_snark(5).unwrap();
    let cert = run.verifier.extended_condition(&j5).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    ensure(cert.is_certified(), || format!("{:?}", cert.verdict))?;
    within(elapsed, Duration::from_secs(600))?;
    run.keep("jk=5 extended condition", &j5.graph, &cert);
    Ok(format!("{} witnesses in {elapsed:.2?}", cert.positive_witnesses.len()))
}

fn inflation(run: &mut Run, blocks: [&BlockSpec; 3], order: usize, limit: Duration) -> Outcome {
    let t = Instant::now();
    let inf = build(blocks[0], blocks[1], blocks[2]).map_err(|e| e.to_string())?;
    let g = &inf.graph;
    let cert = run.verifier.certify_cubic_mnt(g);
    let elapsed = t.elapsed();
    ensure(g.order() == order, || format!("order {}", g.order()))?;
    ensure(cert.is_certified(), || format!("{:?}", cert.verdict))?;
    let facts = cert.facts.clone().ok_or("no structure facts")?;
    ensure(facts.cubic && facts.two_connected, || format!("{facts:?}"))?;
    let att = &cert.negative_attestations;
    ensure(att.len() == 1 && att[0].completed, || format!("attestations {att:?}"))?;
    let expected = order * (order - 1) / 2 - 3 * order / 2;
    ensure(cert.positive_witnesses.len() == expected, || {
        format!("{} witnesses, expected {expected}", cert.positive_witnesses.len())
    })?;
    ensure(facts.size == 3 * order / 2, || format!("size {}", facts.size))?;
    let girth = facts.girth.ok_or("acyclic")?;
    ensure((5..=7).contains(&girth), || format!("girth {girth}"))?;
    within(elapsed, limit)?;
    let label = inf.provenance();
    run.keep(&label, g, &cert);
    run.inflations.push((label, g.clone(), cert.clone()));
    Ok(format!(
        "n = {order}, |E| = {}, girth {girth}, {} witnesses, attestation {} nodes, {elapsed:.2?}",
        facts.size,
        cert.positive_witnesses.len(),
        att[0].nodes_expanded
    ))
}

fn tightness(run: &mut Run) -> Outcome {
    ensure(!run.inflations.is_empty(), || "no certified inflation".into())?;
    let mut detail = Vec::new();
    for (_, g, cert) in &run.inflations {
        ensure(cert.is_certified(), || "uncertified inflation".into())?;
        let bound = edge_bound(g.order(), g.count_degree2());
        ensure(g.size() == bound, || format!("n = {}: |E| = {} vs bound {bound}", g.order(), g.size()))?;
        ensure(bound_check(g, cert).map_err(|e| e.to_string())?, || "bound check failed".into())?;
        detail.push(format!("n = {}: {} = {}", g.order(), g.size(), bound));
    }
    Ok(detail.join(", "))
}

fn min_search(run: &mut Run) -> Outcome {
    let t = Instant::now();
    let s = exhaustive_min_search(7, &run.verifier).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    let mut notes = Vec::new();
    for g in &s.extremal {
        let cert = run.verifier.is_mnt(g);
        let clean = deg2_structure_check(g, &cert).map_err(|e| e.to_string())?.is_clean();
        let bound = bound_check(g, &cert).map_err(|e| e.to_string())?;
        ensure(clean && bound, || format!("{}: deg2 clean {clean}, bound {bound}", g.to_graph6()))?;
        notes.push(format!(
            "{} (m = {}, bound {})",
            g.to_graph6(),
            g.count_degree2(),
            edge_bound(7, g.count_degree2())
        ));
    }
    within(elapsed, Duration::from_secs(600))?;
    let expected = edge_bound(7, 1);
    ensure(s.min_size == Some(expected), || {
        format!(
            "minimum size {:?}, expected {expected}; extremal graphs: {}; {elapsed:.2?}",
            s.min_size,
            notes.join(", ")
        )
    })?;
    Ok(format!("minimum size {expected}, {} extremal graphs, {elapsed:.2?}", s.extremal.len()))
}

fn labeled_graph(n: usize, mask: u32) -> Graph {
    let mut g = Graph::empty(n).unwrap();
    let mut bit = 0;
    for v in 1..n {
        for u in 0..v {
            if mask & 1 << bit != 0 {
                g.add_edge(u, v).unwrap();
            }
            bit += 1;
        }
    }
    g
}

fn oracle_equivalence(_: &mut Run) -> Outcome {
    let mut compared = 0;
    let mut check = |g: &Graph| -> Result<(), String> {
        for q in [HamQuery::path(), HamQuery::cycle()] {
            let a = solve(g, &q).map_err(|e| e.to_string())?.verdict;
            let b = oracle_solve(g, &q).map_err(|e| e.to_string())?.verdict;
            ensure(a == b, || format!("{} {q:?}: engine {a:?}, oracle {b:?}", g.to_graph6()))?;
            compared += 1;
        }
        Ok(())
    };
    for n in 1..=6 {
        for mask in 0..1u32 << (n * (n - 1) / 2) {
            check(&labeled_graph(n, mask))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..1000 {
        let n = rng.gen_range(10..=20);
        let p = rng.gen_range(0.15..0.6);
        let mut g = Graph::empty(n).unwrap();
        for v in 1..n {
            for u in 0..v {
                if rng.gen_bool(p) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        check(&g)?;
    }
    Ok(format!("{compared} queries, zero disagreements"))
}

fn lemma_suite(run: &mut Run) -> Outcome {
    let v = &run.verifier;
    for b in [petersen(), flower_snark(5).unwrap(), flower_snark(7).unwrap(), coxeter()] {
        let mhh = v.is_mhh(&b.graph);
        let report = lemma_hypo_paths_check(&b, &mhh, v).map_err(|e| e.to_string())?;
        ensure(report.is_clean(), || format!("{}: {report:?}", b.name))?;
    }
    let mut paths = 0;
    for (label, g, cert) in &run.inflations {
        for q in all_paths_up_to(g, 5).into_iter().filter(|q| q.len() >= 3) {
            let ok = lemma_subgraph_check(g, cert, &q).map_err(|e| e.to_string())?;
            ensure(ok, || format!("{label}: path {q:?}"))?;
            paths += 1;
        }
    }
    let mut graphs = 0;
    for n in 5..=7 {
        for g in mnt_graphs(n, v).map_err(|e| e.to_string())? {
            let cert = v.is_mnt(&g);
            let report = deg2_structure_check(&g, &cert).map_err(|e| e.to_string())?;
            ensure(report.is_clean(), || format!("{}: {:?}", g.to_graph6(), report.violations))?;
            graphs += 1;
        }
    }
    Ok(format!("4 blocks, {paths} short paths, {graphs} small MNT graphs, zero violations"))
}

fn replay(run: &mut Run) -> Outcome {
    for (label, g, cert) in &run.certificates {
        replay_lines(g, &cert.to_json_lines()).map_err(|e| format!("{label}: {e}"))?;
        let mut records = cert.to_records();
        let Some(rec) = records.iter_mut().find(|r| matches!(r.data, RecordData::Witness { .. })) else {
            continue;
        };
        if let RecordData::Witness { sequence } = &mut rec.data {
            sequence.swap(0, 1);
            sequence.rotate_left(1);
            sequence[0] = (sequence[0] + 1) % g.order();
        }
        ensure(replay_records(g, &records).is_err(), || format!("{label}: mutated witness accepted"))?;
    }
    Ok(format!("{} certificates replayed, mutations rejected", run.certificates.len()))
}

fn main() -> ExitCode {
    let mut run = Run { verifier: Verifier::default(), certificates: Vec::new(), inflations: Vec::new() };
    let (p, p2) = (petersen(), petersen());
    let j5 = flower_snark(5).unwrap();
    let criteria: Vec<(&str, Criterion)> = vec![
        ("petersen is maximal hypohamiltonian", Box::new(petersen_mhh)),
        ("condition C on the built-in blocks", Box::new(condition_c)),
        ("extended condition on J5", Box::new(extended)),
        (
            "K4[P,P,P] is cubic MNT",
            Box::new(move |r: &mut Run| inflation(r, [&p2, &p2, &p2], 28, Duration::from_secs(300))),
        ),
        (
            "K4[P,P,J5] is cubic MNT",
            Box::new(move |r: &mut Run| inflation(r, [&p, &p, &j5], 38, Duration::from_secs(1800))),
        ),
        ("inflations meet the edge bound", Box::new(tightness)),
        ("n = 7 minimum search", Box::new(min_search)),
        ("engine agrees with the oracle", Box::new(oracle_equivalence)),
        ("lemma property suite", Box::new(lemma_suite)),
        ("certificate replay", Box::new(replay)),
    ];
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        match f(&mut run) {
            Ok(detail) => println!("PASS {:>2} {title}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {title}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
