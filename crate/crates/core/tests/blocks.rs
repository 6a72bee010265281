use cubic_mnt::blocks::{
    certify_block, coxeter, flower_snark, petersen, snark22, snark22_from_file, BlockError, BlockName, BlockSpec,
};
use cubic_mnt::graph::Graph;
use cubic_mnt::verify::{lemma_hypo_paths_check, Verifier};

fn builtins() -> Vec<BlockSpec> {
    vec![petersen(), flower_snark(5).unwrap(), flower_snark(7).unwrap(), coxeter()]
}

#[test]
fn builtin_blocks_are_mhh_and_satisfy_condition_c() {
    let v = Verifier::default();
    for b in builtins() {
        let mhh = v.is_mhh(&b.graph);
        assert!(mhh.is_certified(), "{}: {:?}", b.name, mhh.verdict);
        let n = b.order();
        assert_eq!(mhh.positive_witnesses.len(), n + n * (n - 1) / 2 - 3 * n / 2);
        mhh.replay(&b.graph).unwrap();

        let cond = v.condition_c(&b).unwrap();
        assert!(cond.is_certified(), "{}: {:?}", b.name, cond.verdict);
        assert_eq!(cond.positive_witnesses.len(), 2 * (n - 4));
        cond.replay(&b.graph).unwrap();
        certify_block(&b, &v).unwrap();
    }
}

#[test]
fn condition_c_does_not_depend_on_the_designated_vertex() {
    let v = Verifier::default();
    for b in [petersen(), coxeter()] {
        for z in [3, 7, b.order() - 1] {
            let moved = b.redesignate(z).unwrap();
            let cert = v.condition_c(&moved).unwrap();
            assert!(cert.is_certified(), "{} z={z}: {:?}", b.name, cert.verdict);
        }
    }
}

#[test]
fn path_facts_hold_for_builtin_blocks() {
    let v = Verifier::default();
    for b in builtins() {
        let mhh = v.is_mhh(&b.graph);
        let report = lemma_hypo_paths_check(&b, &mhh, &v).unwrap();
        assert!(report.is_clean(), "{}: {report:?}", b.name);
    }
}

#[test]
fn extended_condition_on_small_blocks() {
    let v = Verifier::default();
    for b in [petersen(), flower_snark(5).unwrap()] {
        let cert = v.extended_condition(&b).unwrap();
        assert!(cert.is_certified(), "{}: {:?}", b.name, cert.verdict);
        let n = b.order();
        assert_eq!(cert.positive_witnesses.len(), n * (n - 4) * 3);
    }
}

/// Petersen with six vertices truncated: cubic, order 22, nonhamiltonian, but
/// full of triangles.
fn truncated_petersen() -> Graph {
    let p = petersen().graph;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    // vertex v < 6 becomes the triangle (3v, 3v+1, 3v+2); the rest are 18..22
    let port = |v: usize, towards: usize| -> usize {
        if v < 6 {
            let idx = p.neighbors(v).position(|w| w == towards).unwrap();
            3 * v + idx
        } else {
            18 + v - 6
        }
    };
    for v in 0..6 {
        edges.extend([(3 * v, 3 * v + 1), (3 * v + 1, 3 * v + 2), (3 * v, 3 * v + 2)]);
    }
    for (u, w) in p.edges() {
        edges.push((port(u, w), port(w, u)));
    }
    Graph::from_edges(22, &edges).unwrap()
}

#[test]
fn order_22_input_that_is_not_mhh_is_rejected() {
    let g = truncated_petersen();
    assert!(g.is_cubic());
    let v = Verifier::default();
    assert!(!v.is_hamiltonian(&g).unwrap());
    let nb: Vec<usize> = g.neighbors(21).collect();
    let err = snark22(&g.to_graph6(), 21, [nb[0], nb[1], nb[2]], &v).unwrap_err();
    match err {
        BlockError::Certification { check, detail } => {
            assert_eq!(check, "mhh");
            assert!(detail.contains("vertex"), "{detail}");
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn order_22_file_errors() {
    let v = Verifier::default();
    let err = snark22_from_file("# no header\n", &v).unwrap_err();
    assert!(matches!(err, BlockError::Format(_)));
    let p = petersen();
    let text = p.to_file_string();
    assert!(matches!(snark22_from_file(&text, &v), Err(BlockError::WrongOrder { expected: 22, actual: 10 })));
}

#[test]
fn file_format_roundtrip_for_builtins() {
    for b in builtins() {
        let back = BlockSpec::parse_file(b.name.clone(), &b.to_file_string()).unwrap();
        assert_eq!(back, b);
    }
    assert!(matches!("x9".parse::<BlockName>(), Err(BlockError::UnknownName(_))));
}
