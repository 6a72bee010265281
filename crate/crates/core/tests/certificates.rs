use std::sync::OnceLock;

use cubic_mnt::blocks::{flower_snark, petersen};
use cubic_mnt::graph::Graph;
use cubic_mnt::inflate::build;
use cubic_mnt::verify::{
    parse_records, replay_lines, replay_records, Certificate, Claim, RecordData, ReplayError, Verifier,
};
use proptest::prelude::*;

fn ppp() -> &'static (Graph, Certificate) {
    static CELL: OnceLock<(Graph, Certificate)> = OnceLock::new();
    CELL.get_or_init(|| {
        let p = petersen();
        let g = build(&p, &p, &p).unwrap().graph;
        let cert = Verifier::default().certify_cubic_mnt(&g);
        assert!(cert.is_certified());
        (g, cert)
    })
}

#[test]
fn json_lines_replay_without_the_solver() {
    let (g, cert) = ppp();
    let text = cert.to_json_lines();
    assert_eq!(text.lines().count(), 337);
    let claim = replay_lines(g, &text).unwrap();
    assert!(matches!(claim, Claim::CubicMnt { .. }));
    // every record names the same claim, attestations first
    let records = parse_records(&text).unwrap();
    assert!(matches!(records[0].1.data, RecordData::Attestation { completed: true, .. }));
}

#[test]
fn block_certificates_replay() {
    let v = Verifier::default();
    let j5 = flower_snark(5).unwrap();
    for cert in [v.is_mhh(&j5.graph), v.condition_c(&j5).unwrap(), v.extended_condition(&j5).unwrap()] {
        assert!(cert.is_certified());
        replay_lines(&j5.graph, &cert.to_json_lines()).unwrap();
    }
}

#[test]
fn replay_against_another_graph_fails() {
    let (_, cert) = ppp();
    let p = petersen();
    let other = build(&p, &p.redesignate(3).unwrap(), &p).unwrap().graph;
    assert!(replay_lines(&other, &cert.to_json_lines()).is_err());
}

#[test]
fn missing_and_duplicated_records_fail() {
    let (g, cert) = ppp();
    let mut records = cert.to_records();
    let last = records.pop().unwrap();
    assert!(matches!(replay_records(g, &records), Err(ReplayError::Missing(_))));
    records.push(last.clone());
    records.push(last);
    assert!(replay_records(g, &records).is_err());
    assert!(matches!(replay_records(g, &[]), Err(ReplayError::Empty)));
}

#[test]
fn incomplete_attestation_fails() {
    let (g, cert) = ppp();
    let mut records = cert.to_records();
    records[0].data = RecordData::Attestation { nodes_expanded: 5, completed: false };
    assert!(replay_records(g, &records).is_err());
}

#[test]
fn refuted_certificates_do_not_replay() {
    let p = petersen().graph;
    let cert = Verifier::default().is_mnt(&p);
    assert_eq!(cert.replay(&p), Err(ReplayError::NotCertified));
}

#[test]
fn malformed_lines_report_their_line_number() {
    let (g, cert) = ppp();
    let mut text = cert.to_json_lines();
    text.push_str("{not json}\n");
    match replay_lines(g, &text) {
        Err(ReplayError::BadRecord { line, .. }) => assert_eq!(line, 338),
        other => panic!("unexpected {other:?}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mutated_witnesses_are_rejected(index in 1usize..337, pos in 0usize..28, delta in 1usize..28) {
        let (g, cert) = ppp();
        let mut records = cert.to_records();
        let RecordData::Witness { sequence } = &mut records[index].data else {
            panic!("record {index} is not a witness");
        };
        let pos = pos % sequence.len();
        sequence[pos] = (sequence[pos] + delta) % g.order();
        prop_assert!(replay_records(g, &records).is_err());
    }

    #[test]
    fn truncated_witnesses_are_rejected(index in 1usize..337, pos in 0usize..28) {
        let (g, cert) = ppp();
        let mut records = cert.to_records();
        let RecordData::Witness { sequence } = &mut records[index].data else {
            panic!("record {index} is not a witness");
        };
        sequence.remove(pos % sequence.len());
        prop_assert!(replay_records(g, &records).is_err());
    }
}
