use cubic_mnt::blocks::{coxeter, flower_snark, petersen, BlockSpec};
use cubic_mnt::inflate::{build, Inflation};
use cubic_mnt::verify::{
    all_paths_up_to, bound_check, deg2_structure_check, edge_bound, lemma_subgraph_check, Verifier,
};

/// Built-in blocks (no order-22 snark) paired with their orders.
fn catalog() -> Vec<BlockSpec> {
    vec![petersen(), flower_snark(5).unwrap(), flower_snark(7).unwrap(), coxeter(), flower_snark(9).unwrap()]
}

fn triples(max_order: usize) -> Vec<[BlockSpec; 3]> {
    let cat = catalog();
    let mut out = Vec::new();
    for i in 0..cat.len() {
        for j in i..cat.len() {
            for k in j..cat.len() {
                if 1 + cat[i].order() + cat[j].order() + cat[k].order() - 3 <= max_order {
                    out.push([cat[i].clone(), cat[j].clone(), cat[k].clone()]);
                }
            }
        }
    }
    out
}

/// Maps `K4[H1, H2, H3]` onto `K4[H2, H3, H1]`.
fn rotation_map(a: &Inflation, b: &Inflation) -> Vec<usize> {
    (0..a.graph.order())
        .map(|v| match a.block_of(v) {
            None => b.hub,
            Some(i) => b.offsets[(i + 2) % 3] + (v - a.offsets[i]),
        })
        .collect()
}

#[test]
fn rotating_the_blocks_gives_an_isomorphic_graph() {
    let p = petersen();
    let blocks = [p.clone(), p.redesignate(3).unwrap(), p.redesignate(7).unwrap()];
    let a = build(&blocks[0], &blocks[1], &blocks[2]).unwrap();
    let b = build(&blocks[1], &blocks[2], &blocks[0]).unwrap();
    assert!(a.graph.order() <= 30);
    let map = rotation_map(&a, &b);
    assert!(a.graph.is_isomorphism(&b.graph, &map));
    // a wrong map is rejected
    let mut broken = map.clone();
    broken.swap(1, 2);
    assert!(!a.graph.is_isomorphism(&b.graph, &broken));
}

#[test]
fn girth_of_inflations_up_to_sixty_vertices() {
    let mut seen = Vec::new();
    for [h1, h2, h3] in triples(60) {
        let inf = build(&h1, &h2, &h3).unwrap();
        let g = inf.graph;
        assert!(g.is_cubic() && g.is_two_connected().unwrap());
        let girth = g.girth().unwrap();
        assert!((5..=7).contains(&girth), "{}: girth {girth}", inf.blocks.map(|b| b.to_string()).join(","));
        seen.push(girth);
    }
    seen.sort();
    seen.dedup();
    assert!(seen.contains(&5));
}

#[test]
fn coxeter_blocks_give_girth_seven() {
    let c = coxeter();
    let inf = build(&c, &c, &c).unwrap();
    assert_eq!(inf.graph.order(), 82);
    assert_eq!(inf.graph.girth(), Some(7));
}

#[test]
fn every_inflation_up_to_48_vertices_is_cubic_mnt() {
    let v = Verifier::default();
    for [h1, h2, h3] in triples(48) {
        let g = build(&h1, &h2, &h3).unwrap().graph;
        let n = g.order();
        let cert = v.certify_cubic_mnt(&g);
        assert!(cert.is_certified(), "n = {n}: {:?}", cert.verdict);
        assert_eq!(cert.positive_witnesses.len(), n * (n - 1) / 2 - 3 * n / 2);
        assert_eq!(g.size(), edge_bound(n, 0));
        let facts = cert.facts.clone().unwrap();
        assert_eq!((facts.order, facts.size), (n, 3 * n / 2));
        assert!(bound_check(&g, &cert).unwrap());
        assert!(deg2_structure_check(&g, &cert).unwrap().is_clean());
        cert.replay(&g).unwrap();
    }
}

#[test]
fn short_paths_in_the_smallest_inflation_leave_through_an_internal_vertex() {
    let p = petersen();
    let g = build(&p, &p, &p).unwrap().graph;
    let cert = Verifier::default().certify_cubic_mnt(&g);
    let mut checked = 0;
    for q in all_paths_up_to(&g, 5) {
        if q.len() < 3 {
            continue;
        }
        assert!(lemma_subgraph_check(&g, &cert, &q).unwrap(), "{q:?}");
        checked += 1;
    }
    assert!(checked > 1000);
}
