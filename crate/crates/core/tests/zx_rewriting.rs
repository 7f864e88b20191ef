// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use zxforge::zxgraph::random::{random_diagram, RandomConfig};
use zxforge::zxgraph::{compose, eval_diagram, export, import_json, tensor, ExportFormat, NodeKind, ZxDiagram};
use zxforge::zxrules::{apply_rule, find_matches, simplify, RuleId, SimplifyConfig, Verdict};
use zxforge::{Matrix, Phase};

fn fixture(name: &str) -> ZxDiagram {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    import_json(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn ev(d: &ZxDiagram) -> Matrix {
    eval_diagram(d).unwrap()
}

#[test]
fn comp1_reaches_pi_then_alpha() {
    let d = fixture("zx_comp1.zx.json");
    let out = simplify(&d, &SimplifyConfig { verify_steps: true, ..Default::default() }).unwrap();
    assert!(out.diagram.isomorphic(&fixture("zx_comp1_expected.zx.json"), 1e-12), "{:?}", out.diagram);
    assert_eq!(out.steps[0].rule, RuleId::PiCommute);
    assert!(out.steps.iter().any(|s| s.rule == RuleId::SpiderFuse));
    assert!(matches!(out.verdict, Verdict::Sound { deviation } if deviation < 1e-12));
}

#[test]
fn ex2_reaches_a_bare_wire() {
    let d = fixture("ex2.zx.json");
    let out = simplify(&d, &SimplifyConfig { verify_steps: true, ..Default::default() }).unwrap();
    assert!(out.diagram.isomorphic(&fixture("ex2_expected.zx.json"), 1e-12), "{:?}", out.diagram);
    assert_eq!(out.steps[0].rule, RuleId::ColorChange);
    assert!(matches!(out.verdict, Verdict::Sound { .. }));
}

#[test]
fn comp1_dot_has_four_coloured_nodes() {
    let dot = export(&fixture("zx_comp1.zx.json"), ExportFormat::Dot);
    let coloured = dot.lines().filter(|l| l.contains("fillcolor=green") || l.contains("fillcolor=red")).count();
    assert_eq!(coloured, 4);
}

#[test]
fn fixtures_round_trip_json() {
    for name in ["zx_comp1.zx.json", "ex2.zx.json", "bare_wire.zx.json"] {
        let d = fixture(name);
        let s = export(&d, ExportFormat::Json);
        let back = import_json(&s).unwrap();
        assert_eq!(export(&back, ExportFormat::Json), s);
        assert_eq!(ev(&back), ev(&d));
    }
}

#[test]
fn every_rule_instance_on_random_diagrams_is_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(20241);
    let mut seen: BTreeMap<RuleId, usize> = BTreeMap::new();
    for _ in 0..120 {
        let d = random_diagram(&mut rng, &RandomConfig::default());
        for rule in RuleId::ALL {
            for site in find_matches(&d, rule) {
                apply_rule(&d, rule, &site).unwrap_or_else(|e| panic!("{e}\n{d:?}"));
                *seen.entry(rule).or_default() += 1;
            }
        }
    }
    for rule in RuleId::ALL {
        assert!(seen.get(&rule).copied().unwrap_or(0) > 0, "{rule} never matched");
    }
}

#[test]
fn simplify_random_diagrams_soundly() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..100 {
        let d = random_diagram(&mut rng, &RandomConfig::default());
        let out = simplify(&d, &SimplifyConfig::default()).unwrap_or_else(|e| panic!("{e}\n{d:?}"));
        assert!(matches!(out.verdict, Verdict::Sound { .. }));
        assert!(out.diagram.node_count() <= d.node_count() + 2 * d.stats().spiders);
    }
}

#[test]
fn step_log_replays() {
    let d = fixture("zx_comp1.zx.json");
    let out = simplify(&d, &SimplifyConfig::default()).unwrap();
    let mut cur = d;
    for step in &out.steps {
        let (next, replayed) = apply_rule(&cur, step.rule, &step.site).unwrap();
        assert_eq!(&replayed, step);
        cur = next;
    }
    assert!(cur.structurally_eq(&out.diagram));
    let json = serde_json::to_string(&out.steps).unwrap();
    assert!(json.contains("\"rule\":\"PiCommute\"") && json.contains("\"scalar_delta\":{\"re\":"));
}

/// Shuffle internal ids and edge order; boundaries keep their positions.
fn scramble(d: &ZxDiagram, seed: u64) -> ZxDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ids: Vec<usize> = d.node_ids().collect();
    let mut targets: Vec<usize> = ids.iter().map(|i| i * 7 + 100).collect();
    targets.shuffle(&mut rng);
    let map: BTreeMap<usize, usize> = ids.drain(..).zip(targets).collect();
    let mut edges: Vec<(usize, usize)> = d.edges().to_vec();
    edges.shuffle(&mut rng);
    let mut out = ZxDiagram::new();
    for n in d.nodes() {
        out.add_node_with_id(map[&n.id], n.kind);
    }
    for (a, b) in edges {
        if rng.random_bool(0.5) {
            out.add_edge(map[&b], map[&a]);
        } else {
            out.add_edge(map[&a], map[&b]);
        }
    }
    out.set_scalar(d.scalar());
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evaluation_ignores_ids_and_edge_order(seed in any::<u64>(), perm in any::<u64>()) {
        let d = random_diagram(&mut ChaCha8Rng::seed_from_u64(seed), &RandomConfig::default());
        let s = scramble(&d, perm);
        prop_assert!(ev(&d).approx_eq(&ev(&s), 1e-12));
        prop_assert!(d.isomorphic(&s, 0.0));
    }

    #[test]
    fn composition_matches_matrix_algebra(a in any::<u64>(), b in any::<u64>()) {
        let cfg = RandomConfig { max_inputs: 1, max_outputs: 1, ..Default::default() };
        let x = random_diagram(&mut ChaCha8Rng::seed_from_u64(a), &cfg);
        let mut y = random_diagram(&mut ChaCha8Rng::seed_from_u64(b), &cfg);
        // force y's input count to match x's outputs by tensoring wires
        while y.n_inputs() < x.n_outputs() {
            y = tensor(&y, &cap_free_wire());
        }
        if y.n_inputs() == x.n_outputs() {
            let xy = compose(&x, &y).unwrap();
            prop_assert!(ev(&xy).approx_eq(&ev(&y).matmul(&ev(&x)), 1e-9));
        }
        let t = tensor(&x, &y);
        prop_assert!(ev(&t).approx_eq(&ev(&x).kron(&ev(&y)), 1e-9));
    }

    #[test]
    fn phase_fusion_is_exact(n1 in -20i64..20, d1 in 1i64..9, n2 in -20i64..20, d2 in 1i64..9) {
        let (p, q) = (Phase::new(n1, d1).unwrap(), Phase::new(n2, d2).unwrap());
        let mut d = ZxDiagram::new();
        let i = d.add_node(NodeKind::In(0));
        let a = d.add_node(NodeKind::Z(p));
        let b = d.add_node(NodeKind::Z(q));
        let o = d.add_node(NodeKind::Out(0));
        d.add_edge(i, a);
        d.add_edge(a, b);
        d.add_edge(b, o);
        let (post, _) = apply_rule(&d, RuleId::SpiderFuse, &[a, b]).unwrap();
        prop_assert_eq!(post.kind(a), Some(NodeKind::Z(p + q)));
    }
}

/// A single bare wire, used to pad arities.
fn cap_free_wire() -> ZxDiagram {
    ZxDiagram::identity(1)
}
