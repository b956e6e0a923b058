use std::collections::BTreeMap;

use super::*;
use crate::canon::canonical_form;
use crate::rational::{ratio, ratio_int};

fn g(vs: &[(&str, &str)], es: &[(&str, &str, &str)]) -> LabeledGraph {
    LabeledGraph::new(
        vs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        es.iter()
            .map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string()))
            .collect(),
    )
    .unwrap()
}

fn k3() -> LabeledGraph {
    g(
        &[("1", "a"), ("2", "a"), ("3", "a")],
        &[("1", "2", "x"), ("1", "3", "x"), ("2", "3", "x")],
    )
}

fn p3() -> LabeledGraph {
    g(
        &[("1", "a"), ("2", "a"), ("3", "a")],
        &[("1", "2", "x"), ("2", "3", "x")],
    )
}

fn p2() -> LabeledGraph {
    g(&[("1", "a"), ("2", "a")], &[("1", "2", "x")])
}

fn uniform(graphs: &[&LabeledGraph]) -> LabelWeighting {
    LabelWeighting::uniform_over(graphs)
}

/// Three-element chain label model c0 < c1 < c2 with sizes 1, 2, 3.
fn chain_labels() -> ExtendedLabels {
    let chain = FiniteMcsModel::new(
        vec![
            ("c0".into(), ratio_int(1)),
            ("c1".into(), ratio_int(2)),
            ("c2".into(), ratio_int(3)),
        ],
        &[
            ("c0".into(), "c1".into()),
            ("c0".into(), "c2".into()),
            ("c1".into(), "c2".into()),
        ],
    )
    .unwrap();
    ExtendedLabels::new(chain.clone(), chain).unwrap()
}

fn validate_all(result: &McsResult, model: &GraphModel, g1: &LabeledGraph, g2: &LabeledGraph) {
    assert!(!result.witnesses.is_empty(), "no witness returned");
    for w in &result.witnesses {
        assert!(
            w.validate(model, g1, g2, &result.best_size).unwrap(),
            "witness failed validation"
        );
    }
}

#[test]
fn brute_force_examples() {
    // subgraph model: the best common piece of P2 and P3 is the edge
    let model = GraphModel::Subgraph(uniform(&[&p2(), &p3()]));
    let r = mcs_brute_force(&model, &p2(), &p3()).unwrap();
    assert_eq!(r.best_size, ratio_int(3));
    validate_all(&r, &model, &p2(), &p3());

    // induced model: every 3-vertex induced subgraph of K3 is K3, so K2 wins
    let model = GraphModel::Induced(uniform(&[&k3(), &p3()]));
    let r = mcs_brute_force(&model, &k3(), &p3()).unwrap();
    assert_eq!(r.best_size, ratio_int(2));
    validate_all(&r, &model, &k3(), &p3());
}

#[test]
fn brute_force_reflexive_pairs_recover_the_graph() {
    let graphs = [k3(), p3(), p2(), LabeledGraph::empty()];
    let alpha = uniform(&[&k3(), &p3(), &p2()]);
    let chain = chain_labels();
    let relabeled = g(
        &[("1", "c1"), ("2", "c2")],
        &[("1", "2", "c1")],
    );
    for gg in &graphs {
        for model in [
            GraphModel::Subgraph(alpha.clone()),
            GraphModel::Induced(alpha.clone()),
        ] {
            let r = mcs_brute_force(&model, gg, gg).unwrap();
            assert_eq!(r.best_size, model.size(gg).unwrap());
            validate_all(&r, &model, gg, gg);
            assert!(r
                .witnesses
                .iter()
                .any(|w| canonical_form(&w.graph).unwrap() == canonical_form(gg).unwrap()));
        }
    }
    let model = GraphModel::Extended(chain);
    let r = mcs_brute_force(&model, &relabeled, &relabeled).unwrap();
    assert_eq!(r.best_size, model.size(&relabeled).unwrap());
    validate_all(&r, &model, &relabeled, &relabeled);
}

#[test]
fn brute_force_cap() {
    let vs: Vec<(String, String)> = (0..7).map(|i| (format!("v{i}"), "a".into())).collect();
    let big = LabeledGraph::new(vs, vec![]).unwrap();
    let model = GraphModel::Subgraph(uniform(&[&big]));
    assert!(matches!(
        mcs_brute_force(&model, &big, &big),
        Err(Error::CapExceeded { .. })
    ));
}

#[test]
fn solve_disjoint_labels_yields_empty_graph() {
    let ga = g(&[("1", "a"), ("2", "a")], &[("1", "2", "x")]);
    let gb = g(&[("1", "b"), ("2", "b")], &[("1", "2", "y")]);
    let model = GraphModel::Subgraph(uniform(&[&ga, &gb]));
    let r = mcs_solve(&model, &ga, &gb, DEFAULT_SOLVER_VERTEX_CAP).unwrap();
    assert_eq!(r.best_size, ratio_int(0));
    assert_eq!(r.witnesses.len(), 1);
    assert!(r.witnesses[0].graph.is_empty());
    validate_all(&r, &model, &ga, &gb);
}

#[test]
fn solve_extended_two_chain_single_vertices() {
    let vm = FiniteMcsModel::new(
        vec![("a".into(), ratio_int(2)), ("x0".into(), ratio_int(1))],
        &[("x0".into(), "a".into())],
    )
    .unwrap();
    let em = FiniteMcsModel::new(vec![("e".into(), ratio_int(1))], &[]).unwrap();
    let model = GraphModel::Extended(ExtendedLabels::new(vm, em).unwrap());
    let g1 = g(&[("v", "a")], &[]);
    let g2 = g(&[("w", "x0")], &[]);
    let r = mcs_solve(&model, &g1, &g2, DEFAULT_SOLVER_VERTEX_CAP).unwrap();
    assert_eq!(r.best_size, ratio_int(1));
    assert_eq!(r.witnesses[0].graph.vertex_labels().collect::<Vec<_>>(), ["x0"]);
    validate_all(&r, &model, &g1, &g2);
    let b = mcs_brute_force(&model, &g1, &g2).unwrap();
    assert_eq!(b.best_size, r.best_size);
}

#[test]
fn solve_agrees_with_brute_force_on_a_sample() {
    let samples = [
        k3(),
        p3(),
        p2(),
        LabeledGraph::empty(),
        g(&[("1", "a"), ("2", "b")], &[("1", "2", "x")]),
        g(&[("1", "b"), ("2", "b"), ("3", "a")], &[("1", "2", "x")]),
        g(
            &[("1", "a"), ("2", "b"), ("3", "a"), ("4", "b")],
            &[("1", "2", "x"), ("2", "3", "x"), ("3", "4", "x"), ("1", "4", "x")],
        ),
    ];
    let alpha = uniform(&samples.iter().collect::<Vec<_>>());
    let chain = chain_labels();
    // remap labels into the chain for the extended model
    let remap = |gg: &LabeledGraph| -> LabeledGraph {
        let vs = gg
            .vertex_ids()
            .map(|id| {
                let l = if gg.vertex_label(id).unwrap() == "a" { "c1" } else { "c2" };
                (id.to_string(), l.to_string())
            })
            .collect();
        let es = gg
            .edges()
            .map(|(u, v, _)| {
                (
                    gg.vertex_id(u).to_string(),
                    gg.vertex_id(v).to_string(),
                    "c1".to_string(),
                )
            })
            .collect();
        LabeledGraph::new(vs, es).unwrap()
    };
    for i in 0..samples.len() {
        for j in 0..samples.len() {
            let (a, b) = (&samples[i], &samples[j]);
            for model in [
                GraphModel::Subgraph(alpha.clone()),
                GraphModel::Induced(alpha.clone()),
            ] {
                let brute = mcs_brute_force(&model, a, b).unwrap();
                let solved = mcs_solve(&model, a, b, DEFAULT_SOLVER_VERTEX_CAP).unwrap();
                assert_eq!(brute.best_size, solved.best_size, "kind {:?} ({i},{j})", model.kind());
                validate_all(&solved, &model, a, b);
            }
            let (ra, rb) = (remap(a), remap(b));
            let model = GraphModel::Extended(chain.clone());
            let brute = mcs_brute_force(&model, &ra, &rb).unwrap();
            let solved = mcs_solve(&model, &ra, &rb, DEFAULT_SOLVER_VERTEX_CAP).unwrap();
            assert_eq!(brute.best_size, solved.best_size, "extended ({i},{j})");
            validate_all(&solved, &model, &ra, &rb);
        }
    }
}

#[test]
fn monotone_pairs_reach_the_pattern_size() {
    // if g1 relates to g2 then the best common size is size(g1)
    let alpha = uniform(&[&k3(), &p3(), &p2()]);
    let cases = [
        (p2(), p3(), GraphModel::Subgraph(alpha.clone())),
        (p3(), k3(), GraphModel::Subgraph(alpha.clone())),
        (p2(), k3(), GraphModel::Induced(alpha.clone())),
    ];
    for (a, b, model) in cases {
        assert!(model.related(&a, &b).unwrap());
        let r = mcs_solve(&model, &a, &b, DEFAULT_SOLVER_VERTEX_CAP).unwrap();
        assert_eq!(r.best_size, model.size(&a).unwrap());
    }
}

#[test]
fn weighting_changes_the_winning_witness() {
    // star: center b adjacent to three a-leaves
    let star = g(
        &[("c", "b"), ("l1", "a"), ("l2", "a"), ("l3", "a")],
        &[("c", "l1", "x"), ("c", "l2", "x"), ("c", "l3", "x")],
    );
    // three isolated a-vertices plus one pendant edge a-b
    let spread = g(
        &[("m1", "a"), ("m2", "a"), ("m3", "a"), ("m4", "a"), ("n", "b")],
        &[("m4", "n", "x")],
    );
    let flat = GraphModel::Induced(uniform(&[&star, &spread]));
    let flat_result = mcs_brute_force(&flat, &star, &spread).unwrap();
    assert_eq!(flat_result.best_size, ratio_int(3));
    // under uniform weights the only maximizer is three isolated leaves
    assert_eq!(flat_result.witnesses.len(), 1);
    assert_eq!(flat_result.witnesses[0].graph.vertex_count(), 3);
    assert_eq!(flat_result.witnesses[0].graph.edge_count(), 0);

    let mut weights = BTreeMap::new();
    weights.insert("a".to_string(), ratio_int(1));
    weights.insert("b".to_string(), ratio_int(5));
    weights.insert("x".to_string(), ratio_int(1));
    let skewed = GraphModel::Induced(LabelWeighting::new(weights).unwrap());
    let skewed_result = mcs_brute_force(&skewed, &star, &spread).unwrap();
    assert_eq!(skewed_result.best_size, ratio_int(6));
    assert_eq!(skewed_result.witnesses.len(), 1);
    // now the pendant edge wins, which is not isomorphic to the old winner
    assert_eq!(skewed_result.witnesses[0].graph.vertex_count(), 2);
    assert_eq!(skewed_result.witnesses[0].graph.edge_count(), 1);
    assert_ne!(
        canonical_form(&flat_result.witnesses[0].graph).unwrap(),
        canonical_form(&skewed_result.witnesses[0].graph).unwrap()
    );

    // the optimized solver sees the same swap
    for (model, expect) in [(&flat, ratio_int(3)), (&skewed, ratio_int(6))] {
        let s = mcs_solve(model, &star, &spread, DEFAULT_SOLVER_VERTEX_CAP).unwrap();
        assert_eq!(s.best_size, expect);
    }
}

#[test]
fn literature_distances() {
    let alpha = uniform(&[&k3(), &p3(), &p2()]);
    let induced = GraphModel::Induced(alpha.clone());
    assert_eq!(
        graph_distance(&induced, MetricKind::NormalizedMax, &k3(), &p3(), 12).unwrap(),
        ratio(1, 3)
    );
    assert_eq!(
        graph_distance(&induced, MetricKind::NormalizedUnion, &k3(), &p3(), 12).unwrap(),
        ratio(1, 2)
    );
    let sub = GraphModel::Subgraph(alpha);
    assert_eq!(
        graph_distance(&sub, MetricKind::SymmetricDifference, &p2(), &p3(), 12).unwrap(),
        ratio_int(2)
    );
}

#[test]
fn matrix_shape_and_invariance() {
    let alpha = uniform(&[&k3(), &p3()]);
    let model = GraphModel::Induced(alpha);
    let single = distance_matrix(&model, MetricKind::NormalizedMax, &[k3()], 12).unwrap();
    assert_eq!(single, vec![vec![ratio_int(0)]]);

    // isomorphic copies produce identical rows
    let copy = g(
        &[("x", "a"), ("y", "a"), ("z", "a")],
        &[("x", "y", "x"), ("x", "z", "x"), ("y", "z", "x")],
    );
    let m = distance_matrix(
        &model,
        MetricKind::NormalizedMax,
        &[k3(), copy, p3()],
        12,
    )
    .unwrap();
    assert_eq!(m[0], m[1]);
    assert_eq!(m[0][2], m[2][0]);
    assert_eq!(m[0][1], ratio_int(0));
}

#[test]
fn witness_count_is_capped() {
    // many isolated equal-label vertices create > 16 equal maximizers
    // only up to isomorphism they collapse; use distinct labels instead
    let vs1: Vec<(String, String)> = (0..5).map(|i| (format!("u{i}"), format!("l{i}"))).collect();
    let vs2: Vec<(String, String)> = (0..5).map(|i| (format!("w{i}"), format!("l{i}"))).collect();
    let g1 = LabeledGraph::new(vs1, vec![]).unwrap();
    let g2 = LabeledGraph::new(vs2, vec![]).unwrap();
    let model = GraphModel::Induced(uniform(&[&g1, &g2]));
    let r = mcs_solve(&model, &g1, &g2, DEFAULT_SOLVER_VERTEX_CAP).unwrap();
    assert_eq!(r.best_size, ratio_int(5));
    assert!(r.witnesses.len() <= WITNESS_CAP);
    validate_all(&r, &model, &g1, &g2);
}

#[test]
fn nodes_explored_is_reproducible() {
    let model = GraphModel::Subgraph(uniform(&[&k3(), &p3()]));
    let a = mcs_solve(&model, &k3(), &p3(), 12).unwrap();
    let b = mcs_solve(&model, &k3(), &p3(), 12).unwrap();
    assert_eq!(a.nodes_explored, b.nodes_explored);
}
