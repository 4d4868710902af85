mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use vrsp::fixtures::{load, FIG1, FIG1_LEFT, FIG1_RIGHT};
use vrsp::graph::vertex_set;
use vrsp::{contract, contract_seq, is_isomorphic, ContractionSpec, Graph, GraphError, VertexSet};

fn relabel_one(g: &Graph, k: usize) -> Graph {
    let mut b = vrsp::GraphBuilder::new().vertices(g.vertex_ids().map(|v| v.as_str()));
    for (i, a) in g.arcs().iter().enumerate() {
        let action = if i == k { "zz" } else { a.label.action() };
        b = b.arc(a.tail.clone(), a.head.clone(), action, &a.label.weight().to_string());
    }
    b.build().unwrap()
}

#[test]
fn fixtures_against_brute_force() {
    let small = [load(FIG1_LEFT).graph, load(FIG1_RIGHT).graph];
    let mut r = rng(11);
    for g in &small {
        for h in &small {
            assert_eq!(is_isomorphic(g, h).is_some(), brute_iso(g, h));
        }
        let s = shuffled(g, &mut r);
        let w = is_isomorphic(g, &s).expect("renamed copy");
        assert!(w.validate(g, &s));
        assert!(brute_iso(g, &s));
        let m = relabel_one(&s, 0);
        assert_eq!(is_isomorphic(g, &m).is_some(), brute_iso(g, &m));
    }
}

#[test]
fn different_labels_are_not_isomorphic() {
    let p = vrsp::GraphBuilder::new().vertices(["x", "y"]).unit_arc("x", "y", "a").build().unwrap();
    let q = vrsp::GraphBuilder::new().vertices(["x", "y"]).unit_arc("x", "y", "b").build().unwrap();
    assert!(is_isomorphic(&p, &q).is_none());
}

#[test]
fn figure_one_contractions() {
    let g = load(FIG1).graph;
    let c = contract(&g, &vertex_set(["v11", "v12"])).unwrap();
    let y = c.vertex("{v11,v12}").unwrap().id().clone();
    let ins: BTreeSet<String> = c.in_arcs(y.as_str()).map(|a| format!("{}:{}", a.tail, a.label.action())).collect();
    let outs: BTreeSet<&str> = c.out_arcs(y.as_str()).map(|a| a.label.action()).collect();
    assert_eq!(ins, BTreeSet::from(["u0:a".into(), "u11:d".into(), "u12:d".into()]));
    assert_eq!(outs, BTreeSet::from(["e", "f"]));

    let spec = ContractionSpec::new(vec![
        vertex_set(["u11", "u12"]),
        vertex_set(["v11", "v21"]),
        vertex_set(["v12", "v22"]),
    ]);
    let left = contract_seq(&g, &spec).unwrap();
    assert_eq!(vrsp::io::emit(&left), FIG1_LEFT);
    assert_eq!(contract_seq(&g, &ContractionSpec::default()).unwrap(), g);
}

#[test]
fn contraction_cycle_is_rejected() {
    let p = vrsp::GraphBuilder::new()
        .vertices(["u", "v", "w"])
        .unit_arc("u", "v", "a")
        .unit_arc("v", "w", "b")
        .build()
        .unwrap();
    assert!(matches!(contract(&p, &vertex_set(["u", "w"])), Err(GraphError::ContractionCreatesCycle { .. })));
}

proptest! {
    #[test]
    fn iso_agrees_with_brute_force(g in graph_strategy(6), h in graph_strategy(6), seed in any::<u64>()) {
        prop_assert_eq!(is_isomorphic(&g, &h).is_some(), brute_iso(&g, &h));
        let s = shuffled(&g, &mut rng(seed));
        let w = is_isomorphic(&g, &s);
        prop_assert!(w.is_some_and(|w| w.validate(&g, &s)));
    }

    #[test]
    fn contraction_law(g in graph_strategy(6), picks in prop::collection::vec(any::<bool>(), 6)) {
        let x: VertexSet = g.vertex_ids().zip(&picks).filter(|(_, p)| **p).map(|(v, _)| v.clone()).collect();
        prop_assume!(x.len() >= 2 && x.len() < g.vertex_count());
        match contract(&g, &x) {
            Ok(c) => {
                let (n, arcs) = oracle_contract(&g, &x);
                prop_assert_eq!(c.vertex_count(), n);
                let new = c.vertex_ids().find(|v| !g.contains(v.as_str())).unwrap().to_string();
                let got: BTreeSet<Edge> = edges(&c)
                    .into_iter()
                    .map(|(t, h, l)| {
                        let f = |s: String| if s == new { "#".to_string() } else { s };
                        (f(t), f(h), l)
                    })
                    .collect();
                prop_assert_eq!(got, arcs);
            }
            Err(GraphError::ContractionCreatesCycle { .. }) => {}
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }
}

#[test]
fn seeded_random_graphs_against_brute_force() {
    let mut r = rng(5);
    for _ in 0..50 {
        let g = small_graph(&mut r, 6);
        let s = shuffled(&g, &mut r);
        assert!(is_isomorphic(&g, &s).is_some() && brute_iso(&g, &s));
        if g.arc_count() > 0 {
            let k = r.gen_range(0..g.arc_count());
            let m = relabel_one(&s, k);
            assert_eq!(is_isomorphic(&g, &m).is_some(), brute_iso(&g, &m));
        }
    }
}
