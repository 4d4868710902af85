mod common;

use common::*;
use vrsp::decompose::*;
use vrsp::fixtures::{load, FIG1, FIG1_LEFT, FIG1_RIGHT, FIG4, FIG5};
use vrsp::graph::{vertex_set, Origin};
use vrsp::matrix::RowColumnCover;
use vrsp::{cartesian_product, is_isomorphic, GraphBuilder, VertexSet};

fn members(g: &vrsp::Graph, id: &str) -> VertexSet {
    g.vertex(id).unwrap().members().into_iter().collect()
}

#[test]
fn t5_witness_pairs_row_and_column_images() {
    let doc = load(FIG1);
    let ix = doc.indexing.as_ref().unwrap();
    let cert = decompose_t5(&doc.graph, ix).unwrap();
    assert!(verify(&cert, &doc.graph));
    assert_eq!(vrsp::io::emit(&cert.factor_left), FIG1_LEFT);
    assert_eq!(vrsp::io::emit(&cert.factor_right), FIG1_RIGHT);
    let z = vrsp::vrsp(&cert.factor_left, &cert.factor_right);
    for v in doc.graph.vertex_ids() {
        let image = z.vertex(cert.witness.map[v].as_str()).unwrap();
        let Some(Origin::Pair(l, r)) = image.origin() else { panic!("pair origin expected") };
        let (row, col) = (members(&cert.factor_left, l.as_str()), members(&cert.factor_right, r.as_str()));
        assert!(row.contains(v) && col.contains(v));
        let (i, j) = ix.coord(v.as_str()).unwrap();
        assert!(row.iter().all(|u| ix.coord(u.as_str()).unwrap().0 == i));
        assert!(col.iter().all(|u| ix.coord(u.as_str()).unwrap().1 == j));
    }
}

#[test]
fn t5_rejects_incomplete_block() {
    let doc = load(FIG1);
    let text = FIG1.replacen("{\"tail\":\"u11\",\"head\":\"v11\",\"action\":\"d\",\"weight\":\"1\"},\n", "", 1);
    assert_ne!(text, FIG1);
    let bent = vrsp::io::parse(&text).unwrap();
    let err = decompose_t5(&bent.graph, doc.indexing.as_ref().unwrap()).unwrap_err();
    assert!(err.clauses().iter().any(|c| c.id == "req-1"), "{err}");
}

#[test]
fn t6_factor_sizes() {
    let doc = load(FIG4);
    let cover = RowColumnCover::new(doc.resolve("R").unwrap(), doc.resolve("C").unwrap()).unwrap();
    let cert = decompose_t6(&doc.graph, &cover).unwrap();
    assert!(verify(&cert, &doc.graph));
    assert_eq!(cert.factor_left.vertex_count(), cover.rows().len());
    assert_eq!(cert.factor_right.vertex_count(), cover.cols().len());
    assert_eq!(cert.factor_left.vertex_count() * cert.factor_right.vertex_count(), doc.graph.vertex_count());

    let row = GraphBuilder::new().vertices(["a", "b"]).unit_arc("a", "b", "x").build().unwrap();
    let one_row = RowColumnCover::new(vec![vertex_set(["a", "b"])], vec![vertex_set(["a"]), vertex_set(["b"])]).unwrap();
    let cert = decompose_t6(&row, &one_row).unwrap();
    assert_eq!(cert.factor_left.vertex_count(), 1);
    assert!(is_isomorphic(&cert.factor_right, &row).is_some());
}

#[test]
fn t6_on_product_of_label_disjoint_paths() {
    let mut r = rng(42);
    for _ in 0..5 {
        use rand::Rng;
        let (m, n) = (r.gen_range(2..5), r.gen_range(2..5));
        let path = |len: usize, prefix: &str| {
            let names: Vec<String> = (0..len).map(|k| format!("{prefix}{k}")).collect();
            let mut b = GraphBuilder::new().vertices(names.iter().map(String::as_str));
            for k in 1..len {
                b = b.unit_arc(names[k - 1].as_str(), names[k].as_str(), &format!("{prefix}{k}"));
            }
            b.build().unwrap()
        };
        let (p, q) = (path(m, "p"), path(n, "q"));
        let g = cartesian_product(&p, &q);
        let rows = p.vertex_ids().map(|v| q.vertex_ids().map(|w| vrsp::products::pair_id(v, w)).collect()).collect();
        let cols = q.vertex_ids().map(|w| p.vertex_ids().map(|v| vrsp::products::pair_id(v, w)).collect()).collect();
        let cert = decompose_t6(&g, &RowColumnCover::new(rows, cols).unwrap()).unwrap();
        assert!(verify(&cert, &g));
        assert!(is_isomorphic(&cert.factor_left, &p).is_some());
        assert!(is_isomorphic(&cert.factor_right, &q).is_some());
    }
}

#[test]
fn t7_degenerates_to_t5_and_t6() {
    let doc = load(FIG1);
    let ix = doc.indexing.as_ref().unwrap();
    let t5 = decompose_t5(&doc.graph, ix).unwrap();
    let t7 = decompose_t7(&doc.graph, ix, &[]).unwrap();
    assert_eq!(t7.factor_left, t5.factor_left);
    assert_eq!(t7.factor_right, t5.factor_right);
    assert_eq!(t7.witness, t5.witness);

    let doc = load(FIG4);
    let ix = doc.indexing.as_ref().unwrap();
    let t6 = decompose_t6(&doc.graph, &RowColumnCover::from_indexing(ix)).unwrap();
    let t7 = decompose_t7(&doc.graph, ix, &[doc.graph.vertex_id_set()]).unwrap();
    assert!(is_isomorphic(&t7.factor_left, &t6.factor_left).is_some());
    assert!(is_isomorphic(&t7.factor_right, &t6.factor_right).is_some());
}

#[test]
fn t7_on_figure_five() {
    let doc = load(FIG5);
    let ix = doc.indexing.as_ref().unwrap();
    let cert = decompose_t7(&doc.graph, ix, &doc.resolve("M").unwrap()).unwrap();
    assert!(verify(&cert, &doc.graph));
    assert_eq!((cert.factor_left.vertex_count(), cert.factor_right.vertex_count()), (ix.m(), ix.n()));
    assert!(cert.warnings.is_empty());
}

#[test]
fn t1_on_two_vertices() {
    let g = GraphBuilder::new().vertices(["u", "v"]).unit_arc("u", "v", "a").build().unwrap();
    let cert = decompose_t1(&g, &vertex_set(["u"])).unwrap();
    assert!(verify(&cert, &g));
    assert_eq!((cert.factor_left.vertex_count(), cert.factor_right.vertex_count()), (2, 2));
    assert!(decompose_t1(&g, &g.vertex_id_set()).is_err());
}

#[test]
fn t1_on_figure_one() {
    let doc = load(FIG1);
    let cert = decompose_t1(&doc.graph, &doc.sets["X"]).unwrap();
    assert!(verify(&cert, &doc.graph));
    assert_eq!((cert.factor_left.vertex_count(), cert.factor_right.vertex_count()), (4, 7));
}

#[test]
fn automatic_decomposition() {
    let doc = load(FIG4);
    let tree = decompose_fully(&doc.graph, None);
    let DecompositionTree::Node { certificate, .. } = &tree else { panic!("expected a split") };
    assert_eq!(certificate.theorem, Theorem::T6);
    assert!(tree.certificates().iter().all(|c| c.warnings.is_empty()));
    assert!(tree.leaves().iter().all(|l| l.vertex_count() <= 3));

    for text in [FIG1, FIG5] {
        let doc = load(text);
        let tree = decompose_fully(&doc.graph, doc.indexing.as_ref());
        assert!(tree.depth() >= 1);
        let mut stack = vec![(&tree, doc.graph.clone())];
        while let Some((node, g)) = stack.pop() {
            if let DecompositionTree::Node { certificate, left, right } = node {
                assert!(verify(certificate, &g));
                stack.push((left, certificate.factor_left.clone()));
                stack.push((right, certificate.factor_right.clone()));
            }
        }
    }
    let single = GraphBuilder::new().vertex("o").build().unwrap();
    assert_eq!(decompose_fully(&single, None).depth(), 0);
}
