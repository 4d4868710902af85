//! Decomposition of a graph into two factors whose VRSP is isomorphic to it.
//!
//! Every procedure checks its hypotheses clause by clause, builds both
//! factors by sequential contraction, recomputes the VRSP of the factors and
//! validates the map `v ↦ (image of v in left, image of v in right)` arc by
//! arc. A certificate is only returned once that check passes.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::bipartite::{classify_block, label_blocks};
use crate::contract::{contract_seq, contract_seq_traced, ContractionSpec};
use crate::graph::{Arc, Graph, GraphError, VertexId, VertexSet};
use crate::iso::{is_isomorphic, IsoWitness};
use crate::label::Label;
use crate::matrix::{
    infer_cartesian_cover, is_grid, validate_bipartite_matrix_graph, validate_cartesian_matrix_graph, MatrixIndexing,
    RowColumnCover,
};
use crate::products::{pair_id, vrsp};
use crate::report::{Clause, Report, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Theorem {
    /// One cut `[X, Y]`.
    T1,
    /// Two cuts around a middle part `Y`.
    T2,
    /// Bipartite matrix graph: contract grid rows, then grid columns.
    T5,
    /// Cartesian matrix graph: contract rows, then columns.
    T6,
    /// Mixed Cartesian and bipartite matrix subgraphs.
    T7,
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Theorem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim_start_matches(['T', 't']) {
            "1" => Ok(Theorem::T1),
            "2" => Ok(Theorem::T2),
            "5" => Ok(Theorem::T5),
            "6" => Ok(Theorem::T6),
            "7" => Ok(Theorem::T7),
            _ => Err(format!("unknown theorem {s:?}; expected one of 1, 2, 5, 6, 7")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionCertificate {
    pub theorem: Theorem,
    pub factor_left: Graph,
    pub factor_right: Graph,
    pub spec_left: ContractionSpec,
    pub spec_right: ContractionSpec,
    /// Maps every vertex of the decomposed graph to its vertex in
    /// `vrsp(factor_left, factor_right)`.
    pub witness: IsoWitness,
    pub warnings: Vec<String>,
}

/// Serializable summary of a certificate (factors are stored separately).
#[derive(Debug, Clone, Serialize)]
pub struct CertificateRecord {
    pub theorem: Theorem,
    pub left_vertices: usize,
    pub right_vertices: usize,
    pub spec_left: Vec<Vec<VertexId>>,
    pub spec_right: Vec<Vec<VertexId>>,
    pub witness: Vec<(VertexId, VertexId)>,
    pub warnings: Vec<String>,
}

impl DecompositionCertificate {
    pub fn record(&self) -> CertificateRecord {
        let spec = |s: &ContractionSpec| s.sets.iter().map(|x| x.iter().cloned().collect()).collect();
        CertificateRecord {
            theorem: self.theorem,
            left_vertices: self.factor_left.vertex_count(),
            right_vertices: self.factor_right.vertex_count(),
            spec_left: spec(&self.spec_left),
            spec_right: spec(&self.spec_right),
            witness: self.witness.map.iter().map(|(a, b)| (a.clone(), b.clone())).collect(),
            warnings: self.warnings.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("preconditions failed:\n{}", render(.0))]
    PreconditionFailed(Vec<Clause>),
    #[error("the second set is empty; use T1 with the first set instead")]
    EmptySecondSet,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

fn render(clauses: &[Clause]) -> String {
    clauses.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("\n")
}

impl DecomposeError {
    pub fn clauses(&self) -> &[Clause] {
        match self {
            DecomposeError::PreconditionFailed(c) => c,
            _ => &[],
        }
    }
}

fn check(report: Report) -> Result<(), DecomposeError> {
    if report.holds() {
        Ok(())
    } else {
        Err(DecomposeError::PreconditionFailed(report.failures()))
    }
}

fn known(g: &Graph, set: &VertexSet, name: &str) -> Result<(), DecomposeError> {
    match set.iter().find(|v| !g.contains(v.as_str())) {
        Some(v) => Err(DecomposeError::InvalidInput(format!("{name} contains unknown vertex {v}"))),
        None => Ok(()),
    }
}

/// Contracts both specs, recomposes and checks the product against `g`.
fn certify(
    g: &Graph,
    theorem: Theorem,
    spec_left: ContractionSpec,
    spec_right: ContractionSpec,
    mut warnings: Vec<String>,
) -> Result<DecompositionCertificate, DecomposeError> {
    let contraction_failure = |side: &str, e: GraphError| {
        DecomposeError::PreconditionFailed(vec![Clause::new(
            "contraction",
            format!("the {side} factor can be formed by contraction"),
            vec![Witness::Note(e.to_string())],
        )])
    };
    let (left, image_left) = contract_seq_traced(g, &spec_left).map_err(|e| contraction_failure("left", e))?;
    let (right, image_right) = contract_seq_traced(g, &spec_right).map_err(|e| contraction_failure("right", e))?;
    let product = vrsp(&left, &right);
    let phi = IsoWitness::new(
        g.vertex_ids().map(|v| (v.clone(), pair_id(&image_left[v], &image_right[v]))).collect(),
    );
    let witness = if phi.validate(g, &product) {
        phi
    } else if let Some(found) = is_isomorphic(g, &product) {
        warnings.push("the row/column map is not an isomorphism; witness found by search".into());
        found
    } else {
        let mut evidence = Vec::new();
        let images: BTreeSet<&VertexId> = phi.map.values().collect();
        for (v, p) in &phi.map {
            if !product.contains(p.as_str()) {
                evidence.push(Witness::Note(format!("{v} has no vertex {p} in the product")));
            }
        }
        for p in product.vertex_ids().filter(|p| !images.contains(p)) {
            evidence.push(Witness::Note(format!("product vertex {p} has no preimage")));
        }
        if evidence.is_empty() {
            evidence.push(Witness::Note(format!(
                "product has {} arcs, graph has {}",
                product.arc_count(),
                g.arc_count()
            )));
        }
        return Err(DecomposeError::PreconditionFailed(vec![Clause::new(
            "recomposition",
            "the VRSP of the factors is isomorphic to the graph",
            evidence,
        )]));
    };
    Ok(DecompositionCertificate {
        theorem,
        factor_left: left,
        factor_right: right,
        spec_left,
        spec_right,
        witness,
        warnings,
    })
}

/// Labels of the given arcs whose arcs do not form a complete bipartite
/// subgraph.
fn incomplete_classes<'a>(arcs: impl IntoIterator<Item = &'a Arc>) -> Vec<Witness> {
    let mut classes: BTreeMap<&Label, (VertexSet, VertexSet, usize)> = BTreeMap::new();
    for a in arcs {
        let e = classes.entry(&a.label).or_default();
        e.0.insert(a.tail.clone());
        e.1.insert(a.head.clone());
        e.2 += 1;
    }
    classes
        .into_iter()
        .filter(|(_, (t, h, n))| !t.is_disjoint(h) || *n != t.len() * h.len())
        .map(|(l, _)| Witness::Label(l.clone()))
        .collect()
}

fn labels_of<'a>(arcs: impl IntoIterator<Item = &'a Arc>) -> BTreeSet<Label> {
    arcs.into_iter().map(|a| a.label.clone()).collect()
}

fn inside<'a>(g: &'a Graph, x: &'a VertexSet) -> impl Iterator<Item = &'a Arc> + 'a {
    g.arcs().iter().filter(move |a| x.contains(&a.tail) && x.contains(&a.head))
}

fn between<'a>(g: &'a Graph, x: &'a VertexSet, y: &'a VertexSet) -> impl Iterator<Item = &'a Arc> + 'a {
    g.arcs()
        .iter()
        .filter(move |a| (x.contains(&a.tail) && y.contains(&a.head)) || (y.contains(&a.tail) && x.contains(&a.head)))
}

fn backward<'a>(g: &'a Graph, x: &'a VertexSet, y: &'a VertexSet) -> impl Iterator<Item = Witness> + 'a {
    g.arcs().iter().filter(move |a| y.contains(&a.tail) && x.contains(&a.head)).map(|a| Witness::Arc(a.clone()))
}

fn shared(a: &BTreeSet<Label>, b: &BTreeSet<Label>) -> Vec<Witness> {
    a.intersection(b).map(|l| Witness::Label(l.clone())).collect()
}

fn outside(set: &VertexSet, allowed: &VertexSet) -> Vec<Witness> {
    set.difference(allowed).map(|v| Witness::Vertex(v.clone())).collect()
}

/// Hypotheses of the single-cut decomposition for `X` and `Y = V \ X`.
pub fn check_t1(g: &Graph, x: &VertexSet) -> Report {
    let mut report = Report::default();
    let vs = g.vertex_id_set();
    let y: VertexSet = vs.difference(x).cloned().collect();
    let proper = if x.is_empty() || y.is_empty() {
        vec![Witness::Note(format!("|X| = {}, |Y| = {}", x.len(), y.len()))]
    } else {
        vec![]
    };
    report.push(Clause::new("proper-subset", "X is a nonempty proper subset of V", proper));
    let cut: Vec<&Arc> = between(g, x, &y).collect();
    report.push(Clause::new(
        "cut-classes-complete",
        "each label class of [X,Y] arc-induces a complete bipartite subgraph",
        incomplete_classes(cut.iter().copied()),
    ));
    let lx = labels_of(inside(g, x));
    let ly = labels_of(inside(g, &y));
    let lc = labels_of(cut.iter().copied());
    let mut sync = shared(&lx, &ly.union(&lc).cloned().collect());
    sync.extend(shared(&ly, &lc));
    report.push(Clause::new(
        "only-cut-arcs-synchronise",
        "labels inside X or inside Y occur nowhere else in the other factor",
        sync,
    ));
    report.push(Clause::new("sources-in-x", "every source lies in X", outside(&g.source_set(), x)));
    report.push(Clause::new("no-backward-arcs", "[X,Y] has no backward arcs", backward(g, x, &y).collect()));
    report.push(Clause::new("sinks-in-y", "every sink lies in Y", outside(&g.sink_set(), &y)));
    report
}

/// Decomposes `G ≅ G/Y ⧹ G/X`.
pub fn decompose_t1(g: &Graph, x: &VertexSet) -> Result<DecompositionCertificate, DecomposeError> {
    known(g, x, "X")?;
    check(check_t1(g, x))?;
    let y: VertexSet = g.vertex_id_set().difference(x).cloned().collect();
    certify(g, Theorem::T1, ContractionSpec::new(vec![y]), ContractionSpec::new(vec![x.clone()]), vec![])
}

/// Hypotheses of the two-cut decomposition for `X₁`, `X₂` and
/// `Y = V \ (X₁ ∪ X₂)`.
pub fn check_t2(g: &Graph, x1: &VertexSet, x2: &VertexSet) -> Report {
    let mut report = Report::default();
    let vs = g.vertex_id_set();
    let y: VertexSet = vs.iter().filter(|v| !x1.contains(*v) && !x2.contains(*v)).cloned().collect();
    let mut parts = Vec::new();
    for (name, s) in [("X1", x1), ("X2", x2), ("Y", &y)] {
        if s.is_empty() {
            parts.push(Witness::Note(format!("{name} is empty")));
        }
    }
    parts.extend(x1.intersection(x2).map(|v| Witness::Vertex(v.clone())));
    report.push(Clause::new("disjoint-nonempty", "X1, X2 and Y are disjoint and nonempty", parts));

    let c1y: Vec<&Arc> = between(g, x1, &y).collect();
    let cy2: Vec<&Arc> = between(g, &y, x2).collect();
    let c12: Vec<&Arc> = between(g, x1, x2).collect();
    report.push(Clause::new(
        "x1-y-classes-complete",
        "each label class of [X1,Y] arc-induces a complete bipartite subgraph",
        incomplete_classes(c1y.iter().copied()),
    ));
    report.push(Clause::new(
        "y-x2-classes-complete",
        "each label class of [Y,X2] arc-induces a complete bipartite subgraph",
        incomplete_classes(cy2.iter().copied()),
    ));
    let l1y = labels_of(c1y.iter().copied());
    let ly2 = labels_of(cy2.iter().copied());
    let l12 = labels_of(c12.iter().copied());
    report.push(Clause::new(
        "x1-x2-labels-private",
        "labels of [X1,X2] do not occur in [X1,Y] or [Y,X2]",
        shared(&l12, &l1y.union(&ly2).cloned().collect()),
    ));
    let lx: BTreeSet<Label> = labels_of(inside(g, x1)).union(&labels_of(inside(g, x2))).cloned().collect();
    let ly = labels_of(inside(g, &y));
    let cuts: BTreeSet<Label> = l1y.iter().chain(&ly2).chain(&l12).cloned().collect();
    let mut sync = shared(&lx, &ly.union(&cuts).cloned().collect());
    sync.extend(shared(&ly, &cuts));
    report.push(Clause::new(
        "only-cut-arcs-synchronise",
        "labels inside X1, X2 or Y occur nowhere else in the other factor",
        sync,
    ));
    report.push(Clause::new("sources-in-x1", "every source lies in X1", outside(&g.source_set(), x1)));
    let mut back: Vec<Witness> = backward(g, x1, &y).collect();
    back.extend(backward(g, &y, x2));
    back.extend(backward(g, x1, x2));
    report.push(Clause::new("no-backward-arcs", "[X1,Y], [Y,X2] and [X1,X2] have no backward arcs", back));
    let mut sink_home = x2.clone();
    if cy2.is_empty() {
        sink_home.extend(y.iter().cloned());
    }
    report.push(Clause::new(
        "sinks-placed",
        "every sink lies in X2, or in Y when [Y,X2] is empty",
        outside(&g.sink_set(), &sink_home),
    ));
    report
}

/// Decomposes `G ≅ G/Y ⧹ G/X₁/X₂`.
pub fn decompose_t2(g: &Graph, x1: &VertexSet, x2: &VertexSet) -> Result<DecompositionCertificate, DecomposeError> {
    if x2.is_empty() {
        return Err(DecomposeError::EmptySecondSet);
    }
    known(g, x1, "X1")?;
    known(g, x2, "X2")?;
    check(check_t2(g, x1, x2))?;
    let y: VertexSet = g.vertex_ids().filter(|v| !x1.contains(*v) && !x2.contains(*v)).cloned().collect();
    certify(
        g,
        Theorem::T2,
        ContractionSpec::new(vec![y]),
        ContractionSpec::new(vec![x1.clone(), x2.clone()]),
        vec![],
    )
}

/// Partite sets of all label blocks: tails then heads, in label order,
/// without repeats.
fn partite_sets(g: &Graph) -> Vec<VertexSet> {
    let mut sets: Vec<VertexSet> = Vec::new();
    for block in label_blocks(g) {
        for side in [block.tails, block.heads] {
            if !sets.contains(&side) {
                sets.push(side);
            }
        }
    }
    sets
}

/// Hypotheses of the bipartite matrix decomposition.
pub fn check_t5(g: &Graph, indexing: &MatrixIndexing) -> Report {
    let mut report = validate_bipartite_matrix_graph(g, indexing);
    if !report.holds() && report.clause("indexed").is_some_and(|c| !c.holds) {
        return report;
    }
    let sets = partite_sets(g);
    let intra: Vec<Witness> = g
        .arcs()
        .iter()
        .filter(|a| sets.iter().any(|s| s.contains(&a.tail) && s.contains(&a.head)))
        .map(|a| Witness::Arc(a.clone()))
        .collect();
    report.push(Clause::new("no-intra-partite-arcs", "no arc has both ends in one partite set", intra));
    let mut bad = Vec::new();
    for (k, a) in sets.iter().enumerate() {
        for b in &sets[k + 1..] {
            let common: VertexSet = a.intersection(b).cloned().collect();
            if !common.is_empty() && !matches!(is_grid(indexing, &common), Ok(Some(_))) {
                bad.push(Witness::Set(common));
            }
        }
    }
    report.push(Clause::new("grid-intersections", "partite sets meet in nothing or in a grid", bad));
    report
}

/// Decomposes a bipartite matrix graph by contracting every grid row of
/// every partite set (left) and every grid column (right).
pub fn decompose_t5(g: &Graph, indexing: &MatrixIndexing) -> Result<DecompositionCertificate, DecomposeError> {
    check(check_t5(g, indexing))?;
    let mut rows = Vec::new();
    let mut cols = Vec::new();
    for set in partite_sets(g) {
        let grid = is_grid(indexing, &set)
            .ok()
            .flatten()
            .ok_or_else(|| DecomposeError::InvalidInput("partite set is not a grid".into()))?;
        rows.extend(grid.rows.into_values());
        cols.extend(grid.cols.into_values());
    }
    if g.arc_count() == 0 {
        rows = g.vertex_ids().map(|v| VertexSet::from([v.clone()])).collect();
        cols = rows.clone();
    }
    certify(g, Theorem::T5, ContractionSpec::new(rows), ContractionSpec::new(cols), vec![])
}

/// Hypotheses of the Cartesian matrix decomposition.
pub fn check_t6(g: &Graph, cover: &RowColumnCover) -> Report {
    let mut report = validate_cartesian_matrix_graph(g, cover);
    let rect = if cover.is_full_rectangle() {
        vec![]
    } else {
        vec![Witness::Note(format!(
            "{} rows x {} columns but {} vertices",
            cover.rows().len(),
            cover.cols().len(),
            g.vertex_count()
        ))]
    };
    report.push(Clause::new("full-rectangle", "every row meets every column", rect));
    report
}

/// Decomposes `G ≅ G/rows ⧹ G/columns` for a Cartesian matrix graph.
pub fn decompose_t6(g: &Graph, cover: &RowColumnCover) -> Result<DecompositionCertificate, DecomposeError> {
    check(check_t6(g, cover))?;
    certify(
        g,
        Theorem::T6,
        ContractionSpec::new(cover.rows().to_vec()),
        ContractionSpec::new(cover.cols().to_vec()),
        vec![],
    )
}

/// Cover of a vertex set by the rows and columns of an indexing.
fn cover_of(indexing: &MatrixIndexing, set: &VertexSet) -> Option<RowColumnCover> {
    let mut rows: BTreeMap<usize, VertexSet> = BTreeMap::new();
    let mut cols: BTreeMap<usize, VertexSet> = BTreeMap::new();
    for v in set {
        let (i, j) = indexing.coord(v.as_str())?;
        rows.entry(i).or_default().insert(v.clone());
        cols.entry(j).or_default().insert(v.clone());
    }
    RowColumnCover::new(rows.into_values().collect(), cols.into_values().collect()).ok()
}

/// Hypotheses of the mixed decomposition. `cartesian` lists the vertex sets
/// of the Cartesian matrix subgraphs; every arc outside them belongs to the
/// bipartite part.
pub fn check_t7(g: &Graph, indexing: &MatrixIndexing, cartesian: &[VertexSet]) -> Report {
    let mut report = Report::default();
    let unindexed: Vec<Witness> =
        g.vertex_ids().filter(|v| indexing.coord(v.as_str()).is_none()).map(|v| Witness::Vertex(v.clone())).collect();
    report.push(Clause::new("indexed", "every vertex has a coordinate", unindexed.clone()));
    let unknown: Vec<Witness> =
        cartesian.iter().flatten().filter(|v| !g.contains(v.as_str())).map(|v| Witness::Vertex(v.clone())).collect();
    report.push(Clause::new("known-vertices", "Cartesian subgraph sets contain only graph vertices", unknown.clone()));
    if !unindexed.is_empty() || !unknown.is_empty() {
        return report;
    }

    let mut overlap = Vec::new();
    for (k, a) in cartesian.iter().enumerate() {
        for b in &cartesian[k + 1..] {
            overlap.extend(a.intersection(b).map(|v| Witness::Vertex(v.clone())));
        }
    }
    report.push(Clause::new("cartesian-disjoint", "Cartesian subgraphs are vertex-disjoint", overlap));

    let mut not_cartesian = Vec::new();
    let mut m_labels: Vec<BTreeSet<Label>> = Vec::new();
    let mut in_m: HashMap<&VertexId, usize> = HashMap::new();
    for (k, set) in cartesian.iter().enumerate() {
        for v in set {
            in_m.insert(v, k);
        }
        let sub = g.induced_subgraph(set).expect("vertices checked");
        m_labels.push(sub.labels());
        let ok = cover_of(indexing, set).is_some_and(|c| check_t6(&sub, &c).holds());
        if !ok {
            not_cartesian.push(Witness::Set(set.clone()));
        }
    }
    report.push(Clause::new(
        "cartesian-parts",
        "each Cartesian subgraph is a full-rectangle Cartesian matrix graph under the indexing",
        not_cartesian,
    ));

    let b_arcs: Vec<Arc> = g
        .arcs()
        .iter()
        .filter(|a| !matches!((in_m.get(&a.tail), in_m.get(&a.head)), (Some(x), Some(y)) if x == y))
        .cloned()
        .collect();
    let b_graph = Graph::assemble(g.vertices().to_vec(), b_arcs.clone());
    let b_labels = b_graph.labels();
    let mut label_clash = Vec::new();
    for (k, lk) in m_labels.iter().enumerate() {
        for other in &m_labels[k + 1..] {
            label_clash.extend(shared(lk, other));
        }
        label_clash.extend(shared(lk, &b_labels));
    }
    report.push(Clause::new(
        "labels-disjoint",
        "Cartesian subgraphs share no label with each other or with the bipartite part",
        label_clash,
    ));

    let mut bad_blocks = Vec::new();
    let mut b_sets = Vec::new();
    for block in label_blocks(&b_graph) {
        let ok = classify_block(&block).is_ok_and(|c| c.complete)
            && [&block.tails, &block.heads].iter().all(|s| matches!(is_grid(indexing, s), Ok(Some(_))));
        if !ok {
            bad_blocks.push(Witness::Label(block.label.clone()));
        }
        b_sets.push(block.tails);
        b_sets.push(block.heads);
    }
    report.push(Clause::new(
        "bipartite-blocks",
        "each bipartite label block is complete between grids",
        bad_blocks,
    ));
    let intra: Vec<Witness> = b_arcs
        .iter()
        .filter(|a| b_sets.iter().any(|s| s.contains(&a.tail) && s.contains(&a.head)))
        .map(|a| Witness::Arc(a.clone()))
        .collect();
    report.push(Clause::new(
        "no-intra-partite-arcs",
        "no bipartite arc has both ends in one partite set",
        intra,
    ));
    let aligned: Vec<Witness> = b_arcs
        .iter()
        .filter(|a| {
            let (ti, tj) = indexing.coord(a.tail.as_str()).unwrap();
            let (hi, hj) = indexing.coord(a.head.as_str()).unwrap();
            ti == hi || tj == hj
        })
        .map(|a| Witness::Arc(a.clone()))
        .collect();
    report.push(Clause::new(
        "bipartite-arcs-cross-rows-and-columns",
        "no bipartite arc joins two vertices of one row or of one column",
        aligned,
    ));
    let covered: VertexSet =
        cartesian.iter().flatten().cloned().chain(b_arcs.iter().flat_map(|a| [a.tail.clone(), a.head.clone()])).collect();
    let stray = if g.vertex_count() > 1 { outside(&g.vertex_id_set(), &covered) } else { vec![] };
    report.push(Clause::new("coverage", "every vertex lies in a Cartesian or a bipartite subgraph", stray));
    report
}

/// Decomposes `G ≅ G/rows ⧹ G/columns` for a graph made of Cartesian matrix
/// subgraphs joined by complete bipartite label blocks.
pub fn decompose_t7(
    g: &Graph,
    indexing: &MatrixIndexing,
    cartesian: &[VertexSet],
) -> Result<DecompositionCertificate, DecomposeError> {
    check(check_t7(g, indexing, cartesian))?;
    let warnings = maximality_warnings(g, indexing, cartesian);
    let rows: Vec<VertexSet> = indexing.rows().into_values().collect();
    let cols: Vec<VertexSet> = indexing.cols().into_values().collect();
    let restrict = |sets: Vec<VertexSet>| -> ContractionSpec {
        sets.into_iter()
            .map(|s| s.into_iter().filter(|v| g.contains(v.as_str())).collect::<VertexSet>())
            .filter(|s| !s.is_empty())
            .collect()
    };
    certify(g, Theorem::T7, restrict(rows), restrict(cols), warnings)
}

/// One-step extension test: a Cartesian part that stays Cartesian after
/// adding a neighbouring row or column of free vertices is reported.
fn maximality_warnings(g: &Graph, indexing: &MatrixIndexing, cartesian: &[VertexSet]) -> Vec<String> {
    let taken: VertexSet = cartesian.iter().flatten().cloned().collect();
    let mut warnings = Vec::new();
    for (k, set) in cartesian.iter().enumerate() {
        let coords: Vec<(usize, usize)> = set.iter().filter_map(|v| indexing.coord(v.as_str())).collect();
        let rows: BTreeSet<usize> = coords.iter().map(|c| c.0).collect();
        let cols: BTreeSet<usize> = coords.iter().map(|c| c.1).collect();
        let mut candidates: Vec<(String, VertexSet)> = Vec::new();
        for i in 1..=indexing.m() {
            if rows.contains(&i) {
                continue;
            }
            let line: Option<VertexSet> = cols.iter().map(|&j| indexing.vertex_at(i, j).cloned()).collect();
            if let Some(line) = line {
                candidates.push((format!("row {i}"), line));
            }
        }
        for j in 1..=indexing.n() {
            if cols.contains(&j) {
                continue;
            }
            let line: Option<VertexSet> = rows.iter().map(|&i| indexing.vertex_at(i, j).cloned()).collect();
            if let Some(line) = line {
                candidates.push((format!("column {j}"), line));
            }
        }
        for (what, line) in candidates {
            if line.iter().any(|v| taken.contains(v) || !g.contains(v.as_str())) {
                continue;
            }
            let bigger: VertexSet = set.union(&line).cloned().collect();
            let sub = g.induced_subgraph(&bigger).expect("vertices exist");
            let connected = sub.arc_count() > g.induced_subgraph(set).expect("vertices exist").arc_count();
            if connected && cover_of(indexing, &bigger).is_some_and(|c| check_t6(&sub, &c).holds()) {
                warnings.push(format!("Cartesian part {k} is not maximal: it extends by {what}"));
            }
        }
    }
    warnings
}

/// Recomputes the factors from the recorded specs and the VRSP of the
/// factors, and validates the witness against `g`.
pub fn verify(cert: &DecompositionCertificate, g: &Graph) -> bool {
    let Ok(left) = contract_seq(g, &cert.spec_left) else { return false };
    let Ok(right) = contract_seq(g, &cert.spec_right) else { return false };
    if left != cert.factor_left || right != cert.factor_right {
        return false;
    }
    cert.witness.validate(g, &vrsp(&left, &right))
}

/// Result of repeated decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecompositionTree {
    Node { certificate: Box<DecompositionCertificate>, left: Box<DecompositionTree>, right: Box<DecompositionTree> },
    Leaf { graph: Graph },
}

/// Note attached to every leaf.
pub const LEAF_NOTE: &str = "not decomposable by T1/T2/T5/T6/T7 with discovered parameters";

impl DecompositionTree {
    pub fn depth(&self) -> usize {
        match self {
            DecompositionTree::Leaf { .. } => 0,
            DecompositionTree::Node { left, right, .. } => 1 + left.depth().max(right.depth()),
        }
    }

    pub fn leaves(&self) -> Vec<&Graph> {
        match self {
            DecompositionTree::Leaf { graph } => vec![graph],
            DecompositionTree::Node { left, right, .. } => {
                let mut out = left.leaves();
                out.extend(right.leaves());
                out
            }
        }
    }

    pub fn certificates(&self) -> Vec<&DecompositionCertificate> {
        match self {
            DecompositionTree::Leaf { .. } => vec![],
            DecompositionTree::Node { certificate, left, right } => {
                let mut out = vec![certificate.as_ref()];
                out.extend(left.certificates());
                out.extend(right.certificates());
                out
            }
        }
    }

    /// JSON-friendly outline: theorem and factor sizes per node.
    pub fn outline(&self) -> TreeOutline {
        match self {
            DecompositionTree::Leaf { graph } => TreeOutline::Leaf {
                vertices: graph.vertex_count(),
                arcs: graph.arc_count(),
                note: LEAF_NOTE.to_string(),
            },
            DecompositionTree::Node { certificate, left, right } => TreeOutline::Node {
                theorem: certificate.theorem,
                warnings: certificate.warnings.clone(),
                left: Box::new(left.outline()),
                right: Box::new(right.outline()),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TreeOutline {
    Node { theorem: Theorem, warnings: Vec<String>, left: Box<TreeOutline>, right: Box<TreeOutline> },
    Leaf { vertices: usize, arcs: usize, note: String },
}

/// Greedy repeated decomposition: T6 with an inferred cover, then T5 with
/// the supplied indexing (top level only), then T1 and T2 over level-prefix
/// and label-frontier cuts. Only splits into two strictly smaller factors
/// are taken.
pub fn decompose_fully(g: &Graph, indexing: Option<&MatrixIndexing>) -> DecompositionTree {
    match find_split(g, indexing) {
        Some(cert) => {
            let left = decompose_fully(&cert.factor_left, None);
            let right = decompose_fully(&cert.factor_right, None);
            DecompositionTree::Node { certificate: Box::new(cert), left: Box::new(left), right: Box::new(right) }
        }
        None => DecompositionTree::Leaf { graph: g.clone() },
    }
}

fn smaller(g: &Graph, cert: &DecompositionCertificate) -> bool {
    cert.factor_left.vertex_count() < g.vertex_count() && cert.factor_right.vertex_count() < g.vertex_count()
}

fn find_split(g: &Graph, indexing: Option<&MatrixIndexing>) -> Option<DecompositionCertificate> {
    if g.vertex_count() < 3 || g.arc_count() == 0 {
        return None;
    }
    let accept = |r: Result<DecompositionCertificate, DecomposeError>| r.ok().filter(|c| smaller(g, c));
    if let Some(cover) = infer_cartesian_cover(g) {
        if let Some(c) = accept(decompose_t6(g, &cover)) {
            return Some(c);
        }
    }
    if let Some(ix) = indexing {
        if let Some(c) = accept(decompose_t5(g, ix)) {
            return Some(c);
        }
    }
    let cuts = candidate_cuts(g);
    for x in &cuts {
        if check_t1(g, x).holds() {
            if let Some(c) = accept(decompose_t1(g, x)) {
                return Some(c);
            }
        }
    }
    for x1 in &cuts {
        for rest in &cuts {
            // X2 is the complement of a larger prefix.
            if rest.len() <= x1.len() || !x1.is_subset(rest) {
                continue;
            }
            let x2: VertexSet = g.vertex_ids().filter(|v| !rest.contains(*v)).cloned().collect();
            if x2.is_empty() || !check_t2(g, x1, &x2).holds() {
                continue;
            }
            if let Some(c) = accept(decompose_t2(g, x1, &x2)) {
                return Some(c);
            }
        }
    }
    None
}

/// Down-closed vertex sets: every level prefix, and for each label block the
/// ancestors of its tails (tails included).
fn candidate_cuts(g: &Graph) -> Vec<VertexSet> {
    let levels = g.level_assignment();
    let layers = levels.layers();
    let mut cuts: Vec<VertexSet> = Vec::new();
    let mut prefix = VertexSet::new();
    for layer in layers.iter().take(layers.len().saturating_sub(1)) {
        prefix.extend(layer.iter().cloned());
        cuts.push(prefix.clone());
    }
    for block in label_blocks(g) {
        let mut closure = block.tails.clone();
        let mut stack: Vec<VertexId> = closure.iter().cloned().collect();
        while let Some(v) = stack.pop() {
            for a in g.in_arcs(v.as_str()) {
                if closure.insert(a.tail.clone()) {
                    stack.push(a.tail.clone());
                }
            }
        }
        if closure.len() < g.vertex_count() && !cuts.contains(&closure) {
            cuts.push(closure);
        }
    }
    cuts.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    cuts.dedup();
    cuts
}
