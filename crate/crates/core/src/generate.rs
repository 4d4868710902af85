//! Seeded instance generators. Each kind builds a graph meant to satisfy one
//! decomposition procedure and runs that procedure before returning; draws
//! that fail are discarded and redrawn from the same stream.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decompose::{decompose_t1, decompose_t2, decompose_t5, decompose_t6, decompose_t7, Theorem};
use crate::graph::{Arc, Graph, Vertex, VertexId, VertexSet};
use crate::io::GraphDocument;
use crate::label::{Label, Weight};
use crate::matrix::{MatrixIndexing, RowColumnCover};
use crate::products::cartesian_product;

const ATTEMPTS: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    CartesianMatrix,
    BipartiteMatrix,
    T1Cut,
    T2Cut,
    MixedT7,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 5] = [
        GeneratorKind::CartesianMatrix,
        GeneratorKind::BipartiteMatrix,
        GeneratorKind::T1Cut,
        GeneratorKind::T2Cut,
        GeneratorKind::MixedT7,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::CartesianMatrix => "cartesian-matrix",
            GeneratorKind::BipartiteMatrix => "bipartite-matrix",
            GeneratorKind::T1Cut => "t1-cut",
            GeneratorKind::T2Cut => "t2-cut",
            GeneratorKind::MixedT7 => "mixed-t7",
        }
    }

    /// The procedure the generated instances are built for.
    pub fn theorem(self) -> Theorem {
        match self {
            GeneratorKind::CartesianMatrix => Theorem::T6,
            GeneratorKind::BipartiteMatrix => Theorem::T5,
            GeneratorKind::T1Cut => Theorem::T1,
            GeneratorKind::T2Cut => Theorem::T2,
            GeneratorKind::MixedT7 => Theorem::T7,
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GeneratorKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown generator kind {s:?}"))
    }
}

/// Size parameters per kind:
///
/// * `cartesian-matrix`: a `rows` x `cols` grid; `labels` actions per factor.
/// * `bipartite-matrix`: a tree of `blocks` complete blocks between grids of
///   at most `rows` x `cols` vertices; one action per block.
/// * `t1-cut`: `|X| = rows`, `|Y| = cols`, `blocks` cut labels.
/// * `t2-cut`: `|X1| = |X2| = rows`, `|Y| = cols`.
/// * `mixed-t7`: a chain of `blocks` Cartesian parts of `rows` x `cols`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub rows: usize,
    pub cols: usize,
    pub blocks: usize,
    pub labels: usize,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, seed: u64) -> Self {
        GeneratorSpec { kind, rows: 3, cols: 3, blocks: 2, labels: 2, seed }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("no valid {kind} instance found in {ATTEMPTS} draws")]
    Exhausted { kind: GeneratorKind },
}

pub fn generate(spec: &GeneratorSpec) -> Result<GraphDocument, GenerateError> {
    for (name, value) in [("rows", spec.rows), ("cols", spec.cols), ("blocks", spec.blocks), ("labels", spec.labels)] {
        if value == 0 {
            return Err(GenerateError::InvalidSpec(format!("{name} must be positive")));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..ATTEMPTS {
        let mut doc = match spec.kind {
            GeneratorKind::CartesianMatrix => cartesian_matrix(&mut rng, spec),
            GeneratorKind::BipartiteMatrix => bipartite_matrix(&mut rng, spec),
            GeneratorKind::T1Cut => t1_cut(&mut rng, spec),
            GeneratorKind::T2Cut => t2_cut(&mut rng, spec),
            GeneratorKind::MixedT7 => mixed_t7(&mut rng, spec),
        };
        if passes(spec.kind, &doc) {
            doc.meta.insert("kind".into(), spec.kind.to_string());
            doc.meta.insert("seed".into(), spec.seed.to_string());
            return Ok(doc);
        }
    }
    Err(GenerateError::Exhausted { kind: spec.kind })
}

fn passes(kind: GeneratorKind, doc: &GraphDocument) -> bool {
    let g = &doc.graph;
    let set = |name: &str| doc.sets.get(name).cloned().unwrap_or_default();
    match kind {
        GeneratorKind::CartesianMatrix => doc.indexing.as_ref().is_some_and(|ix| {
            let cover = RowColumnCover::from_indexing(ix);
            decompose_t6(g, &cover).is_ok()
        }),
        GeneratorKind::BipartiteMatrix => doc.indexing.as_ref().is_some_and(|ix| decompose_t5(g, ix).is_ok()),
        GeneratorKind::T1Cut => decompose_t1(g, &set("X")).is_ok(),
        GeneratorKind::T2Cut => decompose_t2(g, &set("X1"), &set("X2")).is_ok(),
        GeneratorKind::MixedT7 => doc.indexing.as_ref().is_some_and(|ix| {
            let parts = doc.resolve("M").unwrap_or_default();
            decompose_t7(g, ix, &parts).is_ok()
        }),
    }
}

fn weight<R: Rng>(rng: &mut R) -> Weight {
    ["1", "1", "2", "1/2", "3/4"].choose(rng).unwrap().parse().expect("literal weight")
}

fn alphabet<R: Rng>(rng: &mut R, prefix: &str, size: usize) -> Vec<Label> {
    (0..size).map(|k| Label::new(format!("{prefix}{k}"), weight(rng)).expect("nonempty action")).collect()
}

/// Random DAG on `names` (arcs only go forward in the given order). With
/// `connected`, every vertex after the first gets an arc from an earlier one.
fn dag_on<R: Rng>(rng: &mut R, names: &[VertexId], extra: usize, labels: &[Label], connected: bool) -> Vec<Arc> {
    let mut arcs = Vec::new();
    let n = names.len();
    if connected {
        for k in 1..n {
            let j = rng.gen_range(0..k);
            arcs.push(Arc::new(names[j].clone(), names[k].clone(), labels.choose(rng).unwrap().clone()));
        }
    }
    if n >= 2 {
        for _ in 0..extra {
            let k = rng.gen_range(1..n);
            let j = rng.gen_range(0..k);
            arcs.push(Arc::new(names[j].clone(), names[k].clone(), labels.choose(rng).unwrap().clone()));
        }
    }
    arcs
}

fn names(prefix: &str, n: usize) -> Vec<VertexId> {
    (0..n).map(|k| VertexId::new(format!("{prefix}{k}"))).collect()
}

fn build(ids: &[VertexId], arcs: Vec<Arc>) -> Graph {
    Graph::new(ids.iter().cloned().map(Vertex::new), arcs).expect("forward arcs only")
}

/// Random DAG on `v0..v{n-1}` with `arcs` arcs drawn uniformly among
/// forward pairs, unit weights and actions from `actions`.
pub fn random_dag<R: Rng>(rng: &mut R, n: usize, arcs: usize, actions: &[&str]) -> Graph {
    let labels: Vec<Label> = actions.iter().map(|a| Label::unit(*a).expect("nonempty action")).collect();
    let ids = names("v", n);
    let arcs = if labels.is_empty() { vec![] } else { dag_on(rng, &ids, arcs, &labels, false) };
    build(&ids, arcs)
}

fn cell(i: usize, j: usize) -> VertexId {
    VertexId::new(format!("v{i}_{j}"))
}

/// Cartesian product of a random column graph (on row indices) and a random
/// row graph (on column indices), renamed to `v{i}_{j}`.
fn grid_product<R: Rng>(
    rng: &mut R,
    rows: &[usize],
    cols: &[usize],
    row_labels: &[Label],
    col_labels: &[Label],
) -> (Vec<VertexId>, Vec<Arc>) {
    let rid: Vec<VertexId> = rows.iter().map(|i| VertexId::new(i.to_string())).collect();
    let cid: Vec<VertexId> = cols.iter().map(|j| VertexId::new(j.to_string())).collect();
    let extra_r = rng.gen_range(0..=rows.len());
    let extra_c = rng.gen_range(0..=cols.len());
    let down = build(&rid, dag_on(rng, &rid, extra_r, col_labels, true));
    let across = build(&cid, dag_on(rng, &cid, extra_c, row_labels, true));
    let product = cartesian_product(&down, &across);
    let rename = |v: &VertexId| -> VertexId {
        let s = &v.as_str()[1..v.as_str().len() - 1];
        let (i, j) = s.split_once(',').expect("pair id");
        cell(i.parse().unwrap(), j.parse().unwrap())
    };
    let ids = product.vertex_ids().map(rename).collect();
    let arcs = product.arcs().iter().map(|a| Arc::new(rename(&a.tail), rename(&a.head), a.label.clone())).collect();
    (ids, arcs)
}

fn indexing_of(ids: &[VertexId]) -> MatrixIndexing {
    MatrixIndexing::new(ids.iter().map(|v| {
        let (i, j) = v.as_str()[1..].split_once('_').expect("cell id");
        (v.clone(), (i.parse().unwrap(), j.parse().unwrap()))
    }))
    .expect("cells are distinct")
}

fn document(ids: Vec<VertexId>, arcs: Vec<Arc>, indexing: Option<MatrixIndexing>) -> GraphDocument {
    let mut doc = GraphDocument::from_graph(build(&ids, arcs));
    doc.indexing = indexing;
    doc
}

fn cartesian_matrix<R: Rng>(rng: &mut R, spec: &GeneratorSpec) -> GraphDocument {
    let rl = alphabet(rng, "r", spec.labels);
    let cl = alphabet(rng, "c", spec.labels);
    let rows: Vec<usize> = (1..=spec.rows).collect();
    let cols: Vec<usize> = (1..=spec.cols).collect();
    let (ids, arcs) = grid_product(rng, &rows, &cols, &rl, &cl);
    let ix = indexing_of(&ids);
    document(ids, arcs, Some(ix))
}

/// Grids placed on disjoint row and column ranges, joined as a random tree
/// of complete blocks with one action each.
fn bipartite_matrix<R: Rng>(rng: &mut R, spec: &GeneratorSpec) -> GraphDocument {
    let mut grids: Vec<Vec<VertexId>> = Vec::new();
    let (mut next_row, mut next_col) = (1, 1);
    for _ in 0..=spec.blocks {
        let h = rng.gen_range(1..=spec.rows);
        let w = rng.gen_range(1..=spec.cols);
        let grid =
            (next_row..next_row + h).flat_map(|i| (next_col..next_col + w).map(move |j| cell(i, j))).collect();
        grids.push(grid);
        next_row += h;
        next_col += w;
    }
    let mut arcs = Vec::new();
    for k in 1..grids.len() {
        let parent = rng.gen_range(0..k);
        let label = Label::new(format!("b{k}"), weight(rng)).expect("nonempty action");
        for t in &grids[parent] {
            for h in &grids[k] {
                arcs.push(Arc::new(t.clone(), h.clone(), label.clone()));
            }
        }
    }
    let ids: Vec<VertexId> = grids.into_iter().flatten().collect();
    let ix = indexing_of(&ids);
    document(ids, arcs, Some(ix))
}

/// Adds one complete block per cut label between random subsets, making sure
/// that `must_tail` vertices get an outgoing cut arc and `must_head`
/// vertices an incoming one.
fn cut_blocks<R: Rng>(
    rng: &mut R,
    from: &[VertexId],
    to: &[VertexId],
    labels: &[Label],
    must_tail: &[VertexId],
    must_head: &[VertexId],
) -> Vec<Arc> {
    let mut tails: Vec<VertexSet> = vec![VertexSet::new(); labels.len()];
    let mut heads: Vec<VertexSet> = vec![VertexSet::new(); labels.len()];
    for k in 0..labels.len() {
        tails[k].insert(from.choose(rng).unwrap().clone());
        heads[k].insert(to.choose(rng).unwrap().clone());
        for v in from {
            if rng.gen_bool(0.3) {
                tails[k].insert(v.clone());
            }
        }
        for v in to {
            if rng.gen_bool(0.3) {
                heads[k].insert(v.clone());
            }
        }
    }
    for v in must_tail {
        tails[rng.gen_range(0..labels.len())].insert(v.clone());
    }
    for v in must_head {
        heads[rng.gen_range(0..labels.len())].insert(v.clone());
    }
    let mut arcs = Vec::new();
    for (k, label) in labels.iter().enumerate() {
        for t in &tails[k] {
            for h in &heads[k] {
                arcs.push(Arc::new(t.clone(), h.clone(), label.clone()));
            }
        }
    }
    arcs
}

fn without_out(ids: &[VertexId], arcs: &[Arc]) -> Vec<VertexId> {
    ids.iter().filter(|v| !arcs.iter().any(|a| &a.tail == *v)).cloned().collect()
}

fn without_in(ids: &[VertexId], arcs: &[Arc]) -> Vec<VertexId> {
    ids.iter().filter(|v| !arcs.iter().any(|a| &a.head == *v)).cloned().collect()
}

fn part<R: Rng>(rng: &mut R, prefix: &str, n: usize, labels: &[Label]) -> (Vec<VertexId>, Vec<Arc>) {
    let ids = names(prefix, n);
    let extra = rng.gen_range(0..=n);
    let connected = rng.gen_bool(0.7);
    let arcs = dag_on(rng, &ids, extra, labels, connected);
    (ids, arcs)
}

fn t1_cut<R: Rng>(rng: &mut R, spec: &GeneratorSpec) -> GraphDocument {
    let xl = alphabet(rng, "x", spec.labels);
    let yl = alphabet(rng, "y", spec.labels);
    let kl = alphabet(rng, "k", spec.blocks);
    let (xs, mut arcs) = part(rng, "x", spec.rows, &xl);
    let (ys, y_arcs) = part(rng, "y", spec.cols, &yl);
    let must_tail = without_out(&xs, &arcs);
    let must_head = without_in(&ys, &y_arcs);
    arcs.extend(y_arcs);
    arcs.extend(cut_blocks(rng, &xs, &ys, &kl, &must_tail, &must_head));
    let mut doc = document(xs.iter().chain(&ys).cloned().collect(), arcs, None);
    doc.sets.insert("X".into(), xs.into_iter().collect());
    doc
}

fn t2_cut<R: Rng>(rng: &mut R, spec: &GeneratorSpec) -> GraphDocument {
    let al = alphabet(rng, "a", spec.labels);
    let yl = alphabet(rng, "y", spec.labels);
    let zl = alphabet(rng, "z", spec.labels);
    let (x1, mut arcs) = part(rng, "a", spec.rows, &al);
    let (y, y_arcs) = part(rng, "y", spec.cols, &yl);
    let (x2, x2_arcs) = part(rng, "z", spec.rows, &zl);
    let to_y = alphabet(rng, "k", 1);
    let to_x2 = alphabet(rng, "m", 1);
    let direct = alphabet(rng, "n", 1);
    let x1_sinks = without_out(&x1, &arcs);
    let y_sinks = without_out(&y, &y_arcs);
    let y_roots = without_in(&y, &y_arcs);
    let x2_roots = without_in(&x2, &x2_arcs);
    arcs.extend(y_arcs);
    arcs.extend(x2_arcs);
    arcs.extend(cut_blocks(rng, &x1, &y, &to_y, &x1_sinks, &y_roots));
    arcs.extend(cut_blocks(rng, &y, &x2, &to_x2, &y_sinks, &x2_roots));
    if rng.gen_bool(0.5) {
        arcs.extend(cut_blocks(rng, &x1, &x2, &direct, &[], &[]));
    }
    let mut doc = document(x1.iter().chain(&y).chain(&x2).cloned().collect(), arcs, None);
    doc.sets.insert("X1".into(), x1.into_iter().collect());
    doc.sets.insert("X2".into(), x2.into_iter().collect());
    doc
}

/// Cartesian parts on the diagonal, each joined to the next by a complete
/// block from one vertex of the earlier part to all of the later part.
fn mixed_t7<R: Rng>(rng: &mut R, spec: &GeneratorSpec) -> GraphDocument {
    let mut ids = Vec::new();
    let mut arcs = Vec::new();
    let mut parts: BTreeMap<String, VertexSet> = BTreeMap::new();
    let mut previous: Option<Vec<VertexId>> = None;
    for k in 0..spec.blocks {
        let rows: Vec<usize> = (k * spec.rows + 1..=(k + 1) * spec.rows).collect();
        let cols: Vec<usize> = (k * spec.cols + 1..=(k + 1) * spec.cols).collect();
        let rl = alphabet(rng, &format!("r{k}_"), spec.labels);
        let cl = alphabet(rng, &format!("c{k}_"), spec.labels);
        let (part_ids, part_arcs) = grid_product(rng, &rows, &cols, &rl, &cl);
        if let Some(prev) = &previous {
            let tail = prev.choose(rng).unwrap();
            let label = Label::new(format!("g{k}"), weight(rng)).expect("nonempty action");
            for h in &part_ids {
                arcs.push(Arc::new(tail.clone(), h.clone(), label.clone()));
            }
        }
        parts.insert(format!("M{}", k + 1), part_ids.iter().cloned().collect());
        ids.extend(part_ids.iter().cloned());
        arcs.extend(part_arcs);
        previous = Some(part_ids);
    }
    let ix = indexing_of(&ids);
    let mut doc = document(ids, arcs, Some(ix));
    doc.families.insert("M".into(), parts.keys().cloned().collect());
    doc.sets = parts;
    doc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::validate_cartesian_matrix_graph;

    #[test]
    fn cartesian_instance_validates() {
        let spec = GeneratorSpec { kind: GeneratorKind::CartesianMatrix, rows: 3, cols: 4, blocks: 1, labels: 2, seed: 42 };
        let doc = generate(&spec).unwrap();
        assert_eq!(doc.graph.vertex_count(), 12);
        let cover = RowColumnCover::from_indexing(doc.indexing.as_ref().unwrap());
        assert!(validate_cartesian_matrix_graph(&doc.graph, &cover).holds());
    }

    #[test]
    fn single_trivial_block() {
        let spec = GeneratorSpec { kind: GeneratorKind::BipartiteMatrix, rows: 1, cols: 1, blocks: 1, labels: 1, seed: 7 };
        let g = generate(&spec).unwrap().graph;
        assert_eq!((g.vertex_count(), g.arc_count()), (2, 1));
    }

    #[test]
    fn deterministic_and_validated() {
        for kind in GeneratorKind::ALL {
            let spec = GeneratorSpec::new(kind, 3);
            assert_eq!(generate(&spec).unwrap().to_json(), generate(&spec).unwrap().to_json(), "{kind}");
        }
        let bad = GeneratorSpec { rows: 0, ..GeneratorSpec::new(GeneratorKind::T1Cut, 0) };
        assert!(matches!(generate(&bad), Err(GenerateError::InvalidSpec(_))));
    }
}
