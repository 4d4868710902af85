//! Matrix indexings, grids, and the validators for bipartite and Cartesian
//! matrix graphs.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::bipartite::{classify_block, label_blocks};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::iso::is_isomorphic;
use crate::label::Label;
use crate::report::{Clause, Report, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("vertices {first} and {second} share coordinate ({row},{col})")]
    DuplicateCoordinate { first: VertexId, second: VertexId, row: usize, col: usize },
    #[error("coordinates are 1-based, got ({row},{col}) for {vertex}")]
    ZeroCoordinate { vertex: VertexId, row: usize, col: usize },
    #[error("vertex {0} has no coordinate")]
    UnindexedVertex(VertexId),
    #[error("invalid row/column cover: {0}")]
    InvalidCover(String),
}

/// Injective assignment of 1-based `(row, column)` coordinates to vertices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MatrixIndexing {
    coords: BTreeMap<VertexId, (usize, usize)>,
    #[serde(skip)]
    at: HashMap<(usize, usize), VertexId>,
}

impl MatrixIndexing {
    pub fn new(coords: impl IntoIterator<Item = (VertexId, (usize, usize))>) -> Result<Self, MatrixError> {
        let mut ix = MatrixIndexing::default();
        for (v, (row, col)) in coords {
            if row == 0 || col == 0 {
                return Err(MatrixError::ZeroCoordinate { vertex: v, row, col });
            }
            if let Some(first) = ix.at.get(&(row, col)) {
                let (first, second) = if *first < v { (first.clone(), v) } else { (v, first.clone()) };
                return Err(MatrixError::DuplicateCoordinate { first, second, row, col });
            }
            ix.at.insert((row, col), v.clone());
            ix.coords.insert(v, (row, col));
        }
        Ok(ix)
    }

    pub fn coord(&self, v: &str) -> Option<(usize, usize)> {
        self.coords.get(v).copied()
    }

    pub fn vertex_at(&self, row: usize, col: usize) -> Option<&VertexId> {
        self.at.get(&(row, col))
    }

    pub fn coords(&self) -> &BTreeMap<VertexId, (usize, usize)> {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Largest row index `m`.
    pub fn m(&self) -> usize {
        self.coords.values().map(|c| c.0).max().unwrap_or(0)
    }

    /// Largest column index `n`.
    pub fn n(&self) -> usize {
        self.coords.values().map(|c| c.1).max().unwrap_or(0)
    }

    /// Occupied rows `R_i`.
    pub fn rows(&self) -> BTreeMap<usize, VertexSet> {
        let mut rows: BTreeMap<usize, VertexSet> = BTreeMap::new();
        for (v, &(i, _)) in &self.coords {
            rows.entry(i).or_default().insert(v.clone());
        }
        rows
    }

    /// Occupied columns `C_j`.
    pub fn cols(&self) -> BTreeMap<usize, VertexSet> {
        let mut cols: BTreeMap<usize, VertexSet> = BTreeMap::new();
        for (v, &(_, j)) in &self.coords {
            cols.entry(j).or_default().insert(v.clone());
        }
        cols
    }

    /// First vertex of `g` without a coordinate.
    pub fn check_covers(&self, g: &Graph) -> Result<(), MatrixError> {
        match g.vertex_ids().find(|v| !self.coords.contains_key(*v)) {
            Some(v) => Err(MatrixError::UnindexedVertex(v.clone())),
            None => Ok(()),
        }
    }
}

/// A rectangle `I_X × J_X` of the indexing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridSet {
    pub vertices: VertexSet,
    pub row_ids: BTreeSet<usize>,
    pub col_ids: BTreeSet<usize>,
    /// `X'_i` per row index.
    pub rows: BTreeMap<usize, VertexSet>,
    /// `X''_j` per column index.
    pub cols: BTreeMap<usize, VertexSet>,
}

/// Returns the grid structure of `x` if `x` is exactly a rectangle.
pub fn is_grid(indexing: &MatrixIndexing, x: &VertexSet) -> Result<Option<GridSet>, MatrixError> {
    let mut rows: BTreeMap<usize, VertexSet> = BTreeMap::new();
    let mut cols: BTreeMap<usize, VertexSet> = BTreeMap::new();
    for v in x {
        let (i, j) = indexing.coord(v.as_str()).ok_or_else(|| MatrixError::UnindexedVertex(v.clone()))?;
        rows.entry(i).or_default().insert(v.clone());
        cols.entry(j).or_default().insert(v.clone());
    }
    if x.is_empty() || rows.len() * cols.len() != x.len() {
        return Ok(None);
    }
    Ok(Some(GridSet {
        vertices: x.clone(),
        row_ids: rows.keys().copied().collect(),
        col_ids: cols.keys().copied().collect(),
        rows,
        cols,
    }))
}

/// Rows and columns partitioning the same vertex set, meeting in at most one
/// vertex each.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowColumnCover {
    rows: Vec<VertexSet>,
    cols: Vec<VertexSet>,
}

impl RowColumnCover {
    pub fn new(rows: Vec<VertexSet>, cols: Vec<VertexSet>) -> Result<Self, MatrixError> {
        let union = |sets: &[VertexSet], what: &str| -> Result<VertexSet, MatrixError> {
            let mut all = VertexSet::new();
            for s in sets {
                if s.is_empty() {
                    return Err(MatrixError::InvalidCover(format!("empty {what}")));
                }
                for v in s {
                    if !all.insert(v.clone()) {
                        return Err(MatrixError::InvalidCover(format!("{v} lies in two {what}s")));
                    }
                }
            }
            Ok(all)
        };
        let row_union = union(&rows, "row")?;
        let col_union = union(&cols, "column")?;
        if row_union != col_union {
            let v = row_union.symmetric_difference(&col_union).next().unwrap();
            return Err(MatrixError::InvalidCover(format!("{v} is not in both a row and a column")));
        }
        for r in &rows {
            for c in &cols {
                if r.intersection(c).nth(1).is_some() {
                    return Err(MatrixError::InvalidCover("a row and a column share two vertices".into()));
                }
            }
        }
        Ok(RowColumnCover { rows, cols })
    }

    pub fn from_indexing(indexing: &MatrixIndexing) -> Self {
        RowColumnCover {
            rows: indexing.rows().into_values().collect(),
            cols: indexing.cols().into_values().collect(),
        }
    }

    pub fn rows(&self) -> &[VertexSet] {
        &self.rows
    }

    pub fn cols(&self) -> &[VertexSet] {
        &self.cols
    }

    /// Every row meets every column.
    pub fn is_full_rectangle(&self) -> bool {
        self.rows.len() * self.cols.len() == self.rows.iter().map(VertexSet::len).sum::<usize>()
    }
}

/// Checks the six bipartite matrix graph requirements.
///
/// Clause ids are `req-1` to `req-6`; requirement 1 also covers the
/// bookkeeping bound `z <= 2x` (`x` blocks, `z` distinct partite sets).
pub fn validate_bipartite_matrix_graph(g: &Graph, indexing: &MatrixIndexing) -> Report {
    let mut report = Report::default();
    let unindexed: Vec<Witness> =
        g.vertex_ids().filter(|v| indexing.coord(v.as_str()).is_none()).map(|v| Witness::Vertex(v.clone())).collect();
    report.push(Clause::new("indexed", "every vertex has a coordinate", unindexed.clone()));
    if !unindexed.is_empty() {
        return report;
    }

    let blocks = label_blocks(g);
    let mut req1 = Vec::new();
    let mut partite: Vec<VertexSet> = Vec::new();
    for block in &blocks {
        match classify_block(block) {
            Err(_) => req1.push(Witness::Label(block.label.clone())),
            Ok(class) if !class.semicomplete => req1.push(Witness::Label(block.label.clone())),
            Ok(_) => {}
        }
        for side in [&block.tails, &block.heads] {
            if !partite.contains(side) {
                partite.push(side.clone());
            }
        }
    }
    let covered: VertexSet = partite.iter().flatten().cloned().collect();
    if !blocks.is_empty() {
        req1.extend(g.vertex_ids().filter(|v| !covered.contains(*v)).map(|v| Witness::Vertex(v.clone())));
    }
    let (x, z) = (blocks.len(), partite.len());
    if z > 2 * x {
        req1.push(Witness::Note(format!("z = {z} > 2x = {}", 2 * x)));
    }
    report.push(Clause::new(
        "req-1",
        format!("label blocks are semicomplete bipartite and cover the graph (x = {x}, z = {z})"),
        req1,
    ));

    let mut req2 = Vec::new();
    let mut grids = Vec::new();
    for set in &partite {
        match is_grid(indexing, set) {
            Ok(Some(grid)) => grids.push(grid),
            _ => req2.push(Witness::Set(set.clone())),
        }
    }
    for (a, xa) in partite.iter().enumerate() {
        for xb in &partite[a + 1..] {
            if xa.is_disjoint(xb) {
                if let Ok(cut) = g.cut(xa, xb) {
                    if !cut.forward.is_empty() && !cut.backward.is_empty() {
                        req2.push(Witness::Arc(cut.backward[0].clone()));
                    }
                }
            }
        }
    }
    report.push(Clause::new(
        "req-2",
        "partite sets are grids and every cut between them is all-forward or all-backward",
        req2,
    ));

    let (req3, req4) = fibre_checks(&grids, |grid| &grid.rows, |v| indexing.coord(v).map(|c| c.0), Witness::Row);
    report.push(Clause::new("req-3", "grid rows sharing a vertex lie in the same row R_i", req3));
    report.push(Clause::new("req-4", "the grid rows inside each R_i are connected by shared vertices", req4));
    let (req5, req6) = fibre_checks(&grids, |grid| &grid.cols, |v| indexing.coord(v).map(|c| c.1), Witness::Column);
    report.push(Clause::new("req-5", "grid columns sharing a vertex lie in the same column C_j", req5));
    report.push(Clause::new(
        "req-6",
        "the grid columns inside each C_j are connected by shared vertices",
        req6,
    ));
    report
}

/// Sharing and connectivity of the grid rows (or columns) per index.
fn fibre_checks(
    grids: &[GridSet],
    parts: impl Fn(&GridSet) -> &BTreeMap<usize, VertexSet>,
    index_of: impl Fn(&str) -> Option<usize>,
    witness: fn(usize) -> Witness,
) -> (Vec<Witness>, Vec<Witness>) {
    let mut by_index: BTreeMap<usize, Vec<&VertexSet>> = BTreeMap::new();
    let mut sharing = Vec::new();
    for grid in grids {
        for (&i, part) in parts(grid) {
            if part.iter().any(|v| index_of(v.as_str()) != Some(i)) {
                sharing.push(Witness::Set(part.clone()));
            }
            by_index.entry(i).or_default().push(part);
        }
    }
    let mut connectivity = Vec::new();
    for (i, sets) in by_index {
        if !sets_connected(&sets) {
            connectivity.push(witness(i));
        }
    }
    (sharing, connectivity)
}

/// Whether the intersection graph of `sets` is connected.
fn sets_connected(sets: &[&VertexSet]) -> bool {
    let mut parent: Vec<usize> = (0..sets.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for a in 0..sets.len() {
        for b in a + 1..sets.len() {
            if !sets[a].is_disjoint(sets[b]) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
    }
    let roots: BTreeSet<usize> = (0..sets.len()).map(|x| find(&mut parent, x)).collect();
    roots.len() <= 1
}

/// Checks that `cover` makes `g` a Cartesian matrix graph.
///
/// Clause ids: `cover`, `rows-isomorphic`, `cols-isomorphic`,
/// `labels-disjoint`, `arcs-in-rows-or-cols`.
pub fn validate_cartesian_matrix_graph(g: &Graph, cover: &RowColumnCover) -> Report {
    let mut report = Report::default();
    let vs = g.vertex_id_set();
    let covered: VertexSet = cover.rows.iter().flatten().cloned().collect();
    let mismatch: Vec<Witness> = vs.symmetric_difference(&covered).map(|v| Witness::Vertex(v.clone())).collect();
    report.push(Clause::new("cover", "rows and columns cover exactly the vertex set", mismatch.clone()));
    if !mismatch.is_empty() {
        return report;
    }

    let iso_clause = |sets: &[VertexSet], witness: fn(usize) -> Witness| -> Vec<Witness> {
        let subgraphs: Vec<Graph> = sets.iter().map(|s| g.induced_subgraph(s).expect("cover checked")).collect();
        let mut bad = Vec::new();
        for (k, sub) in subgraphs.iter().enumerate().skip(1) {
            if is_isomorphic(&subgraphs[0], sub).is_none() {
                bad.push(witness(k));
            }
        }
        bad
    };
    report.push(Clause::new("rows-isomorphic", "all rows induce isomorphic subgraphs", iso_clause(&cover.rows, Witness::Row)));
    report.push(Clause::new(
        "cols-isomorphic",
        "all columns induce isomorphic subgraphs",
        iso_clause(&cover.cols, Witness::Column),
    ));

    let row_of: HashMap<&VertexId, usize> =
        cover.rows.iter().enumerate().flat_map(|(k, s)| s.iter().map(move |v| (v, k))).collect();
    let col_of: HashMap<&VertexId, usize> =
        cover.cols.iter().enumerate().flat_map(|(k, s)| s.iter().map(move |v| (v, k))).collect();
    let mut row_labels: BTreeSet<&Label> = BTreeSet::new();
    let mut col_labels: BTreeSet<&Label> = BTreeSet::new();
    let mut stray = Vec::new();
    for arc in g.arcs() {
        if row_of[&arc.tail] == row_of[&arc.head] {
            row_labels.insert(&arc.label);
        } else if col_of[&arc.tail] == col_of[&arc.head] {
            col_labels.insert(&arc.label);
        } else {
            stray.push(Witness::Arc(arc.clone()));
        }
    }
    let shared: Vec<Witness> = row_labels.intersection(&col_labels).map(|l| Witness::Label((*l).clone())).collect();
    report.push(Clause::new("labels-disjoint", "row arcs and column arcs share no label", shared));
    report.push(Clause::new("arcs-in-rows-or-cols", "every arc lies inside one row or one column", stray));
    report
}

/// Best-effort search for a Cartesian cover: split the labels into a row
/// class and a column class, take the weak components of each class as rows
/// and columns, and keep the first split that validates as a full rectangle
/// with at least two rows and two columns. Only the first 4096 splits are
/// tried.
pub fn infer_cartesian_cover(g: &Graph) -> Option<RowColumnCover> {
    let labels: Vec<Label> = g.labels().into_iter().collect();
    if labels.len() < 2 || g.vertex_count() < 4 {
        return None;
    }
    let rest = labels.len() - 1;
    let limit: u64 = if rest >= 12 { 1 << 12 } else { 1 << rest };
    for mask in 0..limit {
        // The smallest label always goes to rows; the full set is skipped.
        let in_rows = |k: usize| k == 0 || (mask >> (k - 1)) & 1 == 1;
        if (0..labels.len()).all(in_rows) {
            continue;
        }
        let row_labels: BTreeSet<&Label> = labels.iter().enumerate().filter(|(k, _)| in_rows(*k)).map(|(_, l)| l).collect();
        let rows = components_by(g, |l| row_labels.contains(l));
        let cols = components_by(g, |l| !row_labels.contains(l));
        if rows.len() < 2 || cols.len() < 2 {
            continue;
        }
        let Ok(cover) = RowColumnCover::new(rows, cols) else { continue };
        if cover.is_full_rectangle() && validate_cartesian_matrix_graph(g, &cover).holds() {
            return Some(cover);
        }
    }
    None
}

/// Weak components of the spanning subgraph on the arcs whose label passes.
fn components_by(g: &Graph, keep: impl Fn(&Label) -> bool) -> Vec<VertexSet> {
    let arcs: Vec<crate::graph::Arc> = g.arcs().iter().filter(|a| keep(&a.label)).cloned().collect();
    let spanning = Graph::assemble(g.vertices().to_vec(), arcs);
    spanning.components().iter().map(Graph::vertex_id_set).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{vertex_set, GraphBuilder};

    fn indexing(coords: &[(&str, usize, usize)]) -> MatrixIndexing {
        MatrixIndexing::new(coords.iter().map(|&(v, i, j)| (VertexId::from(v), (i, j)))).unwrap()
    }

    #[test]
    fn grids() {
        let ix = indexing(&[("a", 1, 1), ("b", 1, 2), ("c", 2, 1), ("d", 2, 2)]);
        let g = is_grid(&ix, &vertex_set(["a", "b", "c", "d"])).unwrap().unwrap();
        assert_eq!(g.row_ids.len(), 2);
        assert_eq!(g.cols[&1], vertex_set(["a", "c"]));
        assert!(is_grid(&ix, &vertex_set(["a"])).unwrap().is_some());
        assert!(is_grid(&ix, &vertex_set(["a", "b", "c"])).unwrap().is_none());
        assert!(matches!(is_grid(&ix, &vertex_set(["z"])), Err(MatrixError::UnindexedVertex(_))));
    }

    #[test]
    fn indexing_must_be_injective() {
        let dup = MatrixIndexing::new([(VertexId::from("a"), (1, 1)), (VertexId::from("b"), (1, 1))]);
        assert!(matches!(dup, Err(MatrixError::DuplicateCoordinate { .. })));
        assert!(MatrixIndexing::default().rows().is_empty());
    }

    #[test]
    fn cover_validation() {
        assert!(RowColumnCover::new(vec![vertex_set(["a", "b"])], vec![vertex_set(["a", "b"])]).is_err());
        assert!(RowColumnCover::new(vec![vertex_set(["a"])], vec![vertex_set(["b"])]).is_err());
        let c = RowColumnCover::new(vec![vertex_set(["a", "b"])], vec![vertex_set(["a"]), vertex_set(["b"])]).unwrap();
        assert!(c.is_full_rectangle());
    }

    #[test]
    fn single_vertex_is_cartesian() {
        let g = GraphBuilder::new().vertex("v").build().unwrap();
        let cover = RowColumnCover::new(vec![vertex_set(["v"])], vec![vertex_set(["v"])]).unwrap();
        assert!(validate_cartesian_matrix_graph(&g, &cover).holds());
    }

    #[test]
    fn disconnected_row_family_fails_requirement_four() {
        // Two disjoint blocks whose partite sets occupy row 2 without touching.
        let g = GraphBuilder::new()
            .vertices(["s", "t", "p", "q"])
            .unit_arc("s", "p", "a")
            .unit_arc("t", "q", "b")
            .build()
            .unwrap();
        let ix = indexing(&[("s", 1, 1), ("t", 1, 2), ("p", 2, 1), ("q", 2, 2)]);
        let report = validate_bipartite_matrix_graph(&g, &ix);
        assert!(report.clause("req-1").unwrap().holds);
        let req4 = report.clause("req-4").unwrap();
        assert!(!req4.holds);
        assert_eq!(req4.witnesses, vec![Witness::Row(1), Witness::Row(2)]);
    }
}
