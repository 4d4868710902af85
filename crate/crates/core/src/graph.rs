//! Labelled acyclic directed multigraphs.
//!
//! A [`Graph`] is immutable once built. Vertices and arcs are kept sorted by
//! id so that every derived output (documents, DOT, reports) is ordered
//! deterministically. Two arcs with the same tail, head and label are the
//! same action at the same stage of a process, so they are merged into one.

use std::borrow::Borrow;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::label::{Label, LabelError, Weight};

/// Opaque vertex identifier, unique within a graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(id: impl Into<String>) -> Self {
        VertexId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Borrow<str> for VertexId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_string())
    }
}

impl From<String> for VertexId {
    fn from(s: String) -> Self {
        VertexId(s)
    }
}

pub type VertexSet = BTreeSet<VertexId>;

/// Collects string-like ids into a [`VertexSet`].
pub fn vertex_set<I, S>(ids: I) -> VertexSet
where
    I: IntoIterator<Item = S>,
    S: Into<VertexId>,
{
    ids.into_iter().map(Into::into).collect()
}

/// Where a derived vertex came from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Origin {
    /// Replaces a contracted set; holds the sorted ids of the original
    /// vertices it absorbed (transitively through earlier contractions).
    Contracted(Vec<VertexId>),
    /// A cell `(left, right)` of a product vertex set.
    Pair(VertexId, VertexId),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vertex {
    id: VertexId,
    origin: Option<Origin>,
}

impl Vertex {
    pub fn new(id: impl Into<VertexId>) -> Self {
        Vertex { id: id.into(), origin: None }
    }

    pub fn with_origin(id: impl Into<VertexId>, origin: Origin) -> Self {
        Vertex { id: id.into(), origin: Some(origin) }
    }

    pub fn id(&self) -> &VertexId {
        &self.id
    }

    pub fn origin(&self) -> Option<&Origin> {
        self.origin.as_ref()
    }

    /// Original vertices this vertex stands for: the absorbed set of a
    /// contraction vertex, otherwise the vertex itself.
    pub fn members(&self) -> Vec<VertexId> {
        match &self.origin {
            Some(Origin::Contracted(members)) => members.clone(),
            _ => vec![self.id.clone()],
        }
    }
}

/// A labelled arc. Within a graph an arc is identified by its
/// `(tail, head, label)` triple.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Arc {
    pub tail: VertexId,
    pub head: VertexId,
    pub label: Label,
}

impl Arc {
    pub fn new(tail: impl Into<VertexId>, head: impl Into<VertexId>, label: Label) -> Self {
        Arc { tail: tail.into(), head: head.into(), label }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -[{}]-> {}", self.tail, self.label, self.head)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("directed cycle through {}", join_ids(.cycle))]
    CycleDetected { cycle: Vec<VertexId> },
    #[error("arc {arc} has endpoint {vertex} which is not a declared vertex")]
    DanglingEndpoint { arc: String, vertex: VertexId },
    #[error("vertex {0} declared twice")]
    DuplicateVertex(VertexId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown arc {0}")]
    UnknownArc(String),
    #[error(transparent)]
    Label(#[from] LabelError),
    #[error("vertex sets overlap in {0}")]
    OverlappingSets(VertexId),
    #[error("vertex set must not be empty")]
    EmptySet,
    #[error("contracted set must be a proper subset of the vertex set")]
    NotProperSubset,
    #[error("contracting {} would create the cycle {}", join_ids(.set), join_ids(.cycle))]
    ContractionCreatesCycle { set: Vec<VertexId>, cycle: Vec<VertexId> },
    #[error("contraction {index} failed: {source}")]
    ContractionFailed {
        index: usize,
        #[source]
        source: Box<GraphError>,
    },
}

fn join_ids(ids: &[VertexId]) -> String {
    ids.iter().map(VertexId::as_str).collect::<Vec<_>>().join(" -> ")
}

/// Labelled acyclic directed multigraph.
#[derive(Debug, Clone)]
pub struct Graph {
    vertices: Vec<Vertex>,
    index: HashMap<VertexId, usize>,
    arcs: Vec<Arc>,
    out_arcs: Vec<Vec<usize>>,
    in_arcs: Vec<Vec<usize>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arcs == other.arcs
    }
}

impl Eq for Graph {}

impl Default for Graph {
    fn default() -> Self {
        Graph::assemble(Vec::new(), Vec::new())
    }
}

impl Graph {
    /// Validates and builds a graph. Identical `(tail, head, label)` triples
    /// are merged.
    pub fn new(
        vertices: impl IntoIterator<Item = Vertex>,
        arcs: impl IntoIterator<Item = Arc>,
    ) -> Result<Self, GraphError> {
        let mut seen = BTreeSet::new();
        let mut vs = Vec::new();
        for v in vertices {
            if !seen.insert(v.id.clone()) {
                return Err(GraphError::DuplicateVertex(v.id));
            }
            vs.push(v);
        }
        let arcs: Vec<Arc> = arcs.into_iter().collect();
        for arc in &arcs {
            for end in [&arc.tail, &arc.head] {
                if !seen.contains(end) {
                    return Err(GraphError::DanglingEndpoint { arc: arc.to_string(), vertex: end.clone() });
                }
            }
            if arc.tail == arc.head {
                return Err(GraphError::CycleDetected { cycle: vec![arc.tail.clone(), arc.head.clone()] });
            }
        }
        let graph = Graph::assemble(vs, arcs);
        if let Some(cycle) = graph.find_cycle() {
            return Err(GraphError::CycleDetected { cycle });
        }
        Ok(graph)
    }

    /// Sorts, merges duplicate arcs and builds adjacency. Callers guarantee
    /// unique vertex ids, declared endpoints and acyclicity.
    pub(crate) fn assemble(mut vertices: Vec<Vertex>, mut arcs: Vec<Arc>) -> Self {
        vertices.sort_by(|a, b| a.id.cmp(&b.id));
        arcs.sort();
        arcs.dedup();
        let index: HashMap<VertexId, usize> =
            vertices.iter().enumerate().map(|(i, v)| (v.id.clone(), i)).collect();
        let mut out_arcs = vec![Vec::new(); vertices.len()];
        let mut in_arcs = vec![Vec::new(); vertices.len()];
        for (k, arc) in arcs.iter().enumerate() {
            out_arcs[index[&arc.tail]].push(k);
            in_arcs[index[&arc.head]].push(k);
        }
        Graph { vertices, index, arcs, out_arcs, in_arcs }
    }

    /// Returns a directed cycle if one exists.
    pub(crate) fn find_cycle(&self) -> Option<Vec<VertexId>> {
        // 0 = unvisited, 1 = on stack, 2 = done
        let n = self.vertices.len();
        let mut state = vec![0u8; n];
        let mut parent = vec![usize::MAX; n];
        for start in 0..n {
            if state[start] != 0 {
                continue;
            }
            let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
            state[start] = 1;
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                if let Some(&k) = self.out_arcs[v].get(*next) {
                    *next += 1;
                    let w = self.index[&self.arcs[k].head];
                    match state[w] {
                        0 => {
                            state[w] = 1;
                            parent[w] = v;
                            stack.push((w, 0));
                        }
                        1 => {
                            let mut cycle = vec![self.vertices[w].id.clone()];
                            let mut cur = v;
                            let mut back = vec![];
                            while cur != w {
                                back.push(self.vertices[cur].id.clone());
                                cur = parent[cur];
                            }
                            back.reverse();
                            cycle.extend(back);
                            cycle.push(self.vertices[w].id.clone());
                            return Some(cycle);
                        }
                        _ => {}
                    }
                } else {
                    state[v] = 2;
                    stack.pop();
                }
            }
        }
        None
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertices sorted by id.
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = &VertexId> {
        self.vertices.iter().map(|v| &v.id)
    }

    pub fn vertex_id_set(&self) -> VertexSet {
        self.vertex_ids().cloned().collect()
    }

    /// Arcs sorted by `(tail, head, label)`.
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn vertex(&self, id: &str) -> Option<&Vertex> {
        self.index.get(id).map(|&i| &self.vertices[i])
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    pub fn contains_arc(&self, arc: &Arc) -> bool {
        self.arcs.binary_search(arc).is_ok()
    }

    pub(crate) fn position(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub(crate) fn out_arc_indices(&self, pos: usize) -> &[usize] {
        &self.out_arcs[pos]
    }

    pub(crate) fn in_arc_indices(&self, pos: usize) -> &[usize] {
        &self.in_arcs[pos]
    }

    pub fn out_arcs(&self, id: &str) -> impl Iterator<Item = &Arc> {
        let list: &[usize] = match self.index.get(id) {
            Some(&i) => &self.out_arcs[i],
            None => &[],
        };
        list.iter().map(move |&k| &self.arcs[k])
    }

    pub fn in_arcs(&self, id: &str) -> impl Iterator<Item = &Arc> {
        let list: &[usize] = match self.index.get(id) {
            Some(&i) => &self.in_arcs[i],
            None => &[],
        };
        list.iter().map(move |&k| &self.arcs[k])
    }

    /// The label set `L`, derived from the arcs.
    pub fn labels(&self) -> BTreeSet<Label> {
        self.arcs.iter().map(|a| a.label.clone()).collect()
    }

    /// `(in-degree, out-degree)` of `v`.
    pub fn degrees(&self, v: &str) -> Result<(usize, usize), GraphError> {
        let i = self.position(v).ok_or_else(|| GraphError::UnknownVertex(v.into()))?;
        Ok((self.in_arcs[i].len(), self.out_arcs[i].len()))
    }

    /// Vertices with in-degree 0.
    pub fn source_set(&self) -> VertexSet {
        (0..self.vertices.len())
            .filter(|&i| self.in_arcs[i].is_empty())
            .map(|i| self.vertices[i].id.clone())
            .collect()
    }

    /// Vertices with out-degree 0.
    pub fn sink_set(&self) -> VertexSet {
        (0..self.vertices.len())
            .filter(|&i| self.out_arcs[i].is_empty())
            .map(|i| self.vertices[i].id.clone())
            .collect()
    }

    /// Levels from repeatedly peeling off the in-degree-0 vertices.
    pub fn level_assignment(&self) -> LevelAssignment {
        let n = self.vertices.len();
        let mut indeg: Vec<usize> = self.in_arcs.iter().map(Vec::len).collect();
        let mut level = vec![0usize; n];
        let mut frontier: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut depth = 0;
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &v in &frontier {
                level[v] = depth;
                for &k in &self.out_arcs[v] {
                    let w = self.index[&self.arcs[k].head];
                    indeg[w] -= 1;
                    if indeg[w] == 0 {
                        next.push(w);
                    }
                }
            }
            frontier = next;
            depth += 1;
        }
        LevelAssignment {
            levels: self.vertices.iter().zip(level).map(|(v, l)| (v.id.clone(), l)).collect(),
        }
    }

    /// Maximal weakly connected subgraphs, ordered by their smallest vertex id.
    pub fn components(&self) -> Vec<Graph> {
        let n = self.vertices.len();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut queue = VecDeque::from([start]);
            comp[start] = count;
            while let Some(v) = queue.pop_front() {
                let neighbours = self.out_arcs[v]
                    .iter()
                    .map(|&k| &self.arcs[k].head)
                    .chain(self.in_arcs[v].iter().map(|&k| &self.arcs[k].tail));
                for id in neighbours {
                    let w = self.index[id];
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        // Vertices are sorted, so component numbering already follows the
        // smallest member id.
        let mut vertex_groups: Vec<Vec<Vertex>> = vec![Vec::new(); count];
        let mut arc_groups: Vec<Vec<Arc>> = vec![Vec::new(); count];
        for (i, v) in self.vertices.iter().enumerate() {
            vertex_groups[comp[i]].push(v.clone());
        }
        for arc in &self.arcs {
            arc_groups[comp[self.index[&arc.tail]]].push(arc.clone());
        }
        vertex_groups
            .into_iter()
            .zip(arc_groups)
            .map(|(vs, arcs)| Graph::assemble(vs, arcs))
            .collect()
    }

    /// `G[X]`: the vertices of `X` and every arc with both ends in `X`.
    pub fn induced_subgraph(&self, x: &VertexSet) -> Result<Graph, GraphError> {
        for id in x {
            if !self.contains(id.as_str()) {
                return Err(GraphError::UnknownVertex(id.clone()));
            }
        }
        let vertices = self.vertices.iter().filter(|v| x.contains(&v.id)).cloned().collect();
        let arcs = self
            .arcs
            .iter()
            .filter(|a| x.contains(&a.tail) && x.contains(&a.head))
            .cloned()
            .collect();
        Ok(Graph::assemble(vertices, arcs))
    }

    /// `G{S}`: the arcs of `S` and every vertex that is an end of one of them.
    pub fn arc_induced_subgraph<'a>(&self, arcs: impl IntoIterator<Item = &'a Arc>) -> Result<Graph, GraphError> {
        let mut chosen = Vec::new();
        let mut ends = VertexSet::new();
        for arc in arcs {
            if !self.contains_arc(arc) {
                return Err(GraphError::UnknownArc(arc.to_string()));
            }
            ends.insert(arc.tail.clone());
            ends.insert(arc.head.clone());
            chosen.push(arc.clone());
        }
        let vertices = self.vertices.iter().filter(|v| ends.contains(&v.id)).cloned().collect();
        Ok(Graph::assemble(vertices, chosen))
    }

    /// Arcs with one end in `x` and one in `y`, split by direction.
    pub fn cut(&self, x: &VertexSet, y: &VertexSet) -> Result<CutSet, GraphError> {
        if x.is_empty() || y.is_empty() {
            return Err(GraphError::EmptySet);
        }
        if let Some(shared) = x.intersection(y).next() {
            return Err(GraphError::OverlappingSets(shared.clone()));
        }
        for id in x.iter().chain(y) {
            if !self.contains(id.as_str()) {
                return Err(GraphError::UnknownVertex(id.clone()));
            }
        }
        let mut forward = Vec::new();
        let mut backward = Vec::new();
        for arc in &self.arcs {
            if x.contains(&arc.tail) && y.contains(&arc.head) {
                forward.push(arc.clone());
            } else if y.contains(&arc.tail) && x.contains(&arc.head) {
                backward.push(arc.clone());
            }
        }
        Ok(CutSet { x: x.clone(), y: y.clone(), forward, backward })
    }

    /// Renames vertices through `f`; the caller guarantees `f` is injective.
    pub(crate) fn rename(&self, mut f: impl FnMut(&Vertex) -> Vertex) -> Graph {
        let mut map = HashMap::new();
        let vertices: Vec<Vertex> = self
            .vertices
            .iter()
            .map(|v| {
                let nv = f(v);
                map.insert(v.id.clone(), nv.id.clone());
                nv
            })
            .collect();
        let arcs = self
            .arcs
            .iter()
            .map(|a| Arc { tail: map[&a.tail].clone(), head: map[&a.head].clone(), label: a.label.clone() })
            .collect();
        Graph::assemble(vertices, arcs)
    }
}

/// Disjoint union; the vertices of operand `k` are renamed `k:id`.
pub fn disjoint_union<'a>(graphs: impl IntoIterator<Item = &'a Graph>) -> Graph {
    let mut vertices = Vec::new();
    let mut arcs = Vec::new();
    for (k, g) in graphs.into_iter().enumerate() {
        let renamed = g.rename(|v| Vertex {
            id: VertexId(format!("{k}:{}", v.id)),
            origin: v.origin.clone(),
        });
        vertices.extend(renamed.vertices);
        arcs.extend(renamed.arcs);
    }
    Graph::assemble(vertices, arcs)
}

/// Level of every vertex; every arc strictly increases the level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelAssignment {
    levels: BTreeMap<VertexId, usize>,
}

impl LevelAssignment {
    pub fn level(&self, v: &str) -> Option<usize> {
        self.levels.get(v).copied()
    }

    pub fn levels(&self) -> &BTreeMap<VertexId, usize> {
        &self.levels
    }

    /// `S^0, S^1, ...`: the vertices of each level.
    pub fn layers(&self) -> Vec<VertexSet> {
        let mut layers: Vec<VertexSet> = Vec::new();
        for (v, &l) in &self.levels {
            if layers.len() <= l {
                layers.resize_with(l + 1, VertexSet::new);
            }
            layers[l].insert(v.clone());
        }
        layers
    }
}

/// `[X, Y]` split into forward arcs (head in `Y`) and backward arcs (head in `X`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutSet {
    pub x: VertexSet,
    pub y: VertexSet,
    pub forward: Vec<Arc>,
    pub backward: Vec<Arc>,
}

impl CutSet {
    pub fn len(&self) -> usize {
        self.forward.len() + self.backward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn arcs(&self) -> impl Iterator<Item = &Arc> {
        self.forward.iter().chain(&self.backward)
    }
}

/// Builds a graph from raw ids and `(tail, head, action, weight)` strings,
/// reporting the first invalid input on [`GraphBuilder::build`].
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    vertices: Vec<Vertex>,
    arcs: Vec<Result<Arc, LabelError>>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, id: impl Into<VertexId>) -> Self {
        self.vertices.push(Vertex::new(id));
        self
    }

    pub fn vertices<I, S>(mut self, ids: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<VertexId>,
    {
        self.vertices.extend(ids.into_iter().map(Vertex::new));
        self
    }

    pub fn arc(mut self, tail: impl Into<VertexId>, head: impl Into<VertexId>, action: &str, weight: &str) -> Self {
        let tail = tail.into();
        let head = head.into();
        let label = weight.parse::<Weight>().and_then(|w| Label::new(action, w));
        self.arcs.push(label.map(|label| Arc { tail, head, label }));
        self
    }

    /// Unit-weight arc.
    pub fn unit_arc(self, tail: impl Into<VertexId>, head: impl Into<VertexId>, action: &str) -> Self {
        self.arc(tail, head, action, "1")
    }

    pub fn build(self) -> Result<Graph, GraphError> {
        let arcs = self.arcs.into_iter().collect::<Result<Vec<_>, _>>()?;
        Graph::new(self.vertices, arcs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        GraphBuilder::new().vertices(["u", "v", "w"]).unit_arc("u", "v", "a").unit_arc("v", "w", "b").build().unwrap()
    }

    #[test]
    fn minimal_graph_and_merge() {
        let g = GraphBuilder::new().vertices(["u", "v"]).unit_arc("u", "v", "a").build().unwrap();
        assert_eq!((g.vertex_count(), g.arc_count()), (2, 1));
        let merged = GraphBuilder::new()
            .vertices(["u", "v"])
            .unit_arc("u", "v", "a")
            .unit_arc("u", "v", "a")
            .build()
            .unwrap();
        assert_eq!(merged.arc_count(), 1);
        let parallel = GraphBuilder::new()
            .vertices(["u", "v"])
            .unit_arc("u", "v", "a")
            .arc("u", "v", "a", "2")
            .build()
            .unwrap();
        assert_eq!(parallel.arc_count(), 2);
    }

    #[test]
    fn construction_errors() {
        let cyc = GraphBuilder::new().vertices(["u", "v"]).unit_arc("u", "v", "a").unit_arc("v", "u", "b").build();
        match cyc {
            Err(GraphError::CycleDetected { cycle }) => {
                assert_eq!(cycle.first(), cycle.last());
                assert_eq!(cycle.len(), 3);
            }
            other => panic!("expected cycle, got {other:?}"),
        }
        let loop_arc = GraphBuilder::new().vertex("u").unit_arc("u", "u", "a").build();
        assert!(matches!(loop_arc, Err(GraphError::CycleDetected { .. })));
        let dangling = GraphBuilder::new().vertex("u").unit_arc("u", "z", "a").build();
        assert!(matches!(dangling, Err(GraphError::DanglingEndpoint { .. })));
        let empty_action = GraphBuilder::new().vertices(["u", "v"]).unit_arc("u", "v", "").build();
        assert_eq!(empty_action, Err(GraphError::Label(LabelError::EmptyAction)));
        let zero = GraphBuilder::new().vertices(["u", "v"]).arc("u", "v", "a", "0").build();
        assert!(matches!(zero, Err(GraphError::Label(LabelError::NonPositiveWeight(_)))));
        let dup = GraphBuilder::new().vertices(["u", "u"]).build();
        assert!(matches!(dup, Err(GraphError::DuplicateVertex(_))));
    }

    #[test]
    fn longer_cycle_is_reported_in_order() {
        let g = GraphBuilder::new()
            .vertices(["a", "b", "c", "d"])
            .unit_arc("a", "b", "x")
            .unit_arc("b", "c", "x")
            .unit_arc("c", "d", "x")
            .unit_arc("d", "b", "x")
            .build();
        let Err(GraphError::CycleDetected { cycle }) = g else { panic!("expected a cycle") };
        assert_eq!(cycle, vec![VertexId::from("b"), "c".into(), "d".into(), "b".into()]);
    }

    #[test]
    fn degrees_sources_sinks() {
        let g = path3();
        assert_eq!(g.degrees("u").unwrap(), (0, 1));
        assert_eq!(g.degrees("v").unwrap(), (1, 1));
        assert!(matches!(g.degrees("q"), Err(GraphError::UnknownVertex(_))));
        assert_eq!(g.source_set(), vertex_set(["u"]));
        assert_eq!(g.sink_set(), vertex_set(["w"]));
        let single = GraphBuilder::new().vertex("s").build().unwrap();
        assert_eq!(single.degrees("s").unwrap(), (0, 0));
        assert_eq!(single.source_set(), single.sink_set());
    }

    #[test]
    fn levels() {
        let g = path3();
        let levels = g.level_assignment();
        assert_eq!([levels.level("u"), levels.level("v"), levels.level("w")], [Some(0), Some(1), Some(2)]);
        let antichain = GraphBuilder::new().vertices(["a", "b", "c"]).build().unwrap();
        assert_eq!(antichain.level_assignment().layers(), vec![vertex_set(["a", "b", "c"])]);
    }

    #[test]
    fn components_and_union() {
        let g = path3();
        assert_eq!(g.components().len(), 1);
        assert_eq!(Graph::default().components().len(), 0);
        let iso = GraphBuilder::new().vertex("z").build().unwrap();
        let both = disjoint_union([&g, &iso]);
        assert_eq!(both.components().len(), 2);
        let e1 = GraphBuilder::new().vertices(["a", "b"]).unit_arc("a", "b", "x").build().unwrap();
        let two = disjoint_union([&e1, &e1]);
        assert_eq!((two.vertex_count(), two.arc_count(), two.components().len()), (4, 2, 2));
    }

    #[test]
    fn subgraphs_and_cut() {
        let g = path3();
        let sub = g.induced_subgraph(&vertex_set(["u", "v"])).unwrap();
        assert_eq!((sub.vertex_count(), sub.arc_count()), (2, 1));
        assert!(g.induced_subgraph(&VertexSet::new()).unwrap().is_empty());
        assert!(matches!(g.induced_subgraph(&vertex_set(["q"])), Err(GraphError::UnknownVertex(_))));
        let b_arcs: Vec<&Arc> = g.arcs().iter().filter(|a| a.label.action() == "b").collect();
        let ai = g.arc_induced_subgraph(b_arcs).unwrap();
        assert_eq!(ai.vertex_id_set(), vertex_set(["v", "w"]));

        let cut = g.cut(&vertex_set(["u", "w"]), &vertex_set(["v"])).unwrap();
        assert_eq!((cut.forward.len(), cut.backward.len()), (1, 1));
        assert!(matches!(g.cut(&vertex_set(["u"]), &vertex_set(["u"])), Err(GraphError::OverlappingSets(_))));
        assert!(matches!(g.cut(&VertexSet::new(), &vertex_set(["u"])), Err(GraphError::EmptySet)));
        let none = GraphBuilder::new().vertices(["a", "b"]).build().unwrap();
        assert!(none.cut(&vertex_set(["a"]), &vertex_set(["b"])).unwrap().is_empty());
    }
}
