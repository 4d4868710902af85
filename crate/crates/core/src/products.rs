//! Cartesian product, intermediate product and the vertex-removing
//! synchronised product (VRSP).
//!
//! Product vertices are named `(left,right)` and remember both operand ids in
//! their [`Origin`].

use std::collections::{BTreeSet, HashMap, VecDeque};

use thiserror::Error;

use crate::graph::{Arc, Graph, Origin, Vertex, VertexId};
use crate::label::Label;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error("product of an empty list of graphs")]
    EmptyList,
}

/// Id of the product vertex `(v, w)`.
pub fn pair_id(v: &VertexId, w: &VertexId) -> VertexId {
    VertexId::new(format!("({v},{w})"))
}

fn pair_vertices(g: &Graph, h: &Graph) -> Vec<Vertex> {
    let mut out = Vec::with_capacity(g.vertex_count() * h.vertex_count());
    for v in g.vertex_ids() {
        for w in h.vertex_ids() {
            out.push(Vertex::with_origin(pair_id(v, w), Origin::Pair(v.clone(), w.clone())));
        }
    }
    out
}

fn left_copies<'a>(arc: &'a Arc, h: &'a Graph) -> impl Iterator<Item = Arc> + 'a {
    h.vertex_ids()
        .map(move |u| Arc { tail: pair_id(&arc.tail, u), head: pair_id(&arc.head, u), label: arc.label.clone() })
}

fn right_copies<'a>(arc: &'a Arc, g: &'a Graph) -> impl Iterator<Item = Arc> + 'a {
    g.vertex_ids()
        .map(move |u| Arc { tail: pair_id(u, &arc.tail), head: pair_id(u, &arc.head), label: arc.label.clone() })
}

/// `G □ H`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Graph {
    let mut arcs = Vec::with_capacity(g.arc_count() * h.vertex_count() + g.vertex_count() * h.arc_count());
    for a in g.arcs() {
        arcs.extend(left_copies(a, h));
    }
    for a in h.arcs() {
        arcs.extend(right_copies(a, g));
    }
    Graph::assemble(pair_vertices(g, h), arcs)
}

/// Which arcs of two operands synchronise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyncClassification {
    /// `L(G) ∩ L(H)`.
    pub sync_labels: BTreeSet<Label>,
    /// Arcs of `G` whose label does not occur in `H`.
    pub async_left: Vec<Arc>,
    /// Arcs of `H` whose label does not occur in `G`.
    pub async_right: Vec<Arc>,
    /// Every `(arc of G, arc of H)` pair with equal labels.
    pub sync_pairs: Vec<(Arc, Arc)>,
}

pub fn classify_sync(g: &Graph, h: &Graph) -> SyncClassification {
    let lg = g.labels();
    let lh = h.labels();
    let sync_labels: BTreeSet<Label> = lg.intersection(&lh).cloned().collect();
    let async_left = g.arcs().iter().filter(|a| !lh.contains(&a.label)).cloned().collect();
    let async_right = h.arcs().iter().filter(|a| !lg.contains(&a.label)).cloned().collect();
    let mut by_label: HashMap<&Label, Vec<&Arc>> = HashMap::new();
    for a in h.arcs().iter().filter(|a| sync_labels.contains(&a.label)) {
        by_label.entry(&a.label).or_default().push(a);
    }
    let mut sync_pairs = Vec::new();
    for a in g.arcs() {
        if let Some(partners) = by_label.get(&a.label) {
            sync_pairs.extend(partners.iter().map(|b| (a.clone(), (*b).clone())));
        }
    }
    SyncClassification { sync_labels, async_left, async_right, sync_pairs }
}

/// `G ⊠ H`: asynchronous arcs copied as in `□`, synchronising pairs merged
/// into one arc each.
pub fn intermediate_product(g: &Graph, h: &Graph) -> Graph {
    let sync = classify_sync(g, h);
    let mut arcs = Vec::new();
    for a in &sync.async_left {
        arcs.extend(left_copies(a, h));
    }
    for a in &sync.async_right {
        arcs.extend(right_copies(a, g));
    }
    for (a, b) in &sync.sync_pairs {
        arcs.push(Arc { tail: pair_id(&a.tail, &b.tail), head: pair_id(&a.head, &b.head), label: a.label.clone() });
    }
    Graph::assemble(pair_vertices(g, h), arcs)
}

/// Worklist discipline for VRSP pruning. The fixpoint does not depend on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PruneOrder {
    #[default]
    Queue,
    Stack,
}

/// `G ⧹ H` with the default pruning order.
pub fn vrsp(g: &Graph, h: &Graph) -> Graph {
    vrsp_with(g, h, PruneOrder::Queue)
}

/// `G ⧹ H`: starting from `G ⊠ H`, delete every vertex whose current
/// in-degree is 0 while its in-degree in `G □ H` is positive, and likewise for
/// out-degrees, until no such vertex is left.
pub fn vrsp_with(g: &Graph, h: &Graph, order: PruneOrder) -> Graph {
    let inter = intermediate_product(g, h);
    let n = inter.vertex_count();
    // Degrees in G □ H are sums of the operand degrees.
    let mut box_in = vec![0usize; n];
    let mut box_out = vec![0usize; n];
    for (i, v) in inter.vertices().iter().enumerate() {
        if let Some(Origin::Pair(a, b)) = v.origin() {
            let (ai, ao) = g.degrees(a.as_str()).unwrap_or((0, 0));
            let (bi, bo) = h.degrees(b.as_str()).unwrap_or((0, 0));
            box_in[i] = ai + bi;
            box_out[i] = ao + bo;
        }
    }
    let mut indeg: Vec<usize> = (0..n).map(|i| inter.in_arc_indices(i).len()).collect();
    let mut outdeg: Vec<usize> = (0..n).map(|i| inter.out_arc_indices(i).len()).collect();
    let mut removed = vec![false; n];
    let doomed = |i: usize, indeg: &[usize], outdeg: &[usize]| {
        (indeg[i] == 0 && box_in[i] > 0) || (outdeg[i] == 0 && box_out[i] > 0)
    };
    let mut work: VecDeque<usize> = (0..n).filter(|&i| doomed(i, &indeg, &outdeg)).collect();
    let arcs = inter.arcs();
    loop {
        let next = match order {
            PruneOrder::Queue => work.pop_front(),
            PruneOrder::Stack => work.pop_back(),
        };
        let Some(v) = next else { break };
        if removed[v] {
            continue;
        }
        removed[v] = true;
        for &k in inter.out_arc_indices(v) {
            let w = inter.position(arcs[k].head.as_str()).unwrap();
            if !removed[w] {
                indeg[w] -= 1;
                if doomed(w, &indeg, &outdeg) {
                    work.push_back(w);
                }
            }
        }
        for &k in inter.in_arc_indices(v) {
            let w = inter.position(arcs[k].tail.as_str()).unwrap();
            if !removed[w] {
                outdeg[w] -= 1;
                if doomed(w, &indeg, &outdeg) {
                    work.push_back(w);
                }
            }
        }
    }
    let keep: Vec<Vertex> =
        inter.vertices().iter().enumerate().filter(|(i, _)| !removed[*i]).map(|(_, v)| v.clone()).collect();
    let kept_arcs = arcs
        .iter()
        .filter(|a| {
            !removed[inter.position(a.tail.as_str()).unwrap()] && !removed[inter.position(a.head.as_str()).unwrap()]
        })
        .cloned()
        .collect();
    Graph::assemble(keep, kept_arcs)
}

/// `((G₁ ⧹ G₂) ⧹ ...) ⧹ Gₖ`.
pub fn vrsp_fold<'a>(graphs: impl IntoIterator<Item = &'a Graph>) -> Result<Graph, ProductError> {
    fold(graphs, vrsp)
}

/// `((G₁ □ G₂) □ ...) □ Gₖ`.
pub fn cartesian_fold<'a>(graphs: impl IntoIterator<Item = &'a Graph>) -> Result<Graph, ProductError> {
    fold(graphs, cartesian_product)
}

fn fold<'a>(graphs: impl IntoIterator<Item = &'a Graph>, op: fn(&Graph, &Graph) -> Graph) -> Result<Graph, ProductError> {
    let mut it = graphs.into_iter();
    let first = it.next().ok_or(ProductError::EmptyList)?.clone();
    Ok(it.fold(first, |acc, g| op(&acc, g)))
}
