//! Vertex-set contraction.
//!
//! Contracting `X` replaces the vertices of `X` by one fresh vertex. Arcs
//! inside `X` disappear, arcs crossing into or out of `X` are re-ended at the
//! new vertex, and arcs that become identical merge.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::graph::{Arc, Graph, GraphError, Origin, Vertex, VertexId, VertexSet};

/// Ordered list of vertex sets, contracted left to right.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionSpec {
    pub sets: Vec<VertexSet>,
}

impl ContractionSpec {
    pub fn new(sets: Vec<VertexSet>) -> Self {
        ContractionSpec { sets }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

impl FromIterator<VertexSet> for ContractionSpec {
    fn from_iter<T: IntoIterator<Item = VertexSet>>(iter: T) -> Self {
        ContractionSpec { sets: iter.into_iter().collect() }
    }
}

/// `G/X`. `X` must be a nonempty proper subset of `V(G)`.
///
/// A singleton contracts to itself, so the graph is returned unchanged.
pub fn contract(g: &Graph, x: &VertexSet) -> Result<Graph, GraphError> {
    if x.len() == g.vertex_count() && x.iter().all(|v| g.contains(v.as_str())) {
        return Err(GraphError::NotProperSubset);
    }
    contract_once(g, x).map(|(graph, _)| graph)
}

/// `G/X₁/X₂/.../Xₙ`. A member of a later set that was absorbed by an earlier
/// contraction stands for the vertex that absorbed it.
pub fn contract_seq(g: &Graph, spec: &ContractionSpec) -> Result<Graph, GraphError> {
    contract_seq_traced(g, spec).map(|(graph, _)| graph)
}

/// Like [`contract_seq`], also returning the image of every vertex of `g`.
pub fn contract_seq_traced(
    g: &Graph,
    spec: &ContractionSpec,
) -> Result<(Graph, BTreeMap<VertexId, VertexId>), GraphError> {
    let mut image: BTreeMap<VertexId, VertexId> = g.vertex_ids().map(|v| (v.clone(), v.clone())).collect();
    let mut current = g.clone();
    for (index, set) in spec.sets.iter().enumerate() {
        let wrap = |source: GraphError| GraphError::ContractionFailed { index, source: Box::new(source) };
        let mut resolved = VertexSet::new();
        for v in set {
            if current.contains(v.as_str()) {
                resolved.insert(v.clone());
            } else if let Some(img) = image.get(v) {
                resolved.insert(img.clone());
            } else {
                return Err(wrap(GraphError::UnknownVertex(v.clone())));
            }
        }
        let (next, new_id) = contract_once(&current, &resolved).map_err(wrap)?;
        if let Some(new_id) = new_id {
            for img in image.values_mut() {
                if resolved.contains(img) {
                    *img = new_id.clone();
                }
            }
        }
        current = next;
    }
    Ok((current, image))
}

/// Contracts `x` (which may be all of `V(G)`), returning the new vertex id
/// unless `x` was a singleton.
fn contract_once(g: &Graph, x: &VertexSet) -> Result<(Graph, Option<VertexId>), GraphError> {
    if x.is_empty() {
        return Err(GraphError::EmptySet);
    }
    for v in x {
        if !g.contains(v.as_str()) {
            return Err(GraphError::UnknownVertex(v.clone()));
        }
    }
    if x.len() == 1 {
        return Ok((g.clone(), None));
    }

    let mut members: BTreeSet<VertexId> = BTreeSet::new();
    for v in x {
        members.extend(g.vertex(v.as_str()).map(Vertex::members).unwrap_or_default());
    }
    let members: Vec<VertexId> = members.into_iter().collect();
    let mut name = format!(
        "{{{}}}",
        members.iter().map(VertexId::as_str).collect::<Vec<_>>().join(",")
    );
    while g.contains(&name) && !x.contains(name.as_str()) {
        name.push('\'');
    }
    let new_id = VertexId::new(name);

    let mut vertices: Vec<Vertex> = g.vertices().iter().filter(|v| !x.contains(v.id())).cloned().collect();
    vertices.push(Vertex::with_origin(new_id.clone(), Origin::Contracted(members)));
    let re_end = |v: &VertexId| if x.contains(v) { new_id.clone() } else { v.clone() };
    let arcs: Vec<Arc> = g
        .arcs()
        .iter()
        .filter(|a| !(x.contains(&a.tail) && x.contains(&a.head)))
        .map(|a| Arc { tail: re_end(&a.tail), head: re_end(&a.head), label: a.label.clone() })
        .collect();
    let result = Graph::assemble(vertices, arcs);
    if let Some(cycle) = result.find_cycle() {
        return Err(GraphError::ContractionCreatesCycle { set: x.iter().cloned().collect(), cycle });
    }
    Ok((result, Some(new_id)))
}
