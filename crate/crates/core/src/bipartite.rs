//! Label blocks: all arcs of a graph that carry one label, classified as
//! bipartite subgraphs between their tails and their heads.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Arc, Graph, VertexId, VertexSet};
use crate::label::Label;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelBlock {
    pub label: Label,
    pub arcs: Vec<Arc>,
    pub tails: VertexSet,
    pub heads: VertexSet,
}

impl LabelBlock {
    /// The arc-induced subgraph `G{arcs}`.
    pub fn subgraph(&self, g: &Graph) -> Graph {
        g.arc_induced_subgraph(&self.arcs).expect("block arcs belong to the graph")
    }
}

/// One block per distinct label, in label order.
pub fn label_blocks(g: &Graph) -> Vec<LabelBlock> {
    let mut blocks: BTreeMap<&Label, LabelBlock> = BTreeMap::new();
    for arc in g.arcs() {
        let block = blocks.entry(&arc.label).or_insert_with(|| LabelBlock {
            label: arc.label.clone(),
            arcs: Vec::new(),
            tails: VertexSet::new(),
            heads: VertexSet::new(),
        });
        block.arcs.push(arc.clone());
        block.tails.insert(arc.tail.clone());
        block.heads.insert(arc.head.clone());
    }
    blocks.into_values().collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BipartiteError {
    #[error("block {label} is not bipartite: {vertex} is both a tail and a head")]
    NotBipartite { label: Label, vertex: VertexId },
}

/// Classification of a block with partite sets `(tails, heads)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BlockClass {
    pub bipartite: bool,
    /// Every tail has an arc to every head.
    pub complete: bool,
    /// Either complete or without any arc between the partite sets.
    pub semicomplete: bool,
    /// Both partite sets are single vertices.
    pub trivial: bool,
    /// All arcs go from the first partite set to the second.
    pub all_forward: bool,
    /// All arcs go from the second partite set to the first.
    pub all_backward: bool,
}

pub fn classify_block(block: &LabelBlock) -> Result<BlockClass, BipartiteError> {
    if let Some(v) = block.tails.intersection(&block.heads).next() {
        return Err(BipartiteError::NotBipartite { label: block.label.clone(), vertex: v.clone() });
    }
    // Arcs of one block with equal ends are merged, so arcs are distinct pairs.
    let complete = block.arcs.len() == block.tails.len() * block.heads.len();
    Ok(BlockClass {
        bipartite: true,
        complete,
        semicomplete: complete || block.arcs.is_empty(),
        trivial: block.tails.len() == 1 && block.heads.len() == 1,
        all_forward: true,
        all_backward: block.arcs.is_empty(),
    })
}
