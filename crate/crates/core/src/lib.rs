//! Labelled acyclic directed multigraphs, their synchronised products, and
//! contraction-based decompositions certified by isomorphism.
//!
//! ```
//! use vrsp::graph::GraphBuilder;
//! use vrsp::products::vrsp;
//! use vrsp::iso::is_isomorphic;
//!
//! let b = GraphBuilder::new().vertices(["u", "v"]).unit_arc("u", "v", "a").build().unwrap();
//! assert!(is_isomorphic(&vrsp(&b, &b), &b).is_some());
//! ```

pub mod bipartite;
pub mod contract;
pub mod decompose;
pub mod fixtures;
pub mod generate;
pub mod graph;
pub mod io;
pub mod iso;
pub mod label;
pub mod matrix;
pub mod products;
pub mod report;

pub use contract::{contract, contract_seq, ContractionSpec};
pub use graph::{Arc, Graph, GraphBuilder, GraphError, Vertex, VertexId, VertexSet};
pub use iso::{is_isomorphic, IsoWitness};
pub use label::{Label, LabelError, Weight};
pub use products::{cartesian_product, classify_sync, intermediate_product, vrsp};
