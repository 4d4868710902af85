//! JSON graph documents, DOT export and atomic file output.
//!
//! A document holds a graph, optional `[row, col]` coordinates, named vertex
//! sets and named families (ordered lists of set names). The emitter writes a
//! canonical layout: one vertex or arc per line, vertices sorted by id, arcs
//! by `(tail, head, action, weight)`, so that `emit(parse(emit(g)))` is
//! byte-identical to `emit(g)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Arc, Graph, GraphError, Vertex, VertexId, VertexSet};
use crate::label::{Label, Weight};
use crate::matrix::MatrixIndexing;

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{field}: {message}")]
    Validation { field: String, message: String },
}

fn invalid(field: impl Into<String>, message: impl ToString) -> DocumentError {
    DocumentError::Validation { field: field.into(), message: message.to_string() }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    format_version: String,
    #[serde(default)]
    meta: BTreeMap<String, String>,
    vertices: Vec<RawVertex>,
    arcs: Vec<RawArc>,
    #[serde(default)]
    sets: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    families: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawVertex {
    id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coord: Option<[usize; 2]>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawArc {
    tail: String,
    head: String,
    action: String,
    weight: String,
}

/// A parsed or to-be-emitted graph document.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GraphDocument {
    pub graph: Graph,
    pub indexing: Option<MatrixIndexing>,
    pub sets: BTreeMap<String, VertexSet>,
    pub families: BTreeMap<String, Vec<String>>,
    pub meta: BTreeMap<String, String>,
}

impl GraphDocument {
    pub fn from_graph(graph: Graph) -> Self {
        GraphDocument { graph, ..Default::default() }
    }

    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let raw: RawDocument = serde_json::from_str(text).map_err(|e| match e.classify() {
            serde_json::error::Category::Data => {
                invalid(format!("line {}, column {}", e.line(), e.column()), e)
            }
            _ => DocumentError::Syntax { line: e.line(), column: e.column(), message: e.to_string() },
        })?;
        if raw.format_version != FORMAT_VERSION {
            return Err(invalid("format_version", format!("unsupported version {:?}", raw.format_version)));
        }

        let mut ids = BTreeSet::new();
        let mut vertices = Vec::new();
        let mut coords = Vec::new();
        for (k, v) in raw.vertices.iter().enumerate() {
            if v.id.is_empty() {
                return Err(invalid(format!("vertices[{k}].id"), "empty vertex id"));
            }
            if !ids.insert(v.id.as_str()) {
                return Err(invalid(format!("vertices[{k}].id"), format!("duplicate vertex {}", v.id)));
            }
            vertices.push(Vertex::new(v.id.as_str()));
            if let Some([i, j]) = v.coord {
                coords.push((k, VertexId::from(v.id.as_str()), (i, j)));
            }
        }
        let indexing = if coords.is_empty() {
            None
        } else {
            let mut ix = Vec::new();
            for (k, id, c) in coords {
                if c.0 == 0 || c.1 == 0 {
                    return Err(invalid(format!("vertices[{k}].coord"), "coordinates are 1-based"));
                }
                ix.push((id, c));
            }
            Some(MatrixIndexing::new(ix).map_err(|e| invalid("vertices", e))?)
        };

        let mut arcs = Vec::new();
        for (k, a) in raw.arcs.iter().enumerate() {
            let weight: Weight = a.weight.parse().map_err(|e| invalid(format!("arcs[{k}].weight"), e))?;
            let label = Label::new(a.action.as_str(), weight).map_err(|e| invalid(format!("arcs[{k}].action"), e))?;
            for (end, field) in [(&a.tail, "tail"), (&a.head, "head")] {
                if !ids.contains(end.as_str()) {
                    return Err(invalid(format!("arcs[{k}].{field}"), format!("unknown vertex {end}")));
                }
            }
            arcs.push(Arc::new(a.tail.as_str(), a.head.as_str(), label));
        }
        let graph = Graph::new(vertices, arcs).map_err(|e| invalid("arcs", e))?;

        let mut sets = BTreeMap::new();
        for (name, members) in raw.sets {
            let mut set = VertexSet::new();
            for (k, v) in members.iter().enumerate() {
                if !graph.contains(v) {
                    return Err(invalid(format!("sets.{name}[{k}]"), format!("unknown vertex {v}")));
                }
                set.insert(VertexId::from(v.as_str()));
            }
            sets.insert(name, set);
        }
        for (name, members) in &raw.families {
            if sets.contains_key(name) {
                return Err(invalid(format!("families.{name}"), "name already used by a set"));
            }
            for (k, s) in members.iter().enumerate() {
                if !sets.contains_key(s) {
                    return Err(invalid(format!("families.{name}[{k}]"), format!("unknown set {s}")));
                }
            }
        }
        Ok(GraphDocument { graph, indexing, sets, families: raw.families, meta: raw.meta })
    }

    /// Canonical JSON text, ending in a newline.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n");
        let _ = writeln!(out, "  \"format_version\": {},", json(&FORMAT_VERSION));
        if !self.meta.is_empty() {
            out.push_str("  \"meta\": {\n");
            let entries: Vec<String> =
                self.meta.iter().map(|(k, v)| format!("    {}: {}", json(k), json(v))).collect();
            out.push_str(&entries.join(",\n"));
            out.push_str("\n  },\n");
        }
        let vertices: Vec<String> = self
            .graph
            .vertices()
            .iter()
            .map(|v| {
                let coord = self.indexing.as_ref().and_then(|ix| ix.coord(v.id().as_str())).map(|(i, j)| [i, j]);
                json(&RawVertex { id: v.id().to_string(), coord })
            })
            .collect();
        let arcs: Vec<String> = self
            .graph
            .arcs()
            .iter()
            .map(|a| {
                json(&RawArc {
                    tail: a.tail.to_string(),
                    head: a.head.to_string(),
                    action: a.label.action().to_string(),
                    weight: a.label.weight().to_string(),
                })
            })
            .collect();
        let extra = !self.sets.is_empty() || !self.families.is_empty();
        write_list(&mut out, "vertices", &vertices, true);
        write_list(&mut out, "arcs", &arcs, extra);
        if !self.sets.is_empty() {
            let entries: Vec<String> = self
                .sets
                .iter()
                .map(|(k, s)| format!("{}: {}", json(k), json(&s.iter().map(VertexId::as_str).collect::<Vec<_>>())))
                .collect();
            write_map(&mut out, "sets", &entries, !self.families.is_empty());
        }
        if !self.families.is_empty() {
            let entries: Vec<String> =
                self.families.iter().map(|(k, f)| format!("{}: {}", json(k), json(f))).collect();
            write_map(&mut out, "families", &entries, false);
        }
        out.push_str("}\n");
        out
    }

    /// Looks up a set by name, or expands a family into its sets in order.
    pub fn resolve(&self, name: &str) -> Option<Vec<VertexSet>> {
        if let Some(set) = self.sets.get(name) {
            return Some(vec![set.clone()]);
        }
        self.families.get(name).map(|f| f.iter().map(|s| self.sets[s].clone()).collect())
    }

    /// Resolves several names and concatenates the sets.
    pub fn resolve_all<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<VertexSet>, DocumentError> {
        let mut out = Vec::new();
        for name in names {
            let name = name.as_ref();
            out.extend(self.resolve(name).ok_or_else(|| invalid(name, "no set or family with this name"))?);
        }
        Ok(out)
    }
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

fn write_list(out: &mut String, key: &str, items: &[String], comma: bool) {
    let tail = if comma { "," } else { "" };
    if items.is_empty() {
        let _ = writeln!(out, "  \"{key}\": []{tail}");
        return;
    }
    let _ = writeln!(out, "  \"{key}\": [");
    let _ = writeln!(out, "    {}", items.join(",\n    "));
    let _ = writeln!(out, "  ]{tail}");
}

fn write_map(out: &mut String, key: &str, entries: &[String], comma: bool) {
    let tail = if comma { "," } else { "" };
    let _ = writeln!(out, "  \"{key}\": {{");
    let _ = writeln!(out, "    {}", entries.join(",\n    "));
    let _ = writeln!(out, "  }}{tail}");
}

/// Canonical document for a bare graph.
pub fn emit(g: &Graph) -> String {
    GraphDocument::from_graph(g.clone()).to_json()
}

pub fn parse(text: &str) -> Result<GraphDocument, DocumentError> {
    GraphDocument::parse(text)
}

fn dot_quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Graphviz text: one node line per vertex, one edge line per arc, labelled
/// `action/weight`.
pub fn emit_dot(g: &Graph) -> String {
    let mut out = String::from("digraph G {\n");
    for v in g.vertices() {
        let _ = writeln!(out, "  {};", dot_quote(v.id().as_str()));
    }
    for a in g.arcs() {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            dot_quote(a.tail.as_str()),
            dot_quote(a.head.as_str()),
            dot_quote(&a.label.to_string())
        );
    }
    out.push_str("}\n");
    out
}

/// Writes `bytes` to a temporary file next to `path`, then renames it over
/// `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}

impl From<GraphError> for DocumentError {
    fn from(e: GraphError) -> Self {
        invalid("graph", e)
    }
}
