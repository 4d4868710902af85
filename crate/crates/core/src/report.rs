//! Pass/fail reports for structural checks, with machine-readable witnesses.

use std::fmt;

use serde::Serialize;

use crate::graph::{Arc, VertexId, VertexSet};
use crate::label::Label;

/// The object that makes a clause fail.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum Witness {
    Vertex(VertexId),
    Arc(Arc),
    Label(Label),
    Set(VertexSet),
    Row(usize),
    Column(usize),
    Note(String),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Vertex(v) => write!(f, "vertex {v}"),
            Witness::Arc(a) => write!(f, "arc {a}"),
            Witness::Label(l) => write!(f, "label {l}"),
            Witness::Set(s) => {
                let ids: Vec<&str> = s.iter().map(VertexId::as_str).collect();
                write!(f, "set {{{}}}", ids.join(","))
            }
            Witness::Row(i) => write!(f, "row {i}"),
            Witness::Column(j) => write!(f, "column {j}"),
            Witness::Note(s) => f.write_str(s),
        }
    }
}

/// One named condition. It holds exactly when it has no witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub id: String,
    pub description: String,
    pub holds: bool,
    pub witnesses: Vec<Witness>,
}

impl Clause {
    pub fn new(id: impl Into<String>, description: impl Into<String>, witnesses: Vec<Witness>) -> Self {
        Clause { id: id.into(), description: description.into(), holds: witnesses.is_empty(), witnesses }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}: {}", if self.holds { "ok" } else { "FAIL" }, self.id, self.description)?;
        for w in self.witnesses.iter().take(8) {
            write!(f, "\n    {w}")?;
        }
        if self.witnesses.len() > 8 {
            write!(f, "\n    ... {} more", self.witnesses.len() - 8)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub clauses: Vec<Clause>,
}

impl Report {
    pub fn push(&mut self, clause: Clause) {
        self.clauses.push(clause);
    }

    pub fn holds(&self) -> bool {
        self.clauses.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> Vec<Clause> {
        self.clauses.iter().filter(|c| !c.holds).cloned().collect()
    }

    pub fn clause(&self, id: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.id == id)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.clauses {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}
