//! Text formats: edge-list graphs and JSON colorings.
//!
//! Graph files hold one edge per line as two decimal vertex ids separated by
//! whitespace. Lines starting with `#` and blank lines are ignored. A line
//! `v <n>` declares the vertices `0..n`, so isolated vertices survive.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexId};
use crate::incidence::{Incidence, IncidenceColoring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("invalid coloring document: {0}")]
    Coloring(String),
}

fn at(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Line {
        line,
        message: message.into(),
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut g = Graph::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let id = |s: &str| -> Result<VertexId, FormatError> {
            s.parse()
                .map_err(|_| at(line, format!("expected a vertex id, found {s:?}")))
        };
        let graph_err = |e: GraphError| at(line, e.to_string());
        match fields.as_slice() {
            ["v", n] => {
                let n = id(n)?;
                if n > 0 {
                    g.add_vertex(n - 1).map_err(graph_err)?;
                }
                for v in 0..n {
                    g.add_vertex(v).map_err(graph_err)?;
                }
            }
            [a, b] => {
                g.add_edge(id(a)?, id(b)?).map_err(graph_err)?;
            }
            _ => {
                return Err(at(
                    line,
                    format!("expected two vertex ids, found {content:?}"),
                ))
            }
        }
    }
    Ok(g)
}

/// Writes `g` in edge-list form. The `v <n>` header is emitted when the
/// vertex set is exactly `0..n`.
pub fn emit_edge_list(g: &Graph) -> String {
    emit_edge_list_with_comments(g, &[])
}

pub fn emit_edge_list_with_comments(g: &Graph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    if g.vertex_count() > 0 && g.vertex_count() == g.id_bound() {
        out.push_str(&format!("v {}\n", g.vertex_count()));
    }
    for (a, b) in g.edges() {
        out.push_str(&format!("{a} {b}\n"));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorEntry {
    pub tail: VertexId,
    pub head: VertexId,
    pub color: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringMeta {
    pub delta: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// JSON shape of a coloring: entry `(tail, head, color)` colors the
/// incidence at `tail` on the edge `tail head`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringDocument {
    pub k: usize,
    pub l: usize,
    pub colors: Vec<ColorEntry>,
    pub meta: ColoringMeta,
}

impl ColoringDocument {
    pub fn new(g: &Graph, c: &IncidenceColoring, seed: Option<u64>) -> Self {
        ColoringDocument {
            k: c.k(),
            l: c.l(),
            colors: c
                .iter()
                .map(|(inc, color)| ColorEntry {
                    tail: inc.tail,
                    head: inc.head,
                    color,
                })
                .collect(),
            meta: ColoringMeta {
                delta: g.max_degree(),
                seed,
            },
        }
    }

    /// Later duplicates of the same incidence win.
    pub fn to_coloring(&self) -> IncidenceColoring {
        let mut c = IncidenceColoring::new(self.k, self.l);
        for e in &self.colors {
            c.assign(Incidence::new(e.tail, e.head), e.color);
        }
        c
    }
}

/// Serializes `c` (palette `k`) for `g` as pretty-printed JSON.
pub fn emit_coloring(g: &Graph, k: usize, c: &IncidenceColoring) -> String {
    let mut doc = ColoringDocument::new(g, c, None);
    doc.k = k;
    to_json(&doc)
}

pub fn to_json(doc: &ColoringDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn parse_coloring(text: &str) -> Result<IncidenceColoring, FormatError> {
    let doc: ColoringDocument =
        serde_json::from_str(text).map_err(|e| FormatError::Coloring(e.to_string()))?;
    Ok(doc.to_coloring())
}
