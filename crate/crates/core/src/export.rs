//! JSON and DOT output. Everything is emitted in canonical vertex and edge
//! order, so output is byte-stable for fixed input.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::certify::{certify, Certificate};
use crate::error::ExportError;
use crate::families::{Built, FamilyInstance};
use crate::graph::{Graph, Role, VertexId};
use crate::labeling::{sum_colors, EdgeLabeling};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDoc {
    pub id: VertexId,
    pub role: Role,
    pub indices: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub a: VertexId,
    pub b: VertexId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance: Option<FamilyInstance>,
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<EdgeDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

impl GraphDoc {
    /// Document for `g`, with colors and a certificate when `f` is given.
    pub fn new(g: &Graph, f: Option<&EdgeLabeling>, instance: Option<&FamilyInstance>) -> Self {
        let colors = f.map(|f| sum_colors(g, f));
        let vertices = g
            .vertices()
            .map(|v| VertexDoc {
                id: v.clone(),
                role: v.role,
                indices: v.indices.to_vec(),
                color: colors.as_ref().and_then(|c| c.color(v)),
            })
            .collect();
        let edges = g
            .edges()
            .map(|e| EdgeDoc {
                label: f.and_then(|f| f.get(&e)),
                a: e.a().clone(),
                b: e.b().clone(),
            })
            .collect();
        let expected = instance.map(FamilyInstance::palette);
        GraphDoc {
            instance: instance.cloned(),
            vertices,
            edges,
            certificate: f.map(|f| certify(g, f, expected.as_deref())),
        }
    }

    pub fn from_built(b: &Built) -> Self {
        GraphDoc::new(&b.graph, Some(&b.labeling), Some(&b.instance))
    }

    /// Rebuild the graph, and the labeling if every edge carries one.
    pub fn to_graph(&self) -> Result<(Graph, Option<EdgeLabeling>), ExportError> {
        let mut g = Graph::new();
        for v in &self.vertices {
            g.add_vertex(v.id.clone());
        }
        let mut f = EdgeLabeling::new();
        let mut unlabeled = None;
        for e in &self.edges {
            let edge = g.add_edge(e.a.clone(), e.b.clone())?;
            match e.label {
                Some(l) => {
                    f.insert(edge, l);
                }
                None => unlabeled = unlabeled.or(Some(edge)),
            }
        }
        match unlabeled {
            None => Ok((g, Some(f))),
            Some(_) if f.is_empty() => Ok((g, None)),
            Some(e) => Err(ExportError::MissingLabel(e)),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, ExportError> {
        Ok(serde_json::from_str(text)?)
    }
}

pub fn to_json(g: &Graph, f: Option<&EdgeLabeling>, instance: Option<&FamilyInstance>) -> String {
    GraphDoc::new(g, f, instance).to_json()
}

/// Parse a document and recover graph, labeling and instance.
pub fn from_json(text: &str) -> Result<(Graph, Option<EdgeLabeling>, Option<FamilyInstance>), ExportError> {
    let doc = GraphDoc::from_json(text)?;
    let (g, f) = doc.to_graph()?;
    Ok((g, f, doc.instance))
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\\\""))
}

/// Graphviz `graph`; vertices show id and color, edges their label.
pub fn to_dot(g: &Graph, f: Option<&EdgeLabeling>, name: &str) -> String {
    let colors: BTreeMap<VertexId, u64> = f.map(|f| sum_colors(g, f).colors).unwrap_or_default();
    let mut out = String::new();
    let _ = writeln!(out, "graph {} {{", quote(name));
    for v in g.vertices() {
        let id = v.to_string();
        let label = match colors.get(v) {
            Some(c) => format!("{id}\\n{c}"),
            None => id.clone(),
        };
        let _ = writeln!(out, "  {} [label={}];", quote(&id), quote(&label));
    }
    for e in g.edges() {
        let (a, b) = (quote(&e.a().to_string()), quote(&e.b().to_string()));
        match f.and_then(|f| f.get(&e)) {
            Some(l) => {
                let _ = writeln!(out, "  {a} -- {b} [label=\"{l}\"];");
            }
            None => {
                let _ = writeln!(out, "  {a} -- {b};");
            }
        }
    }
    out.push_str("}\n");
    out
}

/// `a,b,label` rows in canonical edge order.
pub fn to_edge_csv(g: &Graph, f: &EdgeLabeling) -> Result<String, ExportError> {
    let mut out = String::from("a,b,label\n");
    for e in g.edges() {
        let l = f.get(&e).ok_or_else(|| ExportError::MissingLabel(e.clone()))?;
        let _ = writeln!(out, "{},{},{l}", e.a(), e.b());
    }
    Ok(out)
}
