//! JSON and DOT encodings of graphs and witnesses.
//!
//! Graph documents follow
//! `{"vertices": [id, ...], "edges": [{"id", "u", "v", "colour": "red"|"blue"}]}`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::GraphError;
use crate::graph::{Colour, Graph, GraphBuilder};
use crate::witness::{
    AlternatingCycle, AlternatingTrail, CycleFactor, EulerianFactor, FactorPart, Witness,
};

#[derive(Serialize, Deserialize)]
struct EdgeDoc {
    id: String,
    u: String,
    v: String,
    colour: Colour,
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    vertices: Vec<String>,
    edges: Vec<EdgeDoc>,
}

fn schema(location: impl Into<String>, message: impl Into<String>) -> GraphError {
    GraphError::Schema {
        location: location.into(),
        message: message.into(),
    }
}

fn str_field<'a>(
    obj: &'a serde_json::Map<String, Value>,
    key: &str,
    loc: &str,
) -> Result<&'a str, GraphError> {
    match obj.get(key) {
        Some(Value::String(s)) => Ok(s),
        Some(_) => Err(schema(format!("{loc}.{key}"), "expected a string")),
        None => Err(schema(loc, format!("missing field `{key}`"))),
    }
}

/// Parses and validates a graph document.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
    graph_from_value(&doc)
}

pub fn graph_from_value(doc: &Value) -> Result<Graph, GraphError> {
    let obj = doc
        .as_object()
        .ok_or_else(|| schema("$", "expected an object"))?;
    let vertices = obj
        .get("vertices")
        .ok_or_else(|| schema("$", "missing field `vertices`"))?
        .as_array()
        .ok_or_else(|| schema("$.vertices", "expected an array"))?;
    let edges = match obj.get("edges") {
        Some(v) => v
            .as_array()
            .ok_or_else(|| schema("$.edges", "expected an array"))?
            .as_slice(),
        None => return Err(schema("$", "missing field `edges`")),
    };
    let mut b = GraphBuilder::new();
    for (i, v) in vertices.iter().enumerate() {
        let id = v
            .as_str()
            .ok_or_else(|| schema(format!("$.vertices[{i}]"), "expected a string"))?;
        b.add_vertex(id)?;
    }
    for (i, e) in edges.iter().enumerate() {
        let loc = format!("$.edges[{i}]");
        let eo = e
            .as_object()
            .ok_or_else(|| schema(&loc, "expected an object"))?;
        let id = str_field(eo, "id", &loc)?;
        let u = str_field(eo, "u", &loc)?;
        let v = str_field(eo, "v", &loc)?;
        let token = str_field(eo, "colour", &loc)?;
        let colour = Colour::parse(token).ok_or_else(|| GraphError::UnknownColour {
            location: format!("{loc}.colour"),
            token: token.to_string(),
        })?;
        let ui = b
            .vertex(u)
            .ok_or_else(|| GraphError::UnknownVertex(format!("`{u}` at {loc}.u")))?;
        let vi = b
            .vertex(v)
            .ok_or_else(|| GraphError::UnknownVertex(format!("`{v}` at {loc}.v")))?;
        b.add_edge(id, ui, vi, colour)?;
    }
    Ok(b.build())
}

pub fn graph_to_value(g: &Graph) -> Value {
    let doc = GraphDoc {
        vertices: g.vertex_ids().to_vec(),
        edges: g
            .edges()
            .iter()
            .map(|e| EdgeDoc {
                id: e.id.clone(),
                u: g.vertex_id(e.u).to_string(),
                v: g.vertex_id(e.v).to_string(),
                colour: e.colour,
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("graph document serializes")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
}

pub fn serialize_graph(g: &Graph, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&graph_to_value(g)).expect("serializes");
            s.push('\n');
            s
        }
        Format::Dot => to_dot(g),
    }
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn to_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for v in g.vertex_ids() {
        out.push_str(&format!("  {};\n", dot_quote(v)));
    }
    for e in g.edges() {
        out.push_str(&format!(
            "  {} -- {} [id={}, color={}];\n",
            dot_quote(g.vertex_id(e.u)),
            dot_quote(g.vertex_id(e.v)),
            dot_quote(&e.id),
            e.colour.name()
        ));
    }
    out.push_str("}\n");
    out
}

// ---------------------------------------------------------------------------
// Witness documents

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrailDoc {
    pub start: String,
    pub edges: Vec<String>,
    #[serde(default)]
    pub closed: bool,
    /// Informational; ignored when parsing.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vertices: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartDoc {
    pub vertices: Vec<String>,
    pub trail: TrailDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessDoc {
    Trail(TrailDoc),
    Cycle(TrailDoc),
    EulerianFactor { parts: Vec<PartDoc> },
    CycleFactor { cycles: Vec<TrailDoc> },
}

pub fn trail_doc(g: &Graph, t: &AlternatingTrail) -> TrailDoc {
    TrailDoc {
        start: g.vertex_id(t.start).to_string(),
        edges: t.edges.iter().map(|&e| g.edge(e).id.clone()).collect(),
        closed: t.closed,
        vertices: t
            .vertices(g)
            .iter()
            .map(|&v| g.vertex_id(v).to_string())
            .collect(),
    }
}

pub fn witness_doc(g: &Graph, w: &Witness) -> WitnessDoc {
    match w {
        Witness::Trail(t) => WitnessDoc::Trail(trail_doc(g, t)),
        Witness::Cycle(c) => WitnessDoc::Cycle(trail_doc(g, &c.0)),
        Witness::EulerianFactor(f) => WitnessDoc::EulerianFactor {
            parts: f
                .parts
                .iter()
                .map(|p| PartDoc {
                    vertices: p
                        .vertices
                        .iter()
                        .map(|&v| g.vertex_id(v).to_string())
                        .collect(),
                    trail: trail_doc(g, &p.trail),
                })
                .collect(),
        },
        Witness::CycleFactor(f) => WitnessDoc::CycleFactor {
            cycles: f.cycles.iter().map(|c| trail_doc(g, &c.0)).collect(),
        },
    }
}

pub fn witness_to_value(g: &Graph, w: &Witness) -> Value {
    serde_json::to_value(witness_doc(g, w)).expect("witness serializes")
}

fn resolve_trail(g: &Graph, d: &TrailDoc, closed: bool) -> Result<AlternatingTrail, GraphError> {
    let start = g
        .vertex(&d.start)
        .ok_or_else(|| GraphError::UnknownVertex(format!("`{}` (trail start)", d.start)))?;
    let edges = d
        .edges
        .iter()
        .map(|id| {
            g.edge_by_id(id)
                .ok_or_else(|| schema("witness", format!("dangling edge id `{id}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AlternatingTrail::new(start, edges, closed))
}

/// Resolves a witness document against `g`. Dangling ids are rejected here;
/// structural checks are left to [`crate::witness::verify_witness`].
pub fn parse_witness(g: &Graph, text: &str) -> Result<Witness, GraphError> {
    let doc: WitnessDoc =
        serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
    witness_from_doc(g, &doc)
}

pub fn witness_from_doc(g: &Graph, doc: &WitnessDoc) -> Result<Witness, GraphError> {
    Ok(match doc {
        WitnessDoc::Trail(t) => Witness::Trail(resolve_trail(g, t, t.closed)?),
        WitnessDoc::Cycle(t) => Witness::Cycle(AlternatingCycle(resolve_trail(g, t, true)?)),
        WitnessDoc::EulerianFactor { parts } => Witness::EulerianFactor(EulerianFactor {
            parts: parts
                .iter()
                .map(|p| {
                    let vertices = p
                        .vertices
                        .iter()
                        .map(|v| {
                            g.vertex(v).ok_or_else(|| {
                                GraphError::UnknownVertex(format!("`{v}` (factor part)"))
                            })
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    Ok(FactorPart {
                        vertices,
                        trail: resolve_trail(g, &p.trail, true)?,
                    })
                })
                .collect::<Result<Vec<_>, GraphError>>()?,
        }),
        WitnessDoc::CycleFactor { cycles } => Witness::CycleFactor(CycleFactor {
            cycles: cycles
                .iter()
                .map(|c| resolve_trail(g, c, true).map(AlternatingCycle))
                .collect::<Result<Vec<_>, _>>()?,
        }),
    })
}
