//! graph6, JSON edge-list and coloring documents, DOT output.
//!
//! The edge-list document is the interchange format; it keeps edge ids and
//! handles parallel edges. graph6 is accepted for simple graphs only.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::color::{EdgeColoring, PackingColor};
use crate::graph::{EdgeId, GraphError, MultiGraph, VertexId};
use crate::recognition::is_two_edge_connected;
use crate::structure::{
    bridge_decompose, classify_component, oum_decompose, ComponentClass, OumDecomposition, StructureError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("malformed graph6 at byte {offset}: {reason}")]
    MalformedGraph6 { offset: usize, reason: String },
    #[error("graph6 cannot encode parallel edges")]
    NotSimple,
    #[error("bad document: {0}")]
    Json(String),
    #[error("invalid document: {0}")]
    InvalidDocument(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Json(e.to_string())
    }
}

const GRAPH6_HEADER: &str = ">>graph6<<";

fn malformed(offset: usize, reason: &str) -> IoError {
    IoError::MalformedGraph6 {
        offset,
        reason: reason.to_string(),
    }
}

pub fn parse_graph6(text: &str) -> Result<MultiGraph, IoError> {
    let line = text.trim_end_matches(['\n', '\r']);
    let start = if line.starts_with(GRAPH6_HEADER) { GRAPH6_HEADER.len() } else { 0 };
    let bytes = &line.as_bytes()[start..];
    let at = |i: usize| -> Result<u32, IoError> {
        match bytes.get(i) {
            None => Err(malformed(start + i, "unexpected end of input")),
            Some(&b) if (63..=126).contains(&b) => Ok(u32::from(b - 63)),
            Some(_) => Err(malformed(start + i, "byte outside 63..=126")),
        }
    };
    let (n, mut pos) = if bytes.first() == Some(&126) {
        if bytes.get(1) == Some(&126) {
            let mut n: u64 = 0;
            for i in 2..8 {
                n = (n << 6) | u64::from(at(i)?);
            }
            let n = u32::try_from(n).map_err(|_| malformed(start, "vertex count too large"))?;
            (n, 8)
        } else {
            let mut n = 0;
            for i in 1..4 {
                n = (n << 6) | at(i)?;
            }
            (n, 4)
        }
    } else {
        (at(0)?, 1)
    };
    let mut g = MultiGraph::new();
    for v in 0..n {
        g.ensure_vertex(VertexId(v));
    }
    let total = (n as usize) * (n as usize).saturating_sub(1) / 2;
    let mut bit = 0usize;
    let mut chunk = 0u32;
    for j in 1..n {
        for i in 0..j {
            if bit % 6 == 0 {
                chunk = at(pos)?;
                pos += 1;
            }
            if chunk & (1 << (5 - bit % 6)) != 0 {
                g.add_edge(VertexId(i), VertexId(j))?;
            }
            bit += 1;
        }
    }
    if pos != bytes.len() {
        return Err(malformed(start + pos, "trailing bytes"));
    }
    debug_assert_eq!(bit, total);
    Ok(g)
}

/// Vertices are renumbered `0..n` in id order.
pub fn write_graph6(g: &MultiGraph) -> Result<String, IoError> {
    if !g.is_simple() {
        return Err(IoError::NotSimple);
    }
    let index = g.vertex_index();
    let n = index.len();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut adj = vec![false; n * n];
    for (_, u, v) in g.edges() {
        let (a, b) = (index[&u], index[&v]);
        adj[a * n + b] = true;
        adj[b * n + a] = true;
    }
    let mut chunk = 0u8;
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            if adj[i * n + j] {
                chunk |= 1 << (5 - bit);
            }
            bit += 1;
            if bit == 6 {
                out.push(chunk + 63);
                chunk = 0;
                bit = 0;
            }
        }
    }
    if bit > 0 {
        out.push(chunk + 63);
    }
    Ok(String::from_utf8(out).expect("printable ascii"))
}

/// `{"n": .., "edges": [[id, u, v], ..]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub n: u32,
    pub edges: Vec<(u32, u32, u32)>,
}

impl GraphDocument {
    /// Vertices are renumbered `0..n` in id order; edge ids are kept.
    pub fn from_graph(g: &MultiGraph) -> Self {
        let index = g.vertex_index();
        GraphDocument {
            n: index.len() as u32,
            edges: g
                .edges()
                .map(|(e, u, v)| (e.0, index[&u] as u32, index[&v] as u32))
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<MultiGraph, IoError> {
        let mut g = MultiGraph::new();
        for v in 0..self.n {
            g.ensure_vertex(VertexId(v));
        }
        for &(id, u, v) in &self.edges {
            if u >= self.n || v >= self.n {
                return Err(IoError::InvalidDocument(format!("edge {id} leaves 0..{}", self.n)));
            }
            g.insert_edge(EdgeId(id), VertexId(u), VertexId(v))?;
        }
        Ok(g)
    }
}

pub fn write_edge_list(g: &MultiGraph) -> String {
    serde_json::to_string(&GraphDocument::from_graph(g)).expect("plain data")
}

pub fn parse_edge_list(text: &str) -> Result<MultiGraph, IoError> {
    serde_json::from_str::<GraphDocument>(text)?.to_graph()
}

/// JSON documents (anything starting with `{`) or a graph6 line.
pub fn read_graph(text: &str) -> Result<MultiGraph, IoError> {
    let t = text.trim();
    if t.starts_with('{') {
        return parse_edge_list(t);
    }
    let line = t.lines().next().unwrap_or("");
    parse_graph6(line)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringMeta {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub generator: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub variant: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub backtracks: Option<usize>,
}

/// Graph plus `"assignment"`: edge id to color label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringDocument {
    pub n: u32,
    pub edges: Vec<(u32, u32, u32)>,
    pub assignment: BTreeMap<u32, PackingColor>,
    #[serde(default)]
    pub meta: ColoringMeta,
}

impl ColoringDocument {
    pub fn new(g: &MultiGraph, coloring: &EdgeColoring, meta: ColoringMeta) -> Self {
        let GraphDocument { n, edges } = GraphDocument::from_graph(g);
        ColoringDocument {
            n,
            edges,
            assignment: coloring.iter().map(|(e, &c)| (e.0, c)).collect(),
            meta,
        }
    }

    pub fn graph(&self) -> Result<MultiGraph, IoError> {
        GraphDocument {
            n: self.n,
            edges: self.edges.clone(),
        }
        .to_graph()
    }

    pub fn coloring(&self) -> EdgeColoring {
        self.assignment.iter().map(|(&e, &c)| (EdgeId(e), c)).collect()
    }
}

pub fn write_coloring(doc: &ColoringDocument) -> String {
    serde_json::to_string_pretty(doc).expect("plain data")
}

pub fn parse_coloring(text: &str) -> Result<ColoringDocument, IoError> {
    let doc: ColoringDocument = serde_json::from_str(text)?;
    let g = doc.graph()?;
    if let Some(e) = doc.assignment.keys().find(|&&e| !g.contains_edge(EdgeId(e))) {
        return Err(IoError::InvalidDocument(format!("assignment names unknown edge {e}")));
    }
    Ok(doc)
}

/// Reads only the `"assignment"` field; used when the graph comes from
/// elsewhere.
pub fn parse_assignment(text: &str) -> Result<EdgeColoring, IoError> {
    #[derive(Deserialize)]
    struct Only {
        assignment: BTreeMap<u32, PackingColor>,
    }
    let only: Only = serde_json::from_str(text)?;
    Ok(only.assignment.into_iter().map(|(e, c)| (EdgeId(e), c)).collect())
}

pub fn dot_style(c: PackingColor) -> &'static str {
    match c {
        PackingColor::A1 => "color=red",
        PackingColor::B1 => "color=green, style=dashed",
        PackingColor::C1 => "color=blue, style=dotted",
        PackingColor::A3 => "color=brown, style=bold, penwidth=3",
    }
}

pub fn write_dot(g: &MultiGraph, coloring: Option<&EdgeColoring>) -> String {
    let mut out = String::from("graph G {\n");
    for v in g.vertices() {
        let _ = writeln!(out, "  {};", v.0);
    }
    for (e, u, v) in g.edges() {
        match coloring.and_then(|c| c.get(&e)) {
            Some(&c) => {
                let _ = writeln!(out, "  {} -- {} [id=\"e{}\", label=\"{}\", {}];", u.0, v.0, e.0, c, dot_style(c));
            }
            None => {
                let _ = writeln!(out, "  {} -- {} [id=\"e{}\"];", u.0, v.0, e.0);
            }
        }
    }
    out.push_str("}\n");
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentSummary {
    pub vertices: Vec<VertexId>,
    pub class: ComponentClass,
    pub parent: Option<usize>,
    pub level: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DecompositionDocument {
    Bridgeless {
        variant: String,
        decomposition: OumDecomposition,
    },
    Bridged {
        bridges: Vec<EdgeId>,
        root: usize,
        bfs_order: Vec<usize>,
        components: Vec<ComponentSummary>,
    },
}

pub fn decomposition_document(g: &MultiGraph) -> Result<DecompositionDocument, IoError> {
    if is_two_edge_connected(g) {
        let d = oum_decompose(g)?;
        return Ok(DecompositionDocument::Bridgeless {
            variant: d.variant_name().to_string(),
            decomposition: d,
        });
    }
    let bd = bridge_decompose(g)?;
    let components = bd
        .components
        .iter()
        .enumerate()
        .map(|(i, c)| {
            Ok(ComponentSummary {
                vertices: c.vertices().collect(),
                class: classify_component(c)?,
                parent: bd.parent[i],
                level: bd.levels[i],
            })
        })
        .collect::<Result<_, IoError>>()?;
    Ok(DecompositionDocument::Bridged {
        bridges: bd.bridges.bridges.iter().copied().collect(),
        root: bd.root,
        bfs_order: bd.bfs_order.clone(),
        components,
    })
}
