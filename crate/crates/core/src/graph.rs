//! The 2-edge-coloured multigraph data model.
//!
//! Vertices and edges carry opaque string ids. Internally both are addressed by
//! dense indices assigned in declaration order, which is what every algorithm in
//! this crate works with.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// Vertex index (declaration order).
pub type VertexIdx = usize;
/// Edge index (declaration order).
pub type EdgeIdx = usize;

/// One of the two edge colours. Red is colour 1, blue is colour 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Colour {
    Red,
    Blue,
}

impl Colour {
    pub const BOTH: [Colour; 2] = [Colour::Red, Colour::Blue];

    pub fn other(self) -> Colour {
        match self {
            Colour::Red => Colour::Blue,
            Colour::Blue => Colour::Red,
        }
    }

    /// Numeric label: 1 for red, 2 for blue.
    pub fn number(self) -> u8 {
        match self {
            Colour::Red => 1,
            Colour::Blue => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Colour::Red => "red",
            Colour::Blue => "blue",
        }
    }

    pub fn parse(token: &str) -> Option<Colour> {
        match token {
            "red" | "1" => Some(Colour::Red),
            "blue" | "2" => Some(Colour::Blue),
            _ => None,
        }
    }

    pub(crate) fn bit(self) -> u8 {
        match self {
            Colour::Red => 1,
            Colour::Blue => 2,
        }
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub u: VertexIdx,
    pub v: VertexIdx,
    pub colour: Colour,
}

impl Edge {
    /// The endpoint opposite to `x`. `x` must be an endpoint.
    #[inline]
    pub fn other_end(&self, x: VertexIdx) -> VertexIdx {
        if self.u == x {
            self.v
        } else {
            debug_assert_eq!(self.v, x);
            self.u
        }
    }

    #[inline]
    pub fn touches(&self, x: VertexIdx) -> bool {
        self.u == x || self.v == x
    }
}

/// A 2-edge-coloured multigraph. Immutable once built.
#[derive(Clone, Debug)]
pub struct Graph {
    vertices: Vec<String>,
    vertex_index: HashMap<String, VertexIdx>,
    edges: Vec<Edge>,
    edge_index: HashMap<String, EdgeIdx>,
    incidence: Vec<Vec<EdgeIdx>>,
    pairs: HashMap<(VertexIdx, VertexIdx), Vec<EdgeIdx>>,
}

fn pair_key(u: VertexIdx, v: VertexIdx) -> (VertexIdx, VertexIdx) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    pub fn empty() -> Graph {
        GraphBuilder::new().build()
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_id(&self, v: VertexIdx) -> &str {
        &self.vertices[v]
    }

    pub fn vertex(&self, id: &str) -> Option<VertexIdx> {
        self.vertex_index.get(id).copied()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeIdx) -> &Edge {
        &self.edges[e]
    }

    pub fn edge_by_id(&self, id: &str) -> Option<EdgeIdx> {
        self.edge_index.get(id).copied()
    }

    #[inline]
    pub fn colour(&self, e: EdgeIdx) -> Colour {
        self.edges[e].colour
    }

    /// Edges incident with `v`, in declaration order.
    pub fn incident(&self, v: VertexIdx) -> &[EdgeIdx] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: VertexIdx) -> usize {
        self.incidence[v].len()
    }

    pub fn colour_degree(&self, v: VertexIdx, c: Colour) -> usize {
        self.incidence[v]
            .iter()
            .filter(|&&e| self.edges[e].colour == c)
            .count()
    }

    /// All edges joining `u` and `v` (any colour), in declaration order.
    pub fn edges_between(&self, u: VertexIdx, v: VertexIdx) -> &[EdgeIdx] {
        self.pairs
            .get(&pair_key(u, v))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn adjacent(&self, u: VertexIdx, v: VertexIdx) -> bool {
        self.pairs.contains_key(&pair_key(u, v))
    }

    /// First edge of colour `c` joining `u` and `v`.
    pub fn edge_with_colour(&self, u: VertexIdx, v: VertexIdx, c: Colour) -> Option<EdgeIdx> {
        self.edges_between(u, v)
            .iter()
            .copied()
            .find(|&e| self.edges[e].colour == c)
    }

    /// Bitmask of the colours present between `u` and `v` (1 = red, 2 = blue).
    pub fn colour_mask(&self, u: VertexIdx, v: VertexIdx) -> u8 {
        self.edges_between(u, v)
            .iter()
            .fold(0, |acc, &e| acc | self.edges[e].colour.bit())
    }

    /// Subgraph induced by `keep` (vertex order of `keep` is preserved).
    /// Returns the subgraph together with the original index of every vertex
    /// and every edge.
    pub fn induced(&self, keep: &[VertexIdx]) -> (Graph, Vec<VertexIdx>, Vec<EdgeIdx>) {
        let mut map = vec![usize::MAX; self.n()];
        let mut b = GraphBuilder::new();
        for (i, &v) in keep.iter().enumerate() {
            map[v] = i;
            b.add_vertex_unchecked(self.vertices[v].clone());
        }
        let mut edge_origin = Vec::new();
        for (e, edge) in self.edges.iter().enumerate() {
            if map[edge.u] != usize::MAX && map[edge.v] != usize::MAX {
                b.add_edge_unchecked(edge.id.clone(), map[edge.u], map[edge.v], edge.colour);
                edge_origin.push(e);
            }
        }
        (b.build(), keep.to_vec(), edge_origin)
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<VertexIdx>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &e in &self.incidence[x] {
                    let y = self.edges[e].other_end(x);
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// Same vertex ids, and the same multiset of (endpoints, colour) per edge id.
    pub fn same_as(&self, other: &Graph) -> bool {
        if self.vertices != other.vertices || self.m() != other.m() {
            return false;
        }
        self.edges.iter().all(|e| match other.edge_by_id(&e.id) {
            Some(f) => {
                let f = other.edge(f);
                f.colour == e.colour && pair_key(f.u, f.v) == pair_key(e.u, e.v)
            }
            None => false,
        })
    }

    /// Multiset of `(sorted vertex id pair, colour)`; compares graphs up to
    /// edge ids and declaration order.
    pub fn labelled_edge_multiset(&self) -> Vec<(String, String, Colour)> {
        let mut out: Vec<_> = self
            .edges
            .iter()
            .map(|e| {
                let (a, b) = (&self.vertices[e.u], &self.vertices[e.v]);
                if a <= b {
                    (a.clone(), b.clone(), e.colour)
                } else {
                    (b.clone(), a.clone(), e.colour)
                }
            })
            .collect();
        out.sort();
        out
    }
}

/// Incremental, validating graph constructor.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    vertices: Vec<String>,
    vertex_index: HashMap<String, VertexIdx>,
    edges: Vec<Edge>,
    edge_index: HashMap<String, EdgeIdx>,
}

impl GraphBuilder {
    pub fn new() -> GraphBuilder {
        GraphBuilder::default()
    }

    /// A builder pre-loaded with all vertices and edges of `g`.
    pub fn from_graph(g: &Graph) -> GraphBuilder {
        GraphBuilder {
            vertices: g.vertices.clone(),
            vertex_index: g.vertex_index.clone(),
            edges: g.edges.clone(),
            edge_index: g.edge_index.clone(),
        }
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn add_vertex(&mut self, id: impl Into<String>) -> Result<VertexIdx, GraphError> {
        let id = id.into();
        if self.vertex_index.contains_key(&id) {
            return Err(GraphError::DuplicateVertex(id));
        }
        Ok(self.add_vertex_unchecked(id))
    }

    pub(crate) fn add_vertex_unchecked(&mut self, id: String) -> VertexIdx {
        let idx = self.vertices.len();
        self.vertex_index.insert(id.clone(), idx);
        self.vertices.push(id);
        idx
    }

    pub fn vertex(&self, id: &str) -> Option<VertexIdx> {
        self.vertex_index.get(id).copied()
    }

    pub fn has_edge_id(&self, id: &str) -> bool {
        self.edge_index.contains_key(id)
    }

    pub fn add_edge(
        &mut self,
        id: impl Into<String>,
        u: VertexIdx,
        v: VertexIdx,
        colour: Colour,
    ) -> Result<EdgeIdx, GraphError> {
        let id = id.into();
        if u >= self.vertices.len() || v >= self.vertices.len() {
            return Err(GraphError::UnknownVertex(format!("edge {id}")));
        }
        if u == v {
            return Err(GraphError::SelfLoop {
                edge: id,
                vertex: self.vertices[u].clone(),
            });
        }
        if self.edge_index.contains_key(&id) {
            return Err(GraphError::DuplicateEdge(id));
        }
        Ok(self.add_edge_unchecked(id, u, v, colour))
    }

    /// Adds an edge given endpoint ids.
    pub fn add_edge_by_id(
        &mut self,
        id: impl Into<String>,
        u: &str,
        v: &str,
        colour: Colour,
    ) -> Result<EdgeIdx, GraphError> {
        let id = id.into();
        let ui = self
            .vertex(u)
            .ok_or_else(|| GraphError::UnknownVertex(format!("{u} (edge {id})")))?;
        let vi = self
            .vertex(v)
            .ok_or_else(|| GraphError::UnknownVertex(format!("{v} (edge {id})")))?;
        self.add_edge(id, ui, vi, colour)
    }

    /// Adds an edge with a fresh id derived from `stem`.
    pub fn add_edge_fresh(
        &mut self,
        stem: &str,
        u: VertexIdx,
        v: VertexIdx,
        colour: Colour,
    ) -> EdgeIdx {
        let mut id = stem.to_string();
        let mut k = 1;
        while self.edge_index.contains_key(&id) {
            k += 1;
            id = format!("{stem}~{k}");
        }
        self.add_edge_unchecked(id, u, v, colour)
    }

    pub(crate) fn add_edge_unchecked(
        &mut self,
        id: String,
        u: VertexIdx,
        v: VertexIdx,
        colour: Colour,
    ) -> EdgeIdx {
        let idx = self.edges.len();
        self.edge_index.insert(id.clone(), idx);
        self.edges.push(Edge { id, u, v, colour });
        idx
    }

    pub fn build(self) -> Graph {
        let n = self.vertices.len();
        let mut incidence = vec![Vec::new(); n];
        let mut pairs: HashMap<(VertexIdx, VertexIdx), Vec<EdgeIdx>> = HashMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            incidence[e.u].push(i);
            incidence[e.v].push(i);
            pairs.entry(pair_key(e.u, e.v)).or_default().push(i);
        }
        Graph {
            vertices: self.vertices,
            vertex_index: self.vertex_index,
            edges: self.edges,
            edge_index: self.edge_index,
            incidence,
            pairs,
        }
    }
}

impl Graph {
    /// Convenience constructor used by fixtures and tests: vertex ids plus
    /// `(u, v, colour)` triples; edge ids are `e1`, `e2`, ...
    pub fn from_triples(
        vertices: &[&str],
        edges: &[(&str, &str, Colour)],
    ) -> Result<Graph, GraphError> {
        let mut b = GraphBuilder::new();
        for v in vertices {
            b.add_vertex(*v)?;
        }
        for (i, (u, v, c)) in edges.iter().enumerate() {
            b.add_edge_by_id(format!("e{}", i + 1), u, v, *c)?;
        }
        Ok(b.build())
    }

    /// Like [`Graph::from_triples`] on vertices named `0..n`.
    pub fn from_indexed(n: usize, edges: &[(usize, usize, Colour)]) -> Result<Graph, GraphError> {
        let mut b = GraphBuilder::new();
        for v in 0..n {
            b.add_vertex(v.to_string())?;
        }
        for (i, &(u, v, c)) in edges.iter().enumerate() {
            b.add_edge(format!("e{}", i + 1), u, v, c)?;
        }
        Ok(b.build())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn other_is_involutive() {
        for c in Colour::BOTH {
            assert_ne!(c.other(), c);
            assert_eq!(c.other().other(), c);
        }
        assert_eq!(Colour::Red.number(), 1);
        assert_eq!(Colour::Blue.number(), 2);
    }

    #[test]
    fn builder_rejects_bad_edges() {
        let mut b = GraphBuilder::new();
        let a = b.add_vertex("a").unwrap();
        let c = b.add_vertex("c").unwrap();
        assert!(matches!(
            b.add_vertex("a"),
            Err(GraphError::DuplicateVertex(_))
        ));
        assert!(matches!(
            b.add_edge("e", a, a, Colour::Red),
            Err(GraphError::SelfLoop { .. })
        ));
        b.add_edge("e", a, c, Colour::Red).unwrap();
        assert!(matches!(
            b.add_edge("e", a, c, Colour::Blue),
            Err(GraphError::DuplicateEdge(_))
        ));
    }

    #[test]
    fn parallel_edges_are_kept() {
        let g = Graph::from_triples(
            &["a", "b"],
            &[("a", "b", Colour::Red), ("b", "a", Colour::Blue)],
        )
        .unwrap();
        assert_eq!(g.edges_between(0, 1).len(), 2);
        assert_eq!(g.colour_mask(1, 0), 3);
        assert_eq!(g.colour_degree(0, Colour::Red), 1);
        assert!(g.edge_with_colour(1, 0, Colour::Blue).is_some());
    }

    #[test]
    fn induced_keeps_inside_edges_only() {
        let g = Graph::from_indexed(
            3,
            &[
                (0, 1, Colour::Red),
                (1, 2, Colour::Blue),
                (0, 2, Colour::Red),
            ],
        )
        .unwrap();
        let (h, vmap, emap) = g.induced(&[2, 0]);
        assert_eq!(h.n(), 2);
        assert_eq!(h.m(), 1);
        assert_eq!(vmap, vec![2, 0]);
        assert_eq!(emap, vec![2]);
    }
}
