//! Witness types (trails, cycles, factors) and their verification against a graph.
//!
//! Every constructive routine in the crate produces one of these types, and
//! every one of them can be re-checked from scratch with [`verify_witness`].

use std::collections::HashSet;
use std::fmt;

use crate::graph::{Colour, EdgeIdx, Graph, VertexIdx};

/// An alternating trail given as a start vertex and an edge sequence.
///
/// For a closed trail the last edge returns to `start` and, in addition to the
/// alternation between consecutive edges, the first and last edges have
/// different colours.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlternatingTrail {
    pub start: VertexIdx,
    pub edges: Vec<EdgeIdx>,
    pub closed: bool,
}

/// An alternating cycle: a closed trail visiting every vertex once.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlternatingCycle(pub AlternatingTrail);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorPart {
    pub vertices: Vec<VertexIdx>,
    pub trail: AlternatingTrail,
}

/// Vertex-disjoint induced subgraphs covering V, each with a spanning closed
/// alternating trail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerianFactor {
    pub parts: Vec<FactorPart>,
}

/// Vertex-disjoint alternating cycles covering V.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleFactor {
    pub cycles: Vec<AlternatingCycle>,
}

#[derive(Clone, Debug)]
pub enum Witness {
    Trail(AlternatingTrail),
    Cycle(AlternatingCycle),
    EulerianFactor(EulerianFactor),
    CycleFactor(CycleFactor),
}

/// The first violated clause found by a verifier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DanglingEdge(EdgeIdx),
    DanglingVertex(VertexIdx),
    Empty,
    NotIncident { position: usize },
    EdgeRepeated { position: usize },
    NotAlternating { position: usize },
    NotClosed,
    OpenButFlaggedClosed,
    SameColourAtClosure,
    OddLength,
    VertexRepeated(VertexIdx),
    NotAPath,
    PartsOverlap(VertexIdx),
    VertexUncovered(VertexIdx),
    EdgeLeavesPart { part: usize, edge: EdgeIdx },
    PartNotSpanned { part: usize, vertex: VertexIdx },
    TrailLeavesPart { part: usize, vertex: VertexIdx },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DanglingEdge(e) => write!(f, "dangling edge index {e}"),
            Violation::DanglingVertex(v) => write!(f, "dangling vertex index {v}"),
            Violation::Empty => write!(f, "empty trail"),
            Violation::NotIncident { position } => {
                write!(f, "edge at position {position} does not continue the trail")
            }
            Violation::EdgeRepeated { position } => {
                write!(f, "edge repeated at position {position}")
            }
            Violation::NotAlternating { position } => {
                write!(f, "colours do not alternate at position {position}")
            }
            Violation::NotClosed => write!(f, "not closed"),
            Violation::OpenButFlaggedClosed => {
                write!(f, "trail returns to start but is not flagged closed")
            }
            Violation::SameColourAtClosure => write!(f, "first and last edge have the same colour"),
            Violation::OddLength => write!(f, "closed trail of odd length"),
            Violation::VertexRepeated(v) => write!(f, "vertex {v} repeated"),
            Violation::NotAPath => write!(f, "not a path"),
            Violation::PartsOverlap(v) => write!(f, "vertex {v} lies in two parts"),
            Violation::VertexUncovered(v) => write!(f, "vertex {v} is not covered"),
            Violation::EdgeLeavesPart { part, edge } => {
                write!(f, "edge {edge} of part {part} leaves the part")
            }
            Violation::PartNotSpanned { part, vertex } => {
                write!(f, "trail of part {part} misses vertex {vertex}")
            }
            Violation::TrailLeavesPart { part, vertex } => {
                write!(f, "trail of part {part} visits outside vertex {vertex}")
            }
        }
    }
}

impl AlternatingTrail {
    pub fn new(start: VertexIdx, edges: Vec<EdgeIdx>, closed: bool) -> AlternatingTrail {
        AlternatingTrail {
            start,
            edges,
            closed,
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Vertex sequence of the walk (`len() + 1` entries; for a closed trail the
    /// last entry repeats the start). Assumes the trail is well formed.
    pub fn vertices(&self, g: &Graph) -> Vec<VertexIdx> {
        let mut out = Vec::with_capacity(self.edges.len() + 1);
        let mut cur = self.start;
        out.push(cur);
        for &e in &self.edges {
            cur = g.edge(e).other_end(cur);
            out.push(cur);
        }
        out
    }

    pub fn end(&self, g: &Graph) -> VertexIdx {
        *self.vertices(g).last().unwrap()
    }

    /// Distinct vertices visited, sorted.
    pub fn vertex_set(&self, g: &Graph) -> Vec<VertexIdx> {
        let mut vs = self.vertices(g);
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Number of visits of every vertex; for a closed trail the return to the
    /// start is not counted twice.
    pub fn visit_counts(&self, g: &Graph) -> Vec<usize> {
        let mut counts = vec![0; g.n()];
        let vs = self.vertices(g);
        let take = if self.closed { vs.len() - 1 } else { vs.len() };
        for &v in &vs[..take] {
            counts[v] += 1;
        }
        counts
    }

    pub fn first_colour(&self, g: &Graph) -> Option<Colour> {
        self.edges.first().map(|&e| g.colour(e))
    }

    pub fn last_colour(&self, g: &Graph) -> Option<Colour> {
        self.edges.last().map(|&e| g.colour(e))
    }

    pub fn colour_counts(&self, g: &Graph) -> (usize, usize) {
        let red = self
            .edges
            .iter()
            .filter(|&&e| g.colour(e) == Colour::Red)
            .count();
        (red, self.edges.len() - red)
    }

    pub fn reversed(&self, g: &Graph) -> AlternatingTrail {
        let end = self.end(g);
        let mut edges = self.edges.clone();
        edges.reverse();
        AlternatingTrail {
            start: end,
            edges,
            closed: self.closed,
        }
    }

    /// For a closed trail: the same circuit started at the `pos`-th vertex of
    /// the sequence.
    pub fn rotated(&self, g: &Graph, pos: usize) -> AlternatingTrail {
        debug_assert!(self.closed);
        let start = self.vertices(g)[pos];
        let mut edges = self.edges[pos..].to_vec();
        edges.extend_from_slice(&self.edges[..pos]);
        AlternatingTrail {
            start,
            edges,
            closed: true,
        }
    }
}

impl AlternatingCycle {
    pub fn trail(&self) -> &AlternatingTrail {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.edges.is_empty()
    }

    /// The cycle's vertices in traversal order, each once.
    pub fn vertices(&self, g: &Graph) -> Vec<VertexIdx> {
        let mut vs = self.0.vertices(g);
        vs.pop();
        vs
    }
}

/// Checks that `t` is an alternating trail of `g` (open or closed as flagged).
pub fn verify_trail(g: &Graph, t: &AlternatingTrail) -> Result<(), Violation> {
    if t.start >= g.n() {
        return Err(Violation::DanglingVertex(t.start));
    }
    if t.edges.is_empty() {
        return Err(Violation::Empty);
    }
    let mut seen = HashSet::with_capacity(t.edges.len());
    let mut cur = t.start;
    let mut prev: Option<Colour> = None;
    for (i, &e) in t.edges.iter().enumerate() {
        if e >= g.m() {
            return Err(Violation::DanglingEdge(e));
        }
        let edge = g.edge(e);
        if !edge.touches(cur) {
            return Err(Violation::NotIncident { position: i });
        }
        if !seen.insert(e) {
            return Err(Violation::EdgeRepeated { position: i });
        }
        if prev == Some(edge.colour) {
            return Err(Violation::NotAlternating { position: i });
        }
        prev = Some(edge.colour);
        cur = edge.other_end(cur);
    }
    if t.closed {
        if cur != t.start {
            return Err(Violation::NotClosed);
        }
        if t.edges.len() % 2 == 1 {
            return Err(Violation::OddLength);
        }
        if g.colour(t.edges[0]) == g.colour(*t.edges.last().unwrap()) {
            return Err(Violation::SameColourAtClosure);
        }
    }
    Ok(())
}

/// Checks that `t` is an open alternating path (no repeated vertex).
pub fn verify_path(g: &Graph, t: &AlternatingTrail) -> Result<(), Violation> {
    if t.closed {
        return Err(Violation::NotAPath);
    }
    verify_trail(g, t)?;
    let mut seen = HashSet::new();
    for v in t.vertices(g) {
        if !seen.insert(v) {
            return Err(Violation::VertexRepeated(v));
        }
    }
    Ok(())
}

/// Checks that `c` is an alternating cycle (closed, each vertex once).
pub fn verify_cycle(g: &Graph, c: &AlternatingCycle) -> Result<(), Violation> {
    if !c.0.closed {
        return Err(Violation::NotClosed);
    }
    verify_trail(g, &c.0)?;
    let mut seen = HashSet::new();
    for v in c.vertices(g) {
        if !seen.insert(v) {
            return Err(Violation::VertexRepeated(v));
        }
    }
    Ok(())
}

pub fn verify_eulerian_factor(g: &Graph, f: &EulerianFactor) -> Result<(), Violation> {
    let mut owner = vec![usize::MAX; g.n()];
    for (pi, part) in f.parts.iter().enumerate() {
        for &v in &part.vertices {
            if v >= g.n() {
                return Err(Violation::DanglingVertex(v));
            }
            if owner[v] != usize::MAX {
                return Err(Violation::PartsOverlap(v));
            }
            owner[v] = pi;
        }
    }
    if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
        return Err(Violation::VertexUncovered(v));
    }
    for (pi, part) in f.parts.iter().enumerate() {
        if !part.trail.closed {
            return Err(Violation::NotClosed);
        }
        verify_trail(g, &part.trail)?;
        for &e in &part.trail.edges {
            let edge = g.edge(e);
            if owner[edge.u] != pi || owner[edge.v] != pi {
                return Err(Violation::EdgeLeavesPart { part: pi, edge: e });
            }
        }
        let visited = part.trail.vertex_set(g);
        for &v in &visited {
            if owner[v] != pi {
                return Err(Violation::TrailLeavesPart {
                    part: pi,
                    vertex: v,
                });
            }
        }
        for &v in &part.vertices {
            if visited.binary_search(&v).is_err() {
                return Err(Violation::PartNotSpanned {
                    part: pi,
                    vertex: v,
                });
            }
        }
    }
    Ok(())
}

pub fn verify_cycle_factor(g: &Graph, f: &CycleFactor) -> Result<(), Violation> {
    let mut covered = vec![false; g.n()];
    for c in &f.cycles {
        verify_cycle(g, c)?;
        for v in c.vertices(g) {
            if covered[v] {
                return Err(Violation::PartsOverlap(v));
            }
            covered[v] = true;
        }
    }
    if let Some(v) = covered.iter().position(|&c| !c) {
        return Err(Violation::VertexUncovered(v));
    }
    Ok(())
}

/// Dispatches to the verifier of the witness kind.
pub fn verify_witness(g: &Graph, w: &Witness) -> Result<(), Violation> {
    match w {
        Witness::Trail(t) => verify_trail(g, t),
        Witness::Cycle(c) => verify_cycle(g, c),
        Witness::EulerianFactor(f) => verify_eulerian_factor(g, f),
        Witness::CycleFactor(f) => verify_cycle_factor(g, f),
    }
}

/// A closed trail that visits every vertex of `g`.
pub fn is_spanning_closed_trail(g: &Graph, t: &AlternatingTrail) -> bool {
    t.closed && verify_trail(g, t).is_ok() && t.vertex_set(g).len() == g.n()
}

/// Builds an alternating cycle from a vertex cycle `v0 v1 ... v_{k-1} v0`
/// picking, for each consecutive pair, an edge of the alternating colour.
/// Used by fixtures and tests.
pub fn cycle_through(g: &Graph, vs: &[VertexIdx], first: Colour) -> Option<AlternatingCycle> {
    let mut edges = Vec::with_capacity(vs.len());
    let mut c = first;
    for i in 0..vs.len() {
        let e = g.edge_with_colour(vs[i], vs[(i + 1) % vs.len()], c)?;
        edges.push(e);
        c = c.other();
    }
    let cyc = AlternatingCycle(AlternatingTrail::new(vs[0], edges, true));
    verify_cycle(g, &cyc).ok()?;
    Some(cyc)
}

/// Walks `vs` as a trail, picking for each step the first unused edge of the
/// required alternating colour.
pub fn trail_through(
    g: &Graph,
    vs: &[VertexIdx],
    first: Colour,
    closed: bool,
) -> Option<AlternatingTrail> {
    let mut used = HashSet::new();
    let mut edges = Vec::new();
    let mut c = first;
    for w in vs.windows(2) {
        let e = g
            .edges_between(w[0], w[1])
            .iter()
            .copied()
            .find(|&e| g.colour(e) == c && !used.contains(&e))?;
        used.insert(e);
        edges.push(e);
        c = c.other();
    }
    let t = AlternatingTrail::new(vs[0], edges, closed);
    verify_trail(g, &t).ok()?;
    Some(t)
}
