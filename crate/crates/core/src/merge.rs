//! Merging pairs of disjoint alternating cycles in extensions of M-closed
//! graphs, and the alternating hamiltonian cycle algorithm built on it.
//!
//! A pair is merged by one of three moves: the splice at a pair of similar
//! vertices, the exchange of two equally coloured cycle edges for two equally
//! coloured chords (`merge_parallel_chords`), or a small exhaustive exchange
//! around the point where the chord chase stops. When the chase runs a full
//! period the pair is reported as dominated, with a certificate that is
//! checked before it is returned.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::connect::is_colour_connected;
use crate::error::{Error, Result};
use crate::factor::alternating_cycle_factor;
use crate::graph::{Colour, EdgeIdx, Graph, VertexIdx};
use crate::structure::{is_extension_of_m_closed, similar, similarity_partition};
use crate::witness::{verify_cycle, AlternatingCycle, AlternatingTrail};

/// `C_1 ->c C_2`: the vertices of the dominating object alternate between
/// c-vertices (odd positions of `sequence`) and c'-vertices, every vertex is
/// joined to every vertex of the dominated object, c-vertices only in colour
/// `colour` and c'-vertices only in the other colour; edges among c-vertices
/// have colour `colour`, edges among c'-vertices the other colour.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DominationCertificate {
    pub dominating: usize,
    pub dominated: usize,
    pub colour: Colour,
    /// Vertex sequence `x_1 x_2 ... x_2p` of the dominating cycle or trail.
    pub sequence: Vec<VertexIdx>,
    /// Vertex set of the dominated cycle or trail.
    pub other: Vec<VertexIdx>,
}

impl DominationCertificate {
    /// Vertices at odd positions (`x_1`, `x_3`, ...), deduplicated.
    pub fn c_vertices(&self) -> Vec<VertexIdx> {
        self.class(0)
    }

    pub fn other_colour_vertices(&self) -> Vec<VertexIdx> {
        self.class(1)
    }

    fn class(&self, parity: usize) -> Vec<VertexIdx> {
        let mut vs: Vec<VertexIdx> = self
            .sequence
            .iter()
            .skip(parity)
            .step_by(2)
            .copied()
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Checks all conditions; the error names the first one that fails.
    pub fn verify(&self, g: &Graph) -> std::result::Result<(), String> {
        if self.sequence.is_empty() || self.sequence.len() % 2 != 0 {
            return Err("sequence must have positive even length".into());
        }
        let (cs, ds) = (self.c_vertices(), self.other_colour_vertices());
        if let Some(v) = cs.iter().find(|v| ds.binary_search(v).is_ok()) {
            return Err(format!("vertex {v} sits at both parities"));
        }
        if let Some(v) = self.other.iter().find(|v| self.sequence.contains(v)) {
            return Err(format!("vertex {v} lies on both objects"));
        }
        let want = |c: Colour| c.number();
        for (set, c) in [(&cs, self.colour), (&ds, self.colour.other())] {
            for &x in set.iter() {
                for &y in &self.other {
                    let mask = g.colour_mask(x, y);
                    if mask == 0 {
                        return Err(format!("{x} and {y} are not adjacent"));
                    }
                    if mask != want(c) {
                        return Err(format!("edge {x}{y} has a colour other than {}", c.name()));
                    }
                }
                for &z in set.iter() {
                    let mask = g.colour_mask(x, z);
                    if mask != 0 && mask != want(c) {
                        return Err(format!(
                            "edge {x}{z} inside a parity class has a colour other than {}",
                            c.name()
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MergeOutcome {
    Merged(AlternatingCycle),
    Dominates(DominationCertificate),
    NoEdgeBetween,
}

/// A closed alternating walk with distinct vertices: `es[p]` joins `vs[p]`
/// and `vs[p + 1]` (indices modulo the length).
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Ring {
    pub vs: Vec<VertexIdx>,
    pub es: Vec<EdgeIdx>,
}

type Piece = (Vec<VertexIdx>, Vec<EdgeIdx>);

impl Ring {
    pub fn from_cycle(g: &Graph, c: &AlternatingCycle) -> Ring {
        Ring {
            vs: c.vertices(g),
            es: c.0.edges.clone(),
        }
    }

    pub fn to_cycle(&self) -> AlternatingCycle {
        AlternatingCycle(AlternatingTrail::new(self.vs[0], self.es.clone(), true))
    }

    fn len(&self) -> usize {
        self.vs.len()
    }

    fn v(&self, p: usize) -> VertexIdx {
        self.vs[p % self.len()]
    }

    fn e(&self, p: usize) -> EdgeIdx {
        self.es[p % self.len()]
    }

    fn reversed(&self) -> Ring {
        let l = self.len();
        Ring {
            vs: (0..l).map(|p| self.vs[(l - p) % l]).collect(),
            es: (0..l).map(|p| self.es[(2 * l - p - 1) % l]).collect(),
        }
    }

    /// Oriented so that the edge leaving position `p` has colour `c`; returns
    /// the ring and the new position of the same vertex.
    fn oriented(&self, g: &Graph, p: usize, c: Colour) -> (Ring, usize) {
        if g.colour(self.es[p]) == c {
            (self.clone(), p)
        } else {
            (self.reversed(), (self.len() - p) % self.len())
        }
    }

    /// `steps` edges from position `from`, forwards or backwards.
    fn walk(&self, from: usize, steps: usize, forward: bool) -> Piece {
        let l = self.len();
        let mut vs = Vec::with_capacity(steps + 1);
        let mut es = Vec::with_capacity(steps);
        for t in 0..=steps {
            if forward {
                vs.push(self.v(from + t));
                if t < steps {
                    es.push(self.e(from + t));
                }
            } else {
                vs.push(self.v(from + l * (steps + 1) - t));
                if t < steps {
                    es.push(self.e(from + l * (steps + 1) - t - 1));
                }
            }
        }
        (vs, es)
    }

    fn position(&self, v: VertexIdx) -> Option<usize> {
        self.vs.iter().position(|&x| x == v)
    }
}

/// Closes the pieces into a ring using `connectors[i]` between the end of
/// piece `i` and the start of piece `i + 1` (cyclically).
fn chain(pieces: &[Piece], connectors: &[EdgeIdx]) -> Ring {
    let mut vs = Vec::new();
    let mut es = Vec::new();
    for (piece, &c) in pieces.iter().zip(connectors) {
        vs.extend_from_slice(&piece.0);
        es.extend_from_slice(&piece.1);
        es.push(c);
    }
    Ring { vs, es }
}

/// Shared state for one graph: similarity blocks and, when the graph is a
/// blow-up, the key identifying each edge's original (two edges with the same
/// key must not both be used).
pub(crate) struct Ctx<'a> {
    pub g: &'a Graph,
    block_of: Vec<usize>,
    keys: Option<&'a [EdgeIdx]>,
}

impl<'a> Ctx<'a> {
    pub fn new(g: &'a Graph, keys: Option<&'a [EdgeIdx]>) -> Ctx<'a> {
        Ctx {
            g,
            block_of: similarity_partition(g).block_of,
            keys,
        }
    }

    fn key(&self, e: EdgeIdx) -> usize {
        self.keys.map_or(e, |k| k[e])
    }

    fn connector(
        &self,
        x: VertexIdx,
        y: VertexIdx,
        c: Colour,
        blocked: &HashSet<usize>,
    ) -> Option<EdgeIdx> {
        self.g
            .edges_between(x, y)
            .iter()
            .copied()
            .find(|&e| self.g.colour(e) == c && !blocked.contains(&self.key(e)))
    }

    fn valid(&self, r: &Ring, expected: usize) -> bool {
        let mut keys: Vec<usize> = r.es.iter().map(|&e| self.key(e)).collect();
        keys.sort_unstable();
        keys.dedup();
        r.len() == expected && keys.len() == r.len() && verify_cycle(self.g, &r.to_cycle()).is_ok()
    }

    fn ring_keys(&self, r: &Ring, skip: &[usize]) -> impl Iterator<Item = usize> + '_ {
        let skip: Vec<usize> = skip.iter().map(|&p| p % r.len()).collect();
        let es = r.es.clone();
        es.into_iter()
            .enumerate()
            .filter(move |(p, _)| !skip.contains(p))
            .map(|(_, e)| self.key(e))
    }

    /// Removes the equally coloured edges at `p` of `r1` and `q` of `r2` and
    /// reconnects with two edges of that colour. With `crossed` false only the
    /// pairing `x_p y_q`, `x_{p+1} y_{q+1}` is tried.
    fn two_swap(&self, r1: &Ring, p: usize, r2: &Ring, q: usize, crossed: bool) -> Option<Ring> {
        let k = self.g.colour(r1.e(p));
        if self.g.colour(r2.e(q)) != k {
            return None;
        }
        let (l1, l2) = (r1.len(), r2.len());
        let (a, b) = (r1.v(p), r1.v(p + 1));
        let (u, w) = (r2.v(q), r2.v(q + 1));
        let mut blocked: HashSet<usize> = self
            .ring_keys(r1, &[p])
            .chain(self.ring_keys(r2, &[q]))
            .collect();
        let p1 = r1.walk(p + 1, l1 - 1, true);
        // a-u, back along r2 to w, w-b
        if let Some(au) = self.connector(a, u, k, &blocked) {
            blocked.insert(self.key(au));
            if let Some(wb) = self.connector(w, b, k, &blocked) {
                let ring = chain(&[p1.clone(), r2.walk(q, l2 - 1, false)], &[au, wb]);
                if self.valid(&ring, l1 + l2) {
                    return Some(ring);
                }
            }
            blocked.remove(&self.key(au));
        }
        if crossed {
            // a-w, forward along r2 to u, u-b
            if let Some(aw) = self.connector(a, w, k, &blocked) {
                blocked.insert(self.key(aw));
                if let Some(ub) = self.connector(u, b, k, &blocked) {
                    let ring = chain(&[p1, r2.walk(q + 1, l2 - 1, true)], &[aw, ub]);
                    if self.valid(&ring, l1 + l2) {
                        return Some(ring);
                    }
                }
            }
        }
        None
    }

    fn is_similar(&self, u: VertexIdx, v: VertexIdx) -> bool {
        self.block_of[u] == self.block_of[v]
    }

    /// Splice at similar vertices `r1.vs[p]`, `r2.vs[q]`.
    fn splice_similar(&self, r1: &Ring, p: usize, r2: &Ring, q: usize) -> Option<Ring> {
        for c in Colour::BOTH {
            let (o1, p1) = r1.oriented(self.g, p, c);
            let (o2, q2) = r2.oriented(self.g, q, c);
            // cut the c' edges entering the similar pair and cross over
            let (pp, qq) = (p1 + o1.len() - 1, q2 + o2.len() - 1);
            if let Some(r) = self.two_swap(&o1, pp, &o2, qq, true) {
                return Some(r);
            }
        }
        None
    }

    fn edge_between(&self, r1: &Ring, r2: &Ring) -> Option<(usize, usize, EdgeIdx)> {
        let pos2: HashMap<VertexIdx, usize> =
            r2.vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut best: Option<(usize, usize, EdgeIdx)> = None;
        for (p, &x) in r1.vs.iter().enumerate() {
            for &e in self.g.incident(x) {
                if let Some(&q) = pos2.get(&self.g.edge(e).other_end(x)) {
                    if best.is_none_or(|b| e < b.2) {
                        best = Some((p, q, e));
                    }
                }
            }
        }
        best
    }

    fn certificate(&self, r1: &Ring, r2: &Ring) -> Option<DominationCertificate> {
        for (dom, sub, ids) in [(r1, r2, (0, 1)), (r2, r1, (1, 0))] {
            for (s, colour) in [0, 1]
                .into_iter()
                .flat_map(|s| Colour::BOTH.map(|c| (s, c)))
            {
                let cert = DominationCertificate {
                    dominating: ids.0,
                    dominated: ids.1,
                    colour,
                    sequence: (0..dom.len()).map(|t| dom.v(s + t)).collect(),
                    other: sub.vs.clone(),
                };
                if cert.verify(self.g).is_ok() {
                    return Some(cert);
                }
            }
        }
        None
    }

    /// Exhaustive exchange near `r1.vs[p]` and `r2.vs[q]`: cut up to three
    /// cycle edges within distance three on each side and reconnect the pieces
    /// by any edges.
    fn exchange(&self, r1: &Ring, p: usize, r2: &Ring, q: usize) -> Option<Ring> {
        const RADIUS: usize = 3;
        const MAX_CUTS: u32 = 3;
        let window = |r: &Ring, at: usize| -> Vec<usize> {
            let l = r.len();
            if l <= 2 * RADIUS + 1 {
                return (0..l).collect();
            }
            (0..=2 * RADIUS)
                .map(|t| (at + l - RADIUS + t) % l)
                .collect()
        };
        let (w1, w2) = (window(r1, p), window(r2, q));
        let masks = |w: &Vec<usize>| -> Vec<Vec<usize>> {
            let mut out: Vec<Vec<usize>> = (1u32..1 << w.len())
                .filter(|m| m.count_ones() <= MAX_CUTS)
                .map(|m| {
                    let mut cuts: Vec<usize> = (0..w.len())
                        .filter(|&i| m & (1 << i) != 0)
                        .map(|i| w[i])
                        .collect();
                    cuts.sort_unstable();
                    cuts
                })
                .collect();
            out.sort_by_key(Vec::len);
            out
        };
        let (m1, m2) = (masks(&w1), masks(&w2));
        let expected = r1.len() + r2.len();
        let mut by_size: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        for c1 in &m1 {
            for c2 in &m2 {
                by_size.push((c1.clone(), c2.clone()));
            }
        }
        by_size.sort_by_key(|(a, b)| a.len() + b.len());
        for (c1, c2) in by_size {
            let mut pieces = segments(r1, &c1);
            pieces.extend(segments(r2, &c2));
            let blocked: HashSet<usize> = self
                .ring_keys(r1, &c1)
                .chain(self.ring_keys(r2, &c2))
                .collect();
            if let Some(ring) = self.link(&pieces, blocked) {
                if self.valid(&ring, expected) {
                    return Some(ring);
                }
            }
        }
        None
    }

    /// Orders and orients the pieces into one alternating ring.
    fn link(&self, pieces: &[Piece], mut blocked: HashSet<usize>) -> Option<Ring> {
        let g = self.g;
        let n = pieces.len();
        let mut order: Vec<Piece> = vec![pieces[0].clone()];
        let mut connectors: Vec<EdgeIdx> = Vec::new();
        let mut used = vec![false; n];
        used[0] = true;
        #[allow(clippy::too_many_arguments)]
        fn go(
            ctx: &Ctx,
            g: &Graph,
            pieces: &[Piece],
            used: &mut [bool],
            order: &mut Vec<Piece>,
            connectors: &mut Vec<EdgeIdx>,
            blocked: &mut HashSet<usize>,
            last: Option<Colour>,
        ) -> bool {
            let cur = *order.last().unwrap().0.last().unwrap();
            if order.len() == pieces.len() {
                let first = &order[0];
                let start = first.0[0];
                let first_colour = first
                    .1
                    .first()
                    .map(|&e| g.colour(e))
                    .or_else(|| connectors.first().map(|&e| g.colour(e)));
                for c in Colour::BOTH {
                    if Some(c) == last || Some(c) == first_colour {
                        continue;
                    }
                    if let Some(e) = ctx.connector(cur, start, c, blocked) {
                        connectors.push(e);
                        return true;
                    }
                }
                return false;
            }
            for i in 0..pieces.len() {
                if used[i] {
                    continue;
                }
                let single = pieces[i].1.is_empty();
                for forward in [true, false] {
                    if single && !forward {
                        continue;
                    }
                    let piece = if forward {
                        pieces[i].clone()
                    } else {
                        let mut p = pieces[i].clone();
                        p.0.reverse();
                        p.1.reverse();
                        p
                    };
                    let entry = piece.1.first().map(|&e| g.colour(e));
                    let exit = piece.1.last().map(|&e| g.colour(e));
                    for c in Colour::BOTH {
                        if Some(c) == last || Some(c) == entry {
                            continue;
                        }
                        let Some(e) = ctx.connector(cur, piece.0[0], c, blocked) else {
                            continue;
                        };
                        let k = ctx.key(e);
                        blocked.insert(k);
                        connectors.push(e);
                        used[i] = true;
                        order.push(piece.clone());
                        if go(
                            ctx,
                            g,
                            pieces,
                            used,
                            order,
                            connectors,
                            blocked,
                            Some(exit.unwrap_or(c)),
                        ) {
                            return true;
                        }
                        order.pop();
                        used[i] = false;
                        connectors.pop();
                        blocked.remove(&k);
                    }
                }
            }
            false
        }
        let last = order[0].1.last().map(|&e| g.colour(e));
        if go(
            self,
            g,
            pieces,
            &mut used,
            &mut order,
            &mut connectors,
            &mut blocked,
            last,
        ) {
            Some(chain(&order, &connectors))
        } else {
            None
        }
    }

    /// Core of `merge_cycles` on rings of this context's graph.
    pub fn merge(&self, r1: &Ring, r2: &Ring) -> Result<PairOutcome> {
        let Some((p0, q0, e0)) = self.edge_between(r1, r2) else {
            return Ok(PairOutcome::NoEdgeBetween);
        };
        for (p, &x) in r1.vs.iter().enumerate() {
            for (q, &y) in r2.vs.iter().enumerate() {
                if self.is_similar(x, y) {
                    if let Some(r) = self.splice_similar(r1, p, r2, q) {
                        return Ok(PairOutcome::Merged(r));
                    }
                }
            }
        }
        // chord chase
        let c = self.g.colour(e0);
        let (o1, i) = r1.oriented(self.g, p0, c);
        let (o2, j) = r2.oriented(self.g, q0, c);
        let period = lcm(o1.len(), o2.len());
        let mut broke = None;
        let mut steps = 0;
        for t in 0..period {
            steps += 1;
            let (a, b) = (i + t, j + t);
            let ct = if t % 2 == 0 { c } else { c.other() };
            let mask = self.g.colour_mask(o1.v(a + 1), o2.v(b + 1));
            if mask & ct.number() != 0 {
                if let Some(r) = self.two_swap(&o1, a % o1.len(), &o2, b % o2.len(), false) {
                    return Ok(PairOutcome::Merged(r));
                }
            }
            if mask & ct.other().number() == 0 {
                broke = Some((a % o1.len(), b % o2.len()));
                break;
            }
        }
        assert!(steps <= period);
        if let Some((a, b)) = broke {
            if let Some(r) = self.exchange(&o1, a, &o2, b) {
                return Ok(PairOutcome::Merged(r));
            }
        }
        if let Some(cert) = self.certificate(r1, r2) {
            return Ok(PairOutcome::Dominates(cert));
        }
        // defensive: exchanges around every joining edge
        for (p, &x) in r1.vs.iter().enumerate() {
            for &e in self.g.incident(x) {
                if let Some(q) = r2.position(self.g.edge(e).other_end(x)) {
                    if let Some(r) = self.exchange(r1, p, r2, q) {
                        return Ok(PairOutcome::Merged(r));
                    }
                }
            }
        }
        Err(Error::Internal(format!(
            "cycles of lengths {} and {} neither merge nor dominate",
            r1.len(),
            r2.len()
        )))
    }
}

/// Pieces left after deleting the ring edges at the sorted positions `cuts`.
fn segments(r: &Ring, cuts: &[usize]) -> Vec<Piece> {
    let l = r.len();
    (0..cuts.len())
        .map(|i| {
            let from = cuts[i] + 1;
            let to = if i + 1 < cuts.len() {
                cuts[i + 1]
            } else {
                cuts[0] + l
            };
            r.walk(from, to - from, true)
        })
        .collect()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[derive(Clone, Debug)]
pub(crate) enum PairOutcome {
    Merged(Ring),
    Dominates(DominationCertificate),
    NoEdgeBetween,
}

fn checked_pair(g: &Graph, c1: &AlternatingCycle, c2: &AlternatingCycle) -> Result<(Ring, Ring)> {
    for (i, c) in [c1, c2].into_iter().enumerate() {
        verify_cycle(g, c).map_err(|v| Error::Precondition(format!("cycle {}: {v}", i + 1)))?;
    }
    let (r1, r2) = (Ring::from_cycle(g, c1), Ring::from_cycle(g, c2));
    if r1.vs.iter().any(|v| r2.vs.contains(v)) {
        return Err(Error::Precondition("cycles share a vertex".into()));
    }
    Ok((r1, r2))
}

/// Splices two disjoint alternating cycles at similar vertices `x_i` of `c1`
/// and `y_j` of `c2` (positions in their vertex sequences).
pub fn merge_similar(
    g: &Graph,
    c1: &AlternatingCycle,
    c2: &AlternatingCycle,
    i: usize,
    j: usize,
) -> Result<AlternatingCycle> {
    let (r1, r2) = checked_pair(g, c1, c2)?;
    if i >= r1.len() || j >= r2.len() {
        return Err(Error::Precondition("position out of range".into()));
    }
    let (x, y) = (r1.vs[i], r2.vs[j]);
    if !similar(g, x, y) {
        return Err(Error::NotSimilar(
            g.vertex_id(x).into(),
            g.vertex_id(y).into(),
        ));
    }
    let ctx = Ctx::new(g, None);
    ctx.splice_similar(&r1, i, &r2, j)
        .map(|r| r.to_cycle())
        .ok_or_else(|| Error::Internal("similar vertices without the splice edges".into()))
}

/// Replaces `x_i x_{i+1}` and `y_j y_{j+1}` by the chords `x_i y_j` and
/// `x_{i+1} y_{j+1}`, all four of one colour.
pub fn merge_parallel_chords(
    g: &Graph,
    c1: &AlternatingCycle,
    c2: &AlternatingCycle,
    i: usize,
    j: usize,
) -> Result<AlternatingCycle> {
    let (r1, r2) = checked_pair(g, c1, c2)?;
    if i >= r1.len() || j >= r2.len() {
        return Err(Error::Precondition("position out of range".into()));
    }
    let c = g.colour(r1.e(i));
    let pattern = g.colour(r2.e(j)) == c
        && g.edge_with_colour(r1.v(i), r2.v(j), c).is_some()
        && g.edge_with_colour(r1.v(i + 1), r2.v(j + 1), c).is_some();
    if !pattern {
        return Err(Error::Precondition(
            "cycle edges and chords do not share one colour".into(),
        ));
    }
    Ctx::new(g, None)
        .two_swap(&r1, i, &r2, j, false)
        .map(|r| r.to_cycle())
        .ok_or_else(|| Error::Internal("parallel chords failed to close".into()))
}

/// Merges two disjoint alternating cycles of an extension of an M-closed
/// graph into one on the union of their vertices, or certifies domination.
pub fn merge_cycles(
    g: &Graph,
    c1: &AlternatingCycle,
    c2: &AlternatingCycle,
) -> Result<MergeOutcome> {
    if is_extension_of_m_closed(g).is_none() {
        return Err(Error::NotExtensionOfMClosed);
    }
    let (r1, r2) = checked_pair(g, c1, c2)?;
    Ok(match Ctx::new(g, None).merge(&r1, &r2)? {
        PairOutcome::Merged(r) => MergeOutcome::Merged(r.to_cycle()),
        PairOutcome::Dominates(cert) => MergeOutcome::Dominates(cert),
        PairOutcome::NoEdgeBetween => MergeOutcome::NoEdgeBetween,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HamiltonianOutcome {
    Cycle(AlternatingCycle),
    NotColourConnected {
        counterexample: (VertexIdx, VertexIdx, Colour),
    },
    NoCycleFactor,
}

/// Rotates a closed trail to start at its smallest vertex with a red edge.
pub(crate) fn canonical_closed(g: &Graph, t: &AlternatingTrail) -> AlternatingTrail {
    let vs = t.vertices(g);
    let min = *vs.iter().min().expect("non-empty trail");
    let pos = (0..t.len()).find(|&p| vs[p] == min && g.colour(t.edges[p]) == Colour::Red);
    match pos {
        Some(p) => t.rotated(g, p),
        None => {
            let r = t.reversed(g);
            let rv = r.vertices(g);
            let p = (0..r.len())
                .find(|&p| rv[p] == min && g.colour(r.edges[p]) == Colour::Red)
                .unwrap_or(0);
            r.rotated(g, p)
        }
    }
}

/// Decides whether an extension of an M-closed graph has an alternating
/// hamiltonian cycle and builds one.
pub fn alternating_hamiltonian_cycle(g: &Graph) -> Result<HamiltonianOutcome> {
    if g.n() < 2 {
        return Err(Error::TooFewVertices);
    }
    if is_extension_of_m_closed(g).is_none() {
        return Err(Error::NotExtensionOfMClosed);
    }
    let Some(factor) = alternating_cycle_factor(g) else {
        return Ok(HamiltonianOutcome::NoCycleFactor);
    };
    let report = is_colour_connected(g)?;
    if let Some(counterexample) = report.counterexample {
        return Ok(HamiltonianOutcome::NotColourConnected { counterexample });
    }
    let ctx = Ctx::new(g, None);
    let rings: Vec<Ring> = factor
        .cycles
        .iter()
        .map(|c| Ring::from_cycle(g, c))
        .collect();
    let ring = merge_all(&ctx, rings)?;
    Ok(HamiltonianOutcome::Cycle(AlternatingCycle(
        canonical_closed(g, &ring.to_cycle().0),
    )))
}

/// Merges rings pairwise until one is left. Pairs are scanned by (shorter
/// length, smallest vertex); pairs found unmergeable are remembered until one
/// side changes.
pub(crate) fn merge_all(ctx: &Ctx, rings: Vec<Ring>) -> Result<Ring> {
    let mut live: Vec<(usize, Ring)> = rings.into_iter().enumerate().collect();
    let mut next_id = live.len();
    let mut stuck: HashSet<(usize, usize)> = HashSet::new();
    while live.len() > 1 {
        live.sort_by_key(|(_, r)| (r.len(), *r.vs.iter().min().unwrap()));
        let mut merged = None;
        'scan: for a in 0..live.len() {
            for b in a + 1..live.len() {
                let key = (live[a].0.min(live[b].0), live[a].0.max(live[b].0));
                if stuck.contains(&key) {
                    continue;
                }
                match ctx.merge(&live[a].1, &live[b].1)? {
                    PairOutcome::Merged(r) => {
                        merged = Some((a, b, r));
                        break 'scan;
                    }
                    _ => {
                        stuck.insert(key);
                    }
                }
            }
        }
        let Some((a, b, r)) = merged else {
            return Err(Error::Internal(format!(
                "{} cycles left and no pair merges",
                live.len()
            )));
        };
        live.remove(b);
        live.remove(a);
        live.push((next_id, r));
        next_id += 1;
    }
    Ok(live.pop().expect("at least one ring").1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connect::is_trail_colour_connected;
    use crate::graph::Colour::{Blue, Red};
    use crate::oracle::{oracle_ham_alternating, OracleBudget};
    use crate::reductions::{fixture, generate, Model};
    use crate::witness::cycle_through;

    fn v(g: &Graph, id: &str) -> VertexIdx {
        g.vertex(id).unwrap()
    }

    fn ids(g: &Graph, vs: &[&str]) -> Vec<VertexIdx> {
        vs.iter().map(|s| v(g, s)).collect()
    }

    #[test]
    fn needall_h_merges_its_factor() {
        let h = fixture("needall_h").unwrap();
        let out = alternating_hamiltonian_cycle(&h).unwrap();
        let HamiltonianOutcome::Cycle(c) = out else {
            panic!("{out:?}")
        };
        verify_cycle(&h, &c).unwrap();
        assert_eq!(c.len(), 8);
        let f = alternating_cycle_factor(&h).unwrap();
        if f.cycles.len() == 2 {
            let m = merge_cycles(&h, &f.cycles[0], &f.cycles[1]).unwrap();
            let MergeOutcome::Merged(c) = m else {
                panic!("{m:?}")
            };
            assert_eq!(c.vertices(&h).len(), 8);
        }
    }

    #[test]
    fn digons_on_similar_vertices() {
        // a, b similar; digons a-x and b-y with x, y similar as well
        let g = Graph::from_triples(
            &["a", "b", "x", "y"],
            &[
                ("a", "x", Red),
                ("a", "x", Blue),
                ("b", "y", Red),
                ("b", "y", Blue),
                ("a", "y", Red),
                ("a", "y", Blue),
                ("b", "x", Red),
                ("b", "x", Blue),
            ],
        )
        .unwrap();
        let c1 = cycle_through(&g, &ids(&g, &["a", "x"]), Red).unwrap();
        let c2 = cycle_through(&g, &ids(&g, &["b", "y"]), Red).unwrap();
        let m = merge_similar(&g, &c1, &c2, 0, 0).unwrap();
        verify_cycle(&g, &m).unwrap();
        assert_eq!(m.len(), 4);
        assert!(matches!(
            merge_similar(&g, &c1, &c2, 0, 1),
            Err(Error::NotSimilar(..))
        ));
    }

    #[test]
    fn parallel_chords() {
        // two 4-cycles a b c d and p q r s with red ab, pq and red chords ap, bq
        let g = Graph::from_triples(
            &["a", "b", "c", "d", "p", "q", "r", "s"],
            &[
                ("a", "b", Red),
                ("b", "c", Blue),
                ("c", "d", Red),
                ("d", "a", Blue),
                ("p", "q", Red),
                ("q", "r", Blue),
                ("r", "s", Red),
                ("s", "p", Blue),
                ("a", "p", Red),
                ("b", "q", Red),
                ("c", "r", Blue),
            ],
        )
        .unwrap();
        let c1 = cycle_through(&g, &ids(&g, &["a", "b", "c", "d"]), Red).unwrap();
        let c2 = cycle_through(&g, &ids(&g, &["p", "q", "r", "s"]), Red).unwrap();
        let m = merge_parallel_chords(&g, &c1, &c2, 0, 0).unwrap();
        verify_cycle(&g, &m).unwrap();
        assert_eq!(m.len(), 8);
        assert!(matches!(
            merge_parallel_chords(&g, &c1, &c2, 1, 1),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn separate_components() {
        let g = Graph::from_indexed(4, &[(0, 1, Red), (0, 1, Blue), (2, 3, Red), (2, 3, Blue)])
            .unwrap();
        let c1 = cycle_through(&g, &[0, 1], Red).unwrap();
        let c2 = cycle_through(&g, &[2, 3], Red).unwrap();
        assert_eq!(
            merge_cycles(&g, &c1, &c2).unwrap(),
            MergeOutcome::NoEdgeBetween
        );
    }

    /// Two digons `x1 x2` and `y1 y2` with x1 a red vertex and x2 a blue
    /// vertex towards the y's.
    fn dominated_pair() -> Graph {
        Graph::from_triples(
            &["x1", "x2", "y1", "y2"],
            &[
                ("x1", "x2", Red),
                ("x1", "x2", Blue),
                ("y1", "y2", Red),
                ("y1", "y2", Blue),
                ("x1", "y1", Red),
                ("x1", "y2", Red),
                ("x2", "y1", Blue),
                ("x2", "y2", Blue),
            ],
        )
        .unwrap()
    }

    #[test]
    fn domination_is_certified() {
        let g = dominated_pair();
        assert!(is_extension_of_m_closed(&g).is_some());
        let c1 = cycle_through(&g, &ids(&g, &["x1", "x2"]), Red).unwrap();
        let c2 = cycle_through(&g, &ids(&g, &["y1", "y2"]), Red).unwrap();
        let MergeOutcome::Dominates(cert) = merge_cycles(&g, &c1, &c2).unwrap() else {
            panic!()
        };
        cert.verify(&g).unwrap();
        assert!(!is_trail_colour_connected(&g).unwrap().connected);
        assert!(oracle_ham_alternating(&g, &OracleBudget::default())
            .unwrap()
            .is_none());
        let mut bad = cert.clone();
        bad.colour = bad.colour.other();
        assert!(bad.verify(&g).is_err());
    }

    #[test]
    fn halfm_is_rejected() {
        assert_eq!(
            alternating_hamiltonian_cycle(&fixture("halfm").unwrap()),
            Err(Error::NotExtensionOfMClosed)
        );
    }

    #[test]
    fn agrees_with_oracle_on_blowups() {
        let budget = OracleBudget::with_limits(10, 64);
        for seed in 0..120 {
            let g = generate(
                &Model::MClosedBlowup {
                    n: 2 + (seed as usize % 7),
                },
                seed,
            )
            .unwrap();
            let fast = alternating_hamiltonian_cycle(&g).unwrap();
            let slow = oracle_ham_alternating(&g, &budget).unwrap();
            if let HamiltonianOutcome::Cycle(c) = &fast {
                verify_cycle(&g, c).unwrap();
                assert_eq!(c.len(), g.n());
            }
            assert_eq!(
                matches!(fast, HamiltonianOutcome::Cycle(_)),
                slow.is_some(),
                "seed {seed}"
            );
        }
    }
}
