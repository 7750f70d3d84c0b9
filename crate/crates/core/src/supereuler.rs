//! Spanning closed alternating trails in extensions of M-closed graphs,
//! trail merging moves, the correspondence between bipartite 2-edge-coloured
//! graphs and bipartite digraphs, and the complete bipartite decision.
//!
//! Two closed trails are merged by blowing up every vertex into as many
//! independent copies as it has visits; the trails become disjoint cycles of
//! the blow-up, which are merged with the cycle machinery and contracted back.
//! An edge of the original graph may have several copies in the blow-up, and
//! at most one of them is used, so that the contracted walk stays a trail.

use std::collections::HashMap;

use serde::Serialize;

use crate::connect::{is_colour_connected, is_trail_colour_connected};
use crate::error::{Error, GraphError, Result};
use crate::factor::{alternating_cycle_factor, eulerian_factor};
use crate::graph::{Colour, EdgeIdx, Graph, GraphBuilder, VertexIdx};
use crate::merge::{canonical_closed, Ctx, DominationCertificate, PairOutcome, Ring};
use crate::structure::{blow_up_internal, complete_bipartite_parts, is_extension_of_m_closed};
use crate::witness::{verify_trail, AlternatingTrail};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TrailMergeOutcome {
    Merged(AlternatingTrail),
    Dominates(DominationCertificate),
    NoEdgeBetween,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SupereulerianOutcome {
    SpanningTrail(AlternatingTrail),
    NoEulerianFactor,
    NotTrailColourConnected {
        counterexample: (VertexIdx, VertexIdx, Colour),
    },
}

fn check_closed(g: &Graph, t: &AlternatingTrail, name: &str) -> Result<()> {
    if !t.closed || t.is_empty() {
        return Err(Error::Precondition(format!(
            "{name} must be a closed trail"
        )));
    }
    verify_trail(g, t).map_err(|v| Error::Precondition(format!("{name}: {v}")))
}

/// Merges two vertex-disjoint closed alternating trails of an extension of an
/// M-closed graph into one on the union of their vertices, or certifies that
/// one dominates the other.
pub fn merge_trails_pair(
    g: &Graph,
    t1: &AlternatingTrail,
    t2: &AlternatingTrail,
) -> Result<TrailMergeOutcome> {
    if is_extension_of_m_closed(g).is_none() {
        return Err(Error::NotExtensionOfMClosed);
    }
    check_closed(g, t1, "first trail")?;
    check_closed(g, t2, "second trail")?;
    let s1 = t1.vertex_set(g);
    if t2.vertex_set(g).iter().any(|v| s1.binary_search(v).is_ok()) {
        return Err(Error::Precondition("trails share a vertex".into()));
    }
    merge_pair(g, t1, t2)
}

fn merge_pair(
    g: &Graph,
    t1: &AlternatingTrail,
    t2: &AlternatingTrail,
) -> Result<TrailMergeOutcome> {
    let mut keep = t1.vertex_set(g);
    keep.extend(t2.vertex_set(g));
    keep.sort_unstable();
    let (sub, vmap, emap) = g.induced(&keep);
    let mut local = vec![usize::MAX; g.n()];
    for (i, &v) in vmap.iter().enumerate() {
        local[v] = i;
    }
    let edge_local: HashMap<EdgeIdx, EdgeIdx> =
        emap.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut visits = vec![0; sub.n()];
    for t in [t1, t2] {
        for (v, &k) in t.visit_counts(g).iter().enumerate() {
            if k > 0 {
                visits[local[v]] = k;
            }
        }
    }
    let blow = blow_up_internal(&sub, &visits);
    let h = &blow.graph;
    let to_ring = |t: &AlternatingTrail| -> Ring {
        let seq = t.vertices(g);
        let mut seen = vec![0; sub.n()];
        let vs: Vec<VertexIdx> = seq[..t.len()]
            .iter()
            .map(|&v| {
                let lv = local[v];
                seen[lv] += 1;
                blow.copies[lv][seen[lv] - 1]
            })
            .collect();
        let es = (0..t.len())
            .map(|p| {
                let want = edge_local[&t.edges[p]];
                *h.edges_between(vs[p], vs[(p + 1) % vs.len()])
                    .iter()
                    .find(|&&e| blow.edge_origin[e] == want)
                    .expect("every trail edge has a copy between the chosen copies")
            })
            .collect();
        Ring { vs, es }
    };
    let (r1, r2) = (to_ring(t1), to_ring(t2));
    let ctx = Ctx::new(h, Some(&blow.edge_origin));
    let orig_vertex = |x: VertexIdx| vmap[blow.vertex_origin[x].0];
    Ok(match ctx.merge(&r1, &r2)? {
        PairOutcome::NoEdgeBetween => TrailMergeOutcome::NoEdgeBetween,
        PairOutcome::Merged(r) => {
            let edges = r.es.iter().map(|&e| emap[blow.edge_origin[e]]).collect();
            let t = AlternatingTrail::new(orig_vertex(r.vs[0]), edges, true);
            verify_trail(g, &t).map_err(|v| Error::Internal(format!("contracted trail: {v}")))?;
            TrailMergeOutcome::Merged(t)
        }
        PairOutcome::Dominates(cert) => {
            let mut other: Vec<VertexIdx> = cert.other.iter().map(|&x| orig_vertex(x)).collect();
            other.sort_unstable();
            other.dedup();
            let cert = DominationCertificate {
                sequence: cert.sequence.iter().map(|&x| orig_vertex(x)).collect(),
                other,
                ..cert
            };
            cert.verify(g)
                .map_err(|m| Error::Internal(format!("contracted certificate: {m}")))?;
            TrailMergeOutcome::Dominates(cert)
        }
    })
}

/// Colour of the edges from `v` (on the dominating trail) to the dominated
/// trail.
fn colour_towards(cert: &DominationCertificate, v: VertexIdx) -> Option<Colour> {
    if cert.c_vertices().binary_search(&v).is_ok() {
        Some(cert.colour)
    } else if cert.other_colour_vertices().binary_search(&v).is_ok() {
        Some(cert.colour.other())
    } else {
        None
    }
}

/// The closed trail started at an occurrence of `v` whose first edge has
/// colour `first`.
fn start_at(
    g: &Graph,
    t: &AlternatingTrail,
    v: VertexIdx,
    first: Colour,
) -> Option<AlternatingTrail> {
    for cand in [t.clone(), t.reversed(g)] {
        let vs = cand.vertices(g);
        if let Some(p) = (0..cand.len()).find(|&p| vs[p] == v && g.colour(cand.edges[p]) == first) {
            return Some(cand.rotated(g, p));
        }
    }
    None
}

fn cert_matches(
    g: &Graph,
    cert: &DominationCertificate,
    from: &AlternatingTrail,
    to: &AlternatingTrail,
) -> bool {
    let mut seq = cert.sequence.clone();
    seq.sort_unstable();
    seq.dedup();
    cert.verify(g).is_ok() && seq == from.vertex_set(g) && cert.other == to.vertex_set(g)
}

/// Merges three closed trails with `ts[0] -> ts[1] -> ts[2] -> ts[0]`, each
/// arc given by `certs[i]` (from `ts[i]` to `ts[(i + 1) % 3]`).
pub fn merge_trails_3cycle(
    g: &Graph,
    ts: [&AlternatingTrail; 3],
    certs: [&DominationCertificate; 3],
) -> Result<AlternatingTrail> {
    for i in 0..3 {
        if !cert_matches(g, certs[i], ts[i], ts[(i + 1) % 3]) {
            return Err(Error::Precondition(format!(
                "certificate {} does not describe trail {} -> trail {}",
                i + 1,
                i + 1,
                (i + 2) % 3 + 1
            )));
        }
    }
    let pick = |i: usize, want: Option<Colour>| -> Option<VertexIdx> {
        ts[i]
            .vertex_set(g)
            .into_iter()
            .find(|&v| want.is_none_or(|c| colour_towards(certs[i], v) == Some(c)))
    };
    let inconsistent = || Error::Internal("certificates inconsistent with the trails".into());
    let va = pick(0, None).ok_or_else(inconsistent)?;
    let a = colour_towards(certs[0], va).ok_or_else(inconsistent)?;
    // a -> b in colour a, b -> c in the other colour, c -> a in colour a
    let vb = pick(1, Some(a.other())).ok_or_else(inconsistent)?;
    let vc = pick(2, Some(a)).ok_or_else(inconsistent)?;
    let ta = start_at(g, ts[0], va, a).ok_or_else(inconsistent)?;
    let tb = start_at(g, ts[1], vb, a.other()).ok_or_else(inconsistent)?;
    let tc = start_at(g, ts[2], vc, a).ok_or_else(inconsistent)?;
    let before = |t: &AlternatingTrail| t.vertices(g)[t.len() - 1];
    let (pa, pb, pc) = (before(&ta), before(&tb), before(&tc));
    let hops = [
        (va, vb, a),
        (vb, vc, a.other()),
        (vc, pa, a),
        (pa, pb, a.other()),
        (pb, pc, a),
        (pc, va, a.other()),
    ];
    let mut cross = Vec::new();
    for (x, y, c) in hops {
        cross.push(g.edge_with_colour(x, y, c).ok_or_else(inconsistent)?);
    }
    let mut edges = ta.edges.clone();
    edges.push(cross[0]);
    edges.extend_from_slice(&tb.edges);
    edges.push(cross[1]);
    edges.extend_from_slice(&tc.edges);
    edges.extend_from_slice(&cross[2..]);
    let t = AlternatingTrail::new(va, edges, true);
    verify_trail(g, &t).map_err(|v| Error::Internal(format!("three-trail merge: {v}")))?;
    Ok(t)
}

/// Detour from `v` through all of `t`: leave `v` in colour `c`, walk `t`
/// minus one of its `c`-edges, return to `v` in colour `c`.
fn excursion(g: &Graph, v: VertexIdx, t: &AlternatingTrail, c: Colour) -> Option<Vec<EdgeIdx>> {
    let vs = t.vertices(g);
    let l = t.len();
    for p in 0..l {
        if g.colour(t.edges[p]) != c {
            continue;
        }
        // drop edge p, walk from its far end around to its near end
        let (near, far) = (vs[p], vs[p + 1]);
        let (Some(go), Some(back)) = (
            g.edge_with_colour(v, far, c),
            g.edge_with_colour(near, v, c),
        ) else {
            continue;
        };
        let mut out = vec![go];
        out.extend((1..l).map(|k| t.edges[(p + k) % l]));
        out.push(back);
        return Some(out);
    }
    None
}

/// Merges `t1`, `t2`, `t3` through `v` on `t1`, where every edge from `v` to
/// `t2` has one colour and every edge from `v` to `t3` the other.
pub fn merge_trails_transitive(
    g: &Graph,
    t1: &AlternatingTrail,
    t2: &AlternatingTrail,
    t3: &AlternatingTrail,
    v: VertexIdx,
) -> Result<AlternatingTrail> {
    let colour_to = |t: &AlternatingTrail| -> Option<Colour> {
        let vs = t.vertex_set(g);
        let mut mask = 0;
        for &w in &vs {
            let m = g.colour_mask(v, w);
            if m == 0 {
                return None;
            }
            mask |= m;
        }
        Colour::BOTH.into_iter().find(|c| c.number() == mask)
    };
    if !t1.vertex_set(g).contains(&v) {
        return Err(Error::Precondition("v must lie on the first trail".into()));
    }
    let (Some(c), Some(d)) = (colour_to(t2), colour_to(t3)) else {
        return Err(Error::Precondition(
            "v must be joined to the other trails in one colour each".into(),
        ));
    };
    if c == d {
        return Err(Error::Precondition(
            "v sends the same colour to both trails".into(),
        ));
    }
    let to2 = excursion(g, v, t2, c)
        .ok_or_else(|| Error::Internal("no excursion through the second trail".into()))?;
    let to3 = excursion(g, v, t3, d)
        .ok_or_else(|| Error::Internal("no excursion through the third trail".into()))?;
    let home = start_at(g, t1, v, c)
        .ok_or_else(|| Error::Internal("first trail does not pass v".into()))?;
    let mut edges = to2;
    edges.extend(to3);
    edges.extend_from_slice(&home.edges);
    let t = AlternatingTrail::new(v, edges, true);
    verify_trail(g, &t).map_err(|v| Error::Internal(format!("transitive merge: {v}")))?;
    Ok(t)
}

/// Domination arcs among the live trails of one round.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrailDominationTournament {
    pub nodes: Vec<usize>,
    /// `(i, j, c)`: trail `i` dominates trail `j`, and the smallest vertex of
    /// trail `i` sends colour `c` to trail `j`.
    pub arcs: Vec<(usize, usize, Colour)>,
}

impl TrailDominationTournament {
    fn has_arc(&self, i: usize, j: usize) -> bool {
        self.arcs.iter().any(|&(a, b, _)| a == i && b == j)
    }

    /// First directed triangle in node order.
    pub fn three_cycle(&self) -> Option<(usize, usize, usize)> {
        for &(a, b, _) in &self.arcs {
            for &(b2, c, _) in &self.arcs {
                if b2 == b && self.has_arc(c, a) {
                    return Some((a, b, c));
                }
            }
        }
        None
    }

    /// Nodes ordered by decreasing out-degree (the transitive order when the
    /// arcs form a transitive tournament).
    pub fn order(&self) -> Vec<usize> {
        let mut nodes = self.nodes.clone();
        nodes.sort_by_key(|&i| std::cmp::Reverse(self.arcs.iter().filter(|a| a.0 == i).count()));
        nodes
    }
}

/// Decides whether an extension of an M-closed graph has a spanning closed
/// alternating trail and builds one.
pub fn supereulerian(g: &Graph) -> Result<SupereulerianOutcome> {
    if g.n() == 0 {
        return Err(Error::TooFewVertices);
    }
    if is_extension_of_m_closed(g).is_none() {
        return Err(Error::NotExtensionOfMClosed);
    }
    let Some(factor) = eulerian_factor(g) else {
        return Ok(SupereulerianOutcome::NoEulerianFactor);
    };
    let report = is_trail_colour_connected(g)?;
    if let Some(counterexample) = report.counterexample {
        return Ok(SupereulerianOutcome::NotTrailColourConnected { counterexample });
    }
    let trails: Vec<AlternatingTrail> = factor.parts.into_iter().map(|p| p.trail).collect();
    let t = merge_trail_factor(g, trails)?;
    Ok(SupereulerianOutcome::SpanningTrail(canonical_closed(g, &t)))
}

enum PairState {
    Dominates(DominationCertificate),
    Apart,
}

/// Merges vertex-disjoint closed trails covering a trail-colour-connected
/// extension of an M-closed graph into one spanning closed trail.
pub fn merge_trail_factor(g: &Graph, trails: Vec<AlternatingTrail>) -> Result<AlternatingTrail> {
    if is_extension_of_m_closed(g).is_none() {
        return Err(Error::NotExtensionOfMClosed);
    }
    let mut cover = vec![0; g.n()];
    for (i, t) in trails.iter().enumerate() {
        check_closed(g, t, &format!("trail {}", i + 1))?;
        for v in t.vertex_set(g) {
            cover[v] += 1;
        }
    }
    if cover.iter().any(|&k| k != 1) {
        return Err(Error::Precondition(
            "trails must cover every vertex exactly once".into(),
        ));
    }
    merge_trails(g, trails)
}

fn merge_trails(g: &Graph, trails: Vec<AlternatingTrail>) -> Result<AlternatingTrail> {
    let mut live: Vec<(usize, AlternatingTrail)> = trails.into_iter().enumerate().collect();
    let mut next_id = live.len();
    let mut known: HashMap<(usize, usize), PairState> = HashMap::new();
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    while live.len() > 1 {
        live.sort_by_key(|(_, t)| (t.len(), t.vertex_set(g)[0]));
        let mut merged: Option<(Vec<usize>, AlternatingTrail)> = None;
        'scan: for a in 0..live.len() {
            for b in a + 1..live.len() {
                let k = key(live[a].0, live[b].0);
                if known.contains_key(&k) {
                    continue;
                }
                match merge_pair(g, &live[a].1, &live[b].1)? {
                    TrailMergeOutcome::Merged(t) => {
                        merged = Some((vec![a, b], t));
                        break 'scan;
                    }
                    TrailMergeOutcome::Dominates(mut cert) => {
                        let ids = [live[a].0, live[b].0];
                        cert.dominating = ids[cert.dominating];
                        cert.dominated = ids[cert.dominated];
                        known.insert(k, PairState::Dominates(cert));
                    }
                    TrailMergeOutcome::NoEdgeBetween => {
                        known.insert(k, PairState::Apart);
                    }
                }
            }
        }
        if merged.is_none() {
            merged = stuck_moves(g, &live, &known)?;
        }
        let Some((mut gone, t)) = merged else {
            return Err(Error::Internal(format!(
                "{} trails left and no move applies",
                live.len()
            )));
        };
        gone.sort_unstable();
        for &i in gone.iter().rev() {
            live.remove(i);
        }
        live.push((next_id, t));
        next_id += 1;
    }
    Ok(live.pop().expect("at least one trail").1)
}

/// The three-trail moves once no pair merges. Returns the positions in `live`
/// that were consumed and the merged trail.
fn stuck_moves(
    g: &Graph,
    live: &[(usize, AlternatingTrail)],
    known: &HashMap<(usize, usize), PairState>,
) -> Result<Option<(Vec<usize>, AlternatingTrail)>> {
    let pos: HashMap<usize, usize> = live
        .iter()
        .enumerate()
        .map(|(i, (id, _))| (*id, i))
        .collect();
    let certs: HashMap<(usize, usize), &DominationCertificate> = known
        .values()
        .filter_map(|s| match s {
            PairState::Dominates(c)
                if pos.contains_key(&c.dominating) && pos.contains_key(&c.dominated) =>
            {
                Some(((c.dominating, c.dominated), c))
            }
            _ => None,
        })
        .collect();
    let mut arcs: Vec<(usize, usize, Colour)> = certs
        .iter()
        .map(|(&(i, j), c)| {
            let first = live[pos[&i]].1.vertex_set(g)[0];
            (
                i,
                j,
                colour_towards(c, first).expect("first vertex lies on the trail"),
            )
        })
        .collect();
    arcs.sort_unstable();
    let mut nodes: Vec<usize> = live.iter().map(|(id, _)| *id).collect();
    nodes.sort_unstable();
    let w = TrailDominationTournament { nodes, arcs };
    if let Some((a, b, c)) = w.three_cycle() {
        let ts = [&live[pos[&a]].1, &live[pos[&b]].1, &live[pos[&c]].1];
        let cs = [certs[&(a, b)], certs[&(b, c)], certs[&(c, a)]];
        let t = merge_trails_3cycle(g, ts, cs)?;
        return Ok(Some((vec![pos[&a], pos[&b], pos[&c]], t)));
    }
    // transitive: the topmost trail first, then every trail
    for i in w.order() {
        let outs: Vec<usize> = w.arcs.iter().filter(|a| a.0 == i).map(|a| a.1).collect();
        let t1 = &live[pos[&i]].1;
        for v in t1.vertex_set(g) {
            for &j in &outs {
                for &l in &outs {
                    let (cj, cl) = (
                        colour_towards(certs[&(i, j)], v),
                        colour_towards(certs[&(i, l)], v),
                    );
                    if j != l && cj.is_some() && cl.is_some() && cj != cl {
                        let t =
                            merge_trails_transitive(g, t1, &live[pos[&j]].1, &live[pos[&l]].1, v)?;
                        return Ok(Some((vec![pos[&i], pos[&j], pos[&l]], t)));
                    }
                }
            }
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// bipartite graphs and digraphs

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arc {
    pub id: String,
    pub tail: VertexIdx,
    pub head: VertexIdx,
}

/// A digraph whose arcs all cross the partition `(X, Y)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BipartiteDigraph {
    pub vertices: Vec<String>,
    pub in_x: Vec<bool>,
    pub arcs: Vec<Arc>,
}

/// A 2-colouring of the vertices with every edge crossing; each component's
/// smallest vertex goes to `X`.
pub fn bipartition(g: &Graph) -> Option<Vec<bool>> {
    let mut side: Vec<Option<bool>> = vec![None; g.n()];
    for s in 0..g.n() {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(true);
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            let sx = side[x].unwrap();
            for &e in g.incident(x) {
                let y = g.edge(e).other_end(x);
                match side[y] {
                    None => {
                        side[y] = Some(!sx);
                        stack.push(y);
                    }
                    Some(sy) if sy == sx => return None,
                    _ => {}
                }
            }
        }
    }
    Some(side.into_iter().map(|s| s.unwrap()).collect())
}

/// Red `xy` with `x` in `X` becomes `x -> y`, blue `xy` becomes `y -> x`.
pub fn bb_to_digraph(g: &Graph, in_x: &[bool]) -> Result<BipartiteDigraph> {
    if in_x.len() != g.n() {
        return Err(Error::InvalidParams(
            "side vector length differs from vertex count".into(),
        ));
    }
    let mut arcs = Vec::with_capacity(g.m());
    for edge in g.edges() {
        if in_x[edge.u] == in_x[edge.v] {
            return Err(Error::NotBipartite);
        }
        let (x, y) = if in_x[edge.u] {
            (edge.u, edge.v)
        } else {
            (edge.v, edge.u)
        };
        let (tail, head) = match edge.colour {
            Colour::Red => (x, y),
            Colour::Blue => (y, x),
        };
        arcs.push(Arc {
            id: edge.id.clone(),
            tail,
            head,
        });
    }
    Ok(BipartiteDigraph {
        vertices: g.vertex_ids().to_vec(),
        in_x: in_x.to_vec(),
        arcs,
    })
}

/// Inverse of `bb_to_digraph`.
pub fn bb_from_digraph(d: &BipartiteDigraph) -> Result<Graph> {
    if d.in_x.len() != d.vertices.len() {
        return Err(Error::InvalidParams(
            "side vector length differs from vertex count".into(),
        ));
    }
    let mut b = GraphBuilder::new();
    for v in &d.vertices {
        b.add_vertex(v.clone())?;
    }
    for a in &d.arcs {
        if a.tail >= d.vertices.len() || a.head >= d.vertices.len() {
            return Err(GraphError::UnknownVertex(format!("index {}", a.tail.max(a.head))).into());
        }
        if d.in_x[a.tail] == d.in_x[a.head] {
            return Err(Error::NotBipartite);
        }
        let colour = if d.in_x[a.tail] {
            Colour::Red
        } else {
            Colour::Blue
        };
        b.add_edge(a.id.clone(), a.tail, a.head, colour)?;
    }
    Ok(b.build())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BipartiteDecision {
    pub supereulerian: bool,
    pub hamiltonian: bool,
    pub colour_connected: bool,
    pub eulerian_factor: bool,
    pub cycle_factor: bool,
}

/// Supereulerian and hamiltonian decisions for a 2-edge-coloured complete
/// bipartite graph.
pub fn decide_complete_bipartite(g: &Graph) -> Result<BipartiteDecision> {
    if complete_bipartite_parts(g).is_none() {
        return Err(Error::NotCompleteBipartite);
    }
    let colour_connected = is_colour_connected(g)?.connected;
    let eulerian_factor = eulerian_factor(g).is_some();
    let cycle_factor = alternating_cycle_factor(g).is_some();
    Ok(BipartiteDecision {
        supereulerian: colour_connected && eulerian_factor,
        hamiltonian: colour_connected && cycle_factor,
        colour_connected,
        eulerian_factor,
        cycle_factor,
    })
}

/// Vertex set of a trail list, for checking that merges keep the union.
#[cfg(test)]
fn union_of(g: &Graph, ts: &[&AlternatingTrail]) -> Vec<VertexIdx> {
    let mut s = std::collections::HashSet::new();
    for t in ts {
        s.extend(t.vertex_set(g));
    }
    let mut v: Vec<VertexIdx> = s.into_iter().collect();
    v.sort_unstable();
    v
}
