//! Alternating paths and trails between prescribed vertices, and the
//! (trail-)colour-connectivity decisions built on them.
//!
//! Path search is a matching problem. Every vertex `v` is split into a red copy
//! and a blue copy joined by an internal edge, and a colour-`c` edge `uv`
//! becomes an edge between the colour-`c` copies of `u` and `v`. The internal
//! edges form a matching that leaves only the start copy of `x` and an extra
//! terminal behind `y` exposed, and augmenting paths between these two are
//! exactly the alternating `(x, y)`-paths of the original graph.
//!
//! Trails are found as paths in a larger graph in which every vertex has two
//! copies and every edge `uv` becomes a three-edge segment
//! `u_i - u_uv - v_uv - v_j`, the middle edge having the opposite colour. A
//! shortest alternating trail visits no vertex more than twice, so it lifts to
//! a path there.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Colour, EdgeIdx, Graph, VertexIdx};
use crate::matching::{Matcher, Matching, PlainGraph};
use crate::structure::complete_multipartite_parts;
use crate::witness::AlternatingTrail;

/// An alternating path in an edge list over vertices `0..n`, from `x` to `y`,
/// first edge of colour `start` and last edge of colour `end` (any if `None`).
/// Returns indices into `edges`.
fn split_path(
    n: usize,
    edges: &[(usize, usize, Colour)],
    x: usize,
    y: usize,
    start: Colour,
    end: Option<Colour>,
) -> Option<Vec<usize>> {
    debug_assert!(x != y);
    let copy = |v: usize, c: Colour| 2 * v + (c == Colour::Blue) as usize;
    let t = 2 * n;
    let mut pg = PlainGraph::new(2 * n + 1);
    let mut internal = Vec::with_capacity(n);
    for v in 0..n {
        if v != x {
            internal.push(pg.add_edge(copy(v, Colour::Red), copy(v, Colour::Blue)));
        }
    }
    match end {
        Some(c) => {
            pg.add_edge(copy(y, c.other()), t);
        }
        None => {
            pg.add_edge(copy(y, Colour::Red), t);
            pg.add_edge(copy(y, Colour::Blue), t);
        }
    }
    let base = pg.m();
    let mut origin = Vec::with_capacity(edges.len());
    for (i, &(u, v, c)) in edges.iter().enumerate() {
        if (u == x || v == x) && c != start {
            continue;
        }
        pg.add_edge(copy(u, c), copy(v, c));
        origin.push(i);
    }
    let mut mt = Matcher::new(&pg, Matching::from_edges(&pg, &internal));
    let root = copy(x, start);
    if !mt.augment(root) {
        return None;
    }
    let m = mt.matching();
    let mut out = Vec::new();
    let mut cur = root;
    loop {
        let e = m
            .edge_at(cur)
            .expect("vertices on the augmenting path are matched");
        let (a, b) = pg.edge(e);
        let next = if a == cur { b } else { a };
        if next == t {
            break;
        }
        debug_assert!(e >= base);
        out.push(origin[e - base]);
        cur = next ^ 1;
    }
    Some(out)
}

fn edge_list(g: &Graph) -> Vec<(usize, usize, Colour)> {
    g.edges().iter().map(|e| (e.u, e.v, e.colour)).collect()
}

fn check_pair(g: &Graph, x: VertexIdx, y: VertexIdx) -> Result<()> {
    if x >= g.n() || y >= g.n() {
        return Err(Error::Precondition("vertex index out of range".into()));
    }
    if x == y {
        return Err(Error::SameEndpoints);
    }
    Ok(())
}

/// An alternating `(x, y)`-path whose first edge has colour `start` and last
/// edge colour `end`.
pub fn alternating_path(
    g: &Graph,
    x: VertexIdx,
    y: VertexIdx,
    start: Colour,
    end: Colour,
) -> Result<Option<AlternatingTrail>> {
    check_pair(g, x, y)?;
    Ok(path_query(g, &edge_list(g), x, y, start, Some(end)))
}

/// An alternating `(x, y)`-path starting with colour `start`, ending with
/// either colour.
pub fn alternating_path_from(
    g: &Graph,
    x: VertexIdx,
    y: VertexIdx,
    start: Colour,
) -> Result<Option<AlternatingTrail>> {
    check_pair(g, x, y)?;
    Ok(path_query(g, &edge_list(g), x, y, start, None))
}

fn path_query(
    g: &Graph,
    edges: &[(usize, usize, Colour)],
    x: VertexIdx,
    y: VertexIdx,
    start: Colour,
    end: Option<Colour>,
) -> Option<AlternatingTrail> {
    if g.colour_degree(x, start) == 0 {
        return None;
    }
    split_path(g.n(), edges, x, y, start, end).map(|es| AlternatingTrail::new(x, es, false))
}

/// Edge list of the trail-to-path auxiliary graph. Vertex `2u + k` is the
/// `k`-th copy of `u`; `2n + 2i` and `2n + 2i + 1` are the two inner nodes of
/// edge `i`, whose crossing edge has index `5i + 4`.
fn trail_graph(g: &Graph) -> (usize, Vec<(usize, usize, Colour)>) {
    let n = g.n();
    let mut edges = Vec::with_capacity(5 * g.m());
    for (i, e) in g.edges().iter().enumerate() {
        let (a, b) = (2 * n + 2 * i, 2 * n + 2 * i + 1);
        edges.push((2 * e.u, a, e.colour));
        edges.push((2 * e.u + 1, a, e.colour));
        edges.push((2 * e.v, b, e.colour));
        edges.push((2 * e.v + 1, b, e.colour));
        edges.push((a, b, e.colour.other()));
    }
    (2 * n + 2 * g.m(), edges)
}

fn trail_query(
    g: &Graph,
    aux: &(usize, Vec<(usize, usize, Colour)>),
    x: VertexIdx,
    y: VertexIdx,
    start: Colour,
    end: Option<Colour>,
) -> Option<AlternatingTrail> {
    if g.colour_degree(x, start) == 0 {
        return None;
    }
    let hp = split_path(aux.0, &aux.1, 2 * x, 2 * y, start, end)?;
    let es: Vec<EdgeIdx> = hp
        .into_iter()
        .filter(|i| i % 5 == 4)
        .map(|i| i / 5)
        .collect();
    Some(AlternatingTrail::new(x, es, false))
}

/// An alternating `(x, y)`-trail whose first edge has colour `start` and last
/// edge colour `end`.
pub fn alternating_trail(
    g: &Graph,
    x: VertexIdx,
    y: VertexIdx,
    start: Colour,
    end: Colour,
) -> Result<Option<AlternatingTrail>> {
    check_pair(g, x, y)?;
    Ok(trail_query(g, &trail_graph(g), x, y, start, Some(end)))
}

/// An alternating `(x, y)`-trail starting with colour `start`, ending with
/// either colour.
pub fn alternating_trail_from(
    g: &Graph,
    x: VertexIdx,
    y: VertexIdx,
    start: Colour,
) -> Result<Option<AlternatingTrail>> {
    check_pair(g, x, y)?;
    let el = edge_list(g);
    if let Some(p) = path_query(g, &el, x, y, start, None) {
        return Ok(Some(p));
    }
    Ok(trail_query(g, &trail_graph(g), x, y, start, None))
}

/// Outcome of a connectivity sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectivityReport {
    pub connected: bool,
    /// Lexicographically first `(u, v, start colour)` without a path (trail).
    pub counterexample: Option<(VertexIdx, VertexIdx, Colour)>,
}

fn triples(n: usize) -> impl IndexedParallelIterator<Item = (VertexIdx, VertexIdx, Colour)> {
    (0..n * n * 2).into_par_iter().map(move |k| {
        let c = if k % 2 == 0 {
            Colour::Red
        } else {
            Colour::Blue
        };
        let uv = k / 2;
        (uv / n, uv % n, c)
    })
}

fn sweep(
    g: &Graph,
    fails: impl Fn(VertexIdx, VertexIdx, Colour) -> bool + Sync,
) -> Result<ConnectivityReport> {
    if g.n() < 2 {
        return Err(Error::TooFewVertices);
    }
    let counterexample = triples(g.n()).find_first(|&(u, v, c)| u != v && fails(u, v, c));
    Ok(ConnectivityReport {
        connected: counterexample.is_none(),
        counterexample,
    })
}

/// Every ordered pair has alternating paths starting with both colours.
pub fn is_colour_connected(g: &Graph) -> Result<ConnectivityReport> {
    let el = edge_list(g);
    sweep(g, |u, v, c| path_query(g, &el, u, v, c, None).is_none())
}

/// Every ordered pair has alternating trails starting with both colours.
pub fn is_trail_colour_connected(g: &Graph) -> Result<ConnectivityReport> {
    let el = edge_list(g);
    let aux = trail_graph(g);
    sweep(g, |u, v, c| {
        path_query(g, &el, u, v, c, None).is_none() && trail_query(g, &aux, u, v, c, None).is_none()
    })
}

/// Shortens an open alternating `(u, v)`-trail of a complete multipartite
/// graph to an alternating `(u, v)`-path with the same first colour.
///
/// Let `w` be the first repeated vertex, occurring at positions `a < p`. If the
/// closed piece between them has even length it is cut out. Otherwise the
/// piece starts and ends with the same colour and the trail is rerouted from
/// `w` using that `v` lies in a different part than at least one of
/// `seq[a + 1]`, `w` and `seq[a + 2]`.
pub fn trail_to_path_complete_multipartite(
    g: &Graph,
    t: &AlternatingTrail,
) -> Result<AlternatingTrail> {
    if complete_multipartite_parts(g).is_none() {
        return Err(Error::NotCompleteMultipartite);
    }
    crate::witness::verify_trail(g, t)
        .map_err(|v| Error::Precondition(format!("not an alternating trail: {v}")))?;
    if t.closed || t.end(g) == t.start {
        return Err(Error::Precondition(
            "trail must be open with distinct ends".into(),
        ));
    }
    let target = t.end(g);
    let mut seq = t.vertices(g);
    let mut es = t.edges.clone();
    loop {
        if let Some(first) = seq.iter().position(|&z| z == target) {
            seq.truncate(first + 1);
            es.truncate(first);
        }
        let mut seen = vec![usize::MAX; g.n()];
        let mut repeat = None;
        for (i, &z) in seq.iter().enumerate() {
            if seen[z] != usize::MAX {
                repeat = Some((seen[z], i));
                break;
            }
            seen[z] = i;
        }
        let Some((a, p)) = repeat else {
            return Ok(AlternatingTrail::new(t.start, es, false));
        };
        if (p - a) % 2 == 0 {
            seq.drain(a..p);
            es.drain(a..p);
            continue;
        }
        let alpha = g.colour(es[a]);
        let (w, x, y) = (seq[a], seq[a + 1], seq[a + 2]);
        let mut out: Vec<EdgeIdx> = es[..a].to_vec();
        let pick = |s: VertexIdx, d: VertexIdx, c: Colour| g.edge_with_colour(s, d, c);
        let back = |out: &mut Vec<EdgeIdx>, down_to: usize| {
            // w = seq[p], seq[p-1], ..., seq[down_to]
            for i in (down_to..p).rev() {
                out.push(es[i]);
            }
        };
        if x == target {
            out.push(es[a]);
        } else if g.adjacent(x, target) {
            if let Some(e) = pick(x, target, alpha.other()) {
                out.push(es[a]);
                out.push(e);
            } else {
                let e = pick(x, target, alpha).expect("adjacent");
                back(&mut out, a + 1);
                out.push(e);
            }
        } else if let Some(e) = pick(w, target, alpha) {
            out.push(e);
        } else if let Some(e) = pick(y, target, alpha) {
            out.push(es[a]);
            out.push(es[a + 1]);
            out.push(e);
        } else {
            let e = pick(y, target, alpha.other()).ok_or_else(|| {
                Error::Internal("complete multipartite reroute found no edge".into())
            })?;
            back(&mut out, a + 2);
            out.push(e);
        }
        return Ok(AlternatingTrail::new(t.start, out, false));
    }
}
