//! M-closed graphs, vertex similarity, quotients and blow-ups.
//!
//! A graph is *M-closed* when the two ends of every monochromatic path of
//! length two are adjacent. Two vertices are *similar* when they are
//! non-adjacent and have the same multiset of coloured edges to every other
//! vertex. A *blow-up* (extension) replaces every vertex by an independent set
//! of copies, each copy inheriting the coloured edges of the original.
//!
//! Similarity is tested through signatures: the sorted list of
//! `(neighbour, colour, multiplicity)` of a vertex. Two vertices have equal
//! signatures exactly when they are similar: if `u` and `v` are adjacent then
//! `v` occurs in the signature of `u` but not in its own, and otherwise the
//! signatures list the edges to the common third vertices. Equality of
//! signatures is an equivalence, so similarity is transitive.
//!
//! The similarity quotient is the finest base of `g` as an extension. If
//! `g = blow_up(G', m)` then copies of one vertex of `G'` are similar, so the
//! quotient picks at most one copy per vertex of `G'` and is isomorphic to an
//! induced subgraph of `G'`. M-closedness passes to induced subgraphs, hence
//! `g` extends some M-closed graph iff its similarity quotient is M-closed.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Colour, EdgeIdx, Graph, GraphBuilder, VertexIdx};

/// First monochromatic 2-path `x y z` whose ends are non-adjacent, scanning
/// middle vertices, then colours, then end pairs in index order.
pub fn m_closed_violation(g: &Graph) -> Option<(VertexIdx, VertexIdx, VertexIdx)> {
    for y in 0..g.n() {
        for c in Colour::BOTH {
            let nb = colour_neighbours(g, y, c);
            for (i, &x) in nb.iter().enumerate() {
                for &z in &nb[i + 1..] {
                    if !g.adjacent(x, z) {
                        return Some((x, y, z));
                    }
                }
            }
        }
    }
    None
}

pub fn is_m_closed(g: &Graph) -> bool {
    m_closed_violation(g).is_none()
}

fn colour_neighbours(g: &Graph, y: VertexIdx, c: Colour) -> Vec<VertexIdx> {
    let mut nb: Vec<VertexIdx> = g
        .incident(y)
        .iter()
        .filter(|&&e| g.colour(e) == c)
        .map(|&e| g.edge(e).other_end(y))
        .collect();
    nb.sort_unstable();
    nb.dedup();
    nb
}

/// Colour chosen for edges added by [`m_closure`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosurePolicy {
    AlwaysRed,
    AlwaysBlue,
    SeededRandom(u64),
}

/// Adds edges between the ends of open monochromatic 2-paths until the graph
/// is M-closed. New edges get fresh ids `m1`, `m2`, ...
pub fn m_closure(g: &Graph, policy: ClosurePolicy) -> Graph {
    let n = g.n();
    let mut adj = vec![vec![false; n]; n];
    let mut nb: Vec<[Vec<VertexIdx>; 2]> = (0..n)
        .map(|y| {
            [
                colour_neighbours(g, y, Colour::Red),
                colour_neighbours(g, y, Colour::Blue),
            ]
        })
        .collect();
    for e in g.edges() {
        adj[e.u][e.v] = true;
        adj[e.v][e.u] = true;
    }
    let mut rng = match policy {
        ClosurePolicy::SeededRandom(s) => Some(ChaCha8Rng::seed_from_u64(s)),
        _ => None,
    };
    let mut added = Vec::new();
    loop {
        let mut changed = false;
        for y in 0..n {
            for ci in 0..2 {
                let mut i = 0;
                while i < nb[y][ci].len() {
                    let mut j = i + 1;
                    while j < nb[y][ci].len() {
                        let (x, z) = (nb[y][ci][i], nb[y][ci][j]);
                        if !adj[x][z] {
                            let c = match (&policy, rng.as_mut()) {
                                (ClosurePolicy::AlwaysRed, _) => Colour::Red,
                                (ClosurePolicy::AlwaysBlue, _) => Colour::Blue,
                                (_, Some(r)) => {
                                    if r.gen_bool(0.5) {
                                        Colour::Red
                                    } else {
                                        Colour::Blue
                                    }
                                }
                                _ => unreachable!(),
                            };
                            adj[x][z] = true;
                            adj[z][x] = true;
                            let k = if c == Colour::Red { 0 } else { 1 };
                            for (a, b) in [(x, z), (z, x)] {
                                let list = &mut nb[a][k];
                                if let Err(p) = list.binary_search(&b) {
                                    list.insert(p, b);
                                }
                            }
                            added.push((x, z, c));
                            changed = true;
                        }
                        j += 1;
                    }
                    i += 1;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut b = GraphBuilder::from_graph(g);
    for (k, (x, z, c)) in added.into_iter().enumerate() {
        b.add_edge_fresh(&format!("m{}", k + 1), x, z, c);
    }
    b.build()
}

fn signature(g: &Graph, v: VertexIdx) -> Vec<(VertexIdx, Colour, usize)> {
    let mut raw: Vec<(VertexIdx, Colour)> = g
        .incident(v)
        .iter()
        .map(|&e| (g.edge(e).other_end(v), g.colour(e)))
        .collect();
    raw.sort_unstable();
    let mut out: Vec<(VertexIdx, Colour, usize)> = Vec::new();
    for (w, c) in raw {
        match out.last_mut() {
            Some(last) if last.0 == w && last.1 == c => last.2 += 1,
            _ => out.push((w, c, 1)),
        }
    }
    out
}

pub fn similar(g: &Graph, u: VertexIdx, v: VertexIdx) -> bool {
    u == v || signature(g, u) == signature(g, v)
}

/// Similarity classes of `g` with the quotient graph.
#[derive(Clone, Debug)]
pub struct SimilarityPartition {
    /// Blocks ordered by their smallest member; members ascending.
    pub blocks: Vec<Vec<VertexIdx>>,
    pub block_of: Vec<usize>,
    /// One vertex per block (named after the block's first member), keeping
    /// the edges between first members with their ids.
    pub quotient: Graph,
    pub multiplicities: Vec<usize>,
}

pub fn similarity_partition(g: &Graph) -> SimilarityPartition {
    let mut by_sig: HashMap<Vec<(VertexIdx, Colour, usize)>, usize> = HashMap::new();
    let mut blocks: Vec<Vec<VertexIdx>> = Vec::new();
    let mut block_of = vec![0; g.n()];
    for v in 0..g.n() {
        let b = *by_sig.entry(signature(g, v)).or_insert_with(|| {
            blocks.push(Vec::new());
            blocks.len() - 1
        });
        blocks[b].push(v);
        block_of[v] = b;
    }
    let reps: Vec<VertexIdx> = blocks.iter().map(|b| b[0]).collect();
    let (quotient, _, _) = g.induced(&reps);
    let multiplicities = blocks.iter().map(Vec::len).collect();
    SimilarityPartition {
        blocks,
        block_of,
        quotient,
        multiplicities,
    }
}

/// A blow-up together with the origin of every vertex and edge.
#[derive(Clone, Debug)]
pub struct BlowUp {
    pub graph: Graph,
    /// `(original vertex, copy index)`, copy indices starting at 0.
    pub vertex_origin: Vec<(VertexIdx, usize)>,
    pub edge_origin: Vec<EdgeIdx>,
    /// `copies[v]` lists the copies of original vertex `v`.
    pub copies: Vec<Vec<VertexIdx>>,
}

/// Replaces every vertex `v` by `multiplicities[v]` pairwise non-adjacent
/// copies. A vertex of multiplicity one keeps its id, other copies are named
/// `{v}_{k}` (k from 1); edge copies are `{e}_{i}_{j}` unless both ends have
/// multiplicity one. Name collisions with existing ids are errors.
pub fn blow_up(g: &Graph, multiplicities: &[usize]) -> Result<BlowUp> {
    check_multiplicities(g, multiplicities)?;
    let vname = |v: VertexIdx, k: usize| {
        if multiplicities[v] == 1 {
            g.vertex_id(v).to_string()
        } else {
            format!("{}_{}", g.vertex_id(v), k + 1)
        }
    };
    let ename = |e: EdgeIdx, i: usize, j: usize| {
        let edge = g.edge(e);
        if multiplicities[edge.u] == 1 && multiplicities[edge.v] == 1 {
            edge.id.clone()
        } else {
            format!("{}_{}_{}", edge.id, i + 1, j + 1)
        }
    };
    build_blow_up(g, multiplicities, vname, ename, true)
}

/// Blow-up with index-based names that never collide; for internal use.
pub(crate) fn blow_up_internal(g: &Graph, multiplicities: &[usize]) -> BlowUp {
    build_blow_up(
        g,
        multiplicities,
        |v, k| format!("{v}#{k}"),
        |e, i, j| format!("{e}#{i}#{j}"),
        false,
    )
    .expect("index names are unique")
}

fn check_multiplicities(g: &Graph, multiplicities: &[usize]) -> Result<()> {
    if multiplicities.len() != g.n() {
        return Err(Error::InvalidParams(format!(
            "expected {} multiplicities, got {}",
            g.n(),
            multiplicities.len()
        )));
    }
    if let Some(v) = multiplicities.iter().position(|&m| m == 0) {
        return Err(Error::NonPositiveMultiplicity(g.vertex_id(v).to_string()));
    }
    Ok(())
}

fn build_blow_up(
    g: &Graph,
    multiplicities: &[usize],
    vname: impl Fn(VertexIdx, usize) -> String,
    ename: impl Fn(EdgeIdx, usize, usize) -> String,
    checked: bool,
) -> Result<BlowUp> {
    let mut b = GraphBuilder::new();
    let mut vertex_origin = Vec::new();
    let mut copies = vec![Vec::new(); g.n()];
    for v in 0..g.n() {
        for k in 0..multiplicities[v] {
            let idx = if checked {
                b.add_vertex(vname(v, k))?
            } else {
                b.add_vertex_unchecked(vname(v, k))
            };
            copies[v].push(idx);
            vertex_origin.push((v, k));
        }
    }
    let mut edge_origin = Vec::new();
    for (e, edge) in g.edges().iter().enumerate() {
        for i in 0..multiplicities[edge.u] {
            for j in 0..multiplicities[edge.v] {
                let (a, c) = (copies[edge.u][i], copies[edge.v][j]);
                if checked {
                    b.add_edge(ename(e, i, j), a, c, edge.colour)?;
                } else {
                    b.add_edge_unchecked(ename(e, i, j), a, c, edge.colour);
                }
                edge_origin.push(e);
            }
        }
    }
    Ok(BlowUp {
        graph: b.build(),
        vertex_origin,
        edge_origin,
        copies,
    })
}

/// The similarity quotient and multiplicities when the quotient is M-closed.
pub fn is_extension_of_m_closed(g: &Graph) -> Option<SimilarityPartition> {
    let p = similarity_partition(g);
    is_m_closed(&p.quotient).then_some(p)
}

/// Parts of `g` as a complete multipartite graph with at least two parts,
/// ordered by smallest member.
pub fn complete_multipartite_parts(g: &Graph) -> Option<Vec<Vec<VertexIdx>>> {
    let n = g.n();
    if n < 2 {
        return None;
    }
    // parts are the classes of non-adjacency, which must be an equivalence
    let mut part_of = vec![usize::MAX; n];
    let mut parts: Vec<Vec<VertexIdx>> = Vec::new();
    for v in 0..n {
        if part_of[v] != usize::MAX {
            continue;
        }
        let members: Vec<VertexIdx> = (v..n).filter(|&w| w == v || !g.adjacent(v, w)).collect();
        for &w in &members {
            if part_of[w] != usize::MAX {
                return None;
            }
            part_of[w] = parts.len();
        }
        parts.push(members);
    }
    for u in 0..n {
        for w in u + 1..n {
            if (part_of[u] == part_of[w]) == g.adjacent(u, w) {
                return None;
            }
        }
    }
    (parts.len() >= 2).then_some(parts)
}

pub fn complete_bipartite_parts(g: &Graph) -> Option<(Vec<VertexIdx>, Vec<VertexIdx>)> {
    let mut parts = complete_multipartite_parts(g)?;
    if parts.len() != 2 {
        return None;
    }
    let y = parts.pop().unwrap();
    let x = parts.pop().unwrap();
    Some((x, y))
}
