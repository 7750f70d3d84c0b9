//! Eulerian factors, alternating cycle factors and alternating Euler tours.
//!
//! Eulerian factor gadget: a vertex `x` with `r` red and `b` blue edges becomes
//! four blocks `R(x)`, `R'(x)`, `B'(x)`, `B(x)` of sizes `r`, `r - 1`, `b - 1`,
//! `b`, with complete joins `R-R'`, `R'-B'` and `B'-B`. Every original edge
//! becomes one edge between a slot of `R` (red) or `B` (blue) at each end.
//! In a perfect matching where `k - 1` edges join `R'(x)` and `B'(x)`, exactly
//! `k` red and `k` blue original edges at `x` are selected, so the selected
//! edges form a spanning subgraph in which every vertex is balanced.

use crate::error::{Error, Result};
use crate::graph::{Colour, EdgeIdx, Graph, VertexIdx};
use crate::matching::{perfect_matching, perfect_matching_from, Matching, PlainGraph};
use crate::witness::{AlternatingCycle, AlternatingTrail, CycleFactor, EulerianFactor, FactorPart};

/// Contiguous block of gadget vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    pub first: usize,
    pub len: usize,
}

impl Block {
    pub fn contains(&self, v: usize) -> bool {
        (self.first..self.first + self.len).contains(&v)
    }

    pub fn iter(&self) -> std::ops::Range<usize> {
        self.first..self.first + self.len
    }
}

#[derive(Clone, Debug)]
pub struct FactorGadget {
    pub graph: PlainGraph,
    pub red: Vec<Block>,
    pub red_inner: Vec<Block>,
    pub blue_inner: Vec<Block>,
    pub blue: Vec<Block>,
    /// Gadget edge id of every original edge.
    pub external: Vec<usize>,
    /// Original edge of every gadget edge, `None` for block joins.
    pub edge_origin: Vec<Option<EdgeIdx>>,
}

/// A vertex without edges of one colour; no closed alternating trail can
/// pass through it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColourDeficient(pub VertexIdx);

pub fn build_factor_gadget(g: &Graph) -> std::result::Result<FactorGadget, ColourDeficient> {
    let n = g.n();
    let mut next = 0;
    let mut take = |len: usize| {
        let b = Block { first: next, len };
        next += len;
        b
    };
    let (mut red, mut red_inner, mut blue_inner, mut blue) =
        (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for x in 0..n {
        let (r, b) = (
            g.colour_degree(x, Colour::Red),
            g.colour_degree(x, Colour::Blue),
        );
        if r == 0 || b == 0 {
            return Err(ColourDeficient(x));
        }
        red.push(take(r));
        red_inner.push(take(r - 1));
        blue_inner.push(take(b - 1));
        blue.push(take(b));
    }
    let mut h = PlainGraph::new(next);
    let mut edge_origin = Vec::new();
    for x in 0..n {
        for (p, q) in [
            (red[x], red_inner[x]),
            (red_inner[x], blue_inner[x]),
            (blue_inner[x], blue[x]),
        ] {
            for a in p.iter() {
                for b in q.iter() {
                    h.add_edge(a, b);
                    edge_origin.push(None);
                }
            }
        }
    }
    let mut used = vec![[0usize; 2]; n];
    let mut external = Vec::with_capacity(g.m());
    for (e, edge) in g.edges().iter().enumerate() {
        let (blocks, k) = match edge.colour {
            Colour::Red => (&red, 0),
            Colour::Blue => (&blue, 1),
        };
        let su = blocks[edge.u].first + used[edge.u][k];
        let sv = blocks[edge.v].first + used[edge.v][k];
        used[edge.u][k] += 1;
        used[edge.v][k] += 1;
        external.push(h.add_edge(su, sv));
        edge_origin.push(Some(e));
    }
    Ok(FactorGadget {
        graph: h,
        red,
        red_inner,
        blue_inner,
        blue,
        external,
        edge_origin,
    })
}

impl FactorGadget {
    /// Matches `R'` into `R` and `B'` into `B` position by position, leaving
    /// one red and one blue slot exposed per vertex.
    fn natural_matching(&self) -> Matching {
        let mut edges = Vec::new();
        for (e, &(a, b)) in self.graph.edges().iter().enumerate() {
            if self.edge_origin[e].is_some() {
                continue;
            }
            let x = self.owner(a);
            let pairs = [
                (self.red[x], self.red_inner[x]),
                (self.blue_inner[x], self.blue[x]),
            ];
            for (p, q) in pairs {
                if p.contains(a) && q.contains(b) && a - p.first == b - q.first {
                    edges.push(e);
                }
            }
        }
        Matching::from_edges(&self.graph, &edges)
    }

    fn owner(&self, slot: usize) -> VertexIdx {
        self.red.partition_point(|b| b.first <= slot) - 1
    }

    /// Number of `R'(x)-B'(x)` edges of `m` for every vertex `x`.
    pub fn inner_counts(&self, m: &Matching) -> Vec<usize> {
        let mut counts = vec![0; self.red.len()];
        for e in m.edges() {
            if self.edge_origin[e].is_none() {
                let (a, b) = self.graph.edge(e);
                let x = self.owner(a);
                if (self.red_inner[x].contains(a) && self.blue_inner[x].contains(b))
                    || (self.red_inner[x].contains(b) && self.blue_inner[x].contains(a))
                {
                    counts[x] += 1;
                }
            }
        }
        counts
    }
}

/// An eulerian factor together with the per-vertex count of `R'-B'` matching
/// edges it was decoded from.
#[derive(Clone, Debug)]
pub struct DecodedFactor {
    pub factor: EulerianFactor,
    pub selected: Vec<EdgeIdx>,
    pub inner_counts: Vec<usize>,
}

pub fn eulerian_factor_decoded(g: &Graph) -> Option<DecodedFactor> {
    if g.n() == 0 {
        return Some(DecodedFactor {
            factor: EulerianFactor { parts: vec![] },
            selected: vec![],
            inner_counts: vec![],
        });
    }
    let gadget = build_factor_gadget(g).ok()?;
    let m = perfect_matching_from(&gadget.graph, gadget.natural_matching())?;
    let mut selected: Vec<EdgeIdx> = m
        .edges()
        .into_iter()
        .filter_map(|e| gadget.edge_origin[e])
        .collect();
    selected.sort_unstable();
    let parts = components_of(g, &selected)
        .into_iter()
        .map(|(vertices, edges)| {
            let trail = alternating_euler_tour(g, &edges).expect("selected edges are balanced");
            FactorPart { vertices, trail }
        })
        .collect();
    Some(DecodedFactor {
        factor: EulerianFactor { parts },
        selected,
        inner_counts: gadget.inner_counts(&m),
    })
}

/// A partition of V into parts, each spanned by a closed alternating trail.
pub fn eulerian_factor(g: &Graph) -> Option<EulerianFactor> {
    eulerian_factor_decoded(g).map(|d| d.factor)
}

/// Connected components of the spanning subgraph with edge set `edges`, as
/// (sorted vertices, edges), ordered by smallest vertex. Isolated vertices are
/// skipped.
fn components_of(g: &Graph, edges: &[EdgeIdx]) -> Vec<(Vec<VertexIdx>, Vec<EdgeIdx>)> {
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    let mut touched = vec![false; g.n()];
    for &e in edges {
        let edge = g.edge(e);
        touched[edge.u] = true;
        touched[edge.v] = true;
        let (a, b) = (find(&mut parent, edge.u), find(&mut parent, edge.v));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut index = vec![usize::MAX; g.n()];
    let mut out: Vec<(Vec<VertexIdx>, Vec<EdgeIdx>)> = Vec::new();
    for v in 0..g.n() {
        if !touched[v] {
            continue;
        }
        let r = find(&mut parent, v);
        if index[r] == usize::MAX {
            index[r] = out.len();
            out.push((Vec::new(), Vec::new()));
        }
        out[index[r]].0.push(v);
    }
    for &e in edges {
        let r = find(&mut parent, g.edge(e).u);
        out[index[r]].1.push(e);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TourFailure {
    Empty,
    /// Red and blue degrees differ at this vertex.
    Unbalanced(VertexIdx),
    Disconnected,
}

/// A closed alternating trail using every edge of `edges` exactly once.
///
/// At every vertex the i-th red edge is paired with the i-th blue edge (by
/// index), which splits the edges into closed alternating trails. Two trails
/// through a common vertex are joined by exchanging the blue partners of one
/// pair of each.
pub fn alternating_euler_tour(
    g: &Graph,
    edges: &[EdgeIdx],
) -> std::result::Result<AlternatingTrail, TourFailure> {
    if edges.is_empty() {
        return Err(TourFailure::Empty);
    }
    let mut sorted = edges.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut at: std::collections::BTreeMap<VertexIdx, [Vec<EdgeIdx>; 2]> = Default::default();
    for &e in &sorted {
        let edge = g.edge(e);
        let k = (edge.colour == Colour::Blue) as usize;
        at.entry(edge.u).or_default()[k].push(e);
        at.entry(edge.v).or_default()[k].push(e);
    }
    for (&v, lists) in &at {
        if lists[0].len() != lists[1].len() {
            return Err(TourFailure::Unbalanced(v));
        }
    }
    let pos = |e: EdgeIdx| sorted.binary_search(&e).unwrap();
    // partner[i][side]: the edge following edge i at its u (0) or v (1) end
    let mut partner = vec![[usize::MAX; 2]; sorted.len()];
    let side = |e: EdgeIdx, v: VertexIdx| if g.edge(e).u == v { 0 } else { 1 };
    let mut pairs: Vec<(VertexIdx, Vec<(EdgeIdx, EdgeIdx)>)> = Vec::new();
    for (&v, [reds, blues]) in &at {
        let ps: Vec<(EdgeIdx, EdgeIdx)> = reds.iter().copied().zip(blues.iter().copied()).collect();
        pairs.push((v, ps));
    }
    let link = |partner: &mut Vec<[usize; 2]>, v: VertexIdx, r: EdgeIdx, b: EdgeIdx| {
        partner[pos(r)][side(r, v)] = b;
        partner[pos(b)][side(b, v)] = r;
    };
    for (v, ps) in &pairs {
        for &(r, b) in ps {
            link(&mut partner, *v, r, b);
        }
    }
    // label the closed trails
    let mut trail_of = vec![usize::MAX; sorted.len()];
    let mut count = 0;
    for i in 0..sorted.len() {
        if trail_of[i] != usize::MAX {
            continue;
        }
        let (mut e, mut v) = (sorted[i], g.edge(sorted[i]).v);
        loop {
            trail_of[pos(e)] = count;
            let next = partner[pos(e)][side(e, v)];
            v = g.edge(next).other_end(v);
            e = next;
            if pos(e) == i {
                break;
            }
        }
        count += 1;
    }
    let mut dsu: Vec<usize> = (0..count).collect();
    fn root(d: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while d[r] != r {
            r = d[r];
        }
        d[x] = r;
        r
    }
    for (v, ps) in &mut pairs {
        for j in 1..ps.len() {
            let a = root(&mut dsu, trail_of[pos(ps[0].0)]);
            let b = root(&mut dsu, trail_of[pos(ps[j].0)]);
            if a != b {
                let (r0, b0) = ps[0];
                let (rj, bj) = ps[j];
                ps[0] = (r0, bj);
                ps[j] = (rj, b0);
                link(&mut partner, *v, r0, bj);
                link(&mut partner, *v, rj, b0);
                dsu[a.max(b)] = a.min(b);
            }
        }
    }
    let start_edge = sorted[0];
    let start = g.edge(start_edge).u;
    let mut out = Vec::with_capacity(sorted.len());
    let (mut e, mut v) = (start_edge, g.edge(start_edge).v);
    loop {
        out.push(e);
        let next = partner[pos(e)][side(e, v)];
        if next == start_edge {
            break;
        }
        v = g.edge(next).other_end(v);
        e = next;
    }
    if out.len() != sorted.len() {
        return Err(TourFailure::Disconnected);
    }
    Ok(AlternatingTrail::new(start, out, true))
}

/// Vertex-disjoint alternating cycles covering V, digons allowed.
///
/// Each vertex gets a red and a blue copy; a colour-`c` edge joins the
/// colour-`c` copies of its ends. A perfect matching picks one red and one
/// blue edge at every vertex, i.e. a spanning 2-regular alternating subgraph.
pub fn alternating_cycle_factor(g: &Graph) -> Option<CycleFactor> {
    cycle_factor_avoiding(g, &vec![false; g.m()])
}

fn cycle_factor_avoiding(g: &Graph, banned: &[bool]) -> Option<CycleFactor> {
    let mut h = PlainGraph::new(2 * g.n());
    let mut origin = Vec::new();
    for (e, edge) in g.edges().iter().enumerate() {
        if banned[e] {
            continue;
        }
        let k = (edge.colour == Colour::Blue) as usize;
        h.add_edge(2 * edge.u + k, 2 * edge.v + k);
        origin.push(e);
    }
    let m = perfect_matching(&h)?;
    let mut chosen = vec![[usize::MAX; 2]; g.n()];
    for he in m.edges() {
        let e = origin[he];
        let edge = g.edge(e);
        let k = (edge.colour == Colour::Blue) as usize;
        chosen[edge.u][k] = e;
        chosen[edge.v][k] = e;
    }
    let mut seen = vec![false; g.n()];
    let mut cycles = Vec::new();
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        let mut edges = Vec::new();
        let (mut v, mut k) = (s, 0);
        loop {
            seen[v] = true;
            let e = chosen[v][k];
            edges.push(e);
            v = g.edge(e).other_end(v);
            k ^= 1;
            if v == s {
                break;
            }
        }
        cycles.push(AlternatingCycle(AlternatingTrail::new(s, edges, true)));
    }
    Some(CycleFactor { cycles })
}

/// Cycle factor in which no cycle is a digon.
///
/// Whenever the matching answer contains a digon, any digon-free factor
/// avoids one of its two edges, so the search branches on which edge to
/// forbid. At most `max_nodes` branches are explored.
pub fn alternating_cycle_factor_without_digons(
    g: &Graph,
    max_nodes: usize,
) -> Result<Option<CycleFactor>> {
    let mut budget = max_nodes;
    let mut banned = vec![false; g.m()];
    branch(g, &mut banned, &mut budget)
}

fn branch(g: &Graph, banned: &mut Vec<bool>, budget: &mut usize) -> Result<Option<CycleFactor>> {
    if *budget == 0 {
        return Err(Error::BudgetExceeded(
            "digon-free cycle factor search".into(),
        ));
    }
    *budget -= 1;
    let Some(f) = cycle_factor_avoiding(g, banned) else {
        return Ok(None);
    };
    let Some(digon) = f.cycles.iter().find(|c| c.len() == 2) else {
        return Ok(Some(f));
    };
    for &e in &digon.0.edges {
        banned[e] = true;
        let r = branch(g, banned, budget);
        banned[e] = false;
        if let Some(found) = r? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}
