//! Exhaustive reference implementations of every decision problem.
//!
//! These follow the definitions literally (search over trails, paths and edge
//! subsets) and share no code with the polynomial algorithms beyond the graph
//! type. Inputs larger than the budget are refused.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::graph::{Colour, EdgeIdx, Graph, VertexIdx};
use crate::witness::{AlternatingCycle, AlternatingTrail, CycleFactor, EulerianFactor, FactorPart};

pub const BUDGET_ENV: &str = "ECGRAPH_BUDGET_SECS";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub time_limit: Duration,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_vertices: 10,
            max_edges: 22,
            time_limit: Duration::from_secs(30),
        }
    }
}

impl OracleBudget {
    /// The default budget with the time limit taken from `ECGRAPH_BUDGET_SECS`
    /// when set.
    pub fn from_env() -> OracleBudget {
        let mut b = OracleBudget::default();
        if let Some(secs) = std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<f64>().ok())
        {
            if secs.is_finite() && secs >= 0.0 {
                b.time_limit = Duration::from_secs_f64(secs);
            }
        }
        b
    }

    pub fn with_limits(max_vertices: usize, max_edges: usize) -> OracleBudget {
        OracleBudget {
            max_vertices,
            max_edges,
            ..OracleBudget::default()
        }
    }

    pub fn admits(&self, g: &Graph) -> bool {
        g.n() <= self.max_vertices && g.m() <= self.max_edges.min(64)
    }

    fn start(&self, g: &Graph) -> Result<Clock> {
        if !self.admits(g) {
            return Err(Error::BudgetExceeded(format!(
                "{} vertices / {} edges exceeds {} / {}",
                g.n(),
                g.m(),
                self.max_vertices,
                self.max_edges.min(64)
            )));
        }
        Ok(Clock {
            deadline: Instant::now() + self.time_limit,
            ticks: 0,
        })
    }
}

struct Clock {
    deadline: Instant,
    ticks: u32,
}

impl Clock {
    fn tick(&mut self) -> Result<()> {
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks % 1024 == 0 && Instant::now() > self.deadline {
            return Err(Error::BudgetExceeded("time limit reached".into()));
        }
        Ok(())
    }
}

fn bit(e: EdgeIdx) -> u64 {
    1u64 << e
}

/// Incident edges of every vertex in the chosen scan order.
fn order(g: &Graph, reverse: bool) -> Vec<Vec<EdgeIdx>> {
    (0..g.n())
        .map(|v| {
            let mut es = g.incident(v).to_vec();
            es.sort_unstable();
            if reverse {
                es.reverse();
            }
            es
        })
        .collect()
}

// ---------------------------------------------------------------------------
// spanning closed alternating trails

struct TrailSearch<'a> {
    g: &'a Graph,
    inc: Vec<Vec<EdgeIdx>>,
    root: VertexIdx,
    first: Colour,
    clock: Clock,
    failed: HashSet<(VertexIdx, u64, Colour)>,
    stack: Vec<EdgeIdx>,
}

impl TrailSearch<'_> {
    fn visited(&self, used: u64) -> u64 {
        let mut vis = 1u64 << self.root;
        for e in 0..self.g.m() {
            if used & bit(e) != 0 {
                let edge = self.g.edge(e);
                vis |= (1 << edge.u) | (1 << edge.v);
            }
        }
        vis
    }

    // unvisited vertices and the root must stay reachable over unused edges
    fn hopeless(&self, cur: VertexIdx, used: u64, visited: u64) -> bool {
        let n = self.g.n();
        let mut seen = 1u64 << cur;
        let mut stack = vec![cur];
        while let Some(x) = stack.pop() {
            for &e in &self.inc[x] {
                if used & bit(e) == 0 {
                    let y = self.g.edge(e).other_end(x);
                    if seen & (1 << y) == 0 {
                        seen |= 1 << y;
                        stack.push(y);
                    }
                }
            }
        }
        let all = (1u64 << n) - 1;
        let need = (all & !visited) | (1 << self.root);
        need & !seen != 0
    }

    fn go(&mut self, cur: VertexIdx, used: u64, last: Colour) -> Result<bool> {
        self.clock.tick()?;
        let all = (1u64 << self.g.n()) - 1;
        let visited = self.visited(used);
        if cur == self.root && last != self.first && visited == all {
            return Ok(true);
        }
        if self.failed.contains(&(cur, used, last)) {
            return Ok(false);
        }
        if !self.hopeless(cur, used, visited) {
            let inc = self.inc[cur].clone();
            for e in inc {
                if used & bit(e) != 0 || self.g.colour(e) == last {
                    continue;
                }
                self.stack.push(e);
                let next = self.g.edge(e).other_end(cur);
                if self.go(next, used | bit(e), self.g.colour(e))? {
                    return Ok(true);
                }
                self.stack.pop();
            }
        }
        self.failed.insert((cur, used, last));
        Ok(false)
    }
}

fn spanning_trail(
    g: &Graph,
    budget: &OracleBudget,
    reverse: bool,
) -> Result<Option<AlternatingTrail>> {
    let clock = budget.start(g)?;
    if g.n() < 2 || !g.is_connected() {
        return Ok(None);
    }
    if (0..g.n())
        .any(|v| g.colour_degree(v, Colour::Red) == 0 || g.colour_degree(v, Colour::Blue) == 0)
    {
        return Ok(None);
    }
    let root = if reverse { g.n() - 1 } else { 0 };
    let mut s = TrailSearch {
        g,
        inc: order(g, reverse),
        root,
        first: Colour::Red,
        clock,
        failed: HashSet::new(),
        stack: Vec::new(),
    };
    // every closed alternating trail through the root leaves it once in red
    if s.go(root, 0, Colour::Blue)? {
        return Ok(Some(AlternatingTrail::new(root, s.stack, true)));
    }
    Ok(None)
}

/// A spanning closed alternating trail, if one exists.
pub fn oracle_supereulerian(g: &Graph, budget: &OracleBudget) -> Result<Option<AlternatingTrail>> {
    spanning_trail(g, budget, false)
}

/// The same search rooted at the last vertex with edges scanned in reverse;
/// used to double-check negative answers.
pub fn oracle_supereulerian_reversed(
    g: &Graph,
    budget: &OracleBudget,
) -> Result<Option<AlternatingTrail>> {
    spanning_trail(g, budget, true)
}

// ---------------------------------------------------------------------------
// hamiltonian alternating cycles

/// An alternating cycle through every vertex, if one exists.
pub fn oracle_ham_alternating(
    g: &Graph,
    budget: &OracleBudget,
) -> Result<Option<AlternatingCycle>> {
    let mut clock = budget.start(g)?;
    let n = g.n();
    if n < 2 {
        return Ok(None);
    }
    let inc = order(g, false);
    let mut failed: HashSet<(VertexIdx, u64, Colour)> = HashSet::new();
    let mut stack = Vec::new();
    // the cycle leaves vertex 0 in red and returns in blue
    #[allow(clippy::too_many_arguments)]
    fn go(
        g: &Graph,
        inc: &[Vec<EdgeIdx>],
        clock: &mut Clock,
        failed: &mut HashSet<(VertexIdx, u64, Colour)>,
        stack: &mut Vec<EdgeIdx>,
        cur: VertexIdx,
        visited: u64,
        last: Colour,
    ) -> Result<bool> {
        clock.tick()?;
        let all = (1u64 << g.n()) - 1;
        if visited == all {
            if last == Colour::Red {
                if let Some(&e) = inc[cur]
                    .iter()
                    .find(|&&e| g.colour(e) == Colour::Blue && g.edge(e).other_end(cur) == 0)
                {
                    // distinct from the first edge because the colours differ
                    stack.push(e);
                    return Ok(true);
                }
            }
            return Ok(false);
        }
        if failed.contains(&(cur, visited, last)) {
            return Ok(false);
        }
        for &e in &inc[cur] {
            let y = g.edge(e).other_end(cur);
            if g.colour(e) == last || visited & (1 << y) != 0 {
                continue;
            }
            stack.push(e);
            if go(
                g,
                inc,
                clock,
                failed,
                stack,
                y,
                visited | (1 << y),
                g.colour(e),
            )? {
                return Ok(true);
            }
            stack.pop();
        }
        failed.insert((cur, visited, last));
        Ok(false)
    }
    if go(
        g,
        &inc,
        &mut clock,
        &mut failed,
        &mut stack,
        0,
        1,
        Colour::Blue,
    )? {
        return Ok(Some(AlternatingCycle(AlternatingTrail::new(
            0, stack, true,
        ))));
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// factors by edge-subset search

/// Searches edge subsets where every vertex has `want(red, blue)` selected
/// edges; `ok` judges a vertex once all its edges are decided.
struct SubsetSearch<'a> {
    g: &'a Graph,
    clock: Clock,
    last_edge: Vec<usize>,
    red: Vec<usize>,
    blue: Vec<usize>,
    cap: Option<usize>,
    chosen: Vec<EdgeIdx>,
}

impl SubsetSearch<'_> {
    fn vertex_ok(&self, v: VertexIdx) -> bool {
        let (r, b) = (self.red[v], self.blue[v]);
        match self.cap {
            Some(c) => r == c && b == c,
            None => r == b && r >= 1,
        }
    }

    fn go(&mut self, e: usize) -> Result<bool> {
        self.clock.tick()?;
        if e == self.g.m() {
            return Ok((0..self.g.n()).all(|v| self.vertex_ok(v)));
        }
        let edge = self.g.edge(e).clone();
        for take in [true, false] {
            let (cu, cv) = {
                let counts = if edge.colour == Colour::Red {
                    &mut self.red
                } else {
                    &mut self.blue
                };
                if take {
                    counts[edge.u] += 1;
                    counts[edge.v] += 1;
                }
                (counts[edge.u], counts[edge.v])
            };
            let over = self.cap.is_some_and(|c| cu > c || cv > c);
            let done_ok = [edge.u, edge.v]
                .iter()
                .all(|&x| self.last_edge[x] != e || self.vertex_ok(x));
            if !over && done_ok {
                if take {
                    self.chosen.push(e);
                }
                if self.go(e + 1)? {
                    return Ok(true);
                }
                if take {
                    self.chosen.pop();
                }
            }
            if take {
                let counts = if edge.colour == Colour::Red {
                    &mut self.red
                } else {
                    &mut self.blue
                };
                counts[edge.u] -= 1;
                counts[edge.v] -= 1;
            }
        }
        Ok(false)
    }
}

fn subset_search(
    g: &Graph,
    budget: &OracleBudget,
    cap: Option<usize>,
) -> Result<Option<Vec<EdgeIdx>>> {
    let clock = budget.start(g)?;
    let mut last_edge = vec![usize::MAX; g.n()];
    for (e, edge) in g.edges().iter().enumerate() {
        last_edge[edge.u] = e;
        last_edge[edge.v] = e;
    }
    if g.n() > 0 && last_edge.contains(&usize::MAX) {
        return Ok(None);
    }
    let mut s = SubsetSearch {
        g,
        clock,
        last_edge,
        red: vec![0; g.n()],
        blue: vec![0; g.n()],
        cap,
        chosen: Vec::new(),
    };
    Ok(s.go(0)?.then_some(s.chosen))
}

/// A closed alternating trail using exactly the edges `es` (connected,
/// balanced), found by backtracking.
fn brute_tour(g: &Graph, es: &[EdgeIdx], clock: &mut Clock) -> Result<Option<AlternatingTrail>> {
    let start = g.edge(es[0]).u;
    let mut used = vec![false; g.m()];
    let mut stack = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn go(
        g: &Graph,
        es: &[EdgeIdx],
        used: &mut [bool],
        stack: &mut Vec<EdgeIdx>,
        clock: &mut Clock,
        start: VertexIdx,
        cur: VertexIdx,
        last: Option<Colour>,
    ) -> Result<bool> {
        clock.tick()?;
        if stack.len() == es.len() {
            return Ok(cur == start && last != Some(g.colour(stack[0])));
        }
        for &e in es {
            let edge = g.edge(e);
            if used[e] || !edge.touches(cur) || Some(edge.colour) == last {
                continue;
            }
            used[e] = true;
            stack.push(e);
            if go(
                g,
                es,
                used,
                stack,
                clock,
                start,
                edge.other_end(cur),
                Some(edge.colour),
            )? {
                return Ok(true);
            }
            stack.pop();
            used[e] = false;
        }
        Ok(false)
    }
    Ok(go(g, es, &mut used, &mut stack, clock, start, start, None)?
        .then(|| AlternatingTrail::new(start, stack, true)))
}

/// An eulerian factor: a balanced spanning edge subset, split into its
/// components, each toured by backtracking.
pub fn oracle_eulerian_factor(g: &Graph, budget: &OracleBudget) -> Result<Option<EulerianFactor>> {
    if g.n() == 0 {
        budget.start(g)?;
        return Ok(Some(EulerianFactor { parts: vec![] }));
    }
    let Some(chosen) = subset_search(g, budget, None)? else {
        return Ok(None);
    };
    let mut clock = budget.start(g)?;
    // components by repeated flooding
    let mut comp = vec![usize::MAX; g.n()];
    let mut parts = Vec::new();
    for s in 0..g.n() {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = parts.len();
        comp[s] = id;
        let mut stack = vec![s];
        let mut verts = vec![s];
        while let Some(x) = stack.pop() {
            for &e in &chosen {
                let edge = g.edge(e);
                if edge.touches(x) {
                    let y = edge.other_end(x);
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        verts.push(y);
                        stack.push(y);
                    }
                }
            }
        }
        verts.sort_unstable();
        let es: Vec<EdgeIdx> = chosen
            .iter()
            .copied()
            .filter(|&e| comp[g.edge(e).u] == id)
            .collect();
        let trail = brute_tour(g, &es, &mut clock)?
            .ok_or_else(|| Error::Internal("balanced connected edge set without a tour".into()))?;
        parts.push(FactorPart {
            vertices: verts,
            trail,
        });
    }
    Ok(Some(EulerianFactor { parts }))
}

/// An alternating cycle factor: an edge subset with one red and one blue edge
/// at every vertex.
pub fn oracle_cycle_factor(g: &Graph, budget: &OracleBudget) -> Result<Option<CycleFactor>> {
    if g.n() == 0 {
        budget.start(g)?;
        return Ok(Some(CycleFactor { cycles: vec![] }));
    }
    let Some(chosen) = subset_search(g, budget, Some(1))? else {
        return Ok(None);
    };
    let mut seen = vec![false; g.n()];
    let mut cycles = Vec::new();
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        let mut edges = Vec::new();
        let (mut cur, mut want) = (s, Colour::Red);
        loop {
            seen[cur] = true;
            let e = *chosen
                .iter()
                .find(|&&e| g.edge(e).touches(cur) && g.colour(e) == want)
                .expect("one edge of each colour per vertex");
            edges.push(e);
            cur = g.edge(e).other_end(cur);
            want = want.other();
            if cur == s {
                break;
            }
        }
        cycles.push(AlternatingCycle(AlternatingTrail::new(s, edges, true)));
    }
    Ok(Some(CycleFactor { cycles }))
}

// ---------------------------------------------------------------------------
// paths, trails and connectivity

/// Vertices reachable from `x` by alternating paths (simple) starting with
/// colour `start`; stops once every vertex is reached.
fn path_reach(
    g: &Graph,
    inc: &[Vec<EdgeIdx>],
    x: VertexIdx,
    start: Colour,
    clock: &mut Clock,
) -> Result<u64> {
    let all = (1u64 << g.n()) - 1;
    let mut reached = 1u64 << x;
    #[allow(clippy::too_many_arguments)]
    fn go(
        g: &Graph,
        inc: &[Vec<EdgeIdx>],
        clock: &mut Clock,
        cur: VertexIdx,
        visited: u64,
        last: Colour,
        reached: &mut u64,
        all: u64,
    ) -> Result<()> {
        clock.tick()?;
        for &e in &inc[cur] {
            if *reached == all {
                return Ok(());
            }
            let y = g.edge(e).other_end(cur);
            if g.colour(e) == last || visited & (1 << y) != 0 {
                continue;
            }
            *reached |= 1 << y;
            go(
                g,
                inc,
                clock,
                y,
                visited | (1 << y),
                g.colour(e),
                reached,
                all,
            )?;
        }
        Ok(())
    }
    go(g, inc, clock, x, 1 << x, start.other(), &mut reached, all)?;
    Ok(reached)
}

/// Vertices reachable from `x` by alternating trails starting with `start`.
fn trail_reach(
    g: &Graph,
    inc: &[Vec<EdgeIdx>],
    x: VertexIdx,
    start: Colour,
    clock: &mut Clock,
) -> Result<u64> {
    let all = (1u64 << g.n()) - 1;
    let mut reached = 1u64 << x;
    let mut seen: HashSet<(VertexIdx, u64, Colour)> = HashSet::new();
    let mut stack = vec![(x, 0u64, start.other())];
    while let Some((cur, used, last)) = stack.pop() {
        clock.tick()?;
        if reached == all {
            break;
        }
        for &e in &inc[cur] {
            if used & bit(e) != 0 || g.colour(e) == last {
                continue;
            }
            let y = g.edge(e).other_end(cur);
            reached |= 1 << y;
            let st = (y, used | bit(e), g.colour(e));
            if seen.insert(st) {
                stack.push(st);
            }
        }
    }
    Ok(reached)
}

fn connectivity(g: &Graph, budget: &OracleBudget, trails: bool) -> Result<bool> {
    let mut clock = budget.start(g)?;
    if g.n() < 2 {
        return Err(Error::TooFewVertices);
    }
    let inc = order(g, false);
    let all = (1u64 << g.n()) - 1;
    for x in 0..g.n() {
        for c in Colour::BOTH {
            let r = if trails {
                trail_reach(g, &inc, x, c, &mut clock)?
            } else {
                path_reach(g, &inc, x, c, &mut clock)?
            };
            if r != all {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn oracle_colour_connected(g: &Graph, budget: &OracleBudget) -> Result<bool> {
    connectivity(g, budget, false)
}

pub fn oracle_trail_colour_connected(g: &Graph, budget: &OracleBudget) -> Result<bool> {
    connectivity(g, budget, true)
}

/// An alternating `(x, y)`-path with prescribed first colour and, if given,
/// last colour.
pub fn oracle_path(
    g: &Graph,
    budget: &OracleBudget,
    x: VertexIdx,
    y: VertexIdx,
    start: Colour,
    end: Option<Colour>,
) -> Result<Option<AlternatingTrail>> {
    let mut clock = budget.start(g)?;
    let inc = order(g, false);
    let mut stack = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn go(
        g: &Graph,
        inc: &[Vec<EdgeIdx>],
        clock: &mut Clock,
        stack: &mut Vec<EdgeIdx>,
        cur: VertexIdx,
        y: VertexIdx,
        visited: u64,
        last: Colour,
        end: Option<Colour>,
    ) -> Result<bool> {
        clock.tick()?;
        for &e in &inc[cur] {
            let z = g.edge(e).other_end(cur);
            if g.colour(e) == last || visited & (1 << z) != 0 {
                continue;
            }
            stack.push(e);
            if z == y {
                if end.is_none_or(|c| c == g.colour(e)) {
                    return Ok(true);
                }
            } else if go(
                g,
                inc,
                clock,
                stack,
                z,
                y,
                visited | (1 << z),
                g.colour(e),
                end,
            )? {
                return Ok(true);
            }
            stack.pop();
        }
        Ok(false)
    }
    if x == y {
        return Err(Error::SameEndpoints);
    }
    Ok(go(
        g,
        &inc,
        &mut clock,
        &mut stack,
        x,
        y,
        1 << x,
        start.other(),
        end,
    )?
    .then(|| AlternatingTrail::new(x, stack, false)))
}

/// An alternating `(x, y)`-trail with prescribed first colour and, if given,
/// last colour.
pub fn oracle_trail(
    g: &Graph,
    budget: &OracleBudget,
    x: VertexIdx,
    y: VertexIdx,
    start: Colour,
    end: Option<Colour>,
) -> Result<Option<AlternatingTrail>> {
    let mut clock = budget.start(g)?;
    if x == y {
        return Err(Error::SameEndpoints);
    }
    let inc = order(g, false);
    let mut failed: HashSet<(VertexIdx, u64, Colour)> = HashSet::new();
    let mut stack = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn go(
        g: &Graph,
        inc: &[Vec<EdgeIdx>],
        clock: &mut Clock,
        failed: &mut HashSet<(VertexIdx, u64, Colour)>,
        stack: &mut Vec<EdgeIdx>,
        cur: VertexIdx,
        y: VertexIdx,
        used: u64,
        last: Colour,
        end: Option<Colour>,
    ) -> Result<bool> {
        clock.tick()?;
        if failed.contains(&(cur, used, last)) {
            return Ok(false);
        }
        for &e in &inc[cur] {
            if used & bit(e) != 0 || g.colour(e) == last {
                continue;
            }
            let z = g.edge(e).other_end(cur);
            stack.push(e);
            if z == y && end.is_none_or(|c| c == g.colour(e)) {
                return Ok(true);
            }
            if go(
                g,
                inc,
                clock,
                failed,
                stack,
                z,
                y,
                used | bit(e),
                g.colour(e),
                end,
            )? {
                return Ok(true);
            }
            stack.pop();
        }
        failed.insert((cur, used, last));
        Ok(false)
    }
    Ok(go(
        g,
        &inc,
        &mut clock,
        &mut failed,
        &mut stack,
        x,
        y,
        0,
        start.other(),
        end,
    )?
    .then(|| AlternatingTrail::new(x, stack, false)))
}
