//! Maximum-cardinality matching in general graphs.
//!
//! Edmonds' blossom algorithm: one BFS per exposed root, blossoms contracted
//! through a union-find over base vertices. Parallel edges are collapsed to the
//! first declared one inside the search; matched edges are reported by id.
//!
//! Every search can be warm-started from an existing matching, which is how the
//! auxiliary-graph reductions in this crate stay fast: they start from an
//! obvious near-perfect matching and only augment from the few exposed roots.

use std::collections::VecDeque;

const NONE: usize = usize::MAX;

/// An uncoloured multigraph on vertices `0..n`.
#[derive(Clone, Debug, Default)]
pub struct PlainGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<(usize, usize)>>,
}

impl PlainGraph {
    pub fn new(n: usize) -> PlainGraph {
        PlainGraph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.n += 1;
        self.n - 1
    }

    /// Adds edge `uv` and returns its id. Panics on a self-loop.
    pub fn add_edge(&mut self, u: usize, v: usize) -> usize {
        assert!(u != v, "self-loop on {u}");
        assert!(u < self.n && v < self.n, "endpoint out of range");
        let id = self.edges.len();
        self.edges.push((u, v));
        self.adj[u].push((v, id));
        self.adj[v].push((u, id));
        id
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// `(neighbour, edge id)` pairs in declaration order.
    pub fn neighbours(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }
}

/// A matching, stored as the matched edge at every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    mate: Vec<usize>,
    via: Vec<usize>,
}

impl Matching {
    pub fn empty(n: usize) -> Matching {
        Matching {
            mate: vec![NONE; n],
            via: vec![NONE; n],
        }
    }

    /// Builds a matching from edge ids; an edge touching an already matched
    /// vertex is skipped.
    pub fn from_edges(g: &PlainGraph, edges: &[usize]) -> Matching {
        let mut m = Matching::empty(g.n());
        for &e in edges {
            let (u, v) = g.edge(e);
            if m.mate[u] == NONE && m.mate[v] == NONE {
                m.set(u, v, e);
            }
        }
        m
    }

    fn set(&mut self, u: usize, v: usize, e: usize) {
        self.mate[u] = v;
        self.mate[v] = u;
        self.via[u] = e;
        self.via[v] = e;
    }

    pub fn mate(&self, v: usize) -> Option<usize> {
        (self.mate[v] != NONE).then_some(self.mate[v])
    }

    pub fn edge_at(&self, v: usize) -> Option<usize> {
        (self.via[v] != NONE).then_some(self.via[v])
    }

    /// Matched edge ids, ascending.
    pub fn edges(&self) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.mate.len())
            .filter(|&v| self.mate[v] != NONE && v < self.mate[v])
            .map(|v| self.via[v])
            .collect();
        out.sort_unstable();
        out
    }

    pub fn size(&self) -> usize {
        self.mate.iter().filter(|&&m| m != NONE).count() / 2
    }

    pub fn is_perfect(&self) -> bool {
        self.mate.iter().all(|&m| m != NONE)
    }

    /// True if no two edges share a vertex and every stored edge joins its
    /// two endpoints in `g`.
    pub fn is_valid_in(&self, g: &PlainGraph) -> bool {
        (0..self.mate.len()).all(|v| {
            let m = self.mate[v];
            if m == NONE {
                return self.via[v] == NONE;
            }
            let (a, b) = g.edge(self.via[v]);
            self.mate[m] == v
                && self.via[m] == self.via[v]
                && ((a, b) == (v, m) || (a, b) == (m, v))
        })
    }
}

/// Reusable blossom search state.
pub struct Matcher<'g> {
    g: &'g PlainGraph,
    m: Matching,
    // 0 = outer, 1 = inner, NONE = unlabelled
    label: Vec<usize>,
    link: Vec<usize>,
    base: Vec<usize>,
    stamp: Vec<usize>,
    clock: usize,
    touched: Vec<usize>,
    queue: VecDeque<usize>,
}

impl<'g> Matcher<'g> {
    pub fn new(g: &'g PlainGraph, initial: Matching) -> Matcher<'g> {
        let n = g.n();
        Matcher {
            g,
            m: initial,
            label: vec![NONE; n],
            link: vec![NONE; n],
            base: (0..n).collect(),
            stamp: vec![0; n],
            clock: 0,
            touched: Vec::new(),
            queue: VecDeque::new(),
        }
    }

    pub fn matching(&self) -> &Matching {
        &self.m
    }

    pub fn into_matching(self) -> Matching {
        self.m
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.base[r] != r {
            r = self.base[r];
        }
        let mut y = x;
        while self.base[y] != r {
            let next = self.base[y];
            self.base[y] = r;
            y = next;
        }
        r
    }

    fn touch(&mut self, v: usize) {
        if self.label[v] == NONE && self.link[v] == NONE {
            self.touched.push(v);
        }
    }

    fn lca(&mut self, x: usize, y: usize) -> usize {
        self.clock += 1;
        let (mut x, mut y) = (self.find(x), self.find(y));
        loop {
            if x != NONE {
                if self.stamp[x] == self.clock {
                    return x;
                }
                self.stamp[x] = self.clock;
                let mx = self.m.mate[x];
                x = if mx == NONE {
                    NONE
                } else {
                    self.find(self.link[mx])
                };
            }
            std::mem::swap(&mut x, &mut y);
        }
    }

    fn blossom(&mut self, mut x: usize, mut y: usize, p: usize) {
        while self.find(x) != p {
            self.link[x] = y;
            y = self.m.mate[x];
            if self.label[y] == 1 {
                self.label[y] = 0;
                self.queue.push_back(y);
            }
            if self.find(x) == x {
                self.base[x] = p;
            }
            if self.find(y) == y {
                self.base[y] = p;
            }
            x = self.link[y];
        }
    }

    fn reset(&mut self) {
        for v in self.touched.drain(..) {
            self.label[v] = NONE;
            self.link[v] = NONE;
            self.base[v] = v;
        }
        self.queue.clear();
    }

    /// Searches one augmenting path from the exposed vertex `root` and applies
    /// it. Returns false if `root` is matched or no augmenting path exists.
    pub fn augment(&mut self, root: usize) -> bool {
        if self.m.mate[root] != NONE {
            return false;
        }
        let found = self.search(root);
        self.reset();
        found
    }

    fn search(&mut self, root: usize) -> bool {
        let g = self.g;
        self.touch(root);
        self.label[root] = 0;
        self.queue.push_back(root);
        while let Some(x) = self.queue.pop_front() {
            for &(y, e) in g.neighbours(x) {
                if self.label[y] == NONE {
                    self.touch(y);
                    self.label[y] = 1;
                    self.link[y] = x;
                    // remember the edge used to reach y for the final flip
                    if self.m.mate[y] == NONE {
                        self.flip(y, e);
                        return true;
                    }
                    let my = self.m.mate[y];
                    self.touch(my);
                    self.label[my] = 0;
                    self.queue.push_back(my);
                } else if self.label[y] == 0 && self.find(x) != self.find(y) {
                    let p = self.lca(x, y);
                    self.blossom(x, y, p);
                    self.blossom(y, x, p);
                }
            }
        }
        false
    }

    /// Flips the augmenting path ending at the exposed vertex `y`, which was
    /// reached from `link[y]` over edge `first`.
    fn flip(&mut self, mut y: usize, first: usize) {
        let mut e = first;
        loop {
            let x = self.link[y];
            let next = self.m.mate[x];
            self.m.set(x, y, e);
            if next == NONE {
                break;
            }
            self.m.mate[next] = NONE;
            self.m.via[next] = NONE;
            y = next;
            e = self.edge_between(self.link[y], y);
        }
    }

    fn edge_between(&self, u: usize, v: usize) -> usize {
        let (a, b) = if self.g.neighbours(u).len() <= self.g.neighbours(v).len() {
            (u, v)
        } else {
            (v, u)
        };
        self.g
            .neighbours(a)
            .iter()
            .find(|&&(w, _)| w == b)
            .map(|&(_, e)| e)
            .expect("link follows an edge")
    }
}

/// Greedy maximal matching in edge declaration order.
pub fn greedy_matching(g: &PlainGraph) -> Matching {
    let all: Vec<usize> = (0..g.m()).collect();
    Matching::from_edges(g, &all)
}

/// Maximum matching. Deterministic for a fixed input ordering.
pub fn maximum_matching(g: &PlainGraph) -> Matching {
    maximum_matching_from(g, greedy_matching(g))
}

/// Maximum matching obtained by augmenting `initial`.
pub fn maximum_matching_from(g: &PlainGraph, initial: Matching) -> Matching {
    let mut mt = Matcher::new(g, initial);
    for v in 0..g.n() {
        if mt.m.mate[v] == NONE {
            mt.augment(v);
        }
    }
    mt.into_matching()
}

/// A perfect matching if one exists; gives up at the first root that cannot
/// be augmented (a vertex left exposed once stays exposed).
pub fn perfect_matching_from(g: &PlainGraph, initial: Matching) -> Option<Matching> {
    if g.n() % 2 == 1 {
        return None;
    }
    let mut mt = Matcher::new(g, initial);
    for v in 0..g.n() {
        if mt.m.mate[v] == NONE && !mt.augment(v) {
            return None;
        }
    }
    Some(mt.into_matching())
}

pub fn perfect_matching(g: &PlainGraph) -> Option<Matching> {
    perfect_matching_from(g, greedy_matching(g))
}

pub fn has_perfect_matching(g: &PlainGraph) -> bool {
    perfect_matching(g).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> PlainGraph {
        let mut g = PlainGraph::new(n);
        for &(u, v) in pairs {
            g.add_edge(u, v);
        }
        g
    }

    // exhaustive: the lowest free vertex is either left exposed or matched
    fn brute_force(g: &PlainGraph) -> usize {
        fn go(g: &PlainGraph, used: &mut Vec<bool>, from: usize) -> usize {
            let Some(v) = (from..g.n()).find(|&v| !used[v]) else {
                return 0;
            };
            used[v] = true;
            let mut best = go(g, used, v + 1);
            for &(w, _) in g.neighbours(v) {
                if !used[w] {
                    used[w] = true;
                    best = best.max(1 + go(g, used, v + 1));
                    used[w] = false;
                }
            }
            used[v] = false;
            best
        }
        go(g, &mut vec![false; g.n()], 0)
    }

    fn petersen() -> PlainGraph {
        let mut pairs = Vec::new();
        for i in 0..5 {
            pairs.push((i, (i + 1) % 5));
            pairs.push((i, i + 5));
            pairs.push((5 + i, 5 + (i + 2) % 5));
        }
        from_pairs(10, &pairs)
    }

    #[test]
    fn small_cases() {
        assert_eq!(
            maximum_matching(&from_pairs(3, &[(0, 1), (1, 2), (2, 0)])).size(),
            1
        );
        let c5 = from_pairs(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert_eq!(maximum_matching(&c5).size(), 2);
        assert!(has_perfect_matching(&from_pairs(2, &[(0, 1)])));
        assert!(!has_perfect_matching(&c5));
    }

    #[test]
    fn petersen_is_perfect() {
        let g = petersen();
        // subset enumeration over all 2^15 edge sets
        let mut best = 0;
        for mask in 0u32..(1 << g.m()) {
            let mut used = [false; 10];
            let mut ok = true;
            for e in 0..g.m() {
                if mask >> e & 1 == 1 {
                    let (u, v) = g.edge(e);
                    if used[u] || used[v] {
                        ok = false;
                        break;
                    }
                    used[u] = true;
                    used[v] = true;
                }
            }
            if ok {
                best = best.max(mask.count_ones() as usize);
            }
        }
        assert_eq!(best, 5);
        let m = maximum_matching(&g);
        assert_eq!(m.size(), 5);
        assert!(m.is_valid_in(&g));
    }

    #[test]
    fn blossom_needed() {
        // triangle 0-1-2 with pendant paths; greedy picks 1-2 first
        let g = from_pairs(6, &[(1, 2), (0, 1), (0, 2), (2, 3), (0, 4), (3, 5)]);
        let m = maximum_matching_from(&g, Matching::from_edges(&g, &[0]));
        assert_eq!(m.size(), 3);
        assert!(m.is_valid_in(&g));
    }

    #[test]
    fn parallel_edges_keep_ids() {
        let g = from_pairs(2, &[(0, 1), (1, 0)]);
        let m = maximum_matching(&g);
        assert_eq!(m.edges(), vec![0]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn matches_brute_force(n in 1usize..=10, raw in proptest::collection::vec((0usize..10, 0usize..10), 0..25), warm in 0usize..4) {
            let pairs: Vec<_> = raw.into_iter().map(|(a, b)| (a % n, b % n)).filter(|(a, b)| a != b).collect();
            let g = from_pairs(n, &pairs);
            let init: Vec<usize> = (0..g.m()).step_by(warm + 1).collect();
            let m = maximum_matching_from(&g, Matching::from_edges(&g, &init));
            prop_assert!(m.is_valid_in(&g));
            prop_assert_eq!(m.size(), brute_force(&g));
            prop_assert_eq!(has_perfect_matching(&g), 2 * brute_force(&g) == n);
        }
    }
}
