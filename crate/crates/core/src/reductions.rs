//! Hardness reductions, named example graphs and seeded random generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Colour::{self, Blue, Red};
use crate::graph::{Graph, GraphBuilder, VertexIdx};
use crate::structure::{blow_up, m_closure, ClosurePolicy};

/// Role of an output vertex of a reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Original,
    R,
    B,
    Gadget(u8),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionVariant {
    Basic,
    Gadget,
}

#[derive(Clone, Debug)]
pub struct ReductionMap {
    pub graph: Graph,
    /// For every output vertex: the source vertex and its role.
    pub provenance: Vec<(VertexIdx, Role)>,
}

/// Maps `g` to a graph that has a spanning closed alternating trail iff `g`
/// has an alternating hamiltonian cycle.
///
/// Every vertex `v` gets two terminals `v_r` and `v_b`; a red edge `uv` becomes
/// `u_r v_r` and a blue edge `uv` becomes `u_b v_b` (keeping the edge id).
///
/// * `Basic`: `v` itself stays, joined to `v_r` in blue and to `v_b` in red.
/// * `Gadget`: `v` is replaced by `v_1 .. v_4` with red edges
///   `v_b v_1`, `v_2 v_3`, `v_4 v_1`, `v_r v_4` and blue edges `v_1 v_2`,
///   `v_3 v_4`, `v_1 v_r`, `v_2 v_b`. A trail passes through it as
///   `v_b v_1 v_2 v_3 v_4 v_1 v_r` or in reverse, and `v_b v_1 v_r v_4 v_3 v_2 v_b`
///   is a closed trail on the whole gadget, so the output always has an
///   eulerian factor.
pub fn reduce_ham_to_supereulerian(g: &Graph, variant: ReductionVariant) -> Result<ReductionMap> {
    let mut b = GraphBuilder::new();
    let mut provenance = Vec::new();
    let mut term = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        let id = g.vertex_id(v);
        let mut add = |b: &mut GraphBuilder, name: String, role: Role| -> Result<VertexIdx> {
            provenance.push((v, role));
            Ok(b.add_vertex(name)?)
        };
        match variant {
            ReductionVariant::Basic => {
                let x = add(&mut b, id.to_string(), Role::Original)?;
                let r = add(&mut b, format!("{id}_r"), Role::R)?;
                let bb = add(&mut b, format!("{id}_b"), Role::B)?;
                term.push((r, bb));
                b.add_edge_fresh(&format!("{id}~r"), r, x, Blue);
                b.add_edge_fresh(&format!("{id}~b"), x, bb, Red);
            }
            ReductionVariant::Gadget => {
                let r = add(&mut b, format!("{id}_r"), Role::R)?;
                let bb = add(&mut b, format!("{id}_b"), Role::B)?;
                let mut q = [0; 4];
                for (k, slot) in q.iter_mut().enumerate() {
                    *slot = add(&mut b, format!("{id}_{}", k + 1), Role::Gadget(k as u8 + 1))?;
                }
                term.push((r, bb));
                let [v1, v2, v3, v4] = q;
                for (s, t, c, tag) in [
                    (bb, v1, Red, "b1"),
                    (v2, v3, Red, "23"),
                    (v4, v1, Red, "41"),
                    (r, v4, Red, "r4"),
                    (v1, v2, Blue, "12"),
                    (v3, v4, Blue, "34"),
                    (v1, r, Blue, "1r"),
                    (v2, bb, Blue, "2b"),
                ] {
                    b.add_edge_fresh(&format!("{id}~{tag}"), s, t, c);
                }
            }
        }
    }
    let mut pending = Vec::new();
    for e in g.edges() {
        let (a, c) = match e.colour {
            Red => (term[e.u].0, term[e.v].0),
            Blue => (term[e.u].1, term[e.v].1),
        };
        pending.push((e.id.clone(), a, c, e.colour));
    }
    for (id, a, c, col) in pending {
        if b.has_edge_id(&id) {
            b.add_edge_fresh(&id, a, c, col);
        } else {
            b.add_edge(id, a, c, col)?;
        }
    }
    Ok(ReductionMap {
        graph: b.build(),
        provenance,
    })
}

pub const FIXTURES: [&str; 5] = ["efig", "halfm", "needall_g", "needall_h", "cmg_example"];

pub fn fixture(name: &str) -> Result<Graph> {
    let g = match name {
        "efig" => Graph::from_triples(
            &["v1", "v2", "v3", "v4", "v5", "v6"],
            &[
                ("v1", "v2", Blue),
                ("v2", "v3", Red),
                ("v3", "v4", Blue),
                ("v4", "v5", Red),
                ("v5", "v6", Blue),
                ("v6", "v3", Red),
                ("v3", "v5", Blue),
                ("v5", "v1", Red),
                ("v4", "v1", Red),
                ("v4", "v2", Blue),
            ],
        ),
        "halfm" => Graph::from_triples(
            &["a", "b", "c", "d", "e", "f", "g", "h"],
            &[
                ("a", "b", Blue),
                ("c", "d", Blue),
                ("e", "f", Blue),
                ("g", "h", Blue),
                ("b", "c", Red),
                ("d", "a", Red),
                ("f", "g", Red),
                ("e", "h", Red),
                ("a", "e", Blue),
                ("a", "f", Red),
                ("b", "e", Red),
            ],
        ),
        "needall_g" => Graph::from_triples(
            &["x_1", "x_2", "u", "v", "y_1", "y_2"],
            &[
                ("x_1", "x_2", Blue),
                ("y_1", "y_2", Blue),
                ("u", "v", Blue),
                ("x_1", "u", Red),
                ("x_2", "u", Red),
                ("y_2", "v", Red),
                ("y_1", "v", Red),
            ],
        ),
        "needall_h" => Graph::from_triples(
            &["x_1", "x_2", "u_1", "u_2", "v_1", "v_2", "y_1", "y_2"],
            &[
                ("x_1", "x_2", Blue),
                ("y_1", "y_2", Blue),
                ("u_1", "v_1", Blue),
                ("u_1", "v_2", Blue),
                ("u_2", "v_1", Blue),
                ("u_2", "v_2", Blue),
                ("x_1", "u_1", Red),
                ("x_1", "u_2", Red),
                ("x_2", "u_1", Red),
                ("x_2", "u_2", Red),
                ("y_2", "v_1", Red),
                ("y_2", "v_2", Red),
                ("y_1", "v_1", Red),
                ("y_1", "v_2", Red),
            ],
        ),
        "cmg_example" => Graph::from_triples(
            &["z1", "z2", "z3", "z4", "x1", "y1", "x2", "y2"],
            &[
                ("z1", "z4", Blue),
                ("z1", "z2", Red),
                ("z2", "z3", Blue),
                ("z3", "z4", Red),
                ("x1", "z1", Blue),
                ("x1", "z3", Blue),
                ("x1", "z4", Blue),
                ("x2", "z1", Blue),
                ("x2", "z3", Blue),
                ("x2", "z4", Blue),
                ("x1", "z2", Red),
                ("x2", "z2", Red),
                ("y1", "z2", Red),
                ("y2", "z2", Red),
                ("y1", "z4", Red),
                ("y2", "z4", Red),
                ("x1", "y2", Blue),
                ("x1", "y1", Red),
                ("y1", "x2", Blue),
                ("x2", "y2", Red),
            ],
        ),
        _ => return Err(Error::UnknownFixture(name.to_string())),
    };
    Ok(g.expect("fixture edge lists are valid"))
}

/// Random instance families.
#[derive(Clone, Debug, PartialEq)]
pub enum Model {
    /// Each vertex pair gets an edge of random colour with probability `p`,
    /// and then a second parallel edge with probability `parallel`.
    Random2ec {
        n: usize,
        p: f64,
        parallel: f64,
    },
    /// Blow-up of the M-closure of a random graph, `n` vertices in total.
    MClosedBlowup {
        n: usize,
    },
    CompleteBipartite {
        a: usize,
        b: usize,
    },
    CompleteMultipartite {
        parts: Vec<usize>,
    },
    /// The complete 3-partite family with `|X| = |Y| = r`.
    CmgFamily {
        r: usize,
    },
}

fn random_colour(rng: &mut ChaCha8Rng) -> Colour {
    if rng.gen_bool(0.5) {
        Red
    } else {
        Blue
    }
}

fn named(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn graph_of(vertices: &[String], edges: &[(usize, usize, Colour)]) -> Graph {
    let mut b = GraphBuilder::new();
    for v in vertices {
        b.add_vertex(v.clone())
            .expect("generated names are distinct");
    }
    for (i, &(u, v, c)) in edges.iter().enumerate() {
        b.add_edge(format!("e{}", i + 1), u, v, c)
            .expect("generated edges are valid");
    }
    b.build()
}

fn random_2ec(rng: &mut ChaCha8Rng, n: usize, p: f64, parallel: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v, random_colour(rng)));
                if rng.gen_bool(parallel) {
                    edges.push((u, v, random_colour(rng)));
                }
            }
        }
    }
    graph_of(&named("v", n), &edges)
}

fn check_prob(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!(
            "probability {p} outside [0, 1]"
        )))
    }
}

/// Deterministic in `(model, seed)`.
pub fn generate(model: &Model, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match *model {
        Model::Random2ec { n, p, parallel } => {
            check_prob(p)?;
            check_prob(parallel)?;
            Ok(random_2ec(&mut rng, n, p, parallel))
        }
        Model::MClosedBlowup { n } => {
            if n == 0 {
                return Err(Error::InvalidParams("n must be positive".into()));
            }
            let k = rng.gen_range(n.div_ceil(2)..=n);
            let base = random_2ec(&mut rng, k, 0.75, 0.4);
            let closed = m_closure(&base, ClosurePolicy::SeededRandom(rng.gen()));
            let mut mult = vec![1; k];
            for _ in k..n {
                mult[rng.gen_range(0..k)] += 1;
            }
            Ok(blow_up(&closed, &mult)?.graph)
        }
        Model::CompleteBipartite { a, b } => {
            if a == 0 || b == 0 {
                return Err(Error::InvalidParams("both sides must be non-empty".into()));
            }
            let mut names = named("x", a);
            names.extend(named("y", b));
            let mut edges = Vec::new();
            for x in 0..a {
                for y in 0..b {
                    edges.push((x, a + y, random_colour(&mut rng)));
                }
            }
            Ok(graph_of(&names, &edges))
        }
        Model::CompleteMultipartite { ref parts } => {
            if parts.len() < 2 || parts.contains(&0) {
                return Err(Error::InvalidParams(
                    "need at least two non-empty parts".into(),
                ));
            }
            let mut names = Vec::new();
            let mut part_of = Vec::new();
            for (i, &s) in parts.iter().enumerate() {
                for j in 1..=s {
                    names.push(format!("p{}_{}", i + 1, j));
                    part_of.push(i);
                }
            }
            let mut edges = Vec::new();
            for u in 0..names.len() {
                for v in u + 1..names.len() {
                    if part_of[u] != part_of[v] {
                        edges.push((u, v, random_colour(&mut rng)));
                    }
                }
            }
            Ok(graph_of(&names, &edges))
        }
        Model::CmgFamily { r } => cmg_family(r),
    }
}

/// The complete 3-partite graphs with parts `{z1, z3} ∪ Y`, `{z2, z4}` and
/// `X`, where `X` and `Y` have `r` vertices each.
///
/// `z1 z2 z3 z4` is an alternating 4-cycle with `z1 z2` red. `X` is joined in
/// blue to `z1, z3, z4` and in red to `z2`; `Y` is joined in red to `z2, z4`.
/// `x_i y_i` is red and `y_i x_{i+1}` (indices mod r) is blue; every other
/// `x_i y_j` is red when `i + j` is even.
pub fn cmg_family(r: usize) -> Result<Graph> {
    if r < 2 {
        return Err(Error::InvalidParams("r must be at least 2".into()));
    }
    let mut names: Vec<String> = named("z", 4);
    for i in 1..=r {
        names.push(format!("x{i}"));
        names.push(format!("y{i}"));
    }
    let x = |i: usize| 4 + 2 * (i - 1);
    let y = |i: usize| 5 + 2 * (i - 1);
    let mut edges = vec![(0, 3, Blue), (0, 1, Red), (1, 2, Blue), (2, 3, Red)];
    for i in 1..=r {
        edges.extend([
            (x(i), 0, Blue),
            (x(i), 2, Blue),
            (x(i), 3, Blue),
            (x(i), 1, Red),
        ]);
    }
    for i in 1..=r {
        edges.extend([(y(i), 1, Red), (y(i), 3, Red)]);
    }
    for i in 1..=r {
        for j in 1..=r {
            let c = if j == i {
                Red
            } else if i == j % r + 1 {
                Blue
            } else if (i + j) % 2 == 0 {
                Red
            } else {
                Blue
            };
            edges.push((x(i), y(j), c));
        }
    }
    Ok(graph_of(&names, &edges))
}
