mod common;

use common::*;
use ecgraph::connect::{is_colour_connected, is_trail_colour_connected};
use ecgraph::factor::{alternating_cycle_factor, eulerian_factor};
use ecgraph::merge::{alternating_hamiltonian_cycle, merge_cycles, HamiltonianOutcome, MergeOutcome};
use ecgraph::oracle::*;
use ecgraph::reductions::{cmg_family, fixture, generate, reduce_ham_to_supereulerian, Model, ReductionVariant};
use ecgraph::structure::complete_bipartite_parts;
use ecgraph::supereuler::*;
use ecgraph::witness::{is_spanning_closed_trail, verify_cycle};
use ecgraph::{Colour, Graph};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn supereulerian_matches_oracle_and_characterisation(seed in any::<u64>()) {
        let g = seeded_blowup(seed, 8);
        prop_assume!(g.m() <= 64);
        let fast = supereulerian(&g).unwrap();
        let yes = matches!(fast, SupereulerianOutcome::SpanningTrail(_));
        if let SupereulerianOutcome::SpanningTrail(t) = &fast {
            prop_assert!(is_spanning_closed_trail(&g, t));
            let (r, b) = t.colour_counts(&g);
            prop_assert_eq!(r, b);
        }
        let characterised = eulerian_factor(&g).is_some() && is_trail_colour_connected(&g).unwrap().connected;
        prop_assert_eq!(yes, characterised);
        let slow = oracle_supereulerian(&g, &OracleBudget::with_limits(8, 64)).unwrap();
        prop_assert_eq!(yes, slow.is_some());
    }

    #[test]
    fn hamiltonian_matches_oracle_and_characterisation(seed in any::<u64>()) {
        let g = seeded_blowup(seed, 9);
        prop_assume!(g.m() <= 64);
        let fast = alternating_hamiltonian_cycle(&g).unwrap();
        let yes = matches!(fast, HamiltonianOutcome::Cycle(_));
        if let HamiltonianOutcome::Cycle(c) = &fast {
            prop_assert!(verify_cycle(&g, c).is_ok());
            prop_assert_eq!(c.len(), g.n());
        }
        let characterised = alternating_cycle_factor(&g).is_some() && is_colour_connected(&g).unwrap().connected;
        prop_assert_eq!(yes, characterised);
        let slow = oracle_ham_alternating(&g, &OracleBudget::with_limits(9, 64)).unwrap();
        prop_assert_eq!(yes, slow.is_some());
    }

    #[test]
    fn merges_follow_colour_connectivity(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = heavy_blowup(seed, rng.gen_range(2..8), rng.gen_range(0..10));
        let Some(f) = alternating_cycle_factor(&g) else { return Ok(()) };
        for a in 0..f.cycles.len() {
            for b in a + 1..f.cycles.len() {
                let mut keep = f.cycles[a].vertices(&g);
                keep.extend(f.cycles[b].vertices(&g));
                let (h, _, _) = g.induced(&keep);
                match merge_cycles(&g, &f.cycles[a], &f.cycles[b]).unwrap() {
                    MergeOutcome::Merged(c) => {
                        prop_assert!(verify_cycle(&g, &c).is_ok());
                        prop_assert_eq!(c.len(), keep.len());
                        prop_assert!(is_colour_connected(&h).unwrap().connected);
                    }
                    MergeOutcome::Dominates(cert) => {
                        prop_assert!(cert.verify(&g).is_ok());
                        prop_assert!(!is_trail_colour_connected(&h).unwrap().connected);
                    }
                    MergeOutcome::NoEdgeBetween => prop_assert!(!h.is_connected()),
                }
            }
        }
    }

    #[test]
    fn bb_round_trip(g in small_graph(7, 14)) {
        if let Some(side) = bipartition(&g) {
            let d = bb_to_digraph(&g, &side).unwrap();
            prop_assert!(d.arcs.iter().all(|a| d.in_x[a.tail] != d.in_x[a.head]));
            prop_assert!(bb_from_digraph(&d).unwrap().same_as(&g));
        } else {
            prop_assert!(bb_to_digraph(&g, &vec![true; g.n()]).is_err());
        }
    }
}

/// Every 2-colouring of `K_{a,b}` with parts `x*` and `y*`.
fn all_colourings(a: usize, b: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..a).flat_map(|i| (0..b).map(move |j| (i, a + j))).collect();
    (0..1u32 << pairs.len())
        .map(|mask| {
            let edges: Vec<_> = pairs.iter().enumerate().map(|(k, &(u, v))| (u, v, colour(mask >> k & 1 == 1))).collect();
            Graph::from_indexed(a + b, &edges).unwrap()
        })
        .collect()
}

fn bipartite_against_oracles(g: &Graph) {
    let budget = OracleBudget::with_limits(7, 12);
    let d = decide_complete_bipartite(g).unwrap();
    assert_eq!(d.supereulerian, oracle_supereulerian(g, &budget).unwrap().is_some());
    assert_eq!(d.hamiltonian, oracle_ham_alternating(g, &budget).unwrap().is_some());
    assert_eq!(d.colour_connected, oracle_colour_connected(g, &budget).unwrap());
}

#[test]
fn complete_bipartite_small_cases_are_exhaustive() {
    for (a, b) in [(2, 2), (2, 3)] {
        for g in all_colourings(a, b) {
            bipartite_against_oracles(&g);
        }
    }
}

#[test]
fn complete_bipartite_random() {
    for seed in 0..60 {
        let a = 2 + seed as usize % 2;
        let b = 2 + seed as usize / 2 % 3;
        let g = generate(&Model::CompleteBipartite { a, b }, seed).unwrap();
        if g.m() <= 12 {
            bipartite_against_oracles(&g);
        }
    }
    assert!(matches!(decide_complete_bipartite(&fixture("halfm").unwrap()), Err(ecgraph::Error::NotCompleteBipartite)));
}

#[test]
fn strong_bipartite_tournaments_are_colour_connected() {
    // digraph side: strongly connected iff every vertex reaches every other
    fn strong(d: &BipartiteDigraph) -> bool {
        let n = d.vertices.len();
        (0..n).all(|s| {
            let mut seen = vec![false; n];
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for a in d.arcs.iter().filter(|a| a.tail == x) {
                    if !seen[a.head] {
                        seen[a.head] = true;
                        stack.push(a.head);
                    }
                }
            }
            seen.into_iter().all(|b| b)
        })
    }
    for (a, b) in [(2, 2), (2, 3), (3, 3)] {
        for g in all_colourings(a, b) {
            let (x, _) = complete_bipartite_parts(&g).unwrap();
            let side: Vec<bool> = (0..g.n()).map(|v| x.contains(&v)).collect();
            let d = bb_to_digraph(&g, &side).unwrap();
            assert_eq!(strong(&d), is_colour_connected(&g).unwrap().connected);
        }
    }
}

#[test]
fn supereulerian_multipartite_graphs_are_colour_connected() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let budget = OracleBudget::with_limits(7, 21);
    let mut checked = 0;
    for seed in 0..200 {
        let parts = random_parts(&mut rng, 7);
        let g = seeded_multipartite(seed, &parts);
        if !budget.admits(&g) {
            continue;
        }
        if oracle_supereulerian(&g, &budget).unwrap().is_some() {
            assert!(is_colour_connected(&g).unwrap().connected, "seed {seed}");
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn cmg_family_is_colour_connected_but_not_supereulerian() {
    for r in [2, 3] {
        let g = cmg_family(r).unwrap();
        assert!(is_colour_connected(&g).unwrap().connected);
        assert!(alternating_cycle_factor(&g).is_some());
        let budget = OracleBudget::with_limits(g.n(), 64);
        assert!(oracle_supereulerian(&g, &budget).unwrap().is_none(), "r = {r}");
    }
}

#[test]
fn reductions_preserve_the_answer() {
    let mut inputs: Vec<Graph> = (0..120).map(|s| seeded_graph(s, 2 + s as usize % 5, 8)).collect();
    inputs.push(Graph::from_indexed(4, &[(0, 1, Colour::Red), (1, 2, Colour::Blue), (2, 3, Colour::Red), (3, 0, Colour::Blue)]).unwrap());
    for g in &inputs {
        let ham = oracle_ham_alternating(g, &OracleBudget::with_limits(6, 64)).unwrap().is_some();
        for variant in [ReductionVariant::Basic, ReductionVariant::Gadget] {
            let h = reduce_ham_to_supereulerian(g, variant).unwrap().graph;
            let budget = OracleBudget::with_limits(h.n(), 64);
            assert_eq!(oracle_supereulerian(&h, &budget).unwrap().is_some(), ham);
            if variant == ReductionVariant::Gadget {
                assert!(eulerian_factor(&h).is_some());
                assert!(oracle_eulerian_factor(&h, &budget).unwrap().is_some());
            }
        }
    }
}
