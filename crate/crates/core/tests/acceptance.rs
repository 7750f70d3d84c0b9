//! The eight acceptance criteria, one pass/fail line each.

mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use common::*;
use ecgraph::analysis::{analyze, AnalysisOptions, Answer, Method, Question};
use ecgraph::connect::*;
use ecgraph::factor::{alternating_cycle_factor, eulerian_factor, eulerian_factor_decoded};
use ecgraph::merge::{alternating_hamiltonian_cycle, HamiltonianOutcome};
use ecgraph::oracle::*;
use ecgraph::reductions::{fixture, generate, reduce_ham_to_supereulerian, Model, ReductionVariant};
use ecgraph::structure::{blow_up, complete_multipartite_parts};
use ecgraph::supereuler::{decide_complete_bipartite, supereulerian, SupereulerianOutcome};
use ecgraph::witness::{is_spanning_closed_trail, verify_cycle, verify_path, verify_trail, verify_witness, Witness};
use ecgraph::{Colour, Error, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FIXTURE_TIME: Duration = Duration::from_secs(1);
const EQUIVALENCE_TIME: Duration = Duration::from_secs(600);
const LARGE_ANALYSIS_TIME: Duration = Duration::from_secs(30);

const BLOWUP_INSTANCES: u64 = 500;
const FACTOR_INSTANCES: u64 = 1000;
const REDUCTION_INSTANCES: u64 = 300;
const QUERY_INSTANCES: u64 = 1000;
const SAMPLES: u64 = 200;

type Outcome = Result<String, String>;

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn oracle_err(e: Error) -> String {
    format!("oracle: {e}")
}

fn fixtures() -> Outcome {
    let t = Instant::now();
    let opts = AnalysisOptions::default();
    let big = OracleBudget::with_limits(10, 64);

    let efig = fixture("efig").unwrap();
    let report = analyze(&efig, &opts).map_err(|e| e.to_string())?;
    let entry = report.entry(Question::Supereulerian).unwrap();
    check(entry.answer == Answer::True && entry.witness.is_some(), || "efig: analyze does not report a spanning trail".into())?;
    let t_efig = oracle_supereulerian(&efig, &big).map_err(oracle_err)?.ok_or("efig: oracle finds no spanning trail")?;
    check(verify_witness(&efig, &Witness::Trail(t_efig.clone())).is_ok() && is_spanning_closed_trail(&efig, &t_efig), || {
        "efig: witness rejected".into()
    })?;
    let visits = t_efig.visit_counts(&efig);
    let twice: Vec<&str> = (0..efig.n()).filter(|&v| visits[v] == 2).map(|v| efig.vertex_id(v)).collect();
    check(t_efig.len() == 8 && twice == ["v3", "v5"], || format!("efig: length {} repeats {twice:?}", t_efig.len()))?;

    let halfm = fixture("halfm").unwrap();
    check(is_colour_connected(&halfm).unwrap().connected && oracle_colour_connected(&halfm, &big).map_err(oracle_err)?, || {
        "halfm: not colour-connected".into()
    })?;
    check(alternating_cycle_factor(&halfm).is_some() && oracle_cycle_factor(&halfm, &big).map_err(oracle_err)?.is_some(), || {
        "halfm: no cycle factor".into()
    })?;
    check(oracle_ham_alternating(&halfm, &big).map_err(oracle_err)?.is_none(), || "halfm: hamiltonian".into())?;
    check(
        oracle_supereulerian(&halfm, &big).map_err(oracle_err)?.is_none()
            && oracle_supereulerian_reversed(&halfm, &big).map_err(oracle_err)?.is_none(),
        || "halfm: supereulerian".into(),
    )?;
    let r = analyze(&halfm, &opts).map_err(|e| e.to_string())?;
    check(r.answer(Question::Hamiltonian) == Answer::False && r.answer(Question::Supereulerian) == Answer::False, || {
        "halfm: analyze disagrees".into()
    })?;

    let g = fixture("needall_g").unwrap();
    let rep = is_trail_colour_connected(&g).unwrap();
    let ce = rep.counterexample.map(|(u, v, c)| (g.vertex_id(u).to_string(), g.vertex_id(v).to_string(), c));
    check(ce == Some(("x_1".into(), "x_2".into(), Colour::Red)), || format!("needall_g: counterexample {ce:?}"))?;
    check(!oracle_trail_colour_connected(&g, &big).map_err(oracle_err)?, || "needall_g: oracle finds it connected".into())?;
    let h = fixture("needall_h").unwrap();
    let HamiltonianOutcome::Cycle(c) = alternating_hamiltonian_cycle(&h).map_err(|e| e.to_string())? else {
        return Err("needall_h: no hamiltonian cycle".into());
    };
    check(verify_cycle(&h, &c).is_ok() && c.len() == 8, || "needall_h: bad cycle".into())?;
    check(oracle_ham_alternating(&h, &big).map_err(oracle_err)?.is_some(), || "needall_h: oracle disagrees".into())?;

    let cmg = fixture("cmg_example").unwrap();
    check(complete_multipartite_parts(&cmg).map(|p| p.len()) == Some(3), || "cmg_example: not complete 3-partite".into())?;
    check(is_colour_connected(&cmg).unwrap().connected && oracle_colour_connected(&cmg, &big).map_err(oracle_err)?, || {
        "cmg_example: not colour-connected".into()
    })?;
    check(alternating_cycle_factor(&cmg).is_some() && oracle_cycle_factor(&cmg, &big).map_err(oracle_err)?.is_some(), || {
        "cmg_example: no cycle factor".into()
    })?;
    check(
        oracle_supereulerian(&cmg, &big).map_err(oracle_err)?.is_none()
            && oracle_supereulerian_reversed(&cmg, &big).map_err(oracle_err)?.is_none(),
        || "cmg_example: supereulerian".into(),
    )?;
    let elapsed = t.elapsed();
    check(elapsed < FIXTURE_TIME, || format!("took {elapsed:?}"))?;
    Ok(format!("4 fixtures, {elapsed:.2?}"))
}

fn supereulerian_equivalence() -> Outcome {
    let t = Instant::now();
    let budget = OracleBudget::with_limits(8, 64);
    let (mut yes, mut n) = (0, 0);
    for seed in 0..BLOWUP_INSTANCES {
        let g = seeded_blowup(seed, 8);
        if !budget.admits(&g) {
            continue;
        }
        n += 1;
        let fast = supereulerian(&g).map_err(|e| format!("seed {seed}: {e}"))?;
        let a = match &fast {
            SupereulerianOutcome::SpanningTrail(t) => {
                check(is_spanning_closed_trail(&g, t), || format!("seed {seed}: invalid trail"))?;
                true
            }
            SupereulerianOutcome::NotTrailColourConnected { counterexample: (u, v, c) } => {
                check(alternating_trail_from(&g, *u, *v, *c).unwrap().is_none(), || format!("seed {seed}: bogus counterexample"))?;
                false
            }
            SupereulerianOutcome::NoEulerianFactor => false,
        };
        let b = eulerian_factor(&g).is_some() && is_trail_colour_connected(&g).unwrap().connected;
        let c = oracle_supereulerian(&g, &budget).map_err(oracle_err)?.is_some();
        check(a == b && b == c, || format!("seed {seed}: fast {a}, characterisation {b}, oracle {c}"))?;
        yes += a as usize;
    }
    let elapsed = t.elapsed();
    check(n >= BLOWUP_INSTANCES as usize * 9 / 10, || format!("only {n} instances within the oracle budget"))?;
    check(elapsed < EQUIVALENCE_TIME, || format!("took {elapsed:?}"))?;
    Ok(format!("{n} instances, {yes} supereulerian, 0 disagreements, {elapsed:.2?}"))
}

fn hamiltonian_equivalence() -> Outcome {
    let t = Instant::now();
    let budget = OracleBudget::with_limits(8, 64);
    let (mut yes, mut n) = (0, 0);
    for seed in 0..BLOWUP_INSTANCES {
        let g = seeded_blowup(seed, 8);
        if !budget.admits(&g) {
            continue;
        }
        n += 1;
        let fast = match alternating_hamiltonian_cycle(&g) {
            Ok(o) => o,
            Err(Error::Internal(m)) => return Err(format!("seed {seed}: internal error fired: {m}")),
            Err(e) => return Err(format!("seed {seed}: {e}")),
        };
        let a = match &fast {
            HamiltonianOutcome::Cycle(c) => {
                check(verify_cycle(&g, c).is_ok() && c.len() == g.n(), || format!("seed {seed}: invalid cycle"))?;
                true
            }
            _ => false,
        };
        let b = is_colour_connected(&g).unwrap().connected && alternating_cycle_factor(&g).is_some();
        let c = oracle_ham_alternating(&g, &budget).map_err(oracle_err)?.is_some();
        check(a == b && b == c, || format!("seed {seed}: fast {a}, characterisation {b}, oracle {c}"))?;
        yes += a as usize;
    }
    let elapsed = t.elapsed();
    check(elapsed < EQUIVALENCE_TIME, || format!("took {elapsed:?}"))?;
    Ok(format!("{n} instances, {yes} hamiltonian, 0 disagreements, {elapsed:.2?}"))
}

fn eulerian_factors() -> Outcome {
    let budget = OracleBudget::with_limits(7, 14);
    let mut yes = 0;
    for seed in 0..FACTOR_INSTANCES {
        let g = seeded_graph(seed, 2 + seed as usize % 6, 14);
        let fast = eulerian_factor_decoded(&g);
        let slow = oracle_eulerian_factor(&g, &budget).map_err(oracle_err)?;
        check(fast.is_some() == slow.is_some(), || format!("seed {seed}: fast {}, oracle {}", fast.is_some(), slow.is_some()))?;
        if let Some(d) = fast {
            yes += 1;
            check(verify_witness(&g, &Witness::EulerianFactor(d.factor.clone())).is_ok(), || format!("seed {seed}: factor rejected"))?;
            let mut visits = vec![0; g.n()];
            for p in &d.factor.parts {
                for (v, k) in p.trail.visit_counts(&g).into_iter().enumerate() {
                    visits[v] += k;
                }
            }
            check(visits.iter().zip(&d.inner_counts).all(|(&v, &k)| v == k + 1), || format!("seed {seed}: visit counts {visits:?}"))?;
        }
        if let Some(f) = slow {
            check(verify_witness(&g, &Witness::EulerianFactor(f)).is_ok(), || format!("seed {seed}: oracle factor rejected"))?;
        }
    }
    Ok(format!("{FACTOR_INSTANCES} instances, {yes} with a factor"))
}

fn reductions() -> Outcome {
    let mut inputs: Vec<(String, Graph)> =
        (0..REDUCTION_INSTANCES).map(|s| (format!("seed {s}"), seeded_graph(s, 2 + s as usize % 5, 10))).collect();
    for name in ["efig", "needall_g", "needall_h", "halfm", "cmg_example"] {
        inputs.push((name.to_string(), fixture(name).unwrap()));
    }
    let (mut runs, mut skipped, mut yes) = (0, Vec::new(), 0);
    for (name, g) in &inputs {
        let ham = oracle_ham_alternating(g, &OracleBudget::with_limits(g.n(), 64)).map_err(oracle_err)?.is_some();
        yes += ham as usize;
        for (variant, label) in [(ReductionVariant::Basic, "basic"), (ReductionVariant::Gadget, "gadget")] {
            let h = reduce_ham_to_supereulerian(g, variant).unwrap().graph;
            if h.m() > 64 {
                skipped.push(format!("{name} ({label})"));
                continue;
            }
            let budget = OracleBudget::with_limits(h.n(), 64);
            let se = oracle_supereulerian(&h, &budget).map_err(oracle_err)?.is_some();
            check(se == ham, || format!("{name} ({label}): hamiltonian {ham}, reduced supereulerian {se}"))?;
            if variant == ReductionVariant::Gadget {
                check(oracle_eulerian_factor(&h, &budget).map_err(oracle_err)?.is_some(), || {
                    format!("{name}: gadget output without eulerian factor")
                })?;
            }
            runs += 1;
        }
    }
    Ok(format!("{} inputs ({yes} hamiltonian), {runs} reductions checked, over the oracle budget: {skipped:?}", inputs.len()))
}

fn connectivity() -> Outcome {
    let budget = OracleBudget::with_limits(7, 12);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut queries = 0;
    for seed in 0..QUERY_INSTANCES {
        let g = seeded_graph(seed, 2 + seed as usize % 6, 12);
        for _ in 0..4 {
            let (x, y) = (rng.gen_range(0..g.n()), rng.gen_range(0..g.n()));
            if x == y {
                continue;
            }
            let start = colour(rng.gen());
            let end = [None, Some(Colour::Red), Some(Colour::Blue)][rng.gen_range(0..3)];
            queries += 1;
            let p = match end {
                None => alternating_path_from(&g, x, y, start),
                Some(e) => alternating_path(&g, x, y, start, e),
            }
            .map_err(|e| e.to_string())?;
            let po = oracle_path(&g, &budget, x, y, start, end).map_err(oracle_err)?;
            check(p.is_some() == po.is_some(), || format!("seed {seed}: path query {x}->{y} disagrees"))?;
            if let Some(p) = p {
                check(verify_path(&g, &p).is_ok(), || format!("seed {seed}: invalid path"))?;
            }
            let t = match end {
                None => alternating_trail_from(&g, x, y, start),
                Some(e) => alternating_trail(&g, x, y, start, e),
            }
            .map_err(|e| e.to_string())?;
            let to = oracle_trail(&g, &budget, x, y, start, end).map_err(oracle_err)?;
            check(t.is_some() == to.is_some(), || format!("seed {seed}: trail query {x}->{y} disagrees"))?;
            if let Some(t) = t {
                check(verify_trail(&g, &t).is_ok(), || format!("seed {seed}: invalid trail"))?;
            }
        }
    }
    // an extension of a (trail-)colour-connected graph keeps the property
    for seed in 0..SAMPLES {
        let g = seeded_graph(seed + 10_000, 2 + seed as usize % 5, 10);
        let mult: Vec<usize> = (0..g.n()).map(|_| rng.gen_range(1..=3)).collect();
        let h = blow_up(&g, &mult).unwrap().graph;
        let (gc, hc) = (is_colour_connected(&g).unwrap().connected, is_colour_connected(&h).unwrap().connected);
        let (gt, ht) = (is_trail_colour_connected(&g).unwrap().connected, is_trail_colour_connected(&h).unwrap().connected);
        check((!gc || hc) && (!gt || ht), || format!("seed {seed}: extension lost connectivity"))?;
    }
    let mut multipartite_supereulerian = 0;
    let se_budget = OracleBudget::with_limits(7, 21);
    for seed in 0..SAMPLES {
        let parts = random_parts(&mut rng, 7);
        let g = seeded_multipartite(seed, &parts);
        let cc = is_colour_connected(&g).unwrap().connected;
        check(cc == is_trail_colour_connected(&g).unwrap().connected, || format!("seed {seed}: multipartite cc != tcc"))?;
        if se_budget.admits(&g) && oracle_supereulerian(&g, &se_budget).map_err(oracle_err)?.is_some() {
            multipartite_supereulerian += 1;
            check(cc, || format!("seed {seed}: supereulerian but not colour-connected"))?;
        }
    }
    Ok(format!(
        "{queries} path and trail queries, {SAMPLES} extensions, {SAMPLES} multipartite ({multipartite_supereulerian} supereulerian)"
    ))
}

fn complete_bipartite() -> Outcome {
    let budget = OracleBudget::with_limits(7, 12);
    let compare = |g: &Graph, label: &str| -> Result<(), String> {
        let d = decide_complete_bipartite(g).map_err(|e| e.to_string())?;
        let se = oracle_supereulerian(g, &budget).map_err(oracle_err)?.is_some();
        let ham = oracle_ham_alternating(g, &budget).map_err(oracle_err)?.is_some();
        check(d.supereulerian == se && d.hamiltonian == ham, || {
            format!("{label}: decision ({}, {}), oracle ({se}, {ham})", d.supereulerian, d.hamiltonian)
        })
    };
    let mut exhaustive = 0;
    for (a, b) in [(2usize, 2usize), (2, 3)] {
        let pairs: Vec<(usize, usize)> = (0..a).flat_map(|i| (0..b).map(move |j| (i, a + j))).collect();
        for mask in 0..1u32 << pairs.len() {
            let edges: Vec<_> = pairs.iter().enumerate().map(|(k, &(u, v))| (u, v, colour(mask >> k & 1 == 1))).collect();
            compare(&Graph::from_indexed(a + b, &edges).unwrap(), &format!("K{a},{b} mask {mask}"))?;
            exhaustive += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for seed in 0..SAMPLES {
        let (a, b) = loop {
            let (a, b) = (rng.gen_range(1..=4), rng.gen_range(2..=5));
            if a + b <= 7 && a * b <= 12 && a * b > 1 {
                break (a, b);
            }
        };
        compare(&generate(&Model::CompleteBipartite { a, b }, seed).unwrap(), &format!("seed {seed}"))?;
    }
    Ok(format!("{exhaustive} exhaustive colourings, {SAMPLES} random"))
}

fn large_analysis() -> Outcome {
    let g = generate(&Model::MClosedBlowup { n: 60 }, 1).unwrap();
    let t = Instant::now();
    let report = analyze(&g, &AnalysisOptions::no_oracle()).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    check(report.entries.iter().all(|e| e.method == Method::Fast && e.answer != Answer::Unknown), || {
        "some question was not answered by the fast path".into()
    })?;
    check(elapsed < LARGE_ANALYSIS_TIME, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "n = {}, m = {}, supereulerian {:?}, hamiltonian {:?}, {elapsed:.2?}",
        g.n(),
        g.m(),
        report.answer(Question::Supereulerian),
        report.answer(Question::Hamiltonian)
    ))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("fixture suite", fixtures),
        ("supereulerian equivalence on blow-ups", supereulerian_equivalence),
        ("hamiltonian equivalence on blow-ups", hamiltonian_equivalence),
        ("eulerian factor versus oracle", eulerian_factors),
        ("hardness reductions", reductions),
        ("connectivity", connectivity),
        ("complete bipartite decision", complete_bipartite),
        ("fast analysis at n = 60", large_analysis),
    ];
    // written past the test harness capture so the lines show on success
    let mut out = std::io::stdout().lock();
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let line = match run() {
            Ok(detail) => format!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed.push(i + 1);
                format!("criterion {}: FAIL  {name}: {why}", i + 1)
            }
        };
        writeln!(out, "{line}").unwrap();
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
