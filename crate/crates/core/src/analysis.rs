//! Whole-graph reports: every decision question in a fixed order, each
//! answered by the fast path when the input is in its class, by an oracle
//! when the budget allows, or left unknown.

use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::connect::{is_colour_connected, is_trail_colour_connected};
use crate::error::{Error, Result};
use crate::factor::{alternating_cycle_factor, eulerian_factor};
use crate::graph::{Colour, Graph, VertexIdx};
use crate::io::witness_to_value;
use crate::merge::{alternating_hamiltonian_cycle, DominationCertificate, HamiltonianOutcome};
use crate::oracle::{oracle_ham_alternating, oracle_supereulerian, OracleBudget};
use crate::structure::{
    complete_bipartite_parts, complete_multipartite_parts, is_extension_of_m_closed,
    m_closed_violation,
};
use crate::supereuler::{decide_complete_bipartite, supereulerian, SupereulerianOutcome};
use crate::witness::{verify_witness, AlternatingCycle, AlternatingTrail, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Question {
    MClosed,
    ExtensionOfMClosed,
    CompleteBipartite,
    CompleteMultipartite,
    ColourConnected,
    TrailColourConnected,
    EulerianFactor,
    CycleFactor,
    Hamiltonian,
    Supereulerian,
}

impl Question {
    pub const ALL: [Question; 10] = [
        Question::MClosed,
        Question::ExtensionOfMClosed,
        Question::CompleteBipartite,
        Question::CompleteMultipartite,
        Question::ColourConnected,
        Question::TrailColourConnected,
        Question::EulerianFactor,
        Question::CycleFactor,
        Question::Hamiltonian,
        Question::Supereulerian,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Question::MClosed => "m_closed",
            Question::ExtensionOfMClosed => "extension_of_m_closed",
            Question::CompleteBipartite => "complete_bipartite",
            Question::CompleteMultipartite => "complete_multipartite",
            Question::ColourConnected => "colour_connected",
            Question::TrailColourConnected => "trail_colour_connected",
            Question::EulerianFactor => "eulerian_factor",
            Question::CycleFactor => "cycle_factor",
            Question::Hamiltonian => "hamiltonian",
            Question::Supereulerian => "supereulerian",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Fast,
    Oracle,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Answer {
    True,
    False,
    Unknown,
}

impl From<bool> for Answer {
    fn from(b: bool) -> Answer {
        if b {
            Answer::True
        } else {
            Answer::False
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Entry {
    pub question: Question,
    pub answer: Answer,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Seconds; only filled when timings are requested, so that reports are
    /// reproducible byte for byte otherwise.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed: Option<f64>,
}

impl Entry {
    fn new(question: Question, answer: Answer, method: Method) -> Entry {
        Entry {
            question,
            answer,
            witness: None,
            counterexample: None,
            method,
            note: None,
            elapsed: None,
        }
    }

    fn unknown(question: Question, note: impl Into<String>) -> Entry {
        Entry {
            note: Some(note.into()),
            ..Entry::new(question, Answer::Unknown, Method::None)
        }
    }

    fn with_witness(mut self, w: Value) -> Entry {
        self.witness = Some(w);
        self
    }

    fn with_counterexample(mut self, c: Value) -> Entry {
        self.counterexample = Some(c);
        self
    }

    fn with_note(mut self, note: impl Into<String>) -> Entry {
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub vertices: usize,
    pub edges: usize,
    pub entries: Vec<Entry>,
}

impl AnalysisReport {
    pub fn entry(&self, q: Question) -> Option<&Entry> {
        self.entries.iter().find(|e| e.question == q)
    }

    pub fn answer(&self, q: Question) -> Answer {
        self.entry(q).map_or(Answer::Unknown, |e| e.answer)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct AnalysisOptions {
    /// Oracles run only on graphs with at most this many vertices.
    pub max_n: usize,
    pub budget: OracleBudget,
    /// Build a witness by oracle where the fast path only decides.
    pub oracle_witness: bool,
    pub timings: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        let budget = OracleBudget::from_env();
        AnalysisOptions {
            max_n: budget.max_vertices,
            budget,
            oracle_witness: false,
            timings: false,
        }
    }
}

impl AnalysisOptions {
    /// Fast path only.
    pub fn no_oracle() -> AnalysisOptions {
        AnalysisOptions {
            max_n: 0,
            ..AnalysisOptions::default()
        }
    }

    fn oracle_budget(&self, g: &Graph) -> Option<OracleBudget> {
        (g.n() <= self.max_n).then_some(OracleBudget {
            max_vertices: self.max_n,
            ..self.budget
        })
    }
}

pub fn counterexample_value(g: &Graph, (u, v, c): (VertexIdx, VertexIdx, Colour)) -> Value {
    json!({ "from": g.vertex_id(u), "to": g.vertex_id(v), "start": c })
}

pub fn certificate_value(g: &Graph, cert: &DominationCertificate) -> Value {
    let ids = |vs: &[VertexIdx]| vs.iter().map(|&v| g.vertex_id(v)).collect::<Vec<_>>();
    json!({
        "colour": cert.colour,
        "sequence": ids(&cert.sequence),
        "c_vertices": ids(&cert.c_vertices()),
        "other_colour_vertices": ids(&cert.other_colour_vertices()),
        "dominated": ids(&cert.other),
    })
}

fn checked(g: &Graph, w: Witness) -> Result<Value> {
    verify_witness(g, &w).map_err(|v| Error::Internal(format!("witness rejected: {v}")))?;
    Ok(witness_to_value(g, &w))
}

fn trail_value(g: &Graph, t: AlternatingTrail) -> Result<Value> {
    checked(g, Witness::Trail(t))
}

fn cycle_value(g: &Graph, c: AlternatingCycle) -> Result<Value> {
    checked(g, Witness::Cycle(c))
}

fn ids(g: &Graph, vs: &[VertexIdx]) -> Vec<String> {
    vs.iter().map(|&v| g.vertex_id(v).to_string()).collect()
}

/// Hamiltonian question on its own: fast path for extensions of M-closed
/// graphs, then the oracle.
pub fn hamiltonian_entry(g: &Graph, opts: &AnalysisOptions) -> Result<Entry> {
    let q = Question::Hamiltonian;
    if g.n() < 2 {
        return Ok(Entry::unknown(q, "need at least two vertices"));
    }
    if is_extension_of_m_closed(g).is_some() {
        return Ok(match alternating_hamiltonian_cycle(g)? {
            HamiltonianOutcome::Cycle(c) => {
                Entry::new(q, Answer::True, Method::Fast).with_witness(cycle_value(g, c)?)
            }
            HamiltonianOutcome::NoCycleFactor => {
                Entry::new(q, Answer::False, Method::Fast).with_note("no alternating cycle factor")
            }
            HamiltonianOutcome::NotColourConnected { counterexample } => {
                Entry::new(q, Answer::False, Method::Fast)
                    .with_counterexample(counterexample_value(g, counterexample))
                    .with_note("not colour-connected")
            }
        });
    }
    let Some(budget) = opts.oracle_budget(g) else {
        return Ok(Entry::unknown(
            q,
            "outside the supported class and above --max-n",
        ));
    };
    oracle_entry(
        q,
        || oracle_ham_alternating(g, &budget),
        |c| cycle_value(g, c),
    )
}

/// Supereulerian question on its own: fast path for extensions of M-closed
/// graphs, decision only for complete bipartite graphs, then the oracle.
pub fn supereulerian_entry(g: &Graph, opts: &AnalysisOptions) -> Result<Entry> {
    let q = Question::Supereulerian;
    if g.n() == 0 {
        return Ok(Entry::unknown(q, "empty graph"));
    }
    if is_extension_of_m_closed(g).is_some() {
        return Ok(match supereulerian(g)? {
            SupereulerianOutcome::SpanningTrail(t) => {
                Entry::new(q, Answer::True, Method::Fast).with_witness(trail_value(g, t)?)
            }
            SupereulerianOutcome::NoEulerianFactor => {
                Entry::new(q, Answer::False, Method::Fast).with_note("no eulerian factor")
            }
            SupereulerianOutcome::NotTrailColourConnected { counterexample } => {
                Entry::new(q, Answer::False, Method::Fast)
                    .with_counterexample(counterexample_value(g, counterexample))
                    .with_note("not trail-colour-connected")
            }
        });
    }
    let budget = opts.oracle_budget(g);
    if complete_bipartite_parts(g).is_some() {
        let d = decide_complete_bipartite(g)?;
        let mut e = Entry::new(q, d.supereulerian.into(), Method::Fast);
        if !d.colour_connected {
            e = e.with_note("not colour-connected");
        } else if !d.eulerian_factor {
            e = e.with_note("no eulerian factor");
        }
        if d.supereulerian && opts.oracle_witness {
            if let Some(b) = budget {
                match oracle_supereulerian(g, &b) {
                    Ok(Some(t)) => e = e.with_witness(trail_value(g, t)?),
                    Ok(None) => {
                        return Err(Error::Internal(
                            "oracle disagrees with the bipartite decision".into(),
                        ))
                    }
                    Err(Error::BudgetExceeded(m)) => e = e.with_note(format!("no witness: {m}")),
                    Err(err) => return Err(err),
                }
            }
        }
        return Ok(e);
    }
    let Some(budget) = budget else {
        return Ok(Entry::unknown(
            q,
            "outside the supported class and above --max-n",
        ));
    };
    oracle_entry(
        q,
        || oracle_supereulerian(g, &budget),
        |t| trail_value(g, t),
    )
}

fn oracle_entry<T>(
    q: Question,
    run: impl FnOnce() -> Result<Option<T>>,
    show: impl FnOnce(T) -> Result<Value>,
) -> Result<Entry> {
    match run() {
        Ok(Some(w)) => Ok(Entry::new(q, Answer::True, Method::Oracle).with_witness(show(w)?)),
        Ok(None) => Ok(Entry::new(q, Answer::False, Method::Oracle)),
        Err(Error::BudgetExceeded(m)) => Ok(Entry::unknown(q, m)),
        Err(e) => Err(e),
    }
}

fn connectivity_entry(g: &Graph, q: Question, trail: bool) -> Result<Entry> {
    if g.n() < 2 {
        return Ok(Entry::unknown(q, "need at least two vertices"));
    }
    let r = if trail {
        is_trail_colour_connected(g)?
    } else {
        is_colour_connected(g)?
    };
    let e = Entry::new(q, r.connected.into(), Method::Fast);
    Ok(match r.counterexample {
        Some(c) => e.with_counterexample(counterexample_value(g, c)),
        None => e,
    })
}

pub fn factor_entry(g: &Graph, cycle: bool) -> Result<Entry> {
    Ok(if cycle {
        match alternating_cycle_factor(g) {
            Some(f) => Entry::new(Question::CycleFactor, Answer::True, Method::Fast)
                .with_witness(checked(g, Witness::CycleFactor(f))?),
            None => Entry::new(Question::CycleFactor, Answer::False, Method::Fast),
        }
    } else {
        match eulerian_factor(g) {
            Some(f) => Entry::new(Question::EulerianFactor, Answer::True, Method::Fast)
                .with_witness(checked(g, Witness::EulerianFactor(f))?),
            None => Entry::new(Question::EulerianFactor, Answer::False, Method::Fast),
        }
    })
}

/// Answers `q` for `g`.
pub fn answer(g: &Graph, q: Question, opts: &AnalysisOptions) -> Result<Entry> {
    let fast = |b: bool| Entry::new(q, b.into(), Method::Fast);
    Ok(match q {
        Question::MClosed => match m_closed_violation(g) {
            None => fast(true),
            Some((x, y, z)) => {
                fast(false).with_counterexample(json!({ "path": ids(g, &[x, y, z]) }))
            }
        },
        Question::ExtensionOfMClosed => match is_extension_of_m_closed(g) {
            Some(p) => fast(true).with_witness(json!({
                "classes": p.blocks.iter().map(|b| ids(g, b)).collect::<Vec<_>>(),
            })),
            None => fast(false),
        },
        Question::CompleteBipartite => match complete_bipartite_parts(g) {
            Some((x, y)) => fast(true).with_witness(json!({ "parts": [ids(g, &x), ids(g, &y)] })),
            None => fast(false),
        },
        Question::CompleteMultipartite => match complete_multipartite_parts(g) {
            Some(parts) => fast(true).with_witness(
                json!({ "parts": parts.iter().map(|p| ids(g, p)).collect::<Vec<_>>() }),
            ),
            None => fast(false),
        },
        Question::ColourConnected => connectivity_entry(g, q, false)?,
        Question::TrailColourConnected => connectivity_entry(g, q, true)?,
        Question::EulerianFactor => factor_entry(g, false)?,
        Question::CycleFactor => factor_entry(g, true)?,
        Question::Hamiltonian => hamiltonian_entry(g, opts)?,
        Question::Supereulerian => supereulerian_entry(g, opts)?,
    })
}

/// Full report in the order of [`Question::ALL`].
pub fn analyze(g: &Graph, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    let mut entries = Vec::with_capacity(Question::ALL.len());
    for q in Question::ALL {
        let t = Instant::now();
        let mut e = answer(g, q, opts)?;
        if opts.timings {
            e.elapsed = Some(t.elapsed().as_secs_f64());
        }
        entries.push(e);
    }
    Ok(AnalysisReport {
        vertices: g.n(),
        edges: g.m(),
        entries,
    })
}

/// Plain-text rendering of a report.
pub fn render_table(report: &AnalysisReport) -> String {
    let doc = serde_json::to_value(report).expect("report serializes");
    let mut out = format!("{} vertices, {} edges\n", report.vertices, report.edges);
    for e in doc["entries"].as_array().expect("entries") {
        let name = e["question"].as_str().unwrap_or("");
        let answer = e["answer"].as_str().unwrap_or("");
        let method = e["method"].as_str().unwrap_or("");
        out.push_str(&format!("{name:<24} {answer:<8} {method:<7}"));
        if let Some(c) = e.get("counterexample") {
            out.push_str(&format!(" counterexample {c}"));
        }
        if let Some(n) = e.get("note").and_then(Value::as_str) {
            out.push_str(&format!(" ({n})"));
        }
        if let Some(t) = e.get("elapsed").and_then(Value::as_f64) {
            out.push_str(&format!(" {t:.3}s"));
        }
        let len = out.trim_end_matches(' ').len();
        out.truncate(len);
        out.push('\n');
    }
    out
}
