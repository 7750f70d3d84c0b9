use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ecgraph::analysis::{self, AnalysisOptions, Answer, Entry, Method};
use ecgraph::connect::{alternating_path, alternating_path_from, alternating_trail, alternating_trail_from};
use ecgraph::io::{graph_to_value, parse_graph, parse_witness, serialize_graph, witness_to_value, Format};
use ecgraph::oracle::{
    oracle_colour_connected, oracle_cycle_factor, oracle_eulerian_factor, oracle_ham_alternating, oracle_supereulerian,
    oracle_trail_colour_connected, OracleBudget,
};
use ecgraph::reductions::{fixture, generate, reduce_ham_to_supereulerian, Model, ReductionVariant, Role};
use ecgraph::structure::{blow_up, m_closure, similarity_partition, ClosurePolicy};
use ecgraph::supereuler::{bb_from_digraph, bb_to_digraph, bipartition, Arc, BipartiteDigraph};
use ecgraph::witness::{verify_witness, Witness};
use ecgraph::{Colour, Error, Graph, GraphError};

const USAGE: u8 = 2;
const NEGATIVE: u8 = 3;
const UNSUPPORTED: u8 = 4;
const BUDGET: u8 = 5;

#[derive(Parser)]
#[command(name = "ecgraph", version, about = "Alternating trails and cycles in 2-edge-coloured multigraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct OracleArgs {
    /// Largest vertex count handed to an exhaustive oracle.
    #[arg(long, default_value_t = 10)]
    max_n: usize,
    /// Largest edge count handed to an exhaustive oracle (at most 64).
    #[arg(long, default_value_t = 22)]
    max_edges: usize,
}

impl OracleArgs {
    fn budget(self) -> OracleBudget {
        OracleBudget { max_vertices: self.max_n, max_edges: self.max_edges, ..OracleBudget::from_env() }
    }

    fn options(self, witness: Option<WitnessSource>) -> AnalysisOptions {
        AnalysisOptions {
            max_n: self.max_n,
            budget: self.budget(),
            oracle_witness: witness == Some(WitnessSource::Oracle),
            timings: false,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WitnessSource {
    Oracle,
}

#[derive(Subcommand)]
enum Command {
    /// Answers every question about a graph.
    Analyze {
        file: String,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        oracle: OracleArgs,
        #[arg(long, value_enum)]
        witness: Option<WitnessSource>,
        /// Report the time spent per question.
        #[arg(long)]
        timings: bool,
    },
    /// Spanning closed alternating trail.
    Supereulerian {
        file: String,
        #[command(flatten)]
        oracle: OracleArgs,
        #[arg(long, value_enum)]
        witness: Option<WitnessSource>,
    },
    /// Alternating hamiltonian cycle.
    Hamiltonian {
        file: String,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Colour-connectivity, or a single path/trail query with --from/--to.
    Connectivity {
        file: String,
        /// Trails instead of paths.
        #[arg(long)]
        trail: bool,
        #[arg(long, requires = "to")]
        from: Option<String>,
        #[arg(long, requires = "from")]
        to: Option<String>,
        #[arg(long, default_value = "red")]
        start: String,
        #[arg(long)]
        end: Option<String>,
    },
    /// Eulerian factor, or alternating cycle factor with --cycle.
    Factor {
        file: String,
        #[arg(long)]
        cycle: bool,
    },
    /// Graph transformations.
    Transform {
        #[arg(value_enum)]
        kind: TransformKind,
        file: String,
        /// Multiplicities for `blowup`, comma separated in vertex order.
        #[arg(long)]
        mult: Option<String>,
        /// Seed for the colours added by `mclosure` (default: all red).
        #[arg(long)]
        seed: Option<u64>,
        /// Vertices of the first side for `bb-to-digraph`, comma separated.
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        dot: bool,
    },
    /// Prints a named example graph.
    Fixture {
        name: String,
        #[arg(long)]
        dot: bool,
    },
    /// Seeded random graph.
    Random {
        #[arg(long, value_enum)]
        model: ModelKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0.0)]
        parallel: f64,
        #[arg(long, default_value_t = 3)]
        a: usize,
        #[arg(long, default_value_t = 3)]
        b: usize,
        /// Part sizes for complete multipartite graphs, comma separated.
        #[arg(long, default_value = "2,2,2")]
        parts: String,
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long)]
        dot: bool,
    },
    /// Exhaustive answer for small graphs.
    Oracle {
        #[arg(value_enum)]
        question: OracleQuestion,
        file: String,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Checks a witness document against a graph.
    Verify { file: String, witness: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum TransformKind {
    NpReduce,
    NpReduceGadget,
    BbToDigraph,
    BbFromDigraph,
    Blowup,
    Quotient,
    Mclosure,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelKind {
    #[value(name = "random_2ec")]
    Random2ec,
    #[value(name = "mclosed_blowup")]
    MclosedBlowup,
    #[value(name = "complete_bipartite")]
    CompleteBipartite,
    #[value(name = "complete_multipartite")]
    CompleteMultipartite,
    #[value(name = "cmg_family")]
    CmgFamily,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleQuestion {
    Supereulerian,
    Ham,
    EulerianFactor,
    CycleFactor,
    ColourConnected,
    TrailColourConnected,
}

struct Fail {
    code: u8,
    message: String,
}

impl From<GraphError> for Fail {
    fn from(e: GraphError) -> Fail {
        Fail { code: USAGE, message: e.to_string() }
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        let code = match e {
            Error::NotExtensionOfMClosed | Error::NotCompleteBipartite | Error::NotCompleteMultipartite | Error::NotBipartite => {
                UNSUPPORTED
            }
            Error::BudgetExceeded(_) => BUDGET,
            Error::Internal(_) => 1,
            _ => USAGE,
        };
        Fail { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Fail {
    Fail { code: USAGE, message: message.into() }
}

type Outcome = Result<u8, Fail>;

fn read_input(file: &str) -> Result<String, Fail> {
    if file == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| usage(format!("reading stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(file).map_err(|e| usage(format!("reading {file}: {e}")))
    }
}

fn read_graph(file: &str) -> Result<Graph, Fail> {
    Ok(parse_graph(&read_input(file)?)?)
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializes"));
}

fn print_graph(g: &Graph, dot: bool) {
    print!("{}", serialize_graph(g, if dot { Format::Dot } else { Format::Json }));
}

fn vertex(g: &Graph, id: &str) -> Result<usize, Fail> {
    g.vertex(id).ok_or_else(|| Fail::from(GraphError::UnknownVertex(format!("`{id}`"))))
}

fn colour(token: &str) -> Result<Colour, Fail> {
    Colour::parse(token).ok_or_else(|| usage(format!("unknown colour `{token}`")))
}

fn list(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).collect()
}

fn numbers(s: &str) -> Result<Vec<usize>, Fail> {
    list(s).into_iter().map(|t| t.parse().map_err(|_| usage(format!("not a number: `{t}`")))).collect()
}

/// Exit code of a single-question entry.
fn entry_code(g: &Graph, e: &Entry, max_n: usize) -> u8 {
    match e.answer {
        Answer::True => 0,
        Answer::False => NEGATIVE,
        Answer::Unknown if e.method == Method::None && g.n() > max_n => UNSUPPORTED,
        Answer::Unknown => BUDGET,
    }
}

fn print_entry(e: &Entry) {
    print_json(&serde_json::to_value(e).expect("serializes"));
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Analyze { file, json, oracle, witness, timings } => {
            let g = read_graph(&file)?;
            let opts = AnalysisOptions { timings, ..oracle.options(witness) };
            let report = analysis::analyze(&g, &opts)?;
            if json {
                print_json(&serde_json::to_value(&report).expect("serializes"));
            } else {
                print!("{}", analysis::render_table(&report));
            }
            Ok(0)
        }
        Command::Supereulerian { file, oracle, witness } => {
            let g = read_graph(&file)?;
            let e = analysis::supereulerian_entry(&g, &oracle.options(witness))?;
            print_entry(&e);
            Ok(entry_code(&g, &e, oracle.max_n))
        }
        Command::Hamiltonian { file, oracle } => {
            let g = read_graph(&file)?;
            let e = analysis::hamiltonian_entry(&g, &oracle.options(None))?;
            print_entry(&e);
            Ok(entry_code(&g, &e, oracle.max_n))
        }
        Command::Connectivity { file, trail, from, to, start, end } => {
            let g = read_graph(&file)?;
            if let (Some(from), Some(to)) = (from, to) {
                let (x, y) = (vertex(&g, &from)?, vertex(&g, &to)?);
                let start = colour(&start)?;
                let found = match (trail, end.as_deref().map(colour).transpose()?) {
                    (false, None) => alternating_path_from(&g, x, y, start)?,
                    (false, Some(end)) => alternating_path(&g, x, y, start, end)?,
                    (true, None) => alternating_trail_from(&g, x, y, start)?,
                    (true, Some(end)) => alternating_trail(&g, x, y, start, end)?,
                };
                let answer = found.is_some();
                let witness = found.map(|t| witness_to_value(&g, &Witness::Trail(t)));
                print_json(&json!({ "answer": answer, "witness": witness }));
                return Ok(if answer { 0 } else { NEGATIVE });
            }
            let q = if trail { analysis::Question::TrailColourConnected } else { analysis::Question::ColourConnected };
            let e = analysis::answer(&g, q, &AnalysisOptions::no_oracle())?;
            print_entry(&e);
            Ok(entry_code(&g, &e, 0))
        }
        Command::Factor { file, cycle } => {
            let g = read_graph(&file)?;
            let e = analysis::factor_entry(&g, cycle)?;
            print_entry(&e);
            Ok(entry_code(&g, &e, 0))
        }
        Command::Transform { kind, file, mult, seed, x, dot } => transform(kind, &file, mult, seed, x, dot),
        Command::Fixture { name, dot } => {
            print_graph(&fixture(&name)?, dot);
            Ok(0)
        }
        Command::Random { model, seed, n, p, parallel, a, b, parts, r, dot } => {
            let model = match model {
                ModelKind::Random2ec => Model::Random2ec { n, p, parallel },
                ModelKind::MclosedBlowup => Model::MClosedBlowup { n },
                ModelKind::CompleteBipartite => Model::CompleteBipartite { a, b },
                ModelKind::CompleteMultipartite => Model::CompleteMultipartite { parts: numbers(&parts)? },
                ModelKind::CmgFamily => Model::CmgFamily { r },
            };
            print_graph(&generate(&model, seed)?, dot);
            Ok(0)
        }
        Command::Oracle { question, file, oracle } => {
            let g = read_graph(&file)?;
            let budget = oracle.budget();
            let show = |w: Option<Witness>| -> Value {
                match w {
                    Some(w) => {
                        debug_assert!(verify_witness(&g, &w).is_ok());
                        json!({ "answer": true, "witness": witness_to_value(&g, &w) })
                    }
                    None => json!({ "answer": false }),
                }
            };
            let out = match question {
                OracleQuestion::Supereulerian => show(oracle_supereulerian(&g, &budget)?.map(Witness::Trail)),
                OracleQuestion::Ham => show(oracle_ham_alternating(&g, &budget)?.map(Witness::Cycle)),
                OracleQuestion::EulerianFactor => show(oracle_eulerian_factor(&g, &budget)?.map(Witness::EulerianFactor)),
                OracleQuestion::CycleFactor => show(oracle_cycle_factor(&g, &budget)?.map(Witness::CycleFactor)),
                OracleQuestion::ColourConnected => json!({ "answer": oracle_colour_connected(&g, &budget)? }),
                OracleQuestion::TrailColourConnected => json!({ "answer": oracle_trail_colour_connected(&g, &budget)? }),
            };
            print_json(&out);
            Ok(if out["answer"] == json!(true) { 0 } else { NEGATIVE })
        }
        Command::Verify { file, witness } => {
            let g = read_graph(&file)?;
            let w = parse_witness(&g, &read_input(&witness)?)?;
            match verify_witness(&g, &w) {
                Ok(()) => {
                    print_json(&json!({ "valid": true }));
                    Ok(0)
                }
                Err(v) => {
                    print_json(&json!({ "valid": false, "violation": v.to_string() }));
                    Ok(NEGATIVE)
                }
            }
        }
    }
}

fn digraph_value(d: &BipartiteDigraph) -> Value {
    let x: Vec<&String> = d.vertices.iter().zip(&d.in_x).filter(|(_, &s)| s).map(|(v, _)| v).collect();
    let arcs: Vec<Value> = d
        .arcs
        .iter()
        .map(|a| json!({ "id": a.id, "tail": d.vertices[a.tail], "head": d.vertices[a.head] }))
        .collect();
    json!({ "vertices": d.vertices, "x": x, "arcs": arcs })
}

fn digraph_from_value(doc: &Value) -> Result<BipartiteDigraph, Fail> {
    let bad = |m: &str| Fail::from(GraphError::Schema { location: "$".into(), message: m.into() });
    let strings = |key: &str| -> Result<Vec<String>, Fail> {
        doc.get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| bad(&format!("missing array `{key}`")))?
            .iter()
            .map(|v| v.as_str().map(str::to_string).ok_or_else(|| bad(&format!("`{key}` must hold strings"))))
            .collect()
    };
    let vertices = strings("vertices")?;
    let x = strings("x")?;
    let index = |id: &str| -> Result<usize, Fail> {
        vertices.iter().position(|v| v == id).ok_or_else(|| Fail::from(GraphError::UnknownVertex(format!("`{id}`"))))
    };
    let in_x = vertices.iter().map(|v| x.contains(v)).collect();
    let mut arcs = Vec::new();
    for a in doc.get("arcs").and_then(Value::as_array).ok_or_else(|| bad("missing array `arcs`"))? {
        let field = |k: &str| a.get(k).and_then(Value::as_str).ok_or_else(|| bad(&format!("arc without `{k}`")));
        arcs.push(Arc { id: field("id")?.to_string(), tail: index(field("tail")?)?, head: index(field("head")?)? });
    }
    Ok(BipartiteDigraph { vertices, in_x, arcs })
}

fn transform(kind: TransformKind, file: &str, mult: Option<String>, seed: Option<u64>, x: Option<String>, dot: bool) -> Outcome {
    if let TransformKind::BbFromDigraph = kind {
        let doc: Value = serde_json::from_str(&read_input(file)?).map_err(|e| Fail::from(GraphError::Json(e.to_string())))?;
        print_graph(&bb_from_digraph(&digraph_from_value(&doc)?)?, dot);
        return Ok(0);
    }
    let g = read_graph(file)?;
    match kind {
        TransformKind::NpReduce | TransformKind::NpReduceGadget => {
            let variant = if matches!(kind, TransformKind::NpReduce) { ReductionVariant::Basic } else { ReductionVariant::Gadget };
            let map = reduce_ham_to_supereulerian(&g, variant)?;
            if dot {
                print_graph(&map.graph, true);
                return Ok(0);
            }
            let provenance: Vec<Value> = map
                .provenance
                .iter()
                .enumerate()
                .map(|(i, &(src, role))| {
                    let role = match role {
                        Role::Gadget(k) => format!("gadget{k}"),
                        Role::Original => "original".into(),
                        Role::R => "r".into(),
                        Role::B => "b".into(),
                    };
                    json!({ "vertex": map.graph.vertex_id(i), "source": g.vertex_id(src), "role": role })
                })
                .collect();
            let mut doc = graph_to_value(&map.graph);
            doc["provenance"] = Value::Array(provenance);
            print_json(&doc);
        }
        TransformKind::BbToDigraph => {
            let in_x = match x {
                Some(x) => {
                    let xs = list(&x);
                    for id in &xs {
                        vertex(&g, id)?;
                    }
                    g.vertex_ids().iter().map(|v| xs.contains(&v.as_str())).collect()
                }
                None => bipartition(&g).ok_or(Error::NotBipartite)?,
            };
            print_json(&digraph_value(&bb_to_digraph(&g, &in_x)?));
        }
        TransformKind::Blowup => {
            let m = numbers(mult.as_deref().ok_or_else(|| usage("blowup needs --mult"))?)?;
            if m.len() != g.n() {
                return Err(usage(format!("--mult has {} entries for {} vertices", m.len(), g.n())));
            }
            print_graph(&blow_up(&g, &m)?.graph, dot);
        }
        TransformKind::Quotient => {
            let p = similarity_partition(&g);
            if dot {
                print_graph(&p.quotient, true);
                return Ok(0);
            }
            let mut doc = graph_to_value(&p.quotient);
            doc["multiplicities"] = json!(p.multiplicities);
            print_json(&doc);
        }
        TransformKind::Mclosure => {
            let policy = seed.map_or(ClosurePolicy::AlwaysRed, ClosurePolicy::SeededRandom);
            print_graph(&m_closure(&g, policy), dot);
        }
        TransformKind::BbFromDigraph => unreachable!(),
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
