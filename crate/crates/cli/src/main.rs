use arglab::constructions::{Built, Registry};
use arglab::designs::{design_json_decode, design_json_encode, dual_property_check, gdd_from_graph, Gdd};
use arglab::graph::{digraph6_encode, digraph_json_encode, graph6_encode, graph_json_encode, read_graph};
use arglab::schemes::scheme_from_q_regular_graph;
use arglab::spectrum::{minimal_polynomial, srg_eigenvalues};
use arglab::verifiers::{
    amply_regular_params, classify, distance_regular_array, feasibility_diagnostics, strongly_regular_params, ArParams,
    Classification,
};
use arglab::{Digraph, Error, Graph, PairWitness};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "arglab", version, about = "Build and verify amply regular graphs, designs and schemes")]
struct Cli {
    /// Print a short human-readable summary instead of JSON.
    #[arg(long, global = true)]
    human: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a named family and write it out.
    Build(BuildArgs),
    /// Extract regularity parameters and compare with expectations.
    Verify(VerifyArgs),
    /// Decide which diameter ≥ 4 case a graph falls in.
    Classify(InputArgs),
    /// Extract the group divisible design at a base vertex, or check a design file.
    Gdd(GddArgs),
    /// Build and verify the 5-class scheme of a Q-regular graph.
    Scheme(InputArgs),
    /// Minimal polynomial and distinct eigenvalue count.
    Spectrum(InputArgs),
    /// List the families known to `build`.
    Families,
}

#[derive(Copy, Clone, Default, ValueEnum)]
enum Format {
    #[default]
    Graph6,
    Json,
}

#[derive(Args)]
struct BuildArgs {
    family: String,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct InputArgs {
    /// Graph file in graph6 or JSON.
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Expected parameters `v,k,l,m`.
    #[arg(long, value_parser = parse_params)]
    expect: Option<ArParams>,
}

#[derive(Args)]
struct GddArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Base vertex for extraction.
    #[arg(long, default_value_t = 0)]
    vertex: usize,
    /// Treat the input as a design JSON document.
    #[arg(long)]
    design: bool,
    /// Write the extracted design JSON here.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_params(s: &str) -> Result<ArParams, String> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| format!("'{t}' is not a non-negative integer")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [v, k, l, m] => Ok(ArParams::new(v, k, l, m)),
        _ => Err(format!("expected four values v,k,l,m, got {}", parts.len())),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
enum Status {
    Pass,
    Fail,
    InputError,
    NotApplicable,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Self::Pass => 0,
            Self::Fail => 1,
            Self::InputError => 2,
            Self::NotApplicable => 3,
        }
    }
}

struct Outcome {
    status: Status,
    payload: Value,
    witness: Option<Value>,
    human: String,
}

impl Outcome {
    fn pass(payload: Value, human: String) -> Self {
        Self { status: Status::Pass, payload, witness: None, human }
    }

    fn fail(payload: Value, witness: Value, human: String) -> Self {
        Self { status: Status::Fail, payload, witness: Some(witness), human }
    }

    fn from_error(e: &Error) -> Self {
        let status = match e {
            Error::NotApplicable(_) => Status::NotApplicable,
            Error::InvalidPrimePower(_)
            | Error::MalformedGraph6(_)
            | Error::MalformedJson(_)
            | Error::CongruenceError(_)
            | Error::InvalidOrder(_)
            | Error::TooLarge { .. }
            | Error::UnknownFamily(_)
            | Error::MissingParameter(_)
            | Error::VertexOutOfRange { .. }
            | Error::InvalidEdge { .. }
            | Error::DimensionMismatch(_) => Status::InputError,
            _ => Status::Fail,
        };
        let witness = (status == Status::Fail).then(|| error_witness(e));
        Self { status, payload: json!({ "message": e.to_string() }), witness, human: e.to_string() }
    }

    fn input_error(message: String) -> Self {
        Self { status: Status::InputError, payload: json!({ "message": message }), witness: None, human: message }
    }
}

#[derive(Serialize)]
struct Report<'a> {
    command: &'a str,
    status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<&'a Value>,
    payload: &'a Value,
}

fn error_witness(e: &Error) -> Value {
    let pair = |w: &PairWitness| serde_json::to_value(w).expect("witness serialises");
    match e {
        Error::NotAmplyRegular(w) | Error::NotStronglyRegular(w) | Error::NotDistanceRegular(w) | Error::NotSesquiRegular(w) => {
            pair(w)
        }
        Error::NotRegular { vertex, degree, expected } => {
            json!({ "quantity": "k", "vertex": vertex, "found": degree, "expected": expected })
        }
        Error::NotQRegular { vertex, detail } => json!({ "vertex": vertex, "detail": detail }),
        other => json!({ "reason": other.to_string() }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo: Vec<String> = std::env::args().skip(1).collect();
    let echo = echo.join(" ");
    let outcome = run(&cli.command);
    if cli.human {
        match outcome.status {
            Status::Pass | Status::Fail => println!("{}", outcome.human),
            _ => eprintln!("arglab: {}", outcome.human),
        }
    } else {
        let report = Report {
            command: &echo,
            status: outcome.status,
            witness: outcome.witness.as_ref(),
            payload: &outcome.payload,
        };
        println!("{}", serde_json::to_string(&report).expect("report serialises"));
    }
    ExitCode::from(outcome.status.code())
}

fn run(command: &Command) -> Outcome {
    match command {
        Command::Build(a) => build(a),
        Command::Verify(a) => with_graph(&a.input.input, |g| verify(g, a.expect)),
        Command::Classify(a) => with_graph(&a.input, run_classify),
        Command::Gdd(a) => gdd(a),
        Command::Scheme(a) => with_graph(&a.input, scheme),
        Command::Spectrum(a) => with_graph(&a.input, spectrum),
        Command::Families => families(),
    }
}

fn read_input(path: &Path) -> Result<Vec<u8>, Outcome> {
    std::fs::read(path).map_err(|e| Outcome::input_error(format!("cannot read {}: {e}", path.display())))
}

fn with_graph(path: &Path, f: impl FnOnce(&Graph) -> Outcome) -> Outcome {
    let bytes = match read_input(path) {
        Ok(b) => b,
        Err(o) => return o,
    };
    match read_graph(&bytes) {
        Ok(g) => f(&g),
        Err(e) => Outcome::from_error(&e),
    }
}

fn write_output(path: &Path, text: &str) -> Result<(), Outcome> {
    std::fs::write(path, format!("{text}\n"))
        .map_err(|e| Outcome::input_error(format!("cannot write {}: {e}", path.display())))
}

fn families() -> Outcome {
    let registry = Registry::default();
    let list: Vec<Value> = registry
        .names()
        .map(|name| {
            let f = registry.get(name).expect("listed family exists");
            json!({ "name": name, "needs_q": f.needs_q(), "summary": f.summary() })
        })
        .collect();
    let human = registry
        .names()
        .map(|name| format!("{name:<18} {}", registry.get(name).expect("listed family exists").summary()))
        .collect::<Vec<_>>()
        .join("\n");
    Outcome::pass(json!({ "families": list, "max_q": registry.guard().max_q }), human)
}

fn graph_summary(g: &Graph) -> Value {
    let dist = g.distances();
    json!({
        "order": g.order(),
        "edges": g.edge_count(),
        "connected": dist.is_connected(),
        "diameter": dist.diameter(),
        "bipartite": g.is_bipartite(),
        "params": amply_regular_params(g).ok().map(|p| p.to_string()),
    })
}

fn digraph_summary(d: &Digraph) -> Value {
    let degrees: Vec<usize> = (0..d.order()).map(|u| d.out_degree(u)).collect();
    let regular = degrees.windows(2).all(|w| w[0] == w[1]);
    json!({
        "order": d.order(),
        "arcs": d.arcs().count(),
        "tournament": d.is_tournament(),
        "out_degree": regular.then(|| degrees.first().copied().unwrap_or(0)),
    })
}

fn build(a: &BuildArgs) -> Outcome {
    let registry = Registry::default();
    let built = match registry.build(&a.family, a.q) {
        Ok(b) => b,
        Err(e) => return Outcome::from_error(&e),
    };
    let (text, mut summary) = match (&built, a.format) {
        (Built::Graph(g), Format::Graph6) => (graph6_encode(g), graph_summary(g)),
        (Built::Graph(g), Format::Json) => (graph_json_encode(g), graph_summary(g)),
        (Built::Digraph(d), Format::Graph6) => (digraph6_encode(d), digraph_summary(d)),
        (Built::Digraph(d), Format::Json) => (digraph_json_encode(d), digraph_summary(d)),
    };
    let target = match &a.out {
        Some(path) => {
            if let Err(o) = write_output(path, &text) {
                return o;
            }
            format!(" -> {}", path.display())
        }
        None => {
            summary["graph"] = Value::String(text.clone());
            String::new()
        }
    };
    summary["family"] = json!(a.family);
    summary["q"] = json!(a.q);
    let human = match &built {
        Built::Graph(_) => format!(
            "{}{}: {} vertices, parameters {}, diameter {}{}",
            a.family,
            a.q.map(|q| format!(" q={q}")).unwrap_or_default(),
            summary["order"],
            summary["params"].as_str().unwrap_or("none"),
            summary["diameter"],
            target
        ),
        Built::Digraph(_) => format!("{}: {} vertices, {} arcs{}", a.family, summary["order"], summary["arcs"], target),
    };
    if a.out.is_none() {
        return Outcome::pass(summary, format!("{human}\n{text}"));
    }
    Outcome::pass(summary, human)
}

fn parameter_witness(g: &Graph, found: ArParams, expected: ArParams) -> Value {
    if found.v != expected.v {
        return json!({ "quantity": "v", "found": found.v, "expected": expected.v });
    }
    if found.k != expected.k {
        return json!({ "quantity": "k", "vertex": 0, "found": found.k, "expected": expected.k });
    }
    let dist = g.distances();
    let at = |d: u32| {
        (0..g.order()).flat_map(|x| (x + 1..g.order()).map(move |y| (x, y))).find(|&(x, y)| dist.get(x, y) == Some(d))
    };
    let (quantity, d, want) = if found.lambda != expected.lambda {
        ("lambda", 1, expected.lambda)
    } else {
        ("mu", 2, expected.mu)
    };
    match at(d) {
        Some((x, y)) => serde_json::to_value(PairWitness {
            quantity: quantity.into(),
            x,
            y,
            distance: d,
            found: g.common_neighbor_count(x, y),
            expected: want,
        })
        .expect("witness serialises"),
        None => json!({ "quantity": quantity, "found": null, "expected": want, "reason": format!("no pair at distance {d}") }),
    }
}

fn verify(g: &Graph, expect: Option<ArParams>) -> Outcome {
    let dist = g.distances();
    let diameter = dist.diameter();
    let mut payload = json!({
        "order": g.order(),
        "connected": dist.is_connected(),
        "diameter": diameter,
        "bipartite": g.is_bipartite(),
        "expected": expect,
    });
    if !dist.is_connected() {
        return Outcome::fail(payload, json!({ "reason": "graph is disconnected" }), "FAIL: graph is disconnected".into());
    }
    let params = match amply_regular_params(g) {
        Ok(p) => p,
        Err(e) => {
            let o = Outcome::from_error(&e);
            return Outcome { payload, human: format!("FAIL: {e}"), ..o };
        }
    };
    let d = diameter.expect("connected");
    let feasibility = feasibility_diagnostics(params, d);
    payload["amply_regular"] = json!(params);
    payload["strongly_regular"] = json!(if d == 2 { strongly_regular_params(g).ok() } else { None });
    payload["intersection_array"] = json!(distance_regular_array(g).ok());
    payload["feasibility"] = json!(feasibility);
    let summary = format!("parameters {params}, diameter {d}, bipartite {}", payload["bipartite"]);
    if let Some(expected) = expect.filter(|&e| e != params) {
        let witness = parameter_witness(g, params, expected);
        return Outcome::fail(payload, witness, format!("FAIL: {summary}; expected {expected}"));
    }
    if !feasibility.all_pass() {
        let violated: Vec<&str> = feasibility.violations().map(|c| c.bound).collect();
        let human = format!("FAIL: {summary}; violated: {}", violated.join("; "));
        return Outcome::fail(payload, json!({ "violated": violated }), human);
    }
    Outcome::pass(payload, format!("PASS: {summary}"))
}

fn run_classify(g: &Graph) -> Outcome {
    let c = match classify(g) {
        Ok(c) => c,
        Err(e) => return Outcome::from_error(&e),
    };
    let mut payload = json!({ "classification": c });
    match &c {
        Classification::FiveCube { folded, folded_complement, complement_eigenvalues, .. } => Outcome::pass(
            payload,
            format!(
                "FiveCube: folded SRG{folded}, complement SRG{folded_complement} with eigenvalues {}, {}",
                complement_eigenvalues.theta1, complement_eigenvalues.theta2
            ),
        ),
        Classification::K2BoxLambda { params, .. } => {
            Outcome::pass(payload, format!("K2BoxLambda: parameters {params}, not Q-regular"))
        }
        Classification::GddIncidence { params, design, .. } => {
            let dual = dual_property_check(&design.gdd);
            let scheme = scheme_from_q_regular_graph(g);
            let eigenvalues = minimal_polynomial(g).map(|p| p.degree());
            payload["dual_property"] = json!(dual.is_some());
            payload["scheme"] = match &scheme {
                Ok(s) => json!(s.report()),
                Err(e) => json!({ "error": e.to_string() }),
            };
            payload["distinct_eigenvalues"] = json!(eigenvalues.as_ref().ok());
            let human = format!(
                "GddIncidence: parameters {params}, design {}, dual property {}, scheme {}, {} distinct eigenvalues",
                design.gdd.params,
                dual.is_some(),
                if scheme.is_ok() { "ok" } else { "invalid" },
                eigenvalues.as_ref().map_or("?".to_string(), ToString::to_string)
            );
            let mut problems = Vec::new();
            if dual.is_none() {
                problems.push("dual property fails".to_string());
            }
            if let Err(e) = &scheme {
                problems.push(format!("scheme: {e}"));
            }
            match &eigenvalues {
                Ok(6) => {}
                Ok(n) => problems.push(format!("{n} distinct eigenvalues, expected 6")),
                Err(e) => problems.push(format!("spectrum: {e}")),
            }
            if problems.is_empty() {
                Outcome::pass(payload, human)
            } else {
                Outcome::fail(payload, json!({ "problems": problems }), format!("FAIL: {human}"))
            }
        }
        Classification::Contradiction { reason, .. } => {
            let human = format!("Contradiction: {reason}");
            Outcome::fail(payload, json!({ "reason": reason }), human)
        }
    }
}

fn design_payload(d: &Gdd) -> (Value, bool) {
    let dual = dual_property_check(d);
    let replication = d.structure.replication();
    let payload = json!({
        "params": d.params,
        "points": d.structure.points(),
        "blocks": d.structure.blocks().len(),
        "replication": replication.windows(2).all(|w| w[0] == w[1]).then(|| replication.first().copied()).flatten(),
        "dual_property": dual.is_some(),
        "dual_groups": dual.map(|g| g.block_groups),
    });
    let dual_ok = payload["dual_property"] == json!(true);
    (payload, dual_ok)
}

fn gdd(a: &GddArgs) -> Outcome {
    let bytes = match read_input(&a.input) {
        Ok(b) => b,
        Err(o) => return o,
    };
    if a.design {
        let doc = match design_json_decode(&bytes) {
            Ok(d) => d,
            Err(e) => return Outcome::from_error(&e),
        };
        return match doc.check() {
            Ok(gdd) => {
                let (payload, dual) = design_payload(&gdd);
                Outcome::pass(payload, format!("{} holds, dual property {dual}", gdd.params))
            }
            Err(e) => {
                let o = Outcome::from_error(&e);
                Outcome { human: format!("FAIL: {e}"), ..o }
            }
        };
    }
    let g = match read_graph(&bytes) {
        Ok(g) => g,
        Err(e) => return Outcome::from_error(&e),
    };
    let extracted = match gdd_from_graph(&g, a.vertex) {
        Ok(x) => x,
        Err(e) => return Outcome::from_error(&e),
    };
    let text = design_json_encode(&extracted.gdd);
    let (mut payload, dual) = design_payload(&extracted.gdd);
    payload["base_vertex"] = json!(extracted.base_vertex);
    match &a.out {
        Some(path) => {
            if let Err(o) = write_output(path, &text) {
                return o;
            }
        }
        None => payload["design"] = serde_json::from_str(&text).expect("design JSON is valid"),
    }
    Outcome::pass(payload, format!("{} at vertex {}, dual property {dual}", extracted.gdd.params, a.vertex))
}

fn scheme(g: &Graph) -> Outcome {
    match scheme_from_q_regular_graph(g) {
        Ok(s) => {
            let report = s.report();
            let human = format!(
                "{}-class {} scheme on {} points, valencies {:?}",
                report.classes,
                if report.symmetric { "symmetric" } else { "non-symmetric" },
                s.order(),
                report.valencies
            );
            Outcome::pass(json!(report), human)
        }
        Err(e) => Outcome::from_error(&e),
    }
}

fn spectrum(g: &Graph) -> Outcome {
    let poly = match minimal_polynomial(g) {
        Ok(p) => p,
        Err(e) => return Outcome::from_error(&e),
    };
    let srg = strongly_regular_params(g).ok().and_then(|p| srg_eigenvalues(p).ok());
    let payload = json!({
        "order": g.order(),
        "distinct_eigenvalues": poly.degree(),
        "minimal_polynomial": poly,
        "srg_eigenvalues": srg,
    });
    let mut human = format!("{} distinct eigenvalues", poly.degree());
    if let Some(e) = srg {
        human.push_str(&format!("; SRG eigenvalues {} and {}", e.theta1, e.theta2));
    }
    Outcome::pass(payload, human)
}
