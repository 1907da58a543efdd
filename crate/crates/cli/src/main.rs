//! Command-line front end for the inducibility library.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use inducibility::checks::{checks, find_check, CheckInput};
use inducibility::density::density_polynomial;
use inducibility::graphs::{blowup, complete_multipartite, nested_blowup, symmetrize_to_multipartite};
use inducibility::optimize::{inducibility_limit, inducibility_partite, OptimizerConfig};
use inducibility::oracle::{max_over_all_graphs_capped, max_over_multipartite, DEFAULT_ALL_GRAPHS_CAP};
use inducibility::turan::{inducibility_turan, table14, table_csv, Certificate};
use inducibility::{Error, Graph, PartiteProfile};

#[derive(Parser)]
#[command(name = "inducibility", version, about = "Inducibility of complete multipartite and Turán graphs")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Seed for the optimizer's random starts.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Inducibility of the Turán graph T(s, r), optionally among K_k-free graphs.
    Turan {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        k: Option<u32>,
    },
    /// All Turán graphs with 3 <= s <= 14.
    Table14,
    /// Density polynomial of K_{parts} in graphons with m parts.
    Poly {
        #[arg(long)]
        parts: PartiteProfile,
        #[arg(long)]
        m: usize,
    },
    /// Numerical i_k of a complete multipartite graph.
    Opt {
        #[arg(long)]
        parts: PartiteProfile,
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        opt: OptArgs,
    },
    /// Optimum over m-part graphons for m up to m-max.
    Limit {
        #[arg(long)]
        parts: PartiteProfile,
        #[arg(long)]
        m_max: usize,
        #[command(flatten)]
        opt: OptArgs,
    },
    /// Exhaustive maximum density over small graphs.
    Oracle {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        forbid_k: Option<usize>,
        /// Search complete multipartite hosts with at most this many parts instead.
        #[arg(long)]
        multipartite: Option<usize>,
        /// Raise the cap on n for the all-graphs search.
        #[arg(long, requires = "accept_cost")]
        limit: Option<usize>,
        /// Acknowledge that a raised limit may take a very long time.
        #[arg(long)]
        accept_cost: bool,
        /// Write the witness graph to this file.
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Blow up a graph by part sizes, or nest it inside itself.
    Blowup {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_delimiter = ',', conflicts_with = "depth")]
        sizes: Option<Vec<usize>>,
        #[arg(long)]
        depth: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Symmetrize a graph into a complete multipartite one, never losing copies of the target.
    Symmetrize {
        /// Host graph file.
        #[arg(long)]
        graph: PathBuf,
        /// Target profile whose induced copies are tracked.
        #[arg(long)]
        parts: PartiteProfile,
    },
    /// Run a named structural check.
    Check {
        name: String,
        #[arg(long)]
        parts: Option<PartiteProfile>,
        #[arg(long)]
        graph: Vec<PathBuf>,
        #[arg(long)]
        s: Option<u32>,
        #[arg(long)]
        r: Option<u32>,
    },
}

#[derive(Args)]
struct OptArgs {
    #[arg(long, default_value_t = 64)]
    restarts: usize,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Target {
    #[arg(long)]
    parts: Option<PartiteProfile>,
    #[arg(long)]
    graph: Option<PathBuf>,
}

impl Target {
    fn load(&self) -> Result<Graph, Failure> {
        match (&self.parts, &self.graph) {
            (Some(p), _) => Ok(complete_multipartite(p)?),
            (None, Some(path)) => read_graph(path),
            (None, None) => Err(Failure::Input("give --parts or --graph".into())),
        }
    }
}

enum Failure {
    Core(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(text.parse()?)
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

const EXIT_INPUT: u8 = 2;
const EXIT_CONJECTURAL: u8 = 3;
const EXIT_NONCONVERGENCE: u8 = 4;

/// What a command produced: the JSON payload, optional custom renderings,
/// and the exit status it asks for.
struct Output {
    result: Value,
    text: Option<String>,
    csv: Option<String>,
    status: u8,
}

impl Output {
    fn new<T: Serialize>(result: &T) -> Self {
        Output {
            result: serde_json::to_value(result).expect("results serialize"),
            text: None,
            csv: None,
            status: 0,
        }
    }
}

fn optimizer(opt: &OptArgs, seed: u64) -> OptimizerConfig {
    OptimizerConfig { restarts: opt.restarts, tolerance: opt.tol, seed, ..OptimizerConfig::default() }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Turan { s, r, k } => {
            let res = inducibility_turan(*s, *r, *k)?;
            let mut out = Output::new(&res);
            if res.certificate == Certificate::Conjectural {
                out.status = EXIT_CONJECTURAL;
            }
            Ok(out)
        }
        Command::Table14 => {
            let rows = table14()?;
            let mut out = Output::new(&rows);
            let csv = table_csv(&rows);
            let mut text = String::new();
            for row in &rows {
                writeln!(
                    text,
                    "T({},{})  t={:<3} {:<45} {:.10}  {}",
                    row.s,
                    row.r,
                    row.t.to_string(),
                    format!("{}/{}", row.value.numer(), row.value.denom()),
                    row.value_float,
                    row.certificate
                )
                .unwrap();
            }
            out.text = Some(text);
            out.csv = Some(csv);
            Ok(out)
        }
        Command::Poly { parts, m } => {
            let poly = density_polynomial(parts, *m)?;
            let monomials: Vec<Value> = poly
                .monomials()
                .into_iter()
                .map(|(c, e)| json!({ "coeff": c.to_string(), "exponents": e }))
                .collect();
            let mut out = Output::new(&json!({
                "profile": parts.to_string(),
                "vars": poly.vars(),
                "degree": poly.degree(),
                "monomial_count": poly.monomial_count(),
                "monomials": monomials,
            }));
            out.text = Some(poly.dump());
            let mut csv = String::from("coeff");
            for i in 1..=*m {
                write!(csv, ",e{i}").unwrap();
            }
            csv.push('\n');
            for line in poly.dump().lines() {
                csv.push_str(&line.replace(' ', ","));
                csv.push('\n');
            }
            out.csv = Some(csv);
            Ok(out)
        }
        Command::Opt { parts, k, opt } => {
            match inducibility_partite(parts, *k, &optimizer(opt, cli.seed)) {
                Ok(rep) => Ok(Output::new(&rep)),
                Err(Error::NonConvergence(rep)) => {
                    let mut out = Output::new(&*rep);
                    out.status = EXIT_NONCONVERGENCE;
                    Ok(out)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Limit { parts, m_max, opt } => {
            match inducibility_limit(parts, *m_max, &optimizer(opt, cli.seed)) {
                Ok(rep) => Ok(Output::new(&rep)),
                Err(Error::NonConvergence(rep)) => {
                    let mut out = Output::new(&*rep);
                    out.status = EXIT_NONCONVERGENCE;
                    Ok(out)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Oracle { target, n, forbid_k, multipartite, limit, witness_out, .. } => {
            let f = target.load()?;
            let res = match multipartite {
                Some(max_parts) => {
                    if forbid_k.is_some() {
                        return Err(Failure::Input(
                            "--forbid-k applies to the all-graphs search only".into(),
                        ));
                    }
                    max_over_multipartite(&f, *n, *max_parts)?
                }
                None => max_over_all_graphs_capped(&f, *n, *forbid_k, limit.unwrap_or(DEFAULT_ALL_GRAPHS_CAP))?,
            };
            if let Some(path) = witness_out {
                write_file(path, &res.witness.to_edge_file())?;
            }
            Ok(Output::new(&res))
        }
        Command::Blowup { target, sizes, depth, out } => {
            let f = target.load()?;
            let g = match (sizes, depth) {
                (Some(sizes), _) => blowup(&f, sizes)?,
                (None, Some(d)) => nested_blowup(&f, *d)?,
                (None, None) => return Err(Failure::Input("give --sizes or --depth".into())),
            };
            if let Some(path) = out {
                write_file(path, &g.to_edge_file())?;
            }
            let mut res = Output::new(&json!({
                "n": g.order(),
                "edges": g.edges(),
                "profile": g.profile().map(|p| p.to_string()),
            }));
            res.text = Some(g.to_edge_file());
            Ok(res)
        }
        Command::Symmetrize { graph, parts } => {
            let g = read_graph(graph)?;
            let target = complete_multipartite(parts)?;
            let trace = symmetrize_to_multipartite(&g, &[target])?;
            Ok(Output::new(&json!({
                "steps": trace.steps,
                "monotone": trace.is_monotone(),
                "result": { "n": trace.graph.order(), "edges": trace.graph.edges() },
                "profile": trace.graph.profile().map(|p| p.to_string()),
            })))
        }
        Command::Check { name, parts, graph, s, r } => {
            let check = find_check(name).ok_or_else(|| {
                let names: Vec<&str> = checks().iter().map(|c| c.name()).collect();
                Failure::Input(format!("unknown check {name:?}; expected one of {}", names.join(", ")))
            })?;
            let graphs = graph.iter().map(|p| read_graph(p)).collect::<Result<Vec<_>, _>>()?;
            let input = CheckInput { parts: parts.clone(), graphs, s: *s, r: *r };
            Ok(Output::new(&check.run(&input)?))
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn key_value_text(v: &Value) -> String {
    match v {
        Value::Object(map) => {
            let mut out = String::new();
            for (k, v) in map {
                writeln!(out, "{k}: {}", scalar(v)).unwrap();
            }
            out
        }
        other => format!("{}\n", scalar(other)),
    }
}

fn object_csv(v: &Value) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let rows: Vec<&Value> = match v {
        Value::Array(items) => items.iter().collect(),
        other => vec![other],
    };
    if let Some(Value::Object(first)) = rows.first() {
        w.write_record(first.keys()).unwrap();
    }
    for row in rows {
        match row {
            Value::Object(map) => w.write_record(map.values().map(scalar)).unwrap(),
            other => w.write_record([scalar(other)]).unwrap(),
        }
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

fn render(cli: &Cli, out: &Output) -> String {
    match cli.format {
        Format::Json => {
            let argv: Vec<String> = std::env::args().skip(1).collect();
            let envelope = json!({ "command": argv, "format": cli.format, "result": out.result });
            format!("{}\n", serde_json::to_string_pretty(&envelope).unwrap())
        }
        Format::Text => out.text.clone().unwrap_or_else(|| key_value_text(&out.result)),
        Format::Csv => out.csv.clone().unwrap_or_else(|| object_csv(&out.result)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    }
    match run(&cli) {
        Ok(out) => {
            print!("{}", render(&cli, &out));
            match out.status {
                EXIT_CONJECTURAL => eprintln!("note: result is conjectural, not proven"),
                EXIT_NONCONVERGENCE => eprintln!("warning: no restart reached stationarity; best effort shown"),
                _ => {}
            }
            ExitCode::from(out.status)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Core(Error::Internal(msg))) => {
            eprintln!("internal error: {msg}");
            ExitCode::FAILURE
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
