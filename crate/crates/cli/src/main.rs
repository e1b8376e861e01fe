use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hz4::graph::{emit_edge_list, emit_graph6, parse_edge_list, parse_graph6, Graph};
use hz4::harness::{classify, random_h4, sweep_stream, verify, RunConfig, Scale, Suite};
use hz4::oracle::{chromatic_index, OracleBudget};
use serde_json::json;

const USAGE: u8 = 2;
const FAILURE: u8 = 1;

#[derive(Parser)]
#[command(
    name = "hz4",
    version,
    about = "4-edge-coloring for max-degree-4 graphs whose core has max degree 2"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide class 1 or class 2 and print the coloring or certificate.
    Classify(GraphArgs),
    /// Print a verified 4-edge-coloring; fails on class-2 input.
    Color(GraphArgs),
    /// Exact chromatic index with a witness coloring.
    Oracle(GraphArgs),
    /// Generate random instances.
    Gen(GenArgs),
    /// Classify a graph6 stream and write JSONL with a closing summary line.
    Sweep(SweepArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Graph6,
    Edgelist,
}

#[derive(Args)]
struct Common {
    /// Input format. With edgelist the whole input is one graph.
    #[arg(long, value_enum, default_value = "graph6")]
    format: Format,
    /// Search-node limit per oracle call.
    #[arg(long, default_value_t = OracleBudget::DEFAULT_NODES)]
    budget_nodes: u64,
    /// Time limit in seconds per oracle call.
    #[arg(long, default_value_t = OracleBudget::DEFAULT_SECS)]
    budget_secs: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads.
    #[arg(long, env = "HZ4_JOBS")]
    jobs: Option<usize>,
    /// Write output here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GraphArgs {
    /// Input file; standard input when absent.
    input: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
    /// Attach the extension trace.
    #[arg(long)]
    trace: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    H4,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum, default_value = "h4")]
    family: Family,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SweepArgs {
    input: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    trace: bool,
    /// Record per-graph running time in `millis` (otherwise 0).
    #[arg(long)]
    timings: bool,
    /// Classify each component of a disconnected graph.
    #[arg(long)]
    per_component: bool,
    /// Largest order cross-checked against the exact oracle.
    #[arg(long, default_value_t = 12)]
    oracle_cutoff: usize,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    suite: Suite,
    /// Graph6 corpus for the theorem, val and hz suites.
    input: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
    /// Number of trials (per kind for lemmas).
    #[arg(long)]
    trials: Option<usize>,
    /// Largest generated order.
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long, default_value_t = 12)]
    oracle_cutoff: usize,
}

struct CliError {
    code: u8,
    msg: String,
}

fn usage(msg: impl ToString) -> CliError {
    CliError {
        code: USAGE,
        msg: msg.to_string(),
    }
}

fn failure(msg: impl ToString) -> CliError {
    CliError {
        code: FAILURE,
        msg: msg.to_string(),
    }
}

impl Common {
    fn config(&self) -> Result<RunConfig, CliError> {
        if !(self.budget_secs.is_finite() && self.budget_secs > 0.0) {
            return Err(usage("--budget-secs must be positive"));
        }
        let budget =
            OracleBudget::new(self.budget_nodes, Duration::from_secs_f64(self.budget_secs))
                .map_err(usage)?;
        Ok(RunConfig {
            seed: self.seed,
            budget,
            jobs: self.jobs,
            ..RunConfig::default()
        })
    }

    fn writer(&self) -> Result<Box<dyn Write>, CliError> {
        match &self.out {
            Some(p) => {
                let f = File::create(p).map_err(|e| usage(format!("{}: {e}", p.display())))?;
                Ok(Box::new(BufWriter::new(f)))
            }
            None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
        }
    }
}

fn reader(input: &Option<PathBuf>) -> Result<Box<dyn BufRead>, CliError> {
    match input {
        Some(p) => {
            let f = File::open(p).map_err(|e| usage(format!("{}: {e}", p.display())))?;
            Ok(Box::new(BufReader::new(f)))
        }
        None => Ok(Box::new(BufReader::new(io::stdin().lock()))),
    }
}

/// Graphs with their graph6 rendering; edge lists give one graph.
fn read_graphs(input: &Option<PathBuf>, format: Format) -> Result<Vec<(String, Graph)>, CliError> {
    let mut text = String::new();
    reader(input)?.read_to_string(&mut text).map_err(usage)?;
    match format {
        Format::Edgelist => {
            let g = parse_edge_list(&text).map_err(usage)?;
            Ok(vec![(emit_graph6(&g), g)])
        }
        Format::Graph6 => text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| {
                let g =
                    parse_graph6(l.trim()).map_err(|e| usage(format!("line {}: {e}", i + 1)))?;
                Ok((emit_graph6(&g), g))
            })
            .collect(),
    }
}

fn write_line(out: &mut dyn Write, v: &serde_json::Value) -> Result<(), CliError> {
    writeln!(out, "{v}").map_err(failure)
}

fn run_classify(a: &GraphArgs, color_only: bool) -> Result<(), CliError> {
    let mut cfg = a.common.config()?;
    cfg.trace = a.trace;
    let graphs = read_graphs(&a.input, a.common.format)?;
    let mut out = a.common.writer()?;
    let mut class2 = 0;
    for (i, (g6, g)) in graphs.iter().enumerate() {
        let run = RunConfig {
            seed: cfg.seed.wrapping_add(i as u64),
            ..cfg.clone()
        };
        let res = classify(g, &run).map_err(|e| match e {
            hz4::harness::HarnessError::OutOfScope(_) => usage(format!("{g6}: {e}")),
            _ => failure(format!("{g6}: {e}")),
        })?;
        let mut rec = json!({ "graph6": g6, "n": g.n(), "m": g.m() });
        let body = res.to_json(a.trace);
        if color_only {
            match body.get("coloring") {
                Some(c) => rec["coloring"] = c.clone(),
                None => class2 += 1,
            }
        } else if let (Some(dst), Some(src)) = (rec.as_object_mut(), body.as_object()) {
            dst.extend(src.clone());
        }
        if !(color_only && body.get("coloring").is_none()) {
            write_line(&mut out, &rec)?;
        }
    }
    out.flush().map_err(failure)?;
    if class2 > 0 {
        return Err(failure(format!("{class2} graph(s) need five colors")));
    }
    Ok(())
}

fn run_oracle(a: &GraphArgs) -> Result<(), CliError> {
    let cfg = a.common.config()?;
    let graphs = read_graphs(&a.input, a.common.format)?;
    let mut out = a.common.writer()?;
    for (g6, g) in &graphs {
        let r = chromatic_index(g, &cfg.budget).map_err(|e| failure(format!("{g6}: {e}")))?;
        let rec = json!({
            "graph6": g6, "n": g.n(), "m": g.m(), "max_degree": g.max_degree(),
            "chromatic_index": r.value, "coloring": r.witness.to_json_map(),
        });
        write_line(&mut out, &rec)?;
    }
    out.flush().map_err(failure)
}

fn run_gen(a: &GenArgs) -> Result<(), CliError> {
    let Family::H4 = a.family;
    let mut out = a.common.writer()?;
    for i in 0..a.count {
        let g = random_h4(a.n, a.common.seed.wrapping_add(i as u64)).map_err(usage)?;
        match a.common.format {
            Format::Graph6 => writeln!(out, "{}", emit_graph6(&g)),
            Format::Edgelist => writeln!(out, "{}", emit_edge_list(&g)),
        }
        .map_err(failure)?;
    }
    out.flush().map_err(failure)
}

fn run_sweep(a: &SweepArgs) -> Result<(), CliError> {
    if let Format::Edgelist = a.common.format {
        return Err(usage("sweep reads graph6 only"));
    }
    let cfg = RunConfig {
        trace: a.trace,
        record_timings: a.timings,
        per_component: a.per_component,
        oracle_cutoff: a.oracle_cutoff,
        ..a.common.config()?
    };
    let input = reader(&a.input)?;
    let out = a.common.writer()?;
    let summary = sweep_stream(input, out, &cfg).map_err(failure)?;
    if summary.clean() {
        Ok(())
    } else {
        Err(failure("sweep found failures; see the summary line"))
    }
}

fn run_verify(a: &VerifyArgs) -> Result<(), CliError> {
    let cfg = RunConfig {
        oracle_cutoff: a.oracle_cutoff,
        ..a.common.config()?
    };
    let mut scale = Scale::default_for(a.suite);
    if let Some(t) = a.trials {
        scale.trials = t;
    }
    if let Some(n) = a.max_n {
        scale.max_n = n;
    }
    let graphs = match &a.input {
        Some(_) => Some(
            read_graphs(&a.input, a.common.format)?
                .into_iter()
                .map(|(_, g)| g)
                .collect::<Vec<_>>(),
        ),
        None => None,
    };
    let report = verify(a.suite, &cfg, &scale, graphs.as_deref());
    let mut out = a.common.writer()?;
    write_line(&mut out, &report.to_json())?;
    out.flush().map_err(failure)?;
    if report.passed() {
        Ok(())
    } else {
        Err(failure(format!(
            "{} of {} trials failed",
            report.failures.len(),
            report.trials
        )))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Classify(a) => run_classify(a, false),
        Command::Color(a) => run_classify(a, true),
        Command::Oracle(a) => run_oracle(a),
        Command::Gen(a) => run_gen(a),
        Command::Sweep(a) => run_sweep(a),
        Command::Verify(a) => run_verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hz4: {}", e.msg);
            ExitCode::from(e.code)
        }
    }
}
