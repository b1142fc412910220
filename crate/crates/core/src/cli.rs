//! The `univgraph` command line.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::corpus::{run_all, run_suite, RunConfig, Suite, SuiteReport};
use crate::decomposition::{
    blocks, tutte_decomposition, verify_decomposition, verify_tutte, TreeDecomposition, TutteDecomposition,
};
use crate::error::{Error, Result};
use crate::families::{generate, FamilySpec};
use crate::graph::{ColoredGraph, Graph};
use crate::io::{read_graph, to_dot, to_edge_list, to_graph6, to_json};
use crate::minor::{find_minor_model, find_subdivision};
use crate::search::SearchOutcome;
use crate::unavoidable::{check_reduction_facts, find_cycle_pair_minor, find_long_cycle, find_wheel_minor};
use crate::universal::{build_host, verify_host, Backend, HostDescription, HostMode};

#[derive(Parser, Debug)]
#[command(
    name = "univgraph",
    version,
    about = "Certified minors, decompositions and universal hosts"
)]
pub struct Cli {
    /// JSON file with `seed` and `budget`; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Search budget in nodes per operation.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a named family, e.g. `gen W 5` or `gen Cnm 3 4`.
    Gen {
        #[arg(required = true, num_args = 1..)]
        family: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::G6)]
        format: Format,
    },
    /// Search for a minor model (or a subdivision) of a family in a graph.
    Minor {
        /// Compact family name such as `K4` or `C3,4`.
        #[arg(long)]
        pattern: String,
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        subdivision: bool,
    },
    #[command(subcommand)]
    Decomp(Decomp),
    #[command(subcommand)]
    Unavoidable(Unavoidable),
    #[command(subcommand)]
    Universal(Universal),
    /// Run property suites and print JSON lines.
    Corpus {
        /// Suite name, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, hide = true)]
        inject_mutant: bool,
    },
    /// Membership, decomposition, embedding and host verification in one run.
    Pipeline {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        forbid: String,
        /// Host state to extend; a fresh adaptive host when absent.
        #[arg(long)]
        state: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        pad: usize,
    },
}

#[derive(Args, Debug)]
struct Input {
    /// Graph file (graph6, edge list or JSON); `-` or absent reads stdin.
    #[arg(long = "in")]
    path: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Decomp {
    Blocks {
        #[command(flatten)]
        input: Input,
    },
    Tutte {
        #[command(flatten)]
        input: Input,
    },
    /// Check a decomposition (plain or Tutte JSON) against a graph.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        decomp: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum Unavoidable {
    Cycle {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        n: usize,
    },
    Cyclepair {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    Wheel {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: usize,
    },
    Facts {
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand, Debug)]
enum Universal {
    Build {
        #[arg(long)]
        forbid: String,
        #[arg(long, value_enum, default_value_t = BackendArg::Adaptive)]
        backend: BackendArg,
        #[arg(long)]
        state: PathBuf,
    },
    Embed {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    Verify {
        #[arg(long)]
        state: PathBuf,
        #[arg(long, default_value_t = 0)]
        pad: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    G6,
    Edges,
    Dot,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BackendArg {
    Catalog,
    Adaptive,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Catalog => Backend::Catalog,
            BackendArg::Adaptive => Backend::Adaptive,
        }
    }
}

fn read_input(input: &Input) -> Result<Graph> {
    let text = match input.path.as_deref() {
        None => read_stdin()?,
        Some(p) if p == Path::new("-") => read_stdin()?,
        Some(p) => read_file(p)?,
    };
    Ok(read_graph(&text)?.into_graph())
}

fn read_stdin() -> Result<String> {
    let mut s = String::new();
    io::stdin()
        .read_to_string(&mut s)
        .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
    Ok(s)
}

fn read_file(p: &Path) -> Result<String> {
    fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))
}

fn write_file(p: &Path, text: &str) -> Result<()> {
    fs::write(p, text).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))
}

/// Writes to stdout; a closed pipe downstream is not an error.
fn out(text: &str) {
    let _ = io::stdout().lock().write_all(text.as_bytes());
}

fn emit<T: Serialize>(value: &T) {
    out(&format!(
        "{}\n",
        serde_json::to_string_pretty(value).expect("output serialises")
    ));
}

fn load_host(p: &Path) -> Result<HostDescription> {
    Ok(serde_json::from_str(&read_file(p)?)?)
}

fn save_host(p: &Path, host: &HostDescription) -> Result<()> {
    write_file(p, &serde_json::to_string_pretty(host)?)
}

fn config(cli: &Cli) -> Result<RunConfig> {
    let mut c = match &cli.config {
        Some(p) => serde_json::from_str(&read_file(p)?)?,
        None => RunConfig::default(),
    };
    if let Some(s) = cli.seed {
        c.seed = s;
    }
    if let Some(b) = cli.budget {
        c.budget = b;
    }
    Ok(c)
}

/// Parses arguments, runs the command, and maps errors to exit status 1.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if let Error::NotInClass { model: Some(m), .. } = &e {
                emit(&json!({ "in_class": false, "reason": e.to_string(), "model": m }));
            }
            ExitCode::FAILURE
        }
    }
}

pub fn run(cli: Cli) -> Result<ExitCode> {
    let cfg = config(&cli)?;
    let budget = cfg.budget;
    match cli.command {
        Command::Gen { family, format } => {
            let g = ColoredGraph::from(generate(&FamilySpec::parse_tokens(&family)?)?);
            let text = match format {
                Format::G6 => to_graph6(g.graph()) + "\n",
                Format::Edges => to_edge_list(g.graph()),
                Format::Dot => to_dot(&g),
                Format::Json => to_json(&g) + "\n",
            };
            out(&text);
        }
        Command::Minor {
            pattern,
            input,
            subdivision,
        } => {
            let spec = FamilySpec::parse_compact(&pattern)?;
            let p = generate(&spec)?;
            let g = read_input(&input)?;
            let found = if subdivision {
                find_subdivision(&p, &g, budget)?.map(|s| serde_json::to_value(s).expect("serialises"))
            } else {
                find_minor_model(&p, &g, budget)?.map(|m| serde_json::to_value(m).expect("serialises"))
            };
            match found {
                SearchOutcome::Found(v) => emit(&json!({ "pattern": spec, "found": true, "witness": v })),
                SearchOutcome::Absent => {
                    emit(&json!({ "pattern": spec, "found": false }));
                    return Ok(ExitCode::from(1));
                }
                SearchOutcome::Inconclusive { explored } => {
                    emit(&json!({ "pattern": spec, "inconclusive": true, "explored": explored }));
                    return Ok(ExitCode::from(2));
                }
            }
        }
        Command::Decomp(d) => match d {
            Decomp::Blocks { input } => emit(&blocks(&read_input(&input)?)),
            Decomp::Tutte { input } => emit(&tutte_decomposition(&read_input(&input)?)),
            Decomp::Verify { input, decomp } => {
                let g = read_input(&input)?;
                let text = read_file(&decomp)?;
                let ok = if let Ok(t) = serde_json::from_str::<TutteDecomposition>(&text) {
                    let r = verify_tutte(&g, &t);
                    emit(&r);
                    r.is_valid()
                } else {
                    let td: TreeDecomposition = serde_json::from_str(&text)?;
                    let r = verify_decomposition(&g, &td);
                    emit(&r);
                    r.valid
                };
                if !ok {
                    return Ok(ExitCode::from(1));
                }
            }
        },
        Command::Unavoidable(u) => match u {
            Unavoidable::Cycle { input, n } => {
                let lc = find_long_cycle(&read_input(&input)?, n, None, budget)?;
                emit(&json!({ "cycle": lc.cycle, "path": lc.path }));
            }
            Unavoidable::Cyclepair { input, n, m } => emit(&find_cycle_pair_minor(&read_input(&input)?, n, m, budget)?),
            Unavoidable::Wheel { input, k } => match find_wheel_minor(&read_input(&input)?, k, budget)? {
                SearchOutcome::Found(c) => emit(&c),
                SearchOutcome::Absent => {
                    emit(&json!({ "found": false, "k": k }));
                    return Ok(ExitCode::from(1));
                }
                SearchOutcome::Inconclusive { explored } => {
                    emit(&json!({ "inconclusive": true, "explored": explored }));
                    return Ok(ExitCode::from(2));
                }
            },
            Unavoidable::Facts { k } => {
                let r = check_reduction_facts(k, budget)?;
                emit(&r);
                if !r.all_true() {
                    return Ok(ExitCode::from(1));
                }
            }
        },
        Command::Universal(u) => match u {
            Universal::Build { forbid, backend, state } => {
                let mut host = build_host(&FamilySpec::parse_compact(&forbid)?, backend.into())?;
                host.limits.budget = budget;
                save_host(&state, &host)?;
                eprintln!(
                    "{:?} for {} with the {} backend",
                    host.mode, host.forbidden, host.backend
                );
            }
            Universal::Embed { input, state, cert } => {
                let mut host = load_host(&state)?;
                let c = host.embed(&read_input(&input)?)?;
                save_host(&state, &host)?;
                let text = serde_json::to_string_pretty(&c)?;
                match cert {
                    Some(p) => write_file(&p, &text)?,
                    None => out(&format!("{text}\n")),
                }
                eprintln!(
                    "embedded {} vertices; host has {} pieces",
                    c.guest.order(),
                    host.pieces.len()
                );
            }
            Universal::Verify { state, pad } => {
                let r = verify_host(&load_host(&state)?, pad)?;
                emit(&r);
                if !r.is_free() {
                    return Ok(ExitCode::from(1));
                }
            }
        },
        Command::Corpus {
            suite,
            out,
            inject_mutant,
        } => {
            let cfg = RunConfig {
                mutant: inject_mutant,
                ..cfg
            };
            let reports: Vec<SuiteReport> = if suite == "all" {
                run_all(&cfg)
            } else {
                vec![run_suite(suite.parse::<Suite>()?, &cfg)]
            };
            let text: String = reports.iter().map(SuiteReport::to_jsonl).collect();
            match out {
                Some(p) => write_file(&p, &text)?,
                None => io::stdout()
                    .write_all(text.as_bytes())
                    .map_err(|e| Error::Parse(format!("stdout: {e}")))?,
            }
            for r in &reports {
                let s = &r.summary;
                eprintln!(
                    "{:<22} {:>5} instances  {:>5} pass  {:>3} fail  {:>3} inconclusive",
                    s.suite, s.instances, s.passed, s.failed, s.inconclusive
                );
            }
            if reports.iter().any(|r| r.summary.failed > 0) {
                return Ok(ExitCode::from(1));
            }
            if reports.iter().any(|r| r.summary.inconclusive > 0) {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Pipeline {
            input,
            forbid,
            state,
            pad,
        } => {
            let g = read_input(&input)?;
            let mut host = match &state {
                Some(p) if p.exists() => load_host(p)?,
                _ => {
                    let mut h = build_host(&FamilySpec::parse_compact(&forbid)?, Backend::Adaptive)?;
                    h.limits.budget = budget;
                    h
                }
            };
            if let Err(e) = host.check_member(&g) {
                let model = match &e {
                    Error::NotInClass { model, .. } => model.clone(),
                    _ => None,
                };
                emit(&json!({ "membership": { "in_class": false, "reason": e.to_string(), "model": model } }));
                eprintln!("{e}");
                return Ok(ExitCode::from(1));
            }
            let decomposition = match host.mode {
                HostMode::CycleHost => serde_json::to_value(blocks(&g))?,
                HostMode::WheelHost => serde_json::to_value(tutte_decomposition(&g))?,
            };
            let cert = host.embed(&g)?;
            let report = verify_host(&host, pad)?;
            if let Some(p) = &state {
                save_host(p, &host)?;
            }
            emit(&json!({
                "membership": { "in_class": true, "forbidden": host.forbidden },
                "decomposition": decomposition,
                "certificate": cert,
                "certificate_verified": cert.verify(),
                "host_report": report,
            }));
            if !report.is_free() || !cert.verify() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
