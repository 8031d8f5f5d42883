//! Command-line front end: `invert`, `verify` and `gen`.
//!
//! Data goes to the `out` writer, diagnostics to `err`. Exit codes: 0 on
//! success, 1 when any verification check fails, 2 on input errors.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::geninv::{inverse_from_table, LabeledGraph};
use crate::graph6;
use crate::io::{format_rational, matrix_to_json, matrix_to_tsv, rational_to_f64};
use crate::matching::{mu_table, tree_summary};
use crate::tree::{self, Tree};
use crate::verify::{verify_all, VerificationReport, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "TREEINV_THREADS";

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Parser)]
#[command(name = "treeinv", version, about = "Generalized inverses of trees via maximum matchings")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print ν(T), m(T) and the generalized inverse of each input tree.
    Invert(InvertArgs),
    /// Check the inversion formula and its supporting identities.
    Verify(VerifyArgs),
    /// Generate random or exhaustive tree corpora.
    Gen(GenArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    /// graph6 for `.g6`/`.graph6` files, edge list otherwise.
    Auto,
    EdgeList,
    Graph6,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TreeFormat {
    EdgeList,
    Graph6,
}

#[derive(Debug, Args)]
pub struct InvertArgs {
    /// Input file (`-` for stdin).
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    pub format: InputFormat,
    #[arg(long = "out", value_enum, default_value = "json")]
    pub output: OutputFormat,
    /// Add decimal renderings next to the exact labels.
    #[arg(long)]
    pub float: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Input files (`-` for stdin); each may hold several records.
    pub inputs: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "auto")]
    pub format: InputFormat,
    /// Verify every labeled tree on this many vertices.
    #[arg(long, value_name = "N")]
    pub all_trees: Option<usize>,
    /// Verify this many random trees (with `--n`).
    #[arg(long, value_name = "COUNT")]
    pub random: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Only print the summary line.
    #[arg(long)]
    pub quiet: bool,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, conflicts_with = "exhaustive", required_unless_present = "exhaustive")]
    pub random: bool,
    #[arg(long)]
    pub exhaustive: bool,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Number of random trees (seeds `seed`, `seed + 1`, ...).
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    #[arg(long = "out-format", value_enum, default_value = "edge-list")]
    pub out_format: TreeFormat,
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

/// One parsed input record: where it came from and what it held.
struct Record {
    source: String,
    tree: Result<Tree, String>,
}

fn read_input(path: &Path) -> anyhow::Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn resolve_format(path: &Path, format: InputFormat) -> TreeFormat {
    match format {
        InputFormat::EdgeList => TreeFormat::EdgeList,
        InputFormat::Graph6 => TreeFormat::Graph6,
        InputFormat::Auto => match path.extension().and_then(|e| e.to_str()) {
            Some("g6") | Some("graph6") => TreeFormat::Graph6,
            _ => TreeFormat::EdgeList,
        },
    }
}

fn load_records(path: &Path, format: InputFormat) -> anyhow::Result<Vec<Record>> {
    let text = read_input(path)?;
    let name = path.display().to_string();
    let records: Vec<Record> = match resolve_format(path, format) {
        TreeFormat::Graph6 => graph6::parse_graph6_records(&text)
            .map(|(line, r)| Record {
                source: format!("{name}:{line}"),
                tree: r.map_err(|e| e.to_string()),
            })
            .collect(),
        TreeFormat::EdgeList => tree::parse_edge_list_records(&text)
            .into_iter()
            .map(|(line, r)| Record {
                source: format!("{name}:{line}"),
                tree: r.map_err(|e| e.to_string()),
            })
            .collect(),
    };
    if records.is_empty() {
        bail!("{name}: no trees found");
    }
    Ok(records)
}

fn thread_pool() -> rayon::ThreadPool {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(k) = std::env::var(THREADS_ENV).ok().and_then(|s| s.parse::<usize>().ok()) {
        builder = builder.num_threads(k.max(1));
    }
    builder.build().expect("thread pool")
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                EXIT_INPUT_ERROR
            } else {
                let _ = write!(out, "{rendered}");
                EXIT_OK
            };
        }
    };
    let result = match &config.command {
        Command::Invert(a) => cmd_invert(a, out, err),
        Command::Verify(a) => cmd_verify(a, out, err),
        Command::Gen(a) => cmd_gen(a, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_INPUT_ERROR
        }
    }
}

fn inverse_json(t: &Tree, float: bool) -> Value {
    let summary = tree_summary(t);
    let table = mu_table(t);
    let b = inverse_from_table(&table);
    let graph = LabeledGraph::from_matrix(&b);
    let edges: Vec<Value> = graph
        .edges
        .iter()
        .map(|(u, v, x)| {
            if float {
                json!([u, v, format_rational(x), rational_to_f64(x)])
            } else {
                json!([u, v, format_rational(x)])
            }
        })
        .collect();
    json!({
        "n": t.order(),
        "nu": summary.nu,
        "m": crate::io::big_number(&table.m),
        "edges": edges,
        "matrix": matrix_to_json(&b),
    })
}

fn inverse_tsv(t: &Tree, float: bool) -> String {
    let summary = tree_summary(t);
    let table = mu_table(t);
    let b = inverse_from_table(&table);
    let mut s = format!("# n\t{}\n# nu\t{}\n# m\t{}\n", t.order(), summary.nu, summary.m);
    s.push_str(&matrix_to_tsv(&b));
    if float {
        for i in 0..b.nrows() {
            let cells: Vec<String> = b.row(i).iter().map(|x| format!("{:.6}", rational_to_f64(x))).collect();
            s.push_str(&format!("# {}\n", cells.join("\t")));
        }
    }
    s
}

/// `invert`: exit 2 if any record fails to parse.
pub fn cmd_invert(args: &InvertArgs, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<i32> {
    let records = load_records(&args.input, args.format)?;
    let mut code = EXIT_OK;
    for record in records {
        match record.tree {
            Ok(t) => match args.output {
                OutputFormat::Json => writeln!(out, "{}", serde_json::to_string(&inverse_json(&t, args.float))?)?,
                OutputFormat::Tsv => write!(out, "{}", inverse_tsv(&t, args.float))?,
            },
            Err(e) => {
                writeln!(err, "{}: {e}", record.source)?;
                code = EXIT_INPUT_ERROR;
            }
        }
    }
    Ok(code)
}

enum Outcome {
    Report(Box<VerificationReport>),
    InputError(String, String),
}

/// `verify`: one JSON report per line, in input order.
pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<i32> {
    let mut records = Vec::new();
    for path in &args.inputs {
        match load_records(path, args.format) {
            Ok(r) => records.extend(r),
            Err(e) => records.push(Record {
                source: path.display().to_string(),
                tree: Err(format!("{e:#}")),
            }),
        }
    }
    if let Some(n) = args.all_trees {
        let trees = tree::enumerate_labeled_trees(n)?;
        records.extend(trees.enumerate().map(|(k, t)| Record {
            source: format!("all-trees({n})#{k}"),
            tree: Ok(t),
        }));
    }
    if let Some(count) = args.random {
        let Some(n) = args.n else {
            bail!("--random needs --n");
        };
        for k in 0..count as u64 {
            let seed = args.seed.wrapping_add(k);
            records.push(Record {
                source: format!("random(n={n}, seed={seed})"),
                tree: tree::random_tree(n, seed).map_err(|e| e.to_string()),
            });
        }
    }
    if records.is_empty() {
        bail!("nothing to verify: give input files, --all-trees or --random");
    }
    let config = VerifyConfig {
        trials: args.trials,
        seed: args.seed,
        tol: args.tol,
    };
    writeln!(err, "verifying {} record(s), seed {}", records.len(), args.seed)?;
    let outcomes: Vec<Outcome> = thread_pool().install(|| {
        records
            .into_par_iter()
            .map(|r| match r.tree {
                Ok(t) => Outcome::Report(Box::new(verify_all(&t, &config))),
                Err(e) => Outcome::InputError(r.source, e),
            })
            .collect()
    });
    let (mut ok, mut failed, mut bad_input) = (0usize, 0usize, 0usize);
    for outcome in &outcomes {
        match outcome {
            Outcome::Report(report) => {
                if report.all_passed() {
                    ok += 1;
                } else {
                    failed += 1;
                }
                if !args.quiet || !report.all_passed() {
                    writeln!(out, "{}", serde_json::to_string(report)?)?;
                }
            }
            Outcome::InputError(source, e) => {
                bad_input += 1;
                writeln!(out, "{}", json!({ "source": source, "error": e }))?;
                writeln!(err, "{source}: {e}")?;
            }
        }
    }
    writeln!(
        err,
        "{} tree(s): {ok} passed, {failed} failed, {bad_input} input error(s)",
        ok + failed
    )?;
    Ok(if bad_input > 0 {
        EXIT_INPUT_ERROR
    } else if failed > 0 {
        EXIT_CHECK_FAILED
    } else {
        EXIT_OK
    })
}

fn render(t: &Tree, format: TreeFormat) -> anyhow::Result<String> {
    Ok(match format {
        TreeFormat::EdgeList => t.to_edge_list(),
        TreeFormat::Graph6 => format!("{}\n", graph6::to_graph6(t)?),
    })
}

/// `gen`: random trees by seed, or all labeled trees of one order.
pub fn cmd_gen(args: &GenArgs, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<i32> {
    let mut text = String::new();
    if args.exhaustive {
        for t in tree::enumerate_labeled_trees(args.n)? {
            text.push_str(&render(&t, args.out_format)?);
        }
    } else {
        writeln!(err, "seed {}", args.seed)?;
        for k in 0..args.count as u64 {
            let t = tree::random_tree(args.n, args.seed.wrapping_add(k))?;
            text.push_str(&render(&t, args.out_format)?);
        }
    }
    match &args.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(EXIT_OK)
}
