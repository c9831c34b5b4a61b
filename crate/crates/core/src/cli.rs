//! Batch commands behind the `qcluster` binary.
//!
//! Exit codes: 0 success, 1 verification failure (or a failed computation),
//! 2 usage error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::grothendieck::{check_homomorphism, check_independence, check_kr_labels, check_subring};
use crate::seed::enumerate_exchange_graph;
use crate::sl2::{lambda_matrix, Sl2Instance};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "qcluster",
    version,
    about = "Exact quantum cluster algebra computations for the sl2 seed"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Instance size (rank n + 1)
    #[arg(long, global = true, default_value_t = 2)]
    pub n: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write to this file instead of stdout
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print Λ_n, B̃_n, d and the generators X_l
    Build,
    /// Mutate the initial seed along a sequence of 1-based vertices
    Mutate {
        /// Comma-separated vertices, e.g. 1,2,1
        #[arg(long, value_delimiter = ',')]
        seq: Vec<usize>,
    },
    /// Enumerate the exchange graph
    Enumerate {
        #[arg(long, default_value_t = 100_000)]
        max_seeds: usize,
    },
    /// Run every check against the presentation of Rep_{t,n}
    Verify {
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
        /// Random word pairs for the homomorphism check
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Longest word in the homomorphism and independence checks
        #[arg(long, default_value_t = 3)]
        max_len: usize,
        #[arg(long, default_value_t = 100_000)]
        max_seeds: usize,
        /// Swap the sign of λ_12 before building (negative control)
        #[arg(long, hide = true)]
        corrupt_lambda: bool,
    },
}

/// Result of one command: the rendered document and its exit code.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Failed(e)
    }
}

/// Parses arguments, runs, writes output; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return EXIT_USAGE;
    }
    match execute(&cli) {
        Ok(outcome) => match emit(&cli, &outcome.output) {
            Ok(()) => outcome.code,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_FAILURE
            }
        },
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Failed(e)) => {
            eprintln!("error: {e}");
            EXIT_FAILURE
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("QCLUSTER_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| format!("QCLUSTER_THREADS must be a positive integer, got {raw:?}"))?;
    // a second call in the same process is harmless
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
    Ok(())
}

fn emit(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.output {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

/// Runs a parsed command without touching stdout or the filesystem.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    if cli.n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let (value, text, ok) = match &cli.command {
        Command::Build => build(cli.n)?,
        Command::Mutate { seq } => mutate(cli.n, seq)?,
        Command::Enumerate { max_seeds } => enumerate(cli.n, *max_seeds)?,
        Command::Verify {
            rng_seed,
            samples,
            max_len,
            max_seeds,
            corrupt_lambda,
        } => verify(
            cli.n,
            *rng_seed,
            *samples,
            *max_len,
            *max_seeds,
            *corrupt_lambda,
        )?,
    };
    let output = match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&value).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => text,
    };
    Ok(Outcome {
        output,
        code: if ok { EXIT_OK } else { EXIT_FAILURE },
    })
}

type Rendered = (Value, String, bool);

fn matrix_text(out: &mut String, title: &str, rows: &[Vec<i64>]) {
    let _ = writeln!(out, "{title}:");
    for row in rows {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
        let _ = writeln!(out, "  [{}]", cells.join(""));
    }
}

fn build(n: usize) -> Result<Rendered, CliError> {
    let inst = Sl2Instance::build(n)?;
    let lambda = inst.form().rows();
    let b = inst.pair().exchange_matrix().entries().to_vec();
    let d = inst.pair().d().to_vec();
    let gens: Vec<(u32, String)> = inst
        .labels()
        .map(|l| (l, inst.generator(l).expect("valid label").pretty("Y")))
        .collect();
    let value = json!({
        "n": n,
        "lambda": lambda,
        "b": b,
        "d": d,
        "generators": gens.iter().map(|(l, s)| json!({"label": l, "expression": s})).collect::<Vec<_>>(),
        "initial_labels": inst.initial_labels(),
    });
    let mut text = format!("n = {n}\n");
    matrix_text(&mut text, "Lambda", &lambda);
    matrix_text(&mut text, "B", &b);
    let ds: Vec<String> = d.iter().map(i64::to_string).collect();
    let _ = writeln!(text, "d = ({})", ds.join(", "));
    for (l, s) in &gens {
        let _ = writeln!(text, "X_{l} = {s}");
    }
    for (i, label) in inst.initial_labels().iter().enumerate() {
        let _ = writeln!(text, "Y_{} ~ {label}", i + 1);
    }
    Ok((value, text, true))
}

fn mutate(n: usize, seq: &[usize]) -> Result<Rendered, CliError> {
    if let Some(&bad) = seq.iter().find(|&&k| k == 0 || k > n) {
        return Err(CliError::Usage(format!("vertex {bad} is outside [1, {n}]")));
    }
    let inst = Sl2Instance::build(n)?;
    let zero_based: Vec<usize> = seq.iter().map(|k| k - 1).collect();
    let seed = inst.initial_seed().mutate_sequence(&zero_based)?;
    let pretty: Vec<String> = seed.vars().iter().map(|v| v.pretty("Y")).collect();
    let value = json!({
        "n": n,
        "seq": seq,
        "seed": seed,
        "cluster": pretty,
    });
    let mut text = format!("n = {n}, seq = {seq:?}\n");
    for (i, p) in pretty.iter().enumerate() {
        let _ = writeln!(text, "x_{} = {p}", i + 1);
    }
    Ok((value, text, true))
}

fn enumerate(n: usize, max_seeds: usize) -> Result<Rendered, CliError> {
    let inst = Sl2Instance::build(n)?;
    let graph = enumerate_exchange_graph(inst.initial_seed(), max_seeds)?;
    let mut value = graph.to_json();
    value["n"] = n.into();
    let mut text = format!(
        "n = {n}\nclusters: {}\nvariables: {}\nedges: {}\ntruncated: {}\n",
        graph.cluster_count(),
        graph.variable_count(),
        graph.edges.len(),
        graph.truncated
    );
    for (i, v) in graph.variables.iter().enumerate() {
        let _ = writeln!(text, "v{} = {}", i + 1, v.pretty("Y"));
    }
    Ok((value, text, true))
}

fn verify(
    n: usize,
    rng_seed: u64,
    samples: usize,
    max_len: usize,
    max_seeds: usize,
    corrupt: bool,
) -> Result<Rendered, CliError> {
    let inst = if corrupt {
        let mut lambda = lambda_matrix(n);
        lambda[0][1] = -lambda[0][1];
        lambda[1][0] = -lambda[1][0];
        Sl2Instance::with_lambda(n, lambda)?
    } else {
        Sl2Instance::build(n)?
    };
    let presentation = inst.verify_presentation()?;
    let (generation, generation_pass) = match inst.express_y_in_x() {
        Ok(ids) => (serde_json::to_value(&ids).expect("serializable"), true),
        Err(Error::IdentityFailed(i)) => (json!({ "failed": format!("Y_{i}") }), false),
        Err(e) => return Err(e.into()),
    };
    let graph = enumerate_exchange_graph(inst.initial_seed(), max_seeds)?;
    let outside = check_subring(&inst, &graph.variables)?;
    let labels = check_kr_labels(&inst)?;
    let hom = check_homomorphism(&inst, samples, max_len, rng_seed)?;
    let indep = check_independence(&inst, max_len)?;

    let sections = [
        ("presentation", presentation.all_pass()),
        ("generation", generation_pass),
        ("subring", outside.is_empty() && !graph.truncated),
        ("kr_labels", labels.iter().all(|c| c.pass)),
        ("homomorphism", hom.pass()),
        ("independence", indep.independent),
    ];
    let ok = sections.iter().all(|(_, p)| *p);
    let value = json!({
        "n": n,
        "rng_seed": rng_seed,
        "pass": ok,
        "presentation": presentation.checks,
        "generation": generation,
        "subring": {
            "variables": graph.variable_count(),
            "truncated": graph.truncated,
            "not_expressible": outside.iter().map(|i| i + 1).collect::<Vec<_>>(),
        },
        "kr_labels": labels,
        "homomorphism": hom,
        "independence": indep,
    });

    let mut text = format!("n = {n}\n");
    for c in &presentation.checks {
        let kind = serde_json::to_value(c.kind).expect("serializable");
        let _ = writeln!(
            text,
            "relation X_{} X_{} {}: {}",
            c.l1,
            c.l2,
            kind.as_str().unwrap_or_default(),
            if c.pass { "ok" } else { "FAIL" }
        );
    }
    if let Some(ids) = generation.as_array() {
        for id in ids {
            let _ = writeln!(
                text,
                "{} = {}",
                id["target"].as_str().unwrap_or_default(),
                id["expression"].as_str().unwrap_or_default()
            );
        }
    }
    for c in &labels {
        let _ = writeln!(
            text,
            "position {} ~ {}: {}",
            c.position,
            c.label,
            if c.pass { "ok" } else { "FAIL" }
        );
    }
    let _ = writeln!(
        text,
        "homomorphism: {} cases, {} failures",
        hom.cases, hom.failures
    );
    let _ = writeln!(
        text,
        "independence: {} words, {} monomials, rank {}",
        indep.words, indep.monomials, indep.rank
    );
    for (name, pass) in sections {
        let _ = writeln!(text, "{name}: {}", if pass { "pass" } else { "FAIL" });
    }
    Ok((value, text, ok))
}
