//! Command-line front end. [`run`] does the work against arbitrary writers
//! so the binary stays a thin argument parser.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use crate::error::Error;
use crate::generate::random_connected;
use crate::graph::{parse_graph, ArcProbabilities, Graph, ParseOptions};
use crate::oracle::{monte_carlo, oracle_all_pairs};
use crate::relia::{all_pairs, average_connected_count, AllPairsOptions, ReliabilityResult};

/// Largest tolerated `|R_main - R_oracle|` for the `oracle` command.
pub const ORACLE_TOLERANCE: f64 = 1e-12;

/// Decimal places for printed reliabilities.
pub const DECIMALS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Compute,
    Oracle,
    Mc,
    Gen,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Table,
    Csv,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub input: Option<PathBuf>,
    pub p: Option<f64>,
    pub workers: usize,
    pub format: OutputFormat,
    pub force: bool,
    pub counts: bool,
    pub allow_disconnected: bool,
    pub samples: u64,
    pub seed: u64,
    pub nodes: usize,
    pub arcs: usize,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            input: None,
            p: None,
            workers: 1,
            format: OutputFormat::Table,
            force: false,
            counts: false,
            allow_disconnected: false,
            samples: 0,
            seed: 0,
            nodes: 0,
            arcs: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    BadArguments = 2,
    Invalid = 3,
    LimitExceeded = 4,
    OracleMismatch = 5,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

impl From<&Error> for ExitStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::LimitExceeded { .. } => ExitStatus::LimitExceeded,
            Error::MissingProbability
            | Error::ConflictingProbability
            | Error::Argument(_)
            | Error::SameTerminals(_)
            | Error::NodeIndex { .. } => ExitStatus::BadArguments,
            _ => ExitStatus::Invalid,
        }
    }
}

fn fail(err: &mut dyn Write, e: &Error) -> ExitStatus {
    let _ = writeln!(err, "error: {e}");
    ExitStatus::from(e)
}

fn load_graph(cfg: &RunConfig) -> Result<Graph, Error> {
    let path = cfg
        .input
        .as_ref()
        .ok_or_else(|| Error::Argument("--input is required".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Argument(format!("cannot read {}: {e}", path.display())))?;
    parse_graph(
        &text,
        ParseOptions {
            p: cfg.p,
            allow_disconnected: cfg.allow_disconnected,
        },
    )
}

/// Runs one command, writing the report to `out` and diagnostics to `err`.
/// Everything written to `out` depends only on the input and the config.
pub fn run(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus {
    match cfg.command {
        Command::Compute => compute(cfg, out, err),
        Command::Oracle => oracle(cfg, out, err),
        Command::Mc => mc(cfg, out, err),
        Command::Gen => gen(cfg, out, err),
    }
}

fn compute(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus {
    let g = match load_graph(cfg) {
        Ok(g) => g,
        Err(e) => return fail(err, &e),
    };
    let start = Instant::now();
    let result = match all_pairs(
        &g,
        AllPairsOptions {
            workers: cfg.workers,
            force: cfg.force,
        },
    ) {
        Ok(r) => r,
        Err(e) => return fail(err, &e),
    };
    let elapsed = start.elapsed();

    let mut report = emit_matrix(&result, cfg.format);
    if cfg.counts {
        if cfg.format == OutputFormat::Csv {
            report.push('\n');
        }
        report.push_str(&emit_counts(&result, cfg.format));
    }
    let avg = format_ratio(&average_connected_count(&result));
    let summary = format!(
        "avg connected vectors: {avg}\nvectors visited: {}\n",
        result.vectors_visited
    );
    match cfg.format {
        OutputFormat::Table => report.push_str(&summary),
        OutputFormat::Csv => {
            let _ = err.write_all(summary.as_bytes());
        }
    }
    let _ = writeln!(err, "wall time: {:.6} s", elapsed.as_secs_f64());
    if out.write_all(report.as_bytes()).is_err() {
        return ExitStatus::Invalid;
    }
    ExitStatus::Success
}

fn oracle(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus {
    let g = match load_graph(cfg) {
        Ok(g) => g,
        Err(e) => return fail(err, &e),
    };
    let opts = AllPairsOptions {
        workers: cfg.workers,
        force: cfg.force,
    };
    let (main, reference) = match all_pairs(&g, opts).and_then(|r| Ok((r, oracle_all_pairs(&g)?))) {
        Ok(pair) => pair,
        Err(e) => return fail(err, &e),
    };
    let delta = main.max_abs_diff(&reference);
    let counts_match = main.count_matrix() == reference.count_matrix();

    let mut report = String::from("all-pairs enumeration\n");
    report.push_str(&emit_matrix(&main, OutputFormat::Table));
    report.push_str("union-find reference\n");
    report.push_str(&emit_matrix(&reference, OutputFormat::Table));
    let _ = writeln!(report, "max |Δ| = {delta}");
    let _ = writeln!(report, "counts match: {counts_match}");
    let _ = out.write_all(report.as_bytes());

    if delta > ORACLE_TOLERANCE || !counts_match {
        let _ = writeln!(
            err,
            "oracle mismatch: max |Δ| = {delta:e}, tolerance {ORACLE_TOLERANCE:e}"
        );
        return ExitStatus::OracleMismatch;
    }
    ExitStatus::Success
}

fn mc(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus {
    let g = match load_graph(cfg) {
        Ok(g) => g,
        Err(e) => return fail(err, &e),
    };
    let est = match monte_carlo(&g, cfg.samples, cfg.seed) {
        Ok(est) => est,
        Err(e) => return fail(err, &e),
    };
    let n = g.node_count();
    let mut report = format!(
        "# samples {} seed {}\ns,t,mean,stderr\n",
        est.samples, est.seed
    );
    for s in 0..n {
        for t in s + 1..n {
            let _ = writeln!(
                report,
                "{},{},{:.prec$},{:.prec$}",
                s + 1,
                t + 1,
                est.mean[s][t],
                est.stderr[s][t],
                prec = DECIMALS
            );
        }
    }
    let _ = out.write_all(report.as_bytes());
    ExitStatus::Success
}

fn gen(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus {
    let p = ArcProbabilities::Homogeneous(cfg.p.unwrap_or(0.9));
    match random_connected(cfg.nodes, cfg.arcs, cfg.seed, p) {
        Ok(g) => {
            let header = format!(
                "# random connected graph: nodes {} arcs {} seed {}\n",
                cfg.nodes, cfg.arcs, cfg.seed
            );
            let _ = out.write_all(header.as_bytes());
            let _ = out.write_all(g.to_edge_list().as_bytes());
            ExitStatus::Success
        }
        Err(e) => fail(err, &e),
    }
}

fn format_ratio(r: &num_rational::Ratio<u128>) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        (*r.numer() as f64 / *r.denom() as f64).to_string()
    }
}

/// The reliability matrix: a lower triangle (diagonal included) for
/// [`OutputFormat::Table`], `s,t,reliability` rows for [`OutputFormat::Csv`].
pub fn emit_matrix(result: &ReliabilityResult, fmt: OutputFormat) -> String {
    let n = result.node_count();
    let mut out = String::new();
    match fmt {
        OutputFormat::Table => {
            out.push_str("reliability (lower triangle)\n");
            for s in 0..n {
                let _ = write!(out, "{:>4}", s + 1);
                for t in 0..=s {
                    let _ = write!(
                        out,
                        "  {:.prec$}",
                        result.reliability(s, t),
                        prec = DECIMALS
                    );
                }
                out.push('\n');
            }
        }
        OutputFormat::Csv => {
            out.push_str("s,t,reliability\n");
            for s in 0..n {
                for t in s + 1..n {
                    let _ = writeln!(
                        out,
                        "{},{},{:.prec$}",
                        s + 1,
                        t + 1,
                        result.reliability(s, t),
                        prec = DECIMALS
                    );
                }
            }
        }
    }
    out
}

/// The connected-vector count matrix, laid out like [`emit_matrix`].
pub fn emit_counts(result: &ReliabilityResult, fmt: OutputFormat) -> String {
    let n = result.node_count();
    let mut out = String::new();
    match fmt {
        OutputFormat::Table => {
            out.push_str("connected vectors (lower triangle)\n");
            for s in 0..n {
                let _ = write!(out, "{:>4}", s + 1);
                for t in 0..=s {
                    let _ = write!(out, "  {}", result.count(s, t));
                }
                out.push('\n');
            }
        }
        OutputFormat::Csv => {
            out.push_str("s,t,count\n");
            for s in 0..n {
                for t in s + 1..n {
                    let _ = writeln!(out, "{},{},{}", s + 1, t + 1, result.count(s, t));
                }
            }
        }
    }
    out
}
