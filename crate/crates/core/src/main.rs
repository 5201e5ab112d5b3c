use std::io;
use std::path::PathBuf;
use std::process;

use clap::{Args, Parser, Subcommand, ValueEnum};

use netrel::cli::{run, Command, OutputFormat, RunConfig};

#[derive(Parser)]
#[command(
    name = "netrel",
    version,
    about = "Exact all-pairs network reliability"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reliability matrix by exhaustive enumeration
    Compute {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Also emit the connected-vector count matrix
        #[arg(long)]
        counts: bool,
        /// Allow more than 30 arcs
        #[arg(long)]
        force: bool,
    },
    /// Compare against the brute-force union-find reference
    Oracle {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Monte-Carlo estimate with standard errors
    Mc {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Random connected simple graph in edge-list format
    Gen {
        #[arg(long)]
        nodes: usize,
        #[arg(long)]
        arcs: usize,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Args)]
struct InputArgs {
    #[arg(long)]
    input: PathBuf,
    /// Common arc working probability (omit when the file has a p column)
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    allow_disconnected: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Csv,
}

fn with_input(command: Command, input: InputArgs) -> RunConfig {
    let mut cfg = RunConfig::new(command);
    cfg.input = Some(input.input);
    cfg.p = input.p;
    cfg.allow_disconnected = input.allow_disconnected;
    cfg
}

fn main() {
    let cli = Cli::parse();
    let cfg = match cli.command {
        Cmd::Compute {
            input,
            workers,
            format,
            counts,
            force,
        } => {
            let mut cfg = with_input(Command::Compute, input);
            cfg.workers = workers;
            cfg.format = match format {
                Format::Table => OutputFormat::Table,
                Format::Csv => OutputFormat::Csv,
            };
            cfg.counts = counts;
            cfg.force = force;
            cfg
        }
        Cmd::Oracle { input } => with_input(Command::Oracle, input),
        Cmd::Mc {
            input,
            samples,
            seed,
        } => {
            let mut cfg = with_input(Command::Mc, input);
            cfg.samples = samples;
            cfg.seed = seed;
            cfg
        }
        Cmd::Gen { nodes, arcs, seed } => {
            let mut cfg = RunConfig::new(Command::Gen);
            cfg.nodes = nodes;
            cfg.arcs = arcs;
            cfg.seed = seed;
            cfg
        }
    };
    let status = run(&cfg, &mut io::stdout().lock(), &mut io::stderr().lock());
    process::exit(status.code());
}
