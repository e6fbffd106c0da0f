use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use flipdist::weights::Variant;
use flipdist_cli::{run, Command, ConfigFile, ExitStatus, Format, Overrides, RunConfig};

#[derive(Parser)]
#[command(name = "flipdist", version, about = "Flip distances between polygon triangulations")]
struct Cli {
    /// key=value file; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output format: text, csv or dot.
    #[arg(long, global = true)]
    format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, short = 'o', global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Args, Default)]
struct Sizes {
    #[arg(short = 'n')]
    n: Option<usize>,
    /// Rotation offset of the second zig-zag.
    #[arg(short = 'r')]
    r: Option<usize>,
}

#[derive(Args, Default)]
struct WeightArgs {
    #[arg(long)]
    variant: Option<Variant>,
    #[arg(short = 'c')]
    c: Option<usize>,
    #[arg(long)]
    c_outer: Option<usize>,
    #[arg(long)]
    r0: Option<usize>,
    /// Evaluation budget of the full-variant solver.
    #[arg(long)]
    solver_budget: Option<usize>,
    /// Largest n the tetrahedral sweep accepts.
    #[arg(long)]
    max_n: Option<usize>,
}

#[derive(Subcommand)]
enum Sub {
    /// Exact flip distance between two triangulations (or trees).
    Distance {
        a: PathBuf,
        b: PathBuf,
        /// Inputs are bracket-notation trees.
        #[arg(long)]
        trees: bool,
        /// Print a shortest flip sequence.
        #[arg(long)]
        path: bool,
        /// Split along common diagonals first.
        #[arg(long)]
        decompose: bool,
        /// States the search may store.
        #[arg(long)]
        node_budget: Option<usize>,
        /// Fail with exit 3 instead of switching to IDA* past the budget.
        #[arg(long)]
        no_fallback: bool,
    },
    /// LP lower bound, or verification of a certificate.
    Bound {
        a: PathBuf,
        b: PathBuf,
        /// Verify this certificate instead of solving the LP.
        #[arg(long)]
        verify: Option<PathBuf>,
        /// Write the optimal dual weights here.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Zig-zag pair, their sphere, its degree histogram and DOT export.
    Construct {
        #[command(flatten)]
        sizes: Sizes,
        /// Only the single zig-zag triangulation.
        #[arg(long)]
        single: bool,
        /// Allow shared diagonals (non-simple union).
        #[arg(long)]
        relaxed: bool,
        /// Directory for the generated files.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Assemble the weight function and check it.
    VerifyWeights {
        #[command(flatten)]
        sizes: Sizes,
        #[command(flatten)]
        weights: WeightArgs,
        /// Check this certificate instead of assembling one.
        #[arg(long)]
        verify: Option<PathBuf>,
        /// Write the assembled weights here.
        #[arg(long)]
        certificate: Option<PathBuf>,
        /// Write the per-triangle class sidecar here.
        #[arg(long)]
        provenance: Option<PathBuf>,
        /// Vertex whose flow network `--format dot` prints.
        #[arg(long, default_value_t = 0)]
        vertex: usize,
    },
    /// Largest flip distance among triangulations of one polygon.
    Diameter {
        #[arg(short = 'n')]
        n: Option<usize>,
        /// Table for every size from 2 to n.
        #[arg(long)]
        sweep: bool,
        /// Search from this many random sources only.
        #[arg(long)]
        sampled: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Tree to triangulation or triangulation to tree.
    Convert { input: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => code,
        Err((status, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(status.code())
        }
    }
}

fn execute(cli: Cli) -> Result<ExitCode, (ExitStatus, String)> {
    let input_err = |m: String| (ExitStatus::Input, m);
    let file = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| input_err(format!("{}: {e}", path.display())))?;
            ConfigFile::parse(&text).map_err(|e| input_err(format!("{}: {e}", path.display())))?
        }
        None => ConfigFile::default(),
    };
    let mut flags = Overrides {
        threads: cli.threads,
        format: cli.format,
        output: cli.output,
        ..Overrides::default()
    };
    let (command, inputs) = match cli.command {
        Sub::Distance { a, b, trees, path, decompose, node_budget, no_fallback } => {
            flags.node_budget = node_budget;
            let command = Command::Distance { trees, show_path: path, decompose, fallback: !no_fallback };
            (command, vec![a, b])
        }
        Sub::Bound { a, b, verify, certificate } => (Command::Bound { verify, certificate }, vec![a, b]),
        Sub::Construct { sizes, single, relaxed, out_dir } => {
            flags.n = sizes.n;
            flags.r = sizes.r;
            (Command::Construct { single, relaxed, out_dir }, vec![])
        }
        Sub::VerifyWeights { sizes, weights, verify, certificate, provenance, vertex } => {
            flags.n = sizes.n;
            flags.r = sizes.r;
            flags.variant = weights.variant;
            flags.c = weights.c;
            flags.c_outer = weights.c_outer;
            flags.r0 = weights.r0;
            flags.solver_budget = weights.solver_budget;
            flags.max_n = weights.max_n;
            (Command::VerifyWeights { verify, certificate, provenance, vertex }, vec![])
        }
        Sub::Diameter { n, sweep, sampled, seed } => {
            flags.n = n;
            (Command::Diameter { sweep, sampled, seed }, vec![])
        }
        Sub::Convert { input } => (Command::Convert, vec![input]),
    };
    let cfg = RunConfig::resolve(command, inputs, &file, flags).map_err(|e| input_err(e.to_string()))?;
    let outcome = run(&cfg).map_err(|e| (e.status(), e.to_string()))?;
    match &cfg.output {
        Some(path) => fs::write(path, &outcome.report).map_err(|e| input_err(format!("{}: {e}", path.display())))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(outcome.report.as_bytes());
        }
    }
    Ok(ExitCode::from(outcome.status.code()))
}
