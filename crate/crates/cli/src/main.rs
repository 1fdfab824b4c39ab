use std::path::PathBuf;
use std::process::ExitCode;

use alcove_cli::commands::{self, Method};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

/// Exact computations on alcoved lattice polytopes: generation, h*
/// data, triangulations, theorem scans, and a self-verification suite.
#[derive(Parser)]
#[command(name = "alcove", version, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate seeded random alcoved polytopes as JSON records.
    Gen {
        /// Ambient dimension (at least 2).
        #[arg(long)]
        dim: usize,
        /// How many instances to draw.
        #[arg(long, default_value_t = 1)]
        count: u64,
        /// Base seed; instance i uses a seed derived from it and i.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Draw from the tighter bound ranges.
        #[arg(long)]
        small: bool,
        /// Directory for one file per instance; omit to stream to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Ehrhart polynomial, h* vector, peak and symmetry data per record.
    Hstar {
        /// Polytope records, one JSON object per line; stdin if omitted.
        file: Option<PathBuf>,
        /// Lattice point budget per enumeration (default ten million).
        #[arg(long)]
        budget: Option<u64>,
        /// Print aligned (dim, h*) pairs instead of JSON.
        #[arg(long)]
        table: bool,
    },
    /// Triangulate each record and print cells, f- and h-vectors.
    Triangulate {
        /// Polytope records, one JSON object per line; stdin if omitted.
        file: Option<PathBuf>,
        /// "alcove" cuts along all lattice hyperplanes; "boundary" builds
        /// the lower-hull triangulation that restricts to each facet's
        /// alcove triangulation (needs every facet at lattice distance 1).
        #[arg(long, default_value = "alcove")]
        method: String,
        /// Candidate budget for the boundary method; also unlocks
        /// dimensions past the per-method default cap.
        #[arg(long)]
        budget: Option<u64>,
        /// Output file; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scan seeded random instances for theorem violations.
    Scan {
        /// Dimensions to scan, comma separated (e.g. 3 or 3,4,5).
        #[arg(long = "dim", value_delimiter = ',')]
        dims: Vec<usize>,
        /// Instances per dimension.
        #[arg(long, default_value_t = 50)]
        count: u64,
        /// Base seed; instance seeds derive from it and the record index.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Draw from the tighter bound ranges.
        #[arg(long)]
        small: bool,
        /// Comma-separated violation families to report: unimodal,
        /// hypothesis, hibi-stanley, distance, symmetry. All by default.
        #[arg(long)]
        checks: Option<String>,
        /// Worker threads; the report is byte-identical either way.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Lattice point budget per enumeration (default ten million).
        #[arg(long)]
        budget: Option<u64>,
        /// Report file; omit to print the report itself to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record wall time per instance (makes reports nondeterministic).
        #[arg(long, conflicts_with = "no_timestamps")]
        timestamps: bool,
        /// Keep reports reproducible (the default).
        #[arg(long)]
        no_timestamps: bool,
    },
    /// Run the ten-criterion acceptance suite.
    Verify {
        /// Largest dimension to exercise (5 runs everything).
        #[arg(long, default_value_t = 5)]
        dim_max: usize,
    },
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    match cli.command {
        Command::Gen { dim, count, seed, small, out } => {
            commands::cmd_gen(dim, count, seed, small, out.as_deref())
        }
        Command::Hstar { file, budget, table } => {
            commands::cmd_hstar(file.as_deref(), budget, table)
        }
        Command::Triangulate { file, method, budget, out } => {
            let method: Method = method.parse()?;
            commands::cmd_triangulate(file.as_deref(), method, budget, out.as_deref())
        }
        Command::Scan { dims, count, seed, small, checks, jobs, budget, out, timestamps, .. } => {
            commands::cmd_scan(
                &dims,
                count,
                seed,
                small,
                checks.as_deref(),
                jobs,
                budget,
                timestamps,
                out.as_deref(),
            )
        }
        Command::Verify { dim_max } => commands::cmd_verify(dim_max),
    }
}

/// 2 is for mathematical diagnostics on honest inputs, 3 for theorem
/// violations; everything else about bad input or environment is 1.
fn classify(e: &anyhow::Error) -> u8 {
    use alcove_core::Error::*;
    for cause in e.chain() {
        if let Some(err) = cause.downcast_ref::<alcove_core::Error>() {
            return match err {
                TheoremViolation { .. } => 3,
                Infeasible
                | Unbounded { .. }
                | NotFullDimensional
                | NoInteriorPoints
                | HypothesisViolated { .. }
                | NotLatticeEhrhart { .. }
                | EnumerationBudgetExceeded { .. }
                | CandidateBudgetExceeded { .. }
                | Overflow => 2,
                _ => 1,
            };
        }
    }
    1
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(classify(&e))
        }
    }
}
