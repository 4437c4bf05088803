mod commands;
mod files;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Steiner 2-designs, block intersection graphs and silver colorings.
///
/// Exit codes: 0 success, 1 negative answer (not silver, not balanced, a
/// screen fired), 2 usage or input error, 3 search budget exhausted.
#[derive(Parser, Debug)]
#[command(name = "silverbig", version)]
struct Cli {
    /// Search budget for every exact search (nodes or propagation steps)
    #[arg(long, global = true, env = "SILVERBIG_BUDGET")]
    budget: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a design and write it as a .blk file
    Make(MakeArgs),
    /// Check that a design is a balanced 2-design
    Verify { design: PathBuf },
    /// Write the i-block intersection graph of a design
    Big {
        #[arg(long)]
        i: usize,
        design: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Independence number of a graph, optionally with all maximum sets
    Alpha {
        graph: PathBuf,
        #[arg(long)]
        enumerate: bool,
    },
    /// Apply the non-silverness theorems to the i-BIG of a design
    Screen {
        #[arg(long)]
        design: PathBuf,
        #[arg(long)]
        i: usize,
    },
    /// Check, decide or construct silver colorings
    #[command(subcommand)]
    Silver(SilverCommand),
    /// Full pipeline for i = 0 and i = 1 with artifacts in a directory
    Report {
        design: PathBuf,
        /// Artifact directory (default: <design>.report)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    StsBose,
    StsSkolem,
    Sts13Cyclic,
    Sts13Noncyclic,
    Kts,
    Ag,
    Pg,
}

#[derive(Args, Debug)]
struct MakeArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Number of points (STS and KTS families)
    #[arg(long)]
    v: Option<usize>,
    /// Plane order (ag, pg)
    #[arg(long)]
    n: Option<usize>,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Subcommand, Debug)]
enum SilverCommand {
    /// Verify a coloring against a graph and an independent set
    Check {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long = "alpha-set")]
        alpha_set: PathBuf,
        /// Design whose 1-BIG is the graph: bounds alpha by floor(v/k) without search
        #[arg(long)]
        design: Option<PathBuf>,
    },
    /// Decide whether the i-BIG of a design is silver
    Decide {
        #[arg(long)]
        design: PathBuf,
        #[arg(long)]
        i: usize,
        /// Decide for this independent set only
        #[arg(long = "alpha-set", conflicts_with = "all_alpha")]
        alpha_set: Option<PathBuf>,
        /// Decide over every maximum independent set (the default)
        #[arg(long = "all-alpha")]
        all_alpha: bool,
        /// Directory for colorings and certificates
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write an explicit silver coloring
    Construct(ConstructArgs),
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("mode").required(true).args(["canonical", "product"]))]
struct ConstructArgs {
    /// Symmetric design or affine plane: the explicit coloring of its i-BIG
    #[arg(long, requires_all = ["design", "i"])]
    canonical: bool,
    #[arg(long)]
    design: Option<PathBuf>,
    #[arg(long)]
    i: Option<usize>,
    /// Product of AG(2,n) with a resolvable design on the 1-BIG
    #[arg(long, requires_all = ["plane", "rbibd"], conflicts_with_all = ["canonical", "design", "i"])]
    product: bool,
    /// Order n of the affine plane
    #[arg(long)]
    plane: Option<usize>,
    /// Resolvable design with k = n, classes given with %class
    #[arg(long)]
    rbibd: Option<PathBuf>,
    #[arg(short, long)]
    output: PathBuf,
}

/// How a successful run ended.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Negative,
    Budget,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Negative) => ExitCode::from(1),
        Ok(Status::Budget) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
