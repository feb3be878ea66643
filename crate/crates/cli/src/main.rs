mod commands;
mod input;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use input::Source;

#[derive(Parser, Debug)]
#[command(
    name = "nilflat",
    version,
    about = "Ricci-flat σ-diagonal metrics on nice nilpotent Lie algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for searches and batch verification
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,
}

#[derive(clap::Args, Debug, Clone)]
pub struct MetricArgs {
    /// Involution in cycle notation, e.g. "(1 4)(2 3)"
    #[arg(long)]
    pub sigma: Option<String>,
    /// Evaluate at g1=…,g2=…; a missing g_i is taken from g_σ(i)
    #[arg(long, value_name = "g1=..,g2=..")]
    pub numeric: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the Jacobi identity and extract and validate the nice diagram
    Validate {
        #[command(flatten)]
        source: Source,
    },
    /// List arrow-breaking involutions
    Involutions {
        #[command(flatten)]
        source: Source,
        /// Stop after this many
        #[arg(long)]
        max: Option<usize>,
        /// Only involutions with this many fixed nodes
        #[arg(long)]
        fixed: Option<usize>,
        /// Allow searches over more than 11 nodes
        #[arg(long)]
        allow_long: bool,
    },
    /// Ricci tensor of the σ-diagonal metric
    Ricci {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        metric: MetricArgs,
    },
    /// Riemann curvature tensor of the σ-diagonal metric
    Riemann {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        metric: MetricArgs,
        /// Computation route
        #[arg(long, value_parser = ["koszul", "j"], default_value = "koszul")]
        route: String,
    },
    /// Sectional component ⟨R(u,v)u,v⟩ on a plane, or on every basis plane
    Sectional {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        metric: MetricArgs,
        /// Plane as two vectors, e.g. "e1-e2,e3"
        #[arg(long)]
        plane: Option<String>,
    },
    /// Decide flatness of the σ-diagonal family
    Flatness {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        metric: MetricArgs,
    },
    /// Number of parameters of the family of nonisometric metrics
    Params {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Signature of the σ-diagonal metric
    Signature {
        #[arg(long)]
        sigma: String,
        /// Number of nodes
        #[arg(long)]
        nodes: usize,
        /// Signs of the fixed nodes in order, e.g. "+,-"; all + by default
        #[arg(long, value_name = "SIGNS")]
        fixed_signs: Option<String>,
    },
    /// Build an algebra from a generator spec
    Generate {
        /// heisenberg:3, filiform:6, graph:path5, graph:edges=1-2,2-3, parabolic:A:5, parabolic:G2
        spec: String,
    },
    /// Show a catalog entry
    Lookup {
        /// Entry name; omit to list all
        name: Option<String>,
    },
    /// Check catalog entries against their recorded verdicts
    Verify {
        /// Entry names
        names: Vec<String>,
        /// Every entry from the two tables
        #[arg(long)]
        all_tables: bool,
        /// Every catalog entry
        #[arg(long)]
        all: bool,
        /// Run searches over more than 11 nodes
        #[arg(long)]
        allow_long: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
