mod commands;
mod input;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::Format;

/// Simple modules of the algebra of relations on a finite set.
///
/// Dimension formulas take the dimension of the automorphism-group
/// representation V from `--dim-v`; the radical computation assumes a
/// ground field of characteristic zero, where the squared dimensions of the
/// irreducible representations of a finite group sum to its order.
#[derive(Debug, Parser)]
#[command(name = "relmod", version)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Largest matrix `N` (rows × columns) the verifier will build.
    #[arg(long, global = true, default_value_t = relmod::oracle::DEFAULT_GUARD_CELLS)]
    pub guard_cells: u128,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimensions of the fundamental and simple modules attached to a poset.
    Dims {
        /// Builtin poset name or path to a poset file.
        poset: String,
        /// Size of the set X.
        #[arg(long)]
        x: usize,
        /// Dimension of the representation V of Aut(E,R).
        #[arg(long, default_value_t = 1)]
        dim_v: usize,
    },
    /// Dimension of the Jacobson radical of the algebra of relations on an n-set.
    Radical {
        /// Size of the underlying set.
        n: usize,
        /// Also print the per-class table.
        #[arg(long)]
        table: bool,
    },
    /// Isomorphism classes of posets on e elements.
    Posets {
        /// Number of points.
        e: usize,
    },
    /// Per-class contributions to the semisimple quotient at size n.
    Table {
        /// Size of the underlying set.
        n: usize,
    },
    /// Matrices of relations acting on a simple module.
    Rep(RepArgs),
    /// Certify the basis of the fundamental functor by exact linear algebra.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false, id = "source")]
pub struct Source {
    /// Poset (builtin name or file); the lattice is its down-set lattice.
    #[arg(long, group = "source")]
    pub poset: Option<String>,
    /// Distributive or general lattice (builtin name or file).
    #[arg(long, group = "source")]
    pub lattice: Option<String>,
}

#[derive(Debug, Args)]
pub struct RepArgs {
    #[command(flatten)]
    pub source: Source,
    /// Size of the set X.
    #[arg(long)]
    pub x: usize,
    /// Relation file (`Y X` header, then rows of 0/1).
    #[arg(long, conflicts_with = "all")]
    pub relation: Option<String>,
    /// Emit the matrix of every relation on X.
    #[arg(long)]
    pub all: bool,
    /// Check `ρ(UV) = ρ(U)ρ(V)` over all pairs of relations and `ρ(Δ) = 1`.
    #[arg(long)]
    pub check: bool,
    /// `trivial`, `sign`, or a JSON file holding one matrix of rational
    /// strings per automorphism, in the order listed under `group`.
    #[arg(long, default_value = "trivial")]
    pub vrep: String,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: Source,
    /// Size of the set X.
    #[arg(long)]
    pub x: usize,
    /// Include wall-clock timings (makes output run-dependent).
    #[arg(long)]
    pub timings: bool,
    /// Negative control: perturb every u_a before checking.
    #[arg(long, hide = true)]
    pub corrupt_u: bool,
}

/// Exit statuses.
pub mod status {
    pub const INPUT: u8 = 1;
    pub const GUARD: u8 = 2;
    pub const VERIFICATION: u8 = 3;
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(status::INPUT);
        }
    }
    match commands::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(status::VERIFICATION),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_guard() { status::GUARD } else { status::INPUT })
        }
    }
}
