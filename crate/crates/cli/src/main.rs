//! Command-line front end for `semiprime-lab`.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "semiprime-lab",
    version,
    about = "Ideals and closure operations in numerical semigroup rings K[[t^S]]"
)]
pub struct Cli {
    /// Worker threads for parallel enumeration, verification and search.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RingArgs {
    /// Semigroup generators, comma separated (`1` for K[[t]]).
    #[arg(long, value_delimiter = ',', required = true)]
    pub gens: Vec<u32>,
    /// Characteristic of the coefficient field.
    #[arg(long, default_value_t = 2)]
    pub p: u32,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Gaps, Frobenius number and conductor of a numerical semigroup.
    Semigroup {
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Canonical form and shape of the ideal generated by the given elements.
    Canon {
        #[command(flatten)]
        ring: RingArgs,
        /// An element such as `t^4 + t^5 + 2t^7`; repeat for more generators.
        #[arg(long = "elem", required = true)]
        elems: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate or classify every ideal up to an order bound.
    Ideals {
        #[command(subcommand)]
        action: IdealsAction,
    },
    /// Hasse diagram of the ideals up to an order bound, as DOT.
    Lattice {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        max_order: u32,
        /// Accepted for symmetry with other commands; DOT is the only format.
        #[arg(long)]
        dot: bool,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check closure-operation axioms on every ideal up to an order bound.
    Verify {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        max_order: u32,
        /// `identity`, `integral_closure`, `fc_345`, `dvr_f_m:M` or `dvr_g_m:M`.
        #[arg(long)]
        op: String,
        /// Axiom numbers such as `1-5` or `1,2,4`.
        #[arg(long, default_value = "1-5")]
        axioms: String,
        /// Include the zero ideal in the checked set.
        #[arg(long)]
        include_zero: bool,
        /// Check the preconditions 1, 2, 3, 5, 7 and then 4, 6, 8.
        #[arg(long)]
        sakuma: bool,
        /// Exit with status 1 unless every requested axiom passes.
        #[arg(long)]
        expect_pass: bool,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive search for prime or semiprime operations.
    Search {
        #[command(flatten)]
        ring: RingArgs,
        /// Order bound; for K[[t]] this is the depth of the chain P^0..P^D.
        #[arg(long)]
        max_order: u32,
        #[arg(long, value_enum, default_value_t = ModeArg::Prime)]
        mode: ModeArg,
        /// Extension margin; defaults to twice the conductor (at least 2).
        #[arg(long)]
        margin: Option<u32>,
        /// Node budget; defaults to `SEMIPRIME_LAB_BUDGET` or the built-in value.
        #[arg(long)]
        budget: Option<u64>,
        /// Leave the zero ideal out of the searched set.
        #[arg(long)]
        no_zero: bool,
        /// Exit with status 1 unless the identity is the only operation found.
        #[arg(long)]
        expect_identity_only: bool,
        /// Print the pruning report.
        #[arg(long)]
        explain: bool,
        #[arg(long)]
        json: bool,
    },
    /// Product-axiom witnesses for candidate operations on fractional chains.
    DemoFractional {
        /// Use the chain P^i of K[[t]].
        #[arg(long)]
        dvr: bool,
        /// Use the chain s^i R for this element `s`.
        #[arg(long)]
        element: Option<String>,
        /// Ring of the element chain.
        #[arg(long, value_delimiter = ',')]
        gens: Vec<u32>,
        #[arg(long, default_value_t = 2)]
        p: u32,
        /// Chain indices run over -D..=D.
        #[arg(long = "D", alias = "depth", default_value_t = 6)]
        depth: u32,
        /// `family`, `identity`, `bounded:m=M[,shift=K][,fix-negatives]`,
        /// `enlarge:k=K`, or for element chains `bounded:n=N` with `--ideal`.
        #[arg(long, default_value = "family")]
        candidate: String,
        /// Ideal used by element-chain `bounded:n=N` candidates.
        #[arg(long)]
        ideal: Option<String>,
        /// Extra depth for the identity certification.
        #[arg(long, default_value_t = 2)]
        margin: u32,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum IdealsAction {
    /// List every ideal with its shape and minimal number of generators.
    Enumerate {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        max_order: u32,
        #[arg(long)]
        json: bool,
    },
    /// Classify every ideal and count shape families per order.
    Classify {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        max_order: u32,
        #[arg(long)]
        json: bool,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeArg {
    Prime,
    Semiprime,
}

/// How a command ended, mapped to the process exit status.
pub enum Failure {
    /// Invalid argument combination: status 2.
    Usage(String),
    /// Error raised by the library: status 1.
    Domain(semiprime_lab::Error),
    /// A requested expectation did not hold: status 1.
    Expectation(String),
}

impl From<semiprime_lab::Error> for Failure {
    fn from(e: semiprime_lab::Error) -> Self {
        Failure::Domain(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("thread pool is configured once");
    }
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(1)
        }
        Err(Failure::Expectation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
