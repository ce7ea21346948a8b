//! Command-line front end for the torusgcd engine.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    /// JSON, one document per invocation
    Machine,
}

#[derive(Debug, Parser)]
#[command(name = "torusgcd", version, about = "Derived invariants of surface algebras on the torus with one boundary component")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

/// A graded surface with a homology basis.
#[derive(Debug, Args)]
pub struct Graded {
    #[arg(long)]
    surface: PathBuf,
    #[arg(long)]
    cut: PathBuf,
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
}

#[derive(Debug, Args)]
pub struct OtherGraded {
    #[arg(id = "other_surface", long = "other-surface")]
    surface: PathBuf,
    #[arg(id = "other_cut", long = "other-cut")]
    cut: PathBuf,
    #[arg(id = "other_a", long = "other-a")]
    a: PathBuf,
    #[arg(id = "other_b", long = "other-b")]
    b: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    P2,
    Lambda0,
    Lambda0Prime,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a triangulation file and print its profile
    Validate {
        #[arg(long)]
        surface: PathBuf,
    },
    /// Print the quiver of a triangulation
    Quiver {
        #[arg(long)]
        surface: PathBuf,
    },
    /// List admissible cuts; with --report, their gcd and AG invariants
    Cuts {
        #[arg(long, visible_alias = "enumerate")]
        surface: PathBuf,
        #[arg(long)]
        report: bool,
        /// Basis curves; picked automatically when omitted
        #[arg(long, requires = "b")]
        a: Option<PathBuf>,
        #[arg(long, requires = "a")]
        b: Option<PathBuf>,
    },
    /// Degree of a closed curve under a degree map
    Degree {
        #[arg(long)]
        surface: PathBuf,
        #[arg(long)]
        cut: PathBuf,
        #[arg(long)]
        curve: PathBuf,
    },
    /// gcd(d(a), d(b))
    Invariant(Graded),
    /// AG invariant of the cut algebra
    Ag {
        #[arg(long)]
        surface: PathBuf,
        #[arg(long)]
        cut: PathBuf,
    },
    /// Decide derived equivalence of two graded tori
    Equiv {
        #[command(flatten)]
        first: Graded,
        #[command(flatten)]
        second: OtherGraded,
        /// Also compare AG invariants (a necessary condition only)
        #[arg(long)]
        advisory: bool,
    },
    /// Write a family fixture as surface, degree and curve files
    Family {
        #[arg(long, value_enum)]
        kind: Family,
        #[arg(long, default_value_t = 0)]
        s: usize,
        #[arg(long, default_value_t = 0)]
        r: usize,
        /// Cut index of the p=2 example
        #[arg(long, default_value_t = 0)]
        cut: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Word calculus on the once-punctured torus
    Oracle {
        /// Word in the letters 1, 2, 3
        #[arg(long, conflicts_with = "class")]
        word: Option<String>,
        /// Homology class λ,μ; its normal-form word is used
        #[arg(long, allow_hyphen_values = true)]
        class: Option<String>,
        /// Six comma-separated degrees on α12, α23, α31, α′12, α′23, α′31
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match commands::run(cli.command, cli.format) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
