//! `nclogic`: command-line front end for the verification kernel.
//!
//! Exit codes: 0 when every check passes, 1 when a checked property fails,
//! 2 on usage or input errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "nclogic", version, about = "Verification kernel for the four-valued logic BS4 and the set universe W")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Seed for every sampled battery.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Cap on the number of models an exhaustive search may visit.
    #[arg(long, global = true, env = "NCLOGIC_BUDGET", default_value_t = nclogic::semantics::DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a formula and print its canonical form.
    Parse {
        formula: String,
        /// Also print the formula with all sugar expanded.
        #[arg(long)]
        desugar: bool,
    },
    /// Evaluate a formula in a T/F-model given as JSON.
    Eval {
        model: PathBuf,
        formula: String,
        /// Values for free variables, as `x=element`.
        #[arg(long = "assign", short = 'a')]
        assign: Vec<String>,
    },
    /// Print the truth table of a connective.
    Table { connective: String },
    /// Search for a countermodel to `premises ⊨ conclusion` up to a domain size.
    Consequence {
        conclusion: String,
        #[arg(long = "premise", short = 'p')]
        premises: Vec<String>,
        #[arg(long, default_value_t = 2)]
        max_size: usize,
        /// Names to read as constants rather than variables.
        #[arg(long = "constant", short = 'c')]
        constants: Vec<String>,
    },
    /// Check a Hilbert-style proof given as JSON.
    CheckProof { proof: PathBuf },
    /// Randomized soundness check of the axiom schemas and rules.
    Soundness {
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 4)]
        max_size: usize,
    },
    /// Explore the set universe W.
    #[command(subcommand)]
    Universe(UniverseCmd),
    /// Embeddings between the classical and non-classical universes.
    #[command(subcommand)]
    Embed(EmbedCmd),
    /// Four-valued Tarski models.
    #[command(subcommand)]
    Tarski(TarskiCmd),
    /// Run every acceptance battery.
    VerifyAll {
        /// Run only these criteria (1 to 10).
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Subcommand, Debug)]
pub enum UniverseCmd {
    /// List the sets of W_n.
    Level {
        n: u32,
        /// Print only the number of sets.
        #[arg(long)]
        count: bool,
    },
    /// Describe one set given as a literal such as `<[<[],[]>],[]>`.
    Inspect { set: String },
    /// Check an axiom (or `all`) over a finite fragment.
    Axiom {
        name: String,
        /// Input level, overriding the axiom's default.
        #[arg(long)]
        level: Option<u32>,
    },
    /// Extension and structure laws over W_n.
    Laws {
        #[arg(long, default_value_t = 3)]
        level: u32,
    },
    /// Build the set with the given !- and ?-extensions, or with no
    /// arguments run the construction on all pairs of small classical sets.
    Acla { bang: Option<String>, quest: Option<String> },
    /// The set of truth values. With `--verify N`, also checks N sentences.
    Omega {
        #[arg(long)]
        verify: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum EmbedCmd {
    /// The check map from hereditarily finite sets into W.
    Check {
        #[arg(long, default_value_t = 4)]
        level: u32,
    },
    /// Hereditarily classical sets of W against the image of the check map.
    Hcl {
        #[arg(long, default_value_t = 3)]
        level: u32,
    },
    /// The hat map from W into its pair-coded copy.
    Hat {
        #[arg(long, default_value_t = 2)]
        level: u32,
    },
    /// W rebuilt inside the hereditarily classical sets.
    W {
        #[arg(long, default_value_t = 2)]
        level: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum TarskiCmd {
    /// Value of a formula in a Tarski model given as JSON.
    Value {
        model: PathBuf,
        formula: String,
        #[arg(long = "assign", short = 'a')]
        assign: Vec<String>,
    },
    /// Convert a Tarski model to a T/F-model.
    ToTf { model: PathBuf },
    /// Convert a T/F-model to a Tarski model.
    FromTf { model: PathBuf },
    /// Validity of a sentence over one model class.
    Classify {
        formula: String,
        /// Full, ConsistentOnly, CompleteOnly or Classical.
        #[arg(long, default_value = "Full")]
        class: String,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
    },
    /// Sampled round trips and value agreement between the two semantics.
    Roundtrip {
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Exhaustive comparison of the two semantics on small models.
    Sweep {
        #[arg(long, default_value_t = 2)]
        max_size: usize,
    },
    /// Validity of the separator formulas on each model class.
    Separation {
        #[arg(long, default_value_t = 3)]
        max_size: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli.global.jobs;
    match nclogic::par::install(jobs, || commands::run(&cli)) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
