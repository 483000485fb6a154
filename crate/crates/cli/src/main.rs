//! `pg`: batch front end for pregroup tables, `U(P)` arithmetic and Cayley
//! ball geometry.
//!
//! Exit codes: 0 when every check holds or the value was computed, 1 when a
//! checked property fails (the witness is in the output), 2 on usage or
//! parse errors. Timing goes to stderr; stdout is deterministic.

mod commands;
mod examples;
mod out;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "pg", version, about = "Pregroups, their universal groups and Cayley balls")]
pub struct Cli {
    /// One JSON record per line instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Instance budget for sampled scans.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "PG_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct WordArgs {
    /// Pregroup file.
    pub file: PathBuf,
    /// Words over the elements, space separated (`-w "a b3"`).
    #[arg(short = 'w', long = "word", required = true)]
    pub words: Vec<String>,
}

#[derive(Args, Debug, Clone)]
pub struct BallArgs {
    /// Pregroup file.
    pub file: PathBuf,
    /// Radius of a freshly built ball.
    #[arg(short = 'R', long = "radius", conflicts_with = "ball")]
    pub radius: Option<u32>,
    /// Read the ball from a cache written by `pg ball -o`.
    #[arg(long)]
    pub ball: Option<PathBuf>,
    /// Generators as element names, comma separated (default: P ∖ {1}).
    #[arg(short = 'S', long = "gens-elements", value_delimiter = ',', conflicts_with = "gens")]
    pub gens_elements: Option<Vec<String>>,
    /// Generator file with `gen <name> = <word>` lines.
    #[arg(long)]
    pub gens: Option<PathBuf>,
    #[arg(long, default_value_t = 200_000)]
    pub vertex_limit: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check axioms (default P1–P6 and P6'; `--axioms all` adds A1–A5 and H0).
    Check {
        file: PathBuf,
        /// Comma separated tags, or `all` / `pregroup`.
        #[arg(long, value_delimiter = ',')]
        axioms: Option<Vec<String>>,
        /// A2 bound on sequence length.
        #[arg(long, default_value_t = 2)]
        a2_m: usize,
        /// A2 bound on exponents.
        #[arg(long, default_value_t = 4)]
        a2_alpha: u32,
    },
    /// Print B_P.
    Bp { file: PathBuf },
    /// Print the order tree: classes, heights and edges.
    Tree { file: PathBuf },
    /// Reduce a product.
    Reduce {
        #[command(flatten)]
        w: WordArgs,
        #[arg(long, default_value = "leftmost", value_parser = ["leftmost", "rightmost", "random"])]
        strategy: String,
    },
    /// Reduced form of the product of all given words.
    Mul {
        #[command(flatten)]
        w: WordArgs,
    },
    /// Whether two words are equal in U(P).
    Eq {
        #[command(flatten)]
        w: WordArgs,
    },
    /// Canonical form.
    Canon {
        #[command(flatten)]
        w: WordArgs,
    },
    /// Chiswell length.
    Len {
        #[command(flatten)]
        w: WordArgs,
    },
    /// Order-tree length.
    Treelen {
        #[command(flatten)]
        w: WordArgs,
    },
    /// Canonical forms of all elements up to a reduced length.
    Enum {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_len: usize,
    },
    /// Build a ball of the Cayley graph.
    Ball {
        #[command(flatten)]
        b: BallArgs,
        /// Write the ball cache here.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Four-point and thin-triangle δ on a ball.
    Delta {
        #[command(flatten)]
        b: BallArgs,
    },
    /// Estimate C0–C3 on a ball.
    Hconsts {
        #[command(flatten)]
        b: BallArgs,
    },
    /// Check the path-family bounds D1–D5 and conditions (a)–(c).
    Lemmas {
        #[command(flatten)]
        b: BallArgs,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
        #[arg(long, default_value_t = 2)]
        triangle_len: usize,
        /// Samples for conditions (b) and (c).
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        /// Claimed constants replacing measured ones, e.g. `C1=0` or `C0=1.5`.
        #[arg(long = "claim", value_delimiter = ',')]
        claims: Vec<String>,
    },
    /// Emit an example pregroup file: free<n>, z<n>, d<n>, s3, klein,
    /// amalgam:<m>:<n>:<k>, random:<size>:<raw|perturbed>.
    Gen {
        kind: String,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Random pregroups through the axiom, reduction and format suites.
    Fuzz {
        #[arg(long, default_value_t = 200)]
        count: u64,
        #[arg(long, default_value_t = 8)]
        size: usize,
        #[arg(long, default_value = "both", value_parser = ["raw", "perturbed", "both"])]
        mode: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("pg: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("pg: {e:#}");
            ExitCode::from(if e.is::<commands::Unmet>() { 1 } else { 2 })
        }
    }
}
