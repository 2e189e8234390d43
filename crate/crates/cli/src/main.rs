//! `tlc`: trees of simplices, local constructions, recognition and census.
//!
//! Exit codes: 0 success, 1 negative verdict, 2 indeterminate or out of
//! budget, 3 input error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::LazyLock;

use clap::{Args, Parser, Subcommand};

static VERSION: LazyLock<String> =
    LazyLock::new(|| format!("{} (format {})", env!("CARGO_PKG_VERSION"), tlc_core::io::FORMAT_VERSION));

#[derive(Parser, Debug)]
#[command(name = "tlc", version = VERSION.as_str(), about = "Local constructions of triangulated manifolds")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Write machine-readable output here (JSON, or JSON Lines for records).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Wall-clock budget in milliseconds for searches.
    #[arg(long, global = true)]
    pub budget_ms: Option<u64>,
    /// Worker threads.
    #[arg(long, global = true, env = "LC_WORKERS")]
    pub workers: Option<usize>,
    /// Seed for sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Trees of simplices.
    #[command(subcommand)]
    Tree(TreeCmd),
    /// Local constructions.
    #[command(subcommand)]
    Glue(GlueCmd),
    /// Decide t-LC or t-constructibility.
    #[command(subcommand)]
    Recognize(RecognizeCmd),
    /// Manifold certificates.
    #[command(subcommand)]
    Certify(CertifyCmd),
    /// Reduced integral homology of each complex in a file.
    Homology(InputArgs),
    /// Link of a face.
    Link {
        #[command(flatten)]
        input: InputArgs,
        /// Comma separated vertices, e.g. `0,1`.
        #[arg(long, value_delimiter = ',', required = true)]
        face: Vec<u32>,
    },
    /// Exhaustive census of complexes glued from trees.
    Census {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        t: usize,
        #[arg(long, default_value = "manifold")]
        class: String,
        /// Only complete matchings.
        #[arg(long)]
        closed: bool,
        /// Manifest of an earlier partial run; its records file is the manifest path without `.manifest.json`.
        #[arg(long)]
        resume: Option<PathBuf>,
    },
    /// Ceilings of the counting argument against a census count.
    Bounds {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        count: u128,
    },
    /// Named example complexes.
    Examples {
        /// Emit only this one.
        #[arg(long)]
        name: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum TreeCmd {
    /// All trees of N d-simplices up to isomorphism.
    Gen {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        /// Every attachment sequence instead of one tree per class.
        #[arg(long)]
        labelled: bool,
        /// Keep a random sample of this many, chosen with `--seed`.
        #[arg(long)]
        sample: Option<usize>,
    },
    /// Boundary face counts of every tree against the closed forms.
    Facecounts {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum GlueCmd {
    /// Replay a local construction and report the complex it builds.
    Replay {
        /// A construction, or the JSON written by `recognize lc`.
        file: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum RecognizeCmd {
    Lc {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 1)]
        t: usize,
    },
    Constructible {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 1)]
        t: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum CertifyCmd {
    Manifold(InputArgs),
}

#[derive(Args, Debug)]
pub struct InputArgs {
    /// Complexes, one JSON object per line.
    pub file: PathBuf,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    if let Some(w) = cli.global.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w.max(1)).build_global() {
            eprintln!("warning: {e}");
        }
    }
    ExitCode::from(commands::run(&cli) as u8)
}
