//! The `cubicgap` command line: thin wrappers around the library crates that
//! write CSV and JSON artifacts and print a short summary.

pub mod commands;
pub mod error;
pub mod output;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use cubicgap_cover::DEFAULT_THRESHOLD;

pub use error::{CliError, Result};
pub use output::{Output, TOOL_VERSION};

#[derive(Debug, Parser)]
#[command(name = "cubicgap", version, about = "Spectral gaps of cubic graphs and their periodic covers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Samples per axis of the character torus.
    #[arg(long, global = true, default_value_t = 256)]
    pub grid: usize,
    /// Spectral holes narrower than this are filled in.
    #[arg(long, global = true, default_value_t = DEFAULT_THRESHOLD)]
    pub threshold: f64,
    /// Seed graphs for searches: a JSON array or JSON lines of graphs.
    #[arg(long, global = true)]
    pub seeds: Option<PathBuf>,
    /// Directory for CSV and JSON artifacts.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for random graphs.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Re-verify results in exact arithmetic.
    #[arg(long, global = true)]
    pub exact: bool,
    /// Membership tolerance.
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub tol: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sorted adjacency spectrum of a graph.
    Spectrum { graph: PathBuf },
    /// Iterate the triangle map and classify the resulting spectrum.
    Tmap {
        graph: PathBuf,
        #[arg(short, long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 1000)]
        max_vertices: usize,
    },
    /// Band structure and gaps of a periodic cover.
    Bands {
        /// Cover JSON, or `wbar_b` / `wbar_a`.
        cover: String,
    },
    /// Band search over one- and two-link covers of seed graphs.
    Search {
        /// Seed order when `--seeds` is absent.
        #[arg(long, default_value_t = 4)]
        order: usize,
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, default_value_t = 3)]
        max_coefficient: i64,
        /// Keep only covers whose cyclic quotients are planar.
        #[arg(long)]
        planar: bool,
    },
    /// Finite quotient of a rank-1 cover.
    Quotient {
        cover: String,
        #[arg(short, long)]
        n: usize,
        /// Fold the quotient by a reflection of the cover.
        #[arg(long)]
        fold: bool,
    },
    /// Locate a cover with the target gap and certify it exactly.
    Certify {
        /// Gap such as "(-1,1)".
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        /// Skip the search and certify this cover.
        #[arg(long)]
        cover: Option<String>,
    },
    /// Logarithmic capacity of `interval:a,b` or `level:m`.
    Capacity {
        #[arg(long, allow_hyphen_values = true, default_value = "interval:-3,3")]
        set: String,
        #[arg(long, default_value_t = 64)]
        points: usize,
    },
    /// Plan and realize a finite graph with a gap around `xi`.
    Witness {
        #[arg(long, allow_hyphen_values = true)]
        xi: f64,
        #[arg(long, default_value_t = 0.01)]
        delta: f64,
        /// Largest seed order for the planar cover search.
        #[arg(long, default_value_t = 6)]
        order: usize,
        #[arg(long, default_value_t = 10_000)]
        max_vertices: usize,
    },
    /// Check a gap interval on a quotient family: w_b, w_a, p_b or p_a.
    Audit {
        #[arg(long)]
        family: String,
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 16)]
        n_max: usize,
    },
    /// Whether the spectrum of a graph lies in a finite set.
    Fekete {
        graph: PathBuf,
        /// Comma-separated values.
        #[arg(long, allow_hyphen_values = true)]
        set: String,
    },
    /// Test-function bound on the distance from `lambda` to the spectrum.
    Bound {
        graph: Option<PathBuf>,
        /// Use a random cubic graph of this order instead.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
    },
}

/// Run a command, write its artifacts to `--out` and print its summary.
pub fn execute(cli: &Cli) -> Result<()> {
    let out = commands::run(cli)?;
    if let Some(dir) = &cli.out {
        out.write_to(dir)?;
    }
    print!("{}", out.summary);
    out.failure.map_or(Ok(()), Err)
}
