use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use diffiso::constructions::ConstructionKind;

/// Construct, verify and search difference-isomorphic families of r-graphs.
///
/// Exit codes: 0 success, 1 verification failure or lemma violation,
/// 2 usage or parse error, 3 capacity exceeded. Setting DIFFISO_CAP_BITS
/// raises the enumeration caps (expert use).
#[derive(Debug, Parser)]
#[command(name = "diffiso", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Worker threads; 1 forces the sequential path.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: Option<u16>,
    /// Wall-clock budget for searches.
    #[arg(long, global = true, value_name = "SECS")]
    pub budget_secs: Option<f64>,
    /// Seed for sampled sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Indent JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print f_r(n) and 2^f_r(n) over a range of parameters.
    Table(TableArgs),
    /// Generate a family, verify it and write a family file.
    Construct(ConstructArgs),
    /// Check that every pair of members has isomorphic differences.
    Verify(FileArg),
    /// Find a largest difference-isomorphic family by clique search.
    Search(SearchArgs),
    /// Sweep one of the finite inequalities and report violations.
    Lemma(LemmaArgs),
    /// Print the canonical form of one graph.
    Canon(CanonArgs),
    /// Replace every edge by the set of vertices it misses.
    Dualize(FileArg),
    /// Replace every member by its complement graph.
    Complement(FileArg),
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, default_value_t = 8)]
    pub n_max: usize,
    #[arg(long, default_value_t = 4)]
    pub r_max: usize,
    /// Emit JSON instead of a text table.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(value_parser = parse_kind)]
    pub kind: ConstructionKind,
    /// Vertex count; middle-layer uses r + 1.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub r: usize,
    /// Number of stars.
    #[arg(long)]
    pub k: Option<usize>,
    /// Edges per graph for the layer family.
    #[arg(long)]
    pub m: Option<usize>,
}

fn parse_kind(s: &str) -> Result<ConstructionKind, String> {
    s.parse().map_err(|e: diffiso::Error| e.to_string())
}

#[derive(Debug, Args)]
pub struct FileArg {
    /// Family file.
    pub path: PathBuf,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: usize,
    /// Start from the extremal construction as incumbent.
    #[arg(long)]
    pub seed_extremal: bool,
    /// Also solve (n, n - r) and compare.
    #[arg(long, conflicts_with = "seed_extremal")]
    pub duality: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepMode {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Args)]
pub struct LemmaArgs {
    /// Check identifier, e.g. 3.2.
    #[arg(long)]
    pub id: String,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long)]
    pub r_max: Option<usize>,
    /// Edge-count slack for the report-only 2-cycle check.
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long, value_enum, default_value_t = SweepMode::Exhaustive)]
    pub mode: SweepMode,
    /// Instances drawn in sampled mode.
    #[arg(long)]
    pub samples: Option<u64>,
}

#[derive(Debug, Args)]
pub struct CanonArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: usize,
    /// Edge mask in hex, bit i for the edge of colex rank i.
    #[arg(long)]
    pub graph: String,
}
