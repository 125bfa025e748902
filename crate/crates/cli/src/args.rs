use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Parser, Debug, Serialize)]
#[command(name = "apollonia", version, about = "Random Apollonian networks: generation, longest paths, occupancy laws, round experiments")]
pub struct Cli {
    /// Print machine-readable JSON instead of text or CSV.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for multi-seed runs (0 uses every core). Output order
    /// does not depend on this.
    #[arg(long, global = true, default_value_t = 1, value_name = "K")]
    pub parallel: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
pub enum Command {
    /// Grow a network and write it as ran-v1 JSON.
    Generate(GenerateArgs),
    /// Longest path of a stored network.
    Solve(SolveArgs),
    /// Face-occupancy laws.
    #[command(subcommand)]
    Occupancy(OccupancyCommand),
    /// Ensemble experiments.
    #[command(subcommand)]
    Experiment(ExperimentCommand),
    /// Re-run the command recorded in a manifest and compare outputs.
    Replay(ReplayArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct GenerateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Brute,
    Heuristic,
}

#[derive(Args, Debug, Serialize)]
pub struct SolveArgs {
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::Exact)]
    pub method: Method,
    /// Include the vertex sequence of the path.
    #[arg(long)]
    pub emit_path: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Serialize)]
pub enum OccupancyCommand {
    /// Law of the number of insertions landing in the marked faces (CSV m,probability).
    Pmf(PmfArgs),
    /// Simulate the top-tau face load against its tail threshold.
    Tailcheck(TailcheckArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct PmfArgs {
    #[arg(long)]
    pub faces: u64,
    #[arg(long)]
    pub marked: u64,
    #[arg(long)]
    pub insertions: u64,
    /// Only this value of m.
    #[arg(long)]
    pub m: Option<u64>,
    /// Add an `exact` column with the probability as a fraction (N <= 30).
    #[arg(long)]
    pub rational: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct TailcheckArgs {
    #[arg(long)]
    pub sigma: usize,
    #[arg(long)]
    pub tau: u64,
    #[arg(long)]
    pub insertions: u64,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Serialize)]
pub enum ExperimentCommand {
    /// Round decomposition of the exact longest path, one row per checkpoint.
    Rounds(RoundsArgs),
    /// Exact and heuristic path lengths across sizes.
    Scaling(ScalingArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, Default, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum ProfileArg {
    #[default]
    Thm1,
    Thm2,
}

#[derive(Args, Debug, Serialize)]
pub struct RoundsArgs {
    #[arg(long)]
    pub n: u64,
    /// `a..b` (half-open), `a..=b`, or a single seed.
    #[arg(long)]
    pub seeds: SeedRange,
    #[arg(long, default_value_t = apollonia_core::analysis::DEFAULT_ALPHA)]
    pub alpha: f64,
    #[arg(long, default_value_t = apollonia_core::analysis::DEFAULT_C)]
    pub c: f64,
    #[arg(long, value_enum, default_value_t = ProfileArg::Thm1)]
    pub profile: ProfileArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct ScalingArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<u64>,
    #[arg(long, default_value_t = 30)]
    pub seeds_per_size: u64,
    #[arg(long, default_value_t = apollonia_core::analysis::DEFAULT_ALPHA)]
    pub alpha: f64,
    #[arg(long, default_value_t = apollonia_core::analysis::DEFAULT_C)]
    pub c: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct ReplayArgs {
    /// Manifest written next to an earlier output.
    pub manifest: PathBuf,
    /// Write the replayed output here instead of over the original.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Inclusive seed range.
#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
pub struct SeedRange {
    pub first: u64,
    pub last: u64,
}

impl SeedRange {
    pub fn seeds(&self) -> Vec<u64> {
        (self.first..=self.last).collect()
    }
}

impl FromStr for SeedRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("bad seed {t:?}: {e}"));
        let range = if let Some((a, b)) = s.split_once("..=") {
            SeedRange { first: num(a)?, last: num(b)? }
        } else if let Some((a, b)) = s.split_once("..") {
            let end = num(b)?;
            if end == 0 {
                return Err("empty seed range".into());
            }
            SeedRange { first: num(a)?, last: end - 1 }
        } else {
            let x = num(s)?;
            SeedRange { first: x, last: x }
        };
        if range.first > range.last {
            return Err(format!("empty seed range {s:?}"));
        }
        Ok(range)
    }
}

impl fmt::Display for SeedRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..={}", self.first, self.last)
    }
}

impl Command {
    /// Space-separated subcommand path, e.g. `experiment rounds`.
    pub fn name(&self) -> &'static str {
        match self {
            Command::Generate(_) => "generate",
            Command::Solve(_) => "solve",
            Command::Occupancy(OccupancyCommand::Pmf(_)) => "occupancy pmf",
            Command::Occupancy(OccupancyCommand::Tailcheck(_)) => "occupancy tailcheck",
            Command::Experiment(ExperimentCommand::Rounds(_)) => "experiment rounds",
            Command::Experiment(ExperimentCommand::Scaling(_)) => "experiment scaling",
            Command::Replay(_) => "replay",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_ranges() {
        assert_eq!("0..30".parse::<SeedRange>().unwrap().seeds().len(), 30);
        assert_eq!("3..=5".parse::<SeedRange>().unwrap().seeds(), vec![3, 4, 5]);
        assert_eq!("7".parse::<SeedRange>().unwrap().seeds(), vec![7]);
        assert!("5..5".parse::<SeedRange>().is_err());
        assert!("0..0".parse::<SeedRange>().is_err());
        assert!("x..3".parse::<SeedRange>().is_err());
    }
}
