//! Front end for the `drg-lines` binary: argument types, file formats and
//! the command implementations, each returning a JSON payload.

pub mod commands;
pub mod formats;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use drglines::cliquelines::LineMode;
use drglines::Error;

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok = 0,
    Argument = 1,
    Budget = 2,
    Verification = 3,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub status: Status,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            status: Status::Argument,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::BudgetExceeded { .. } => Status::Budget,
            Error::Linearity { .. } | Error::NotAClique { .. } | Error::ThresholdNotMet { .. } => {
                Status::Verification
            }
            _ => Status::Argument,
        };
        Self {
            status,
            message: e.to_string(),
        }
    }
}

/// Byte count written as a plain integer or with a `K`, `M`, `G`, `T`
/// suffix (binary multiples; `GiB` and `GB` are accepted too).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ByteSize(pub u64);

impl FromStr for ByteSize {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let t = s.trim();
        let split = t.find(|c: char| !c.is_ascii_digit()).unwrap_or(t.len());
        let (num, unit) = t.split_at(split);
        let num: u64 = num.parse().map_err(|_| format!("invalid size {s:?}"))?;
        let shift = match unit
            .trim()
            .to_ascii_uppercase()
            .trim_end_matches('B')
            .trim_end_matches('I')
        {
            "" => 0,
            "K" => 10,
            "M" => 20,
            "G" => 30,
            "T" => 40,
            _ => return Err(format!("invalid size unit in {s:?}")),
        };
        num.checked_mul(1 << shift)
            .map(ByteSize)
            .ok_or_else(|| format!("size {s:?} overflows"))
    }
}

impl fmt::Display for ByteSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Grassmann graphs, their line systems and the checks around them.
#[derive(Debug, Clone, Parser, Serialize)]
#[command(name = "drg-lines", version)]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Worker threads [default: all available cores].
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Memory ceiling for graph construction, e.g. 16GiB.
    #[arg(long, global = true, default_value = "16GiB")]
    pub mem_cap: ByteSize,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Command {
    /// Classical parameters, intersection array and spectrum of J_q(n, D).
    Params(Dims),
    /// Build J_q(n, D) and write it to a graph file (`.drgb` for binary).
    Gen(GenArgs),
    /// Exact margins of the line-system conditions for the classical
    /// parameters (D, 2, 2, [D+ell+1]_2 - 1).
    CheckMain(CheckMainArgs),
    /// Integers s for which the three inequality conditions hold on J_q(n, D).
    SearchS(SearchArgs),
    /// Distance-regularity audit of a graph file.
    Audit(AuditArgs),
    /// Extract the line system of a graph file.
    Extract(ExtractArgs),
    /// Check a line set against the partial linear space conditions.
    VerifyRcs(RcsArgs),
    /// Smallest eigenvalue of sampled local graphs.
    LocalEigen(EigenArgs),
}

#[derive(Debug, Clone, Copy, Args, Serialize)]
pub struct Dims {
    pub n: usize,
    #[arg(value_name = "D")]
    #[serde(rename = "D")]
    pub d: usize,
    pub q: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GenArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub dims: Dims,
    pub out: PathBuf,
    /// Leave out the subspace labels.
    #[arg(long)]
    pub no_labels: bool,
}

#[derive(Debug, Clone, Copy, Args, Serialize)]
pub struct CheckMainArgs {
    #[arg(value_name = "D")]
    #[serde(rename = "D")]
    pub d: u32,
    pub ell: u32,
}

#[derive(Debug, Clone, Copy, Args, Serialize)]
pub struct SearchArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub dims: Dims,
    /// Largest s tried [default: 4 q^D].
    #[arg(long)]
    pub s_max: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AuditModeArg {
    /// Full when small, transitive when labelled, sampled otherwise.
    Auto,
    Full,
    Sampled,
    /// BFS from one vertex after certifying a transitive automorphism group
    /// (needs subspace labels).
    Transitive,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct AuditArgs {
    pub graph: PathBuf,
    #[arg(long, value_enum, default_value_t = AuditModeArg::Auto)]
    pub mode: AuditModeArg,
    /// Base vertices in sampled mode.
    #[arg(long, default_value_t = 64)]
    pub sample: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ExtractArgs {
    pub graph: PathBuf,
    /// Output line-set file.
    pub out: PathBuf,
    /// Line size threshold: improved w+2-(s-1)m or metsch w+2-(s-1)e.
    #[arg(long, default_value_t = LineMode::Improved)]
    pub mode: LineMode,
    /// Bound on lines per vertex [default: ceil(5 q^D / 4) for labelled graphs].
    #[arg(long)]
    pub s: Option<i128>,
    /// Smallest-eigenvalue bound of local graphs, giving (m, n) [default: q + 1, or 3].
    #[arg(long)]
    pub lambda: Option<i128>,
    /// Local valency a_1 [default: from the labels].
    #[arg(long)]
    pub w: Option<i128>,
    /// c_2 - 1 [default: from the labels].
    #[arg(long)]
    pub e: Option<i128>,
    /// Node budget of the exact anticlique search per local graph.
    #[arg(long, default_value_t = 10_000_000)]
    pub node_budget: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RcsArgs {
    pub lines: PathBuf,
    pub graph: PathBuf,
    /// Field order q in the conditions.
    #[arg(long, default_value_t = 2)]
    pub q: u64,
    /// Base points checked when the space is too large for an exhaustive pass.
    #[arg(long, default_value_t = 1000)]
    pub sample: usize,
    /// Largest point count checked exhaustively.
    #[arg(long, default_value_t = 100_000)]
    pub exhaustive_cutoff: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EigenArgs {
    pub graph: PathBuf,
    /// Number of local graphs.
    #[arg(long, default_value_t = 32)]
    pub sample: usize,
    /// Residual tolerance of the power iteration.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, default_value_t = 100_000)]
    pub max_iter: usize,
}

/// Payload of a command together with the exit status it implies.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub status: Status,
    pub result: serde_json::Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub seconds: f64,
}

/// Schema version 1 of the JSON report.
#[derive(Debug, Clone, Serialize)]
pub struct Report<'a> {
    pub schema: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub config: &'a Cli,
    pub threads: usize,
    pub timing: Timing,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub result: serde_json::Value,
}

impl<'a> Report<'a> {
    pub fn new(config: &'a Cli, seconds: f64, outcome: Result<Outcome, CliError>) -> Self {
        let (status, error, result) = match outcome {
            Ok(o) => (o.status, None, o.result),
            Err(e) => (e.status, Some(e.message), serde_json::Value::Null),
        };
        Report {
            schema: 1,
            tool: "drg-lines",
            version: env!("CARGO_PKG_VERSION"),
            config,
            threads: rayon::current_num_threads(),
            timing: Timing { seconds },
            status,
            error,
            result,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn byte_sizes() {
        assert_eq!("16GiB".parse::<ByteSize>(), Ok(ByteSize(16 << 30)));
        assert_eq!("512M".parse::<ByteSize>(), Ok(ByteSize(512 << 20)));
        assert_eq!("1kb".parse::<ByteSize>(), Ok(ByteSize(1024)));
        assert_eq!("123".parse::<ByteSize>(), Ok(ByteSize(123)));
        assert!("12X".parse::<ByteSize>().is_err());
        assert!("GiB".parse::<ByteSize>().is_err());
        assert!("99999999999T".parse::<ByteSize>().is_err());
    }

    #[test]
    fn error_status() {
        assert_eq!(
            CliError::from(Error::BudgetExceeded {
                what: "x",
                needed: 2,
                cap: 1
            })
            .status,
            Status::Budget
        );
        assert_eq!(
            CliError::from(Error::Linearity {
                a: 0,
                b: 1,
                first: 0,
                second: 1
            })
            .status,
            Status::Verification
        );
        assert_eq!(CliError::from(Error::NotPrime(4)).status, Status::Argument);
    }

    #[test]
    fn cli_definition() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
