//! Command-line definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::report::Format;
use crate::setup::{CriterionId, Pairing};

#[derive(Debug, Parser)]
#[command(name = "entrosep", version, about = "Entropic separability tests for bipartite quantum states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value = "csv", global = true)]
    pub format: Format,

    /// Seed for the random-state suites.
    #[arg(long, default_value_t = 42, global = true)]
    pub seed: u64,

    /// Cap on either dimension of a Kronecker product.
    #[arg(long, env = "ENTROSEP_MAX_DIM", global = true)]
    pub max_dim: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate criteria on a state read from a file.
    Check(CheckArgs),
    /// Find violation thresholds along a state family.
    Scan(ScanArgs),
    /// Dump the s_k profile of two local bases.
    Profile(ProfileArgs),
    /// Emit measurements, setups or states as JSON.
    Construct(ConstructArgs),
    /// Validate files, or sweep random separable states for false positives.
    Validate(ValidateArgs),
    /// Recompute the reference threshold table.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CriterionArgs {
    /// Criteria to evaluate, comma separated.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "mub-tsallis")]
    pub criterion: Vec<CriterionId>,

    /// Entropic order(s): numbers, `inf`, or `grid`; comma separated.
    #[arg(long, default_value = "2")]
    pub alpha: String,

    /// Second order for the Maassen–Uffink criterion; defaults to the
    /// conjugate of alpha.
    #[arg(long)]
    pub beta: Option<String>,

    /// Compare Z with the real rotated basis at this angle (qubits only),
    /// e.g. `pi/4`.
    #[arg(long)]
    pub theta: Option<String>,

    /// Number of MUBs to use from the Weyl construction.
    #[arg(long)]
    pub k: Option<usize>,

    /// How local bases are matched into joint measurements.
    #[arg(long, value_enum, default_value = "diagonal")]
    pub pairing: Pairing,

    /// Mixing weight t of the MUMs, `t P + (1 - t) I/d`.
    #[arg(long = "kappa-t", default_value_t = 1.0)]
    pub kappa_t: f64,

    /// Mixing weight t of the general SIC-POVM.
    #[arg(long = "gsic-t", default_value_t = 1.0)]
    pub gsic_t: f64,

    /// Local measurements from a setup file instead of the built-in bases.
    #[arg(long)]
    pub setup: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// State file, `{"dims": [dA, dB], "matrix": ...}`.
    pub state: PathBuf,

    #[command(flatten)]
    pub criteria: CriterionArgs,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// State family.
    #[arg(long, default_value = "werner-qubit")]
    pub family: String,

    #[command(flatten)]
    pub criteria: CriterionArgs,

    /// Initial bisection bracket `lo,hi`.
    #[arg(long, value_delimiter = ',')]
    pub bracket: Option<Vec<f64>>,

    /// Write `(c, margin)` pairs to this CSV file.
    #[arg(long = "emit-curve")]
    pub emit_curve: Option<PathBuf>,

    /// Number of points written by `--emit-curve`.
    #[arg(long, default_value_t = 101)]
    pub curve_points: usize,
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    /// First basis as a POVM file.
    #[arg(long, requires = "second")]
    pub first: Option<PathBuf>,

    /// Second basis as a POVM file.
    #[arg(long, requires = "first")]
    pub second: Option<PathBuf>,

    /// Compare Z with the rotated qubit basis at this angle.
    #[arg(long, conflicts_with_all = ["first", "second"])]
    pub theta: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructKind {
    /// Computational basis.
    Basis,
    /// Real rotated qubit basis (needs --theta).
    Rotated,
    /// All d + 1 Weyl MUBs (prime d).
    Mubs,
    /// SIC-POVM (d = 2 or 3).
    Sic,
    /// MUMs from the Weyl MUBs mixed with weight --kappa-t.
    Mum,
    /// General SIC-POVM mixed with weight --gsic-t.
    Gsic,
    /// Setup file for `check --setup`.
    Setup,
    /// Two-qubit Werner state at --c.
    Werner,
    /// Two-qutrit family member at --c.
    Qutrit,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(value_enum)]
    pub kind: ConstructKind,

    /// Local dimension.
    #[arg(long, default_value_t = 2)]
    pub dim: usize,

    #[arg(long)]
    pub theta: Option<String>,

    /// Number of MUBs for `mum` and `setup`.
    #[arg(long)]
    pub k: Option<usize>,

    #[arg(long, value_enum, default_value = "diagonal")]
    pub pairing: Pairing,

    #[arg(long = "kappa-t", default_value_t = 1.0)]
    pub kappa_t: f64,

    #[arg(long = "gsic-t", default_value_t = 1.0)]
    pub gsic_t: f64,

    /// Mixing parameter of the state families.
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// State, POVM, POVM-set or setup files.
    pub files: Vec<PathBuf>,

    /// Also evaluate every criterion on this many random separable states
    /// per local dimension (2 and 3).
    #[arg(long)]
    pub random_separable: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// Run a single case.
    #[arg(long)]
    pub case: Option<String>,
}
