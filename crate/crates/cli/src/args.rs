use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use indsat::containment::Mode;
use num_bigint::BigUint;

use crate::render::Format;

/// Induced and weak poset saturation in the Boolean lattice.
///
/// Poset descriptors: chain:k, antichain:k, v2, lambda2, diamond, butterfly,
/// custom:PATH. `antichain:m` is the antichain with m elements.
#[derive(Debug, Parser)]
#[command(name = "indsat", version, about)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check whether a family is saturated for a poset.
    Verify(VerifyArgs),
    /// Find the minimum size of a saturated family by exhaustive search.
    Solve(SolveArgs),
    /// Evaluate the known bounds for a poset at ground size n.
    Bounds(BoundsArgs),
    /// Compare the two antichain lower-bound slopes at k.
    Slopes {
        #[arg(long, value_parser = parse_big)]
        k: BigUint,
    },
    /// Least k up to k-max where the first antichain bound's slope wins.
    Crossover {
        #[arg(long, value_parser = parse_big)]
        k_max: BigUint,
    },
    /// Run chain-partition and audit procedures on a family.
    Procedures(ProceduresArgs),
    /// Recompute every acceptance number into one document.
    Report(ReportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Induced,
    Weak,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Induced => Mode::Induced,
            ModeArg::Weak => Mode::Weak,
        }
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub family: PathBuf,
    #[arg(long)]
    pub poset: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Induced)]
    pub mode: ModeArg,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub poset: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Induced)]
    pub mode: ModeArg,
    /// Maximum number of search nodes.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Worker threads (0: one per core).
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    #[arg(long)]
    pub no_symmetry: bool,
    /// Start the size scan at 0 instead of the best proven lower bound.
    #[arg(long)]
    pub no_seed: bool,
    /// Test copy-freeness only at full size.
    #[arg(long)]
    pub no_incremental: bool,
    /// Neither read nor write the result cache.
    #[arg(long)]
    pub no_cache: bool,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// Descriptor; `antichain` or `chain` without a size takes it from --k
    /// (the target then has k+1 elements).
    #[arg(long)]
    pub poset: String,
    #[arg(long, value_parser = parse_big)]
    pub n: BigUint,
    #[arg(long, value_parser = parse_big)]
    pub k: Option<BigUint>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Pipeline {
    Dilworth,
    Gaps,
    Widegap,
    Color,
    Pairs,
    Digraph,
    Audit,
}

#[derive(Debug, Args)]
pub struct ProceduresArgs {
    #[arg(long)]
    pub family: PathBuf,
    #[arg(long, value_enum)]
    pub pipeline: Pipeline,
    /// Member for `pairs` (mask or bitstring); every member when omitted.
    #[arg(long)]
    pub fstar: Option<String>,
    /// Target for `audit`: `diamond` or `antichain:m`.
    #[arg(long)]
    pub poset: Option<String>,
    /// Chain partition of F − {∅,[n]} for `gaps`, `widegap` and `color`
    /// (default: a minimum one).
    #[arg(long)]
    pub partition: Option<PathBuf>,
    /// Write the `widegap` move trace as text, one move per line.
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Write the document here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

/// Decimal integer or `a^b`.
pub fn parse_big(text: &str) -> Result<BigUint, String> {
    let bad = |_| format!("{text:?} is not a non-negative integer or a^b");
    match text.split_once('^') {
        Some((base, exp)) => {
            let base: BigUint = base.trim().parse().map_err(bad)?;
            let exp: u32 = exp.trim().parse().map_err(|_| format!("bad exponent in {text:?}"))?;
            Ok(base.pow(exp))
        }
        None => text.trim().parse().map_err(bad),
    }
}
