use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use immanant_core::{GroupSpec, Partition};

#[derive(Debug, Parser)]
#[command(
    name = "cayley-imm",
    version,
    about = "Exact immanants of abelian group Cayley tables"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full immanant polynomial of M_G for one partition
    Imm(ImmArgs),
    /// imm_(4,1^(n-4)) - imm_(2,2,2,1^(n-6)) as a polynomial
    Twin(TwinArgs),
    /// Support sizes P, D and the near-hook counts
    Support(SupportArgs),
    /// p-adic valuations of the zero-sum partition terms
    Padic(PadicArgs),
    /// Exact minor identities at seeded rational specializations
    Minors(MinorsArgs),
    /// Run verification suites
    Verify(VerifyArgs),
    /// Report-only explorations of open statements
    Explore(ExploreArgs),
    /// P and D for every abelian group up to an order
    SearchPdGap(GapArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Bruteforce,
    Orbit,
}

impl From<ModeArg> for immanant_core::Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Bruteforce => immanant_core::Mode::BruteForce,
            ModeArg::Orbit => immanant_core::Mode::Orbit,
        }
    }
}

#[derive(Debug, Args)]
pub struct ImmArgs {
    #[arg(long)]
    pub group: GroupSpec,
    /// Comma-separated parts, e.g. 4,1,1,1
    #[arg(long)]
    pub partition: Partition,
    #[arg(long, value_enum, default_value = "bruteforce")]
    pub mode: ModeArg,
    /// Write the polynomial here; a summary goes to stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TwinArgs {
    #[arg(long)]
    pub group: GroupSpec,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportKind {
    Counts,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    /// Zero-sum multisets and the partition formula
    Formula,
    /// Per-monomial permutation backtracking
    Backtrack,
    /// Full permutation sweeps (order <= 10)
    Bruteforce,
}

#[derive(Debug, Args)]
pub struct SupportArgs {
    #[arg(long)]
    pub group: GroupSpec,
    #[arg(long, value_enum, default_value = "counts")]
    pub report: ReportKind,
    #[arg(long, value_enum, default_value = "formula")]
    pub route: RouteArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct PadicArgs {
    #[arg(long)]
    pub group: GroupSpec,
    /// Element indices (mixed-radix order), comma-separated
    #[arg(
        long,
        value_delimiter = ',',
        conflicts_with = "all",
        required_unless_present = "all"
    )]
    pub sequence: Vec<usize>,
    /// Every zero-sum multiset of size |G|
    #[arg(long)]
    pub all: bool,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum MinorCheck {
    Conv,
    Hankel,
    Jacobi,
    F1,
    T2t12,
    Scalars,
    Reduction,
}

impl MinorCheck {
    pub const ALL: [MinorCheck; 7] = [
        MinorCheck::Conv,
        MinorCheck::Hankel,
        MinorCheck::Jacobi,
        MinorCheck::F1,
        MinorCheck::T2t12,
        MinorCheck::Scalars,
        MinorCheck::Reduction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MinorCheck::Conv => "conv",
            MinorCheck::Hankel => "hankel",
            MinorCheck::Jacobi => "jacobi",
            MinorCheck::F1 => "f1",
            MinorCheck::T2t12 => "t2t12",
            MinorCheck::Scalars => "scalars",
            MinorCheck::Reduction => "reduction",
        }
    }
}

#[derive(Debug, Args)]
pub struct MinorsArgs {
    #[arg(long)]
    pub group: GroupSpec,
    /// Number of specializations; seeds run from --seed upward
    #[arg(long, default_value_t = 5)]
    pub seeds: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Values are drawn from [1, range]
    #[arg(long, default_value_t = 32, value_parser = clap::value_parser!(u64).range(2..))]
    pub range: u64,
    /// Defaults to every check
    #[arg(long, value_enum, value_delimiter = ',')]
    pub checks: Vec<MinorCheck>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Hall,
    Thm13,
    Thm14,
    Thm15,
    Prop42,
    Jacobi,
    Scalars,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    /// Overrides each suite's default groups
    #[arg(long, value_delimiter = ',')]
    pub groups: Vec<GroupSpec>,
    /// Drops groups above this order
    #[arg(long)]
    pub max_order: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 32, value_parser = clap::value_parser!(u64).range(2..))]
    pub range: u64,
    /// Add wall-clock milliseconds to each report (output is then not reproducible)
    #[arg(long)]
    pub timings: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExploreArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub conjecture: u8,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GapArgs {
    #[arg(long, default_value_t = 12)]
    pub max_order: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
