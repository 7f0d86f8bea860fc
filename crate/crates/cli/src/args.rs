use clap::{Args, Parser, Subcommand, ValueEnum};
use colkit::SystemId;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "colkit",
    version,
    about = "Provers and checkers for fragments of computability logic"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// cl1, cl2, cl5, ccc or cl15
    #[arg(long, global = true, default_value = "cl1", value_parser = parse_system)]
    pub system: SystemId,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_nodes: Option<u64>,
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_proof_length: Option<u64>,
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_oformulas: Option<u64>,
    /// Contractions allowed per branch in cl15; 0 is the same as `--mode cl15c`.
    #[arg(long, global = true)]
    pub contraction_budget: Option<u64>,
    /// cl15 search mode
    #[arg(long, global = true, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub timeout_ms: Option<u64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Include wall-clock timings in reports (they make output nondeterministic).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a formula and show its forms and the languages it belongs to.
    Parse { formula: String },
    /// Search for a proof.
    Prove { formula: String },
    /// Decide provability without printing the proof.
    Decide { formula: String },
    /// Check a proof file; the system is read from the file.
    Check { file: PathBuf },
    /// Play a formula's game with a machine strategy against an adversary.
    Play(PlayArgs),
    /// Run a corpus manifest plus the seeded cross-oracle suites.
    Corpus {
        /// Manifest file or directory of `.jsonl` manifests; the bundled corpus if absent.
        path: Option<PathBuf>,
        /// Random cases per cross-oracle suite.
        #[arg(long, default_value_t = 50)]
        cases: usize,
    },
    /// Render a formula, cirquent file or proof file.
    Render { input: String },
}

#[derive(Args, Debug)]
pub struct PlayArgs {
    pub formula: String,
    /// File with a JSON object, or array of objects, mapping atoms to "T", "B", a catalogue game name or a game tree.
    #[arg(long)]
    pub interp: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Adversary::Exhaustive)]
    pub adversary: Adversary,
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    pub rounds: u64,
    #[arg(long, value_enum, default_value_t = StrategyArg::Proof)]
    pub strategy: StrategyArg,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Adversary {
    Exhaustive,
    Random,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum StrategyArg {
    /// Read off a CL1/CL2 proof of the formula.
    Proof,
    /// Never move.
    Pass,
    /// Mirror moves between the two disjuncts of `~G | G`.
    Copycat,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    Cl15c,
    Bounded,
    DepthLimited,
}

fn parse_system(s: &str) -> Result<SystemId, String> {
    s.parse()
}
