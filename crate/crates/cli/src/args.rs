//! Flags shared by every subcommand.

use std::path::PathBuf;

use clap::Args;

/// Options accepted by all subcommands.
///
/// These are declared `global`, so they may appear before or after the
/// subcommand name on the command line.
#[derive(Args, Debug)]
pub struct GlobalArgs {
    /// Market snapshot directory to price against.
    #[arg(long, global = true, value_name = "DIR")]
    pub snapshot: Option<PathBuf>,

    /// Directory for output files; tables print to stdout when omitted.
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,

    /// Recovery rate assumed when stripping default probabilities from
    /// credit quotes; overrides the snapshot's own value.
    #[arg(long, global = true, value_name = "RATE")]
    pub recovery: Option<f64>,

    /// Seed for any simulation the command runs.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
}
