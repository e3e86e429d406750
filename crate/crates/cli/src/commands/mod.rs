//! Subcommand implementations.

pub mod bootstrap;
pub mod goodwill;
pub mod scarcity;
pub mod study;
pub mod swaps;
pub mod validate;

use cvacomplete_core::Side;

/// Swap-side selector shared by the swap-pricing subcommands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SideArg {
    /// Fixed-rate payer.
    Payer,
    /// Fixed-rate receiver.
    Receiver,
    /// Both sides, payer rows first.
    Both,
}

impl SideArg {
    /// The concrete sides this selector expands to.
    pub fn sides(self) -> Vec<Side> {
        match self {
            SideArg::Payer => vec![Side::Payer],
            SideArg::Receiver => vec![Side::Receiver],
            SideArg::Both => vec![Side::Payer, Side::Receiver],
        }
    }
}

/// Numeric encoding of a swap side used in emitted CSV tables, which keeps
/// every column numeric so tables round-trip through the strict reader:
/// 0 = payer, 1 = receiver.
pub fn side_code(side: Side) -> f64 {
    match side {
        Side::Payer => 0.0,
        Side::Receiver => 1.0,
    }
}
