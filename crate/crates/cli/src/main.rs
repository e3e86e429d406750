//! Command-line front end for the counterparty-value and funding library.
//!
//! Exit codes:
//! * `0` — success (including `--help` and `--version`),
//! * `1` — bad input: unknown flags, malformed files, out-of-range
//!   parameters, quote sets that admit arbitrage,
//! * `2` — a numerical routine failed to converge on otherwise valid input.

// Guards are written `!(x > 0.0)` rather than `x <= 0.0` on purpose: the
// negated form also rejects NaN, which must never slip past validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod commands;
mod context;
mod output;

use clap::{Parser, Subcommand};
use cvacomplete_core::{Error, ErrorClass};

use crate::args::GlobalArgs;
use crate::commands::{
    bootstrap::BootstrapArgs, goodwill::GoodwillArgs, scarcity::ScarcityArgs, study::StudyArgs,
    swaps::SwapArgs, validate::ValidateArgs,
};

#[derive(Parser, Debug)]
#[command(
    name = "cvacomplete",
    version,
    about = "Counterparty-value adjustments for goodwill and collateralized-swap funding",
    propagate_version = true
)]
struct Cli {
    #[command(flatten)]
    globals: GlobalArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Strip piecewise-constant default intensities from CDS quotes.
    Bootstrap(BootstrapArgs),
    /// Expected write-down of book goodwill caused by own default.
    GoodwillCva(GoodwillArgs),
    /// Lifetime cost of funding the collateral of a swap.
    SwapFunding(SwapArgs),
    /// Own-default windfall on the funding leg of a swap.
    SwapCva(SwapArgs),
    /// Split a bank funding spread into credit and scarcity parts.
    Scarcity(ScarcityArgs),
    /// Cross-check the funding formula against a Monte Carlo repricing.
    Validate(ValidateArgs),
    /// Reproduce the two-snapshot study: goodwill write-down plus funding.
    CaseStudy(StudyArgs),
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            // Help and version requests are successes; anything else is a
            // usage error.
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };

    let result = match &cli.command {
        Command::Bootstrap(args) => commands::bootstrap::run(&cli.globals, args),
        Command::GoodwillCva(args) => commands::goodwill::run(&cli.globals, args),
        Command::SwapFunding(args) | Command::SwapCva(args) => {
            commands::swaps::run(&cli.globals, args)
        }
        Command::Scarcity(args) => commands::scarcity::run(&cli.globals, args),
        Command::Validate(args) => commands::validate::run(&cli.globals, args),
        Command::CaseStudy(args) => commands::study::run(&cli.globals, args),
    };

    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e.class() {
        ErrorClass::InputError => 1,
        ErrorClass::NumericalFailure => 2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn exit_codes_follow_error_class() {
        assert_eq!(exit_code(&Error::Input("x".into())), 1);
        assert_eq!(exit_code(&Error::Calibration("no root".into())), 2);
    }
}
