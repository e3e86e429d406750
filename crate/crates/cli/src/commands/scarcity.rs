//! `scarcity`: split a term funding spread over overnight into the median
//! bank credit spread and the residual scarcity spread.

use cvacomplete_core::{median_bank_cds, scarcity_spread, Error, Result};
use serde::Serialize;

use crate::context::SnapshotContext;
use crate::args::GlobalArgs;
use crate::output::print_json;

/// Flags for the spread decomposition.
#[derive(Debug, clap::Args)]
pub struct ScarcityArgs {
    /// Term unsecured deposit rate in bps; requires `--overnight-bps`.
    /// Defaults to the snapshot's first fixings.csv row.
    #[arg(long, requires = "overnight_bps")]
    pub deposit_bps: Option<f64>,
    /// Overnight index rate in bps; requires `--deposit-bps`.
    #[arg(long, requires = "deposit_bps")]
    pub overnight_bps: Option<f64>,
    /// Reference-bank CDS panel in bps, comma-separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub bank_cds_bps: Vec<f64>,
    /// How many of the smallest panel spreads feed the median.
    #[arg(long, default_value_t = 10)]
    pub n_best: usize,
}

#[derive(Serialize)]
struct ScarcitySummary {
    funding_spread_bps: f64,
    credit_spread_bps: f64,
    scarcity_spread_bps: f64,
}

/// Runs the subcommand.
///
/// # Errors
/// Input errors when neither flags nor snapshot fixings supply the rates,
/// or when the panel/n_best combination is invalid.
pub fn run(globals: &GlobalArgs, args: &ScarcityArgs) -> Result<()> {
    let (deposit, overnight) = match (args.deposit_bps, args.overnight_bps) {
        (Some(d), Some(o)) => (d / 1e4, o / 1e4),
        _ => {
            let dir = globals.snapshot.as_ref().ok_or_else(|| {
                Error::Input(
                    "provide --deposit-bps with --overnight-bps, or --snapshot with fixings.csv"
                        .into(),
                )
            })?;
            let ctx = SnapshotContext::load(dir, globals.recovery, None)?;
            ctx.announce();
            let fixings = ctx.snapshot.fixings.as_ref().ok_or_else(|| {
                Error::Input(format!(
                    "snapshot {} has no fixings.csv; pass --deposit-bps/--overnight-bps",
                    ctx.snapshot.label
                ))
            })?;
            let row = fixings[0];
            (row.deposit_rate, row.overnight_rate)
        }
    };
    let panel: Vec<f64> = args.bank_cds_bps.iter().map(|b| b / 1e4).collect();
    let median = median_bank_cds(&panel, args.n_best)?;
    let split = scarcity_spread(deposit, overnight, median);
    print_json(&ScarcitySummary {
        funding_spread_bps: split.funding_spread * 1e4,
        credit_spread_bps: split.credit_spread * 1e4,
        scarcity_spread_bps: split.scarcity_spread * 1e4,
    })
}
