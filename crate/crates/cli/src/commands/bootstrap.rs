//! `bootstrap`: calibrate the piecewise-constant hazard curve and print it.

use std::path::PathBuf;

use cvacomplete_core::{bootstrap_hazard, CreditCurve, Error, Result};

use crate::context::{load_cds_csv, load_curve_csv, SnapshotContext, DEFAULT_RECOVERY};
use crate::args::GlobalArgs;
use crate::output::{write_file, Table};

/// Standalone input files used when no snapshot directory is given.
#[derive(Debug, clap::Args)]
pub struct BootstrapArgs {
    /// CDS quote CSV (`maturity_years,spread_bps`); requires `--curve`.
    #[arg(long, requires = "curve")]
    pub cds: Option<PathBuf>,
    /// Discount pillar CSV (`time_years,zero_rate`); requires `--cds`.
    #[arg(long, requires = "cds")]
    pub curve: Option<PathBuf>,
}

/// Runs the subcommand.
///
/// # Errors
/// Input errors for missing/invalid inputs; calibration failures from the
/// bootstrap itself.
pub fn run(globals: &GlobalArgs, args: &BootstrapArgs) -> Result<()> {
    let credit: CreditCurve = if let Some(dir) = &globals.snapshot {
        let ctx = SnapshotContext::load(dir, globals.recovery, None)?;
        ctx.announce();
        ctx.credit_curve()?
    } else if let (Some(cds), Some(curve)) = (&args.cds, &args.curve) {
        let recovery = globals.recovery.unwrap_or(DEFAULT_RECOVERY);
        let quotes = load_cds_csv(cds, recovery)?;
        let disc = load_curve_csv(curve, "DISCOUNT")?;
        bootstrap_hazard(&quotes, &disc)?
    } else {
        return Err(Error::Input(
            "provide --snapshot <dir>, or --cds <csv> together with --curve <csv>".into(),
        ));
    };

    let mut table = Table::new(&["knot_years", "hazard_rate", "survival"]);
    for (t, hazard) in credit.knots() {
        table.push(vec![t, hazard, credit.survival(t)?]);
    }
    let rendered = table.render();
    print!("{rendered}");
    if let Some(out) = &globals.out {
        write_file(out, "hazards.csv", &rendered)?;
    }
    Ok(())
}
