//! `swap-funding` and `swap-cva`: contingent funding costs and self-default
//! funding CVA for collateralized swaps, spot tables and two-snapshot
//! change reports. Both subcommands emit the same table (cost and CVA are
//! two columns of one calculation); they exist separately so invocations
//! read naturally next to the report they reproduce.

use std::path::PathBuf;

use cvacomplete_core::{
    fair_swap_rate, funding_report, swap_funding_cost, swap_funding_cva, Error, FundingMarket,
    Result, Side, SmileMode, SwapSpec,
};
use serde::Serialize;

use crate::commands::{side_code, SideArg};
use crate::context::{parse_funding_mode, FundingMode, SnapshotContext};
use crate::args::GlobalArgs;
use crate::output::{print_json, write_file, Table};

/// Flags shared by `swap-funding` and `swap-cva`.
#[derive(Debug, clap::Args)]
pub struct SwapArgs {
    /// Swap maturity in years (single-maturity mode).
    #[arg(long)]
    pub maturity: Option<f64>,
    /// Coupon tenor in years (also the funding roll interval); defaults to
    /// the snapshot's meta.json, then 0.5.
    #[arg(long)]
    pub tenor: Option<f64>,
    /// Funding roll interval; must equal the coupon tenor (funding is
    /// rolled at coupon dates). Present for explicitness.
    #[arg(long)]
    pub roll: Option<f64>,
    /// Which side(s) to price.
    #[arg(long, value_enum, default_value_t = SideArg::Both)]
    pub side: SideArg,
    /// Funding-over-overnight source: `flat`, `decomposed`, or
    /// `constant:<bps>`.
    #[arg(long, default_value = "flat", value_parser = parse_funding_mode)]
    pub funding: FundingMode,
    /// Comma-separated maturity sweep, e.g. `2,5,10,20,30`.
    #[arg(long, value_delimiter = ',')]
    pub sweep_maturities: Option<Vec<f64>>,
    /// Fixed rate override (decimal); defaults to the at-the-money rate.
    #[arg(long)]
    pub strike: Option<f64>,
    /// Price with at-the-money volatilities instead of the strike-offset
    /// smile.
    #[arg(long)]
    pub atm_only: bool,
    /// First snapshot of a change report; requires `--snapshot-new`.
    #[arg(long, requires = "snapshot_new", conflicts_with = "snapshot")]
    pub snapshot_old: Option<PathBuf>,
    /// Second snapshot of a change report; requires `--snapshot-old`.
    #[arg(long, requires = "snapshot_old", conflicts_with = "snapshot")]
    pub snapshot_new: Option<PathBuf>,
}

#[derive(Serialize)]
struct FileSummary {
    rows: usize,
    file: &'static str,
}

/// Runs either swap subcommand.
///
/// # Errors
/// Input errors for inconsistent flags or schedules; pricing errors from
/// the library.
pub fn run(globals: &GlobalArgs, args: &SwapArgs) -> Result<()> {
    let smile = if args.atm_only {
        SmileMode::AtmOnly
    } else {
        SmileMode::Smile
    };
    if let (Some(old_dir), Some(new_dir)) = (&args.snapshot_old, &args.snapshot_new) {
        if args.strike.is_some() {
            return Err(Error::Input(
                "--strike is not available in a change report; each date prices its own \
                 at-the-money trade"
                    .into(),
            ));
        }
        let old = SnapshotContext::load(old_dir, globals.recovery, args.tenor)?;
        let new = SnapshotContext::load(new_dir, globals.recovery, args.tenor)?;
        old.announce();
        new.announce();
        let roll = resolve_roll(&old, args)?;
        let new_roll = resolve_roll(&new, args)?;
        if (roll - new_roll).abs() > 1e-12 {
            return Err(Error::Input(format!(
                "snapshots disagree on the roll tenor ({roll} vs {new_roll}); pass --tenor to \
                 override both"
            )));
        }
        let maturities = maturities(args)?;
        let horizon = max_of(&maturities);
        let old_credit = old.credit_curve()?;
        let new_credit = new.credit_curve()?;
        let old_funding = old.funding_curve(&args.funding, &old_credit, horizon)?;
        let new_funding = new.funding_curve(&args.funding, &new_credit, horizon)?;
        let rows = funding_report(
            &maturities,
            roll,
            &FundingMarket {
                fwd: &old.snapshot.tenor_curve,
                disc: &old.snapshot.discount_curve,
                cube: &old.snapshot.cube,
                credit: &old_credit,
                funding: &old_funding,
            },
            &FundingMarket {
                fwd: &new.snapshot.tenor_curve,
                disc: &new.snapshot.discount_curve,
                cube: &new.snapshot.cube,
                credit: &new_credit,
                funding: &new_funding,
            },
            smile,
        )?;
        let wanted = args.side.sides();
        let mut table = Table::new(&[
            "maturity",
            "side",
            "old_funding_cost_bps",
            "new_funding_cost_bps",
            "funding_cost_change_bps",
            "old_funding_cva_bps",
            "new_funding_cva_bps",
            "funding_cva_change_bps",
        ]);
        for row in rows.iter().filter(|r| wanted.contains(&r.side)) {
            table.push(vec![
                row.maturity,
                side_code(row.side),
                row.old_funding_cost * 1e4,
                row.new_funding_cost * 1e4,
                row.funding_cost_change * 1e4,
                row.old_funding_cva * 1e4,
                row.new_funding_cva * 1e4,
                row.funding_cva_change * 1e4,
            ]);
        }
        emit(globals, table, "swap_funding_change.csv")
    } else if let Some(dir) = &globals.snapshot {
        let ctx = SnapshotContext::load(dir, globals.recovery, args.tenor)?;
        ctx.announce();
        let roll = resolve_roll(&ctx, args)?;
        let maturities = maturities(args)?;
        let horizon = max_of(&maturities);
        let credit = ctx.credit_curve()?;
        let funding = ctx.funding_curve(&args.funding, &credit, horizon)?;
        let fwd = &ctx.snapshot.tenor_curve;
        let disc = &ctx.snapshot.discount_curve;
        let mut table = Table::new(&["maturity", "side", "funding_cost_bps", "funding_cva_bps"]);
        for &maturity in &maturities {
            let mut spec = SwapSpec::new(0.0, maturity, 0.0, roll, Side::Payer, 1.0)?;
            let fair = fair_swap_rate(fwd, disc, &spec, 0.0)?;
            spec.fixed_rate = match args.strike {
                Some(strike) => {
                    if (strike - fair).abs() > 1e-4 {
                        eprintln!(
                            "warning: strike {strike} is {:.1}bp away from the {maturity}y \
                             at-the-money rate {fair:.6}",
                            (strike - fair).abs() * 1e4
                        );
                    }
                    strike
                }
                None => fair,
            };
            for side in args.side.sides() {
                let cost =
                    swap_funding_cost(&spec, fwd, disc, &ctx.snapshot.cube, &funding, side, smile)?;
                let cva =
                    swap_funding_cva(&spec, fwd, disc, &ctx.snapshot.cube, &credit, side, smile)?;
                table.push(vec![maturity, side_code(side), cost * 1e4, cva * 1e4]);
            }
        }
        emit(globals, table, "swap_funding.csv")
    } else {
        Err(Error::Input(
            "provide --snapshot <dir>, or --snapshot-old with --snapshot-new".into(),
        ))
    }
}

fn resolve_roll(ctx: &SnapshotContext, args: &SwapArgs) -> Result<f64> {
    let tenor = ctx.roll_tenor.value;
    if let Some(roll) = args.roll {
        if (roll - tenor).abs() > 1e-12 {
            return Err(Error::Input(format!(
                "funding is rolled at coupon dates, so --roll must equal the coupon tenor \
                 (roll {roll} vs tenor {tenor})"
            )));
        }
    }
    Ok(tenor)
}

fn maturities(args: &SwapArgs) -> Result<Vec<f64>> {
    let list = match (&args.sweep_maturities, args.maturity) {
        (Some(list), None) => list.clone(),
        (None, Some(m)) => vec![m],
        (Some(_), Some(_)) => {
            return Err(Error::Input(
                "--maturity and --sweep-maturities are mutually exclusive".into(),
            ))
        }
        (None, None) => {
            return Err(Error::Input(
                "provide --maturity <years> or --sweep-maturities <list>".into(),
            ))
        }
    };
    for &m in &list {
        if !(m > 0.0) || !m.is_finite() {
            return Err(Error::Input(format!("maturities must be positive, got {m}")));
        }
    }
    Ok(list)
}

fn max_of(values: &[f64]) -> f64 {
    values.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b))
}

fn emit(globals: &GlobalArgs, table: Table, name: &'static str) -> Result<()> {
    if let Some(out) = &globals.out {
        write_file(out, name, &table.render())?;
        print_json(&FileSummary {
            rows: table.len(),
            file: name,
        })
    } else {
        print!("{}", table.render());
        Ok(())
    }
}
