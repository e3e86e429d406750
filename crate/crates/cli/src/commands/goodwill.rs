//! `goodwill-cva`: firm-level goodwill write-down CVA, single valuations
//! and amortization-horizon sweeps.

use std::path::PathBuf;

use cvacomplete_core::{
    bootstrap_hazard, goodwill_cva, CreditCurve, DiscountCurve, Error, GoodwillModel,
    GoodwillVariant, Result,
};
use serde::Serialize;

use crate::context::{load_cds_csv, load_curve_csv, SnapshotContext, DEFAULT_RECOVERY};
use crate::args::GlobalArgs;
use crate::output::{print_json, write_file, Table};

/// Goodwill value dynamics selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ModelArg {
    /// Straight-line amortization to zero over the horizon.
    Amortizing,
    /// Constant book value.
    Constant,
    /// Martingale (stock-like) value.
    Stock,
}

impl ModelArg {
    fn label(self) -> &'static str {
        match self {
            ModelArg::Amortizing => "amortizing",
            ModelArg::Constant => "constant",
            ModelArg::Stock => "stock",
        }
    }
}

/// Flags for the goodwill valuation.
#[derive(Debug, clap::Args)]
pub struct GoodwillArgs {
    /// Goodwill book value in currency units.
    #[arg(long, default_value_t = 1.0)]
    pub goodwill: f64,
    /// Value dynamics between now and default.
    #[arg(long, value_enum, default_value_t = ModelArg::Amortizing)]
    pub model: ModelArg,
    /// Amortization horizon M in years (amortizing model; the valuation
    /// horizon defaults to M) or the valuation horizon T (other models).
    #[arg(long)]
    pub horizon: Option<f64>,
    /// Valuation horizon override for the amortizing model, decoupling T
    /// from M.
    #[arg(long)]
    pub cva_horizon: Option<f64>,
    /// CDS quote CSV (`maturity_years,spread_bps`); requires `--curve`.
    #[arg(long, requires = "curve")]
    pub cds: Option<PathBuf>,
    /// Discount pillar CSV (`time_years,zero_rate`); requires `--cds`.
    #[arg(long, requires = "cds")]
    pub curve: Option<PathBuf>,
    /// Amortization sweep `min:max:step` in years (amortizing model only);
    /// writes `goodwill_cva.csv` under --out.
    #[arg(long)]
    pub sweep: Option<String>,
}

#[derive(Serialize)]
struct PointSummary {
    model: &'static str,
    horizon: f64,
    cva_fraction: f64,
    cva: f64,
}

#[derive(Serialize)]
struct SweepSummary {
    model: &'static str,
    points: usize,
    min_cva_fraction: f64,
    max_cva_fraction: f64,
}

/// Runs the subcommand.
///
/// # Errors
/// Input errors for inconsistent flags; calibration and valuation errors
/// from the library.
pub fn run(globals: &GlobalArgs, args: &GoodwillArgs) -> Result<()> {
    if !(args.goodwill > 0.0) || !args.goodwill.is_finite() {
        return Err(Error::Input(format!(
            "--goodwill must be positive, got {}",
            args.goodwill
        )));
    }
    let (credit, disc): (CreditCurve, DiscountCurve) = if let Some(dir) = &globals.snapshot {
        let ctx = SnapshotContext::load(dir, globals.recovery, None)?;
        ctx.announce();
        (ctx.credit_curve()?, ctx.snapshot.discount_curve.clone())
    } else if let (Some(cds), Some(curve)) = (&args.cds, &args.curve) {
        let recovery = globals.recovery.unwrap_or(DEFAULT_RECOVERY);
        let quotes = load_cds_csv(cds, recovery)?;
        let disc = load_curve_csv(curve, "DISCOUNT")?;
        (bootstrap_hazard(&quotes, &disc)?, disc)
    } else {
        return Err(Error::Input(
            "provide --snapshot <dir>, or --cds <csv> together with --curve <csv>".into(),
        ));
    };

    if let Some(sweep) = &args.sweep {
        if args.model != ModelArg::Amortizing {
            return Err(Error::Input(
                "--sweep applies to the amortizing model only".into(),
            ));
        }
        let out = globals
            .out
            .as_ref()
            .ok_or_else(|| Error::Input("--sweep requires --out <dir>".into()))?;
        let horizons = parse_sweep(sweep)?;
        let mut table = Table::new(&["maturity_years", "cva_fraction"]);
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for &m in &horizons {
            let model =
                GoodwillModel::new(GoodwillVariant::Amortizing { horizon: m }, args.goodwill)?;
            let result = goodwill_cva(&model, &credit, &disc, m)?;
            min = min.min(result.cva_fraction);
            max = max.max(result.cva_fraction);
            table.push(vec![m, result.cva_fraction]);
        }
        write_file(out, "goodwill_cva.csv", &table.render())?;
        print_json(&SweepSummary {
            model: args.model.label(),
            points: table.len(),
            min_cva_fraction: min,
            max_cva_fraction: max,
        })
    } else {
        let horizon = args.horizon.ok_or_else(|| {
            Error::Input("--horizon is required unless --sweep is given".into())
        })?;
        let (variant, valuation_horizon) = match args.model {
            ModelArg::Amortizing => (
                GoodwillVariant::Amortizing { horizon },
                args.cva_horizon.unwrap_or(horizon),
            ),
            ModelArg::Constant | ModelArg::Stock => {
                if args.cva_horizon.is_some() {
                    return Err(Error::Input(
                        "--cva-horizon applies to the amortizing model only; use --horizon"
                            .into(),
                    ));
                }
                let variant = if args.model == ModelArg::Constant {
                    GoodwillVariant::Constant
                } else {
                    GoodwillVariant::Stock
                };
                (variant, horizon)
            }
        };
        let model = GoodwillModel::new(variant, args.goodwill)?;
        let result = goodwill_cva(&model, &credit, &disc, valuation_horizon)?;
        print_json(&PointSummary {
            model: args.model.label(),
            horizon: valuation_horizon,
            cva_fraction: result.cva_fraction,
            cva: result.cva,
        })
    }
}

/// Parses a `min:max:step` sweep into explicit horizons (inclusive of the
/// upper end when the step lands on it).
///
/// # Errors
/// [`Error::Input`] for malformed or degenerate sweep text.
pub fn parse_sweep(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Input(format!(
            "sweep must be min:max:step, got `{text}`"
        )));
    }
    let mut values = [0.0_f64; 3];
    for (i, part) in parts.iter().enumerate() {
        values[i] = part
            .parse()
            .map_err(|_| Error::Input(format!("sweep component `{part}` is not a number")))?;
    }
    let [min, max, step] = values;
    if !(min > 0.0) || !(max >= min) || !(step > 0.0) {
        return Err(Error::Input(format!(
            "sweep needs 0 < min <= max and step > 0, got `{text}`"
        )));
    }
    let count = ((max - min) / step).round() as usize + 1;
    if count > 100_000 {
        return Err(Error::Input(format!(
            "sweep `{text}` expands to {count} points; keep it under 100000"
        )));
    }
    let mut horizons = Vec::new();
    let mut k = 0usize;
    loop {
        let m = min + k as f64 * step;
        if m > max + 1e-9 {
            break;
        }
        horizons.push(m.min(max));
        k += 1;
    }
    Ok(horizons)
}
