//! Configuration resolution shared by the subcommands.
//!
//! Values are resolved with the precedence: command-line flag, then the
//! snapshot's `meta.json`, then the built-in default (recovery 0.40, roll
//! tenor 0.5y). The resolved configuration is announced on stderr so every
//! run records which sources its numbers came from; stdout stays reserved
//! for the requested output.

use std::path::Path;

use cvacomplete_core::{
    bootstrap_hazard, load_snapshot, read_numeric_csv, CdsQuoteSet, CreditCurve, DiscountCurve,
    Error, FundingCurve, MarketSnapshot, Result,
};

/// Recovery assumed when neither a flag nor `meta.json` supplies one.
pub const DEFAULT_RECOVERY: f64 = 0.40;
/// Roll/coupon tenor assumed when nothing else supplies one.
pub const DEFAULT_ROLL_TENOR: f64 = 0.5;

/// Where a resolved value came from, highest precedence first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    /// Explicit command-line flag.
    Flag,
    /// The snapshot's `meta.json`.
    Snapshot,
    /// Built-in default.
    Default,
}

impl Source {
    fn label(self) -> &'static str {
        match self {
            Source::Flag => "flag",
            Source::Snapshot => "meta.json",
            Source::Default => "default",
        }
    }
}

/// A value plus the source it was resolved from.
#[derive(Debug, Clone, Copy)]
pub struct Resolved {
    /// The effective value.
    pub value: f64,
    /// Which layer supplied it.
    pub source: Source,
}

fn resolve(flag: Option<f64>, snapshot: Option<f64>, default: f64) -> Resolved {
    if let Some(value) = flag {
        Resolved {
            value,
            source: Source::Flag,
        }
    } else if let Some(value) = snapshot {
        Resolved {
            value,
            source: Source::Snapshot,
        }
    } else {
        Resolved {
            value: default,
            source: Source::Default,
        }
    }
}

/// A loaded snapshot together with its effective recovery and roll tenor.
pub struct SnapshotContext {
    /// The parsed snapshot.
    pub snapshot: MarketSnapshot,
    /// Effective CDS recovery.
    pub recovery: Resolved,
    /// Effective roll/coupon tenor.
    pub roll_tenor: Resolved,
}

impl SnapshotContext {
    /// Loads a snapshot directory and resolves recovery/roll against flags.
    ///
    /// # Errors
    /// Propagates snapshot loading failures; rejects out-of-range
    /// overrides.
    pub fn load(dir: &Path, recovery_flag: Option<f64>, tenor_flag: Option<f64>) -> Result<Self> {
        let snapshot = load_snapshot(dir)?;
        if let Some(r) = recovery_flag {
            check_recovery(r)?;
        }
        if let Some(t) = tenor_flag {
            if !(t > 0.0) || !t.is_finite() {
                return Err(Error::Input(format!(
                    "coupon tenor must be positive, got {t}"
                )));
            }
        }
        // `load_snapshot` already folds meta.json over the built-in
        // defaults, so its values rank as snapshot-sourced here.
        let recovery = resolve(recovery_flag, Some(snapshot.recovery), DEFAULT_RECOVERY);
        let roll_tenor = resolve(tenor_flag, Some(snapshot.roll_tenor), DEFAULT_ROLL_TENOR);
        Ok(Self {
            snapshot,
            recovery,
            roll_tenor,
        })
    }

    /// Prints the resolved configuration line for this snapshot on stderr.
    pub fn announce(&self) {
        eprintln!(
            "config[{}]: recovery={} ({}), roll_tenor={} ({})",
            self.snapshot.label,
            self.recovery.value,
            self.recovery.source.label(),
            self.roll_tenor.value,
            self.roll_tenor.source.label(),
        );
    }

    /// Rebuilds the quote set under the effective recovery and bootstraps
    /// the hazard curve against the snapshot's discount curve.
    ///
    /// # Errors
    /// Propagates quote-set and calibration failures.
    pub fn credit_curve(&self) -> Result<CreditCurve> {
        let pairs: Vec<(f64, f64)> = self
            .snapshot
            .cds
            .quotes()
            .iter()
            .map(|q| (q.maturity, q.spread))
            .collect();
        let quotes = CdsQuoteSet::new(&pairs, self.recovery.value)?;
        bootstrap_hazard(&quotes, &self.snapshot.discount_curve)
    }

    /// Builds the funding curve for `mode` out to `horizon` years.
    ///
    /// # Errors
    /// Propagates curve construction failures.
    pub fn funding_curve(
        &self,
        mode: &FundingMode,
        credit: &CreditCurve,
        horizon: f64,
    ) -> Result<FundingCurve> {
        let roll = self.roll_tenor.value;
        match mode {
            FundingMode::Flat => FundingCurve::flat_basis(
                &self.snapshot.tenor_curve,
                &self.snapshot.discount_curve,
                roll,
                horizon,
            ),
            FundingMode::Decomposed => {
                let scarcity = self.snapshot.scarcity.clone().unwrap_or_default();
                if self.snapshot.scarcity.is_none() {
                    eprintln!(
                        "note: snapshot {} has no scarcity.csv; decomposed funding assumes \
                         zero scarcity",
                        self.snapshot.label
                    );
                }
                FundingCurve::decomposed(
                    credit,
                    &self.snapshot.discount_curve,
                    &scarcity,
                    roll,
                    horizon,
                )
            }
            FundingMode::Constant(spread) => FundingCurve::constant_average(*spread, roll),
        }
    }
}

/// How the funding-over-overnight curve is sourced.
#[derive(Debug, Clone, PartialEq)]
pub enum FundingMode {
    /// Spot tenor/overnight basis carried forward at each roll date.
    Flat,
    /// Forward own-CDS rate plus the snapshot's scarcity curve.
    Decomposed,
    /// A single constant spread (decimal).
    Constant(f64),
}

/// Parses `flat`, `decomposed`, or `constant:<bps>`.
///
/// # Errors
/// A human-readable message for clap when the mode is not recognized.
pub fn parse_funding_mode(text: &str) -> std::result::Result<FundingMode, String> {
    match text {
        "flat" => Ok(FundingMode::Flat),
        "decomposed" => Ok(FundingMode::Decomposed),
        other => {
            if let Some(bps) = other.strip_prefix("constant:") {
                let bps: f64 = bps
                    .parse()
                    .map_err(|_| format!("constant funding spread `{bps}` is not a number"))?;
                if !bps.is_finite() || bps < 0.0 {
                    return Err(format!(
                        "constant funding spread must be a non-negative bps value, got {bps}"
                    ));
                }
                Ok(FundingMode::Constant(bps / 1e4))
            } else {
                Err(format!(
                    "unknown funding mode `{other}`; expected flat, decomposed, or constant:<bps>"
                ))
            }
        }
    }
}

fn check_recovery(recovery: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&recovery) || !recovery.is_finite() {
        return Err(Error::Input(format!(
            "recovery must lie in [0, 1], got {recovery}"
        )));
    }
    Ok(())
}

/// Loads a standalone CDS quote file (`maturity_years,spread_bps`).
///
/// # Errors
/// Parse failures name the file, line, and column; quote-set invariants
/// propagate from the library.
pub fn load_cds_csv(path: &Path, recovery: f64) -> Result<CdsQuoteSet> {
    check_recovery(recovery)?;
    let rows = read_numeric_csv(path, &["maturity_years", "spread_bps"])?;
    let pairs: Vec<(f64, f64)> = rows.iter().map(|r| (r[0], r[1] / 1e4)).collect();
    CdsQuoteSet::new(&pairs, recovery)
}

/// Loads a standalone zero-rate pillar file (`time_years,zero_rate`).
///
/// # Errors
/// As [`load_cds_csv`], plus curve invariants.
pub fn load_curve_csv(path: &Path, curve_id: &str) -> Result<DiscountCurve> {
    let rows = read_numeric_csv(path, &["time_years", "zero_rate"])?;
    let pillars: Vec<(f64, f64)> = rows.iter().map(|r| (r[0], r[1])).collect();
    DiscountCurve::from_zero_rates(curve_id, &pillars)
}
