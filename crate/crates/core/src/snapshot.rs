//! Market snapshot ingestion from a directory of CSV files.
//!
//! A snapshot directory contains `discount.csv` and `tenor.csv` (headers
//! `time_years,zero_rate`, continuously compounded), `cds.csv`
//! (`maturity_years,spread_bps`), `vols.csv`
//! (`expiry_years,tenor_years,strike_offset_bps,vol` forming a complete
//! dense grid), a `meta.json` (label, recovery, roll tenor, optional
//! valuation date), and optionally `scarcity.csv`
//! (`time_years,scarcity_spread`) and `fixings.csv`
//! (`tenor_years,deposit_rate,overnight_rate`). Files are UTF-8,
//! comma-separated, `.` decimal separator, header row mandatory. Every
//! parse failure reports the file, line, and column.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use serde::Deserialize;

use crate::credit::CdsQuoteSet;
use crate::curves::DiscountCurve;
use crate::error::{Error, Result};
use crate::volatility::VolCube;

/// Defaults applied when `meta.json` omits the corresponding field.
const DEFAULT_RECOVERY: f64 = 0.40;
const DEFAULT_ROLL_TENOR: f64 = 0.5;

/// One deposit/overnight fixing pair, used for spot scarcity decomposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixingRow {
    /// Deposit tenor in years.
    pub tenor_years: f64,
    /// Term unsecured deposit rate (decimal).
    pub deposit_rate: f64,
    /// Overnight index rate (decimal).
    pub overnight_rate: f64,
}

/// A fully parsed and validated market snapshot.
#[derive(Debug, Clone)]
pub struct MarketSnapshot {
    /// Snapshot label, e.g. `"2008YE"`.
    pub label: String,
    /// Valuation date shared by the curves, when supplied.
    pub valuation_date: Option<NaiveDate>,
    /// CDS recovery assumption (flags may override downstream).
    pub recovery: f64,
    /// Funding roll tenor in years.
    pub roll_tenor: f64,
    /// Collateral (overnight) discount curve.
    pub discount_curve: DiscountCurve,
    /// Floating-leg projection curve.
    pub tenor_curve: DiscountCurve,
    /// Own-name CDS quotes.
    pub cds: CdsQuoteSet,
    /// Swaption volatility cube.
    pub cube: VolCube,
    /// Optional forward scarcity spread curve `(time, spread)`.
    pub scarcity: Option<Vec<(f64, f64)>>,
    /// Optional deposit/overnight fixings.
    pub fixings: Option<Vec<FixingRow>>,
}

#[derive(Debug, Deserialize)]
struct MetaJson {
    label: String,
    #[serde(default)]
    recovery: Option<f64>,
    #[serde(default)]
    roll_tenor: Option<f64>,
    #[serde(default)]
    valuation_date: Option<String>,
}

/// Loads and validates a snapshot directory.
///
/// # Errors
/// [`Error::MissingFile`] naming any absent mandatory file;
/// [`Error::Parse`] with file, line, and column for malformed content; the
/// constructors' own errors (e.g. the strictly-increasing CDS maturity
/// invariant) for semantic violations.
pub fn load_snapshot(directory: &Path) -> Result<MarketSnapshot> {
    let meta = load_meta(&directory.join("meta.json"))?;
    let valuation_date = match &meta.valuation_date {
        None => None,
        Some(text) => Some(NaiveDate::parse_from_str(text, "%Y-%m-%d").map_err(|e| {
            Error::Input(format!(
                "meta.json valuation_date {text:?} is not a YYYY-MM-DD date: {e}"
            ))
        })?),
    };
    if meta.label.trim().is_empty() {
        return Err(Error::Invariant("meta.json label must be non-empty".into()));
    }
    let recovery = meta.recovery.unwrap_or(DEFAULT_RECOVERY);
    let roll_tenor = meta.roll_tenor.unwrap_or(DEFAULT_ROLL_TENOR);
    if !(roll_tenor > 0.0) {
        return Err(Error::Input(format!(
            "meta.json roll_tenor must be positive, got {roll_tenor}"
        )));
    }

    let discount_rows = read_csv(
        &directory.join("discount.csv"),
        &["time_years", "zero_rate"],
    )?;
    let mut discount_curve = DiscountCurve::from_zero_rates(
        "discount",
        &rows_to_pairs(&discount_rows),
    )?;

    let tenor_rows = read_csv(&directory.join("tenor.csv"), &["time_years", "zero_rate"])?;
    let mut tenor_curve =
        DiscountCurve::from_zero_rates("tenor", &rows_to_pairs(&tenor_rows))?;

    if let Some(date) = valuation_date {
        discount_curve = discount_curve.with_valuation_date(date);
        tenor_curve = tenor_curve.with_valuation_date(date);
    }

    let cds_rows = read_csv(
        &directory.join("cds.csv"),
        &["maturity_years", "spread_bps"],
    )?;
    let cds_quotes: Vec<(f64, f64)> = cds_rows
        .iter()
        .map(|row| (row.fields[0], row.fields[1] / 1e4))
        .collect();
    let cds = CdsQuoteSet::new(&cds_quotes, recovery)?;

    let cube = load_vol_cube(&directory.join("vols.csv"))?;

    let scarcity_path = directory.join("scarcity.csv");
    let scarcity = if scarcity_path.exists() {
        let rows = read_csv(&scarcity_path, &["time_years", "scarcity_spread"])?;
        Some(rows_to_pairs(&rows))
    } else {
        None
    };

    let fixings_path = directory.join("fixings.csv");
    let fixings = if fixings_path.exists() {
        let rows = read_csv(
            &fixings_path,
            &["tenor_years", "deposit_rate", "overnight_rate"],
        )?;
        Some(
            rows.iter()
                .map(|row| FixingRow {
                    tenor_years: row.fields[0],
                    deposit_rate: row.fields[1],
                    overnight_rate: row.fields[2],
                })
                .collect(),
        )
    } else {
        None
    };

    Ok(MarketSnapshot {
        label: meta.label,
        valuation_date,
        recovery,
        roll_tenor,
        discount_curve,
        tenor_curve,
        cds,
        cube,
        scarcity,
        fixings,
    })
}

/// Reads a strict numeric CSV: the header must equal `header` exactly,
/// every data row must have one finite decimal per column, and at least
/// one data row must be present. This is the same reader the snapshot
/// loader uses, exposed so downstream tooling can round-trip its own CSV
/// output through the library's parser.
///
/// # Returns
/// The data rows, in file order, as one `Vec<f64>` per row.
///
/// # Errors
/// [`Error::MissingFile`] if the file does not exist, [`Error::Parse`]
/// (naming file, line, and 1-based column) for any malformed content.
pub fn read_numeric_csv(path: &Path, header: &[&str]) -> Result<Vec<Vec<f64>>> {
    Ok(read_csv(path, header)?.into_iter().map(|r| r.fields).collect())
}

fn load_meta(path: &Path) -> Result<MetaJson> {
    let text = read_file(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        file: path.display().to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// A parsed CSV data row: original line number plus numeric fields.
struct CsvRow {
    line: usize,
    fields: Vec<f64>,
}

fn rows_to_pairs(rows: &[CsvRow]) -> Vec<(f64, f64)> {
    rows.iter().map(|r| (r.fields[0], r.fields[1])).collect()

}

fn read_file(path: &Path) -> Result<String> {
    match std::fs::read_to_string(path) {
        Ok(text) => Ok(text),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            Err(Error::MissingFile(PathBuf::from(path)))
        }
        Err(e) => Err(Error::Input(format!("cannot read {}: {e}", path.display()))),
    }
}

/// Strict CSV reader: exact header match, fixed column count, every field
/// a finite decimal. Empty lines are ignored; at least one data row is
/// required.
fn read_csv(path: &Path, header: &[&str]) -> Result<Vec<CsvRow>> {
    let text = read_file(path)?;
    let file = path.display().to_string();
    let mut rows = Vec::new();
    let mut lines = text.lines().enumerate();

    let (_, first) = lines.next().ok_or_else(|| Error::Parse {
        file: file.clone(),
        line: 1,
        column: 1,
        message: "file is empty; expected a header row".into(),
    })?;
    let expected = header.join(",");
    if first.trim_end_matches('\r') != expected {
        return Err(Error::Parse {
            file,
            line: 1,
            column: 1,
            message: format!("expected header {expected:?}, found {first:?}"),
        });
    }

    for (idx, raw) in lines {
        let line = idx + 1;
        let trimmed = raw.trim_end_matches('\r');
        if trimmed.trim().is_empty() {
            continue;
        }
        let parts: Vec<&str> = trimmed.split(',').collect();
        if parts.len() != header.len() {
            return Err(Error::Parse {
                file,
                line,
                column: parts.len().min(header.len()) + 1,
                message: format!(
                    "expected {} comma-separated fields, found {}",
                    header.len(),
                    parts.len()
                ),
            });
        }
        let mut fields = Vec::with_capacity(parts.len());
        for (col, part) in parts.iter().enumerate() {
            let value: f64 = part.trim().parse().map_err(|_| Error::Parse {
                file: file.clone(),
                line,
                column: col + 1,
                message: format!("{:?} is not a decimal number", part.trim()),
            })?;
            if !value.is_finite() {
                return Err(Error::Parse {
                    file: file.clone(),
                    line,
                    column: col + 1,
                    message: format!("{value} is not finite"),
                });
            }
            fields.push(value);
        }
        rows.push(CsvRow { line, fields });
    }

    if rows.is_empty() {
        return Err(Error::Parse {
            file,
            line: 1,
            column: 1,
            message: "no data rows after the header".into(),
        });
    }
    Ok(rows)
}

/// Reads `vols.csv` and assembles the dense cube, verifying that the rows
/// cover every (expiry, tenor, offset) combination exactly once.
fn load_vol_cube(path: &Path) -> Result<VolCube> {
    let rows = read_csv(
        path,
        &["expiry_years", "tenor_years", "strike_offset_bps", "vol"],
    )?;
    let file = path.display().to_string();

    let mut expiries = BTreeSet::new();
    let mut tenors = BTreeSet::new();
    let mut offsets = BTreeSet::new();
    for row in &rows {
        expiries.insert(OrderedF64::new(row.fields[0]));
        tenors.insert(OrderedF64::new(row.fields[1]));
        offsets.insert(OrderedF64::new(row.fields[2] / 1e4));
    }
    let expiries: Vec<f64> = expiries.into_iter().map(|x| x.0).collect();
    let tenors: Vec<f64> = tenors.into_iter().map(|x| x.0).collect();
    let offsets: Vec<f64> = offsets.into_iter().map(|x| x.0).collect();

    let volume = expiries.len() * tenors.len() * offsets.len();
    let mut vols = vec![f64::NAN; volume];
    for row in &rows {
        let i = index_of(&expiries, row.fields[0]);
        let j = index_of(&tenors, row.fields[1]);
        let k = index_of(&offsets, row.fields[2] / 1e4);
        let flat = (i * tenors.len() + j) * offsets.len() + k;
        if !vols[flat].is_nan() {
            return Err(Error::Parse {
                file,
                line: row.line,
                column: 1,
                message: format!(
                    "duplicate volatility point (expiry {}, tenor {}, offset {} bp)",
                    row.fields[0], row.fields[1], row.fields[2]
                ),
            });
        }
        vols[flat] = row.fields[3];
    }
    if rows.len() != volume {
        return Err(Error::Invariant(format!(
            "vols.csv must form a complete dense grid: {} rows cannot fill \
             {} expiries x {} tenors x {} offsets = {volume} points",
            rows.len(),
            expiries.len(),
            tenors.len(),
            offsets.len(),
        )));
    }
    VolCube::new(&expiries, &tenors, &offsets, &vols)
}

/// Total-ordering wrapper for the finite floats used as grid coordinates.
#[derive(PartialEq)]
struct OrderedF64(f64);

impl OrderedF64 {
    fn new(x: f64) -> Self {
        debug_assert!(x.is_finite());
        Self(x)
    }
}

impl Eq for OrderedF64 {}

impl PartialOrd for OrderedF64 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrderedF64 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.partial_cmp(&other.0).expect("finite coordinates")
    }
}

fn index_of(axis: &[f64], value: f64) -> usize {
    axis.partition_point(|&x| x < value)
}
