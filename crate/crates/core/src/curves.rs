//! Discount curves, swap schedules, annuities, and fair swap rates.
//!
//! Curves are built from zero-rate or discount-factor pillars, interpolate
//! log-linearly in the discount factor (equivalently: piecewise-constant
//! instantaneous forward rates), and extrapolate beyond the last pillar at
//! a flat continuously-compounded zero rate. All times are ACT/365F year
//! fractions from the valuation date; schedules never see calendar dates.

use chrono::NaiveDate;

use crate::error::{Error, Result};

/// Tolerance used when matching schedule dates expressed as year fractions.
const SCHEDULE_EPS: f64 = 1e-9;

/// Direction of a trade or option leg: which side of fixed-versus-floating
/// (or call-versus-put optionality) is held.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// Pays fixed / holds call-style optionality on the rate.
    Payer,
    /// Receives fixed / holds put-style optionality on the rate.
    Receiver,
}

impl Side {
    /// The other side.
    pub fn opposite(self) -> Side {
        match self {
            Side::Payer => Side::Receiver,
            Side::Receiver => Side::Payer,
        }
    }

    /// Lower-case label used in report output.
    pub fn label(self) -> &'static str {
        match self {
            Side::Payer => "payer",
            Side::Receiver => "receiver",
        }
    }
}

/// A discount curve: strictly increasing pillar times with positive discount
/// factors, log-linear interpolation, flat zero-rate extrapolation, and an
/// implicit (0, 1) pillar.
#[derive(Debug, Clone)]
pub struct DiscountCurve {
    curve_id: String,
    valuation_date: Option<NaiveDate>,
    /// Pillar times, starting with 0.0.
    times: Vec<f64>,
    /// log discount factors at `times`, starting with 0.0.
    log_dfs: Vec<f64>,
}

impl DiscountCurve {
    /// Builds a curve from `(time, zero_rate)` pillars with continuously
    /// compounded zero rates, so `df(t) = exp(-rate * t)` at each pillar.
    ///
    /// # Arguments
    /// * `curve_id` - Label such as `"EUR-6M"` or `"EONIA"`.
    /// * `pillars` - Strictly increasing times (first > 0) with finite rates.
    ///
    /// # Errors
    /// [`Error::Schedule`] for non-increasing times, [`Error::Input`] for
    /// non-finite rates or an empty pillar list.
    pub fn from_zero_rates(curve_id: impl Into<String>, pillars: &[(f64, f64)]) -> Result<Self> {
        let log_df_pillars: Vec<(f64, f64)> = pillars
            .iter()
            .map(|&(t, rate)| (t, -rate * t))
            .collect();
        Self::from_log_dfs(curve_id.into(), &log_df_pillars, pillars)
    }

    /// Builds a curve from `(time, discount_factor)` pillars.
    ///
    /// # Errors
    /// As [`DiscountCurve::from_zero_rates`], plus [`Error::Invariant`] for
    /// non-positive discount factors.
    pub fn from_discount_factors(
        curve_id: impl Into<String>,
        pillars: &[(f64, f64)],
    ) -> Result<Self> {
        for &(t, df) in pillars {
            if !(df > 0.0) {
                return Err(Error::Invariant(format!(
                    "all discount factors must be strictly positive; got {df} at t = {t}"
                )));
            }
        }
        let log_df_pillars: Vec<(f64, f64)> =
            pillars.iter().map(|&(t, df)| (t, df.ln())).collect();
        Self::from_log_dfs(curve_id.into(), &log_df_pillars, pillars)
    }

    /// Flat curve at a single continuously compounded zero rate.
    pub fn flat(curve_id: impl Into<String>, rate: f64) -> Result<Self> {
        Self::from_zero_rates(curve_id, &[(1.0, rate)])
    }

    fn from_log_dfs(
        curve_id: String,
        log_df_pillars: &[(f64, f64)],
        raw: &[(f64, f64)],
    ) -> Result<Self> {
        if log_df_pillars.is_empty() {
            return Err(Error::Input("a curve needs at least one pillar".into()));
        }
        let mut times = Vec::with_capacity(log_df_pillars.len() + 1);
        let mut log_dfs = Vec::with_capacity(log_df_pillars.len() + 1);
        times.push(0.0);
        log_dfs.push(0.0);
        let mut prev = 0.0;
        for (&(t, log_df), &(_, value)) in log_df_pillars.iter().zip(raw) {
            if !value.is_finite() {
                return Err(Error::Input(format!(
                    "non-finite pillar value {value} at t = {t}"
                )));
            }
            if !(t > prev) {
                return Err(Error::Schedule(format!(
                    "pillar times must be strictly increasing and positive; {t} follows {prev}"
                )));
            }
            times.push(t);
            log_dfs.push(log_df);
            prev = t;
        }
        Ok(Self {
            curve_id,
            valuation_date: None,
            times,
            log_dfs,
        })
    }

    /// Attaches the valuation date the year fractions are measured from.
    pub fn with_valuation_date(mut self, date: NaiveDate) -> Self {
        self.valuation_date = Some(date);
        self
    }

    /// Curve label.
    pub fn curve_id(&self) -> &str {
        &self.curve_id
    }

    /// Valuation date, when one was supplied at ingestion.
    pub fn valuation_date(&self) -> Option<NaiveDate> {
        self.valuation_date
    }

    /// Pillar times including the implicit origin; used to place integration
    /// breakpoints where the instantaneous forward rate may jump.
    pub(crate) fn knot_times(&self) -> &[f64] {
        &self.times
    }

    /// Pillar `(time, discount_factor)` pairs, excluding the implicit origin.
    pub fn pillars(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.times
            .iter()
            .zip(&self.log_dfs)
            .skip(1)
            .map(|(&t, &l)| (t, l.exp()))
    }

    /// Discount factor from the valuation date to `t`.
    ///
    /// # Errors
    /// [`Error::Domain`] for negative `t`.
    pub fn discount(&self, t: f64) -> Result<f64> {
        if t < 0.0 {
            return Err(Error::Domain(format!(
                "discount factor requested at negative time {t}"
            )));
        }
        Ok(self.df_nonneg(t))
    }

    /// Discount factor for a time already known to be non-negative
    /// (schedule-derived); hot path used by pricing loops.
    pub(crate) fn df_nonneg(&self, t: f64) -> f64 {
        debug_assert!(t >= 0.0);
        self.log_df(t).exp()
    }

    fn log_df(&self, t: f64) -> f64 {
        let last = *self.times.last().expect("curve has pillars");
        if t >= last {
            // Flat continuously-compounded zero rate beyond the last pillar.
            let last_log = *self.log_dfs.last().expect("curve has pillars");
            return last_log / last * t;
        }
        // partition_point: first index with times[idx] > t; t < last so idx
        // is in [1, len-1] and brackets [idx-1, idx].
        let idx = self.times.partition_point(|&pt| pt <= t);
        let (t0, t1) = (self.times[idx - 1], self.times[idx]);
        let (l0, l1) = (self.log_dfs[idx - 1], self.log_dfs[idx]);
        let w = (t - t0) / (t1 - t0);
        l0 + w * (l1 - l0)
    }

    /// Continuously compounded zero rate at `t` (limit value at `t = 0`).
    ///
    /// # Errors
    /// [`Error::Domain`] for negative `t`.
    pub fn zero_rate(&self, t: f64) -> Result<f64> {
        if t < 0.0 {
            return Err(Error::Domain(format!(
                "zero rate requested at negative time {t}"
            )));
        }
        if t == 0.0 {
            // Limit of -ln(df)/t as t -> 0 equals the first segment's rate.
            let t1 = self.times.get(1).copied().unwrap_or(1.0);
            return Ok(-self.log_df(t1) / t1);
        }
        Ok(-self.log_df(t) / t)
    }

    /// Simply compounded forward rate over `[t1, t2]`:
    /// `(df(t1)/df(t2) - 1) / (t2 - t1)`.
    ///
    /// # Errors
    /// [`Error::Domain`] unless `0 <= t1 < t2`.
    pub fn forward_simple(&self, t1: f64, t2: f64) -> Result<f64> {
        if t1 < 0.0 || t2 <= t1 {
            return Err(Error::Domain(format!(
                "forward rate needs 0 <= t1 < t2, got [{t1}, {t2}]"
            )));
        }
        Ok((self.df_nonneg(t1) / self.df_nonneg(t2) - 1.0) / (t2 - t1))
    }
}

/// A collateralized vanilla swap with a regular schedule: the fixed leg pays
/// `fixed_rate` with accrual `float_tenor`, the floating leg pays the tenor
/// forward over the same periods, and collateral/funding rolls on the coupon
/// dates.
#[derive(Debug, Clone)]
pub struct SwapSpec {
    /// First accrual start, as a year fraction from valuation.
    pub start: f64,
    /// Final maturity.
    pub maturity: f64,
    /// Fixed rate K.
    pub fixed_rate: f64,
    /// Coupon interval (and funding roll interval), in years.
    pub float_tenor: f64,
    /// Which side of the swap the holder is on.
    pub direction: Side,
    /// Notional in currency units.
    pub notional: f64,
}

impl SwapSpec {
    /// Validates and builds a swap description.
    ///
    /// # Errors
    /// [`Error::Schedule`] unless `start < maturity`, `float_tenor > 0`, and
    /// `(maturity - start) / float_tenor` is a positive whole number;
    /// [`Error::Input`] for non-finite rate or non-positive notional.
    pub fn new(
        start: f64,
        maturity: f64,
        fixed_rate: f64,
        float_tenor: f64,
        direction: Side,
        notional: f64,
    ) -> Result<Self> {
        if !(start >= 0.0 && maturity > start) {
            return Err(Error::Schedule(format!(
                "swap needs 0 <= start < maturity, got start = {start}, maturity = {maturity}"
            )));
        }
        if !(float_tenor > 0.0) {
            return Err(Error::Schedule(format!(
                "float tenor must be positive, got {float_tenor}"
            )));
        }
        let periods = (maturity - start) / float_tenor;
        let rounded = periods.round();
        if rounded < 1.0 || (periods - rounded).abs() > SCHEDULE_EPS {
            return Err(Error::Schedule(format!(
                "(maturity - start) / tenor must be a positive whole number of periods, \
                 got {periods}"
            )));
        }
        if !fixed_rate.is_finite() {
            return Err(Error::Input(format!("non-finite fixed rate {fixed_rate}")));
        }
        if !(notional > 0.0) {
            return Err(Error::Input(format!(
                "notional must be positive, got {notional}"
            )));
        }
        Ok(Self {
            start,
            maturity,
            fixed_rate,
            float_tenor,
            direction,
            notional,
        })
    }

    /// Number of coupon periods.
    pub fn n_periods(&self) -> usize {
        ((self.maturity - self.start) / self.float_tenor).round() as usize
    }

    /// Start of the i-th period (0-based).
    pub fn period_start(&self, i: usize) -> f64 {
        self.start + i as f64 * self.float_tenor
    }

    /// End of the i-th period (0-based).
    pub fn period_end(&self, i: usize) -> f64 {
        self.start + (i + 1) as f64 * self.float_tenor
    }

    /// Funding/collateral roll dates: every coupon date after the first
    /// accrual start and strictly before maturity, i.e.
    /// `{start + tenor, start + 2*tenor, ..., maturity - tenor}`.
    pub fn roll_dates(&self) -> Vec<f64> {
        (1..self.n_periods()).map(|i| self.period_start(i)).collect()
    }
}

/// Present value of the remaining fixed-leg accruals per unit rate and unit
/// notional: `sum of tenor * df(period_end)` over periods whose accrual
/// starts at or after `as_of`, discounted from the valuation date.
///
/// # Arguments
/// * `disc` - Discounting curve.
/// * `spec` - Swap schedule.
/// * `as_of` - Cutoff: periods starting before this are excluded.
///
/// # Errors
/// [`Error::Schedule`] if no accrual period remains.
pub fn annuity(disc: &DiscountCurve, spec: &SwapSpec, as_of: f64) -> Result<f64> {
    let mut total = 0.0;
    let mut any = false;
    for i in 0..spec.n_periods() {
        if spec.period_start(i) >= as_of - SCHEDULE_EPS {
            total += spec.float_tenor * disc.df_nonneg(spec.period_end(i));
            any = true;
        }
    }
    if !any {
        return Err(Error::Schedule(format!(
            "no accrual period starts at or after as_of = {as_of} \
             (last period starts at {})",
            spec.period_start(spec.n_periods() - 1)
        )));
    }
    Ok(total)
}

/// Fair (par) swap rate for the periods starting at or after `as_of` under
/// dual-curve pricing: floating-leg forwards projected from `fwd_curve`,
/// both legs discounted on `disc_curve`. With `fwd_curve == disc_curve`
/// the value telescopes to `(df(first start) - df(maturity)) / annuity`.
///
/// # Errors
/// [`Error::Schedule`] if no period remains.
pub fn fair_swap_rate(
    fwd_curve: &DiscountCurve,
    disc_curve: &DiscountCurve,
    spec: &SwapSpec,
    as_of: f64,
) -> Result<f64> {
    let mut float_pv = 0.0;
    let mut annuity_pv = 0.0;
    let mut any = false;
    for i in 0..spec.n_periods() {
        let t0 = spec.period_start(i);
        if t0 < as_of - SCHEDULE_EPS {
            continue;
        }
        let t1 = spec.period_end(i);
        let fwd = fwd_curve.forward_simple(t0, t1)?;
        let df = disc_curve.df_nonneg(t1);
        float_pv += spec.float_tenor * fwd * df;
        annuity_pv += spec.float_tenor * df;
        any = true;
    }
    if !any {
        return Err(Error::Schedule(format!(
            "no accrual period starts at or after as_of = {as_of}"
        )));
    }
    Ok(float_pv / annuity_pv)
}
