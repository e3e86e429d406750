//! Funding costs and self-default CVA for collateralized swaps.
//!
//! A collateralized at-the-money swap needs no funding today, but as rates
//! move one side posts collateral it must fund at its term unsecured rate
//! while earning overnight on the posted cash. The cost of that contingent
//! funding is a strip of swaption-style expectations weighted by the
//! funding-over-overnight (FOO) spread at each roll date; the matching
//! self-default CVA replaces the FOO weight with the loss-given-default
//! times the probability of defaulting inside each roll period, and is
//! therefore independent of the funding level.
//!
//! Side-to-optionality mapping: the fixed-rate payer posts collateral when
//! the swap has negative value to them, i.e. when the prevailing fair rate
//! `S` is below the strike `K`, so payer-side funding is driven by the
//! receiver-style part `(K - S)^+`; receiver-side funding uses `(S - K)^+`.
//!
//! Portfolio treatment: every result here is per swap and per unit
//! notional; portfolio-level numbers are plain sums of per-swap results (no
//! netting-set or collateral-agreement aggregation is modeled).

use rayon::prelude::*;

use crate::credit::{forward_cds_rate, CreditCurve, PremiumLegConvention};
use crate::curves::{annuity, fair_swap_rate, DiscountCurve, Side, SwapSpec};
use crate::error::{Error, Result};
use crate::volatility::{expected_positive_part, SmileMode, VolCube};

/// How a funding-over-overnight curve was constructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FundingSource {
    /// Forward basis between the coupon tenor curve and the overnight
    /// curve: funding at the tenor rate flat, earning overnight on
    /// collateral.
    Flat,
    /// Forward credit spread (from a credit curve) plus a forward scarcity
    /// spread supplied as data.
    Decomposed,
    /// A single constant spread at all horizons.
    ConstantAverage,
}

impl FundingSource {
    /// Stable lower-case label used in reports.
    pub fn label(self) -> &'static str {
        match self {
            FundingSource::Flat => "flat",
            FundingSource::Decomposed => "decomposed",
            FundingSource::ConstantAverage => "constant-average",
        }
    }
}

/// Term structure of the funding-over-overnight spread `FOO(0, T)` for one
/// roll tenor: piecewise-linear in `T` between points, flat beyond them.
#[derive(Debug, Clone)]
pub struct FundingCurve {
    /// `(time, spread)` points with strictly increasing times.
    points: Vec<(f64, f64)>,
    roll_tenor: f64,
    source: FundingSource,
}

impl FundingCurve {
    /// Builds a curve from explicit `(time, spread)` points.
    ///
    /// # Errors
    /// [`Error::Schedule`] for non-increasing times, [`Error::Input`] for
    /// an empty list, non-finite spreads, or a non-positive roll tenor.
    pub fn new(points: &[(f64, f64)], roll_tenor: f64, source: FundingSource) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Input(
                "a funding curve needs at least one point".into(),
            ));
        }
        if !(roll_tenor > 0.0) {
            return Err(Error::Input(format!(
                "roll tenor must be positive, got {roll_tenor}"
            )));
        }
        let mut prev = f64::NEG_INFINITY;
        for &(t, spread) in points {
            if !t.is_finite() || t < 0.0 || t <= prev {
                return Err(Error::Schedule(format!(
                    "funding curve times must be non-negative and strictly \
                     increasing; {t} follows {prev}"
                )));
            }
            if !spread.is_finite() {
                return Err(Error::Input(format!(
                    "non-finite funding spread {spread} at time {t}"
                )));
            }
            prev = t;
        }
        Ok(Self {
            points: points.to_vec(),
            roll_tenor,
            source,
        })
    }

    /// Constant spread at every horizon (e.g. a published long-run average).
    ///
    /// # Errors
    /// As [`FundingCurve::new`].
    pub fn constant_average(spread: f64, roll_tenor: f64) -> Result<Self> {
        Self::new(&[(0.0, spread)], roll_tenor, FundingSource::ConstantAverage)
    }

    /// Forward basis between a coupon-tenor projection curve and the
    /// overnight curve: at each roll date `t` the spread is
    /// `forward_tenor(t, t + tau) - forward_overnight(t, t + tau)`.
    /// Points are laid down on every roll date out to `horizon`, so queries
    /// at roll dates reproduce the basis exactly.
    ///
    /// # Errors
    /// [`Error::Input`] for a non-positive horizon or roll tenor.
    pub fn flat_basis(
        tenor_curve: &DiscountCurve,
        overnight_curve: &DiscountCurve,
        roll_tenor: f64,
        horizon: f64,
    ) -> Result<Self> {
        if !(horizon > 0.0) {
            return Err(Error::Input(format!(
                "funding horizon must be positive, got {horizon}"
            )));
        }
        if !(roll_tenor > 0.0) {
            return Err(Error::Input(format!(
                "roll tenor must be positive, got {roll_tenor}"
            )));
        }
        let mut points = Vec::new();
        let mut k = 0usize;
        loop {
            let t = k as f64 * roll_tenor;
            let basis = tenor_curve.forward_simple(t, t + roll_tenor)?
                - overnight_curve.forward_simple(t, t + roll_tenor)?;
            points.push((t, basis));
            if t >= horizon {
                break;
            }
            k += 1;
        }
        Self::new(&points, roll_tenor, FundingSource::Flat)
    }

    /// Forward funding spread decomposed into a forward credit spread plus
    /// a forward scarcity spread: at each roll date `t` the spread is the
    /// forward par CDS rate over `(t, t + tau]` (quarterly premiums,
    /// survival-weighted accruals) plus the scarcity spread interpolated
    /// from `scarcity_points` (piecewise-linear, flat beyond the ends; an
    /// empty list means zero scarcity).
    ///
    /// # Errors
    /// As [`FundingCurve::new`] and [`forward_cds_rate`].
    pub fn decomposed(
        credit: &CreditCurve,
        disc: &DiscountCurve,
        scarcity_points: &[(f64, f64)],
        roll_tenor: f64,
        horizon: f64,
    ) -> Result<Self> {
        if !(horizon > 0.0) {
            return Err(Error::Input(format!(
                "funding horizon must be positive, got {horizon}"
            )));
        }
        if !(roll_tenor > 0.0) {
            return Err(Error::Input(format!(
                "roll tenor must be positive, got {roll_tenor}"
            )));
        }
        let scarcity = if scarcity_points.is_empty() {
            None
        } else {
            Some(PiecewiseLinear::new(scarcity_points)?)
        };
        let mut points = Vec::new();
        let mut k = 0usize;
        loop {
            let t = k as f64 * roll_tenor;
            let credit_part = forward_cds_rate(
                credit,
                disc,
                t,
                t + roll_tenor,
                4,
                PremiumLegConvention::Undiscounted,
            )?;
            let scarcity_part = scarcity.as_ref().map_or(0.0, |s| s.value(t));
            points.push((t, credit_part + scarcity_part));
            if t >= horizon {
                break;
            }
            k += 1;
        }
        Self::new(&points, roll_tenor, FundingSource::Decomposed)
    }

    /// Funding-over-overnight spread at `t`, piecewise-linear between the
    /// stored points and flat beyond them.
    pub fn foo(&self, t: f64) -> f64 {
        let n = self.points.len();
        if t <= self.points[0].0 || n == 1 {
            return self.points[0].1;
        }
        if t >= self.points[n - 1].0 {
            return self.points[n - 1].1;
        }
        let hi = self.points.partition_point(|&(pt, _)| pt <= t);
        let (t0, v0) = self.points[hi - 1];
        let (t1, v1) = self.points[hi];
        v0 + (t - t0) / (t1 - t0) * (v1 - v0)
    }

    /// Roll tenor the spreads refer to.
    pub fn roll_tenor(&self) -> f64 {
        self.roll_tenor
    }

    /// Construction mode.
    pub fn source(&self) -> FundingSource {
        self.source
    }

    /// The stored `(time, spread)` points.
    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }
}

/// Piecewise-linear interpolation with flat extrapolation; used for input
/// spread curves supplied as data.
#[derive(Debug, Clone)]
struct PiecewiseLinear {
    points: Vec<(f64, f64)>,
}

impl PiecewiseLinear {
    fn new(points: &[(f64, f64)]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Input("interpolation needs at least one point".into()));
        }
        let mut prev = f64::NEG_INFINITY;
        for &(t, v) in points {
            if !t.is_finite() || t <= prev {
                return Err(Error::Schedule(format!(
                    "interpolation times must be strictly increasing; {t} follows {prev}"
                )));
            }
            if !v.is_finite() {
                return Err(Error::Input(format!("non-finite value {v} at time {t}")));
            }
            prev = t;
        }
        Ok(Self {
            points: points.to_vec(),
        })
    }

    fn value(&self, t: f64) -> f64 {
        let n = self.points.len();
        if t <= self.points[0].0 || n == 1 {
            return self.points[0].1;
        }
        if t >= self.points[n - 1].0 {
            return self.points[n - 1].1;
        }
        let hi = self.points.partition_point(|&(pt, _)| pt <= t);
        let (t0, v0) = self.points[hi - 1];
        let (t1, v1) = self.points[hi];
        v0 + (t - t0) / (t1 - t0) * (v1 - v0)
    }
}

/// A funding spread split into its credit and scarcity components, built so
/// that `funding_spread = credit_spread + scarcity_spread` holds exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScarcityDecomposition {
    /// Term funding spread over overnight (deposit or coupon-tenor rate
    /// minus the overnight rate).
    pub funding_spread: f64,
    /// Median CDS spread of the reference banks.
    pub credit_spread: f64,
    /// Residual: `funding_spread - credit_spread`; may be negative.
    pub scarcity_spread: f64,
}

/// Splits a term funding spread into credit and scarcity components.
///
/// # Arguments
/// * `deposit_rate` - Term unsecured rate for the roll tenor.
/// * `overnight_rate` - Overnight index rate for the same period.
/// * `median_bank_cds` - Median CDS spread of the reference banks, e.g.
///   from [`median_bank_cds`].
pub fn scarcity_spread(
    deposit_rate: f64,
    overnight_rate: f64,
    median_bank_cds: f64,
) -> ScarcityDecomposition {
    let funding_spread = deposit_rate - overnight_rate;
    ScarcityDecomposition {
        funding_spread,
        credit_spread: median_bank_cds,
        scarcity_spread: funding_spread - median_bank_cds,
    }
}

/// Median of the `n_best` smallest spreads in the panel; an even count
/// takes the mean of the middle pair.
///
/// # Errors
/// [`Error::Input`] for an empty panel, `n_best` of zero, or `n_best`
/// exceeding the panel size.
pub fn median_bank_cds(spreads: &[f64], n_best: usize) -> Result<f64> {
    if spreads.is_empty() {
        return Err(Error::Input("bank CDS panel must not be empty".into()));
    }
    if n_best == 0 || n_best > spreads.len() {
        return Err(Error::Input(format!(
            "n_best must lie in [1, {}], got {n_best}",
            spreads.len()
        )));
    }
    for &s in spreads {
        if !s.is_finite() {
            return Err(Error::Input(format!("non-finite CDS spread {s}")));
        }
    }
    let mut sorted = spreads.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite spreads"));
    let best = &sorted[..n_best];
    Ok(if n_best % 2 == 1 {
        best[n_best / 2]
    } else {
        0.5 * (best[n_best / 2 - 1] + best[n_best / 2])
    })
}

/// Per-roll exposure of an at-the-money-struck swap: discounted residual
/// annuity and the expected positive part of the side-mapped optionality.
fn roll_exposures(
    spec: &SwapSpec,
    fwd: &DiscountCurve,
    disc: &DiscountCurve,
    cube: &VolCube,
    side: Side,
    smile: SmileMode,
) -> Result<Vec<(f64, f64, f64)>> {
    // The posting side holds the opposite optionality: a payer funds when
    // the fair rate is below the strike, i.e. on the (K - S)^+ part.
    let option_side = side.opposite();
    let strike = spec.fixed_rate;
    let rolls = spec.roll_dates();
    let mut out = Vec::with_capacity(rolls.len());
    for t_alpha in rolls {
        let residual_annuity = annuity(disc, spec, t_alpha)?;
        let fair = fair_swap_rate(fwd, disc, spec, t_alpha)?;
        let offset = match smile {
            SmileMode::Smile => strike - fair,
            SmileMode::AtmOnly => 0.0,
        };
        let vol = cube.vol(t_alpha, spec.maturity - t_alpha, offset)?;
        let epp = expected_positive_part(fair, strike, vol, t_alpha, option_side)?;
        out.push((t_alpha, residual_annuity, epp));
    }
    Ok(out)
}

/// Expected cost, per unit notional, of funding the collateral a swap side
/// may have to post over its life: the sum over roll dates of
/// `tau * annuity(residual) * FOO(roll) * expected positive part`.
///
/// The strike is taken from `spec.fixed_rate`; the approximation assumes
/// the swap was struck at market, and callers should compare the strike to
/// the inception fair rate when using it on seasoned trades.
///
/// # Arguments
/// * `spec` - Swap schedule and strike.
/// * `fwd` - Projection curve for the floating leg.
/// * `disc` - Discount curve (collateralized, overnight-based).
/// * `cube` - Swaption volatilities.
/// * `funding` - Funding-over-overnight spread curve.
/// * `side` - Which side's funding cost (see the module-level mapping).
/// * `smile` - Whether to use strike-offset or at-the-money volatilities.
///
/// # Errors
/// Propagates curve, volatility, and schedule errors from the pieces.
pub fn swap_funding_cost(
    spec: &SwapSpec,
    fwd: &DiscountCurve,
    disc: &DiscountCurve,
    cube: &VolCube,
    funding: &FundingCurve,
    side: Side,
    smile: SmileMode,
) -> Result<f64> {
    let mut total = 0.0;
    for (t_alpha, residual_annuity, epp) in roll_exposures(spec, fwd, disc, cube, side, smile)? {
        total += spec.float_tenor * residual_annuity * funding.foo(t_alpha) * epp;
    }
    Ok(total)
}

/// Self-default CVA on the contingent funding legs, per unit notional: the
/// funding drawn at a roll is not repaid if the firm defaults before the
/// next roll, so each term weighs the exposure by `LGD * (Q(T_alpha) -
/// Q(T_alpha + tau))`. The funding spread itself does not enter, so the
/// result is independent of the [`FundingCurve`].
///
/// # Errors
/// As [`swap_funding_cost`].
pub fn swap_funding_cva(
    spec: &SwapSpec,
    fwd: &DiscountCurve,
    disc: &DiscountCurve,
    cube: &VolCube,
    credit: &CreditCurve,
    side: Side,
    smile: SmileMode,
) -> Result<f64> {
    let lgd = credit.lgd();
    let mut total = 0.0;
    for (t_alpha, residual_annuity, epp) in roll_exposures(spec, fwd, disc, cube, side, smile)? {
        let dq = credit.default_in_interval(t_alpha, t_alpha + spec.float_tenor)?;
        total += lgd * dq * residual_annuity * epp;
    }
    Ok(total)
}

/// Everything needed to price funding costs under one market snapshot.
#[derive(Debug, Clone, Copy)]
pub struct FundingMarket<'a> {
    /// Floating-leg projection curve.
    pub fwd: &'a DiscountCurve,
    /// Overnight discount curve.
    pub disc: &'a DiscountCurve,
    /// Swaption volatilities.
    pub cube: &'a VolCube,
    /// The firm's own credit curve.
    pub credit: &'a CreditCurve,
    /// Funding-over-overnight spreads.
    pub funding: &'a FundingCurve,
}

/// One line of a two-snapshot funding comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundingReportRow {
    /// Swap maturity in years.
    pub maturity: f64,
    /// Swap side the numbers refer to.
    pub side: Side,
    /// Funding cost under the first snapshot, per unit notional.
    pub old_funding_cost: f64,
    /// Funding cost under the second snapshot.
    pub new_funding_cost: f64,
    /// `new - old` funding cost.
    pub funding_cost_change: f64,
    /// Self-default funding CVA under the first snapshot.
    pub old_funding_cva: f64,
    /// Self-default funding CVA under the second snapshot.
    pub new_funding_cva: f64,
    /// `new - old` funding CVA.
    pub funding_cva_change: f64,
}

/// Sweeps spot at-the-money swaps over `maturities` under two snapshots and
/// reports funding cost and funding CVA per side with their changes. Each
/// snapshot prices its own at-the-money strike (the spot market trade of
/// that date). Maturities are processed in parallel; the output order is
/// maturity-major, payer before receiver.
///
/// # Errors
/// [`Error::Input`] for an empty maturity list; otherwise propagated from
/// the pricers (e.g. maturities that are not whole multiples of the roll
/// tenor).
pub fn funding_report(
    maturities: &[f64],
    roll_tenor: f64,
    old: &FundingMarket<'_>,
    new: &FundingMarket<'_>,
    smile: SmileMode,
) -> Result<Vec<FundingReportRow>> {
    if maturities.is_empty() {
        return Err(Error::Input("maturity sweep must not be empty".into()));
    }
    let per_maturity: Result<Vec<Vec<FundingReportRow>>> = maturities
        .par_iter()
        .map(|&maturity| {
            let mut rows = Vec::with_capacity(2);
            let probe = SwapSpec::new(0.0, maturity, 0.0, roll_tenor, Side::Payer, 1.0)?;
            let old_spec = SwapSpec {
                fixed_rate: fair_swap_rate(old.fwd, old.disc, &probe, 0.0)?,
                ..probe.clone()
            };
            let new_spec = SwapSpec {
                fixed_rate: fair_swap_rate(new.fwd, new.disc, &probe, 0.0)?,
                ..probe
            };
            for side in [Side::Payer, Side::Receiver] {
                let old_cost = swap_funding_cost(
                    &old_spec, old.fwd, old.disc, old.cube, old.funding, side, smile,
                )?;
                let new_cost = swap_funding_cost(
                    &new_spec, new.fwd, new.disc, new.cube, new.funding, side, smile,
                )?;
                let old_cva = swap_funding_cva(
                    &old_spec, old.fwd, old.disc, old.cube, old.credit, side, smile,
                )?;
                let new_cva = swap_funding_cva(
                    &new_spec, new.fwd, new.disc, new.cube, new.credit, side, smile,
                )?;
                rows.push(FundingReportRow {
                    maturity,
                    side,
                    old_funding_cost: old_cost,
                    new_funding_cost: new_cost,
                    funding_cost_change: new_cost - old_cost,
                    old_funding_cva: old_cva,
                    new_funding_cva: new_cva,
                    funding_cva_change: new_cva - old_cva,
                });
            }
            Ok(rows)
        })
        .collect();
    Ok(per_maturity?.into_iter().flatten().collect())
}
