//! Credit curves bootstrapped from CDS quotes.
//!
//! Hazard rates are piecewise constant between quote maturities. The
//! bootstrap solves one hazard segment per quote, pricing the premium leg on
//! a quarterly schedule with mid-period accrual-on-default and the
//! protection leg with a piecewise closed form that is exact under
//! piecewise-constant hazards and piecewise-constant instantaneous forward
//! rates (which is what log-linear discount interpolation gives).

use crate::curves::DiscountCurve;
use crate::error::{Error, Result};
use crate::math::bisect;

/// Matching tolerance for schedule arithmetic on year fractions.
const SCHEDULE_EPS: f64 = 1e-9;

/// Bisection bracket and tolerance for the per-segment hazard solve.
const HAZARD_MAX: f64 = 10.0;
const HAZARD_TOL: f64 = 1e-12;

/// Leg-value tolerance below which a root objective counts as exactly zero.
const LEG_TINY: f64 = 1e-12;

/// How the premium leg of a forward CDS is accrued.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PremiumLegConvention {
    /// Premium accruals weighted by survival only: `sum tau * Q(T_i)`.
    /// This is the flat-numeraire approximation used by the headline
    /// forward-rate formula.
    #[default]
    Undiscounted,
    /// Premium accruals weighted by survival and discount:
    /// `sum tau * df(T_i) * Q(T_i)`.
    Discounted,
}

/// A par CDS quote: maturity in years and running spread as a decimal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CdsQuote {
    /// Contract maturity in years.
    pub maturity: f64,
    /// Par running spread as a decimal (196 bp = 0.0196).
    pub spread: f64,
}

/// A strictly-increasing strip of par CDS quotes sharing one recovery
/// assumption and premium payment frequency.
#[derive(Debug, Clone)]
pub struct CdsQuoteSet {
    quotes: Vec<CdsQuote>,
    recovery: f64,
    premium_frequency: u32,
}

impl CdsQuoteSet {
    /// Builds a quote set with quarterly premiums.
    ///
    /// # Arguments
    /// * `quotes` - `(maturity, spread)` pairs, maturities strictly
    ///   increasing and positive, spreads finite and non-negative.
    /// * `recovery` - Assumed recovery rate in `[0, 1]`.
    ///
    /// # Errors
    /// [`Error::Input`] or [`Error::Schedule`] when the inputs violate the
    /// constraints above.
    pub fn new(quotes: &[(f64, f64)], recovery: f64) -> Result<Self> {
        if quotes.is_empty() {
            return Err(Error::Input("at least one CDS quote is required".into()));
        }
        if !(0.0..=1.0).contains(&recovery) {
            return Err(Error::Input(format!(
                "recovery must lie in [0, 1], got {recovery}"
            )));
        }
        let mut prev = 0.0;
        let mut parsed = Vec::with_capacity(quotes.len());
        for &(maturity, spread) in quotes {
            if !(maturity > prev) {
                return Err(Error::Schedule(format!(
                    "CDS maturities must be strictly increasing and positive; \
                     {maturity} follows {prev}"
                )));
            }
            if !spread.is_finite() || spread < 0.0 {
                return Err(Error::Input(format!(
                    "CDS spread at maturity {maturity} must be finite and \
                     non-negative, got {spread}"
                )));
            }
            parsed.push(CdsQuote { maturity, spread });
            prev = maturity;
        }
        Ok(Self {
            quotes: parsed,
            recovery,
            premium_frequency: 4,
        })
    }

    /// Overrides the premium payment frequency (payments per year).
    ///
    /// # Errors
    /// [`Error::Input`] for a zero frequency.
    pub fn with_premium_frequency(mut self, premium_frequency: u32) -> Result<Self> {
        if premium_frequency == 0 {
            return Err(Error::Input("premium frequency must be at least 1".into()));
        }
        self.premium_frequency = premium_frequency;
        Ok(self)
    }

    /// The quotes, in maturity order.
    pub fn quotes(&self) -> &[CdsQuote] {
        &self.quotes
    }

    /// Assumed recovery rate.
    pub fn recovery(&self) -> f64 {
        self.recovery
    }

    /// Premium payments per year.
    pub fn premium_frequency(&self) -> u32 {
        self.premium_frequency
    }
}

/// A piecewise-constant hazard-rate curve: hazard `h_i` applies on the
/// interval `(t_{i-1}, t_i]` and the last segment extends flat beyond its
/// end.
#[derive(Debug, Clone)]
pub struct CreditCurve {
    /// Segment end times, strictly increasing and positive.
    times: Vec<f64>,
    /// Hazard on the segment ending at the matching entry of `times`.
    hazards: Vec<f64>,
    /// Cumulative hazard at each segment end.
    cum_at_ends: Vec<f64>,
    recovery: f64,
}

impl CreditCurve {
    /// Builds a curve directly from `(segment_end, hazard)` pairs.
    ///
    /// # Errors
    /// [`Error::Schedule`] for non-increasing segment ends, [`Error::Input`]
    /// for negative or non-finite hazards or a recovery outside `[0, 1]`.
    pub fn from_hazards(segments: &[(f64, f64)], recovery: f64) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::Input(
                "a credit curve needs at least one hazard segment".into(),
            ));
        }
        if !(0.0..=1.0).contains(&recovery) {
            return Err(Error::Input(format!(
                "recovery must lie in [0, 1], got {recovery}"
            )));
        }
        let mut times = Vec::with_capacity(segments.len());
        let mut hazards = Vec::with_capacity(segments.len());
        let mut cum_at_ends = Vec::with_capacity(segments.len());
        let mut prev = 0.0;
        let mut cum = 0.0;
        for &(end, hazard) in segments {
            if !(end > prev) {
                return Err(Error::Schedule(format!(
                    "hazard segment ends must be strictly increasing and \
                     positive; {end} follows {prev}"
                )));
            }
            if !hazard.is_finite() || hazard < 0.0 {
                return Err(Error::Input(format!(
                    "hazard on segment ending at {end} must be finite and \
                     non-negative, got {hazard}"
                )));
            }
            cum += hazard * (end - prev);
            times.push(end);
            hazards.push(hazard);
            cum_at_ends.push(cum);
            prev = end;
        }
        Ok(Self {
            times,
            hazards,
            cum_at_ends,
            recovery,
        })
    }

    /// Assumed recovery rate.
    pub fn recovery(&self) -> f64 {
        self.recovery
    }

    /// Loss given default, `1 - recovery`.
    pub fn lgd(&self) -> f64 {
        1.0 - self.recovery
    }

    /// `(segment_end, hazard)` pairs in time order.
    pub fn knots(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.times.iter().copied().zip(self.hazards.iter().copied())
    }

    /// Instantaneous hazard at `t` (left-continuous segments:
    /// the hazard on `(t_{i-1}, t_i]` applies at `t_i`).
    pub fn hazard_at(&self, t: f64) -> f64 {
        let idx = self.times.partition_point(|&end| end < t);
        self.hazards[idx.min(self.hazards.len() - 1)]
    }

    /// Integrated hazard from 0 to `t` (zero for `t <= 0`).
    pub fn cumulative_hazard(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        let idx = self.times.partition_point(|&end| end < t);
        if idx == self.times.len() {
            let last = self.times.len() - 1;
            return self.cum_at_ends[last] + self.hazards[last] * (t - self.times[last]);
        }
        let (base, seg_start) = if idx == 0 {
            (0.0, 0.0)
        } else {
            (self.cum_at_ends[idx - 1], self.times[idx - 1])
        };
        base + self.hazards[idx] * (t - seg_start)
    }

    /// Survival probability to `t`.
    ///
    /// # Errors
    /// [`Error::Domain`] for negative `t`.
    pub fn survival(&self, t: f64) -> Result<f64> {
        if t < 0.0 {
            return Err(Error::Domain(format!(
                "survival probability requested at negative time {t}"
            )));
        }
        Ok(self.survival_nonneg(t))
    }

    /// Hot-path survival for schedule-derived non-negative times.
    pub(crate) fn survival_nonneg(&self, t: f64) -> f64 {
        debug_assert!(t >= 0.0);
        (-self.cumulative_hazard(t)).exp()
    }

    /// Probability of default inside `(t1, t2]`: `Q(t1) - Q(t2)`.
    ///
    /// # Errors
    /// [`Error::Domain`] unless `0 <= t1 <= t2`.
    pub fn default_in_interval(&self, t1: f64, t2: f64) -> Result<f64> {
        if t1 < 0.0 || t2 < t1 {
            return Err(Error::Domain(format!(
                "default probability needs 0 <= t1 <= t2, got [{t1}, {t2}]"
            )));
        }
        Ok(self.survival_nonneg(t1) - self.survival_nonneg(t2))
    }
}

/// Protection leg value over `(t1, t2]` per unit notional:
/// `LGD * integral of df(u) d(default probability)`.
///
/// The integral is evaluated segment by segment between the union of hazard
/// knots and discount pillars, where both the hazard and the instantaneous
/// forward rate are constant, so each piece has the closed form
/// `df(a) * Q(a) * lambda / (lambda + f) * (1 - exp(-(lambda + f) * (b - a)))`.
///
/// # Errors
/// [`Error::Domain`] unless `0 <= t1 <= t2`.
pub fn protection_leg(
    credit: &CreditCurve,
    disc: &DiscountCurve,
    t1: f64,
    t2: f64,
) -> Result<f64> {
    if t1 < 0.0 || t2 < t1 {
        return Err(Error::Domain(format!(
            "protection leg needs 0 <= t1 <= t2, got [{t1}, {t2}]"
        )));
    }
    Ok(credit.lgd() * default_density_integral(credit, disc, t1, t2))
}

/// `integral over (t1, t2] of df(u) * hazard(u) * Q(u) du`, exact for
/// piecewise-constant hazards and forwards.
fn default_density_integral(
    credit: &CreditCurve,
    disc: &DiscountCurve,
    t1: f64,
    t2: f64,
) -> f64 {
    if t2 <= t1 {
        return 0.0;
    }
    let mut points = vec![t1, t2];
    for (end, _) in credit.knots() {
        if end > t1 && end < t2 {
            points.push(end);
        }
    }
    for &pillar in disc.knot_times() {
        if pillar > t1 && pillar < t2 {
            points.push(pillar);
        }
    }
    points.sort_by(|a, b| a.partial_cmp(b).expect("finite times"));
    points.dedup_by(|a, b| (*a - *b).abs() <= f64::EPSILON * t2.max(1.0));

    let mut total = 0.0;
    for pair in points.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let dt = b - a;
        if dt <= 0.0 {
            continue;
        }
        let lambda = credit.hazard_at(0.5 * (a + b));
        let df_a = disc.df_nonneg(a);
        let df_b = disc.df_nonneg(b);
        let fwd = (df_a / df_b).ln() / dt;
        let q_a = credit.survival_nonneg(a);
        let s = lambda + fwd;
        total += if s.abs() < 1e-14 {
            df_a * q_a * lambda * dt
        } else {
            df_a * q_a * lambda / s * (1.0 - (-s * dt).exp())
        };
    }
    total
}

/// Premium leg value per unit running spread for a spot CDS of `maturity`
/// years: `sum tau * df(T_i) * Q(T_i)` plus mid-period accrual on default
/// `0.5 * tau * df(T_mid) * (Q(T_{i-1}) - Q(T_i))` over an equal-period
/// schedule of `round(maturity * frequency)` payments.
fn premium_leg_per_unit(
    credit: &CreditCurve,
    disc: &DiscountCurve,
    maturity: f64,
    frequency: u32,
) -> f64 {
    let n = ((maturity * frequency as f64).round() as usize).max(1);
    let tau = maturity / n as f64;
    let mut total = 0.0;
    let mut q_prev = 1.0;
    for i in 1..=n {
        let end = i as f64 * tau;
        let mid = end - 0.5 * tau;
        let q_end = credit.survival_nonneg(end);
        total += tau * disc.df_nonneg(end) * q_end;
        total += 0.5 * tau * disc.df_nonneg(mid) * (q_prev - q_end);
        q_prev = q_end;
    }
    total
}

/// Par running spread of a spot CDS of `maturity` years under `credit`.
///
/// # Errors
/// [`Error::Domain`] for a non-positive maturity, [`Error::Input`] for a
/// zero premium frequency.
pub fn cds_par_spread(
    credit: &CreditCurve,
    disc: &DiscountCurve,
    maturity: f64,
    premium_frequency: u32,
) -> Result<f64> {
    if !(maturity > 0.0) {
        return Err(Error::Domain(format!(
            "CDS maturity must be positive, got {maturity}"
        )));
    }
    if premium_frequency == 0 {
        return Err(Error::Input("premium frequency must be at least 1".into()));
    }
    let prem = premium_leg_per_unit(credit, disc, maturity, premium_frequency);
    let prot = credit.lgd() * default_density_integral(credit, disc, 0.0, maturity);
    Ok(prot / prem)
}

/// Bootstraps a piecewise-constant hazard curve that reprices every quote
/// in the set to par, solving one segment per quote by bisection on
/// `[0, 10]` to an absolute tolerance of `1e-12`.
///
/// # Errors
/// * [`Error::ArbitrageQuotes`] when a quote is so low that even a zero
///   hazard on its new segment overprices it given the earlier segments.
/// * [`Error::Calibration`] when no hazard up to 10 reprices the quote (the
///   message names the offending maturity).
pub fn bootstrap_hazard(quotes: &CdsQuoteSet, disc: &DiscountCurve) -> Result<CreditCurve> {
    let recovery = quotes.recovery();
    let frequency = quotes.premium_frequency();
    let mut segments: Vec<(f64, f64)> = Vec::with_capacity(quotes.quotes().len());
    for quote in quotes.quotes() {
        let objective = |hazard: f64| -> f64 {
            let mut candidate = segments.clone();
            candidate.push((quote.maturity, hazard));
            let curve = CreditCurve::from_hazards(&candidate, recovery)
                .expect("candidate segments are increasing and hazards non-negative");
            let prem = premium_leg_per_unit(&curve, disc, quote.maturity, frequency);
            let prot = curve.lgd() * default_density_integral(&curve, disc, 0.0, quote.maturity);
            prot - quote.spread * prem
        };
        let at_zero = objective(0.0);
        let hazard = if at_zero.abs() <= LEG_TINY {
            0.0
        } else if at_zero > 0.0 {
            return Err(Error::ArbitrageQuotes(format!(
                "quote {:.4} bp at maturity {} is below the level already \
                 implied by shorter maturities even with a zero hazard on \
                 ({}, {}]",
                quote.spread * 1e4,
                quote.maturity,
                segments.last().map_or(0.0, |s| s.0),
                quote.maturity,
            )));
        } else {
            if objective(HAZARD_MAX) < 0.0 {
                return Err(Error::Calibration(format!(
                    "no hazard in [0, {HAZARD_MAX}] reprices the {:.4} bp \
                     quote at maturity {}",
                    quote.spread * 1e4,
                    quote.maturity,
                )));
            }
            bisect(objective, 0.0, HAZARD_MAX, HAZARD_TOL, 200)?
        };
        segments.push((quote.maturity, hazard));
    }
    CreditCurve::from_hazards(&segments, recovery)
}

/// Forward CDS par rate over `(start, end]`: protection leg value divided by
/// the forward premium leg, with the premium accruals on an equal-period
/// schedule of `premium_frequency` payments per year weighted per the
/// chosen [`PremiumLegConvention`].
///
/// # Errors
/// [`Error::Domain`] unless `0 <= start < end`; [`Error::Schedule`] when
/// `(end - start) * premium_frequency` is not a whole number of periods;
/// [`Error::Input`] for a zero frequency.
pub fn forward_cds_rate(
    credit: &CreditCurve,
    disc: &DiscountCurve,
    start: f64,
    end: f64,
    premium_frequency: u32,
    convention: PremiumLegConvention,
) -> Result<f64> {
    if start < 0.0 || end <= start {
        return Err(Error::Domain(format!(
            "forward CDS needs 0 <= start < end, got [{start}, {end}]"
        )));
    }
    if premium_frequency == 0 {
        return Err(Error::Input("premium frequency must be at least 1".into()));
    }
    let periods = (end - start) * premium_frequency as f64;
    let rounded = periods.round();
    if rounded < 1.0 || (periods - rounded).abs() > SCHEDULE_EPS {
        return Err(Error::Schedule(format!(
            "(end - start) * frequency must be a positive whole number of \
             premium periods, got {periods}"
        )));
    }
    let n = rounded as usize;
    let tau = (end - start) / n as f64;
    let numerator = credit.lgd() * default_density_integral(credit, disc, start, end);
    let mut denominator = 0.0;
    for i in 1..=n {
        let t_i = start + i as f64 * tau;
        let weight = match convention {
            PremiumLegConvention::Undiscounted => 1.0,
            PremiumLegConvention::Discounted => disc.df_nonneg(t_i),
        };
        denominator += tau * weight * credit.survival_nonneg(t_i);
    }
    Ok(numerator / denominator)
}
