//! Pricing library for two often-omitted pieces of bilateral credit
//! valuation adjustment:
//!
//! * **Goodwill CVA** — the expected write-down of a firm's goodwill asset
//!   at its own default, under amortizing, constant, and stock-like value
//!   dynamics ([`goodwill`]).
//! * **Collateralized-swap funding** — the cost of funding contingent
//!   collateral postings on an at-the-money swap above the overnight rate
//!   earned on the collateral, plus the self-default CVA on those funding
//!   legs ([`funding`]), with a Monte Carlo cross-check of the analytic
//!   approximation ([`oracle`]).
//!
//! Supporting machinery: discount curves and swap schedules ([`curves`]),
//! CDS-bootstrapped hazard curves ([`credit`]), Black-model optionality and
//! volatility cubes ([`volatility`]), normal-distribution and quadrature
//! primitives ([`math`]), and market snapshot ingestion ([`snapshot`]).
//!
//! Conventions: all times are year fractions from the valuation date
//! (ACT/365F when dates are involved); rates are decimals per annum
//! (196 bp = 0.0196); monetary results are per unit notional unless a
//! book value or notional is explicit.

// Guards are written `!(x > 0.0)` rather than `x <= 0.0` on purpose: the
// negated form also rejects NaN, which must never slip past validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod credit;
pub mod curves;
pub mod error;
pub mod funding;
pub mod goodwill;
pub mod math;
pub mod oracle;
pub mod snapshot;
pub mod volatility;

pub use credit::{
    bootstrap_hazard, cds_par_spread, forward_cds_rate, protection_leg, CdsQuote, CdsQuoteSet,
    CreditCurve, PremiumLegConvention,
};
pub use curves::{annuity, fair_swap_rate, DiscountCurve, Side, SwapSpec};
pub use error::{Error, ErrorClass, Result};
pub use funding::{
    funding_report, median_bank_cds, scarcity_spread, swap_funding_cost, swap_funding_cva,
    FundingCurve, FundingMarket, FundingReportRow, FundingSource, ScarcityDecomposition,
};
pub use goodwill::{
    amortizing_sweep, goodwill_cva, goodwill_cva_change, goodwill_cva_with_steps, headline_pnl,
    AmortizingSweepRow, GoodwillCvaChange, GoodwillCvaResult, GoodwillModel, GoodwillVariant,
};
pub use oracle::{mc_expected_positive_part, mc_swap_funding_exact, McEstimate, SimConfig};
pub use snapshot::{load_snapshot, read_numeric_csv, FixingRow, MarketSnapshot};
pub use volatility::{expected_positive_part, swaption_price, SmileMode, VolCube};
