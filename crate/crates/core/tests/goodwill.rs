//! Integration tests for goodwill CVA: brute-force quadrature oracles,
//! model-ordering properties, and the two-snapshot change study.

mod common;

use approx::assert_relative_eq;
use common::{daily_goodwill_fraction, to_decimal_quotes, EARLY_2009_CDS_BPS, LATE_2008_CDS_BPS};
use cvacomplete_core::{
    amortizing_sweep, bootstrap_hazard, goodwill_cva, goodwill_cva_change,
    goodwill_cva_with_steps, headline_pnl, CdsQuoteSet, CreditCurve, DiscountCurve,
    GoodwillModel, GoodwillVariant,
};
use proptest::prelude::*;

fn stress_curves() -> (CreditCurve, CreditCurve, DiscountCurve) {
    let disc = DiscountCurve::flat("OIS", 0.02).unwrap();
    let old = bootstrap_hazard(
        &CdsQuoteSet::new(&to_decimal_quotes(&LATE_2008_CDS_BPS), 0.40).unwrap(),
        &disc,
    )
    .unwrap();
    let new = bootstrap_hazard(
        &CdsQuoteSet::new(&to_decimal_quotes(&EARLY_2009_CDS_BPS), 0.40).unwrap(),
        &disc,
    )
    .unwrap();
    (old, new, disc)
}

#[test]
fn constant_model_matches_daily_grid_oracle_on_a_multi_knot_curve() {
    let credit =
        CreditCurve::from_hazards(&[(1.0, 0.05), (5.0, 0.03), (30.0, 0.04)], 0.40).unwrap();
    let disc = DiscountCurve::from_zero_rates("OIS", &[(1.0, 0.02), (10.0, 0.03)]).unwrap();
    let model = GoodwillModel::new(GoodwillVariant::Constant, 1.0).unwrap();
    let value = goodwill_cva(&model, &credit, &disc, 12.0).unwrap().cva_fraction;
    let oracle = daily_goodwill_fraction(|_| 1.0, &credit, &disc, 12.0, 1460);
    assert_relative_eq!(value, oracle, max_relative = 1e-6);
}

#[test]
fn amortizing_model_matches_daily_grid_oracle() {
    let credit =
        CreditCurve::from_hazards(&[(1.0, 0.05), (5.0, 0.03), (30.0, 0.04)], 0.40).unwrap();
    let disc = DiscountCurve::flat("OIS", 0.025).unwrap();
    let m = 12.0;
    let model = GoodwillModel::new(GoodwillVariant::Amortizing { horizon: m }, 1.0).unwrap();
    let value = goodwill_cva(&model, &credit, &disc, m).unwrap().cva_fraction;
    let oracle =
        daily_goodwill_fraction(|s| (1.0 - s / m).max(0.0), &credit, &disc, m, 1460);
    assert_relative_eq!(value, oracle, max_relative = 1e-6);
}

#[test]
fn stock_saturates_and_ignores_discounting() {
    let (old, _, _) = stress_curves();
    let model = GoodwillModel::new(GoodwillVariant::Stock, 26e9).unwrap();
    let steep = DiscountCurve::flat("STEEP", 0.15).unwrap();
    let flat = DiscountCurve::flat("FLAT", 0.0).unwrap();
    let a = goodwill_cva(&model, &old, &steep, 1000.0).unwrap();
    let b = goodwill_cva(&model, &old, &flat, 1000.0).unwrap();
    assert_eq!(a.cva_fraction, b.cva_fraction);
    assert!(a.cva_fraction > 1.0 - 1e-6 && a.cva_fraction <= 1.0);
}

#[test]
fn stress_change_sweep_stays_in_the_expected_band() {
    // Amortizing with T = M swept over 5..=30y between the two stress
    // rows: every change fraction within [0.15, 0.30], and some horizon
    // in the 20-25% subrange.
    let (old, new, disc) = stress_curves();
    let horizons: Vec<f64> = (5..=30).map(f64::from).collect();
    let rows = amortizing_sweep(1.0, &old, &disc, &new, &disc, &horizons).unwrap();
    assert_eq!(rows.len(), horizons.len());
    let mut any_in_headline_range = false;
    for row in &rows {
        assert!(
            (0.15..=0.30).contains(&row.change),
            "change {} at M = {} outside [0.15, 0.30]",
            row.change,
            row.horizon
        );
        assert!(row.new_fraction > row.old_fraction);
        if (0.20..=0.25).contains(&row.change) {
            any_in_headline_range = true;
        }
    }
    assert!(any_in_headline_range, "no horizon lands in [0.20, 0.25]");
}

#[test]
fn identical_snapshots_produce_zero_change() {
    let (old, _, disc) = stress_curves();
    let model =
        GoodwillModel::new(GoodwillVariant::Amortizing { horizon: 10.0 }, 26e9).unwrap();
    let change = goodwill_cva_change(&model, &old, &disc, &old, &disc, 10.0).unwrap();
    assert_eq!(change.change_fraction, 0.0);
    assert_eq!(change.change_value, 0.0);
}

#[test]
fn stock_change_vanishes_at_long_horizons() {
    let (old, new, disc) = stress_curves();
    let model = GoodwillModel::new(GoodwillVariant::Stock, 26e9).unwrap();
    let change = goodwill_cva_change(&model, &old, &disc, &new, &disc, 1000.0).unwrap();
    assert!(change.change_fraction.abs() < 1e-6);
}

#[test]
fn amortizing_approaches_constant_like_one_over_horizon() {
    // Over a fixed valuation window the amortizing fraction converges to
    // the constant-model fraction as the amortization horizon M grows, but
    // only at first order: the relative gap is the survival-weighted mean
    // elapsed time divided by M. Check the gap shrinks by ~10x per decade
    // of M (so it is still ~1e-3 even at M = 1e4).
    let (old, _, disc) = stress_curves();
    let t = 20.0;
    let constant = GoodwillModel::new(GoodwillVariant::Constant, 1.0).unwrap();
    let reference = goodwill_cva(&constant, &old, &disc, t).unwrap().cva_fraction;
    let gap = |m: f64| {
        let model = GoodwillModel::new(GoodwillVariant::Amortizing { horizon: m }, 1.0).unwrap();
        let fraction = goodwill_cva(&model, &old, &disc, t).unwrap().cva_fraction;
        (fraction - reference).abs() / reference
    };
    let gaps = [gap(1e2), gap(1e3), gap(1e4)];
    assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2], "{gaps:?}");
    for pair in gaps.windows(2) {
        let ratio = pair[0] / pair[1];
        assert!(
            (9.0..=11.0).contains(&ratio),
            "gap ratio per decade of M is {ratio}, not ~10: {gaps:?}"
        );
    }
}

#[test]
fn headline_arithmetic() {
    assert_relative_eq!(
        headline_pnl(2.5e9, 0.25 * 26e9),
        -4.0e9,
        max_relative = 1e-12
    );
    assert_eq!(headline_pnl(2.5e9, 0.0), 2.5e9);
    assert_eq!(headline_pnl(2.5e9, 2.5e9), 0.0);
}

#[test]
fn hazard_bump_raises_cva_for_every_model() {
    let disc = DiscountCurve::flat("OIS", 0.02).unwrap();
    let base =
        CreditCurve::from_hazards(&[(1.0, 0.05), (5.0, 0.03), (30.0, 0.04)], 0.40).unwrap();
    let bumped = CreditCurve::from_hazards(
        &[(1.0, 0.06), (5.0, 0.04), (30.0, 0.05)],
        0.40,
    )
    .unwrap();
    for variant in [
        GoodwillVariant::Amortizing { horizon: 15.0 },
        GoodwillVariant::Constant,
        GoodwillVariant::Stock,
    ] {
        let model = GoodwillModel::new(variant, 1.0).unwrap();
        let lo = goodwill_cva(&model, &base, &disc, 15.0).unwrap().cva_fraction;
        let hi = goodwill_cva(&model, &bumped, &disc, 15.0).unwrap().cva_fraction;
        assert!(hi > lo, "{variant:?}: {hi} not above {lo}");
    }
}

proptest! {
    #[test]
    fn model_ordering_holds(
        hazard in 0.005_f64..0.2,
        rate in 0.0_f64..0.08,
        m in 2.0_f64..40.0,
        horizon in 1.0_f64..40.0,
    ) {
        let credit = CreditCurve::from_hazards(&[(1000.0, hazard)], 0.40).unwrap();
        let disc = DiscountCurve::flat("OIS", rate).unwrap();
        let amortizing = GoodwillModel::new(
            GoodwillVariant::Amortizing { horizon: m }, 1.0,
        ).unwrap();
        let constant = GoodwillModel::new(GoodwillVariant::Constant, 1.0).unwrap();
        let a = goodwill_cva(&amortizing, &credit, &disc, horizon).unwrap().cva_fraction;
        let c = goodwill_cva(&constant, &credit, &disc, horizon).unwrap().cva_fraction;
        prop_assert!(a < c);
        prop_assert!((0.0..=1.0).contains(&a));
        prop_assert!((0.0..=1.0).contains(&c));
    }

    #[test]
    fn stock_fraction_is_the_default_probability(
        hazard in 0.0_f64..0.2,
        rate in 0.0_f64..0.08,
        horizon in 1.0_f64..50.0,
    ) {
        let credit = CreditCurve::from_hazards(&[(1000.0, hazard)], 0.40).unwrap();
        let disc = DiscountCurve::flat("OIS", rate).unwrap();
        let model = GoodwillModel::new(GoodwillVariant::Stock, 2.0).unwrap();
        let result = goodwill_cva(&model, &credit, &disc, horizon).unwrap();
        let expected = 1.0 - (-hazard * horizon).exp();
        prop_assert!((result.cva_fraction - expected).abs() < 1e-12);
        prop_assert!((result.cva - 2.0 * expected).abs() < 1e-12);
    }

    #[test]
    fn refining_the_quadrature_does_not_move_the_result(
        hazard in 0.005_f64..0.15,
        rate in 0.0_f64..0.06,
        m in 3.0_f64..25.0,
    ) {
        let credit = CreditCurve::from_hazards(
            &[(1.0, hazard), (1000.0, hazard * 0.7)], 0.40,
        ).unwrap();
        let disc = DiscountCurve::flat("OIS", rate).unwrap();
        let model = GoodwillModel::new(
            GoodwillVariant::Amortizing { horizon: m }, 1.0,
        ).unwrap();
        let coarse = goodwill_cva_with_steps(&model, &credit, &disc, m, 52)
            .unwrap()
            .cva_fraction;
        let fine = goodwill_cva_with_steps(&model, &credit, &disc, m, 104)
            .unwrap()
            .cva_fraction;
        prop_assert!(((coarse - fine) / fine).abs() < 1e-9);
    }
}
