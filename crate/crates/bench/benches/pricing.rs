//! Benchmarks for the hot paths: hazard bootstrapping, goodwill CVA
//! quadrature, the per-swap funding sum, Black building blocks, and one
//! Monte Carlo batch.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use cvacomplete_core::{
    bootstrap_hazard, expected_positive_part, goodwill_cva, math::norm_cdf,
    mc_expected_positive_part, swap_funding_cost, CdsQuoteSet, CreditCurve, DiscountCurve,
    FundingCurve, GoodwillModel, GoodwillVariant, Side, SimConfig, SmileMode, SwapSpec, VolCube,
};

/// A distressed ten-pillar CDS row (decimals) with an inverted short end.
const CDS_ROW: [(f64, f64); 10] = [
    (0.5, 0.0923),
    (1.0, 0.0839),
    (2.0, 0.0728),
    (3.0, 0.0667),
    (4.0, 0.0624),
    (5.0, 0.0592),
    (7.0, 0.0548),
    (10.0, 0.0534),
    (15.0, 0.0534),
    (20.0, 0.0534),
];

fn discount() -> DiscountCurve {
    DiscountCurve::flat("OIS", 0.026).unwrap()
}

fn credit() -> CreditCurve {
    let quotes = CdsQuoteSet::new(&CDS_ROW, 0.40).unwrap();
    bootstrap_hazard(&quotes, &discount()).unwrap()
}

fn bench_bootstrap(c: &mut Criterion) {
    let disc = discount();
    let quotes = CdsQuoteSet::new(&CDS_ROW, 0.40).unwrap();
    c.bench_function("bootstrap_ten_pillars", |b| {
        b.iter(|| bootstrap_hazard(black_box(&quotes), black_box(&disc)).unwrap())
    });
}

fn bench_goodwill(c: &mut Criterion) {
    let disc = discount();
    let credit = credit();
    let model = GoodwillModel::new(GoodwillVariant::Amortizing { horizon: 20.0 }, 1.0).unwrap();
    c.bench_function("goodwill_cva_amortizing_20y", |b| {
        b.iter(|| goodwill_cva(black_box(&model), &credit, &disc, black_box(20.0)).unwrap())
    });
}

fn bench_swap_funding(c: &mut Criterion) {
    let disc = discount();
    let fwd = DiscountCurve::flat("TENOR", 0.030).unwrap();
    let cube = VolCube::flat(0.20).unwrap();
    let funding = FundingCurve::constant_average(0.010, 0.5).unwrap();
    let spec = SwapSpec::new(0.0, 20.0, 0.03, 0.5, Side::Payer, 1.0).unwrap();
    c.bench_function("swap_funding_cost_20y_semi", |b| {
        b.iter(|| {
            swap_funding_cost(
                black_box(&spec),
                &fwd,
                &disc,
                &cube,
                &funding,
                Side::Payer,
                SmileMode::Smile,
            )
            .unwrap()
        })
    });
}

fn bench_black_primitives(c: &mut Criterion) {
    c.bench_function("expected_positive_part", |b| {
        b.iter(|| {
            expected_positive_part(
                black_box(0.03),
                black_box(0.032),
                black_box(0.20),
                black_box(5.0),
                Side::Payer,
            )
            .unwrap()
        })
    });
    c.bench_function("norm_cdf", |b| b.iter(|| norm_cdf(black_box(0.7))));
}

fn bench_mc_batch(c: &mut Criterion) {
    let cfg = SimConfig {
        n_paths: 8192,
        seed: 42,
        correlation: 0.0,
        rate_vol: 0.20,
        spread_vol: 0.0,
    };
    c.bench_function("mc_expected_positive_part_8192", |b| {
        b.iter(|| {
            mc_expected_positive_part(
                black_box(0.03),
                black_box(0.03),
                black_box(0.20),
                black_box(5.0),
                &cfg,
            )
            .unwrap()
        })
    });
}

criterion_group!(
    benches,
    bench_bootstrap,
    bench_goodwill,
    bench_swap_funding,
    bench_black_primitives,
    bench_mc_batch
);
criterion_main!(benches);
