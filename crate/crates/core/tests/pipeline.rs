//! End-to-end flow: write a snapshot directory to disk, load it, bootstrap
//! credit, and price the goodwill and funding legs off the loaded objects.

mod common;

use std::io::Write as _;
use std::path::Path;

use common::LATE_2008_CDS_BPS;
use cvacomplete_core::{
    bootstrap_hazard, funding_report, goodwill_cva, load_snapshot, read_numeric_csv,
    CdsQuoteSet, FundingCurve, FundingMarket, GoodwillModel, GoodwillVariant, SmileMode,
};

fn write_file(dir: &Path, name: &str, contents: &str) {
    let mut f = std::fs::File::create(dir.join(name)).unwrap();
    f.write_all(contents.as_bytes()).unwrap();
}

fn write_snapshot(dir: &Path) {
    write_file(
        dir,
        "meta.json",
        r#"{
  "label": "LATE2008",
  "recovery": 0.40,
  "roll_tenor": 0.5,
  "valuation_date": "2008-12-31"
}"#,
    );
    write_file(
        dir,
        "discount.csv",
        "time_years,zero_rate\n0.5,0.033\n30,0.033\n",
    );
    write_file(
        dir,
        "tenor.csv",
        "time_years,zero_rate\n0.5,0.035\n30,0.035\n",
    );
    let mut cds = String::from("maturity_years,spread_bps\n");
    for (m, bps) in LATE_2008_CDS_BPS {
        cds.push_str(&format!("{m},{bps}\n"));
    }
    write_file(dir, "cds.csv", &cds);
    let mut vols = String::from("expiry_years,tenor_years,strike_offset_bps,vol\n");
    for expiry in [1.0, 5.0, 10.0] {
        for tenor in [2.0, 10.0, 20.0] {
            for offset in [-100.0, 0.0, 100.0] {
                vols.push_str(&format!("{expiry},{tenor},{offset},0.20\n"));
            }
        }
    }
    write_file(dir, "vols.csv", &vols);
    write_file(dir, "scarcity.csv", "time_years,scarcity_spread\n0.5,0.015\n30,0.015\n");
    write_file(
        dir,
        "fixings.csv",
        "tenor_years,deposit_rate,overnight_rate\n0.5,0.035,0.033\n",
    );
}

#[test]
fn snapshot_to_prices_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    write_snapshot(dir.path());
    let snapshot = load_snapshot(dir.path()).unwrap();
    assert_eq!(snapshot.label, "LATE2008");

    // Credit off the loaded quotes and overnight curve.
    let quotes = CdsQuoteSet::new(
        &snapshot
            .cds
            .quotes()
            .iter()
            .map(|q| (q.maturity, q.spread))
            .collect::<Vec<_>>(),
        snapshot.recovery,
    )
    .unwrap();
    let credit = bootstrap_hazard(&quotes, &snapshot.discount_curve).unwrap();

    // Goodwill leg.
    let model = GoodwillModel::new(GoodwillVariant::Amortizing { horizon: 20.0 }, 26e9).unwrap();
    let gw = goodwill_cva(&model, &credit, &snapshot.discount_curve, 20.0).unwrap();
    assert!(gw.cva_fraction > 0.0 && gw.cva_fraction < 1.0);

    // Funding leg, flat mode from the loaded basis.
    let funding = FundingCurve::flat_basis(
        &snapshot.tenor_curve,
        &snapshot.discount_curve,
        snapshot.roll_tenor,
        30.0,
    )
    .unwrap();
    let market = FundingMarket {
        fwd: &snapshot.tenor_curve,
        disc: &snapshot.discount_curve,
        cube: &snapshot.cube,
        credit: &credit,
        funding: &funding,
    };
    let rows =
        funding_report(&[5.0, 10.0, 20.0], snapshot.roll_tenor, &market, &market, SmileMode::Smile)
            .unwrap();
    assert_eq!(rows.len(), 6);
    for row in &rows {
        assert!(row.old_funding_cost > 0.0);
        assert!(row.old_funding_cva > 0.0);
        assert_eq!(row.funding_cost_change, 0.0);
    }

    // The loaded optional parts round-trip through the strict reader.
    let scarcity = read_numeric_csv(
        &dir.path().join("scarcity.csv"),
        &["time_years", "scarcity_spread"],
    )
    .unwrap();
    assert_eq!(scarcity, vec![vec![0.5, 0.015], vec![30.0, 0.015]]);
    assert_eq!(snapshot.scarcity.as_deref(), Some(&[(0.5, 0.015), (30.0, 0.015)][..]));
    let fixings = snapshot.fixings.as_ref().unwrap();
    assert_eq!(fixings.len(), 1);
    assert_eq!(fixings[0].deposit_rate, 0.035);
}

#[test]
fn decomposed_funding_flows_from_loaded_scarcity() {
    let dir = tempfile::tempdir().unwrap();
    write_snapshot(dir.path());
    let snapshot = load_snapshot(dir.path()).unwrap();
    let quotes = CdsQuoteSet::new(
        &snapshot
            .cds
            .quotes()
            .iter()
            .map(|q| (q.maturity, q.spread))
            .collect::<Vec<_>>(),
        snapshot.recovery,
    )
    .unwrap();
    let credit = bootstrap_hazard(&quotes, &snapshot.discount_curve).unwrap();
    let funding = FundingCurve::decomposed(
        &credit,
        &snapshot.discount_curve,
        snapshot.scarcity.as_deref().unwrap_or(&[]),
        snapshot.roll_tenor,
        20.0,
    )
    .unwrap();
    // Forward own-credit plus a +150bp scarcity floor: spreads must clear
    // 150bp at every roll.
    for &(_, foo) in funding.points() {
        assert!(foo > 0.015, "decomposed spread {foo} not above the floor");
    }
}
