//! Lognormal swap-rate optionality and swaption volatility lookup.
//!
//! The expected positive part of a lognormal swap rate around a strike is
//! the Black formula in the annuity measure; volatilities come from a dense
//! cube over (expiry, tenor, strike offset from the at-the-money rate) with
//! trilinear interpolation and flat extrapolation on every axis.

use crate::curves::{annuity, fair_swap_rate, DiscountCurve, Side, SwapSpec};
use crate::error::{Error, Result};
use crate::math::norm_cdf;

/// Whether strike-dependent volatilities are used or everything is priced
/// on the at-the-money backbone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SmileMode {
    /// Look volatilities up at the option's actual strike offset.
    #[default]
    Smile,
    /// Force the strike offset to zero (at-the-money volatility).
    AtmOnly,
}

/// Dense swaption volatility cube: axes are option expiry, underlying swap
/// tenor, and strike offset from the at-the-money rate (`K - ATM`).
#[derive(Debug, Clone)]
pub struct VolCube {
    expiries: Vec<f64>,
    tenors: Vec<f64>,
    strike_offsets: Vec<f64>,
    /// Flattened `[expiry][tenor][offset]` lognormal volatilities.
    vols: Vec<f64>,
}

impl VolCube {
    /// Builds a cube from its axes and a flattened volatility array laid
    /// out expiry-major: `vols[(i * n_tenors + j) * n_offsets + k]`.
    ///
    /// # Errors
    /// [`Error::Input`] for empty or non-increasing axes, a size mismatch,
    /// or negative/non-finite volatilities.
    pub fn new(
        expiries: &[f64],
        tenors: &[f64],
        strike_offsets: &[f64],
        vols: &[f64],
    ) -> Result<Self> {
        validate_axis("expiry", expiries, 0.0)?;
        validate_axis("tenor", tenors, 0.0)?;
        validate_axis("strike offset", strike_offsets, f64::NEG_INFINITY)?;
        let expected = expiries.len() * tenors.len() * strike_offsets.len();
        if vols.len() != expected {
            return Err(Error::Input(format!(
                "volatility grid holds {} values but the axes imply {expected}",
                vols.len()
            )));
        }
        for &v in vols {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::Input(format!(
                    "volatilities must be finite and non-negative, got {v}"
                )));
            }
        }
        Ok(Self {
            expiries: expiries.to_vec(),
            tenors: tenors.to_vec(),
            strike_offsets: strike_offsets.to_vec(),
            vols: vols.to_vec(),
        })
    }

    /// Single-point cube returning `vol` for every query.
    ///
    /// # Errors
    /// [`Error::Input`] for a negative or non-finite volatility.
    pub fn flat(vol: f64) -> Result<Self> {
        Self::new(&[1.0], &[1.0], &[0.0], &[vol])
    }

    /// Interpolated lognormal volatility at `(expiry, tenor, strike_offset)`
    /// where `strike_offset = strike - atm_rate`; trilinear inside the grid
    /// and flat beyond it.
    ///
    /// # Errors
    /// [`Error::Domain`] for negative expiry or tenor, or non-finite inputs.
    pub fn vol(&self, expiry: f64, tenor: f64, strike_offset: f64) -> Result<f64> {
        if !(expiry >= 0.0) || !(tenor >= 0.0) || !strike_offset.is_finite() {
            return Err(Error::Domain(format!(
                "volatility query needs expiry >= 0, tenor >= 0, finite offset; \
                 got ({expiry}, {tenor}, {strike_offset})"
            )));
        }
        let (e0, e1, we) = bracket(&self.expiries, expiry);
        let (t0, t1, wt) = bracket(&self.tenors, tenor);
        let (k0, k1, wk) = bracket(&self.strike_offsets, strike_offset);
        let mut value = 0.0;
        for (ei, ew) in [(e0, 1.0 - we), (e1, we)] {
            for (ti, tw) in [(t0, 1.0 - wt), (t1, wt)] {
                for (ki, kw) in [(k0, 1.0 - wk), (k1, wk)] {
                    value += ew * tw * kw * self.at(ei, ti, ki);
                }
            }
        }
        Ok(value)
    }

    fn at(&self, i: usize, j: usize, k: usize) -> f64 {
        self.vols[(i * self.tenors.len() + j) * self.strike_offsets.len() + k]
    }
}

fn validate_axis(name: &str, axis: &[f64], min_exclusive: f64) -> Result<()> {
    if axis.is_empty() {
        return Err(Error::Input(format!("{name} axis must not be empty")));
    }
    let mut prev = min_exclusive;
    for &x in axis {
        if !x.is_finite() || !(x > prev) {
            return Err(Error::Input(format!(
                "{name} axis must be finite and strictly increasing\
                 {}; got {x} after {prev}",
                if min_exclusive == 0.0 { " and positive" } else { "" }
            )));
        }
        prev = x;
    }
    Ok(())
}

/// Locates `x` on a sorted axis: returns `(lo, hi, weight)` with the value
/// interpolated as `(1 - weight) * axis[lo] + weight * axis[hi]`; clamps
/// beyond the ends (flat extrapolation).
fn bracket(axis: &[f64], x: f64) -> (usize, usize, f64) {
    let n = axis.len();
    if x <= axis[0] || n == 1 {
        return (0, 0, 0.0);
    }
    if x >= axis[n - 1] {
        return (n - 1, n - 1, 0.0);
    }
    let hi = axis.partition_point(|&a| a <= x);
    let lo = hi - 1;
    let w = (x - axis[lo]) / (axis[hi] - axis[lo]);
    (lo, hi, w)
}

/// Expected positive part of a lognormal rate `S` with mean `forward` and
/// variance parameter `vol^2 * expiry` around `strike`:
/// `E[(S - K)^+]` for [`Side::Payer`], `E[(K - S)^+]` for
/// [`Side::Receiver`] (the side names the swaption style whose holder
/// benefits). This is the Black formula without discounting or annuity.
///
/// Degenerate cases: zero total volatility returns the intrinsic value; a
/// non-positive strike makes the payer value `forward - strike` and the
/// receiver value zero.
///
/// # Errors
/// [`Error::Domain`] for a non-positive forward, negative volatility, or
/// negative expiry.
pub fn expected_positive_part(
    forward: f64,
    strike: f64,
    vol: f64,
    expiry: f64,
    side: Side,
) -> Result<f64> {
    if !(forward > 0.0) || !forward.is_finite() {
        return Err(Error::Domain(format!(
            "lognormal forward must be positive and finite, got {forward}"
        )));
    }
    if vol < 0.0 || expiry < 0.0 || !vol.is_finite() || !expiry.is_finite() {
        return Err(Error::Domain(format!(
            "need vol >= 0 and expiry >= 0, got vol = {vol}, expiry = {expiry}"
        )));
    }
    if strike <= 0.0 {
        // A lognormal rate stays above any non-positive strike.
        return Ok(match side {
            Side::Payer => forward - strike,
            Side::Receiver => 0.0,
        });
    }
    let sd = vol * expiry.sqrt();
    if sd == 0.0 {
        let intrinsic = match side {
            Side::Payer => forward - strike,
            Side::Receiver => strike - forward,
        };
        return Ok(intrinsic.max(0.0));
    }
    let d1 = ((forward / strike).ln() + 0.5 * sd * sd) / sd;
    let d2 = d1 - sd;
    Ok(match side {
        Side::Payer => forward * norm_cdf(d1) - strike * norm_cdf(d2),
        Side::Receiver => strike * norm_cdf(-d2) - forward * norm_cdf(-d1),
    })
}

/// Price, per unit notional, of a European option expiring at `expiry` on
/// the remainder of `spec` — the swap over `[expiry, maturity]` struck at
/// the *original* fixed rate: `annuity(residual) * expected positive
/// part(residual fair rate, strike)`. The volatility is read from the cube
/// at the residual expiry/tenor and at the strike's offset from the
/// residual at-the-money rate. Toward maturity the shrinking residual
/// annuity pulls the price back down, producing the characteristic humped
/// term profile even as uncertainty grows.
///
/// # Errors
/// [`Error::Domain`] when `expiry` is not inside `[start, maturity)`;
/// otherwise propagated from the annuity, fair-rate, and cube lookups.
pub fn swaption_price(
    fwd_curve: &DiscountCurve,
    disc_curve: &DiscountCurve,
    spec: &SwapSpec,
    cube: &VolCube,
    expiry: f64,
    side: Side,
) -> Result<f64> {
    if !(expiry >= spec.start && expiry < spec.maturity) {
        return Err(Error::Domain(format!(
            "option expiry must lie in [{}, {}), got {expiry}",
            spec.start, spec.maturity
        )));
    }
    let residual_annuity = annuity(disc_curve, spec, expiry)?;
    let fair = fair_swap_rate(fwd_curve, disc_curve, spec, expiry)?;
    let vol = cube.vol(expiry, spec.maturity - expiry, spec.fixed_rate - fair)?;
    Ok(residual_annuity * expected_positive_part(fair, spec.fixed_rate, vol, expiry, side)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn at_the_money_five_year_value() {
        let value = expected_positive_part(0.02, 0.02, 0.20, 5.0, Side::Payer).unwrap();
        assert_relative_eq!(value, 0.003_538_734_524_837_571_4, epsilon = 1e-13);
        // At the money the two sides are worth the same.
        let receiver = expected_positive_part(0.02, 0.02, 0.20, 5.0, Side::Receiver).unwrap();
        assert_relative_eq!(value, receiver, epsilon = 1e-15);
    }

    #[test]
    fn residual_swaption_at_zero_vol_atm_is_worthless() {
        use crate::curves::{fair_swap_rate, DiscountCurve, SwapSpec};
        let disc = DiscountCurve::flat("OIS", 0.02).unwrap();
        let cube = VolCube::flat(0.0).unwrap();
        let mut spec = SwapSpec::new(0.0, 10.0, 0.0, 0.5, Side::Payer, 1.0).unwrap();
        spec.fixed_rate = fair_swap_rate(&disc, &disc, &spec, 0.0).unwrap();
        // Flat curve: the residual fair rate equals the strike, and with
        // zero volatility there is no optionality left.
        let price = swaption_price(&disc, &disc, &spec, &cube, 9.5, Side::Payer).unwrap();
        assert!(price.abs() < 1e-15, "price {price}");

        let err = swaption_price(&disc, &disc, &spec, &cube, 10.0, Side::Payer).unwrap_err();
        assert!(err.to_string().contains("expiry"));
    }

    #[test]
    fn payer_receiver_parity() {
        for (f, k, v, t) in [
            (0.02, 0.025, 0.2, 5.0),
            (0.035, 0.02, 0.4, 1.0),
            (0.01, 0.0101, 0.15, 12.0),
        ] {
            let payer = expected_positive_part(f, k, v, t, Side::Payer).unwrap();
            let receiver = expected_positive_part(f, k, v, t, Side::Receiver).unwrap();
            assert_relative_eq!(payer - receiver, f - k, epsilon = 1e-14);
        }
    }

    #[test]
    fn zero_volatility_returns_intrinsic() {
        assert_relative_eq!(
            expected_positive_part(0.03, 0.02, 0.0, 5.0, Side::Payer).unwrap(),
            0.01,
            epsilon = 1e-15
        );
        assert_eq!(
            expected_positive_part(0.03, 0.02, 0.0, 5.0, Side::Receiver).unwrap(),
            0.0
        );
        assert_relative_eq!(
            expected_positive_part(0.03, 0.02, 0.2, 0.0, Side::Payer).unwrap(),
            0.01,
            epsilon = 1e-15
        );
    }

    #[test]
    fn non_positive_strike_branches() {
        assert_relative_eq!(
            expected_positive_part(0.02, 0.0, 0.2, 5.0, Side::Payer).unwrap(),
            0.02,
            epsilon = 1e-15
        );
        assert_eq!(
            expected_positive_part(0.02, 0.0, 0.2, 5.0, Side::Receiver).unwrap(),
            0.0
        );
        assert_relative_eq!(
            expected_positive_part(0.02, -0.01, 0.2, 5.0, Side::Payer).unwrap(),
            0.03,
            epsilon = 1e-15
        );
    }

    #[test]
    fn value_increases_with_volatility() {
        let mut prev = 0.0;
        for vol in [0.05, 0.1, 0.2, 0.4, 0.8] {
            let value = expected_positive_part(0.02, 0.022, vol, 5.0, Side::Payer).unwrap();
            assert!(value > prev);
            prev = value;
        }
    }

    #[test]
    fn domain_errors() {
        assert!(expected_positive_part(0.0, 0.02, 0.2, 5.0, Side::Payer).is_err());
        assert!(expected_positive_part(0.02, 0.02, -0.2, 5.0, Side::Payer).is_err());
        assert!(expected_positive_part(0.02, 0.02, 0.2, -5.0, Side::Payer).is_err());
    }

    #[test]
    fn flat_cube_returns_its_volatility_everywhere() {
        let cube = VolCube::flat(0.20).unwrap();
        for (e, t, k) in [(0.5, 10.0, 0.0), (30.0, 1.0, -0.05), (0.0, 0.0, 0.05)] {
            assert_eq!(cube.vol(e, t, k).unwrap(), 0.20);
        }
    }

    #[test]
    fn trilinear_center_is_the_corner_average() {
        let cube = VolCube::new(
            &[1.0, 3.0],
            &[5.0, 10.0],
            &[-0.01, 0.01],
            &[0.20, 0.22, 0.24, 0.26, 0.30, 0.32, 0.34, 0.36],
        )
        .unwrap();
        let center = cube.vol(2.0, 7.5, 0.0).unwrap();
        assert_relative_eq!(center, 0.28, epsilon = 1e-15);
    }

    #[test]
    fn extrapolation_is_flat_beyond_the_grid() {
        let cube = VolCube::new(
            &[1.0, 3.0],
            &[5.0, 10.0],
            &[-0.01, 0.01],
            &[0.20, 0.22, 0.24, 0.26, 0.30, 0.32, 0.34, 0.36],
        )
        .unwrap();
        assert_relative_eq!(
            cube.vol(100.0, 100.0, 1.0).unwrap(),
            0.36,
            epsilon = 1e-15
        );
        assert_relative_eq!(
            cube.vol(0.0, 0.0, -1.0).unwrap(),
            0.20,
            epsilon = 1e-15
        );
    }

    #[test]
    fn cube_validation() {
        assert!(VolCube::new(&[1.0, 1.0], &[5.0], &[0.0], &[0.2, 0.2]).is_err());
        assert!(VolCube::new(&[1.0], &[5.0], &[0.0], &[0.2, 0.2]).is_err());
        assert!(VolCube::new(&[1.0], &[5.0], &[0.0], &[-0.2]).is_err());
        assert!(VolCube::flat(0.2).unwrap().vol(-1.0, 5.0, 0.0).is_err());
    }
}
