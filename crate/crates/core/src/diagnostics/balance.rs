//! Time-integrated energy laws checked along a stored series.

use crate::error::{Error, Result};
use crate::evolution::TimeSeriesRecord;
use crate::quadrature::cumulative_simpson;

/// `|E(t) − E(0) + ∫D − ∫W| / (E(0) + ∫|W|)` at every sample, with the time
/// integrals taken by the cumulative Simpson rule on the sample times.
/// A sample whose numerator and denominator both vanish scores 0.
pub fn balance_residual_series(
    times: &[f64],
    energy: &[f64],
    dissipation: &[f64],
    work: &[f64],
) -> Result<Vec<f64>> {
    let n = times.len();
    if n == 0 || energy.len() != n || dissipation.len() != n || work.len() != n {
        return Err(Error::InvalidArgument(
            "balance needs equally long, non-empty columns".into(),
        ));
    }
    if times.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidArgument(
            "sample times must increase strictly".into(),
        ));
    }
    if n == 1 {
        return Ok(vec![0.0]);
    }
    let abs_work: Vec<f64> = work.iter().map(|w| w.abs()).collect();
    let int_d = cumulative_simpson(times, dissipation)?;
    let int_w = cumulative_simpson(times, work)?;
    let int_abs_w = cumulative_simpson(times, &abs_work)?;
    let e0 = energy[0];
    Ok((0..n)
        .map(|i| {
            let num = (energy[i] - e0 + int_d[i] - int_w[i]).abs();
            let den = e0 + int_abs_w[i];
            if num == 0.0 {
                0.0
            } else {
                num / den
            }
        })
        .collect())
}

fn check(series: &[TimeSeriesRecord]) -> Result<Vec<f64>> {
    if series.is_empty() {
        return Err(Error::InvalidArgument("empty time series".into()));
    }
    Ok(series.iter().map(|r| r.t).collect())
}

/// First-law residual per sample, `ℰ` against `μ(‖Δr‖² + 2‖∇Δr‖² + ‖Δ²r‖²)`
/// and `⟨f, (Id − Δ)r⟩`.
pub fn first_balance_series(series: &[TimeSeriesRecord]) -> Result<Vec<f64>> {
    let t = check(series)?;
    let e: Vec<f64> = series.iter().map(|r| r.energy.e_first).collect();
    let d: Vec<f64> = series.iter().map(|r| r.dissipation_first).collect();
    let w: Vec<f64> = series.iter().map(|r| r.work_first).collect();
    balance_residual_series(&t, &e, &d, &w)
}

/// Second-law residual per sample, `ℰ̃` against its dissipation and
/// `⟨f, (Id − Δ + Δ²)r⟩`.
pub fn second_balance_series(series: &[TimeSeriesRecord]) -> Result<Vec<f64>> {
    let t = check(series)?;
    let e: Vec<f64> = series.iter().map(|r| r.energy.e_second).collect();
    let d: Vec<f64> = series.iter().map(|r| r.dissipation_second).collect();
    let w: Vec<f64> = series.iter().map(|r| r.work_second).collect();
    balance_residual_series(&t, &e, &d, &w)
}

fn sup(v: Vec<f64>) -> f64 {
    v.into_iter().fold(0.0, f64::max)
}

/// Largest first-law residual over the series.
pub fn first_balance_residual(series: &[TimeSeriesRecord]) -> Result<f64> {
    first_balance_series(series).map(sup)
}

/// Largest second-law residual over the series.
pub fn second_balance_residual(series: &[TimeSeriesRecord]) -> Result<f64> {
    second_balance_series(series).map(sup)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_decay_balances() {
        // E = e^{-2t}, D = 2e^{-2t}, no work
        let t: Vec<f64> = (0..=200).map(|i| i as f64 * 0.01).collect();
        let e: Vec<f64> = t.iter().map(|t| (-2.0 * t).exp()).collect();
        let d: Vec<f64> = e.iter().map(|e| 2.0 * e).collect();
        let w = vec![0.0; t.len()];
        let r = balance_residual_series(&t, &e, &d, &w).unwrap();
        assert!(r.iter().all(|&x| x < 1e-8));
    }

    #[test]
    fn all_zero_is_exactly_zero() {
        let t = [0.0, 0.5, 1.0];
        let z = [0.0; 3];
        assert_eq!(balance_residual_series(&t, &z, &z, &z).unwrap(), vec![0.0; 3]);
    }

    #[test]
    fn rejects_bad_series() {
        assert!(balance_residual_series(&[], &[], &[], &[]).is_err());
        assert!(balance_residual_series(&[0.0, 0.0], &[1.0; 2], &[0.0; 2], &[0.0; 2]).is_err());
    }
}
