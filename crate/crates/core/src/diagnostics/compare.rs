//! Nonlinear against linear comparisons and pointwise Fourier bounds.

use crate::decay::DecaySeries;
use crate::error::{Error, Result};
use crate::spectral::ops::sobolev_norm;
use crate::spectral::{symbol_a, SpectralField};

/// A state sampled at a time.
pub type Sample = (f64, SpectralField);

/// `‖r(t) − w(t)‖_{H³}` and its ratio against `(1+t)^{1/2−η}`.
#[derive(Clone, Debug)]
pub struct H3Comparison {
    pub eta: f64,
    pub difference: DecaySeries,
    /// `‖z(t)‖_{H³} / (1+t)^{1/2−η}` at each sample.
    pub ratio: Vec<f64>,
}

impl H3Comparison {
    /// Largest ratio among samples with `t` in `window`.
    pub fn sup_ratio(&self, window: (f64, f64)) -> f64 {
        self.difference
            .times
            .iter()
            .zip(&self.ratio)
            .filter(|(t, _)| **t >= window.0 && **t <= window.1)
            .fold(0.0, |m, (_, r)| m.max(*r))
    }
}

fn same_times(a: &[Sample], b: &[Sample]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::InvalidArgument(format!(
            "series lengths differ: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    for ((ta, fa), (tb, fb)) in a.iter().zip(b) {
        if (ta - tb).abs() > 1e-12 * ta.abs().max(1.0) {
            return Err(Error::InvalidArgument(format!(
                "sample times differ: {ta} vs {tb}"
            )));
        }
        fa.grid().ensure_same(fb.grid())?;
    }
    Ok(())
}

/// Compares a nonlinear run with the linear run sharing its data.
pub fn compare_h3(nonlinear: &[Sample], linear: &[Sample], eta: f64) -> Result<H3Comparison> {
    same_times(nonlinear, linear)?;
    if nonlinear.is_empty() {
        return Err(Error::InvalidArgument("empty series".into()));
    }
    let first = &nonlinear[0].1 - &linear[0].1;
    if nonlinear[0].0 == 0.0 && first.max_abs() > 0.0 {
        return Err(Error::InvalidArgument(
            "runs do not start from the same datum".into(),
        ));
    }
    let mut times = Vec::with_capacity(nonlinear.len());
    let mut values = Vec::with_capacity(nonlinear.len());
    let mut ratio = Vec::with_capacity(nonlinear.len());
    for ((t, r), (_, w)) in nonlinear.iter().zip(linear) {
        let z = sobolev_norm(&(r - w), 3.0);
        times.push(*t);
        values.push(z);
        ratio.push(z / (1.0 + t).powf(0.5 - eta));
    }
    Ok(H3Comparison {
        eta,
        difference: DecaySeries::new(times, values)?,
        ratio,
    })
}

/// Worst ratio of a pointwise Fourier bound and where it occurred.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointwiseReport {
    /// Supremum of the left side over the right side with unit constant.
    pub constant: f64,
    pub time: f64,
    pub mode: (i64, i64),
}

fn pointwise(
    samples: &[Sample],
    r0: &SpectralField,
    lhs: impl Fn(usize, usize) -> Result<f64>,
) -> Result<PointwiseReport> {
    let grid = *r0.grid();
    let l2 = grid.box_length().powi(2);
    let h3_sq = sobolev_norm(r0, 3.0).powi(2);
    let mut best = PointwiseReport {
        constant: 0.0,
        time: 0.0,
        mode: (0, 0),
    };
    if h3_sq == 0.0 {
        return Ok(best);
    }
    for (s, (t, f)) in samples.iter().enumerate() {
        f.grid().ensure_same(&grid)?;
        if *t <= 0.0 {
            continue;
        }
        let scale = t.sqrt() * h3_sq;
        for idx in 0..grid.len() {
            let p = grid.xi_sq(idx);
            if p == 0.0 {
                continue;
            }
            let v = l2 * lhs(s, idx)? * symbol_a(p) / (p.sqrt() * scale);
            if v > best.constant {
                best = PointwiseReport {
                    constant: v,
                    time: *t,
                    mode: grid.wavevector(idx),
                };
            }
        }
    }
    Ok(best)
}

/// `sup (|r̂(t,ξ)| − |r̂₀(ξ)|) a(ξ) / (|ξ| √t ‖r₀‖²_{H³})` over an unforced
/// run, with `r̂ = L² × coefficient`. Samples at `t = 0` and the mean mode
/// are skipped.
pub fn pointwise_bound_check(samples: &[Sample], r0: &SpectralField) -> Result<PointwiseReport> {
    pointwise(samples, r0, |s, idx| {
        Ok(samples[s].1.coeffs()[idx].norm() - r0.coeffs()[idx].norm())
    })
}

/// `sup |ẑ(t,ξ)| a(ξ) / (|ξ| √t ‖r₀‖²_{H³})` for `z = r − w` over paired
/// samples.
pub fn pointwise_difference_check(
    nonlinear: &[Sample],
    linear: &[Sample],
    r0: &SpectralField,
) -> Result<PointwiseReport> {
    same_times(nonlinear, linear)?;
    pointwise(nonlinear, r0, |s, idx| {
        Ok((nonlinear[s].1.coeffs()[idx] - linear[s].1.coeffs()[idx]).norm())
    })
}
