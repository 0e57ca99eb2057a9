//! Radial-quadrature evaluation of whole-plane linear decay moments.
//!
//! `M_k(t) = 2π ∫₀^∞ e^{−μh(ρ)t} ρ^k |ŵ₀|(ρ) ρ dρ` bounds `‖∇^k w(t)‖_{L∞}`
//! up to `(2π)^{−2}`; `D_k(t)` is the same moment of the Duhamel term driven by
//! `K(1+τ)^{−1−η} f̂(ξ)`, with the `1/a(ρ)` factor of the reformulation.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_with_points, simpson, Tolerance};
use crate::spectral::{symbol_a, symbol_h};

/// Relative accuracy of [`moment_integral`].
pub const MOMENT_TOLERANCE: f64 = 1e-9;
/// Relative accuracy of [`duhamel_moment`].
pub const DUHAMEL_TOLERANCE: f64 = 1e-8;

/// Exponent beyond which `e^{−x}` is treated as zero.
const EXP_CUTOFF: f64 = 745.0;

/// Radial modulus of a Fourier transform.
#[derive(Clone, Debug, PartialEq)]
pub enum RadialProfile {
    /// `e^{−ρ²/(2w²)}`
    Gaussian { width: f64 },
    /// `1` on `ρ ≤ R`, `0` beyond.
    CompactIndicator { radius: f64 },
    /// Piecewise linear through `(ρᵢ, vᵢ)`, zero beyond the last node.
    Tabulated { rho: Vec<f64>, values: Vec<f64> },
}

impl RadialProfile {
    pub fn gaussian(width: f64) -> Result<Self> {
        if !(width > 0.0 && width.is_finite()) {
            return Err(Error::InvalidArgument(format!("gaussian width {width}")));
        }
        Ok(RadialProfile::Gaussian { width })
    }

    pub fn indicator(radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidArgument(format!("indicator radius {radius}")));
        }
        Ok(RadialProfile::CompactIndicator { radius })
    }

    pub fn tabulated(rho: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if rho.len() != values.len() || rho.len() < 2 {
            return Err(Error::InvalidArgument(
                "tabulated profile needs at least two (rho, value) pairs".into(),
            ));
        }
        if rho[0] < 0.0 || rho.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidArgument(
                "tabulated radii must start at ≥ 0 and increase".into(),
            ));
        }
        if values.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::InvalidArgument(
                "tabulated values must be finite and nonnegative".into(),
            ));
        }
        Ok(RadialProfile::Tabulated { rho, values })
    }

    pub fn value(&self, r: f64) -> f64 {
        match self {
            RadialProfile::Gaussian { width } => (-0.5 * (r / width).powi(2)).exp(),
            RadialProfile::CompactIndicator { radius } => {
                if r <= *radius {
                    1.0
                } else {
                    0.0
                }
            }
            RadialProfile::Tabulated { rho, values } => {
                if r < rho[0] || r > rho[rho.len() - 1] {
                    return 0.0;
                }
                let i = rho.partition_point(|&x| x <= r).clamp(1, rho.len() - 1);
                let (x0, x1) = (rho[i - 1], rho[i]);
                let s = (r - x0) / (x1 - x0);
                values[i - 1] * (1.0 - s) + values[i] * s
            }
        }
    }

    /// Radius past which the profile is zero in double precision.
    pub fn support_end(&self) -> f64 {
        match self {
            RadialProfile::Gaussian { width } => width * (2.0 * EXP_CUTOFF).sqrt(),
            RadialProfile::CompactIndicator { radius } => *radius,
            RadialProfile::Tabulated { rho, .. } => rho[rho.len() - 1],
        }
    }

    /// Points where the profile is not smooth.
    fn kinks(&self) -> Vec<f64> {
        match self {
            RadialProfile::Gaussian { width } => vec![*width],
            RadialProfile::CompactIndicator { radius } => vec![*radius],
            RadialProfile::Tabulated { rho, .. } => rho.clone(),
        }
    }
}

impl fmt::Display for RadialProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RadialProfile::Gaussian { width } => write!(f, "gaussian:{width}"),
            RadialProfile::CompactIndicator { radius } => write!(f, "indicator:{radius}"),
            RadialProfile::Tabulated { rho, .. } => write!(f, "tabulated:{}", rho.len()),
        }
    }
}

impl FromStr for RadialProfile {
    type Err = Error;

    /// `gaussian:<width>` or `indicator:<radius>`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidArgument(format!("profile `{s}`: expected kind:value")))?;
        let x: f64 = arg
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("profile `{s}`: bad number")))?;
        match kind.trim() {
            "gaussian" => RadialProfile::gaussian(x),
            "indicator" | "compact_indicator" => RadialProfile::indicator(x),
            other => Err(Error::InvalidArgument(format!("unknown profile kind `{other}`"))),
        }
    }
}

/// Radius where `μh(ρ)t = x`, using `h ≈ ρ⁴` for small `ρ` and `h ≈ ρ²` for large.
fn rate_radius(mu: f64, t: f64, x: f64) -> f64 {
    let s = x / (mu * t);
    if s < 1.0 {
        s.powf(0.25)
    } else {
        s.sqrt()
    }
}

/// Breakpoints on `[0, end]` for an integrand damped by `e^{−μh(ρ)t}`; also
/// returns the effective upper limit.
fn radial_points(profile: &RadialProfile, mu: f64, t: f64) -> Vec<f64> {
    let mut end = profile.support_end();
    let mut pts = vec![0.0];
    if mu * t > 0.0 {
        end = end.min(rate_radius(mu, t, EXP_CUTOFF).max(1e-300));
        for x in [0.01, 0.1, 1.0, 4.0, 20.0, 100.0] {
            pts.push(rate_radius(mu, t, x));
        }
    }
    pts.extend(profile.kinks());
    pts.push(end);
    pts.retain(|&p| p >= 0.0 && p <= end);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

fn validate(mu: f64, t: f64) -> Result<()> {
    if !(mu >= 0.0 && mu.is_finite()) {
        return Err(Error::InvalidArgument(format!("mu = {mu}")));
    }
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::InvalidArgument(format!("t = {t}")));
    }
    Ok(())
}

/// `M_k(t)`.
pub fn moment_integral(profile: &RadialProfile, k: u32, mu: f64, t: f64) -> Result<f64> {
    validate(mu, t)?;
    let pts = radial_points(profile, mu, t);
    let f = |r: f64| {
        let e = mu * symbol_h(r * r) * t;
        if e > EXP_CUTOFF {
            0.0
        } else {
            (-e).exp() * r.powi(k as i32 + 1) * profile.value(r)
        }
    };
    let est = integrate_with_points(f, &pts, Tolerance::relative(0.1 * MOMENT_TOLERANCE))?;
    Ok(2.0 * PI * est.value)
}

/// Fixed-step Simpson evaluation of `M_k(t)` over the same effective support;
/// an independent check of [`moment_integral`].
pub fn moment_integral_simpson(
    profile: &RadialProfile,
    k: u32,
    mu: f64,
    t: f64,
    intervals: usize,
) -> Result<f64> {
    validate(mu, t)?;
    let pts = radial_points(profile, mu, t);
    let end = pts[pts.len() - 1];
    let f = |r: f64| (-mu * symbol_h(r * r) * t).exp() * r.powi(k as i32 + 1) * profile.value(r);
    Ok(2.0 * PI * simpson(f, 0.0, end, intervals))
}

/// `∫₀ᵗ e^{−λ(t−τ)} (1+τ)^{−1−η} dτ`.
pub fn duhamel_time_factor(lambda: f64, eta: f64, t: f64) -> Result<f64> {
    if t == 0.0 {
        return Ok(0.0);
    }
    if lambda == 0.0 {
        return Ok((1.0 - (1.0 + t).powf(-eta)) / eta);
    }
    // in s = t − τ the exponential is fixed at the origin
    let g = |s: f64| (-lambda * s).exp() * (1.0 + t - s).powf(-1.0 - eta);
    let mut pts = vec![0.0, t];
    for c in [1.0, 8.0, 40.0] {
        pts.push(c / lambda);
    }
    let mut tau = 1.0;
    while tau < t {
        pts.push(t - tau);
        tau *= 10.0;
    }
    pts.retain(|&p| (0.0..=t).contains(&p));
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let tol = Tolerance::relative(0.01 * DUHAMEL_TOLERANCE).with_absolute(1e-300);
    Ok(integrate_with_points(g, &pts, tol)?.value)
}

/// `D_k(t) = 2π ∫ ρ^{k+1} d(ρ) |f̂|(ρ) K ∫₀ᵗ e^{−μh(ρ)(t−τ)}(1+τ)^{−1−η} dτ dρ`.
pub fn duhamel_moment(
    profile_f: &RadialProfile,
    k: u32,
    mu: f64,
    eta: f64,
    amplitude: f64,
    t: f64,
) -> Result<f64> {
    validate(mu, t)?;
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::InvalidArgument(format!("eta = {eta} outside (0, 1)")));
    }
    if amplitude == 0.0 || t == 0.0 {
        return Ok(0.0);
    }
    let end = profile_f.support_end();
    let mut pts = vec![0.0, end];
    if mu * t > 0.0 {
        for x in [0.01, 0.1, 1.0, 4.0, 20.0, 100.0] {
            pts.push(rate_radius(mu, t, x));
        }
    }
    pts.extend(profile_f.kinks());
    pts.retain(|&p| (0.0..=end).contains(&p));
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let mut failure = None;
    let f = |r: f64| {
        let xi_sq = r * r;
        let p = profile_f.value(r);
        if p == 0.0 {
            return 0.0;
        }
        match duhamel_time_factor(mu * symbol_h(xi_sq), eta, t) {
            Ok(g) => r.powi(k as i32 + 1) * p * g / symbol_a(xi_sq),
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        }
    };
    let est = integrate_with_points(f, &pts, Tolerance::relative(0.1 * DUHAMEL_TOLERANCE));
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(2.0 * PI * amplitude * est?.value)
}

/// `n` points log-spaced on `[t0, t1]`, endpoints included.
pub fn log_spaced(t0: f64, t1: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![t0];
    }
    let (a, b) = (t0.ln(), t1.ln());
    (0..n)
        .map(|i| {
            if i == n - 1 {
                t1
            } else {
                (a + (b - a) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}

/// A sampled decay curve.
#[derive(Clone, Debug, PartialEq)]
pub struct DecaySeries {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

impl DecaySeries {
    pub fn new(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::InvalidArgument("times and values differ in length".into()));
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidArgument("times must increase strictly".into()));
        }
        Ok(DecaySeries { times, values })
    }

    pub fn from_fn(times: Vec<f64>, mut f: impl FnMut(f64) -> Result<f64>) -> Result<Self> {
        let values = times.iter().map(|&t| f(t)).collect::<Result<Vec<_>>>()?;
        DecaySeries::new(times, values)
    }

    /// `(1+t)^{rate} · value`.
    pub fn envelope(&self, rate: f64) -> Vec<f64> {
        self.times
            .iter()
            .zip(&self.values)
            .map(|(t, v)| (1.0 + t).powf(rate) * v)
            .collect()
    }

    pub fn fit_exponent(&self, window: (f64, f64)) -> Result<PowerFit> {
        fit_exponent(self, window)
    }
}

/// Least-squares fit `log v = a + slope · log t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PowerFit {
    pub slope: f64,
    pub stderr: f64,
    pub intercept: f64,
    pub samples: usize,
}

/// Fits the log-log slope over the samples with `t` inside `window`.
pub fn fit_exponent(series: &DecaySeries, window: (f64, f64)) -> Result<PowerFit> {
    let pts: Vec<(f64, f64)> = series
        .times
        .iter()
        .zip(&series.values)
        .filter(|(t, _)| **t >= window.0 && **t <= window.1)
        .map(|(t, v)| (*t, *v))
        .collect();
    if pts.len() < 8 {
        return Err(Error::InvalidArgument(format!(
            "{} samples in window [{}, {}], need at least 8",
            pts.len(),
            window.0,
            window.1
        )));
    }
    if let Some((t, v)) = pts.iter().find(|(t, v)| !(*v > 0.0) || !(*t > 0.0)) {
        return Err(Error::InvalidArgument(format!(
            "nonpositive sample {v} at t = {t}"
        )));
    }
    let n = pts.len() as f64;
    let xs: Vec<f64> = pts.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let stderr = (ssr / (n - 2.0) / sxx).sqrt();
    Ok(PowerFit {
        slope,
        stderr,
        intercept,
        samples: pts.len(),
    })
}

/// Shape of an envelope `(1+t)^{rate}·value` over a window.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnvelopeReport {
    pub sup: f64,
    /// Largest relative rise between consecutive samples (≤ 0 when monotone).
    pub max_rise: f64,
    /// Sup over the final decade of the window divided by the sup before it.
    pub tail_ratio: f64,
}

impl EnvelopeReport {
    pub fn new(times: &[f64], env: &[f64]) -> Self {
        let sup = env.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let max_rise = env
            .windows(2)
            .map(|w| (w[1] - w[0]) / w[0].abs().max(f64::MIN_POSITIVE))
            .fold(f64::NEG_INFINITY, f64::max);
        let t_last = times.last().copied().unwrap_or(0.0);
        let (mut head, mut tail) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for (t, e) in times.iter().zip(env) {
            if *t >= t_last / 10.0 {
                tail = tail.max(*e);
            } else {
                head = head.max(*e);
            }
        }
        let tail_ratio = if head.is_finite() && head > 0.0 {
            tail / head
        } else {
            1.0
        };
        EnvelopeReport {
            sup,
            max_rise,
            tail_ratio,
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.sup.is_finite()
    }

    /// Non-increasing up to a relative slack `tol` per sample.
    pub fn is_non_increasing(&self, tol: f64) -> bool {
        self.max_rise <= tol
    }

    /// The last decade does not exceed what came before.
    pub fn plateaus(&self, tol: f64) -> bool {
        self.tail_ratio <= 1.0 + tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_mass_at_zero_time() {
        let g = RadialProfile::gaussian(1.0).unwrap();
        let m = moment_integral(&g, 0, 1.0, 0.0).unwrap();
        assert!((m - 2.0 * PI).abs() <= 1e-9 * 2.0 * PI);
        // ∫ρ³e^{−ρ²/2} = 2
        let m2 = moment_integral(&g, 2, 1.0, 0.0).unwrap();
        assert!((m2 - 4.0 * PI).abs() <= 1e-9 * 4.0 * PI);
    }

    #[test]
    fn indicator_slope_is_minus_half() {
        let p = RadialProfile::indicator(1.0).unwrap();
        let times = log_spaced(1e2, 1e6, 32);
        let s = DecaySeries::from_fn(times, |t| moment_integral(&p, 0, 1.0, t)).unwrap();
        let fit = s.fit_exponent((1e2, 1e6)).unwrap();
        assert!((fit.slope + 0.5).abs() <= 0.03, "{fit:?}");
    }

    #[test]
    fn moments_decrease_in_time() {
        let p = RadialProfile::gaussian(0.7).unwrap();
        for k in [0, 1, 3] {
            let mut prev = f64::INFINITY;
            for t in log_spaced(1e-2, 1e7, 40) {
                let m = moment_integral(&p, k, 1.0, t).unwrap();
                assert!(m < prev && m > 0.0);
                prev = m;
            }
        }
    }

    #[test]
    fn simpson_cross_check() {
        let p = RadialProfile::gaussian(1.0).unwrap();
        for (k, t) in [(0, 1.0), (1, 1e3), (3, 1e5)] {
            let a = moment_integral(&p, k, 1.0, t).unwrap();
            let b = moment_integral_simpson(&p, k, 1.0, t, 20_000).unwrap();
            assert!((a - b).abs() <= 1e-7 * a, "k={k} t={t}: {a} vs {b}");
        }
    }

    #[test]
    fn duhamel_edges() {
        let p = RadialProfile::gaussian(1.0).unwrap();
        assert_eq!(duhamel_moment(&p, 1, 1.0, 0.75, 0.0, 10.0).unwrap(), 0.0);
        assert_eq!(duhamel_moment(&p, 1, 1.0, 0.75, 1.0, 0.0).unwrap(), 0.0);
        assert!(duhamel_moment(&p, 1, 1.0, 1.5, 1.0, 1.0).is_err());
    }

    #[test]
    fn time_factor_closed_forms() {
        // λ = 0
        let v = duhamel_time_factor(0.0, 0.5, 3.0).unwrap();
        assert!((v - (1.0 - 0.5) / 0.5).abs() < 1e-15);
        // η → the integrand e^{−λ(t−τ)}(1+τ)^{−1−η}; compare with Simpson
        for (lambda, t) in [(0.3, 5.0), (50.0, 200.0), (1e-4, 1e4)] {
            let a = duhamel_time_factor(lambda, 0.75, t).unwrap();
            let b = simpson(
                |tau| (-lambda * (t - tau)).exp() * (1.0 + tau).powf(-1.75),
                0.0,
                t,
                2_000_000,
            );
            assert!((a - b).abs() <= 1e-9 * a, "{lambda} {t}: {a} {b}");
        }
    }

    #[test]
    fn fit_synthetic_power_law() {
        let times = log_spaced(1.0, 1e4, 16);
        let s = DecaySeries::from_fn(times, |t| Ok(3.0 * t.powf(-0.5))).unwrap();
        let fit = fit_exponent(&s, (1.0, 1e4)).unwrap();
        assert!((fit.slope + 0.5).abs() <= 1e-12);
        assert!(fit.stderr <= 1e-12);
        assert!(fit_exponent(&s, (1.0, 10.0)).is_err());
        let bad = DecaySeries::new(s.times.clone(), vec![0.0; 16]).unwrap();
        assert!(fit_exponent(&bad, (1.0, 1e4)).is_err());
    }

    #[test]
    fn envelope_report() {
        let t = log_spaced(1.0, 1e3, 10);
        let e: Vec<f64> = t.iter().map(|x| 1.0 + 1.0 / x).collect();
        let r = EnvelopeReport::new(&t, &e);
        assert!(r.is_bounded() && r.is_non_increasing(0.0) && r.plateaus(0.0));
        let rising: Vec<f64> = t.iter().map(|x| x.ln()).collect();
        let r = EnvelopeReport::new(&t, &rising);
        assert!(!r.is_non_increasing(1e-3) && !r.plateaus(0.1));
    }

    #[test]
    fn profiles_parse_and_evaluate() {
        let g: RadialProfile = "gaussian:2".parse().unwrap();
        assert_eq!(g, RadialProfile::Gaussian { width: 2.0 });
        assert!("ring:1".parse::<RadialProfile>().is_err());
        assert!("gaussian:-1".parse::<RadialProfile>().is_err());
        let t = RadialProfile::tabulated(vec![0.0, 1.0, 2.0], vec![1.0, 0.5, 0.0]).unwrap();
        assert_eq!(t.value(0.5), 0.75);
        assert_eq!(t.value(3.0), 0.0);
        assert_eq!(t.value(2.0), 0.0);
        assert!(RadialProfile::tabulated(vec![0.0, 0.0], vec![1.0, 1.0]).is_err());
    }
}
