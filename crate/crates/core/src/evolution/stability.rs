//! Twin-run stability measurement against a Gronwall-shaped envelope
//! `ℰ[δr(t)] ≤ C ℰ[δr₀] exp(K ∫₀ᵗ ‖∇(Id − Δ)r²‖⁴_{L⁴})`.

use super::config::RunConfig;
use super::simulate::Simulation;
use crate::bilinear::one_minus_laplacian;
use crate::diagnostics::energy_first;
use crate::error::{Error, Result};
use crate::quadrature::cumulative_simpson;
use crate::spectral::ops::{gradient, sobolev_norm};
use crate::spectral::{inverse_transform, SpectralField};

/// Slack allowed above the envelope on the held-out half.
pub const ENVELOPE_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct StabilityReport {
    pub times: Vec<f64>,
    /// `ℰ[r¹ − r²]`
    pub energy_delta: Vec<f64>,
    /// `‖r¹ − r²‖_{H³}`
    pub h3_delta: Vec<f64>,
    /// `∫₀ᵗ ‖∇(Id − Δ)r²‖⁴_{L⁴}`
    pub gronwall_integral: Vec<f64>,
    /// `ℰ[δr(t)] / (C ℰ[δr₀] e^{K I(t)})`; at most 1 where the envelope holds.
    pub envelope_ratio: Vec<f64>,
    pub c: f64,
    pub k: f64,
    /// The envelope fitted on the first half of the samples also covers the
    /// second half.
    pub within_envelope: bool,
}

impl StabilityReport {
    pub fn sup_h3_delta(&self) -> f64 {
        self.h3_delta.iter().copied().fold(0.0, f64::max)
    }
}

/// `‖∇(Id − Δ)r‖⁴_{L⁴}` by physical-space quadrature.
pub fn gradient_l4_fourth(r: &SpectralField) -> f64 {
    let (g1, g2) = gradient(&one_minus_laplacian(r));
    let (g1, g2) = (inverse_transform(&g1), inverse_transform(&g2));
    let dx = r.grid().dx();
    let sum: f64 = g1
        .samples()
        .iter()
        .zip(g2.samples())
        .map(|(a, b)| {
            let m = a * a + b * b;
            m * m
        })
        .sum();
    sum * dx * dx
}

/// Runs `r¹` from the configured datum and `r²` from datum + `perturbation`
/// side by side, sampling at the diagnostics cadence.
///
/// The envelope is fitted on the first half of the samples: `K` is the
/// least-squares slope of `ln(ℰ[δr]/ℰ[δr₀])` against `I(t)`, clipped at 0,
/// and `C` is the smallest constant putting every first-half sample under
/// the curve. The second half is the test.
pub fn compare_runs(cfg: &RunConfig, perturbation: &SpectralField) -> Result<StabilityReport> {
    cfg.validate()?;
    let r0 = cfg.initial_condition.build(cfg.grid, cfg.seed)?;
    cfg.grid.ensure_same(perturbation.grid())?;
    let mut a = Simulation::with_state(cfg.clone(), r0.clone())?;
    let mut b = Simulation::with_state(cfg.clone(), &r0 + perturbation)?;
    let every = cfg.diagnostics_every;
    let mut times = Vec::new();
    let mut energy = Vec::new();
    let mut h3 = Vec::new();
    let mut l4 = Vec::new();
    loop {
        let last = a.is_finished();
        if a.step_index() % every == 0 || last {
            let delta = a.state() - b.state();
            times.push(a.time());
            energy.push(energy_first(&delta));
            h3.push(sobolev_norm(&delta, 3.0));
            l4.push(gradient_l4_fourth(b.state()));
        }
        if last {
            break;
        }
        let (ra, rb) = rayon::join(|| a.advance(), || b.advance());
        ra?;
        rb?;
    }
    let integral = if times.len() > 1 {
        cumulative_simpson(&times, &l4)?
    } else {
        vec![0.0]
    };
    let (c, k, ratio, ok) = fit_envelope(&energy, &integral)?;
    Ok(StabilityReport {
        times,
        energy_delta: energy,
        h3_delta: h3,
        gronwall_integral: integral,
        envelope_ratio: ratio,
        c,
        k,
        within_envelope: ok,
    })
}

fn fit_envelope(energy: &[f64], integral: &[f64]) -> Result<(f64, f64, Vec<f64>, bool)> {
    let e0 = energy[0];
    if e0 == 0.0 {
        if energy.iter().any(|&e| e != 0.0) {
            return Err(Error::InvalidArgument(
                "zero perturbation produced a nonzero difference".into(),
            ));
        }
        return Ok((1.0, 0.0, vec![0.0; energy.len()], true));
    }
    let half = energy.len().div_ceil(2);
    let pts: Vec<(f64, f64)> = (0..half)
        .filter(|&i| energy[i] > 0.0)
        .map(|i| (integral[i], (energy[i] / e0).ln()))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let k = slope.max(0.0);
    let log_c = pts
        .iter()
        .map(|p| p.1 - k * p.0)
        .fold(f64::NEG_INFINITY, f64::max);
    let c = log_c.exp();
    let ratio: Vec<f64> = energy
        .iter()
        .zip(integral)
        .map(|(e, i)| e / e0 / (log_c + k * i).exp())
        .collect();
    let ok = ratio.iter().all(|r| *r <= 1.0 + ENVELOPE_TOLERANCE);
    Ok((c, k, ratio, ok))
}
