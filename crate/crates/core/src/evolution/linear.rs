//! Exact per-mode solution of `∂t ŵ + μh(ξ)ŵ = d(ξ) f̂(t, ξ)`.

use std::collections::HashMap;

use num_complex::Complex64;
use rayon::prelude::*;

use super::forcing::{locate, ForcingSpec};
use super::solver::phi_functions;
use crate::decay::duhamel_time_factor;
use crate::error::{Error, Result};
use crate::spectral::multiplier::exact_reciprocal;
use crate::spectral::{symbol_a, symbol_h, SpectralField};

/// `w(t)` for every requested time, in request order.
///
/// Separable forcing uses the adaptive Duhamel time factor (relative
/// tolerance 1e−10), evaluated once per lattice shell `k₁² + k₂²`. Tabulated
/// forcing is integrated in closed form against its piecewise-linear
/// interpolant.
pub fn linear_evolve(
    w0: &SpectralField,
    forcing: &ForcingSpec,
    mu: f64,
    times: &[f64],
) -> Result<Vec<SpectralField>> {
    let grid = *w0.grid();
    forcing.check_grid(&grid)?;
    if !(mu.is_finite() && mu >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "mu = {mu} must be finite and ≥ 0"
        )));
    }
    if let Some(t) = times.iter().find(|t| !(t.is_finite() && **t >= 0.0)) {
        return Err(Error::InvalidArgument(format!("time {t} must be finite and ≥ 0")));
    }
    let lambda: Vec<f64> = (0..grid.len()).map(|i| mu * symbol_h(grid.xi_sq(i))).collect();
    let d: Vec<f64> = (0..grid.len())
        .map(|i| exact_reciprocal(symbol_a(grid.xi_sq(i))))
        .collect();
    let shell = |i: usize| {
        let (k1, k2) = grid.wavevector(i);
        k1 * k1 + k2 * k2
    };
    times
        .iter()
        .map(|&t| {
            let free = w0.map_indexed(|i, c| c * (-lambda[i] * t).exp());
            let mut out = match forcing {
                ForcingSpec::Zero => free,
                ForcingSpec::SeparableDecaying {
                    profile,
                    amplitude,
                    eta,
                } => {
                    let mut shells: Vec<i64> = (0..grid.len())
                        .filter(|&i| profile.coeffs()[i] != Complex64::default())
                        .map(shell)
                        .collect();
                    shells.sort_unstable();
                    shells.dedup();
                    let factors: HashMap<i64, f64> = shells
                        .par_iter()
                        .map(|&s| {
                            let unit = grid.frequency_unit();
                            let lam = mu * symbol_h(unit * unit * s as f64);
                            duhamel_time_factor(lam, *eta, t)
                                .map(|g| (s, g))
                                .map_err(|e| match e {
                                    Error::Quadrature { error, tolerance, .. } => Error::Quadrature {
                                        what: format!("Duhamel factor on shell |k|² = {s} at t = {t}"),
                                        error,
                                        tolerance,
                                    },
                                    e => e,
                                })
                        })
                        .collect::<Result<_>>()?;
                    let g = profile.coeffs();
                    free.map_indexed(|i, c| {
                        if g[i] == Complex64::default() {
                            c
                        } else {
                            c + g[i] * (d[i] * amplitude * factors[&shell(i)])
                        }
                    })
                }
                ForcingSpec::Tabulated { times: nodes, fields } => {
                    let mut acc = free;
                    tabulated_duhamel(&mut acc, nodes, fields, &lambda, &d, t);
                    acc
                }
            };
            out.symmetrize();
            Ok(out)
        })
        .collect()
}

/// `∫₀^{s} e^{−λ(s−u)} (fa + (fb − fa) u/s) du` scaled by `e_b`, through
/// `s[fa(φ₁ − φ₂) + fb φ₂]` at `z = −λs`.
fn segment(lam: f64, s: f64, fa: Complex64, fb: Complex64, e_b: f64) -> Complex64 {
    if s <= 0.0 {
        return Complex64::default();
    }
    let (p1, p2, _) = phi_functions(-lam * s);
    (fa * (p1 - p2) + fb * p2) * (s * e_b)
}

fn tabulated_duhamel(
    acc: &mut SpectralField,
    nodes: &[f64],
    fields: &[SpectralField],
    lambda: &[f64],
    d: &[f64],
    t: f64,
) {
    // Pieces of [0, t]: constant before the first node, linear between
    // nodes, constant after the last.
    let mut pieces: Vec<(f64, f64)> = Vec::new();
    let mut a = 0.0;
    for &b in nodes.iter().chain(std::iter::once(&f64::INFINITY)) {
        let hi = b.min(t);
        if hi > a {
            pieces.push((a, hi));
        }
        a = a.max(b);
        if a >= t {
            break;
        }
    }
    let value_at = |i: usize, tau: f64| {
        let (j, w) = locate(nodes, tau);
        let c = fields[j].coeffs()[i];
        if w == 0.0 {
            c
        } else {
            c * (1.0 - w) + fields[j + 1].coeffs()[i] * w
        }
    };
    let out = acc.coeffs_mut();
    for (i, o) in out.iter_mut().enumerate() {
        if fields.iter().all(|f| f.coeffs()[i] == Complex64::default()) {
            continue;
        }
        let lam = lambda[i];
        let mut sum = Complex64::default();
        for &(lo, hi) in &pieces {
            let e_b = (-lam * (t - hi)).exp();
            sum += segment(lam, hi - lo, value_at(i, lo), value_at(i, hi), e_b);
        }
        *o += sum * d[i];
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::GridSpec;

    #[test]
    fn free_single_mode() {
        let grid = GridSpec::new(16, 3.0).unwrap();
        let w0 = SpectralField::single_mode(grid, 1, 2, 1.0, 0.4);
        let out = linear_evolve(&w0, &ForcingSpec::Zero, 0.7, &[0.0, 0.5, 2.0]).unwrap();
        let lam = 0.7 * symbol_h(grid.xi_sq(grid.index_of(1, 2)));
        for (w, t) in out.iter().zip([0.0, 0.5, 2.0]) {
            let exact = w0.scaled((-lam * t).exp());
            assert!((w - &exact).max_abs() <= 1e-15);
        }
    }

    #[test]
    fn constant_forcing_reaches_steady_state() {
        let grid = GridSpec::new(8, 2.0 * std::f64::consts::PI).unwrap();
        let f = SpectralField::single_mode(grid, 1, 0, 2.0, 0.0);
        let forcing = ForcingSpec::tabulated(vec![0.0], vec![f.clone()]).unwrap();
        let w0 = SpectralField::zeros(grid);
        let w = &linear_evolve(&w0, &forcing, 1.0, &[60.0]).unwrap()[0];
        // |ξ| = 1: d = 1/3, h = 2/3, so ŵ → f̂/2
        let expect = f.scaled(0.5);
        assert!((w - &expect).max_abs() < 1e-14);
    }

    #[test]
    fn tabulated_matches_quadrature() {
        let grid = GridSpec::new(8, 4.0).unwrap();
        let f0 = SpectralField::single_mode(grid, 1, 1, 1.0, 0.0);
        let f1 = SpectralField::single_mode(grid, 1, 1, 3.0, 0.5);
        let forcing = ForcingSpec::tabulated(vec![0.5, 1.5], vec![f0, f1]).unwrap();
        let w0 = SpectralField::zeros(grid);
        let t = 2.3;
        let w = &linear_evolve(&w0, &forcing, 0.8, &[t]).unwrap()[0];
        let idx = grid.index_of(1, 1);
        let p = grid.xi_sq(idx);
        let lam = 0.8 * symbol_h(p);
        let d = 1.0 / symbol_a(p);
        let brute = crate::quadrature::simpson(
            |tau| {
                let c = forcing.evaluate(tau).unwrap().coeffs()[idx];
                (-lam * (t - tau)).exp() * c.re
            },
            0.0,
            t,
            23_000,
        );
        assert!((w.coeffs()[idx].re - d * brute).abs() < 1e-9);
    }
}
