//! Derivatives, projections and quadratic forms evaluated mode-wise.
//!
//! Every derivative zeroes the Nyquist rows and columns of its output: odd
//! derivatives have no real-valued meaning there, and applying the same rule
//! to even ones keeps all operators on one common band.

use num_complex::Complex64;

use super::field::SpectralField;
use crate::error::Result;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn derivative(u: &SpectralField, symbol: impl Fn(f64, f64) -> Complex64) -> SpectralField {
    let grid = *u.grid();
    u.map_indexed(|idx, c| {
        if grid.is_nyquist(idx) {
            Complex64::default()
        } else {
            let (x1, x2) = grid.xi(idx);
            c * symbol(x1, x2)
        }
    })
}

/// `(∂₁u, ∂₂u)`.
pub fn gradient(u: &SpectralField) -> (SpectralField, SpectralField) {
    (derivative(u, |x1, _| I * x1), derivative(u, |_, x2| I * x2))
}

/// `∇⊥u = (−∂₂u, ∂₁u)`.
pub fn perp_gradient(u: &SpectralField) -> (SpectralField, SpectralField) {
    (derivative(u, |_, x2| -I * x2), derivative(u, |x1, _| I * x1))
}

/// `∂₁a + ∂₂b`.
pub fn divergence(a: &SpectralField, b: &SpectralField) -> Result<SpectralField> {
    a.ensure_same_grid(b)?;
    let grid = *a.grid();
    let bc = b.coeffs();
    Ok(a.map_indexed(|idx, c| {
        if grid.is_nyquist(idx) {
            Complex64::default()
        } else {
            let (x1, x2) = grid.xi(idx);
            I * (c * x1 + bc[idx] * x2)
        }
    }))
}

pub fn laplacian(u: &SpectralField) -> SpectralField {
    derivative(u, |x1, x2| Complex64::new(-(x1 * x1 + x2 * x2), 0.0))
}

pub fn bilaplacian(u: &SpectralField) -> SpectralField {
    derivative(u, |x1, x2| {
        let s = x1 * x1 + x2 * x2;
        Complex64::new(s * s, 0.0)
    })
}

/// Sharp Galerkin cutoff: keeps modes with `|ξ|² ≤ n_cut`.
pub fn project_jn(u: &SpectralField, n_cut: f64) -> SpectralField {
    let grid = *u.grid();
    u.map_indexed(|idx, c| {
        if grid.xi_sq(idx) <= n_cut {
            c
        } else {
            Complex64::default()
        }
    })
}

/// `L²(torus)` pairing `∫ u v`, via Parseval.
pub fn inner_product(u: &SpectralField, v: &SpectralField) -> Result<f64> {
    u.ensure_same_grid(v)?;
    let l = u.grid().box_length();
    let sum: f64 = u
        .coeffs()
        .iter()
        .zip(v.coeffs())
        .map(|(a, b)| a.re * b.re + a.im * b.im)
        .sum();
    Ok(l * l * sum)
}

/// `L² Σ w(|ξ|²) |û|²`, the quadratic form of a radial symbol.
pub fn weighted_norm_sq(u: &SpectralField, w: impl Fn(f64) -> f64) -> f64 {
    let grid = *u.grid();
    let l = grid.box_length();
    let sum: f64 = u
        .coeffs()
        .iter()
        .enumerate()
        .map(|(idx, c)| {
            let n2 = c.norm_sqr();
            if n2 == 0.0 {
                0.0
            } else {
                w(grid.xi_sq(idx)) * n2
            }
        })
        .sum();
    l * l * sum
}

/// `L² Re Σ w(|ξ|²) û conj(v̂)`, the bilinear form of a radial symbol.
pub fn weighted_inner(u: &SpectralField, v: &SpectralField, w: impl Fn(f64) -> f64) -> Result<f64> {
    u.ensure_same_grid(v)?;
    let grid = *u.grid();
    let l = grid.box_length();
    let sum: f64 = u
        .coeffs()
        .iter()
        .zip(v.coeffs())
        .enumerate()
        .map(|(idx, (a, b))| {
            let re = a.re * b.re + a.im * b.im;
            if re == 0.0 {
                0.0
            } else {
                w(grid.xi_sq(idx)) * re
            }
        })
        .sum();
    Ok(l * l * sum)
}

/// `‖u‖_{H^s} = (L² Σ (1+|ξ|²)^s |û|²)^{1/2}`.
pub fn sobolev_norm(u: &SpectralField, s: f64) -> f64 {
    if s == 0.0 {
        weighted_norm_sq(u, |_| 1.0).sqrt()
    } else {
        weighted_norm_sq(u, |x| (1.0 + x).powf(s)).sqrt()
    }
}
