//! Quadratic energy functionals, all evaluated as radial multiplier sums
//! `L² Σ w(|ξ|²) |φ̂|²`.

use crate::error::{Error, Result};
use crate::spectral::ops::{sobolev_norm, weighted_inner, weighted_norm_sq};
use crate::spectral::{symbol_a, SpectralField};

fn first_weight(p: f64) -> f64 {
    1.0 + p * (2.0 + p * (2.0 + p))
}

fn x_weight(p: f64) -> f64 {
    1.0 + p * (1.0 + p * (1.0 + p))
}

fn y_weight(p: f64) -> f64 {
    p * p * (1.0 + p * (1.0 + p))
}

/// `ℰ[φ] = (‖φ‖² + 2‖∇φ‖² + 2‖Δφ‖² + ‖∇Δφ‖²)/2`.
pub fn energy_first(phi: &SpectralField) -> f64 {
    0.5 * weighted_norm_sq(phi, first_weight)
}

/// `ℰ̃[φ] = (‖φ‖² + 2‖∇φ‖² + 3‖Δφ‖² + 2‖∇Δφ‖² + ‖Δ²φ‖²)/2`, i.e. `½‖𝒜φ‖²`.
pub fn energy_second(phi: &SpectralField) -> f64 {
    0.5 * weighted_norm_sq(phi, |p| {
        let a = symbol_a(p);
        a * a
    })
}

/// `ℰ_σ[φ] = ‖Δφ‖²_{H^σ} + ‖∇Δφ‖²_{H^σ} + ‖Δ²φ‖²_{H^σ}`.
pub fn energy_sigma(phi: &SpectralField, sigma: f64) -> f64 {
    weighted_norm_sq(phi, |p| (1.0 + p).powf(sigma) * y_weight(p))
}

/// `ℰ̃_s[φ] = ‖φ‖²_{H^s} + ‖∇φ‖²_{H^s} + ‖Δφ‖²_{H^s} + ‖∇Δφ‖²_{H^s}`.
pub fn energy_tilde_s(phi: &SpectralField, s: f64) -> f64 {
    weighted_norm_sq(phi, |p| (1.0 + p).powf(s) * x_weight(p))
}

/// `X = ‖φ‖² + ‖∇φ‖² + ‖Δφ‖² + ‖∇Δφ‖²`.
pub fn x_of(phi: &SpectralField) -> f64 {
    weighted_norm_sq(phi, x_weight)
}

/// `Y = ‖Δφ‖² + ‖∇Δφ‖² + ‖Δ²φ‖²`.
pub fn y_of(phi: &SpectralField) -> f64 {
    weighted_norm_sq(phi, y_weight)
}

/// Viscous rate of the first law, `μ(‖Δr‖² + 2‖∇Δr‖² + ‖Δ²r‖²)`.
pub fn dissipation_first(r: &SpectralField, mu: f64) -> f64 {
    mu * weighted_norm_sq(r, |p| p * p * (1.0 + p) * (1.0 + p))
}

/// Viscous rate of the second law,
/// `μ(‖Δr‖² + 2‖∇Δr‖² + 2‖Δ²r‖² + ‖∇Δ²r‖²)`.
pub fn dissipation_second(r: &SpectralField, mu: f64) -> f64 {
    mu * weighted_norm_sq(r, |p| p * p * (1.0 + p) * symbol_a(p))
}

/// Forcing work of the first law, `⟨f, (Id − Δ)r⟩`.
pub fn work_first(f: &SpectralField, r: &SpectralField) -> Result<f64> {
    weighted_inner(f, r, |p| 1.0 + p)
}

/// Forcing work of the second law, `⟨f, (Id − Δ + Δ²)r⟩`.
pub fn work_second(f: &SpectralField, r: &SpectralField) -> Result<f64> {
    weighted_inner(f, r, symbol_a)
}

/// Every functional at one instant.
#[derive(Clone, Debug, PartialEq)]
pub struct EnergyReport {
    pub e_first: f64,
    pub e_second: f64,
    /// One entry per requested `σ`, in request order.
    pub e_sigma: Vec<f64>,
    /// One entry per requested `s`, in request order.
    pub e_tilde_s: Vec<f64>,
    pub x: f64,
    pub y: f64,
    pub h3: f64,
    pub h4: f64,
}

impl EnergyReport {
    pub fn new(phi: &SpectralField, sigmas: &[f64], tilde_s: &[f64]) -> Result<Self> {
        if let Some(s) = sigmas
            .iter()
            .chain(tilde_s)
            .find(|s| !(s.is_finite() && **s >= 0.0))
        {
            return Err(Error::InvalidArgument(format!(
                "regularity index {s} must be finite and ≥ 0"
            )));
        }
        Ok(EnergyReport {
            e_first: energy_first(phi),
            e_second: energy_second(phi),
            e_sigma: sigmas.iter().map(|&s| energy_sigma(phi, s)).collect(),
            e_tilde_s: tilde_s.iter().map(|&s| energy_tilde_s(phi, s)).collect(),
            x: x_of(phi),
            y: y_of(phi),
            h3: sobolev_norm(phi, 3.0),
            h4: sobolev_norm(phi, 4.0),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::ops::{bilaplacian, gradient, inner_product, laplacian};
    use crate::spectral::random::white;
    use crate::spectral::GridSpec;
    use std::f64::consts::PI;

    fn norm_sq(u: &SpectralField) -> f64 {
        inner_product(u, u).unwrap()
    }

    fn grad_sq(u: &SpectralField) -> f64 {
        let (a, b) = gradient(u);
        norm_sq(&a) + norm_sq(&b)
    }

    #[test]
    fn cosine_first_energy() {
        let grid = GridSpec::new(16, 2.0 * PI).unwrap();
        let c = SpectralField::single_mode(grid, 1, 0, 1.0, 0.0);
        assert!((energy_first(&c) - 6.0 * PI * PI).abs() < 1e-12);
    }

    #[test]
    fn zero_field() {
        let grid = GridSpec::new(8, 1.0).unwrap();
        let z = SpectralField::zeros(grid);
        let r = EnergyReport::new(&z, &[0.5], &[0.5]).unwrap();
        assert_eq!(
            r.e_first + r.e_second + r.e_sigma[0] + r.e_tilde_s[0] + r.x + r.y,
            0.0
        );
    }

    #[test]
    fn matches_derivative_norms() {
        let grid = GridSpec::new(32, 3.0).unwrap();
        let phi = white(grid, 4, 1.0);
        let lap = laplacian(&phi);
        let l0 = norm_sq(&phi);
        let l1 = grad_sq(&phi);
        let l2 = norm_sq(&lap);
        let l3 = grad_sq(&lap);
        let l4 = norm_sq(&bilaplacian(&phi));
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * b.abs();
        assert!(close(energy_first(&phi), 0.5 * (l0 + 2.0 * l1 + 2.0 * l2 + l3)));
        assert!(close(
            energy_second(&phi),
            0.5 * (l0 + 2.0 * l1 + 3.0 * l2 + 2.0 * l3 + l4)
        ));
        assert!(close(x_of(&phi), l0 + l1 + l2 + l3));
        assert!(close(y_of(&phi), l2 + l3 + l4));
        assert!(close(energy_sigma(&phi, 0.0), y_of(&phi)));
        assert!(close(energy_tilde_s(&phi, 0.0), x_of(&phi)));
        assert!(close(
            energy_second(&phi) - energy_first(&phi),
            0.5 * (l2 + l3 + l4)
        ));
    }

    #[test]
    fn homogeneity_and_ordering() {
        let grid = GridSpec::new(16, 5.0).unwrap();
        let phi = white(grid, 9, 0.3);
        assert_eq!(energy_first(&phi.scaled(2.0)), 4.0 * energy_first(&phi));
        assert!(x_of(&phi) <= 2.0 * energy_first(&phi));
    }
}
