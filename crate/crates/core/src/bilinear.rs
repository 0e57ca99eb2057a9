//! The transport operator `Λ(ρ, ζ) = div(∇⊥(Id − Δ)ρ · Δ²ζ)` and its
//! cancellation diagnostics.

use num_complex::Complex64;

use crate::error::Result;
use crate::spectral::dealias::Dealiaser;
use crate::spectral::ops::{
    bilaplacian, divergence, gradient, inner_product, perp_gradient, weighted_norm_sq,
};
use crate::spectral::{symbol_a, GridSpec, SpectralField};

/// Which of the two algebraically equal forms of `Λ` to evaluate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Route {
    /// `div(u Δ²ζ)`: two products, then a divergence.
    Divergence,
    /// `u · ∇Δ²ζ`: uses `div u = 0`, one product.
    #[default]
    Advective,
}

/// `Λ(ρ, ζ)` together with the velocity that produced it.
#[derive(Clone, Debug)]
pub struct BilinearResult {
    pub lambda: SpectralField,
    pub velocity: (SpectralField, SpectralField),
}

/// `(Id − Δ)ρ`. Nyquist modes pass through unchanged.
pub fn one_minus_laplacian(rho: &SpectralField) -> SpectralField {
    let grid = *rho.grid();
    rho.map_indexed(|idx, c| c * (1.0 + grid.xi_sq(idx)))
}

/// `(Id − Δ + Δ²)ρ`.
pub fn operator_a(rho: &SpectralField) -> SpectralField {
    let grid = *rho.grid();
    rho.map_indexed(|idx, c| c * symbol_a(grid.xi_sq(idx)))
}

/// `u = ∇⊥(Id − Δ)ρ`.
pub fn velocity(rho: &SpectralField) -> (SpectralField, SpectralField) {
    perp_gradient(&one_minus_laplacian(rho))
}

/// Reusable evaluator holding the product machinery for one grid.
#[derive(Clone, Debug)]
pub struct Bilinear {
    dealiaser: Dealiaser,
    /// `(ξ₁, ξ₂, |ξ|²)` per native mode.
    symbols: Vec<(f64, f64, f64)>,
}

impl Bilinear {
    pub fn new(grid: GridSpec) -> Self {
        let symbols = (0..grid.len())
            .map(|i| {
                let (x1, x2) = grid.xi(i);
                (x1, x2, grid.xi_sq(i))
            })
            .collect();
        Bilinear {
            dealiaser: Dealiaser::new(grid),
            symbols,
        }
    }

    pub fn grid(&self) -> &GridSpec {
        self.dealiaser.grid()
    }

    /// Dealiased `a₁b₁ + a₂b₂`, the mean coefficient left as computed.
    pub fn dot(
        &self,
        a: &(SpectralField, SpectralField),
        b: &(SpectralField, SpectralField),
    ) -> SpectralField {
        let pa = self.dealiaser.to_physical_pair(&a.0, Some(&a.1));
        let pb = self.dealiaser.to_physical_pair(&b.0, Some(&b.1));
        let buf = pa
            .iter()
            .zip(&pb)
            .map(|(x, y)| Complex64::new(x.re * y.re + x.im * y.im, 0.0))
            .collect();
        self.dealiaser.to_spectral_real(buf)
    }

    fn lambda_with_velocity(
        &self,
        u: &(SpectralField, SpectralField),
        zeta: &SpectralField,
        route: Route,
    ) -> Result<SpectralField> {
        let w = bilaplacian(zeta);
        match route {
            Route::Advective => {
                let mut out = self.dot(u, &gradient(&w));
                // Λ is a divergence; the mean of u·∇w is round-off only.
                out.coeffs_mut()[0] = Complex64::default();
                Ok(out)
            }
            Route::Divergence => {
                let pu = self.dealiaser.to_physical_pair(&u.0, Some(&u.1));
                let pw = self.dealiaser.to_physical_pair(&w, None);
                let buf = pu.iter().zip(&pw).map(|(x, y)| x * y.re).collect();
                let (f1, f2) = self.dealiaser.to_spectral_pair(buf);
                divergence(&f1, &f2)
            }
        }
    }

    pub fn lambda_route(
        &self,
        rho: &SpectralField,
        zeta: &SpectralField,
        route: Route,
    ) -> Result<BilinearResult> {
        rho.grid().ensure_same(zeta.grid())?;
        self.grid().ensure_same(rho.grid())?;
        let velocity = velocity(rho);
        let lambda = self.lambda_with_velocity(&velocity, zeta, route)?;
        Ok(BilinearResult { lambda, velocity })
    }

    /// `Λ(ρ, ζ)` by the advective route, with the derivative symbols applied
    /// while filling the padded buffers.
    pub fn lambda(&self, rho: &SpectralField, zeta: &SpectralField) -> Result<SpectralField> {
        rho.grid().ensure_same(zeta.grid())?;
        self.grid().ensure_same(rho.grid())?;
        let (rc, zc) = (rho.coeffs(), zeta.coeffs());
        let sym = &self.symbols;
        // u₁ + i u₂ with u = ∇⊥(Id − Δ)ρ, i.e. (−iξ₂, iξ₁)(1 + |ξ|²)ρ̂
        let pu = self.dealiaser.to_physical_with(|i| {
            let (x1, x2, p) = sym[i];
            let c = rc[i] * (1.0 + p);
            Complex64::new(x2 * c.im - x1 * c.re, -x2 * c.re - x1 * c.im)
        });
        // ∂₁w + i ∂₂w with w = Δ²ζ
        let pg = self.dealiaser.to_physical_with(|i| {
            let (x1, x2, p) = sym[i];
            let c = zc[i] * (p * p);
            Complex64::new(-x1 * c.im - x2 * c.re, x1 * c.re - x2 * c.im)
        });
        let buf = pu
            .iter()
            .zip(&pg)
            .map(|(x, y)| Complex64::new(x.re * y.re + x.im * y.im, 0.0))
            .collect();
        let mut out = self.dealiaser.to_spectral_real(buf);
        out.coeffs_mut()[0] = Complex64::default();
        Ok(out)
    }
}

pub fn lambda(rho: &SpectralField, zeta: &SpectralField) -> Result<SpectralField> {
    Bilinear::new(*rho.grid()).lambda(rho, zeta)
}

pub fn lambda_route(rho: &SpectralField, zeta: &SpectralField, route: Route) -> Result<SpectralField> {
    Ok(Bilinear::new(*rho.grid()).lambda_route(rho, zeta, route)?.lambda)
}

/// A pairing together with the Cauchy–Schwarz bound of its two factors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pairing {
    pub value: f64,
    pub scale: f64,
}

impl Pairing {
    fn of(a: &SpectralField, b: &SpectralField) -> Result<Self> {
        let value = inner_product(a, b)?;
        let scale = (weighted_norm_sq(a, |_| 1.0) * weighted_norm_sq(b, |_| 1.0)).sqrt();
        Ok(Pairing { value, scale })
    }

    /// `|value| / scale`, and 0 when both vanish.
    pub fn relative(&self) -> f64 {
        if self.scale == 0.0 {
            self.value.abs()
        } else {
            self.value.abs() / self.scale
        }
    }
}

/// `⟨Λ(ρ, ζ), (Id − Δ)ρ⟩`.
pub fn pairing_first(rho: &SpectralField, zeta: &SpectralField) -> Result<Pairing> {
    let l = lambda(rho, zeta)?;
    Pairing::of(&l, &one_minus_laplacian(rho))
}

/// `⟨Λ(ρ, ζ), Δ²ζ⟩`.
pub fn pairing_second(rho: &SpectralField, zeta: &SpectralField) -> Result<Pairing> {
    let l = lambda(rho, zeta)?;
    Pairing::of(&l, &bilaplacian(zeta))
}

/// Compares `⟨Λ(ρ, ρ), φ⟩` with `−∫ ∇⊥(Id − Δ)ρ · ∇φ (Id − Δ + Δ²)ρ`.
///
/// Returns `|lhs − rhs|` over the sum of the Cauchy–Schwarz bounds of both
/// sides, so the value is meaningful even when both sides vanish.
pub fn antisymmetry_residual(rho: &SpectralField, phi: &SpectralField) -> Result<f64> {
    rho.ensure_same_grid(phi)?;
    let op = Bilinear::new(*rho.grid());
    let res = op.lambda_route(rho, rho, Route::Advective)?;
    let lhs = Pairing::of(&res.lambda, phi)?;
    let transport = op.dot(&res.velocity, &gradient(phi));
    let rhs = Pairing::of(&transport, &operator_a(rho))?;
    let scale = lhs.scale + rhs.scale;
    let diff = (lhs.value + rhs.value).abs();
    Ok(if scale == 0.0 { diff } else { diff / scale })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::ops::{project_jn, sobolev_norm};
    use crate::spectral::random::white;
    use crate::spectral::DealiasPolicy;
    use std::f64::consts::PI;

    fn smooth(grid: GridSpec, seed: u64) -> SpectralField {
        // decay fast enough that Δ²·(Id−Δ) products stay well scaled
        let u = white(grid, seed, 1.0);
        u.map_indexed(|idx, c| c * (-0.05 * grid.xi_sq(idx)).exp())
    }

    #[test]
    fn velocity_of_constant_and_cosine() {
        let grid = GridSpec::new(16, 2.0 * PI).unwrap();
        let c = SpectralField::single_mode(grid, 0, 0, 3.0, 0.0);
        let (u1, u2) = velocity(&c);
        assert_eq!(u1.max_abs() + u2.max_abs(), 0.0);

        // ρ = cos(2x): u = ∇⊥(5 cos 2x) = (0, −10 sin 2x)
        let r = SpectralField::single_mode(grid, 2, 0, 1.0, 0.0);
        let (u1, u2) = velocity(&r);
        assert_eq!(u1.max_abs(), 0.0);
        let kappa: f64 = 2.0;
        let amp = 2.0 * u2.get(2, 0).norm();
        assert!((amp - (1.0 + kappa * kappa) * kappa).abs() < 1e-13);
    }

    #[test]
    fn routes_agree_and_mean_vanishes() {
        let grid = GridSpec::new(32, 2.0 * PI).unwrap();
        let rho = smooth(grid, 1);
        let zeta = smooth(grid, 2);
        let a = lambda_route(&rho, &zeta, Route::Divergence).unwrap();
        let b = lambda_route(&rho, &zeta, Route::Advective).unwrap();
        let norm = sobolev_norm(&a, 0.0);
        assert!(sobolev_norm(&(&a - &b), 0.0) <= 1e-12 * norm);
        assert_eq!(a.coeffs()[0], Complex64::default());
        assert_eq!(b.coeffs()[0], Complex64::default());
    }

    #[test]
    fn lambda_of_constant_and_single_mode() {
        let grid = GridSpec::new(16, 3.0).unwrap();
        let rho = smooth(grid, 3);
        let one = SpectralField::single_mode(grid, 0, 0, 1.0, 0.0);
        assert_eq!(lambda(&rho, &one).unwrap().max_abs(), 0.0);
        let c = SpectralField::single_mode(grid, 2, 1, 1.0, 0.4);
        let res = Bilinear::new(grid)
            .lambda_route(&c, &c, Route::Advective)
            .unwrap();
        let (g1, g2) = gradient(&bilaplacian(&c));
        // u ∥ k⊥ and ∇Δ²ρ ∥ k; only rounding survives
        let scale =
            4.0 * (res.velocity.0.max_abs() + res.velocity.1.max_abs()) * (g1.max_abs() + g2.max_abs());
        assert!(res.lambda.max_abs() <= 1e-13 * scale);
    }

    #[test]
    fn fused_lambda_matches_routes() {
        let grid = GridSpec::new(32, 3.0).unwrap();
        let rho = smooth(grid, 8);
        let zeta = smooth(grid, 9);
        let fused = lambda(&rho, &zeta).unwrap();
        let slow = Bilinear::new(grid)
            .lambda_route(&rho, &zeta, Route::Advective)
            .unwrap()
            .lambda;
        assert!(sobolev_norm(&(&fused - &slow), 0.0) <= 1e-13 * sobolev_norm(&slow, 0.0));
    }

    #[test]
    fn pairings_vanish() {
        let grid = GridSpec::new(32, 5.0).unwrap();
        let rho = smooth(grid, 4);
        let zeta = smooth(grid, 5);
        assert!(pairing_first(&rho, &zeta).unwrap().relative() <= 1e-12);
        assert!(pairing_second(&rho, &zeta).unwrap().relative() <= 1e-12);
        assert_eq!(
            pairing_first(&SpectralField::zeros(grid), &zeta).unwrap().value,
            0.0
        );
    }

    #[test]
    fn antisymmetry_cases() {
        let grid = GridSpec::new(32, 4.0).unwrap();
        let rho = smooth(grid, 6);
        let phi = smooth(grid, 7);
        assert!(antisymmetry_residual(&rho, &phi).unwrap() <= 1e-12);
        let one = SpectralField::single_mode(grid, 0, 0, 1.0, 0.0);
        assert!(antisymmetry_residual(&rho, &one).unwrap() <= 1e-12);
        let psi = one_minus_laplacian(&rho);
        assert!(antisymmetry_residual(&rho, &psi).unwrap() <= 1e-12);
    }

    #[test]
    fn galerkin_compatibility() {
        let grid = GridSpec::new(32, 2.0 * PI).unwrap();
        let cut = 40.0;
        let r = project_jn(&smooth(grid, 8), cut);
        let l = lambda(&r, &r).unwrap();
        let lhs = inner_product(&project_jn(&l, cut), &one_minus_laplacian(&r)).unwrap();
        let rhs = inner_product(&l, &one_minus_laplacian(&project_jn(&r, cut))).unwrap();
        let scale = Pairing::of(&l, &one_minus_laplacian(&r)).unwrap().scale;
        assert!((lhs - rhs).abs() <= 1e-12 * scale);
        assert!(lhs.abs() <= 1e-12 * scale);
    }

    #[test]
    fn two_thirds_breaks_cancellation_on_full_band_data() {
        let grid = GridSpec::new(32, 5.0)
            .unwrap()
            .with_dealias(DealiasPolicy::TwoThirdsTruncation);
        let rho = white(grid, 4, 1.0);
        let zeta = white(grid, 5, 1.0);
        assert!(pairing_first(&rho, &zeta).unwrap().relative() > 1e-8);
    }
}
