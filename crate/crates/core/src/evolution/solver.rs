//! Right-hand side of `∂t r = 𝒟̃(−Λ(r,r) + f) − μ h(D) r` and the exponential
//! Runge–Kutta steppers built around its diagonal part.

use num_complex::Complex64;

use super::config::{RunConfig, Stepper};
use super::forcing::ForcingSpec;
use crate::bilinear::{velocity, Bilinear};
use crate::error::{Error, Result};
use crate::spectral::multiplier::exact_reciprocal;
use crate::spectral::{inverse_transform, symbol_a, symbol_h, GridSpec, SpectralField};

/// `(φ₁(z), φ₂(z), φ₃(z))` with `φ_k(z) = Σ_j z^j/(j+k)!`.
pub fn phi_functions(z: f64) -> (f64, f64, f64) {
    if z.abs() < 1.0 {
        let (mut p1, mut p2, mut p3) = (0.0, 0.0, 0.0);
        // Horner on the truncated series; 1/20! is below the f64 epsilon.
        for j in (0..20).rev() {
            let j = j as f64;
            p1 = 1.0 + z * p1 / (j + 2.0);
            p2 = 1.0 + z * p2 / (j + 3.0);
            p3 = 1.0 + z * p3 / (j + 4.0);
        }
        (p1, 0.5 * p2, p3 / 6.0)
    } else {
        let em1 = z.exp_m1();
        let p1 = em1 / z;
        let p2 = (em1 - z) / (z * z);
        let p3 = (em1 - z - 0.5 * z * z) / (z * z * z);
        (p1, p2, p3)
    }
}

#[derive(Clone, Debug)]
enum Coefficients {
    /// `E = e^{−μh dt/2}` and `E²`.
    Lawson {
        e: Vec<f64>,
        e2: Vec<f64>,
    },
    Etd(Vec<EtdMode>),
}

#[derive(Clone, Copy, Debug)]
struct EtdMode {
    e: f64,
    e_half: f64,
    q: f64,
    f1: f64,
    f2: f64,
    f3: f64,
}

/// The discretised right-hand side for one configuration.
#[derive(Clone, Debug)]
pub struct Solver {
    grid: GridSpec,
    mu: f64,
    dt: f64,
    stepper: Stepper,
    nonlinear: bool,
    bilinear: Bilinear,
    /// `d` on the retained band, 0 outside `𝒥ₙ`.
    d_masked: Vec<f64>,
    h: Vec<f64>,
    mask: Option<Vec<bool>>,
    /// `𝒥ₙ f`, for work diagnostics.
    forcing: ForcingSpec,
    /// `𝒟̃ 𝒥ₙ f`, the forcing as it enters the tendency.
    forcing_d: ForcingSpec,
    coefficients: Coefficients,
}

impl Solver {
    pub fn new(cfg: &RunConfig) -> Result<Self> {
        cfg.validate()?;
        let grid = cfg.grid;
        let mask = cfg
            .galerkin_cut
            .map(|c| (0..grid.len()).map(|i| grid.xi_sq(i) <= c).collect::<Vec<_>>());
        // forcing is also cut to the non-Nyquist band the state lives in
        let keep = |i: usize| !grid.is_nyquist(i) && mask.as_ref().is_none_or(|m| m[i]);
        let d: Vec<f64> = (0..grid.len())
            .map(|i| exact_reciprocal(symbol_a(grid.xi_sq(i))))
            .collect();
        let d_masked: Vec<f64> = (0..grid.len())
            .map(|i| if keep(i) { d[i] } else { 0.0 })
            .collect();
        let h: Vec<f64> = (0..grid.len()).map(|i| symbol_h(grid.xi_sq(i))).collect();
        let mask_field = |f: &SpectralField, w: &[f64]| f.map_indexed(|i, c| c * w[i]);
        let ones: Vec<f64> = (0..grid.len()).map(|i| if keep(i) { 1.0 } else { 0.0 }).collect();
        let forcing = cfg.forcing.map_fields(|f| mask_field(f, &ones));
        let forcing_d = cfg.forcing.map_fields(|f| mask_field(f, &d_masked));
        let dt = cfg.dt;
        let coefficients = match cfg.stepper {
            Stepper::IfRk4 | Stepper::IfRk2 => {
                let e: Vec<f64> = h.iter().map(|h| (-cfg.mu * h * 0.5 * dt).exp()).collect();
                let e2 = h.iter().map(|h| (-cfg.mu * h * dt).exp()).collect();
                Coefficients::Lawson { e, e2 }
            }
            Stepper::EtdRk4 => Coefficients::Etd(
                h.iter()
                    .map(|h| {
                        let z = -cfg.mu * h * dt;
                        let (p1, p2, p3) = phi_functions(z);
                        EtdMode {
                            e: z.exp(),
                            e_half: (0.5 * z).exp(),
                            q: 0.5 * dt * phi_functions(0.5 * z).0,
                            f1: dt * (p1 - 3.0 * p2 + 4.0 * p3),
                            f2: dt * (p2 - 2.0 * p3),
                            f3: dt * (4.0 * p3 - p2),
                        }
                    })
                    .collect(),
            ),
        };
        Ok(Solver {
            grid,
            mu: cfg.mu,
            dt,
            stepper: cfg.stepper,
            nonlinear: cfg.nonlinear,
            bilinear: Bilinear::new(grid),
            d_masked,
            h,
            mask,
            forcing,
            forcing_d,
            coefficients,
        })
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn stepper(&self) -> Stepper {
        self.stepper
    }

    /// `𝒥ₙ u`, or `u` itself without a cut.
    pub fn project(&self, u: &SpectralField) -> SpectralField {
        match &self.mask {
            None => u.clone(),
            Some(m) => u.map_indexed(|i, c| if m[i] { c } else { Complex64::default() }),
        }
    }

    /// The forcing entering the run at time `t`, after `𝒥ₙ`.
    pub fn forcing_at(&self, t: f64) -> Option<SpectralField> {
        self.forcing.evaluate(t)
    }

    /// `𝒥ₙ 𝒟̃(−Λ(r,r)) + 𝒟̃ 𝒥ₙ f(t)`: everything but the viscous term.
    pub fn nonlinear_part(&self, r: &SpectralField, t: f64) -> Result<SpectralField> {
        self.grid.ensure_same(r.grid())?;
        let mut out = if self.nonlinear {
            let lam = self.bilinear.lambda(r, r)?;
            lam.map_indexed(|i, c| -c * self.d_masked[i])
        } else {
            SpectralField::zeros(self.grid)
        };
        if let Some(f) = self.forcing_d.evaluate(t) {
            out += &f;
        }
        out.symmetrize();
        Ok(out)
    }

    /// Full tendency `∂t r`.
    pub fn tendency(&self, r: &SpectralField, t: f64) -> Result<SpectralField> {
        let mut out = self.nonlinear_part(r, t)?;
        for ((o, c), h) in out.coeffs_mut().iter_mut().zip(r.coeffs()).zip(&self.h) {
            *o -= c * (self.mu * h);
        }
        Ok(out)
    }

    /// Advances `r` from `t` to `t + dt`.
    pub fn step(&self, r: &SpectralField, t: f64) -> Result<SpectralField> {
        let dt = self.dt;
        let out = match (&self.coefficients, self.stepper) {
            (Coefficients::Lawson { e, e2 }, Stepper::IfRk4) => {
                let k1 = self.nonlinear_part(r, t)?;
                let a = zip2(r, &k1, |i, v, k| e[i] * (v + 0.5 * dt * k));
                let k2 = self.nonlinear_part(&a, t + 0.5 * dt)?;
                let b = zip2(r, &k2, |i, v, k| e[i] * v + 0.5 * dt * k);
                let k3 = self.nonlinear_part(&b, t + 0.5 * dt)?;
                let c = zip2(r, &k3, |i, v, k| e2[i] * v + dt * e[i] * k);
                let k4 = self.nonlinear_part(&c, t + dt)?;
                let mut out = r.clone();
                let sixth = dt / 6.0;
                for (i, o) in out.coeffs_mut().iter_mut().enumerate() {
                    let s = e2[i] * k1.coeffs()[i]
                        + 2.0 * e[i] * (k2.coeffs()[i] + k3.coeffs()[i])
                        + k4.coeffs()[i];
                    *o = e2[i] * *o + sixth * s;
                }
                out
            }
            (Coefficients::Lawson { e2, .. }, _) => {
                let k1 = self.nonlinear_part(r, t)?;
                let a = zip2(r, &k1, |i, v, k| e2[i] * (v + dt * k));
                let k2 = self.nonlinear_part(&a, t + dt)?;
                let mut out = r.clone();
                for (i, o) in out.coeffs_mut().iter_mut().enumerate() {
                    *o = e2[i] * *o + 0.5 * dt * (e2[i] * k1.coeffs()[i] + k2.coeffs()[i]);
                }
                out
            }
            (Coefficients::Etd(m), _) => {
                let nu = self.nonlinear_part(r, t)?;
                let a = zip2(r, &nu, |i, v, n| m[i].e_half * v + m[i].q * n);
                let na = self.nonlinear_part(&a, t + 0.5 * dt)?;
                let b = zip2(r, &na, |i, v, n| m[i].e_half * v + m[i].q * n);
                let nb = self.nonlinear_part(&b, t + 0.5 * dt)?;
                let c = zip3(&a, &nb, &nu, |i, v, x, y| {
                    m[i].e_half * v + m[i].q * (2.0 * x - y)
                });
                let nc = self.nonlinear_part(&c, t + dt)?;
                let mut out = r.clone();
                for (i, o) in out.coeffs_mut().iter_mut().enumerate() {
                    let k = &m[i];
                    *o = k.e * *o
                        + k.f1 * nu.coeffs()[i]
                        + 2.0 * k.f2 * (na.coeffs()[i] + nb.coeffs()[i])
                        + k.f3 * nc.coeffs()[i];
                }
                out
            }
        };
        if !out.is_finite() {
            return Err(Error::NonFinite(format!("state after step from t = {t}")));
        }
        Ok(out)
    }

    /// `dt · max|u| / dx` for the velocity induced by `r`.
    pub fn cfl_number(&self, r: &SpectralField) -> f64 {
        cfl_number(r, self.dt)
    }
}

/// `dt · max|u| / dx` with `u = ∇⊥(Id − Δ)r`.
pub fn cfl_number(r: &SpectralField, dt: f64) -> f64 {
    let (u1, u2) = velocity(r);
    let (u1, u2) = (inverse_transform(&u1), inverse_transform(&u2));
    let umax = u1
        .samples()
        .iter()
        .zip(u2.samples())
        .fold(0.0f64, |m, (a, b)| m.max(a.hypot(*b)));
    dt * umax / r.grid().dx()
}

fn zip2(
    a: &SpectralField,
    b: &SpectralField,
    f: impl Fn(usize, Complex64, Complex64) -> Complex64,
) -> SpectralField {
    let bc = b.coeffs();
    a.map_indexed(|i, x| f(i, x, bc[i]))
}

fn zip3(
    a: &SpectralField,
    b: &SpectralField,
    c: &SpectralField,
    f: impl Fn(usize, Complex64, Complex64, Complex64) -> Complex64,
) -> SpectralField {
    let (bc, cc) = (b.coeffs(), c.coeffs());
    a.map_indexed(|i, x| f(i, x, bc[i], cc[i]))
}
