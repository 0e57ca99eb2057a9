use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::forcing::ForcingSpec;
use crate::error::{Error, Result};
use crate::spectral::random::{analytic, band_limited, BandSpec};
use crate::spectral::{GridSpec, SpectralField};

/// Time integrator. All three treat the diagonal viscous flow exactly.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Stepper {
    /// Integrating-factor (Lawson) classical Runge–Kutta, order 4.
    #[default]
    IfRk4,
    /// Integrating-factor Heun, order 2.
    IfRk2,
    /// Exponential time differencing RK4 of Cox and Matthews.
    EtdRk4,
}

impl Stepper {
    pub fn as_str(self) -> &'static str {
        match self {
            Stepper::IfRk4 => "if_rk4",
            Stepper::IfRk2 => "if_rk2",
            Stepper::EtdRk4 => "etd_rk4",
        }
    }

    /// Nominal convergence order.
    pub fn order(self) -> u32 {
        match self {
            Stepper::IfRk2 => 2,
            _ => 4,
        }
    }
}

impl fmt::Display for Stepper {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Stepper {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "if_rk4" => Ok(Stepper::IfRk4),
            "if_rk2" => Ok(Stepper::IfRk2),
            "etd_rk4" => Ok(Stepper::EtdRk4),
            other => Err(Error::InvalidArgument(format!(
                "unknown stepper `{other}` (expected if_rk4, if_rk2 or etd_rk4)"
            ))),
        }
    }
}

/// Where the initial state comes from.
#[derive(Clone, Debug, PartialEq, Default)]
pub enum InitialCondition {
    #[default]
    Zero,
    /// `amplitude · cos(ξ_k · x)`.
    Cosine {
        k1: i64,
        k2: i64,
        amplitude: f64,
    },
    /// `amplitude · exp(−(x−c)₁²/(2w₁²) − (x−c)₂²/(2w₂²))` centred in the
    /// box, built from its continuum Fourier transform.
    Gaussian {
        amplitude: f64,
        widths: [f64; 2],
    },
    /// `−Δ` of the Gaussian above; mean-free.
    LaplacianGaussian {
        amplitude: f64,
        widths: [f64; 2],
    },
    /// Seeded band-limited spectrum, see [`BandSpec`].
    Random(BandSpec),
    /// Seeded phases on an `e^{−decay·|ξ|}` spectrum with `‖r₀‖_{H³} = h3_norm`.
    Analytic {
        decay: f64,
        h3_norm: f64,
    },
    Field(SpectralField),
}

impl InitialCondition {
    pub fn build(&self, grid: GridSpec, seed: u64) -> Result<SpectralField> {
        let field = match self {
            InitialCondition::Zero => SpectralField::zeros(grid),
            InitialCondition::Cosine { k1, k2, amplitude } => {
                let half = grid.n() as i64 / 2;
                if k1.abs() >= half || k2.abs() >= half {
                    return Err(Error::InvalidArgument(format!(
                        "cosine mode ({k1}, {k2}) is not resolved on an n = {} grid",
                        grid.n()
                    )));
                }
                SpectralField::single_mode(grid, *k1, *k2, *amplitude, 0.0)
            }
            InitialCondition::Gaussian { amplitude, widths } => gaussian(grid, *amplitude, *widths, false)?,
            InitialCondition::LaplacianGaussian { amplitude, widths } => {
                gaussian(grid, *amplitude, *widths, true)?
            }
            InitialCondition::Random(band) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                band_limited(grid, band, &mut rng)
            }
            InitialCondition::Analytic { decay, h3_norm } => {
                if !(*decay > 0.0) {
                    return Err(Error::InvalidArgument("analytic decay must be > 0".into()));
                }
                analytic(grid, *decay, *h3_norm, seed)
            }
            InitialCondition::Field(f) => {
                grid.ensure_same(f.grid())?;
                f.clone()
            }
        };
        if !field.is_finite() {
            return Err(Error::NonFinite("initial condition".into()));
        }
        Ok(field)
    }
}

fn gaussian(grid: GridSpec, amplitude: f64, widths: [f64; 2], laplacian: bool) -> Result<SpectralField> {
    let [w1, w2] = widths;
    if !(w1 > 0.0 && w2 > 0.0) {
        return Err(Error::InvalidArgument("gaussian widths must be > 0".into()));
    }
    let l = grid.box_length();
    let scale = amplitude * 2.0 * std::f64::consts::PI * w1 * w2 / (l * l);
    let mut out = SpectralField::zeros(grid);
    for (idx, c) in out.coeffs_mut().iter_mut().enumerate() {
        if grid.is_nyquist(idx) {
            continue;
        }
        let p = grid.xi_sq(idx);
        let (k1, k2) = grid.wavevector(idx);
        let (x1, x2) = grid.xi(idx);
        // centring at (L/2, L/2) contributes the sign (−1)^{k1+k2}
        let sign = if (k1 + k2).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let q = (w1 * x1).powi(2) + (w2 * x2).powi(2);
        let mut v = sign * scale * (-0.5 * q).exp();
        if laplacian {
            v *= p;
        }
        *c = Complex64::new(v, 0.0);
    }
    Ok(out)
}

/// Everything a run needs.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub grid: GridSpec,
    pub mu: f64,
    pub t_end: f64,
    pub dt: f64,
    pub stepper: Stepper,
    /// Sharp cutoff `𝒥ₙ` on `|ξ|² ≤ n_cut`.
    pub galerkin_cut: Option<f64>,
    pub forcing: ForcingSpec,
    pub initial_condition: InitialCondition,
    pub seed: u64,
    /// Diagnostics cadence in steps; the final step is always recorded.
    pub diagnostics_every: usize,
    /// Snapshot cadence in steps; `None` keeps no snapshots.
    pub snapshot_every: Option<usize>,
    /// `false` drops `Λ` and integrates the linear parabolic problem.
    pub nonlinear: bool,
    /// `σ` values for `ℰ_σ` columns.
    pub sigmas: Vec<f64>,
    /// `s` values for `ℰ̃_s` columns.
    pub tilde_s: Vec<f64>,
}

impl RunConfig {
    /// Zero data, zero forcing, default stepper and cadence.
    pub fn new(grid: GridSpec, mu: f64, dt: f64, t_end: f64) -> Self {
        RunConfig {
            grid,
            mu,
            t_end,
            dt,
            stepper: Stepper::default(),
            galerkin_cut: None,
            forcing: ForcingSpec::Zero,
            initial_condition: InitialCondition::Zero,
            seed: 0,
            diagnostics_every: 1,
            snapshot_every: None,
            nonlinear: true,
            sigmas: Vec::new(),
            tilde_s: Vec::new(),
        }
    }

    /// Number of steps; `t_end` must be an integer multiple of `dt`.
    pub fn steps(&self) -> Result<usize> {
        let q = self.t_end / self.dt;
        let k = q.round();
        if !(k >= 1.0) || (q - k).abs() > 1e-9 * k {
            return Err(Error::InvalidArgument(format!(
                "t_end = {} is not an integer multiple of dt = {}",
                self.t_end, self.dt
            )));
        }
        Ok(k as usize)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if !(self.mu.is_finite() && self.mu >= 0.0) {
            return bad(format!("mu = {} must be finite and ≥ 0", self.mu));
        }
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return bad(format!("dt = {} must be > 0", self.dt));
        }
        if !(self.t_end.is_finite() && self.t_end > 0.0) {
            return bad(format!("t_end = {} must be > 0", self.t_end));
        }
        self.steps()?;
        if self.diagnostics_every == 0 || self.snapshot_every == Some(0) {
            return bad("cadences must be ≥ 1 step".into());
        }
        if let Some(c) = self.galerkin_cut {
            if !(c.is_finite() && c > 0.0) {
                return bad(format!("galerkin_cut = {c} must be > 0"));
            }
        }
        if self
            .sigmas
            .iter()
            .chain(&self.tilde_s)
            .any(|s| !(s.is_finite() && *s >= 0.0))
        {
            return bad("regularity indices must be ≥ 0".into());
        }
        self.forcing.check_grid(&self.grid)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{forward_transform, inverse_transform, RealField};

    #[test]
    fn gaussian_matches_physical_samples() {
        let l = 30.0;
        let grid = GridSpec::new(64, l).unwrap();
        let g = InitialCondition::Gaussian {
            amplitude: 2.0,
            widths: [1.5, 1.2],
        }
        .build(grid, 0)
        .unwrap();
        let phys = inverse_transform(&g);
        let exact = RealField::from_fn(grid, |x, y| {
            let q = (x - l / 2.0).powi(2) / (1.5 * 1.5) + (y - l / 2.0).powi(2) / (1.2 * 1.2);
            2.0 * (-0.5 * q).exp()
        });
        for (a, b) in phys.samples().iter().zip(exact.samples()) {
            assert!((a - b).abs() < 1e-12);
        }
        let back = forward_transform(&phys).unwrap();
        assert!((&back - &g).max_abs() < 1e-15);
    }

    #[test]
    fn laplacian_gaussian_is_mean_free() {
        let grid = GridSpec::new(32, 30.0).unwrap();
        let g = InitialCondition::LaplacianGaussian {
            amplitude: 1.0,
            widths: [2.0, 2.0],
        }
        .build(grid, 0)
        .unwrap();
        assert_eq!(g.mean(), 0.0);
    }

    #[test]
    fn step_count_must_be_integral() {
        let grid = GridSpec::new(8, 1.0).unwrap();
        assert_eq!(RunConfig::new(grid, 1.0, 1e-2, 1.0).steps().unwrap(), 100);
        assert!(RunConfig::new(grid, 1.0, 0.3, 1.0).steps().is_err());
        assert!(RunConfig::new(grid, -1.0, 0.1, 1.0).validate().is_err());
    }

    #[test]
    fn stepper_names_round_trip() {
        for s in [Stepper::IfRk4, Stepper::IfRk2, Stepper::EtdRk4] {
            assert_eq!(s.as_str().parse::<Stepper>().unwrap(), s);
        }
    }
}
