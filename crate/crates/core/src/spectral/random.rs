use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

use super::field::SpectralField;
use super::grid::GridSpec;
use super::ops::sobolev_norm;

/// Random spectrum with i.i.d. phases and radial amplitude
/// `A (1 + |ξ|²)^{-(s+1)}` on the lattice band `k_min ≤ |k| ≤ k_max`,
/// rescaled so the field has the requested `H^s` norm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BandSpec {
    pub k_min: f64,
    pub k_max: f64,
    pub s: f64,
    pub hs_norm: f64,
}

/// Fills Hermitian pairs in flat-index order; self-conjugate modes get the
/// real part only and Nyquist modes stay zero.
fn hermitian_fill(grid: GridSpec, mut sample: impl FnMut(usize) -> Complex64) -> SpectralField {
    let mut out = SpectralField::zeros(grid);
    let coeffs = out.coeffs_mut();
    for idx in 0..grid.len() {
        let j = grid.conjugate_index(idx);
        if j < idx || grid.is_nyquist(idx) {
            continue;
        }
        let c = sample(idx);
        if j == idx {
            coeffs[idx] = Complex64::new(c.re, 0.0);
        } else {
            coeffs[idx] = c;
            coeffs[j] = c.conj();
        }
    }
    out
}

pub fn band_limited(grid: GridSpec, band: &BandSpec, rng: &mut impl Rng) -> SpectralField {
    let unit = grid.frequency_unit();
    let mut field = hermitian_fill(grid, |idx| {
        let (k1, k2) = grid.wavevector(idx);
        let k = ((k1 * k1 + k2 * k2) as f64).sqrt();
        // Draw for every mode so the stream does not depend on the band.
        let phase = rng.gen_range(0.0..2.0 * PI);
        if k < band.k_min || k > band.k_max {
            return Complex64::default();
        }
        let xi_sq = unit * unit * k * k;
        Complex64::from_polar((1.0 + xi_sq).powf(-(band.s + 1.0)), phase)
    });
    let norm = sobolev_norm(&field, band.s);
    if norm > 0.0 {
        field = field.scaled(band.hs_norm / norm);
    }
    field
}

/// Independent standard-normal real and imaginary parts on every non-Nyquist
/// mode, scaled by `amplitude`. A generic full-band test field.
pub fn white(grid: GridSpec, seed: u64, amplitude: f64) -> SpectralField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    hermitian_fill(grid, |_| {
        let (a, b) = box_muller(&mut rng);
        Complex64::new(amplitude * a, amplitude * b)
    })
}

/// Mean-free field with amplitude `e^{−decay·|ξ|}` and seeded i.i.d. phases,
/// rescaled to the requested `H³` norm. Its spectrum decays exponentially,
/// so the continuum field is real-analytic.
pub fn analytic(grid: GridSpec, decay: f64, h3_norm: f64, seed: u64) -> SpectralField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut field = hermitian_fill(grid, |idx| {
        let phase = rng.gen_range(0.0..2.0 * PI);
        if idx == 0 {
            return Complex64::default();
        }
        Complex64::from_polar((-decay * grid.xi_sq(idx).sqrt()).exp(), phase)
    });
    let norm = sobolev_norm(&field, 3.0);
    if norm > 0.0 {
        field = field.scaled(h3_norm / norm);
    }
    field
}

fn box_muller(rng: &mut impl Rng) -> (f64, f64) {
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen();
    let r = (-2.0 * u1.ln()).sqrt();
    (r * (2.0 * PI * u2).cos(), r * (2.0 * PI * u2).sin())
}
