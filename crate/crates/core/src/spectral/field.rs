use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;

use super::grid::GridSpec;
use super::transform::fft2;
use crate::error::{Error, Result};

/// Real samples of a field at the points `(L i/n, L j/n)`, row-major in `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct RealField {
    grid: GridSpec,
    samples: Vec<f64>,
}

impl RealField {
    pub fn zeros(grid: GridSpec) -> Self {
        RealField {
            grid,
            samples: vec![0.0; grid.len()],
        }
    }

    pub fn from_samples(grid: GridSpec, samples: Vec<f64>) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} samples, got {}",
                grid.len(),
                samples.len()
            )));
        }
        Ok(RealField { grid, samples })
    }

    /// Samples `f(x, y)` on the grid points.
    pub fn from_fn(grid: GridSpec, f: impl Fn(f64, f64) -> f64) -> Self {
        let n = grid.n();
        let mut samples = Vec::with_capacity(grid.len());
        for i in 0..n {
            for j in 0..n {
                let (x, y) = grid.point(i, j);
                samples.push(f(x, y));
            }
        }
        RealField { grid, samples }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn samples_mut(&mut self) -> &mut [f64] {
        &mut self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.samples[i * self.grid.n() + j]
    }

    pub fn is_finite(&self) -> bool {
        self.samples.iter().all(|v| v.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Rectangle-rule integral of `f²` over the box (spectrally exact for
    /// band-limited fields).
    pub fn l2_norm_sq(&self) -> f64 {
        let cell = self.grid.dx() * self.grid.dx();
        self.samples.iter().map(|v| v * v).sum::<f64>() * cell
    }
}

/// Fourier-series coefficients of a real field on the torus.
///
/// `c(k)` is normalized so that `f(x) = Σ_k c(k) exp(i ξ_k · x)`; Parseval
/// then reads `∫|f|² = L² Σ|c(k)|²`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralField {
    grid: GridSpec,
    coeffs: Vec<Complex64>,
}

impl SpectralField {
    pub fn zeros(grid: GridSpec) -> Self {
        SpectralField {
            grid,
            coeffs: vec![Complex64::default(); grid.len()],
        }
    }

    pub fn from_coeffs(grid: GridSpec, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients, got {}",
                grid.len(),
                coeffs.len()
            )));
        }
        Ok(SpectralField { grid, coeffs })
    }

    /// Real field whose only content is `amplitude · cos(ξ_k · x + phase)`.
    pub fn single_mode(grid: GridSpec, k1: i64, k2: i64, amplitude: f64, phase: f64) -> Self {
        let mut out = SpectralField::zeros(grid);
        let c = Complex64::from_polar(0.5 * amplitude, phase);
        if k1 == 0 && k2 == 0 {
            out.coeffs[0] = Complex64::new(amplitude * phase.cos(), 0.0);
            return out;
        }
        out.coeffs[grid.index_of(k1, k2)] += c;
        out.coeffs[grid.index_of(-k1, -k2)] += c.conj();
        out
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient of the signed integer wavevector `(k1, k2)`.
    pub fn get(&self, k1: i64, k2: i64) -> Complex64 {
        self.coeffs[self.grid.index_of(k1, k2)]
    }

    pub fn set(&mut self, k1: i64, k2: i64, value: Complex64) {
        let idx = self.grid.index_of(k1, k2);
        self.coeffs[idx] = value;
    }

    /// Mean value of the field (the `ξ = 0` coefficient).
    pub fn mean(&self) -> f64 {
        self.coeffs[0].re
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.norm()))
    }

    /// `max_k |c(k) − conj c(−k)|`.
    pub fn hermitian_defect(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(idx, c)| (c - self.coeffs[self.grid.conjugate_index(idx)].conj()).norm())
            .fold(0.0, f64::max)
    }

    /// Replaces every coefficient by the Hermitian average, removing any
    /// round-off drift from real-field symmetry.
    pub fn symmetrize(&mut self) {
        let n = self.grid.n();
        for i1 in 0..n {
            let c1 = (n - i1) % n;
            if c1 < i1 {
                continue;
            }
            for i2 in 0..n {
                let idx = i1 * n + i2;
                let j = c1 * n + (n - i2) % n;
                if j < idx {
                    continue;
                }
                let avg = 0.5 * (self.coeffs[idx] + self.coeffs[j].conj());
                self.coeffs[idx] = avg;
                self.coeffs[j] = avg.conj();
            }
        }
    }

    /// Zeroes every mode on a Nyquist row or column.
    pub fn zero_nyquist(&mut self) {
        let n = self.grid.n();
        let half = n / 2;
        for j in 0..n {
            self.coeffs[half * n + j] = Complex64::default();
            self.coeffs[j * n + half] = Complex64::default();
        }
    }

    pub fn scaled(&self, a: f64) -> Self {
        SpectralField {
            grid: self.grid,
            coeffs: self.coeffs.iter().map(|c| c * a).collect(),
        }
    }

    /// `self += a · other`.
    pub fn axpy(&mut self, a: f64, other: &SpectralField) -> Result<()> {
        self.grid.ensure_same(&other.grid)?;
        for (x, y) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *x += y * a;
        }
        Ok(())
    }

    /// Maps each coefficient through `f(index, value)`.
    pub fn map_indexed(&self, f: impl Fn(usize, Complex64) -> Complex64) -> Self {
        SpectralField {
            grid: self.grid,
            coeffs: self.coeffs.iter().enumerate().map(|(i, &c)| f(i, c)).collect(),
        }
    }

    pub(crate) fn ensure_same_grid(&self, other: &SpectralField) -> Result<()> {
        self.grid.ensure_same(&other.grid)
    }
}

fn assert_same(a: &GridSpec, b: &GridSpec) {
    assert!(a == b, "spectral arithmetic on mismatched grids");
}

impl Add for &SpectralField {
    type Output = SpectralField;

    fn add(self, rhs: &SpectralField) -> SpectralField {
        assert_same(&self.grid, &rhs.grid);
        SpectralField {
            grid: self.grid,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &SpectralField {
    type Output = SpectralField;

    fn sub(self, rhs: &SpectralField) -> SpectralField {
        assert_same(&self.grid, &rhs.grid);
        SpectralField {
            grid: self.grid,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul<f64> for &SpectralField {
    type Output = SpectralField;

    fn mul(self, rhs: f64) -> SpectralField {
        self.scaled(rhs)
    }
}

impl Neg for &SpectralField {
    type Output = SpectralField;

    fn neg(self) -> SpectralField {
        self.scaled(-1.0)
    }
}

impl AddAssign<&SpectralField> for SpectralField {
    fn add_assign(&mut self, rhs: &SpectralField) {
        assert_same(&self.grid, &rhs.grid);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&SpectralField> for SpectralField {
    fn sub_assign(&mut self, rhs: &SpectralField) {
        assert_same(&self.grid, &rhs.grid);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

/// Physical samples to Fourier-series coefficients (forward DFT divided by n²).
pub fn forward_transform(f: &RealField) -> Result<SpectralField> {
    if !f.is_finite() {
        return Err(Error::NonFinite("forward_transform input".into()));
    }
    let grid = *f.grid();
    let n = grid.n();
    let mut data: Vec<Complex64> = f.samples.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fft2(&mut data, n, false);
    let scale = 1.0 / (n * n) as f64;
    for c in &mut data {
        *c *= scale;
    }
    Ok(SpectralField { grid, coeffs: data })
}

/// Fourier-series coefficients back to physical samples.
pub fn inverse_transform(u: &SpectralField) -> RealField {
    let grid = u.grid;
    let mut data = u.coeffs.clone();
    fft2(&mut data, grid.n(), true);
    RealField {
        grid,
        samples: data.into_iter().map(|c| c.re).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn random_real(grid: GridSpec, seed: u64) -> RealField {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let samples = (0..grid.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        RealField::from_samples(grid, samples).unwrap()
    }

    #[test]
    fn constant_field_has_only_mean() {
        let grid = GridSpec::new(16, 3.0).unwrap();
        let u = forward_transform(&RealField::from_fn(grid, |_, _| 1.0)).unwrap();
        assert!((u.coeffs()[0] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(u.coeffs()[1..].iter().all(|c| c.norm() < 1e-15));
    }

    #[test]
    fn cosine_splits_between_plus_minus_one() {
        let l = 5.0;
        let grid = GridSpec::new(16, l).unwrap();
        let u = forward_transform(&RealField::from_fn(grid, |x, _| (2.0 * PI * x / l).cos())).unwrap();
        for (idx, c) in u.coeffs().iter().enumerate() {
            let expected = match grid.wavevector(idx) {
                (1, 0) | (-1, 0) => 0.5,
                _ => 0.0,
            };
            assert!((c - Complex64::new(expected, 0.0)).norm() < 1e-13, "{idx}");
        }
    }

    #[test]
    fn random_round_trip_and_parseval() {
        let grid = GridSpec::new(32, 2.5).unwrap();
        let f = random_real(grid, 7);
        let u = forward_transform(&f).unwrap();
        assert!(u.hermitian_defect() < 1e-15);
        let back = inverse_transform(&u);
        let err = back
            .samples()
            .iter()
            .zip(f.samples())
            .map(|(a, b)| (a - b).powi(2))
            .sum::<f64>()
            .sqrt();
        let norm = f.samples().iter().map(|v| v * v).sum::<f64>().sqrt();
        assert!(err / norm <= 1e-13);

        let l = grid.box_length();
        let spectral = l * l * u.coeffs().iter().map(|c| c.norm_sqr()).sum::<f64>();
        let physical = f.l2_norm_sq();
        assert!((spectral - physical).abs() / physical <= 1e-12);
    }

    #[test]
    fn rejects_non_finite() {
        let grid = GridSpec::new(8, 1.0).unwrap();
        let mut f = RealField::zeros(grid);
        f.samples_mut()[3] = f64::NAN;
        assert!(matches!(forward_transform(&f), Err(Error::NonFinite(_))));
    }

    #[test]
    fn single_mode_is_real_cosine() {
        let grid = GridSpec::new(16, 2.0 * PI).unwrap();
        let u = SpectralField::single_mode(grid, 2, -1, 3.0, 0.4);
        let f = inverse_transform(&u);
        for i in 0..16 {
            for j in 0..16 {
                let (x, y) = grid.point(i, j);
                let expect = 3.0 * (2.0 * x - y + 0.4).cos();
                assert!((f.at(i, j) - expect).abs() < 1e-13);
            }
        }
    }
}
