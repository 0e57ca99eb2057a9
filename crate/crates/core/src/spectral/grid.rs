use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// How pointwise products are protected against aliasing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DealiasPolicy {
    /// Zero-pad to 3n/2 points per dimension before multiplying. Retained
    /// coefficients of a product equal the exact convolution.
    #[default]
    ThreeHalvesPadding,
    /// Truncate inputs and output to |k_i| < n/3 and multiply on the native grid.
    TwoThirdsTruncation,
}

impl DealiasPolicy {
    pub fn as_str(self) -> &'static str {
        match self {
            DealiasPolicy::ThreeHalvesPadding => "three_halves",
            DealiasPolicy::TwoThirdsTruncation => "two_thirds",
        }
    }
}

impl fmt::Display for DealiasPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DealiasPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "three_halves" | "three_halves_padding" => Ok(DealiasPolicy::ThreeHalvesPadding),
            "two_thirds" | "two_thirds_truncation" => Ok(DealiasPolicy::TwoThirdsTruncation),
            other => Err(Error::InvalidArgument(format!(
                "unknown dealias policy `{other}` (expected three_halves or two_thirds)"
            ))),
        }
    }
}

/// Periodic square box `[0, L)²` sampled with `n` points per dimension.
///
/// Spectral storage is row-major over `(i1, i2)` in FFT order: storage index
/// `i` carries the signed wavenumber `i` for `i < n/2` and `i - n` otherwise,
/// so index `n/2` is the Nyquist wavenumber `-n/2`. The physical wavevector
/// of the integer pair `(k1, k2)` is `(2π/L)(k1, k2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    n: usize,
    box_length: f64,
    dealias: DealiasPolicy,
}

impl GridSpec {
    pub fn new(n: usize, box_length: f64) -> Result<Self> {
        if n < 8 || !n.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "grid size must be even and at least 8, got {n}"
            )));
        }
        if !(box_length.is_finite() && box_length > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "box length must be positive and finite, got {box_length}"
            )));
        }
        Ok(GridSpec {
            n,
            box_length,
            dealias: DealiasPolicy::default(),
        })
    }

    pub fn with_dealias(mut self, dealias: DealiasPolicy) -> Self {
        self.dealias = dealias;
        self
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn box_length(&self) -> f64 {
        self.box_length
    }

    #[inline]
    pub fn dealias(&self) -> DealiasPolicy {
        self.dealias
    }

    /// Number of samples (and of spectral coefficients).
    #[inline]
    pub fn len(&self) -> usize {
        self.n * self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Physical spacing `L / n`.
    #[inline]
    pub fn dx(&self) -> f64 {
        self.box_length / self.n as f64
    }

    /// Lowest nonzero physical wavenumber `2π/L`.
    #[inline]
    pub fn frequency_unit(&self) -> f64 {
        2.0 * PI / self.box_length
    }

    /// Signed wavenumber stored at position `i` of one dimension.
    #[inline]
    pub fn wavenumber(&self, i: usize) -> i64 {
        if i < self.n / 2 {
            i as i64
        } else {
            i as i64 - self.n as i64
        }
    }

    /// Storage position of the signed wavenumber `k` (taken modulo `n`).
    #[inline]
    pub fn position(&self, k: i64) -> usize {
        k.rem_euclid(self.n as i64) as usize
    }

    /// Flat storage index of the integer wavevector `(k1, k2)`.
    #[inline]
    pub fn index_of(&self, k1: i64, k2: i64) -> usize {
        self.position(k1) * self.n + self.position(k2)
    }

    /// Flat storage index of `-k` for the mode stored at `idx`.
    #[inline]
    pub fn conjugate_index(&self, idx: usize) -> usize {
        let (i1, i2) = (idx / self.n, idx % self.n);
        ((self.n - i1) % self.n) * self.n + (self.n - i2) % self.n
    }

    /// Integer wavevector stored at flat index `idx`.
    #[inline]
    pub fn wavevector(&self, idx: usize) -> (i64, i64) {
        (self.wavenumber(idx / self.n), self.wavenumber(idx % self.n))
    }

    /// Whether the flat index sits on a Nyquist row or column.
    #[inline]
    pub fn is_nyquist(&self, idx: usize) -> bool {
        let half = self.n / 2;
        idx / self.n == half || idx % self.n == half
    }

    /// Physical wavevector `ξ` at flat index `idx`.
    #[inline]
    pub fn xi(&self, idx: usize) -> (f64, f64) {
        let (k1, k2) = self.wavevector(idx);
        let unit = self.frequency_unit();
        (unit * k1 as f64, unit * k2 as f64)
    }

    /// `|ξ|²` at flat index `idx`, computed from the integer pair.
    #[inline]
    pub fn xi_sq(&self, idx: usize) -> f64 {
        let (k1, k2) = self.wavevector(idx);
        let unit = self.frequency_unit();
        unit * unit * (k1 * k1 + k2 * k2) as f64
    }

    /// Physical coordinates of sample `(i, j)`.
    #[inline]
    pub fn point(&self, i: usize, j: usize) -> (f64, f64) {
        let dx = self.dx();
        (dx * i as f64, dx * j as f64)
    }

    /// Largest `|ξ|` among non-Nyquist modes.
    pub fn max_retained_xi(&self) -> f64 {
        let kmax = (self.n / 2 - 1) as f64;
        self.frequency_unit() * kmax * std::f64::consts::SQRT_2
    }

    pub(crate) fn ensure_same(&self, other: &GridSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GridMismatch(format!(
                "n={} L={} {} vs n={} L={} {}",
                self.n, self.box_length, self.dealias, other.n, other.box_length, other.dealias
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_sizes() {
        assert!(GridSpec::new(6, 1.0).is_err());
        assert!(GridSpec::new(9, 1.0).is_err());
        assert!(GridSpec::new(8, 0.0).is_err());
        assert!(GridSpec::new(8, f64::NAN).is_err());
        assert!(GridSpec::new(8, 1.0).is_ok());
    }

    #[test]
    fn index_layout() {
        let g = GridSpec::new(8, 2.0 * PI).unwrap();
        assert_eq!(g.wavenumber(3), 3);
        assert_eq!(g.wavenumber(4), -4);
        assert_eq!(g.wavenumber(7), -1);
        let idx = g.index_of(-1, 2);
        assert_eq!(g.wavevector(idx), (-1, 2));
        assert_eq!(g.wavevector(g.conjugate_index(idx)), (1, -2));
        assert!(g.is_nyquist(g.index_of(-4, 0)));
        assert!(!g.is_nyquist(g.index_of(3, -3)));
        assert_eq!(g.xi_sq(g.index_of(1, 1)), 2.0);
    }
}
