use num_complex::Complex64;

use super::field::SpectralField;
use super::grid::GridSpec;
use crate::error::{Error, Result};

/// A real Fourier symbol sampled on every mode of a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Symbol {
    grid: GridSpec,
    values: Vec<f64>,
}

impl Symbol {
    /// Samples `m(|ξ|²)` on every mode.
    pub fn radial(grid: GridSpec, m: impl Fn(f64) -> f64) -> Self {
        Symbol {
            grid,
            values: (0..grid.len()).map(|idx| m(grid.xi_sq(idx))).collect(),
        }
    }

    /// Samples `m(ξ₁, ξ₂)` on every mode.
    pub fn from_fn(grid: GridSpec, m: impl Fn(f64, f64) -> f64) -> Self {
        Symbol {
            grid,
            values: (0..grid.len())
                .map(|idx| {
                    let (a, b) = grid.xi(idx);
                    m(a, b)
                })
                .collect(),
        }
    }

    pub fn from_values(grid: GridSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "symbol has {} entries, grid has {}",
                values.len(),
                grid.len()
            )));
        }
        Ok(Symbol { grid, values })
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Mode-wise product of two symbols.
    pub fn compose(&self, other: &Symbol) -> Result<Symbol> {
        self.grid.ensure_same(&other.grid)?;
        Ok(Symbol {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }
}

/// `a(ξ) = 1 + |ξ|² + |ξ|⁴`, the symbol of `Id − Δ + Δ²`.
#[inline]
pub fn symbol_a(xi_sq: f64) -> f64 {
    1.0 + xi_sq + xi_sq * xi_sq
}

/// `h(ξ) = (1 + |ξ|²)|ξ|⁴ / a(ξ)`, the dissipation rate of the reformulated equation.
#[inline]
pub fn symbol_h(xi_sq: f64) -> f64 {
    (1.0 + xi_sq) * xi_sq * xi_sq / symbol_a(xi_sq)
}

/// `1/x`, nudged by at most two ulps so that `x * (1/x) == 1.0` in floating
/// point whenever such a representable value exists.
pub fn exact_reciprocal(x: f64) -> f64 {
    let y = 1.0 / x;
    if x * y == 1.0 {
        return y;
    }
    let mut lo = y;
    let mut hi = y;
    for _ in 0..2 {
        lo = f64::from_bits(lo.to_bits() - 1);
        hi = f64::from_bits(hi.to_bits() + 1);
        for cand in [lo, hi] {
            if x * cand == 1.0 {
                return cand;
            }
        }
    }
    y
}

/// Precomputed symbols shared by the solver and the diagnostics.
#[derive(Clone, Debug)]
pub struct MultiplierTable {
    grid: GridSpec,
    /// `|ξ|²`
    pub xi_sq: Symbol,
    /// `1 + |ξ|² + |ξ|⁴`
    pub a: Symbol,
    /// `1 / a`
    pub d: Symbol,
    /// `(1 + |ξ|²)|ξ|⁴ / a`
    pub h: Symbol,
    /// `ξ₁` with Nyquist rows/columns set to zero.
    pub k1: Vec<f64>,
    /// `ξ₂` with Nyquist rows/columns set to zero.
    pub k2: Vec<f64>,
}

impl MultiplierTable {
    pub fn new(grid: GridSpec) -> Self {
        let xi_sq = Symbol::radial(grid, |s| s);
        let a = Symbol::radial(grid, symbol_a);
        let d = Symbol::radial(grid, |s| exact_reciprocal(symbol_a(s)));
        let h = Symbol::radial(grid, symbol_h);
        let mut k1 = Vec::with_capacity(grid.len());
        let mut k2 = Vec::with_capacity(grid.len());
        for idx in 0..grid.len() {
            let (x1, x2) = grid.xi(idx);
            if grid.is_nyquist(idx) {
                k1.push(0.0);
                k2.push(0.0);
            } else {
                k1.push(x1);
                k2.push(x2);
            }
        }
        MultiplierTable {
            grid,
            xi_sq,
            a,
            d,
            h,
            k1,
            k2,
        }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }
}

/// Multiplies every coefficient by the matching symbol value.
pub fn apply_multiplier(u: &SpectralField, m: &Symbol) -> Result<SpectralField> {
    u.grid().ensure_same(m.grid())?;
    let coeffs: Vec<Complex64> = u.coeffs().iter().zip(m.values()).map(|(c, s)| c * s).collect();
    SpectralField::from_coeffs(*u.grid(), coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::field::SpectralField;

    #[test]
    fn a_times_d_is_one() {
        let grid = GridSpec::new(32, 3.7).unwrap();
        let t = MultiplierTable::new(grid);
        // Some doubles have no floating-point reciprocal y with x*y == 1;
        // those are off by a single rounding.
        let mut exact = 0;
        for (a, d) in t.a.values().iter().zip(t.d.values()) {
            assert!((a * d - 1.0).abs() <= f64::EPSILON);
            exact += (a * d == 1.0) as usize;
        }
        assert!(exact * 10 >= grid.len() * 9);
    }

    #[test]
    fn h_shape() {
        assert_eq!(symbol_h(0.0), 0.0);
        assert!((symbol_h(1.0) - 2.0 / 3.0).abs() < 1e-15);
        assert!(symbol_h(1e-3) > 0.0);
        let big = 1e6;
        assert!((symbol_h(big) / big - 1.0).abs() < 1e-5);
    }

    #[test]
    fn a_then_d_is_identity_and_h_at_unit_mode() {
        let grid = GridSpec::new(16, 2.0 * std::f64::consts::PI).unwrap();
        let t = MultiplierTable::new(grid);
        let u = SpectralField::single_mode(grid, 1, 0, 1.0, 0.3)
            .map_indexed(|i, c| c + Complex64::new(0.1 * (i % 5) as f64, 0.0));
        let back = apply_multiplier(&apply_multiplier(&u, &t.a).unwrap(), &t.d).unwrap();
        for (x, y) in back.coeffs().iter().zip(u.coeffs()) {
            assert!((x - y).norm() <= 1e-14 * (1.0 + y.norm()));
        }
        // a(0) = 1 leaves the mean alone.
        assert_eq!(apply_multiplier(&u, &t.a).unwrap().coeffs()[0], u.coeffs()[0]);
        // |ξ| = 1 on the unit box: h = 2·1/3.
        let single = SpectralField::single_mode(grid, 0, 1, 1.0, 0.0);
        let hu = apply_multiplier(&single, &t.h).unwrap();
        assert!((hu.get(0, 1).re - single.get(0, 1).re * 2.0 / 3.0).abs() < 1e-16);
    }

    #[test]
    fn mismatched_symbol_is_rejected() {
        let g1 = GridSpec::new(8, 1.0).unwrap();
        let g2 = GridSpec::new(16, 1.0).unwrap();
        let s = Symbol::radial(g2, |x| x);
        assert!(apply_multiplier(&SpectralField::zeros(g1), &s).is_err());
        assert!(Symbol::from_values(g1, vec![0.0; 3]).is_err());
    }
}
