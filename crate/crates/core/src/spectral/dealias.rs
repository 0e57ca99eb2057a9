use num_complex::Complex64;

use super::field::SpectralField;
use super::grid::{DealiasPolicy, GridSpec};
use super::transform::fft2;
use crate::error::Result;

/// Physical-space multiplication machinery for one grid and dealias policy.
///
/// With [`DealiasPolicy::ThreeHalvesPadding`] the retained band is every
/// non-Nyquist mode and products are evaluated on a `3n/2` grid, which makes
/// the retained coefficients of a quadratic product equal to the exact
/// convolution. With [`DealiasPolicy::TwoThirdsTruncation`] the product is
/// taken on the native grid and only modes with `3|k_i| < n` are kept; this is
/// alias-free only when the inputs already live in that band.
#[derive(Clone, Debug)]
pub struct Dealiaser {
    grid: GridSpec,
    m: usize,
    /// (native flat index, product-grid flat index) for every input mode.
    input: Vec<(usize, usize)>,
    /// Same, for the modes kept in the output.
    output: Vec<(usize, usize)>,
}

impl Dealiaser {
    pub fn new(grid: GridSpec) -> Self {
        let n = grid.n();
        let m = match grid.dealias() {
            DealiasPolicy::ThreeHalvesPadding => 3 * n / 2,
            DealiasPolicy::TwoThirdsTruncation => n,
        };
        let pos = |k: i64| k.rem_euclid(m as i64) as usize;
        let input: Vec<(usize, usize)> = (0..grid.len())
            .filter(|&idx| !grid.is_nyquist(idx))
            .map(|idx| {
                let (k1, k2) = grid.wavevector(idx);
                (idx, pos(k1) * m + pos(k2))
            })
            .collect();
        let output = match grid.dealias() {
            DealiasPolicy::ThreeHalvesPadding => input.clone(),
            DealiasPolicy::TwoThirdsTruncation => input
                .iter()
                .copied()
                .filter(|&(idx, _)| {
                    let (k1, k2) = grid.wavevector(idx);
                    3 * k1.unsigned_abs() < n as u64 && 3 * k2.unsigned_abs() < n as u64
                })
                .collect(),
        };
        Dealiaser {
            grid,
            m,
            input,
            output,
        }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    /// Points per dimension of the product grid.
    pub fn product_size(&self) -> usize {
        self.m
    }

    /// Samples `a + i b` on the product grid; both inputs must be real fields.
    pub(crate) fn to_physical_pair(&self, a: &SpectralField, b: Option<&SpectralField>) -> Vec<Complex64> {
        let mut buf = vec![Complex64::default(); self.m * self.m];
        let ac = a.coeffs();
        match b {
            Some(b) => {
                let bc = b.coeffs();
                for &(i, p) in &self.input {
                    let bi = bc[i];
                    buf[p] = Complex64::new(ac[i].re - bi.im, ac[i].im + bi.re);
                }
            }
            None => {
                for &(i, p) in &self.input {
                    buf[p] = ac[i];
                }
            }
        }
        fft2(&mut buf, self.m, true);
        buf
    }

    /// Samples on the product grid of the field whose coefficient at native
    /// index `i` is `coeff(i)`. Used to fuse symbol evaluation with padding.
    pub(crate) fn to_physical_with(&self, coeff: impl Fn(usize) -> Complex64) -> Vec<Complex64> {
        let mut buf = vec![Complex64::default(); self.m * self.m];
        for &(i, p) in &self.input {
            buf[p] = coeff(i);
        }
        fft2(&mut buf, self.m, true);
        buf
    }

    /// Coefficients of the real samples held in `buf` (imaginary parts ignored).
    pub(crate) fn to_spectral_real(&self, mut buf: Vec<Complex64>) -> SpectralField {
        for c in buf.iter_mut() {
            c.im = 0.0;
        }
        fft2(&mut buf, self.m, false);
        let scale = 1.0 / (self.m * self.m) as f64;
        let mut out = SpectralField::zeros(self.grid);
        let oc = out.coeffs_mut();
        for &(i, p) in &self.output {
            oc[i] = buf[p] * scale;
        }
        out
    }

    /// Coefficients of two real fields packed as `p + i q` in `buf`.
    pub(crate) fn to_spectral_pair(&self, mut buf: Vec<Complex64>) -> (SpectralField, SpectralField) {
        fft2(&mut buf, self.m, false);
        let m = self.m;
        let scale = 0.5 / (m * m) as f64;
        let mut p = SpectralField::zeros(self.grid);
        let mut q = SpectralField::zeros(self.grid);
        {
            let (pc, qc) = (p.coeffs_mut(), q.coeffs_mut());
            for &(i, pos) in &self.output {
                let (r, c) = (pos / m, pos % m);
                let neg = ((m - r) % m) * m + (m - c) % m;
                let z = buf[pos];
                let zn = buf[neg].conj();
                pc[i] = (z + zn) * scale;
                // (z − zn) / (2i)
                let w = z - zn;
                qc[i] = Complex64::new(w.im, -w.re) * scale;
            }
        }
        (p, q)
    }

    /// Dealiased coefficients of the pointwise product `u v`.
    pub fn product(&self, u: &SpectralField, v: &SpectralField) -> Result<SpectralField> {
        u.ensure_same_grid(v)?;
        self.grid.ensure_same(u.grid())?;
        let mut buf = self.to_physical_pair(u, Some(v));
        for z in buf.iter_mut() {
            *z = Complex64::new(z.re * z.im, 0.0);
        }
        Ok(self.to_spectral_real(buf))
    }
}

/// Product of two fields with the grid's dealias policy.
pub fn dealiased_product(u: &SpectralField, v: &SpectralField) -> Result<SpectralField> {
    u.ensure_same_grid(v)?;
    Dealiaser::new(*u.grid()).product(u, v)
}
