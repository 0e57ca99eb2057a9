//! Non-homogeneous Littlewood–Paley decomposition on the torus.
//!
//! With `r = |ξ|/λ₀` and `λ₀ = 2π/L`, the profile `χ` equals 1 for `r ≤ 1`,
//! vanishes for `r ≥ 2`, and is monotone in between. Blocks are
//!
//! ```text
//! Δ₋₁ = χ(r),    Δⱼ = φ(2^{-j} r) with φ(r) = χ(r/2) − χ(r),  j ≥ 0,
//! Sⱼ  = χ(2^{-j} r) = Σ_{k ≤ j−1} Δₖ,
//! ```
//!
//! so `Δⱼ` lives on `2^j ≤ r ≤ 2^{j+2}` and the sum over all blocks
//! telescopes to 1. The mean mode and the first shell belong to `Δ₋₁`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::spectral::dealias::Dealiaser;
use crate::spectral::ops::weighted_norm_sq;
use crate::spectral::{GridSpec, SpectralField};

fn bump(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        (-1.0 / t).exp()
    }
}

/// Smooth radial cut-off: 1 on `[0, 1]`, 0 on `[2, ∞)`.
pub fn chi(r: f64) -> f64 {
    if r <= 1.0 {
        1.0
    } else if r >= 2.0 {
        0.0
    } else {
        let a = bump(2.0 - r);
        a / (a + bump(r - 1.0))
    }
}

/// `φ(r) = χ(r/2) − χ(r)`, supported in `[1, 4]`.
pub fn phi(r: f64) -> f64 {
    chi(0.5 * r) - chi(r)
}

/// Per-mode weights of every dyadic block on one grid.
#[derive(Clone, Debug)]
pub struct DyadicPartition {
    grid: GridSpec,
    frequency_unit: f64,
    j_max: i32,
    /// `tables[j + 1][idx]` is the weight of block `j` at mode `idx`.
    tables: Vec<Vec<f64>>,
}

impl DyadicPartition {
    pub fn new(grid: GridSpec) -> Self {
        let lambda0 = grid.frequency_unit();
        let radius: Vec<f64> = (0..grid.len())
            .map(|idx| {
                let (k1, k2) = grid.wavevector(idx);
                ((k1 * k1 + k2 * k2) as f64).sqrt()
            })
            .collect();
        let k_max = radius.iter().cloned().fold(0.0, f64::max);
        // smallest j with 2^{j+1} ≥ k_max; higher blocks see no lattice mode
        let j_max = (k_max.log2().ceil() as i32 - 1).max(0);
        let mut tables = Vec::with_capacity(j_max as usize + 2);
        tables.push(radius.iter().map(|&r| chi(r)).collect());
        for j in 0..=j_max {
            let scale = 0.5f64.powi(j);
            tables.push(radius.iter().map(|&r| phi(r * scale)).collect());
        }
        DyadicPartition {
            grid,
            frequency_unit: lambda0,
            j_max,
            tables,
        }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    /// `λ₀`, the physical size of dyadic radius 1.
    pub fn frequency_unit(&self) -> f64 {
        self.frequency_unit
    }

    pub fn j_max(&self) -> i32 {
        self.j_max
    }

    /// Block indices `−1 ..= j_max`.
    pub fn indices(&self) -> std::ops::RangeInclusive<i32> {
        -1..=self.j_max
    }

    pub fn weights(&self, j: i32) -> Result<&[f64]> {
        if j < -1 || j > self.j_max {
            return Err(Error::InvalidArgument(format!(
                "dyadic index {j} outside -1..={}",
                self.j_max
            )));
        }
        Ok(&self.tables[(j + 1) as usize])
    }

    fn check(&self, u: &SpectralField) -> Result<()> {
        self.grid.ensure_same(u.grid())
    }

    /// `Δⱼu`.
    pub fn dyadic_block(&self, u: &SpectralField, j: i32) -> Result<SpectralField> {
        self.check(u)?;
        let w = self.weights(j)?;
        Ok(u.map_indexed(|idx, c| c * w[idx]))
    }

    /// `Sⱼu = Σ_{k ≤ j−1} Δₖu`; zero for `j ≤ −1`.
    pub fn low_cut(&self, u: &SpectralField, j: i32) -> Result<SpectralField> {
        self.check(u)?;
        if j <= -1 {
            return Ok(SpectralField::zeros(self.grid));
        }
        if j > self.j_max + 1 {
            return Ok(u.clone());
        }
        let hi = j - 1;
        let tables = &self.tables[..=(hi + 1) as usize];
        Ok(u.map_indexed(|idx, c| c * tables.iter().map(|t| t[idx]).sum::<f64>()))
    }

    /// Sum of all block weights at every mode (should be 1).
    pub fn partition_sum(&self) -> Vec<f64> {
        (0..self.grid.len())
            .map(|idx| self.tables.iter().map(|t| t[idx]).sum())
            .collect()
    }

    /// `‖Δⱼu‖²_{L²}` for every block.
    pub fn block_energies(&self, u: &SpectralField) -> Result<Vec<(i32, f64)>> {
        self.check(u)?;
        let l = self.grid.box_length();
        Ok(self
            .indices()
            .zip(&self.tables)
            .map(|(j, w)| {
                let e: f64 = u.coeffs().iter().zip(w).map(|(c, w)| w * w * c.norm_sqr()).sum();
                (j, l * l * e)
            })
            .collect())
    }

    /// `(Σⱼ 2^{2js} ‖Δⱼu‖²)^{1/2}`, the `B^s_{2,2}` norm.
    pub fn besov_norm(&self, u: &SpectralField, s: f64) -> Result<f64> {
        Ok(self
            .block_energies(u)?
            .into_iter()
            .map(|(j, e)| 2f64.powf(2.0 * j as f64 * s) * e)
            .sum::<f64>()
            .sqrt())
    }

    /// Per-mode ratio `Σⱼ 2^{2js}φⱼ² / (1+|ξ|²)^s`.
    fn weight_ratio(&self, idx: usize, s: f64) -> f64 {
        let w: f64 = self
            .indices()
            .zip(&self.tables)
            .map(|(j, t)| 2f64.powf(2.0 * j as f64 * s) * t[idx] * t[idx])
            .sum();
        w / (1.0 + self.grid.xi_sq(idx)).powf(s)
    }

    /// Constants `(c, C)` with `c ≤ ‖u‖_{B^s}/‖u‖_{H^s} ≤ C` for every field on
    /// this grid: square roots of the extreme per-mode weight ratios.
    pub fn equivalence_constants(&self, s: f64) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi: f64 = 0.0;
        for idx in 0..self.grid.len() {
            let q = self.weight_ratio(idx, s);
            lo = lo.min(q);
            hi = hi.max(q);
        }
        (lo.sqrt(), hi.sqrt())
    }

    /// Bony paraproduct `T_u v = Σⱼ S_{j−1}u · Δⱼv`.
    pub fn paraproduct(&self, u: &SpectralField, v: &SpectralField) -> Result<SpectralField> {
        self.check(u)?;
        self.check(v)?;
        let d = Dealiaser::new(self.grid);
        let mut out = SpectralField::zeros(self.grid);
        for j in 1..=self.j_max {
            let block = self.dyadic_block(v, j)?;
            if is_zero(&block) {
                continue;
            }
            let low = self.low_cut(u, j - 1)?;
            out += &d.product(&low, &block)?;
        }
        Ok(out)
    }

    /// `R(u, v) = Σⱼ Σ_{|j'−j| ≤ 1} Δⱼu · Δ_{j'}v`.
    pub fn remainder(&self, u: &SpectralField, v: &SpectralField) -> Result<SpectralField> {
        self.check(u)?;
        self.check(v)?;
        let d = Dealiaser::new(self.grid);
        let mut out = SpectralField::zeros(self.grid);
        for j in self.indices() {
            let bu = self.dyadic_block(u, j)?;
            if is_zero(&bu) {
                continue;
            }
            let lo = (j - 1).max(-1);
            let hi = (j + 1).min(self.j_max);
            let mut near = SpectralField::zeros(self.grid);
            for jp in lo..=hi {
                near += &self.dyadic_block(v, jp)?;
            }
            out += &d.product(&bu, &near)?;
        }
        Ok(out)
    }

    /// `‖∇^k Δⱼu‖ / ((2^j λ₀)^k ‖Δⱼu‖)`; `None` when the block is empty.
    pub fn bernstein_ratio(&self, u: &SpectralField, j: i32, k: u32) -> Result<Option<f64>> {
        let b = self.dyadic_block(u, j)?;
        let base = weighted_norm_sq(&b, |_| 1.0);
        if base == 0.0 {
            return Ok(None);
        }
        let top = weighted_norm_sq(&b, |x| x.powi(k as i32));
        let unit = 2f64.powi(j) * self.frequency_unit;
        Ok(Some((top / base).sqrt() / unit.powi(k as i32)))
    }

    /// CSV with columns `j,l2_of_block,weighted` where `weighted = 2^{js}·l2`.
    pub fn spectrum_csv(&self, u: &SpectralField, s: f64) -> Result<String> {
        let mut out = String::from("j,l2_of_block,weighted\n");
        for (j, e) in self.block_energies(u)? {
            let l2 = e.sqrt();
            let _ = writeln!(out, "{j},{l2:.17e},{:.17e}", 2f64.powf(j as f64 * s) * l2);
        }
        Ok(out)
    }
}

fn is_zero(u: &SpectralField) -> bool {
    u.coeffs().iter().all(|c| c.re == 0.0 && c.im == 0.0)
}

/// Largest `|ξ|/λ₀` reachable by a coefficient of `S_{j−1}u · Δⱼv`.
pub fn paraproduct_support_radius(j: i32) -> f64 {
    5.0 * 2f64.powi(j)
}
