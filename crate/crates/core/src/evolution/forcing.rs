//! External forcing laws.

use crate::error::{Error, Result};
use crate::spectral::ops::project_jn;
use crate::spectral::{GridSpec, SpectralField};

#[derive(Clone, Debug, PartialEq, Default)]
pub enum ForcingSpec {
    #[default]
    Zero,
    /// `f(t, x) = K (1 + t)^{−1−η} g(x)`.
    SeparableDecaying {
        profile: SpectralField,
        amplitude: f64,
        eta: f64,
    },
    /// Piecewise-linear interpolation between nodes, held constant before the
    /// first node and after the last.
    Tabulated {
        times: Vec<f64>,
        fields: Vec<SpectralField>,
    },
}

impl ForcingSpec {
    pub fn separable(profile: SpectralField, amplitude: f64, eta: f64) -> Result<Self> {
        if !(amplitude.is_finite() && amplitude > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "forcing amplitude {amplitude} must be > 0"
            )));
        }
        if !(eta > 0.0 && eta < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "forcing exponent {eta} must lie in (0, 1)"
            )));
        }
        if !profile.is_finite() {
            return Err(Error::NonFinite("forcing profile".into()));
        }
        Ok(ForcingSpec::SeparableDecaying {
            profile,
            amplitude,
            eta,
        })
    }

    pub fn tabulated(times: Vec<f64>, fields: Vec<SpectralField>) -> Result<Self> {
        if times.is_empty() || times.len() != fields.len() {
            return Err(Error::InvalidArgument(
                "tabulated forcing needs one field per node and at least one node".into(),
            ));
        }
        if times.iter().any(|t| !t.is_finite()) || times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidArgument(
                "forcing nodes must increase strictly".into(),
            ));
        }
        for f in &fields {
            fields[0].grid().ensure_same(f.grid())?;
            if !f.is_finite() {
                return Err(Error::NonFinite("tabulated forcing".into()));
            }
        }
        Ok(ForcingSpec::Tabulated { times, fields })
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ForcingSpec::Zero)
    }

    /// Fails unless every field of the forcing lives on `grid`.
    pub fn check_grid(&self, grid: &GridSpec) -> Result<()> {
        match self {
            ForcingSpec::Zero => Ok(()),
            ForcingSpec::SeparableDecaying { profile, .. } => grid.ensure_same(profile.grid()),
            ForcingSpec::Tabulated { fields, .. } => {
                fields.iter().try_for_each(|f| grid.ensure_same(f.grid()))
            }
        }
    }

    /// `K(1+t)^{−1−η}` for separable forcing, `None` otherwise.
    pub fn time_factor(&self, t: f64) -> Option<f64> {
        match self {
            ForcingSpec::SeparableDecaying { amplitude, eta, .. } => {
                Some(amplitude * (1.0 + t).powf(-1.0 - eta))
            }
            _ => None,
        }
    }

    /// `f(t)`, or `None` for zero forcing.
    pub fn evaluate(&self, t: f64) -> Option<SpectralField> {
        match self {
            ForcingSpec::Zero => None,
            ForcingSpec::SeparableDecaying { profile, .. } => {
                Some(profile.scaled(self.time_factor(t).unwrap_or(0.0)))
            }
            ForcingSpec::Tabulated { times, fields } => {
                let (i, w) = locate(times, t);
                if w == 0.0 {
                    Some(fields[i].clone())
                } else {
                    let mut out = fields[i].scaled(1.0 - w);
                    out += &fields[i + 1].scaled(w);
                    Some(out)
                }
            }
        }
    }

    /// The same law with every spatial field passed through `𝒥ₙ`.
    pub fn projected(&self, n_cut: f64) -> ForcingSpec {
        match self {
            ForcingSpec::Zero => ForcingSpec::Zero,
            ForcingSpec::SeparableDecaying {
                profile,
                amplitude,
                eta,
            } => ForcingSpec::SeparableDecaying {
                profile: project_jn(profile, n_cut),
                amplitude: *amplitude,
                eta: *eta,
            },
            ForcingSpec::Tabulated { times, fields } => ForcingSpec::Tabulated {
                times: times.clone(),
                fields: fields.iter().map(|f| project_jn(f, n_cut)).collect(),
            },
        }
    }

    /// Applies a mode-wise map to every spatial field.
    pub(crate) fn map_fields(&self, f: impl Fn(&SpectralField) -> SpectralField) -> ForcingSpec {
        match self {
            ForcingSpec::Zero => ForcingSpec::Zero,
            ForcingSpec::SeparableDecaying {
                profile,
                amplitude,
                eta,
            } => ForcingSpec::SeparableDecaying {
                profile: f(profile),
                amplitude: *amplitude,
                eta: *eta,
            },
            ForcingSpec::Tabulated { times, fields } => ForcingSpec::Tabulated {
                times: times.clone(),
                fields: fields.iter().map(f).collect(),
            },
        }
    }
}

/// Segment index and weight of the right node; clamped outside the table.
pub(crate) fn locate(times: &[f64], t: f64) -> (usize, f64) {
    let last = times.len() - 1;
    if t <= times[0] {
        return (0, 0.0);
    }
    if t >= times[last] {
        return (last, 0.0);
    }
    let i = times.partition_point(|&x| x <= t) - 1;
    (i, (t - times[i]) / (times[i + 1] - times[i]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::ops::sobolev_norm;

    #[test]
    fn separable_norm_shape() {
        let grid = GridSpec::new(8, 1.0).unwrap();
        let g = SpectralField::single_mode(grid, 1, 2, 1.0, 0.3);
        let f = ForcingSpec::separable(g.clone(), 2.0, 0.75).unwrap();
        for t in [0.0, 1.0, 10.0] {
            let ft = f.evaluate(t).unwrap();
            let expect = 2.0 * (1.0 + t).powf(-1.75) * sobolev_norm(&g, 2.0);
            assert!((sobolev_norm(&ft, 2.0) - expect).abs() <= 1e-14 * expect);
        }
    }

    #[test]
    fn separable_validation() {
        let grid = GridSpec::new(8, 1.0).unwrap();
        let g = SpectralField::zeros(grid);
        assert!(ForcingSpec::separable(g.clone(), 1.0, 1.0).is_err());
        assert!(ForcingSpec::separable(g, -1.0, 0.5).is_err());
    }

    #[test]
    fn tabulated_interpolates_and_clamps() {
        let grid = GridSpec::new(8, 1.0).unwrap();
        let a = SpectralField::single_mode(grid, 1, 0, 1.0, 0.0);
        let f = ForcingSpec::tabulated(vec![1.0, 3.0], vec![a.clone(), a.scaled(3.0)]).unwrap();
        assert_eq!(f.evaluate(0.0).unwrap(), a);
        assert_eq!(f.evaluate(2.0).unwrap(), a.scaled(2.0));
        assert_eq!(f.evaluate(9.0).unwrap(), a.scaled(3.0));
        assert!(ForcingSpec::tabulated(vec![1.0, 1.0], vec![a.clone(), a]).is_err());
    }
}
