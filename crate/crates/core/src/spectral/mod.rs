//! Grids, field representations, transforms, multipliers and products.

pub mod dealias;
pub mod field;
pub mod grid;
pub mod multiplier;
pub mod ops;
pub mod random;
pub mod snapshot;
mod transform;

pub use dealias::{dealiased_product, Dealiaser};
pub use field::{forward_transform, inverse_transform, RealField, SpectralField};
pub use grid::{DealiasPolicy, GridSpec};
pub use multiplier::{apply_multiplier, symbol_a, symbol_h, MultiplierTable, Symbol};
pub use ops::{
    bilaplacian, divergence, gradient, inner_product, laplacian, perp_gradient, project_jn, sobolev_norm,
    weighted_inner, weighted_norm_sq,
};
