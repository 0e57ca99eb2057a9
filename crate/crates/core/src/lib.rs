//! Pseudo-spectral laboratory for the higher-order viscous quasi-geostrophic
//! equation
//!
//! ```text
//! ∂t (Id − Δ + Δ²) r + ∇⊥(Id − Δ) r · ∇Δ² r + μ Δ²(Id − Δ) r = f
//! ```
//!
//! on a periodic square box.

// `!(a > b)` is how inputs reject NaN alongside ordering
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bilinear;
pub mod cli;
pub mod decay;
pub mod diagnostics;
pub mod error;
pub mod evolution;
pub mod lp;
pub mod quadrature;
pub mod spectral;

pub use error::{Error, Result};
