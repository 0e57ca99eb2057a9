//! Time integration of the nonlinear equation, its Galerkin truncations and
//! the linear parabolic limit.

mod config;
mod forcing;
mod linear;
mod simulate;
mod solver;
mod stability;

pub use config::{InitialCondition, RunConfig, Stepper};
pub use forcing::ForcingSpec;
pub use linear::linear_evolve;
pub use simulate::{
    fill_balance, simulate, simulate_to_dir, RunOutput, Simulation, TimeSeriesRecord, CFL_LIMIT,
};
pub use solver::{cfl_number, phi_functions, Solver};
pub use stability::{compare_runs, gradient_l4_fourth, StabilityReport, ENVELOPE_TOLERANCE};
