//! Energy functionals, balance residuals and run comparisons.

mod balance;
mod compare;
mod energy;

pub use balance::{
    balance_residual_series, first_balance_residual, first_balance_series, second_balance_residual,
    second_balance_series,
};
pub use compare::{
    compare_h3, pointwise_bound_check, pointwise_difference_check, H3Comparison, PointwiseReport, Sample,
};
pub use energy::{
    dissipation_first, dissipation_second, energy_first, energy_second, energy_sigma, energy_tilde_s,
    work_first, work_second, x_of, y_of, EnergyReport,
};
