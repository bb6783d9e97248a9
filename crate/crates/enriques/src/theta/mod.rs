//! Jacobi theta functions and the E8 theta function.

mod e8;
mod jacobi;

pub use e8::{
    e8_vectors, lattice_enumerate, q_e8_rows, quadratic_form, scale_q_e8, theta_e8,
    theta_e8_bounded, E8QSeries, E8Vector, Q_E8,
};
pub use jacobi::{
    check_closed_sum_from_inv_theta, check_theta_quotient_eisenstein, check_theta_taylor,
    inv_theta_sq, inv_theta_sq_closed_form, jq_to_z_grid, km_closed_sum, km_kernel,
    km_kernel_coefficient, km_kernel_product, theta, theta_prefactor_squared, theta_quotient,
    theta_squared, z_grid_exp, InvThetaSquared, ThetaSeries,
};
