//! Transmission coefficients, discrete gradient and divergence, and the
//! interpolation operators built on the third mesh.

pub mod gradient;
pub mod interpolate;
pub mod transmission;
pub mod viscosity;

#[cfg(test)]
pub(crate) mod testing;

pub use gradient::{
    discrete_divergence, discrete_gradient, flux_residual, half_stencils, sigma_value, HalfStencil, NodalValues,
    SubTriangleGradient,
};
pub use interpolate::{interpolate_p, interpolate_p1, DiscretePressure, DiscreteVelocity};
pub use transmission::{beta_coefficients, Beta, Transmission};
pub use viscosity::{average_viscosity, cell_averages, Viscosity, ViscosityField};
