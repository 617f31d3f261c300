//! Special functions: theta functions at imaginary modulus, Gaussians and
//! their one-sided theta sums, Fourier transforms and Dawson's integral.

mod dawson;
mod gaussian;
mod theta;
mod trig;

pub use dawson::dawson;
pub(crate) use gaussian::peaked_unit_integral;
pub use gaussian::{
    ft_gaussian, ft_truncated_gaussian, gaussian, gaussian_prime, odd_gaussian, theta_plus, theta_plus_partial,
    truncated_gaussian, vartheta_plus, vartheta_plus_partial, GaussianFamily,
};
pub use theta::{theta1, theta2, theta2_dz_imag, theta2_imag, theta3, theta3_dz, Theta, ThetaRepr};
pub use trig::{cos_pi, sin_pi, sinc};
