//! Extremal entire approximations of exponential type to the truncated
//! Gaussian `x⁺⁰ e^{-πλx²}` and the odd Gaussian `sgn(x) e^{-πλx²}`,
//! together with the special functions and quadrature they rest on and a
//! numerical verification suite for their properties.

pub mod error;
pub mod extremal;
pub mod measures;
pub mod quadrature;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
