//! Quadrature kernels: adaptive Gauss–Kronrod, Gauss–Legendre rules, Wynn's
//! epsilon algorithm and partition–extrapolation for oscillatory tails.

mod epsilon;
mod gauss;
mod kronrod;

pub use epsilon::{Epsilon, EpsilonEstimate};
pub use gauss::GaussLegendre;
pub use kronrod::{gk21, integrate, integrate_oscillatory, QuadOptions, QuadResult};
