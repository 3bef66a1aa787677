//! Special functions: gamma family and Bessel functions of real order.

mod bessel;
mod gamma;

pub use bessel::{bessel_j, bessel_k, bessel_k_eval, bessel_k_scaled, KEval, MAX_ORDER};
pub use gamma::{
    cos_pi, digamma, gamma, gamma_sign, ln_gamma, ln_gamma_complex, ln_gamma_split,
    lower_incomplete_gamma, sin_pi,
};
