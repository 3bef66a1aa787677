//! Evaluation, sampling and verification of the n-variate generalized Linnik
//! law with characteristic function `1/(1+‖t‖^α)^ν`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod density;
pub mod error;
pub mod hankel;
mod num;
pub mod par;
pub mod params;
pub mod quad;
pub mod sampling;
pub mod specfun;
pub mod stable;
pub mod verify;

pub use density::{eval_auto, EvalResult, Method};
pub use error::{Error, Result};
pub use num::SignedLog;
pub use params::{validate, LambdaInfo, Params, RationalForm};
