use thiserror::Error;

/// Errors raised by evaluators, oracles and parameter validation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {param} must satisfy {constraint} (got {value})")]
    Domain {
        param: &'static str,
        constraint: &'static str,
        value: f64,
    },
    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: f64 },
    #[error("quadrature failed: estimate {value:e} with error {abs_err:e} exceeds requested {requested:e}")]
    QuadratureFailure {
        value: f64,
        abs_err: f64,
        requested: f64,
    },
    #[error("series terms grow before truncation N={terms} at r={r}")]
    DivergenceWarning { terms: usize, r: f64 },
    #[error("coefficient root test failed beyond index {index}")]
    ConvergenceRefused { index: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(param: &'static str, constraint: &'static str, value: f64) -> Self {
        Error::Domain {
            param,
            constraint,
            value,
        }
    }
}
