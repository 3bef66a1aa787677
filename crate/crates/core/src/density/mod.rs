//! Evaluators of the radial density q_{α,ν,n}(r).
//!
//! | method | regime |
//! |---|---|
//! | [`eval_closed2`] | α = 2, Bessel-K closed form |
//! | [`eval_integral`] | 0 < α < 2, positive-kernel integral, any r |
//! | [`eval_small_r_series`] | residue series, small r |
//! | [`eval_large_r_asym`] | algebraic asymptotic series with explicit remainder bound |
//! | [`eval_entire_series`] | convergent entire-function form |
//! | [`eval_mellin_barnes`] | vertical-line contour integral |
//!
//! [`eval_auto`] picks the cheapest method that meets the tolerance.

mod closed;
mod entire;
mod integral;
mod large_r;
mod leading;
mod mellin;
mod small_r;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::Params;

pub use closed::{eval_closed2, ln_closed2};
pub use entire::{build_entire_series, eval_entire_series, SeriesRep, DEFAULT_SERIES_LEN};
pub use integral::eval_integral;
pub use large_r::{eval_large_r_asym, large_r_bound, large_r_term};
pub use leading::{leading_terms, LeadingTerm, Regime};
pub use mellin::{eval_mellin_barnes, MellinConfig};
pub use small_r::{eval_small_r_series, eval_small_r_series_auto, SMALL_R_MAX_TERMS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Closed2,
    Integral,
    SmallRSeries,
    LargeRAsym,
    EntireSeries,
    MellinBarnes,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Closed2 => "closed2",
            Method::Integral => "integral",
            Method::SmallRSeries => "small_r_series",
            Method::LargeRAsym => "large_r_asym",
            Method::EntireSeries => "entire_series",
            Method::MellinBarnes => "mellin_barnes",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Density value with the method used and an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalResult {
    pub value: f64,
    pub method: Method,
    pub err_est: f64,
    pub terms_used: usize,
}

pub(crate) fn check_r(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::domain("r", "r > 0", r))
    }
}

pub(crate) fn check_alpha_lt2(p: &Params) -> Result<()> {
    if p.alpha < 2.0 {
        Ok(())
    } else {
        Err(Error::domain("alpha", "alpha < 2", p.alpha))
    }
}

/// Regime dispatcher. `tol` is relative.
pub fn eval_auto(p: &Params, r: f64, tol: f64) -> Result<EvalResult> {
    check_r(r)?;
    if p.alpha == 2.0 {
        return eval_closed2(p, r);
    }
    let tol = tol.max(1e-15);
    if r <= 4.0 {
        if let Ok(s) = eval_small_r_series_auto(p, r, tol) {
            return Ok(s);
        }
    } else if let Some(a) = large_r_auto(p, r, tol) {
        return Ok(a);
    }
    eval_integral(p, r, tol)
}

/// Smallest N whose remainder bound meets `tol`, if any N ≤ 40 does.
fn large_r_auto(p: &Params, r: f64, tol: f64) -> Option<EvalResult> {
    let lead = eval_large_r_asym(p, r, 2).ok()?.value.abs();
    if lead == 0.0 {
        return None;
    }
    let mut prev = f64::INFINITY;
    for n in 1..=40 {
        let b = large_r_bound(p, r, n).ok()?;
        if b <= tol * 0.5 * lead {
            let res = eval_large_r_asym(p, r, n).ok()?;
            if res.err_est <= tol * res.value.abs() {
                return Some(res);
            }
        }
        if b > prev && n > 2 {
            return None;
        }
        prev = b;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dispatcher_picks_closed_form_for_alpha_two() {
        let p = Params::new(2.0, 1.3, 2).unwrap();
        assert_eq!(eval_auto(&p, 0.7, 1e-10).unwrap().method, Method::Closed2);
    }

    #[test]
    fn dispatcher_uses_asymptotics_far_out() {
        let p = Params::new(1.0, 1.0, 1).unwrap();
        let e = eval_auto(&p, 100.0, 1e-10).unwrap();
        assert_eq!(e.method, Method::LargeRAsym);
        assert!(e.err_est <= 1e-10 * e.value);
    }

    #[test]
    fn rejects_bad_radius() {
        let p = Params::new(1.0, 1.0, 1).unwrap();
        assert!(eval_auto(&p, 0.0, 1e-8).is_err());
        assert!(eval_auto(&p, f64::NAN, 1e-8).is_err());
    }
}
