use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};
use crate::params::Params;
use crate::specfun::{bessel_k_scaled, ln_gamma};

use super::{check_r, EvalResult, Method};

/// ln q_{2,ν,n}(r); finite even where q itself underflows.
pub fn ln_closed2(p: &Params, r: f64) -> Result<f64> {
    check_r(r)?;
    if p.alpha != 2.0 {
        return Err(Error::domain("alpha", "alpha = 2", p.alpha));
    }
    let h = p.half_n();
    let ks = bessel_k_scaled(h - p.nu, r)?;
    Ok((p.nu - h) * r.ln() + ks.ln() - r - (h + p.nu - 1.0) * LN_2 - h * PI.ln() - ln_gamma(p.nu)?)
}

/// q_{2,ν,n}(r) = r^{ν-n/2} K_{n/2-ν}(r) / (2^{n/2+ν-1} π^{n/2} Γ(ν)).
pub fn eval_closed2(p: &Params, r: f64) -> Result<EvalResult> {
    let value = ln_closed2(p, r)?.exp();
    Ok(EvalResult {
        value,
        method: Method::Closed2,
        err_est: 1e-13 * value,
        terms_used: 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laplace_and_exponential_cases() {
        for &r in &[0.1, 1.0, 5.0] {
            let p = Params::new(2.0, 1.0, 1).unwrap();
            let v = eval_closed2(&p, r).unwrap().value;
            assert!(((v - (-r).exp() / 2.0) / v).abs() < 1e-13);
            let p = Params::new(2.0, 2.0, 3).unwrap();
            let v = eval_closed2(&p, r).unwrap().value;
            let e = (-r).exp() / (8.0 * PI);
            assert!(((v - e) / e).abs() < 1e-13);
        }
    }

    #[test]
    fn log_form_survives_underflow() {
        let p = Params::new(2.0, 1.0, 1).unwrap();
        let l = ln_closed2(&p, 1000.0).unwrap();
        assert!((l - (-1000.0 - LN_2)).abs() < 1e-10);
        assert!(eval_closed2(&Params::new(1.0, 1.0, 1).unwrap(), 1.0).is_err());
    }
}
