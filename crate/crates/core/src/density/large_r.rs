use std::f64::consts::{LN_2, PI};

use crate::error::Result;
use crate::num::{SignedLog, Sum};
use crate::params::Params;
use crate::specfun::{ln_gamma, sin_pi};

use super::{check_alpha_lt2, check_r, EvalResult, Method};

/// Coefficient of r^{-αj-n} in the large-r expansion, j ≥ 1.
pub fn large_r_term(p: &Params, j: usize) -> Result<SignedLog> {
    let (a, nu, n) = (p.alpha, p.nu, p.n as f64);
    let jf = j as f64;
    let s = sin_pi(a * jf / 2.0);
    let sign = if j % 2 == 1 { 1.0 } else { -1.0 } * s.signum();
    if s == 0.0 {
        return Ok(SignedLog {
            ln_abs: f64::NEG_INFINITY,
            sign: 0.0,
        });
    }
    let ln_abs = -ln_gamma(jf + 1.0)? + ln_gamma(nu + jf)? - ln_gamma(nu)?
        + s.abs().ln()
        + a * jf * LN_2
        + ln_gamma((n + a * jf) / 2.0)?
        + ln_gamma((2.0 + a * jf) / 2.0)?
        - (n + 2.0) / 2.0 * PI.ln();
    Ok(SignedLog { ln_abs, sign })
}

/// Explicit bound on |q − Σ_{j<N}| at r.
pub fn large_r_bound(p: &Params, r: f64, big_n: usize) -> Result<f64> {
    check_r(r)?;
    check_alpha_lt2(p)?;
    let (a, nu, n) = (p.alpha, p.nu, p.n as f64);
    let nf = big_n as f64;
    let s = sin_pi(a / 2.0);
    let ln_b = a * nf * LN_2
        + ln_gamma(nf + nu)?
        + ln_gamma((n + a * nf) / 2.0)?
        + ln_gamma((2.0 + a * nf) / 2.0)?
        - (n + 2.0) / 2.0 * PI.ln()
        - ln_gamma(nf + 1.0)?
        - ln_gamma(nu)?
        - (nu + nf) * s.ln()
        - (a * nf + n) * r.ln();
    Ok(ln_b.exp())
}

/// Partial sum over j = 1..N-1 with the explicit remainder bound as `err_est`.
pub fn eval_large_r_asym(p: &Params, r: f64, big_n: usize) -> Result<EvalResult> {
    check_r(r)?;
    check_alpha_lt2(p)?;
    let big_n = big_n.max(1);
    let ln_r = r.ln();
    let n = p.n as f64;
    let mut sum = Sum::default();
    for j in 1..big_n {
        let c = large_r_term(p, j)?;
        sum.add(c.times_pow(ln_r, -(p.alpha * j as f64 + n)));
    }
    Ok(EvalResult {
        value: sum.value(),
        method: Method::LargeRAsym,
        err_est: large_r_bound(p, r, big_n)? + 4.0 * f64::EPSILON * sum.abs_total(),
        terms_used: big_n - 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cauchy_like_leading_coefficient() {
        let p = Params::new(1.0, 1.0, 1).unwrap();
        let c = large_r_term(&p, 1).unwrap().value();
        assert!((c - 1.0 / PI).abs() < 1e-15);
    }

    #[test]
    fn empty_sum_at_one_term() {
        let p = Params::new(1.0, 1.0, 1).unwrap();
        let e = eval_large_r_asym(&p, 10.0, 1).unwrap();
        assert_eq!(e.value, 0.0);
        assert_eq!(e.terms_used, 0);
        assert!(e.err_est > 0.0);
    }

    #[test]
    fn even_terms_vanish_for_alpha_one() {
        let p = Params::new(1.0, 1.5, 2).unwrap();
        assert_eq!(large_r_term(&p, 2).unwrap().value(), 0.0);
        assert_eq!(large_r_term(&p, 4).unwrap().value(), 0.0);
    }
}
