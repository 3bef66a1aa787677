use std::f64::consts::{LN_2, PI};

use serde::Serialize;

use crate::error::Result;
use crate::params::Params;
use crate::specfun::{digamma, gamma, ln_gamma, sin_pi};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    SmallR,
    LargeR,
}

/// Leading behaviour `coefficient · r^exponent`, multiplied by
/// `(−2 log(r/2) + log_constant)` when `log_flag`, and by `e^{−r}` when
/// `exponential`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LeadingTerm {
    pub coefficient: f64,
    pub exponent: f64,
    pub log_flag: bool,
    pub log_constant: f64,
    pub exponential: bool,
}

impl LeadingTerm {
    fn power(coefficient: f64, exponent: f64) -> Self {
        LeadingTerm {
            coefficient,
            exponent,
            log_flag: false,
            log_constant: 0.0,
            exponential: false,
        }
    }

    pub fn eval(&self, r: f64) -> f64 {
        self.ln_abs(r).exp() * self.sign(r)
    }

    /// ln|leading(r)|, usable where the value itself underflows.
    pub fn ln_abs(&self, r: f64) -> f64 {
        let mut l = self.coefficient.abs().ln() + self.exponent * r.ln();
        if self.log_flag {
            l += (-2.0 * (r / 2.0).ln() + self.log_constant).abs().ln();
        }
        if self.exponential {
            l -= r;
        }
        l
    }

    fn sign(&self, r: f64) -> f64 {
        let mut s = self.coefficient.signum();
        if self.log_flag {
            s *= (-2.0 * (r / 2.0).ln() + self.log_constant).signum();
        }
        s
    }
}

fn relation(p: &Params) -> std::cmp::Ordering {
    let n = p.n as f64;
    if let Some(rf) = p.rational_form() {
        // α ν vs n exactly: a e vs n b f
        (rf.a as u128 * rf.e as u128).cmp(&(p.n as u128 * rf.b as u128 * rf.f as u128))
    } else {
        (p.alpha * p.nu).total_cmp(&n)
    }
}

pub fn leading_terms(p: &Params, regime: Regime) -> Result<LeadingTerm> {
    use std::cmp::Ordering::*;
    let (a, nu, n) = (p.alpha, p.nu, p.n as f64);
    let h = n / 2.0;
    let pi_h = PI.powf(h);
    match regime {
        Regime::LargeR if a == 2.0 => {
            let ln_c = -((h - 0.5 + nu) * LN_2) - (h - 0.5) * PI.ln() - ln_gamma(nu)?;
            Ok(LeadingTerm {
                coefficient: ln_c.exp(),
                exponent: nu - (n + 1.0) / 2.0,
                log_flag: false,
                log_constant: 0.0,
                exponential: true,
            })
        }
        Regime::LargeR => {
            let c = 2f64.powf(a) * nu / PI.powf(h + 1.0)
                * sin_pi(a / 2.0)
                * gamma((n + a) / 2.0)?
                * gamma((2.0 + a) / 2.0)?;
            Ok(LeadingTerm::power(c, -a - n))
        }
        Regime::SmallR => {
            let an = a * nu;
            match relation(p) {
                Less => {
                    let c = gamma((n - an) / 2.0)? / (2f64.powf(an) * pi_h * gamma(an / 2.0)?);
                    Ok(LeadingTerm::power(c, an - n))
                }
                Greater => {
                    let c = gamma(n / a)? * gamma((an - n) / a)?
                        / (2f64.powf(n - 1.0) * a * pi_h * gamma(nu)? * gamma(h)?);
                    Ok(LeadingTerm::power(c, 0.0))
                }
                Equal => {
                    let k =
                        digamma(h)? + digamma(1.0)? - (2.0 / a) * (digamma(nu)? - digamma(1.0)?);
                    Ok(LeadingTerm {
                        coefficient: 1.0 / (2f64.powf(n) * pi_h * gamma(h)?),
                        exponent: 0.0,
                        log_flag: true,
                        log_constant: k,
                        exponential: false,
                    })
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let t = leading_terms(&Params::new(1.0, 3.0, 1).unwrap(), Regime::SmallR).unwrap();
        assert!((t.coefficient - 1.0 / (2.0 * PI)).abs() < 1e-15);
        assert_eq!((t.exponent, t.log_flag), (0.0, false));

        let t = leading_terms(&Params::new(1.0, 1.0, 1).unwrap(), Regime::SmallR).unwrap();
        assert!(t.log_flag && t.exponent == 0.0);

        let t = leading_terms(&Params::new(2.0, 1.0, 1).unwrap(), Regime::LargeR).unwrap();
        assert!((t.coefficient - 0.5).abs() < 1e-15 && t.exponent == 0.0 && t.exponential);

        let t = leading_terms(&Params::new(1.0, 1.0, 2).unwrap(), Regime::SmallR).unwrap();
        assert!((t.coefficient - 1.0 / (2.0 * PI)).abs() < 1e-15 && t.exponent == -1.0);

        let t = leading_terms(&Params::new(1.0, 1.0, 1).unwrap(), Regime::LargeR).unwrap();
        assert!((t.coefficient - 1.0 / PI).abs() < 1e-15 && t.exponent == -2.0);
    }

    #[test]
    fn log_case_reduces_at_alpha_two() {
        // α=2, ν=n/2: the constant becomes 2ψ(1).
        let t = leading_terms(&Params::new(2.0, 1.0, 2).unwrap(), Regime::SmallR).unwrap();
        assert!((t.log_constant - 2.0 * digamma(1.0).unwrap()).abs() < 1e-14);
        assert!((t.coefficient - 1.0 / (4.0 * PI)).abs() < 1e-15);
    }
}
