//! Isotropic α-stable radial density and the gamma-mixture form of the
//! Linnik density.
//!
//! The stable law has characteristic function `exp(−‖t‖^α)`; its radial
//! profile is
//!
//! s̃(r) = (2π)^{−n/2} ∫_0^∞ Ĵ_{n/2−1}(t r) t^{n−1} e^{−t^α} dt,
//!
//! and the Linnik density is the scale mixture
//!
//! q(r) = (1/Γ(ν)) ∫_0^∞ v^{ν−n/α−1} e^{−v} s̃(r v^{−1/α}) dv.

use std::f64::consts::{LN_2, PI};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hankel::radial_integral;
use crate::num::{SignedLog, Sum};
use crate::params::Params;
use crate::quad::{integrate, QuadOptions};
use crate::specfun::{ln_gamma, lower_incomplete_gamma, sin_pi};

/// Smallest α accepted by the quadrature path.
pub const MIN_QUAD_ALPHA: f64 = 0.3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StableParams {
    pub alpha: f64,
    pub n: u32,
}

impl StableParams {
    pub fn new(alpha: f64, n: u32) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 2.0) {
            return Err(Error::domain("alpha", "0 < alpha <= 2", alpha));
        }
        if n == 0 {
            return Err(Error::domain("n", "n >= 1", 0.0));
        }
        Ok(StableParams { alpha, n })
    }
}

impl From<&Params> for StableParams {
    fn from(p: &Params) -> Self {
        StableParams {
            alpha: p.alpha,
            n: p.n,
        }
    }
}

/// s̃(0) = Γ(n/α) / ((2π)^{n/2} α 2^{n/2−1} Γ(n/2)).
pub fn stable_at_origin(sp: &StableParams) -> Result<f64> {
    let (a, n) = (sp.alpha, sp.n as f64);
    let ln = ln_gamma(n / a)?
        - a.ln()
        - (n / 2.0) * (2.0 * PI).ln()
        - (n / 2.0 - 1.0) * LN_2
        - ln_gamma(n / 2.0)?;
    Ok(ln.exp())
}

/// Coefficient c_k of R^{−n−αk} in the large-R expansion of s̃, k ≥ 1.
pub fn stable_tail_coefficient(sp: &StableParams, k: usize) -> Result<SignedLog> {
    let (a, n) = (sp.alpha, sp.n as f64);
    let kf = k as f64;
    let s = sin_pi(a * kf / 2.0);
    if s == 0.0 {
        return Ok(SignedLog {
            ln_abs: f64::NEG_INFINITY,
            sign: 0.0,
        });
    }
    let sign = if k % 2 == 1 { 1.0 } else { -1.0 } * s.signum();
    let ln_abs = -ln_gamma(kf + 1.0)?
        + s.abs().ln()
        + a * kf * LN_2
        + ln_gamma((n + a * kf) / 2.0)?
        + ln_gamma((2.0 + a * kf) / 2.0)?
        - (n + 2.0) / 2.0 * PI.ln();
    Ok(SignedLog { ln_abs, sign })
}

/// Where e^{−t^α} t^{n−1} falls below 1e-20 of its scale.
fn damping_cutoff(alpha: f64, n: u32) -> f64 {
    let mut t = 46.0_f64.powf(1.0 / alpha);
    for _ in 0..4 {
        t = (46.0 + (n as f64 - 1.0) * t.ln().max(0.0)).powf(1.0 / alpha);
    }
    t
}

/// Radial density of the isotropic α-stable law at ‖x‖ = r, to relative `tol`.
pub fn stable_radial_density(sp: &StableParams, r: f64, tol: f64) -> Result<f64> {
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::domain("r", "r >= 0", r));
    }
    if sp.alpha < MIN_QUAD_ALPHA {
        return Err(Error::domain(
            "alpha",
            "alpha >= 0.3 for the stable quadrature",
            sp.alpha,
        ));
    }
    if r == 0.0 {
        return stable_at_origin(sp);
    }
    let a = sp.alpha;
    let cutoff = damping_cutoff(a, sp.n);
    let res = radial_integral(sp.n, r, |t| (-t.powf(a)).exp(), cutoff, tol.max(1e-14))?;
    Ok(res.value * (2.0 * PI).powf(-(sp.n as f64) / 2.0))
}

/// Linnik density by the gamma mixture of stable laws.
///
/// Small v (large stable argument) uses the tail expansion of s̃ integrated
/// in closed form with incomplete gamma functions; the rest is adaptive.
pub fn mixture_density(p: &Params, r: f64, tol: f64) -> Result<f64> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::domain("r", "r > 0", r));
    }
    let sp = StableParams::from(p);
    let (a, nu, n) = (p.alpha, p.nu, p.n as f64);
    let tol = tol.max(1e-12);
    let ln_gnu = ln_gamma(nu)?;

    let (big_r, terms) = tail_split(&sp, tol)?;
    let mut tail = Sum::default();
    let mut v0 = 0.0;
    if let Some(terms) = terms {
        v0 = (r / big_r).powf(a);
        let lr = r.ln();
        for (k, c) in terms.iter().enumerate() {
            let k = k + 1;
            let s = nu + k as f64;
            let g = lower_incomplete_gamma(s, v0)?;
            tail.add(c.times_pow(lr, -n - a * k as f64) * g);
        }
    }
    let tail = tail.value() * (-ln_gnu).exp();

    let inner_tol = 0.05 * tol;
    let mut failure = None;
    let f = |v: f64| -> f64 {
        if v <= 0.0 {
            return 0.0;
        }
        let arg = r * v.powf(-1.0 / a);
        match stable_radial_density(&sp, arg, inner_tol) {
            Ok(s) => ((nu - n / a - 1.0) * v.ln() - v - ln_gnu).exp() * s,
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        }
    };
    let top = 60.0 + 2.0 * nu;
    let mut pts = vec![v0];
    let mut x = if v0 > 0.0 { v0 * 2.0 } else { 1e-3 };
    while x < top {
        if x > v0 {
            pts.push(x);
        }
        x *= 2.0;
    }
    pts.push(top);
    let body = integrate(f, &pts, &QuadOptions::rel(0.5 * tol))?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(body.value + tail)
}

/// Radius beyond which the stable tail expansion is used, with its
/// coefficients; `None` terms for α = 2, where s̃ has no algebraic tail.
fn tail_split(sp: &StableParams, tol: f64) -> Result<(f64, Option<Vec<SignedLog>>)> {
    if sp.alpha == 2.0 {
        return Ok((f64::INFINITY, None));
    }
    let a = sp.alpha;
    let c1 = stable_tail_coefficient(sp, 1)?;
    let mut big_r = 8.0_f64;
    loop {
        let lr = big_r.ln();
        let lead = c1.ln_abs - a * lr;
        let mut terms = vec![c1];
        let mut prev = lead;
        for k in 2..=40 {
            let c = stable_tail_coefficient(sp, k)?;
            let mag = c.ln_abs - a * k as f64 * lr;
            if c.sign != 0.0 && mag > prev && k > 2 {
                break;
            }
            if c.sign != 0.0 && mag < lead + (0.01 * tol).ln() {
                return Ok((big_r, Some(terms)));
            }
            terms.push(c);
            if c.sign != 0.0 {
                prev = mag;
            }
        }
        big_r *= 2.0;
        if big_r > 1e4 {
            return Err(Error::ConvergenceRefused { index: 40 });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_and_cauchy() {
        let sp = StableParams::new(2.0, 1).unwrap();
        let v = stable_radial_density(&sp, 1.0, 1e-12).unwrap();
        assert!((v - (4.0 * PI).powf(-0.5) * (-0.25f64).exp()).abs() < 1e-12);
        // n-variate Cauchy: Γ((n+1)/2)/π^{(n+1)/2} (1+r²)^{−(n+1)/2}
        for n in 1..=3u32 {
            let sp = StableParams::new(1.0, n).unwrap();
            let h = (n as f64 + 1.0) / 2.0;
            let c = crate::specfun::gamma(h).unwrap() / PI.powf(h);
            for &r in &[0.0, 0.3, 2.0, 9.0] {
                let v = stable_radial_density(&sp, r, 1e-11).unwrap();
                let exact = c * (1.0 + r * r).powf(-h);
                assert!(
                    ((v - exact) / exact).abs() < 1e-9,
                    "n={n} r={r}: {v} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn tail_coefficient_matches_cauchy() {
        // Cauchy in 1-d: 1/(π r²) leading, −1/(π r⁴) next.
        let sp = StableParams::new(1.0, 1).unwrap();
        assert!((stable_tail_coefficient(&sp, 1).unwrap().value() - 1.0 / PI).abs() < 1e-15);
        assert_eq!(stable_tail_coefficient(&sp, 2).unwrap().value(), 0.0);
        assert!((stable_tail_coefficient(&sp, 3).unwrap().value() + 1.0 / PI).abs() < 1e-14);
    }

    #[test]
    fn small_alpha_is_refused() {
        let sp = StableParams::new(0.2, 1).unwrap();
        assert!(stable_radial_density(&sp, 1.0, 1e-8).is_err());
        assert!(StableParams::new(2.5, 1).is_err());
    }
}
