use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::Params;
use crate::quad::GaussLegendre;
use crate::specfun::{ln_gamma, ln_gamma_complex};

use super::{check_alpha_lt2, check_r, EvalResult, Method};

/// Contour Re w = c, truncated at |Im w| = max_height, with `points`-node
/// Gauss–Legendre panels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MellinConfig {
    pub c: f64,
    pub max_height: f64,
    pub points: usize,
}

impl MellinConfig {
    /// c = min(ν, 1/α)/2 and a height where e^{−πY} Y^{n/2+ν} < tol/10.
    pub fn default_for(p: &Params, tol: f64) -> Self {
        let c = 0.5 * p.nu.min(1.0 / p.alpha);
        let k = p.half_n() + p.nu;
        let target = (tol / 10.0).max(1e-300).ln();
        let mut y = 1.0_f64;
        while -PI * y + k * y.ln() >= target && y < 400.0 {
            y += 0.5;
        }
        MellinConfig {
            c,
            max_height: y,
            points: 15,
        }
    }

    pub fn with_c(self, c: f64) -> Self {
        MellinConfig { c, ..self }
    }
}

/// ln(r^{-n} f(w)).
fn ln_integrand(p: &Params, w: Complex64, lr2: f64, lnr: f64) -> Result<Complex64> {
    let (a, nu, n) = (p.alpha, p.nu, p.n as f64);
    Ok(
        ln_gamma_complex(w)? + ln_gamma_complex(nu - w)? + ln_gamma_complex((n - a * w) / 2.0)?
            - ln_gamma_complex(a * w / 2.0)?
            + a * w * lr2
            - n * lnr,
    )
}

/// q = r^{-n}/(π^{n/2}Γ(ν)) · (1/π) ∫_0^Y Re f(c + iy) dy.
pub fn eval_mellin_barnes(p: &Params, r: f64, cfg: &MellinConfig) -> Result<EvalResult> {
    check_r(r)?;
    check_alpha_lt2(p)?;
    let upper = p.nu.min(1.0 / p.alpha);
    if !(cfg.c > 0.0 && cfg.c < upper) {
        return Err(Error::domain("c", "0 < c < min(nu, 1/alpha)", cfg.c));
    }
    let lr2 = (r / 2.0).ln();
    let lnr = r.ln();
    let c = cfg.c;
    // Nearest poles: 0 on the left, min(ν, n/α) on the right.
    let d = c.min(p.nu.min(p.n as f64 / p.alpha) - c);
    let fine_h = d.min(1.0);
    let gl = GaussLegendre::new(cfg.points.max(2));
    let mut failure = None;
    let mut f = |y: f64| -> f64 {
        match ln_integrand(p, Complex64::new(c, y), lr2, lnr) {
            Ok(l) => l.exp().re,
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        }
    };
    let mut fine = 0.0;
    let mut coarse = 0.0;
    let mut y = 0.0;
    let mut panels = 0;
    while y < cfg.max_height {
        let h = if y < 3.0 { fine_h } else { 1.0 };
        let top = (y + 2.0 * h).min(cfg.max_height);
        let mid = 0.5 * (y + top);
        fine += gl.integrate(&mut f, y, mid) + gl.integrate(&mut f, mid, top);
        coarse += gl.integrate(&mut f, y, top);
        panels += 2;
        y = top;
    }
    let tail = f(cfg.max_height).abs() / PI;
    if let Some(e) = failure {
        return Err(e);
    }
    let pref = (-(p.half_n()) * PI.ln() - ln_gamma(p.nu)?).exp() / PI;
    Ok(EvalResult {
        value: pref * fine,
        method: Method::MellinBarnes,
        err_est: pref * ((fine - coarse).abs() + tail),
        terms_used: panels * cfg.points,
    })
}
