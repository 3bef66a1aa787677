use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};
use crate::params::Params;
use crate::quad::{integrate, QuadOptions};
use crate::specfun::bessel_k_scaled;

use super::{check_alpha_lt2, check_r, EvalResult, Method};

/// sin(ν arg(1 + e^{iπα/2} u^α)) / |1 + e^{iπα/2} u^α|^ν
pub(crate) struct Weight {
    nu: f64,
    alpha: f64,
    cos_a: f64,
    sin_a: f64,
}

impl Weight {
    pub fn new(alpha: f64, nu: f64) -> Self {
        let (s, c) = (PI * alpha / 2.0).sin_cos();
        Weight {
            nu,
            alpha,
            cos_a: c,
            sin_a: s,
        }
    }

    pub fn eval(&self, u: f64) -> f64 {
        if u == 0.0 {
            return 0.0;
        }
        let ua = u.powf(self.alpha);
        if ua > 1e12 {
            // 1 + e^{iθ}v = v e^{iθ}(1 + e^{-iθ}/v)
            let inv = 1.0 / ua;
            let re = 1.0 + self.cos_a * inv;
            let im = -self.sin_a * inv;
            let arg = PI * self.alpha / 2.0 + im.atan2(re);
            let ln_mod = ua.ln() + 0.5 * (re * re + im * im).ln();
            return (self.nu * arg).sin() * (-self.nu * ln_mod).exp();
        }
        let re = 1.0 + self.cos_a * ua;
        let im = self.sin_a * ua;
        let arg = im.atan2(re);
        (self.nu * arg).sin() * (-0.5 * self.nu * (re * re + im * im).ln()).exp()
    }
}

fn breakpoints(r: f64, end: f64) -> Vec<f64> {
    let mut pts = vec![0.0, end];
    for &base in &[r, 1.0] {
        for k in -8..=12 {
            let t = base * 2f64.powi(k);
            if t > 0.0 && t < end {
                pts.push(t);
            }
        }
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs());
    pts
}

/// Adaptive quadrature of the positive-kernel integral in t = r u:
/// q = r^{-n} / (2^{n/2-1} π^{n/2+1}) ∫_0^∞ w(t/r) K_{n/2-1}(t) t^{n/2} dt.
pub fn eval_integral(p: &Params, r: f64, tol: f64) -> Result<EvalResult> {
    check_r(r)?;
    check_alpha_lt2(p)?;
    let tol = tol.max(1e-14);
    let h = p.half_n();
    let mu = h - 1.0;
    let w = Weight::new(p.alpha, p.nu);
    let mut fail: Option<Error> = None;
    let mut integrand = |t: f64| -> f64 {
        if t == 0.0 {
            return 0.0;
        }
        match bessel_k_scaled(mu, t) {
            Ok(k) => w.eval(t / r) * k * (h * t.ln() - t).exp(),
            Err(e) => {
                fail.get_or_insert(e);
                f64::NAN
            }
        }
    };
    let split = r.max(1.0);
    let opts = QuadOptions {
        abs_tol: 0.0,
        rel_tol: 0.5 * tol,
        max_panels: 4000,
    };
    let inner = integrate(&mut integrand, &breakpoints(r, split), &opts)?;
    let mut value = inner.value;
    let mut err = inner.abs_err;
    let mut evals = inner.evals;
    let mut lo = split;
    while lo < 2000.0 {
        let hi = 2.0 * lo;
        let panel_opts = QuadOptions {
            abs_tol: 0.05 * tol * value.abs(),
            ..opts
        };
        let panel = integrate(&mut integrand, &[lo, hi], &panel_opts)?;
        value += panel.value;
        err += panel.abs_err;
        evals += panel.evals;
        lo = hi;
        if panel.value.abs() < 0.25 * tol * value.abs() {
            err += panel.value.abs();
            break;
        }
    }
    if let Some(e) = fail {
        return Err(e);
    }
    let scale = (-(p.n as f64) * r.ln() - (h - 1.0) * LN_2 - (h + 1.0) * PI.ln()).exp();
    Ok(EvalResult {
        value: value * scale,
        method: Method::Integral,
        err_est: err * scale,
        terms_used: evals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_limits() {
        let w = Weight::new(1.0, 1.0);
        // α=1, ν=1: arg(1+iu) = atan u; sin(atan u)/sqrt(1+u²) = u/(1+u²)
        for &u in &[0.01, 0.5, 1.0, 7.0, 1e7, 1e13] {
            let e = u / (1.0 + u * u);
            assert!(((w.eval(u) - e) / e).abs() < 1e-13, "u={u}");
        }
    }

    #[test]
    fn laplace_limit_sanity() {
        // α=1, ν=1, n=1: ∫ cos(rt)/(1+t) dt / π, against the large-r law 1/(π r²).
        let p = Params::new(1.0, 1.0, 1).unwrap();
        let v = eval_integral(&p, 200.0, 1e-12).unwrap().value;
        let lead = 1.0 / (PI * 200.0 * 200.0);
        assert!((v / lead - 1.0).abs() < 1e-3);
    }

    #[test]
    fn nonnegative_and_reports_error() {
        for &(a, nu, n) in &[(0.5, 1.0, 1), (1.5, 2.5, 3), (1.9, 0.3, 2)] {
            let p = Params::new(a, nu, n).unwrap();
            for &r in &[1e-3, 0.3, 3.0, 30.0] {
                let e = eval_integral(&p, r, 1e-10).unwrap();
                assert!(
                    e.value > 0.0 && e.err_est <= 1e-9 * e.value,
                    "{a} {nu} {n} {r}: {e:?}"
                );
            }
        }
    }
}
