//! Radial Fourier transforms of isotropic functions on ℝⁿ.
//!
//! For radial g, the n-dimensional transform reduces to a one-dimensional
//! integral against the Bessel kernel `Ĵ_μ(x) = x^{−μ} J_μ(x)` with
//! μ = n/2 − 1. The kernel is finite at 0, so the same code path covers the
//! origin.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quad::{integrate, integrate_oscillatory, QuadOptions, QuadResult};
use crate::specfun::{bessel_j, ln_gamma};

/// x^{−μ} J_μ(x) for x ≥ 0.
pub fn jhat(mu: f64, x: f64) -> Result<f64> {
    if x < 0.0 {
        return Err(Error::domain("x", "x >= 0", x));
    }
    if x < 2.0 {
        let q = -0.25 * x * x;
        let mut term = (-(mu * std::f64::consts::LN_2) - ln_gamma(mu + 1.0)?).exp();
        let mut sum = term;
        for k in 1..40 {
            term *= q / (k as f64 * (mu + k as f64));
            sum += term;
            if term.abs() <= 1e-17 * sum.abs() {
                break;
            }
        }
        return Ok(sum);
    }
    Ok(bessel_j(mu, x)? / x.powf(mu))
}

/// Approximate positive zeros of J_μ (McMahon's leading term).
fn zeros(mu: f64) -> impl Iterator<Item = f64> {
    (1..).map(move |m| (m as f64 + 0.5 * mu - 0.25) * PI)
}

/// ∫_0^∞ Ĵ_{n/2−1}(k t) t^{n−1} g(t) dt.
///
/// The range is split at powers of two up to the first kernel zero, then at
/// successive zeros with epsilon extrapolation over the oscillating tail.
/// `cutoff` bounds the support when g is negligible beyond it.
pub fn radial_integral<G>(n: u32, k: f64, mut g: G, cutoff: f64, tol: f64) -> Result<QuadResult>
where
    G: FnMut(f64) -> f64,
{
    let mu = n as f64 / 2.0 - 1.0;
    let mut failure = None;
    let mut f = |t: f64| -> f64 {
        match jhat(mu, k * t) {
            Ok(j) => j * t.powi(n as i32 - 1) * g(t),
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        }
    };
    let opts = QuadOptions::rel(tol);
    let result = if k == 0.0 {
        let mut pts = vec![0.0];
        let mut x = 1.0;
        while x < cutoff && pts.len() < 64 {
            pts.push(x);
            x *= 2.0;
        }
        if !cutoff.is_finite() {
            return Err(Error::domain("cutoff", "finite when k = 0", cutoff));
        }
        pts.push(cutoff);
        integrate(&mut f, &pts, &opts)
    } else {
        let first = zeros(mu).next().unwrap_or(PI) / k;
        let mut lead = Vec::new();
        let mut x = first;
        while x > 1.0 {
            x *= 0.5;
            lead.push(x);
        }
        lead.reverse();
        let breaks = lead.into_iter().chain(zeros(mu).map(move |z| z / k));
        integrate_oscillatory(&mut f, 0.0, breaks, cutoff, &opts)
    };
    if let Some(e) = failure {
        return Err(e);
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_limits_and_half_orders() {
        // Ĵ_{−1/2}(x) = √(2/π) cos x, Ĵ_{1/2}(x) = √(2/π) sin x / x
        let c = (2.0 / PI).sqrt();
        for &x in &[0.0, 0.3, 1.9, 2.1, 7.5] {
            assert!((jhat(-0.5, x).unwrap() - c * x.cos()).abs() < 1e-14);
            let s = if x == 0.0 { 1.0 } else { x.sin() / x };
            assert!((jhat(0.5, x).unwrap() - c * s).abs() < 1e-14);
        }
        // Ĵ_0(0) = 1, Ĵ_1(0) = 1/2
        assert_eq!(jhat(0.0, 0.0).unwrap(), 1.0);
        assert!((jhat(1.0, 0.0).unwrap() - 0.5).abs() < 1e-16);
    }

    #[test]
    fn gaussian_transform() {
        // ∫ Ĵ_0(kt) t e^{−t²/2} dt = e^{−k²/2}
        for &k in &[0.0, 0.5, 2.0, 5.0] {
            let r = radial_integral(2, k, |t| (-0.5 * t * t).exp(), 40.0, 1e-12).unwrap();
            assert!(
                (r.value - (-0.5 * k * k).exp()).abs() < 1e-11,
                "k={k}: {}",
                r.value
            );
        }
    }

    #[test]
    fn algebraic_decay_with_extrapolation() {
        // ∫ Ĵ_0(t) t /(1+t²)^{3/2} dt = e^{−1}
        let r =
            radial_integral(2, 1.0, |t| (1.0 + t * t).powf(-1.5), f64::INFINITY, 1e-10).unwrap();
        assert!((r.value - (-1.0f64).exp()).abs() < 1e-9, "{}", r.value);
    }
}
