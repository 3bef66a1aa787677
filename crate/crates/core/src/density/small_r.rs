use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::num::{Dd, SignedLog, Sum};
use crate::params::{CollisionKind, Params};
use crate::specfun::{digamma, ln_gamma, ln_gamma_complex, ln_gamma_split};

use super::{check_alpha_lt2, check_r, EvalResult, Method};

pub const SMALL_R_MAX_TERMS: usize = 60;

/// Pole pairs closer than this are merged and summed by a contour integral.
const NEAR_GAP: f64 = 1e-3;
const CIRCLE_POINTS: usize = 128;

#[derive(Debug, Clone, Copy)]
enum Kind {
    /// Simple pole at ν + l.
    Nu(u64),
    /// Simple pole at (n + 2j)/α.
    Bessel,
    /// Exact double pole at ν + l = (n + 2j)/α, or a merged near pair.
    Pair(u64),
}

#[derive(Debug, Clone, Copy)]
struct Term {
    loc: f64,
    kind: Kind,
    value: f64,
}

struct Expansion {
    nu: f64,
    terms: Vec<Term>,
    prefactor: f64,
}

impl Term {
    fn included(&self, nu: f64, big_n: u64) -> bool {
        match self.kind {
            Kind::Nu(l) | Kind::Pair(l) => l < big_n,
            Kind::Bessel => self.loc < nu + big_n as f64 - 0.5,
        }
    }

    fn next_band(&self, nu: f64, big_n: u64) -> bool {
        match self.kind {
            Kind::Nu(l) | Kind::Pair(l) => l == big_n,
            Kind::Bessel => {
                self.loc >= nu + big_n as f64 - 0.5 && self.loc < nu + big_n as f64 + 0.5
            }
        }
    }
}

/// Γ((n − α(ν+l))/2), with its argument formed in double-double arithmetic.
pub(crate) fn gamma_nu_family(p: &Params, l: u64) -> Result<(f64, f64)> {
    let g = Dd::affine(p.alpha, p.nu, l as f64, p.n as f64)
        .neg()
        .scale(0.5);
    ln_gamma_split(g.hi, g.lo)
}

/// Γ(ν − (n + 2j)/α), with its argument formed in double-double arithmetic.
pub(crate) fn gamma_bessel_family(p: &Params, j: u64) -> Result<(f64, f64)> {
    let c = p.n as f64 + 2.0 * j as f64;
    let g = Dd::affine(p.alpha, p.nu, 0.0, c).div(p.alpha);
    ln_gamma_split(g.hi, g.lo)
}

fn nu_term(p: &Params, l: u64, lr: f64) -> Result<f64> {
    let (a, nu, n) = (p.alpha, p.nu, p.n as f64);
    let lf = l as f64;
    let x = a * (nu + lf);
    let (lg, sg) = gamma_nu_family(p, l)?;
    let sl = SignedLog {
        ln_abs: ln_gamma(nu + lf)? - ln_gamma(lf + 1.0)? + lg - ln_gamma(x / 2.0)? + (x - n) * lr,
        sign: if l.is_multiple_of(2) { 1.0 } else { -1.0 } * sg,
    };
    Ok(sl.value())
}

fn bessel_term(p: &Params, j: u64, lr: f64) -> Result<f64> {
    let (a, n) = (p.alpha, p.n as f64);
    let jf = j as f64;
    let w = (n + 2.0 * jf) / a;
    let (lg, sg) = gamma_bessel_family(p, j)?;
    let sl = SignedLog {
        ln_abs: (2.0 / a).ln() - ln_gamma(jf + 1.0)? + ln_gamma(w)? + lg - ln_gamma(n / 2.0 + jf)?
            + 2.0 * jf * lr,
        sign: if j.is_multiple_of(2) { 1.0 } else { -1.0 } * sg,
    };
    Ok(sl.value())
}

/// Contribution of an exact double pole at ν + l = (n + 2j)/α.
pub(crate) fn double_pole_term(p: &Params, l: u64, j: u64, lr: f64) -> Result<f64> {
    let (a, nu, h) = (p.alpha, p.nu, p.half_n());
    let (lf, jf) = (l as f64, j as f64);
    let brace = (2.0 / a) * (digamma(nu + lf)? - digamma(lf + 1.0)?)
        - digamma(h + jf)?
        - digamma(jf + 1.0)?
        + 2.0 * lr;
    let mag = (ln_gamma(nu + lf)? - ln_gamma(lf + 1.0)? - ln_gamma(jf + 1.0)? - ln_gamma(h + jf)?
        + 2.0 * jf * lr)
        .exp();
    let sign = if (l + j).is_multiple_of(2) { -1.0 } else { 1.0 };
    Ok(sign * mag * brace)
}

/// −Σ residues of f(w)(r/2)^{-n} inside |w − center| = radius, by the
/// trapezoidal rule on the circle.
pub(crate) fn circle_residues(p: &Params, lr: f64, center: f64, radius: f64) -> Result<f64> {
    let (a, nu, n) = (p.alpha, p.nu, p.n as f64);
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..CIRCLE_POINTS {
        let theta = 2.0 * PI * (k as f64 + 0.5) / CIRCLE_POINTS as f64;
        let e = Complex64::from_polar(1.0, theta);
        let w = center + radius * e;
        let lg =
            ln_gamma_complex(w)? + ln_gamma_complex(nu - w)? + ln_gamma_complex((n - a * w) / 2.0)?
                - ln_gamma_complex(a * w / 2.0)?
                + (a * w - n) * lr;
        acc += lg.exp() * radius * e;
    }
    Ok(-(acc / CIRCLE_POINTS as f64).re)
}

fn pair_term(p: &Params, l: u64, j: u64, exact: bool, lr: f64) -> Result<f64> {
    if exact {
        return double_pole_term(p, l, j, lr);
    }
    let w_nu = p.nu + l as f64;
    let w_b = (p.n as f64 + 2.0 * j as f64) / p.alpha;
    let center = 0.5 * (w_nu + w_b);
    let radius = 0.45 * center.min(1.0).min(2.0 / p.alpha);
    circle_residues(p, lr, center, radius)
}

impl Expansion {
    fn build(p: &Params, r: f64, max_n: u64) -> Result<Self> {
        let (a, nu, n) = (p.alpha, p.nu, p.n as f64);
        let lr = (r / 2.0).ln();
        let lam = p.lambda();
        let rf = p.rational_form();
        let is_exact = |j: u64, l: u64| -> bool {
            match (lam.collision_kind, rf) {
                (CollisionKind::PeriodicRational, Some(rf)) => {
                    (rf.b * rf.f) as u128 * (p.n as u128 + 2 * j as u128)
                        == rf.a as u128 * (rf.e + l * rf.f) as u128
                }
                (CollisionKind::UniqueIrrational, _) => lam.j0 == Some(j) && lam.l0 == Some(l),
                _ => false,
            }
        };
        let mut terms = Vec::new();
        let mut paired_j = Vec::new();
        for l in 0..=max_n {
            let loc = nu + l as f64;
            let jr = ((a * loc - n) / 2.0).round();
            let mut kind = Kind::Nu(l);
            if jr >= 0.0 {
                let j = jr as u64;
                let exact = is_exact(j, l);
                let gap = ((n + 2.0 * jr) / a - loc).abs();
                if exact || gap < NEAR_GAP {
                    kind = Kind::Pair(l);
                    paired_j.push(j);
                    terms.push(Term {
                        loc,
                        kind,
                        value: pair_term(p, l, j, exact, lr)?,
                    });
                }
            }
            if let Kind::Nu(l) = kind {
                terms.push(Term {
                    loc,
                    kind,
                    value: nu_term(p, l, lr)?,
                });
            }
        }
        let limit = nu + max_n as f64 + 0.5;
        let mut j = 0u64;
        loop {
            let loc = (n + 2.0 * j as f64) / a;
            if loc >= limit {
                break;
            }
            if !paired_j.contains(&j) {
                terms.push(Term {
                    loc,
                    kind: Kind::Bessel,
                    value: bessel_term(p, j, lr)?,
                });
            }
            j += 1;
        }
        let prefactor = (-(n * LN_2) - n / 2.0 * PI.ln() - ln_gamma(nu)?).exp();
        Ok(Expansion {
            nu,
            terms,
            prefactor,
        })
    }

    /// Σ|terms| in omitted band k.
    fn band(&self, k: u64) -> f64 {
        let s: f64 = self
            .terms
            .iter()
            .filter(|t| t.next_band(self.nu, k))
            .map(|t| t.value.abs())
            .sum();
        s * self.prefactor
    }

    /// (S_N, first-omitted magnitude, rounding estimate, max included |term|, count)
    fn partial(&self, big_n: u64) -> (f64, f64, f64, f64, usize) {
        let mut s = Sum::default();
        let mut next = 0.0;
        let mut max_in = 0.0_f64;
        let mut count = 0;
        for t in &self.terms {
            if t.included(self.nu, big_n) {
                s.add(t.value);
                max_in = max_in.max(t.value.abs());
                count += 1;
            } else if t.next_band(self.nu, big_n) {
                next += t.value.abs();
            }
        }
        let pf = self.prefactor;
        (
            s.value() * pf,
            next * pf,
            8.0 * f64::EPSILON * s.abs_total() * pf,
            max_in * pf,
            count,
        )
    }
}

/// Residue series truncated at N: ν-family l < N and Bessel-family poles
/// below ν + N − 1/2, with double-pole terms at collisions.
pub fn eval_small_r_series(p: &Params, r: f64, big_n: usize) -> Result<EvalResult> {
    check_r(r)?;
    check_alpha_lt2(p)?;
    if big_n == 0 {
        return Err(Error::domain("N", "N >= 1", 0.0));
    }
    let exp = Expansion::build(p, r, big_n as u64)?;
    let (value, next, round, max_in, count) = exp.partial(big_n as u64);
    if big_n > 1 && next > max_in && next > value.abs() {
        return Err(Error::DivergenceWarning { terms: big_n, r });
    }
    Ok(EvalResult {
        value,
        method: Method::SmallRSeries,
        err_est: next + round,
        terms_used: count,
    })
}

/// Smallest N < 60 whose first two omitted bands are below `tol`·|S_N|;
/// `err_est` is their sum.
pub fn eval_small_r_series_auto(p: &Params, r: f64, tol: f64) -> Result<EvalResult> {
    check_r(r)?;
    check_alpha_lt2(p)?;
    let max_n = SMALL_R_MAX_TERMS as u64;
    let exp = Expansion::build(p, r, max_n)?;
    for big_n in 1..max_n {
        let (value, next, round, _, count) = exp.partial(big_n);
        let err = next + exp.band(big_n + 1) + round;
        if err <= tol * value.abs() && value.is_finite() {
            return Ok(EvalResult {
                value,
                method: Method::SmallRSeries,
                err_est: err,
                terms_used: count,
            });
        }
    }
    Err(Error::DivergenceWarning {
        terms: SMALL_R_MAX_TERMS,
        r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_pole_formula_matches_contour_sum() {
        for &(a, b, e, f, n) in &[
            (1, 1, 1, 1, 1),
            (1, 2, 1, 1, 1),
            (3, 2, 2, 1, 1),
            (1, 1, 3, 1, 2),
        ] {
            let p = Params::exact(a, b, e, f, n).unwrap();
            let lam = p.lambda();
            let (j0, l0) = (lam.j0.unwrap(), lam.l0.unwrap());
            for &r in &[0.05, 0.7, 3.0] {
                let lr = (r / 2.0_f64).ln();
                let d = double_pole_term(&p, l0, j0, lr).unwrap();
                let c = circle_residues(&p, lr, p.nu + l0 as f64, 0.4).unwrap();
                assert!(
                    (d - c).abs() < 1e-12 * d.abs().max(1.0),
                    "{a}/{b},{e}/{f},{n} r={r}: {d} vs {c}"
                );
            }
        }
    }

    #[test]
    fn simple_pole_residues_match_contour() {
        let p = Params::new(0.7, 1.3, 2).unwrap();
        let lr = (0.4f64 / 2.0).ln();
        let c = circle_residues(&p, lr, p.nu + 1.0, 0.3).unwrap();
        assert!((c - nu_term(&p, 1, lr).unwrap()).abs() < 1e-13 * c.abs());
        let w = p.n as f64 / p.alpha;
        let c = circle_residues(&p, lr, w, 0.3).unwrap();
        assert!((c - bessel_term(&p, 0, lr).unwrap()).abs() < 1e-13 * c.abs());
    }

    #[test]
    fn limit_constant_case_two() {
        // α=1, ν=2, n=1: q(0) = 1/π
        let p = Params::new(1.0, 2.0, 1).unwrap();
        let v = eval_small_r_series_auto(&p, 1e-9, 1e-12).unwrap().value;
        assert!((v - 1.0 / PI).abs() < 1e-8);
    }

    #[test]
    fn near_collision_is_continuous() {
        // ν slightly off the exact collision α=1, ν=1, n=1.
        let exact = Params::new(1.0, 1.0, 1).unwrap();
        let r = 0.3;
        let v0 = eval_small_r_series_auto(&exact, r, 1e-13).unwrap().value;
        for &d in &[1e-5, 1e-9, 1e-12] {
            let p = Params::new(1.0, 1.0 + d, 1).unwrap();
            let v = eval_small_r_series_auto(&p, r, 1e-13).unwrap().value;
            assert!(
                (v - v0).abs() < 10.0 * d * v0.abs() + 1e-12 * v0.abs(),
                "d={d}: {v} vs {v0}"
            );
        }
    }

    #[test]
    fn divergence_is_reported() {
        let p = Params::new(1.5, 1.0, 1).unwrap();
        assert!(matches!(
            eval_small_r_series(&p, 60.0, 8),
            Err(Error::DivergenceWarning { .. })
        ));
    }
}
