use std::f64::consts::{LN_2, PI};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::num::{SignedLog, Sum};
use crate::params::{CollisionKind, LambdaInfo, Params};
use crate::specfun::{digamma, ln_gamma};

use super::small_r::{gamma_bessel_family, gamma_nu_family};

use super::{check_alpha_lt2, check_r, EvalResult, Method};

pub const DEFAULT_SERIES_LEN: usize = 120;

const ZERO: SignedLog = SignedLog {
    ln_abs: f64::NEG_INFINITY,
    sign: 0.0,
};

/// Coefficient tables of the entire-function representation
///
/// q = C·[(r/2)^{αν−n} A₁(r^α) + A₂(r²) + (r/2)^{2j₀}(A₃ + A₄ log(r/2))],
/// C = 1/(2^n π^{n/2} Γ(ν)).
///
/// `a1[l]` multiplies r^{αl}, `a2[j]` multiplies r^{2j}, and `a3[q]`, `a4[q]`
/// multiply r^{q·log_power_step}. Omitted indices hold zero coefficients.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesRep {
    pub alpha: f64,
    pub nu: f64,
    pub n: u32,
    pub a1: Vec<SignedLog>,
    pub a2: Vec<SignedLog>,
    pub a3: Option<Vec<SignedLog>>,
    pub a4: Option<Vec<SignedLog>>,
    pub log_power_step: f64,
    pub j0_offset: u64,
    pub log_term: bool,
    pub omitted_l: Vec<u64>,
    pub omitted_j: Vec<u64>,
}

impl Serialize for SignedLog {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(self.value())
    }
}

fn parity(k: u64) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Root-test surrogate for entirety: |c_k|^{1/k} must drop across the last
/// quarter of the nonzero coefficients.
fn root_test_decreases(coeffs: &[SignedLog]) -> std::result::Result<(), usize> {
    let len = coeffs.len();
    let roots: Vec<(usize, f64)> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(k, c)| c.sign != 0.0 && *k >= len - len / 4)
        .map(|(k, c)| (k, c.ln_abs / k as f64))
        .collect();
    if roots.len() < 2 {
        return Ok(());
    }
    let (first, last) = (roots[0], roots[roots.len() - 1]);
    if last.1 < first.1 {
        Ok(())
    } else {
        Err(first.0)
    }
}

pub fn build_entire_series(p: &Params, lam: &LambdaInfo, len: usize) -> Result<SeriesRep> {
    check_alpha_lt2(p)?;
    let len = len.max(8);
    let (a, nu, n) = (p.alpha, p.nu, p.n as f64);
    let h = n / 2.0;
    let collisions = |k: u64, base: Option<u64>, step: Option<u64>| -> bool {
        match (lam.collision_kind, base, step) {
            (CollisionKind::PeriodicRational, Some(b), Some(s)) => k >= b && (k - b).is_multiple_of(s),
            (CollisionKind::UniqueIrrational, Some(b), _) => k == b,
            _ => false,
        }
    };
    let mut a1 = Vec::with_capacity(len);
    let mut omitted_l = Vec::new();
    for l in 0..len as u64 {
        if collisions(l, lam.l0, lam.l_step) {
            omitted_l.push(l);
            a1.push(ZERO);
            continue;
        }
        let lf = l as f64;
        let (lg, sg) = gamma_nu_family(p, l)?;
        a1.push(SignedLog {
            ln_abs: ln_gamma(nu + lf)? - ln_gamma(lf + 1.0)? + lg
                - ln_gamma(a * (nu + lf) / 2.0)?
                - a * lf * LN_2,
            sign: parity(l) * sg,
        });
    }
    let mut a2 = Vec::with_capacity(len);
    let mut omitted_j = Vec::new();
    for j in 0..len as u64 {
        if collisions(j, lam.j0, lam.j_step) {
            omitted_j.push(j);
            a2.push(ZERO);
            continue;
        }
        let jf = j as f64;
        let w = (n + 2.0 * jf) / a;
        let (lg, sg) = gamma_bessel_family(p, j)?;
        a2.push(SignedLog {
            ln_abs: (2.0 / a).ln() - ln_gamma(jf + 1.0)? + ln_gamma(w)? + lg
                - ln_gamma(h + jf)?
                - 2.0 * jf * LN_2,
            sign: parity(j) * sg,
        });
    }
    let (mut a3, mut a4, mut step, mut j0_offset) = (None, None, 0.0, 0);
    if lam.in_lambda {
        let (j0, l0) = (lam.j0.unwrap_or(0), lam.l0.unwrap_or(0));
        let (js, ls, count) = match (lam.j_step, lam.l_step) {
            (Some(js), Some(ls)) => (js, ls, len),
            _ => (0, 0, 1),
        };
        j0_offset = j0;
        step = 2.0 * js as f64;
        let mut v3 = Vec::with_capacity(count);
        let mut v4 = Vec::with_capacity(count);
        for q in 0..count as u64 {
            let (l, j) = (l0 + q * ls, j0 + q * js);
            let (lf, jf) = (l as f64, j as f64);
            let ln_mag = ln_gamma(nu + lf)?
                - ln_gamma(lf + 1.0)?
                - ln_gamma(jf + 1.0)?
                - ln_gamma(h + jf)?
                - 2.0 * (jf - j0 as f64) * LN_2;
            let sign = -parity(l + j);
            let brace = (2.0 / a) * (digamma(nu + lf)? - digamma(lf + 1.0)?)
                - digamma(h + jf)?
                - digamma(jf + 1.0)?;
            v3.push(SignedLog {
                ln_abs: ln_mag + brace.abs().ln(),
                sign: sign * brace.signum(),
            });
            v4.push(SignedLog {
                ln_abs: ln_mag + LN_2,
                sign,
            });
        }
        a3 = Some(v3);
        a4 = Some(v4);
    }
    root_test_decreases(&a1).map_err(|index| Error::ConvergenceRefused { index })?;
    root_test_decreases(&a2).map_err(|index| Error::ConvergenceRefused { index })?;
    Ok(SeriesRep {
        alpha: a,
        nu,
        n: p.n,
        a1,
        a2,
        a3,
        a4,
        log_power_step: step,
        j0_offset,
        log_term: lam.in_lambda,
        omitted_l,
        omitted_j,
    })
}

fn power_sum(coeffs: &[SignedLog], ln_r: f64, step: f64, sum: &mut Sum, tail: &mut f64) {
    let len = coeffs.len();
    for (k, c) in coeffs.iter().enumerate() {
        let t = c.times_pow(ln_r, step * k as f64);
        sum.add(t);
        if k + 3 >= len {
            *tail += t.abs();
        }
    }
}

pub fn eval_entire_series(s: &SeriesRep, p: &Params, r: f64) -> Result<EvalResult> {
    check_r(r)?;
    if s.alpha != p.alpha || s.nu != p.nu || s.n != p.n {
        return Err(Error::domain(
            "series",
            "built for the same parameters",
            s.alpha,
        ));
    }
    let (a, nu, n) = (p.alpha, p.nu, p.n as f64);
    let ln_r = r.ln();
    let lr2 = (r / 2.0).ln();
    let mut total = Sum::default();
    let mut tail = 0.0;

    let mut part = Sum::default();
    let mut t1 = 0.0;
    power_sum(&s.a1, ln_r, a, &mut part, &mut t1);
    let f1 = ((a * nu - n) * lr2).exp();
    total.add(part.value() * f1);
    tail += t1 * f1;
    let mut abs = part.abs_total() * f1;

    let mut part = Sum::default();
    power_sum(&s.a2, ln_r, 2.0, &mut part, &mut tail);
    total.add(part.value());
    abs += part.abs_total();

    if let (Some(a3), Some(a4)) = (&s.a3, &s.a4) {
        let f = (2.0 * s.j0_offset as f64 * lr2).exp();
        let mut p3 = Sum::default();
        let mut t3 = 0.0;
        power_sum(a3, ln_r, s.log_power_step, &mut p3, &mut t3);
        // Compensated sum of A₄ before multiplying by the log.
        let mut p4 = Sum::default();
        let mut t4 = 0.0;
        power_sum(a4, ln_r, s.log_power_step, &mut p4, &mut t4);
        total.add(p3.value() * f);
        total.add(p4.value() * lr2 * f);
        tail += (t3 + t4 * lr2.abs()) * f;
        abs += (p3.abs_total() + p4.abs_total() * lr2.abs()) * f;
    }
    let pref = (-(n * LN_2) - n / 2.0 * PI.ln() - ln_gamma(nu)?).exp();
    let terms = s.a1.len() + s.a2.len() + s.a3.as_ref().map_or(0, Vec::len) * 2;
    Ok(EvalResult {
        value: total.value() * pref,
        method: Method::EntireSeries,
        err_est: (tail + 8.0 * f64::EPSILON * abs) * pref,
        terms_used: terms,
    })
}
