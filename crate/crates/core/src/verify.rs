//! Independent oracles and the property battery.
//!
//! Every check produces a [`CheckReport`] whose `pass` flag is exactly
//! `discrepancy <= tol`. Checks whose hypotheses exclude a parameter triple
//! report `status = not-applicable` with zero discrepancy.

use std::f64::consts::PI;
use std::time::Instant;

use serde::Serialize;

use crate::density::{
    build_entire_series, eval_auto, eval_closed2, eval_entire_series, eval_integral,
    eval_large_r_asym, eval_mellin_barnes, eval_small_r_series_auto, large_r_bound, large_r_term,
    leading_terms, ln_closed2, EvalResult, MellinConfig, Regime, DEFAULT_SERIES_LEN,
};
use crate::error::{Error, Result};
use crate::hankel::radial_integral;
use crate::par::{self, Exec};
use crate::params::Params;
use crate::quad::{integrate, QuadOptions};
use crate::specfun::{gamma, sin_pi};
use crate::stable::mixture_density;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub alpha: f64,
    pub nu: f64,
    pub n: u32,
    pub discrepancy: f64,
    pub tol: f64,
    pub pass: bool,
    pub ms: f64,
    pub status: Status,
}

impl CheckReport {
    fn measured(check: &str, p: &Params, discrepancy: f64, tol: f64, start: Instant) -> Self {
        let pass = discrepancy <= tol;
        CheckReport {
            check: check.to_string(),
            alpha: p.alpha,
            nu: p.nu,
            n: p.n,
            discrepancy,
            tol,
            pass,
            ms: start.elapsed().as_secs_f64() * 1e3,
            status: if pass { Status::Pass } else { Status::Fail },
        }
    }

    fn not_applicable(check: &str, p: &Params, tol: f64) -> Self {
        CheckReport {
            check: check.to_string(),
            alpha: p.alpha,
            nu: p.nu,
            n: p.n,
            discrepancy: 0.0,
            tol,
            pass: true,
            ms: 0.0,
            status: Status::NotApplicable,
        }
    }

    fn from_result(check: &str, p: &Params, tol: f64, start: Instant, d: Result<f64>) -> Self {
        CheckReport::measured(check, p, d.unwrap_or(f64::INFINITY), tol, start)
    }
}

/// Tolerances of the property battery.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    /// Relative tolerance requested from the evaluators.
    pub eval_tol: f64,
    pub normalization: f64,
    pub derivative: f64,
    pub monotone_slack: f64,
    pub complete_monotone: f64,
    pub leading: f64,
    pub cross_floor: f64,
    pub contour: f64,
    pub exec: Exec,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            eval_tol: 1e-12,
            normalization: 1e-4,
            derivative: 1e-5,
            monotone_slack: 1e-12,
            complete_monotone: 1e-9,
            leading: 0.02,
            cross_floor: 1e-7,
            contour: 1e-9,
            exec: Exec::Auto,
        }
    }
}

pub const CHECKS: [&str; 8] = [
    "complete-monotonicity",
    "contour-independence",
    "cross-representation",
    "derivative-recursion",
    "leading-terms",
    "monotonicity",
    "normalization",
    "remainder-soundness",
];

/// α ∈ {0.5, 1, 1.5, 2}, ν ∈ {0.5, 1, 2.5}, n ∈ {1, 2, 3}.
pub fn default_grid() -> Vec<Params> {
    let mut grid = Vec::new();
    for &a in &[0.5, 1.0, 1.5, 2.0] {
        for &nu in &[0.5, 1.0, 2.5] {
            for n in 1..=3 {
                grid.push(Params::new(a, nu, n).expect("grid values are valid"));
            }
        }
    }
    grid
}

/// Surface area of the unit sphere in ℝⁿ.
pub fn sphere_area(n: u32) -> f64 {
    let h = n as f64 / 2.0;
    2.0 * PI.powf(h) / gamma(h).expect("n/2 > 0")
}

// ---------------------------------------------------------------- oracles

/// Density by direct Fourier inversion of the characteristic function,
/// valid only when αν > (n − 1)/2.
pub fn hankel_oracle(p: &Params, r: f64, tol: f64) -> Result<f64> {
    let n = p.n as f64;
    if p.alpha * p.nu <= (n - 1.0) / 2.0 {
        return Err(Error::domain(
            "alpha*nu",
            "alpha*nu > (n-1)/2 for direct inversion",
            p.alpha * p.nu,
        ));
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::domain("r", "r > 0", r));
    }
    let (a, nu) = (p.alpha, p.nu);
    let res = radial_integral(p.n, r, |t| (1.0 + t.powf(a)).powf(-nu), f64::INFINITY, tol)?;
    Ok(res.value * (2.0 * PI).powf(-n / 2.0))
}

/// Round trip q → characteristic function at ‖t‖ = `t_norm`.
pub fn schoenberg_check(p: &Params, t_norm: f64, tol: f64) -> Result<CheckReport> {
    let start = Instant::now();
    if !(t_norm > 0.0 && t_norm.is_finite()) {
        return Err(Error::domain("t_norm", "t_norm > 0", t_norm));
    }
    let n = p.n as f64;
    let eval_tol = (tol * 1e-3).max(1e-13);
    let mut failure = None;
    let q = |r: f64| match eval_auto(p, r, eval_tol) {
        Ok(v) => v.value,
        Err(e) => {
            failure.get_or_insert(e);
            0.0
        }
    };
    let res = radial_integral(p.n, t_norm, q, f64::INFINITY, tol * 0.1)?;
    if let Some(e) = failure {
        return Err(e);
    }
    let value = res.value * (2.0 * PI).powf(n / 2.0);
    let target = (1.0 + t_norm.powf(p.alpha)).powf(-p.nu);
    Ok(CheckReport::measured(
        "schoenberg",
        p,
        (value - target).abs(),
        tol,
        start,
    ))
}

// ----------------------------------------------------------- normalization

/// ∫_R^∞ q(r) r^{n−1} dr from the algebraic tail, with an error bound, for
/// the smallest R on a doubling ladder where the tail bound is tiny.
fn algebraic_tail(p: &Params) -> Result<(f64, f64, f64)> {
    let (a, n) = (p.alpha, p.n as f64);
    let mut big_r = 10.0_f64;
    while big_r < 1e8 {
        let lead = large_r_term(p, 1)?.value() * big_r.powf(-a - n);
        for big_n in 2..=12usize {
            let b = large_r_bound(p, big_r, big_n)?;
            if b <= 1e-9 * lead.abs() {
                let mut tail = 0.0;
                for j in 1..big_n {
                    let jf = j as f64;
                    tail += large_r_term(p, j)?.value() * big_r.powf(-a * jf) / (a * jf);
                }
                let err = b * big_r.powf(n) / (a * big_n as f64);
                return Ok((big_r, tail, err));
            }
        }
        big_r *= 2.0;
    }
    Err(Error::ConvergenceRefused { index: 12 })
}

/// ∫_R^∞ q r^{n−1} dr for α = 2 from the leading e^{−r} behaviour,
/// using the asymptotic expansion of the upper incomplete gamma function.
fn exponential_tail(p: &Params, big_r: f64) -> Result<f64> {
    let lead = leading_terms(p, Regime::LargeR)?;
    let s = lead.exponent + p.n as f64;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..6 {
        term *= (s - k as f64) / big_r;
        sum += term;
    }
    Ok(lead.coefficient * big_r.powf(s - 1.0) * (-big_r).exp() * sum)
}

/// Total probability mass of the radial density.
pub fn total_mass(p: &Params, tol: f64) -> Result<f64> {
    let (big_r, tail) = if p.alpha == 2.0 {
        let big_r = 60.0 + 2.0 * p.nu;
        (big_r, exponential_tail(p, big_r)?)
    } else {
        let (big_r, tail, _) = algebraic_tail(p)?;
        (big_r, tail)
    };
    let body = radial_mass_between(p, 0.0, big_r, tol, 0.0)?;
    Ok(sphere_area(p.n) * (body + tail))
}

/// ∫_{lo}^{hi} q(r) r^{n−1} dr.
fn radial_mass_between(p: &Params, lo: f64, hi: f64, tol: f64, abs_tol: f64) -> Result<f64> {
    let mut failure = None;
    let eval_tol = (tol * 1e-2).max(1e-13);
    let f = |r: f64| -> f64 {
        if r <= 0.0 {
            return 0.0;
        }
        match eval_auto(p, r, eval_tol) {
            Ok(v) => v.value * r.powi(p.n as i32 - 1),
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        }
    };
    let mut pts = vec![lo];
    let mut x = if lo > 0.0 { lo * 2.0 } else { 1e-12 };
    while x < hi {
        if x > lo {
            pts.push(x);
        }
        x *= if x < 1.0 { 10.0 } else { 2.0 };
    }
    pts.push(hi);
    let opts = QuadOptions {
        abs_tol,
        ..QuadOptions::rel(tol)
    };
    let res = integrate(f, &pts, &opts)?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(res.value)
}

pub fn check_normalization(p: &Params, cfg: &SuiteConfig) -> CheckReport {
    let start = Instant::now();
    let d = total_mass(p, 1e-9).map(|m| (m - 1.0).abs());
    CheckReport::from_result("normalization", p, cfg.normalization, start, d)
}

// ------------------------------------------------------ derivative recursion

fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|k| lo * (hi / lo).powf(k as f64 / (count - 1) as f64))
        .collect()
}

/// Richardson-extrapolated central difference of q at r.
fn derivative(p: &Params, r: f64, tol: f64) -> Result<f64> {
    let q = |x: f64| eval_auto(p, x, tol).map(|v| v.value);
    let h = 2e-3 * r;
    let d1 = (q(r + h)? - q(r - h)?) / (2.0 * h);
    let d2 = (q(r + h / 2.0)? - q(r - h / 2.0)?) / h;
    Ok((4.0 * d2 - d1) / 3.0)
}

/// max over 20 points of |q′_n + 2πr q_{n+2}| / |q′_n|.
pub fn derivative_recursion_discrepancy(p: &Params, tol: f64) -> Result<f64> {
    let up = p.with_n(p.n + 2)?;
    let mut worst = 0.0_f64;
    for r in log_grid(0.2, 20.0, 20) {
        let d = derivative(p, r, tol)?;
        let rhs = -2.0 * PI * r * eval_auto(&up, r, tol)?.value;
        worst = worst.max((d - rhs).abs() / d.abs().max(f64::MIN_POSITIVE));
    }
    Ok(worst)
}

pub fn check_derivative_recursion(p: &Params, cfg: &SuiteConfig) -> CheckReport {
    let start = Instant::now();
    let d = derivative_recursion_discrepancy(p, cfg.eval_tol);
    CheckReport::from_result("derivative-recursion", p, cfg.derivative, start, d)
}

// ----------------------------------------------------------- monotonicity

pub fn check_monotonicity(p: &Params, cfg: &SuiteConfig) -> CheckReport {
    if p.alpha != 2.0 {
        return CheckReport::not_applicable("monotonicity", p, cfg.monotone_slack);
    }
    let start = Instant::now();
    let d = (|| -> Result<f64> {
        let mut worst = 0.0_f64;
        let mut prev = f64::INFINITY;
        for r in log_grid(1e-3, 50.0, 200) {
            let q = eval_closed2(p, r)?.value;
            worst = worst.max(q - prev);
            prev = q;
        }
        Ok(worst)
    })();
    CheckReport::from_result("monotonicity", p, cfg.monotone_slack, start, d)
}

// ---------------------------------------------------- complete monotonicity

/// Whether complete monotonicity is asserted for these parameters.
pub fn completely_monotone_expected(p: &Params) -> bool {
    if p.alpha < 2.0 {
        p.alpha * p.nu <= 2.0
    } else {
        p.nu <= (p.n as f64 + 1.0) / 2.0
    }
}

/// Largest violation of (−1)^k Δ^k q ≥ 0, k ≤ 4, relative to max q, on 64
/// equally spaced points starting at `r0` with step `h`.
pub fn complete_monotonicity_violation(p: &Params, r0: f64, h: f64, tol: f64) -> Result<f64> {
    let mut q = Vec::with_capacity(64);
    for k in 0..64 {
        q.push(eval_auto(p, r0 + h * k as f64, tol)?.value);
    }
    let scale = q.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let mut worst = 0.0_f64;
    let mut diff = q;
    for k in 0..=4 {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        for v in &diff {
            worst = worst.max(-sign * v / scale);
        }
        diff = diff.windows(2).map(|w| w[1] - w[0]).collect();
    }
    Ok(worst)
}

pub fn check_complete_monotonicity(p: &Params, cfg: &SuiteConfig) -> CheckReport {
    if !completely_monotone_expected(p) {
        return CheckReport::not_applicable("complete-monotonicity", p, cfg.complete_monotone);
    }
    let start = Instant::now();
    let d = complete_monotonicity_violation(p, 0.25, 0.1, cfg.eval_tol);
    CheckReport::from_result("complete-monotonicity", p, cfg.complete_monotone, start, d)
}

// ----------------------------------------------------- remainder soundness

/// max over N ≤ 6, r ∈ {5, 20, 100} of |q − S_N| / bound; sound iff ≤ 1.
pub fn remainder_ratio(p: &Params) -> Result<f64> {
    let mut worst = 0.0_f64;
    for &r in &[5.0, 20.0, 100.0] {
        let q = eval_integral(p, r, 1e-13)?.value;
        for big_n in 1..=6 {
            let s = eval_large_r_asym(p, r, big_n)?.value;
            worst = worst.max((q - s).abs() / large_r_bound(p, r, big_n)?);
        }
    }
    Ok(worst)
}

pub fn check_remainder_soundness(p: &Params, _cfg: &SuiteConfig) -> CheckReport {
    if p.alpha >= 2.0 {
        return CheckReport::not_applicable("remainder-soundness", p, 1.0);
    }
    let start = Instant::now();
    CheckReport::from_result("remainder-soundness", p, 1.0, start, remainder_ratio(p))
}

// ----------------------------------------------------------- leading terms

/// Exponent gap to the first correction of the small-r leading term.
fn small_r_gap(p: &Params) -> f64 {
    let (a, nu, n) = (p.alpha, p.nu, p.n as f64);
    // Pole locations w contribute r^{αw − n}; both families, merged or not.
    let mut locs: Vec<f64> = (0..8).map(|l| nu + l as f64).collect();
    locs.extend((0..8).map(|j| (n + 2.0 * j as f64) / a));
    locs.sort_by(f64::total_cmp);
    locs.dedup_by(|x, y| (*x - *y).abs() < 1e-12);
    a * (locs[1] - locs[0])
}

/// Radius where the first large-r correction is 10⁻³ of the leading term.
fn large_r_onset(p: &Params) -> Result<f64> {
    let j = (2..40)
        .find(|&j| sin_pi(p.alpha * j as f64 / 2.0) != 0.0)
        .unwrap_or(2);
    let ratio = (large_r_term(p, j)?.value() / large_r_term(p, 1)?.value()).abs();
    Ok((1e3 * ratio.max(1.0)).powf(1.0 / (p.alpha * (j - 1) as f64)))
}

/// ln q, usable where q underflows (α = 2 at large r).
fn ln_density(p: &Params, r: f64, tol: f64) -> Result<f64> {
    if p.alpha == 2.0 {
        return ln_closed2(p, r);
    }
    Ok(eval_auto(p, r, tol)?.value.ln())
}

/// |q/leading − 1| at r.
pub fn leading_ratio_error(p: &Params, regime: Regime, r: f64, tol: f64) -> Result<f64> {
    let lead = leading_terms(p, regime)?;
    Ok((ln_density(p, r, tol)? - lead.ln_abs(r)).exp_m1().abs())
}

/// Worst |q/leading − 1| over the last two decades of log grids reaching
/// toward 0 and toward ∞. The small-r grid starts where the exponent gap
/// to the next pole makes r^gap = 10⁻³; the large-r grid starts where the
/// first nonzero correction is 10⁻³ of the leading term.
pub fn leading_terms_discrepancy(p: &Params, tol: f64) -> Result<f64> {
    let (small_end, large_end) = if p.alpha == 2.0 {
        let g = if p.nu == p.n as f64 / 2.0 {
            1.0
        } else {
            (2.0 * p.nu - p.n as f64).abs().min(2.0)
        };
        (10f64.powf(-3.0 / g - 2.0), 1e5)
    } else {
        let gs = small_r_gap(p);
        (
            10f64.powf(-3.0 / gs - 2.0).max(1e-250),
            (100.0 * large_r_onset(p)?).clamp(1e3, 1e250),
        )
    };
    let mut worst = 0.0_f64;
    for k in 0..=8 {
        let f = 10f64.powf(k as f64 / 4.0);
        worst = worst.max(leading_ratio_error(p, Regime::SmallR, small_end * f, tol)?);
        worst = worst.max(leading_ratio_error(p, Regime::LargeR, large_end / f, tol)?);
    }
    Ok(worst)
}

pub fn check_leading_terms(p: &Params, cfg: &SuiteConfig) -> CheckReport {
    let start = Instant::now();
    let d = leading_terms_discrepancy(p, cfg.eval_tol);
    CheckReport::from_result("leading-terms", p, cfg.leading, start, d)
}

// ------------------------------------------------- cross representation

/// Every applicable evaluator at (p, r), tagged by name.
pub fn all_representations(p: &Params, r: f64) -> Vec<(&'static str, Result<EvalResult>)> {
    let mut out = Vec::new();
    if p.alpha == 2.0 {
        out.push(("closed2", eval_closed2(p, r)));
        if let Ok(v) = hankel_oracle(p, r, 1e-11) {
            out.push(("hankel", Ok(oracle_result(v, 1e-10))));
        }
        out.push((
            "mixture",
            mixture_density(p, r, 1e-10).map(|v| oracle_result(v, 1e-9)),
        ));
        return out;
    }
    out.push(("integral", eval_integral(p, r, 1e-12)));
    out.push((
        "mellin_barnes",
        eval_mellin_barnes(p, r, &MellinConfig::default_for(p, 1e-14)),
    ));
    if let Ok(v) = eval_small_r_series_auto(p, r, 1e-12) {
        out.push(("small_r_series", Ok(v)));
    }
    if let Ok(v) = build_entire_series(p, &p.lambda(), DEFAULT_SERIES_LEN)
        .and_then(|s| eval_entire_series(&s, p, r))
    {
        if v.err_est.is_finite() {
            out.push(("entire_series", Ok(v)));
        }
    }
    let best_large = (1..=40)
        .filter_map(|k| eval_large_r_asym(p, r, k).ok())
        .min_by(|a, b| a.err_est.total_cmp(&b.err_est));
    if let Some(v) = best_large {
        if v.err_est <= 1e-8 * v.value.abs() {
            out.push(("large_r_asym", Ok(v)));
        }
    }
    if let Ok(v) = hankel_oracle(p, r, 1e-11) {
        out.push(("hankel", Ok(oracle_result(v, 1e-10))));
    }
    out
}

/// Oracles report values only; their error estimate is the requested tolerance.
fn oracle_result(v: f64, rel: f64) -> EvalResult {
    EvalResult {
        value: v,
        method: crate::density::Method::Integral,
        err_est: rel * v.abs(),
        terms_used: 0,
    }
}

/// max over pairs of |a − b| / max(floor·|a|, err_a + err_b); agreement iff ≤ 1.
pub fn cross_representation_discrepancy(p: &Params, floor: f64) -> Result<f64> {
    let mut worst = 0.0_f64;
    for &r in &[0.1, 1.0, 10.0] {
        let reps = all_representations(p, r);
        let mut ok = Vec::new();
        for (name, res) in reps {
            match res {
                Ok(v) => ok.push(v),
                Err(e) if name == "integral" || name == "mellin_barnes" || name == "closed2" => {
                    return Err(e)
                }
                Err(_) => {}
            }
        }
        for i in 0..ok.len() {
            for j in i + 1..ok.len() {
                let (a, b) = (ok[i], ok[j]);
                let allowed = (floor * a.value.abs()).max(a.err_est + b.err_est);
                worst = worst.max((a.value - b.value).abs() / allowed);
            }
        }
    }
    Ok(worst)
}

pub fn check_cross_representation(p: &Params, cfg: &SuiteConfig) -> CheckReport {
    let start = Instant::now();
    let d = cross_representation_discrepancy(p, cfg.cross_floor);
    CheckReport::from_result("cross-representation", p, 1.0, start, d)
}

// --------------------------------------------------- contour independence

pub fn contour_discrepancy(p: &Params) -> Result<f64> {
    let cmax = p.nu.min(1.0 / p.alpha);
    let base = MellinConfig::default_for(p, 1e-15);
    let mut worst = 0.0_f64;
    for &r in &[0.5, 2.0] {
        let a = eval_mellin_barnes(p, r, &base.with_c(0.25 * cmax))?.value;
        let b = eval_mellin_barnes(p, r, &base.with_c(0.75 * cmax))?.value;
        worst = worst.max(((a - b) / a).abs());
    }
    Ok(worst)
}

pub fn check_contour_independence(p: &Params, cfg: &SuiteConfig) -> CheckReport {
    if p.alpha >= 2.0 {
        return CheckReport::not_applicable("contour-independence", p, cfg.contour);
    }
    let start = Instant::now();
    CheckReport::from_result(
        "contour-independence",
        p,
        cfg.contour,
        start,
        contour_discrepancy(p),
    )
}

// ------------------------------------------------------------------ suite

fn run_check(name: &str, p: &Params, cfg: &SuiteConfig) -> CheckReport {
    match name {
        "complete-monotonicity" => check_complete_monotonicity(p, cfg),
        "contour-independence" => check_contour_independence(p, cfg),
        "cross-representation" => check_cross_representation(p, cfg),
        "derivative-recursion" => check_derivative_recursion(p, cfg),
        "leading-terms" => check_leading_terms(p, cfg),
        "monotonicity" => check_monotonicity(p, cfg),
        "normalization" => check_normalization(p, cfg),
        "remainder-soundness" => check_remainder_soundness(p, cfg),
        _ => unreachable!("unknown check {name}"),
    }
}

/// All checks on all grid points, sorted by (check, α, ν, n).
pub fn run_property_suite(grid: &[Params], cfg: &SuiteConfig) -> Vec<CheckReport> {
    let jobs: Vec<(&str, Params)> = CHECKS
        .iter()
        .flat_map(|c| grid.iter().map(move |p| (*c, *p)))
        .collect();
    let mut reports = par::map(cfg.exec, &jobs, |(c, p)| run_check(c, p, cfg));
    reports.sort_by(|a, b| {
        a.check
            .cmp(&b.check)
            .then(a.alpha.total_cmp(&b.alpha))
            .then(a.nu.total_cmp(&b.nu))
            .then(a.n.cmp(&b.n))
    });
    reports
}

/// One JSON object per line.
pub fn to_json_lines(reports: &[CheckReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&serde_json::to_string(r).expect("reports serialize"));
        out.push('\n');
    }
    out
}

// --------------------------------------------------------------------- KS

/// Radial CDF F(r) = |S^{n−1}| ∫_0^r q(s) s^{n−1} ds, tabulated on a log grid
/// and interpolated with cubic Hermite segments using F′ = |S^{n−1}| q r^{n−1}.
#[derive(Debug, Clone)]
pub struct RadialCdf {
    r: Vec<f64>,
    f: Vec<f64>,
    d: Vec<f64>,
}

impl RadialCdf {
    pub fn new(p: &Params, r_min: f64, r_max: f64, points: usize, tol: f64) -> Result<Self> {
        let area = sphere_area(p.n);
        let grid = log_grid(r_min, r_max, points.max(2));
        let dens = |r: f64| -> Result<f64> {
            Ok(area * eval_auto(p, r, tol)?.value * r.powi(p.n as i32 - 1))
        };
        let mut f = Vec::with_capacity(grid.len());
        let mut d = Vec::with_capacity(grid.len());
        let mut acc = area * radial_mass_between(p, 0.0, grid[0], tol, tol / area)?;
        f.push(acc);
        d.push(dens(grid[0])?);
        for w in grid.windows(2) {
            acc += area * radial_mass_between(p, w[0], w[1], tol, tol / area)?;
            f.push(acc);
            d.push(dens(w[1])?);
        }
        Ok(RadialCdf { r: grid, f, d })
    }

    pub fn eval(&self, x: f64) -> f64 {
        let last = self.r.len() - 1;
        if x <= self.r[0] {
            return self.f[0] * (x / self.r[0]).max(0.0);
        }
        if x >= self.r[last] {
            return self.f[last];
        }
        let k = self.r.partition_point(|&v| v <= x) - 1;
        let (x0, x1) = (self.r[k], self.r[k + 1]);
        let h = x1 - x0;
        let t = (x - x0) / h;
        let (t2, t3) = (t * t, t * t * t);
        (2.0 * t3 - 3.0 * t2 + 1.0) * self.f[k]
            + (t3 - 2.0 * t2 + t) * h * self.d[k]
            + (-2.0 * t3 + 3.0 * t2) * self.f[k + 1]
            + (t3 - t2) * h * self.d[k + 1]
    }

    /// F at the top of the table; 1 minus the mass beyond it.
    pub fn top(&self) -> f64 {
        self.f[self.f.len() - 1]
    }
}

/// sup |F_m − F| for the given sample of norms.
pub fn ks_statistic(norms: &[f64], cdf: &RadialCdf) -> f64 {
    let mut xs = norms.to_vec();
    xs.sort_by(f64::total_cmp);
    let m = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf.eval(x);
            (f - i as f64 / m).abs().max(((i + 1) as f64 / m - f).abs())
        })
        .fold(0.0, f64::max)
}

/// Asymptotic 1% critical value of the one-sample KS statistic.
pub fn ks_critical_1pct(m: usize) -> f64 {
    1.6276 / (m as f64).sqrt()
}
