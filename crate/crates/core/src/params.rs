//! Parameter validation, exact rationals and the pole-collision set Λ_n.
//!
//! The two pole families of the Mellin–Barnes integrand sit at `ν+l` and
//! `(n+2j)/α`. They collide when `n + 2j = α(ν + l)`; the set of `(α, ν)` for
//! which this happens for some `j, l ≥ 0` is Λ_n.

use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_MAX_DENOMINATOR: u64 = 64;

/// Validated parameter triple. Optionally carries the exact rational form
/// the caller supplied.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Params {
    pub alpha: f64,
    pub nu: f64,
    pub n: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<RationalForm>,
}

/// α = a/b and ν = e/f in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RationalForm {
    pub a: u64,
    pub b: u64,
    pub e: u64,
    pub f: u64,
    pub exact: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CollisionKind {
    None,
    UniqueIrrational,
    PeriodicRational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LambdaInfo {
    pub in_lambda: bool,
    pub j0: Option<u64>,
    pub l0: Option<u64>,
    pub j_step: Option<u64>,
    pub l_step: Option<u64>,
    pub collision_kind: CollisionKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PoleFamily {
    Nu,
    Bessel,
    Merged,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Pole {
    pub location: f64,
    pub order: u8,
    pub family: PoleFamily,
}

pub fn validate(alpha: f64, nu: f64, n: u32) -> Result<Params> {
    Params::new(alpha, nu, n)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Params {
    pub fn new(alpha: f64, nu: f64, n: u32) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 2.0) {
            return Err(Error::domain("alpha", "0 < alpha <= 2", alpha));
        }
        if !(nu > 0.0 && nu.is_finite()) {
            return Err(Error::domain("nu", "nu > 0", nu));
        }
        if n == 0 {
            return Err(Error::domain("n", "n >= 1", 0.0));
        }
        Ok(Params {
            alpha,
            nu,
            n,
            exact: None,
        })
    }

    /// Parameters from exact rationals α = a/b, ν = e/f.
    pub fn exact(a: u64, b: u64, e: u64, f: u64, n: u32) -> Result<Self> {
        if b == 0 || a == 0 {
            return Err(Error::domain("alpha", "a/b with a, b > 0", a as f64));
        }
        if f == 0 || e == 0 {
            return Err(Error::domain("nu", "e/f with e, f > 0", e as f64));
        }
        let (ga, ge) = (gcd(a, b), gcd(e, f));
        let (a, b, e, f) = (a / ga, b / ga, e / ge, f / ge);
        let mut p = Params::new(a as f64 / b as f64, e as f64 / f as f64, n)?;
        p.exact = Some(RationalForm {
            a,
            b,
            e,
            f,
            exact: true,
        });
        Ok(p)
    }

    pub fn with_n(&self, n: u32) -> Result<Self> {
        let mut p = Params::new(self.alpha, self.nu, n)?;
        p.exact = self.exact;
        Ok(p)
    }

    /// The exact form if supplied, else the inferred one (default denominator cap).
    pub fn rational_form(&self) -> Option<RationalForm> {
        self.exact
            .or_else(|| rationalize(self.alpha, self.nu, DEFAULT_MAX_DENOMINATOR))
    }

    pub fn exact_form(&self) -> Option<RationalForm> {
        self.exact
    }

    pub fn lambda(&self) -> LambdaInfo {
        classify_lambda(self, self.rational_form().as_ref())
    }

    pub fn half_n(&self) -> f64 {
        self.n as f64 / 2.0
    }
}

fn within_ulps(approx: f64, x: f64, ulps: f64) -> bool {
    let ulp = f64::EPSILON * x.abs().max(f64::MIN_POSITIVE);
    (approx - x).abs() <= ulps * ulp
}

/// Best continued-fraction convergent p/q with q ≤ max_den that reproduces x
/// to 4 ulp, or None.
pub fn rationalize_one(x: f64, max_den: u64) -> Option<(u64, u64)> {
    if !(x > 0.0 && x.is_finite()) {
        return None;
    }
    let (mut h0, mut h1) = (0u128, 1u128);
    let (mut k0, mut k1) = (1u128, 0u128);
    let mut y = x;
    for _ in 0..64 {
        let a = y.floor();
        if a > 1e15 {
            break;
        }
        let ai = a as u128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as u128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if within_ulps(h1 as f64 / k1 as f64, x, 4.0) {
            return Some((h1 as u64, k1 as u64));
        }
        let frac = y - a;
        if frac == 0.0 {
            break;
        }
        y = 1.0 / frac;
    }
    None
}

/// Rational form of (α, ν) if both reproduce within 4 ulp with denominators
/// ≤ `max_den`; None means not rational.
pub fn rationalize(alpha: f64, nu: f64, max_den: u64) -> Option<RationalForm> {
    let (a, b) = rationalize_one(alpha, max_den)?;
    let (e, f) = rationalize_one(nu, max_den)?;
    Some(RationalForm {
        a,
        b,
        e,
        f,
        exact: false,
    })
}

/// Membership test by divisibility and parity: f | a and either n, a/f odd,
/// or n even and (a/f odd ⇒ a, f odd).
pub fn in_lambda_arithmetic(r: &RationalForm, n: u32) -> bool {
    if !r.a.is_multiple_of(r.f) {
        return false;
    }
    let af_odd = (r.a / r.f) % 2 == 1;
    if n % 2 == 1 {
        af_odd
    } else {
        !af_odd || (r.a % 2 == 1 && r.f % 2 == 1)
    }
}

/// Smallest collision (j0, l0) by exact search over one period of l.
pub fn smallest_collision(r: &RationalForm, n: u32) -> Option<(u64, u64)> {
    let (a, b, e, f, n) = (
        r.a as i128,
        r.b as i128,
        r.e as i128,
        r.f as i128,
        n as i128,
    );
    // Need bf(n + 2j) = a(e + l f) with j, l ≥ 0.
    let target = n * b * f;
    let l_start = if a * e >= target {
        0
    } else {
        (target - a * e + a * f - 1) / (a * f)
    };
    for l in l_start..l_start + 2 * b {
        let rhs = a * (e + l * f);
        let diff = rhs - target;
        if diff >= 0 && diff % (2 * b * f) == 0 {
            return Some(((diff / (2 * b * f)) as u64, l as u64));
        }
    }
    None
}

/// Λ_n classification.
pub fn classify_lambda(p: &Params, r: Option<&RationalForm>) -> LambdaInfo {
    let none = LambdaInfo {
        in_lambda: false,
        j0: None,
        l0: None,
        j_step: None,
        l_step: None,
        collision_kind: CollisionKind::None,
    };
    match r {
        Some(r) if p.alpha < 2.0 => {
            if !in_lambda_arithmetic(r, p.n) {
                return none;
            }
            let Some((j0, l0)) = smallest_collision(r, p.n) else {
                return none;
            };
            let (j_step, l_step) = if r.a % 2 == 1 {
                (r.a, 2 * r.b)
            } else {
                (r.a / 2, r.b)
            };
            LambdaInfo {
                in_lambda: true,
                j0: Some(j0),
                l0: Some(l0),
                j_step: Some(j_step),
                l_step: Some(l_step),
                collision_kind: CollisionKind::PeriodicRational,
            }
        }
        Some(_) => none,
        None => match float_collision(p) {
            Some((j0, l0)) => LambdaInfo {
                in_lambda: true,
                j0: Some(j0),
                l0: Some(l0),
                j_step: None,
                l_step: None,
                collision_kind: CollisionKind::UniqueIrrational,
            },
            None => none,
        },
    }
}

/// For non-rationalizable floats: a collision that holds to rounding
/// accuracy. At most one can exist when α is irrational.
fn float_collision(p: &Params) -> Option<(u64, u64)> {
    if p.alpha >= 2.0 {
        return None;
    }
    let n = p.n as f64;
    let l_min = ((n / p.alpha - p.nu).ceil() - 1.0).max(0.0) as u64;
    for l in l_min..l_min + 4 {
        let rhs = p.alpha * (p.nu + l as f64);
        let j = ((rhs - n) / 2.0).round();
        if j < 0.0 {
            continue;
        }
        if within_ulps(rhs, n + 2.0 * j, 8.0) {
            return Some((j as u64, l));
        }
    }
    None
}

/// All poles of the Mellin–Barnes integrand with 0 < Re w ≤ bound.
pub fn enumerate_poles(p: &Params, bound: f64) -> Result<Vec<Pole>> {
    if p.alpha >= 2.0 {
        return Err(Error::domain("alpha", "alpha < 2", p.alpha));
    }
    if !(bound > 0.0) {
        return Err(Error::domain("bound", "bound > 0", bound));
    }
    let lam = p.lambda();
    let merged_l = |l: u64| -> bool {
        match (lam.collision_kind, lam.l0, lam.l_step) {
            (CollisionKind::PeriodicRational, Some(l0), Some(s)) => l >= l0 && (l - l0).is_multiple_of(s),
            (CollisionKind::UniqueIrrational, Some(l0), _) => l == l0,
            _ => false,
        }
    };
    let merged_j = |j: u64| -> bool {
        match (lam.collision_kind, lam.j0, lam.j_step) {
            (CollisionKind::PeriodicRational, Some(j0), Some(s)) => j >= j0 && (j - j0).is_multiple_of(s),
            (CollisionKind::UniqueIrrational, Some(j0), _) => j == j0,
            _ => false,
        }
    };
    let mut poles = Vec::new();
    let mut l = 0u64;
    while p.nu + l as f64 <= bound {
        let (order, family) = if merged_l(l) {
            (2, PoleFamily::Merged)
        } else {
            (1, PoleFamily::Nu)
        };
        poles.push(Pole {
            location: p.nu + l as f64,
            order,
            family,
        });
        l += 1;
    }
    let mut j = 0u64;
    while (p.n as f64 + 2.0 * j as f64) / p.alpha <= bound {
        if !merged_j(j) {
            poles.push(Pole {
                location: (p.n as f64 + 2.0 * j as f64) / p.alpha,
                order: 1,
                family: PoleFamily::Bessel,
            });
        }
        j += 1;
    }
    poles.sort_by(|x, y| x.location.total_cmp(&y.location));
    Ok(poles)
}
