use std::f64::consts::PI;

use crate::error::{Error, Result};

use super::gamma::{cos_pi, sin_pi, RECIP_GAMMA};

pub const MAX_ORDER: f64 = 200.0;

const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-300;
const MAXIT: usize = 200_000;

/// Temme's auxiliary gammas for |mu| ≤ 1/2:
/// (gam1, gam2, 1/Γ(1+mu), 1/Γ(1-mu)).
fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    let m2 = mu * mu;
    let mut gam1 = 0.0;
    let mut gam2 = 0.0;
    let mut pow = 1.0;
    for pair in RECIP_GAMMA.chunks(2) {
        gam2 += pair[0] * pow;
        gam1 -= pair[1] * pow;
        pow *= m2;
    }
    (gam1, gam2, gam2 - mu * gam1, gam2 + mu * gam1)
}

/// (e^x K_mu(x), e^x K_{mu+1}(x)) for |mu| ≤ 1/2.
fn k_pair_scaled(mu: f64, x: f64) -> (f64, f64) {
    if x < 2.0 {
        k_pair_temme(mu, x)
    } else {
        k_pair_steed(mu, x)
    }
}

fn k_pair_temme(mu: f64, x: f64) -> (f64, f64) {
    let mu2 = mu * mu;
    {
        let x2 = 0.5 * x;
        let pimu = PI * mu;
        let fact = if pimu.abs() < EPS {
            1.0
        } else {
            pimu / pimu.sin()
        };
        let d = -x2.ln();
        let e = mu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(mu);
        let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let mut sum = ff;
        let ee = e.exp();
        let mut p = 0.5 * ee / gampl;
        let mut q = 0.5 / (ee * gammi);
        let mut c = 1.0;
        let dd = x2 * x2;
        let mut sum1 = p;
        for i in 1..MAXIT {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - mu2);
            c *= dd / fi;
            p /= fi - mu;
            q /= fi + mu;
            let del = c * ff;
            sum += del;
            let del1 = c * (p - fi * ff);
            sum1 += del1;
            if del.abs() < sum.abs() * EPS {
                break;
            }
        }
        let scale = x.exp();
        (sum * scale, sum1 * (2.0 / x) * scale)
    }
}

fn k_pair_steed(mu: f64, x: f64) -> (f64, f64) {
    let mu2 = mu * mu;
    {
        let mut b = 2.0 * (1.0 + x);
        let mut d = 1.0 / b;
        let mut h = d;
        let mut delh = d;
        let mut q1 = 0.0;
        let mut q2 = 1.0;
        let a1 = 0.25 - mu2;
        let mut q = a1;
        let mut c = a1;
        let mut a = -a1;
        let mut s = 1.0 + q * delh;
        for i in 2..MAXIT {
            let fi = i as f64;
            a -= 2.0 * (fi - 1.0);
            c = -a * c / fi;
            let qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh *= b * d - 1.0 ;
            h += delh;
            let dels = q * delh;
            s += dels;
            if (dels / s).abs() < EPS {
                break;
            }
        }
        h *= a1;
        let kmu = (PI / (2.0 * x)).sqrt() / s;
        let k1 = kmu * (mu + x + 0.5 - h) / x;
        (kmu, k1)
    }
}

/// e^z K_mu(z).
pub fn bessel_k_scaled(mu: f64, z: f64) -> Result<f64> {
    if !(z > 0.0) {
        return Err(Error::domain("z", "z > 0", z));
    }
    let nu = mu.abs();
    if nu > MAX_ORDER {
        return Err(Error::domain("mu", "|mu| <= 200", mu));
    }
    let nl = (nu + 0.5).floor();
    let xmu = nu - nl;
    let (mut k0, mut k1) = k_pair_scaled(xmu, z);
    let two_over_z = 2.0 / z;
    for i in 1..=(nl as usize) {
        let next = (xmu + i as f64) * two_over_z * k1 + k0;
        k0 = k1;
        k1 = next;
    }
    Ok(k0)
}

/// K_mu(z), underflowing to zero for very large z.
pub fn bessel_k(mu: f64, z: f64) -> Result<f64> {
    Ok(bessel_k_eval(mu, z)?.value)
}

/// K_mu(z) together with its scaled form and an underflow flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KEval {
    pub value: f64,
    pub scaled: f64,
    pub underflow: bool,
}

pub fn bessel_k_eval(mu: f64, z: f64) -> Result<KEval> {
    let scaled = bessel_k_scaled(mu, z)?;
    let value = scaled * (-z).exp();
    Ok(KEval {
        value,
        scaled,
        underflow: value == 0.0 || !value.is_normal(),
    })
}

/// Hankel expansion of (J_nu, Y_nu) for large x.
fn jy_asymptotic(nu: f64, x: f64) -> (f64, f64) {
    let m = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        let fk = k as f64;
        let odd = 2.0 * fk - 1.0;
        term *= (m - odd * odd) / (fk * 8.0 * x);
        if term.abs() > prev || term == 0.0 {
            break;
        }
        prev = term.abs();
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if term.abs() < 1e-17 {
            break;
        }
    }
    let phase = nu / 2.0 + 0.25;
    let (cp, sp) = (cos_pi(phase), sin_pi(phase));
    let (cx, sx) = (x.cos(), x.sin());
    let cos_chi = cx * cp + sx * sp;
    let sin_chi = sx * cp - cx * sp;
    let amp = (2.0 / (PI * x)).sqrt();
    (
        amp * (p * cos_chi - q * sin_chi),
        amp * (p * sin_chi + q * cos_chi),
    )
}

/// (J_nu(x), Y_nu(x)) for nu ≥ 0, x > 0 by Steed/Temme continued fractions.
fn jy_cf(xnu: f64, x: f64) -> (f64, f64) {
    const XMIN: f64 = 2.0;
    let nl = if x < XMIN {
        (xnu + 0.5).floor() as usize
    } else {
        (xnu - x + 1.5).floor().max(0.0) as usize
    };
    let xmu = xnu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;
    let mut isign = 1.0;
    let mut h = (xnu * xi).max(FPMIN);
    let mut b = xi2 * xnu;
    let mut d = 0.0;
    let mut c = h;
    for _ in 0..MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    let mut rjl = isign * 1e-30;
    let mut rjpl = h * rjl;
    let mut rjl1 = rjl;
    let mut fact = xnu * xi;
    for _ in (1..=nl).rev() {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
        if rjl.abs() > 1e250 {
            rjl *= 1e-250;
            rjpl *= 1e-250;
            rjl1 *= 1e-250;
        }
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;
    let (rjmu, mut rymu, mut ry1);
    if x < XMIN {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS {
            1.0
        } else {
            pimu / pimu.sin()
        };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = 2.0 / PI * fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let ee = e.exp();
        let mut p = ee / (gampl * PI);
        let mut q = 1.0 / (ee * PI * gammi);
        let pimu2 = 0.5 * pimu;
        let fact3 = if pimu2.abs() < EPS {
            1.0
        } else {
            pimu2.sin() / pimu2
        };
        let r = PI * pimu2 * fact3 * fact3;
        let mut c = 1.0;
        let dd = -x2 * x2;
        let mut sum = ff + r * q;
        let mut sum1 = p;
        for i in 1..MAXIT {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            c *= dd / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = c * (ff + r * q);
            sum += del;
            let del1 = c * p - fi * del;
            sum1 += del1;
            if del.abs() < (1.0 + sum.abs()) * EPS {
                break;
            }
        }
        rymu = -sum;
        ry1 = -sum1 * xi2;
        let rymup = xmu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        let mut a = 0.25 - xmu2;
        let mut p = -0.5 * xi;
        let mut q = 1.0;
        let br = 2.0 * x;
        let mut bi = 2.0;
        let mut fact = a * xi / (p * p + q * q);
        let mut cr = br + q * fact;
        let mut ci = bi + p * fact;
        let mut den = br * br + bi * bi;
        let mut dr = br / den;
        let mut di = -bi / den;
        let mut dlr = cr * dr - ci * di;
        let mut dli = cr * di + ci * dr;
        let mut temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        for i in 2..MAXIT {
            a += 2.0 * (i as f64 - 1.0);
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if dr.abs() + di.abs() < FPMIN {
                dr = FPMIN;
            }
            fact = a / (cr * cr + ci * ci);
            cr = br + cr * fact;
            ci = bi - ci * fact;
            if cr.abs() + ci.abs() < FPMIN {
                cr = FPMIN;
            }
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (dlr - 1.0).abs() + dli.abs() < EPS {
                break;
            }
        }
        let gam = (p - f) / q;
        let mag = (w / ((p - f) * gam + q)).sqrt();
        rjmu = mag.copysign(rjl);
        rymu = rjmu * gam;
        let rymup = rymu * (p + q / gam);
        ry1 = xmu * xi * rymu - rymup;
    }
    let j = rjl1 * (rjmu / rjl);
    for i in 1..=nl {
        let rytemp = (xmu + i as f64) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = rytemp;
    }
    (j, rymu)
}

fn jy_nonneg(nu: f64, x: f64) -> (f64, f64) {
    if x >= 25.0 && x >= 2.0 * nu * nu {
        jy_asymptotic(nu, x)
    } else {
        jy_cf(nu, x)
    }
}

/// J_mu(z) for real order and z ≥ 0.
pub fn bessel_j(mu: f64, z: f64) -> Result<f64> {
    if !(z >= 0.0) {
        return Err(Error::domain("z", "z >= 0", z));
    }
    if mu.abs() > MAX_ORDER {
        return Err(Error::domain("mu", "|mu| <= 200", mu));
    }
    let integer = mu == mu.floor();
    if z == 0.0 {
        return Ok(if mu == 0.0 {
            1.0
        } else if mu > 0.0 || integer {
            0.0
        } else {
            f64::INFINITY.copysign(cos_pi(-mu))
        });
    }
    if mu >= 0.0 {
        return Ok(jy_nonneg(mu, z).0);
    }
    let nu = -mu;
    let (j, y) = jy_nonneg(nu, z);
    if integer {
        return Ok(if (nu as i64) % 2 == 0 { j } else { -j });
    }
    Ok(cos_pi(nu) * j - sin_pi(nu) * y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn k_half(z: f64) -> f64 {
        (PI / (2.0 * z)).sqrt() * (-z).exp()
    }

    #[test]
    fn temme_gammas_match_direct() {
        use super::super::gamma::gamma;
        for &mu in &[0.3_f64, -0.45, 0.1, 1e-6] {
            let (g1, g2, gp, gm) = temme_gammas(mu);
            let ip = 1.0 / gamma(1.0 + mu).unwrap();
            let im = 1.0 / gamma(1.0 - mu).unwrap();
            assert!((gp - ip).abs() < 4e-15, "mu={mu}");
            assert!((gm - im).abs() < 4e-15, "mu={mu}");
            assert!((g2 - 0.5 * (im + ip)).abs() < 4e-15);
            if mu.abs() > 0.01 {
                assert!(
                    (g1 - (im - ip) / (2.0 * mu)).abs() < 1e-13,
                    "{g1} {}",
                    (im - ip) / (2.0 * mu)
                );
            }
        }
    }

    #[test]
    fn k_half_integer_closed_forms() {
        for &z in &[1e-6, 0.01, 0.5, 1.0, 1.999, 2.0, 3.7, 40.0, 600.0] {
            assert!(rel(bessel_k(0.5, z).unwrap(), k_half(z)) < 1e-13, "z={z}");
            let k32 = k_half(z) * (1.0 + 1.0 / z);
            assert!(rel(bessel_k(1.5, z).unwrap(), k32) < 1e-13, "z={z}");
            assert!(rel(bessel_k(-1.5, z).unwrap(), k32) < 1e-13, "z={z}");
        }
        assert!(rel(bessel_k(0.5, 1.0).unwrap(), 0.461_068_504_447_894_1) < 1e-13);
    }

    #[test]
    fn k_known_integer_orders() {
        // K_0(1), K_1(1), K_0(0.1), K_1(5)
        assert!(rel(bessel_k(0.0, 1.0).unwrap(), 0.421_024_438_240_708_3) < 1e-13);
        assert!(rel(bessel_k(1.0, 1.0).unwrap(), 0.601_907_230_197_234_6) < 1e-13);
        assert!(rel(bessel_k(0.0, 0.1).unwrap(), 2.427_069_024_702_017) < 1e-13);
        assert!(rel(bessel_k(1.0, 5.0).unwrap(), 0.004_044_613_445_452_164) < 1e-12);
    }

    #[test]
    fn k_crossover_is_continuous() {
        for &mu in &[-0.5, -0.2, 0.0, 0.2, 0.4999] {
            for &x in &[1.5, 2.0, 2.5] {
                let (t0, t1) = k_pair_temme(mu, x);
                let (s0, s1) = k_pair_steed(mu, x);
                assert!(rel(t0, s0) < 1e-13 && rel(t1, s1) < 1e-13, "mu={mu} x={x}");
            }
        }
    }

    #[test]
    fn k_recurrence_on_grid() {
        for i in 0..=30 {
            let z = 0.01 * (5000.0f64).powf(i as f64 / 30.0);
            for j in 1..=20 {
                let mu = j as f64 * 0.5 - 0.13;
                let lhs = bessel_k(mu + 1.0, z).unwrap();
                let rhs = bessel_k(mu - 1.0, z).unwrap() + 2.0 * mu / z * bessel_k(mu, z).unwrap();
                assert!(rel(lhs, rhs) < 1e-9, "mu={mu} z={z}");
            }
        }
    }

    #[test]
    fn k_small_argument_log_divergence() {
        let z = 1e-8_f64;
        let k0 = bessel_k(0.0, z).unwrap();
        let approx = -(z / 2.0).ln() - 0.577_215_664_901_532_9;
        assert!(rel(k0, approx) < 1e-12);
    }

    #[test]
    fn k_underflow_flag() {
        let e = bessel_k_eval(0.5, 800.0).unwrap();
        assert!(e.underflow && e.value == 0.0);
        assert!(rel(e.scaled, (PI / 1600.0).sqrt()) < 1e-13);
        assert!(bessel_k(0.0, 0.0).is_err());
    }

    #[test]
    fn j_half_integer_closed_forms() {
        for i in 1..=200 {
            let z = 0.1 * i as f64;
            let a = (2.0 / (PI * z)).sqrt();
            let jp = bessel_j(0.5, z).unwrap();
            let jm = bessel_j(-0.5, z).unwrap();
            assert!((jp - a * z.sin()).abs() < 1e-13 * a, "z={z}");
            assert!((jm - a * z.cos()).abs() < 1e-13 * a, "z={z}");
        }
        assert!(rel(bessel_j(0.5, PI / 2.0).unwrap(), 2.0 / PI) < 1e-13);
        assert!(rel(bessel_j(-0.5, PI).unwrap(), -(2.0f64).sqrt() / PI) < 1e-13);
    }

    #[test]
    fn j_known_values() {
        assert_eq!(bessel_j(0.0, 0.0).unwrap(), 1.0);
        assert!(rel(bessel_j(0.0, 1.0).unwrap(), 0.765_197_686_557_966_6) < 1e-13);
        assert!(rel(bessel_j(1.0, 10.0).unwrap(), 0.043_472_746_168_861_44) < 1e-11);
        assert!(rel(bessel_j(0.0, 100.0).unwrap(), 0.019_985_850_304_223_12) < 1e-11);
        assert!(bessel_j(0.0, -1.0).is_err());
    }

    #[test]
    fn jy_wronskian() {
        for &nu in &[0.0, 0.3, 1.5, 4.75] {
            for &x in &[0.05, 1.0, 1.99, 2.0, 7.5, 30.0, 400.0] {
                let (j0, y0) = jy_nonneg(nu, x);
                let (j1, y1) = jy_nonneg(nu + 1.0, x);
                let w = j1 * y0 - j0 * y1;
                assert!(rel(w, 2.0 / (PI * x)) < 1e-11, "nu={nu} x={x}");
            }
        }
    }

    #[test]
    fn j_regimes_agree_across_switch() {
        for &nu in &[0.0, 0.5, 1.0, 2.5] {
            for &x in &[25.0, 40.0, 300.0] {
                let a = jy_asymptotic(nu, x).0;
                let b = jy_cf(nu, x).0;
                assert!((a - b).abs() < 1e-12, "nu={nu} x={x}");
            }
        }
    }

    #[test]
    fn j_large_order_recurrence() {
        for &x in &[0.5, 5.0, 50.0, 5000.0] {
            for &nu in &[10.5, 60.0, 150.25] {
                let lhs = bessel_j(nu - 1.0, x).unwrap() + bessel_j(nu + 1.0, x).unwrap();
                let rhs = 2.0 * nu / x * bessel_j(nu, x).unwrap();
                let scale = lhs.abs().max(rhs.abs()).max(1e-300);
                assert!((lhs - rhs).abs() <= 1e-10 * scale, "nu={nu} x={x}");
            }
        }
    }
}
