//! Small numeric helpers shared by the series evaluators.

/// Neumaier-compensated running sum that also tracks Σ|x|.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Sum {
    s: f64,
    c: f64,
    abs: f64,
}

impl Sum {
    pub fn add(&mut self, x: f64) {
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.c += (self.s - t) + x;
        } else {
            self.c += (x - t) + self.s;
        }
        self.s = t;
        self.abs += x.abs();
    }

    pub fn value(&self) -> f64 {
        self.s + self.c
    }

    pub fn abs_total(&self) -> f64 {
        self.abs
    }
}

/// Unevaluated sum hi + lo carrying about twice the working precision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

impl Dd {
    /// α(ν + m) − c, with integer-valued m and c.
    pub fn affine(alpha: f64, nu: f64, m: f64, c: f64) -> Dd {
        let (s, se) = two_sum(nu, m);
        let p = alpha * s;
        let pe = alpha.mul_add(s, -p);
        let (h, he) = two_sum(p, -c);
        let (hi, lo) = two_sum(h, he + pe + alpha * se);
        Dd { hi, lo }
    }

    pub fn scale(self, k: f64) -> Dd {
        Dd {
            hi: self.hi * k,
            lo: self.lo * k,
        }
    }

    pub fn div(self, d: f64) -> Dd {
        let q = self.hi / d;
        let rem = (-q).mul_add(d, self.hi);
        let (hi, lo) = two_sum(q, (rem + self.lo) / d);
        Dd { hi, lo }
    }

    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

/// sign · exp(ln_abs), kept apart to avoid overflow in intermediate products.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLog {
    pub ln_abs: f64,
    pub sign: f64,
}

impl SignedLog {
    pub fn value(&self) -> f64 {
        if self.sign == 0.0 {
            0.0
        } else {
            self.sign * self.ln_abs.exp()
        }
    }

    /// self · x^k for x > 0.
    pub fn times_pow(&self, ln_x: f64, k: f64) -> f64 {
        if self.sign == 0.0 {
            0.0
        } else {
            self.sign * (self.ln_abs + k * ln_x).exp()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut s = Sum::default();
        s.add(1e16);
        s.add(1.0);
        s.add(-1e16);
        assert_eq!(s.value(), 1.0);
        assert_eq!(s.abs_total(), 2e16 + 1.0);
    }

    #[test]
    fn affine_matches_exact_rational_arithmetic() {
        // Exact values of the float-input expressions, computed with rationals.
        let d = Dd::affine(1.3, 0.3, 2.0, 3.0);
        assert_eq!(d.hi, -0.009999999999999912);
        assert!((d.lo + 5.551115123125788e-19).abs() < 1e-31);
        let q = Dd::affine(1.3, 0.3, 0.0, 3.0).div(1.3);
        assert_eq!(q.hi, -2.0076923076923077);
        assert!((q.lo - 4.040160710914031e-17).abs() < 1e-31);
    }
}
