/// Wynn's epsilon algorithm applied to a stream of partial sums.
#[derive(Debug, Clone, Default)]
pub struct Epsilon {
    // Last computed anti-diagonal of the epsilon table.
    diag: Vec<f64>,
    count: usize,
    history: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsilonEstimate {
    pub value: f64,
    pub error: f64,
}

impl Epsilon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Feeds the next partial sum and returns the current extrapolation.
    pub fn push(&mut self, s: f64) -> EpsilonEstimate {
        let mut prev_col = 0.0; // eps_{k-1} at the previous row
        let mut cur = s;
        let mut new_diag = Vec::with_capacity(self.diag.len() + 1);
        new_diag.push(s);
        for (k, &old) in self.diag.iter().enumerate() {
            let diff = cur - old;
            let next = if diff == 0.0 || !diff.is_finite() {
                f64::INFINITY
            } else {
                let base = if k == 0 { 0.0 } else { prev_col };
                base + 1.0 / diff
            };
            prev_col = old;
            if !next.is_finite() {
                break;
            }
            new_diag.push(next);
            cur = next;
        }
        self.diag = new_diag;
        self.count += 1;
        // Even columns hold sequence estimates.
        let last_even = (self.diag.len() - 1) & !1;
        let value = self.diag[last_even];
        self.history.push(value);
        let h = &self.history;
        let error = if h.len() >= 3 {
            let n = h.len();
            (h[n - 1] - h[n - 2]).abs() + (h[n - 2] - h[n - 3]).abs()
        } else {
            f64::INFINITY
        };
        EpsilonEstimate { value, error }
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accelerates_alternating_harmonic() {
        let mut e = Epsilon::new();
        let mut s = 0.0;
        let mut est = EpsilonEstimate {
            value: 0.0,
            error: 0.0,
        };
        for k in 1..=20 {
            s += if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
            est = e.push(s);
        }
        assert!((est.value - std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn accelerates_slow_alternating_series() {
        // Σ (-1)^k / sqrt(k+1) = (1 - √2) ζ(1/2) = 0.6048986434216303
        let mut e = Epsilon::new();
        let mut s = 0.0;
        let mut est = None;
        for k in 0..30 {
            s += if k % 2 == 0 { 1.0 } else { -1.0 } / ((k + 1) as f64).sqrt();
            est = Some(e.push(s));
        }
        assert!((est.unwrap().value - 0.604_898_643_421_630_3).abs() < 1e-10);
    }
}
