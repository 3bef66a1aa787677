use std::str::FromStr;

use linnik::Params;

/// A real parameter as typed: a decimal, or an exact rational `a/b`.
/// Integers count as exact (`k/1`).
#[derive(Debug, Clone, PartialEq)]
pub struct Real {
    pub text: String,
    pub value: f64,
    pub ratio: Option<(u64, u64)>,
}

impl FromStr for Real {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || format!("expected a real number or a rational a/b, got {s:?}");
        let ratio = if let Some((a, b)) = s.split_once('/') {
            let a: u64 = a.trim().parse().map_err(|_| bad())?;
            let b: u64 = b.trim().parse().map_err(|_| bad())?;
            if b == 0 {
                return Err(format!("zero denominator in {s:?}"));
            }
            Some((a, b))
        } else {
            s.parse::<u64>().ok().map(|a| (a, 1))
        };
        let value = match ratio {
            Some((a, b)) => a as f64 / b as f64,
            None => s.parse::<f64>().map_err(|_| bad())?,
        };
        if !value.is_finite() {
            return Err(bad());
        }
        Ok(Real {
            text: s.to_string(),
            value,
            ratio,
        })
    }
}

/// Exact rationals go through the exact constructor only when both are exact.
pub fn build_params(alpha: &Real, nu: &Real, n: u32) -> linnik::Result<Params> {
    match (alpha.ratio, nu.ratio) {
        (Some((a, b)), Some((e, f))) => Params::exact(a, b, e, f, n),
        _ => Params::new(alpha.value, nu.value, n),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Scale {
    Log,
    Linear,
}

/// `start:stop:count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || format!("expected start:stop:count, got {s:?}");
        if parts.len() != 3 {
            return Err(bad());
        }
        let start: f64 = parts[0].parse().map_err(|_| bad())?;
        let stop: f64 = parts[1].parse().map_err(|_| bad())?;
        let count: usize = parts[2].parse().map_err(|_| bad())?;
        if count == 0 || !(start > 0.0 && stop >= start && stop.is_finite()) {
            return Err(format!("need 0 < start <= stop and count >= 1 in {s:?}"));
        }
        Ok(Range { start, stop, count })
    }
}

impl Range {
    pub fn points(&self, scale: Scale) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|k| {
                let t = k as f64 / last;
                match scale {
                    Scale::Log => self.start * (self.stop / self.start).powf(t),
                    Scale::Linear => self.start + (self.stop - self.start) * t,
                }
            })
            .collect()
    }
}

/// `default`, or `alpha,nu,n` triples separated by `;`.
pub fn parse_grid(s: &str) -> Result<Vec<Params>, String> {
    if s.trim() == "default" {
        return Ok(linnik::verify::default_grid());
    }
    s.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let f: Vec<&str> = t.split(',').collect();
            if f.len() != 3 {
                return Err(format!("expected alpha,nu,n in {t:?}"));
            }
            let a: Real = f[0].parse()?;
            let nu: Real = f[1].parse()?;
            let n: u32 = f[2].trim().parse().map_err(|_| format!("bad n in {t:?}"))?;
            build_params(&a, &nu, n).map_err(|e| e.to_string())
        })
        .collect()
}

/// Comma-separated reals.
pub fn parse_vector(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| format!("bad vector component {x:?}"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_and_decimals() {
        let r: Real = "3/2".parse().unwrap();
        assert_eq!((r.value, r.ratio), (1.5, Some((3, 2))));
        let r: Real = "2".parse().unwrap();
        assert_eq!(r.ratio, Some((2, 1)));
        let r: Real = "0.75".parse().unwrap();
        assert_eq!((r.value, r.ratio), (0.75, None));
        assert!("1/0".parse::<Real>().is_err());
        assert!("x".parse::<Real>().is_err());
    }

    #[test]
    fn ranges() {
        let r: Range = "1:100:3".parse().unwrap();
        let p = r.points(Scale::Log);
        assert!((p[1] - 10.0).abs() < 1e-12);
        assert_eq!(r.points(Scale::Linear)[1], 50.5);
        assert!("0:1:3".parse::<Range>().is_err());
        assert!("1:2".parse::<Range>().is_err());
    }

    #[test]
    fn grids() {
        assert_eq!(parse_grid("default").unwrap().len(), 36);
        let g = parse_grid("1/2,1,1; 2,1.5,3").unwrap();
        assert_eq!(g.len(), 2);
        assert!(g[0].exact_form().is_some());
        assert!(g[1].exact_form().is_none());
        assert!(parse_grid("3,1,1").is_err());
    }
}
