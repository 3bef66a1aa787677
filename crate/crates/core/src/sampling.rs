//! Exact simulation of the Linnik law and empirical characteristic functions.
//!
//! X = U^{1/α} S with U ~ Gamma(ν, 1) and S = √(2W) G, where G is standard
//! Gaussian in ℝⁿ and W is positive (α/2)-stable with E e^{−sW} = e^{−s^{α/2}}
//! (Kanter's representation). Batches are generated in fixed-size shards,
//! each on its own ChaCha8 stream, so results do not depend on the number of
//! worker threads.

use std::f64::consts::PI;

use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, Gamma, StandardNormal};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::num::Sum;
use crate::par::{self, Exec};
use crate::params::Params;
use crate::stable::StableParams;

/// Points per shard; each shard draws from an independent stream.
pub const SHARD_LEN: usize = 1 << 14;

/// Deterministic generator state: a seed plus the next unused stream id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RngState {
    seed: u64,
    next_stream: u64,
}

impl RngState {
    pub fn new(seed: u64) -> Self {
        RngState {
            seed,
            next_stream: 0,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    fn take_streams(&mut self, count: u64) -> u64 {
        let first = self.next_stream;
        self.next_stream += count;
        first
    }

    fn stream(&self, id: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(id);
        rng
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum Law {
    Stable(StableParams),
    Linnik(Params),
}

impl Law {
    pub fn alpha(&self) -> f64 {
        match self {
            Law::Stable(s) => s.alpha,
            Law::Linnik(p) => p.alpha,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Law::Stable(s) => s.n as usize,
            Law::Linnik(p) => p.n as usize,
        }
    }
}

/// m points in ℝⁿ stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleBatch {
    pub points: Vec<f64>,
    pub law: Law,
    pub seed: u64,
}

impl SampleBatch {
    pub fn dim(&self) -> usize {
        self.law.dim()
    }

    pub fn len(&self) -> usize {
        self.points.len() / self.dim()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        let d = self.dim();
        &self.points[i * d..(i + 1) * d]
    }

    pub fn rows(&self) -> std::slice::ChunksExact<'_, f64> {
        self.points.chunks_exact(self.dim())
    }

    /// Euclidean norms of all points.
    pub fn norms(&self) -> Vec<f64> {
        self.rows()
            .map(|x| x.iter().map(|v| v * v).sum::<f64>().sqrt())
            .collect()
    }
}

/// Positive β-stable variate with Laplace transform e^{−s^β}, 0 < β ≤ 1.
pub fn positive_stable<R: Rng + ?Sized>(beta: f64, rng: &mut R) -> f64 {
    if beta >= 1.0 {
        return 1.0;
    }
    let u: f64 = rng.sample(Open01);
    let e: f64 = rng.sample(Exp1);
    let ln_a = beta / (1.0 - beta) * (beta * PI * u).sin().ln()
        + ((1.0 - beta) * PI * u).sin().ln()
        - (PI * u).sin().ln() / (1.0 - beta);
    ((1.0 - beta) / beta * (ln_a - e.ln())).exp()
}

fn fill_stable<R: Rng + ?Sized>(alpha: f64, scale: f64, out: &mut [f64], rng: &mut R) {
    let w = positive_stable(alpha / 2.0, rng);
    let c = (2.0 * w).sqrt() * scale;
    for x in out.iter_mut() {
        let g: f64 = rng.sample(StandardNormal);
        *x = c * g;
    }
}

fn sharded<F>(exec: Exec, rng: &mut RngState, m: usize, dim: usize, draw: F) -> Vec<f64>
where
    F: Fn(&mut ChaCha8Rng, &mut [f64]) + Sync + Send,
{
    let shards = m.div_ceil(SHARD_LEN);
    let base = rng.take_streams(shards as u64);
    let state = rng.clone();
    let parts = par::map_range(exec, shards, |s| {
        let len = SHARD_LEN.min(m - s * SHARD_LEN);
        let mut g = state.stream(base + s as u64);
        let mut buf = vec![0.0; len * dim];
        for row in buf.chunks_exact_mut(dim) {
            draw(&mut g, row);
        }
        buf
    });
    parts.concat()
}

/// m draws of the isotropic α-stable vector with CF exp(−‖t‖^α).
pub fn sample_stable_vector(sp: &StableParams, rng: &mut RngState, m: usize) -> SampleBatch {
    sample_stable_vector_with(Exec::Auto, sp, rng, m)
}

pub fn sample_stable_vector_with(
    exec: Exec,
    sp: &StableParams,
    rng: &mut RngState,
    m: usize,
) -> SampleBatch {
    let a = sp.alpha;
    let points = sharded(exec, rng, m, sp.n as usize, |g, row| {
        fill_stable(a, 1.0, row, g)
    });
    SampleBatch {
        points,
        law: Law::Stable(*sp),
        seed: rng.seed(),
    }
}

/// m draws of the (α, ν, n) Linnik vector.
pub fn sample_linnik(p: &Params, rng: &mut RngState, m: usize) -> SampleBatch {
    sample_linnik_with(Exec::Auto, p, rng, m)
}

pub fn sample_linnik_with(exec: Exec, p: &Params, rng: &mut RngState, m: usize) -> SampleBatch {
    let a = p.alpha;
    let gamma = Gamma::new(p.nu, 1.0).expect("nu > 0 is a Params invariant");
    let points = sharded(exec, rng, m, p.n as usize, |g, row| {
        let u: f64 = g.sample(gamma);
        fill_stable(a, u.powf(1.0 / a), row, g);
    });
    SampleBatch {
        points,
        law: Law::Linnik(*p),
        seed: rng.seed(),
    }
}

/// Sample mean of e^{i t·X} with jackknife standard errors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CfEstimate {
    pub re: f64,
    pub re_se: f64,
    pub im: f64,
    pub im_se: f64,
}

fn mean_and_jackknife(xs: &[f64]) -> (f64, f64) {
    let m = xs.len() as f64;
    let mut s = Sum::default();
    for &x in xs {
        s.add(x);
    }
    let mean = s.value() / m;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    // Leave-one-out means are (mΣ − x_i)/(m − 1); their spread reduces to
    // Σ(x_i − x̄)² / (m(m − 1)).
    let mut ss = Sum::default();
    for &x in xs {
        ss.add((x - mean) * (x - mean));
    }
    (mean, (ss.value() / (m * (m - 1.0))).sqrt())
}

pub fn empirical_cf(batch: &SampleBatch, t: &[f64]) -> Result<CfEstimate> {
    if batch.is_empty() {
        return Err(Error::domain("batch", "non-empty", 0.0));
    }
    if t.len() != batch.dim() {
        return Err(Error::domain(
            "t",
            "length equal to the dimension",
            t.len() as f64,
        ));
    }
    let phase: Vec<f64> = batch
        .rows()
        .map(|x| x.iter().zip(t).map(|(a, b)| a * b).sum())
        .collect();
    let cos: Vec<f64> = phase.iter().map(|p| p.cos()).collect();
    let sin: Vec<f64> = phase.iter().map(|p| p.sin()).collect();
    let (re, re_se) = mean_and_jackknife(&cos);
    let (im, im_se) = mean_and_jackknife(&sin);
    Ok(CfEstimate {
        re,
        re_se,
        im,
        im_se,
    })
}

/// (1 + ‖t‖^α)^{−ν}.
pub fn linnik_cf(p: &Params, t_norm: f64) -> f64 {
    (1.0 + t_norm.powf(p.alpha)).powf(-p.nu)
}
