//! Chunked, deterministic Monte Carlo accumulation.

use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::randmat::{RngStream, DEFAULT_SEED};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "MATARGS_THREADS";

/// Running count, mean and sum of squared deviations (Welford/Chan).
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Accumulator {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    /// Combines two partial results.
    pub fn merge(&self, other: &Accumulator) -> Accumulator {
        if self.n == 0 {
            return *other;
        }
        if other.n == 0 {
            return *self;
        }
        let n = self.n + other.n;
        let delta = other.mean - self.mean;
        let w = other.n as f64 / n as f64;
        Accumulator {
            n,
            mean: self.mean + delta * w,
            m2: self.m2 + other.m2 + delta * delta * self.n as f64 * w,
        }
    }

    pub fn count(&self) -> u64 {
        self.n
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Sample standard deviation over `√n`.
    pub fn stderr(&self) -> Result<f64> {
        if self.n < 2 {
            return Err(domain(format!("standard error needs n >= 2 (n = {})", self.n)));
        }
        Ok((self.m2.max(0.0) / (self.n - 1) as f64 / self.n as f64).sqrt())
    }
}

/// `(mean, stderr)` of a sequence of values. Errors when fewer than two.
pub fn mc_accumulate(values: impl IntoIterator<Item = f64>) -> Result<(f64, f64)> {
    let mut acc = Accumulator::new();
    for v in values {
        acc.push(v);
    }
    Ok((acc.mean(), acc.stderr()?))
}

/// Sampling configuration shared by the Monte Carlo verifiers.
#[derive(Clone, Debug, PartialEq)]
pub struct McConfig {
    pub n_samples: u64,
    pub seed: u64,
    pub chunk_size: u64,
    /// Worker cap; `None` reads [`THREADS_ENV`], falling back to all cores.
    pub threads: Option<usize>,
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig {
            n_samples: 200_000,
            seed: DEFAULT_SEED,
            chunk_size: 10_000,
            threads: None,
        }
    }
}

impl McConfig {
    pub fn new(n_samples: u64, seed: u64) -> Self {
        McConfig {
            n_samples,
            seed,
            ..Default::default()
        }
    }

    fn resolved_threads(&self) -> Option<usize> {
        self.threads.or_else(|| {
            std::env::var(THREADS_ENV)
                .ok()
                .and_then(|s| s.trim().parse::<usize>().ok())
                .filter(|&t| t > 0)
        })
    }
}

/// Runs `sample` `n_samples` times. Chunk `c` draws from stream `c` of the
/// seed and chunk results are merged in chunk order, so the result depends on
/// `(seed, n_samples, chunk_size)` only.
pub fn run_chunks<F>(cfg: &McConfig, sample: F) -> Result<Accumulator>
where
    F: Fn(&mut RngStream) -> Result<f64> + Sync,
{
    if cfg.n_samples < 2 {
        return Err(domain(format!("requires samples >= 2 (got {})", cfg.n_samples)));
    }
    if cfg.chunk_size == 0 {
        return Err(domain("requires chunk-size >= 1"));
    }
    let chunks = cfg.n_samples.div_ceil(cfg.chunk_size);
    let run_chunk = |c: u64| -> Result<Accumulator> {
        let mut rng = RngStream::new(cfg.seed, c);
        let len = cfg.chunk_size.min(cfg.n_samples - c * cfg.chunk_size);
        let mut acc = Accumulator::new();
        for _ in 0..len {
            acc.push(sample(&mut rng)?);
        }
        Ok(acc)
    };
    let parts: Vec<Accumulator> = match cfg.resolved_threads() {
        Some(1) => (0..chunks).map(run_chunk).collect::<Result<_>>()?,
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::Internal(e.to_string()))?
            .install(|| (0..chunks).into_par_iter().map(run_chunk).collect::<Result<_>>())?,
        None => (0..chunks).into_par_iter().map(run_chunk).collect::<Result<_>>()?,
    };
    Ok(parts.iter().fold(Accumulator::new(), |acc, p| acc.merge(p)))
}
