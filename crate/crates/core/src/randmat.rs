//! Reproducible random variates: a counter-based ChaCha stream per Monte
//! Carlo chunk, Box–Muller normals, Marsaglia–Tsang gamma variates, Bartlett
//! Wishart draws and random SPD test matrices.
//!
//! A stream is fully determined by `(seed, stream)`; the position inside it is
//! the ChaCha block counter. Chunk `c` of a Monte Carlo run always uses stream
//! `c`, so results do not depend on how chunks are scheduled on threads.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{domain, Result};
use crate::linalg::{SpdMatrix, SymMatrix};

/// Default seed used everywhere a seed is not supplied.
pub const DEFAULT_SEED: u64 = 42;

/// One independent, seekable random stream.
#[derive(Clone, Debug)]
pub struct RngStream {
    seed: u64,
    stream: u64,
    rng: ChaCha8Rng,
    spare_normal: Option<f64>,
}

impl RngStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        RngStream {
            seed,
            stream,
            rng,
            spare_normal: None,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// Position within the stream, in 32-bit words.
    pub fn counter(&self) -> u128 {
        self.rng.get_word_pos()
    }

    /// Jumps to a word position; clears any cached normal.
    pub fn seek(&mut self, counter: u128) {
        self.rng.set_word_pos(counter);
        self.spare_normal = None;
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform on the open interval `(0, 1)` with 53-bit resolution.
    pub fn uniform(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal by the Box–Muller transform.
    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        let u1 = self.uniform();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        self.spare_normal = Some(r * theta.sin());
        r * theta.cos()
    }
}

/// A `Gamma(shape, 1)` draw (Marsaglia–Tsang; shapes below one are boosted
/// via `Gamma(shape + 1)·U^{1/shape}`).
pub fn gamma_variate(rng: &mut RngStream, shape: f64) -> Result<f64> {
    if !(shape > 0.0) || !shape.is_finite() {
        return Err(domain(format!("gamma shape must be > 0 (got {shape})")));
    }
    if shape < 1.0 {
        let g = gamma_variate(rng, shape + 1.0)?;
        return Ok(g * rng.uniform().powf(1.0 / shape));
    }
    let d = shape - 1.0 / 3.0;
    let c = 1.0 / (9.0 * d).sqrt();
    loop {
        let x = rng.normal();
        let v = 1.0 + c * x;
        if v <= 0.0 {
            continue;
        }
        let v = v * v * v;
        let u = rng.uniform();
        let x2 = x * x;
        if u < 1.0 - 0.0331 * x2 * x2 || u.ln() < 0.5 * x2 + d * (1.0 - v + v.ln()) {
            return Ok(d * v);
        }
    }
}

/// Wishart law `W_m(n, Σ)` with density `∝ det(X)^{(n−m−1)/2} etr(−Σ⁻¹X/2)`.
#[derive(Clone, Debug)]
pub struct WishartSpec {
    dof: f64,
    scale: SpdMatrix,
}

impl WishartSpec {
    pub fn new(dof: f64, scale: SpdMatrix) -> Result<Self> {
        let m = scale.dim() as f64;
        if !(dof > m - 1.0) {
            return Err(domain(format!(
                "Wishart requires n > m - 1 (n = {dof}, m = {m})"
            )));
        }
        Ok(WishartSpec { dof, scale })
    }

    /// The law whose density is proportional to
    /// `etr(−XZ) det(X)^{a−(m+1)/2}`: `n = 2a`, `Σ = (2Z)⁻¹`.
    pub fn for_laplace_integrand(a: f64, z: &SpdMatrix) -> Result<Self> {
        let sigma = SpdMatrix::new(z.inverse().scaled(0.5))?;
        Self::new(2.0 * a, sigma)
    }

    pub fn dim(&self) -> usize {
        self.scale.dim()
    }

    pub fn dof(&self) -> f64 {
        self.dof
    }

    pub fn scale(&self) -> &SpdMatrix {
        &self.scale
    }
}

/// Bartlett draw `X = L·A·A'·L'` with `Σ = L·L'`, `A` lower triangular,
/// `A_ii² ~ χ²(n − i + 1)` and `A_ij ~ N(0, 1)` below the diagonal.
pub fn wishart(rng: &mut RngStream, spec: &WishartSpec) -> Result<SpdMatrix> {
    let m = spec.dim();
    let mut a = vec![0.0; m * m];
    for i in 0..m {
        let chi2 = 2.0 * gamma_variate(rng, (spec.dof - i as f64) / 2.0)?;
        a[i * m + i] = chi2.sqrt();
        for j in 0..i {
            a[i * m + j] = rng.normal();
        }
    }
    // B = L·A with L = T' lower triangular.
    let mut b = vec![0.0; m * m];
    for i in 0..m {
        for j in 0..=i {
            b[i * m + j] = (j..=i).map(|k| spec.scale.factor(k, i) * a[k * m + j]).sum();
        }
    }
    let mut x = vec![0.0; m * m];
    for i in 0..m {
        for j in 0..=i {
            let s: f64 = (0..=j).map(|k| b[i * m + k] * b[j * m + k]).sum();
            x[i * m + j] = s;
            x[j * m + i] = s;
        }
    }
    SpdMatrix::new(SymMatrix::symmetrize(m, &x))
}

/// `Q·diag(d)·Q'` with `Q` from the QR factorisation of a Gaussian matrix and
/// `d` log-uniform in `[cap^{-1/2}, cap^{1/2}]`, so the condition number is at
/// most `condition_cap`.
pub fn random_spd(rng: &mut RngStream, m: usize, condition_cap: f64) -> Result<SpdMatrix> {
    if m == 0 {
        return Err(domain("random_spd requires m >= 1"));
    }
    if !(condition_cap >= 1.0) {
        return Err(domain(format!("condition cap must be >= 1 (got {condition_cap})")));
    }
    let q = random_orthogonal(rng, m);
    let half = 0.5 * condition_cap.ln();
    let d: Vec<f64> = (0..m)
        .map(|_| (-half + 2.0 * half * rng.uniform()).exp())
        .collect();
    let mut out = vec![0.0; m * m];
    for i in 0..m {
        for j in 0..m {
            out[i * m + j] = (0..m).map(|k| q[i * m + k] * d[k] * q[j * m + k]).sum();
        }
    }
    SpdMatrix::new(SymMatrix::symmetrize(m, &out))
}

/// Columns of `Q` from modified Gram–Schmidt on a Gaussian matrix, with sign
/// fixed so `R` has a positive diagonal.
fn random_orthogonal(rng: &mut RngStream, m: usize) -> Vec<f64> {
    let mut q: Vec<f64> = (0..m * m).map(|_| rng.normal()).collect();
    for j in 0..m {
        for p in 0..j {
            let dot: f64 = (0..m).map(|i| q[i * m + p] * q[i * m + j]).sum();
            for i in 0..m {
                q[i * m + j] -= dot * q[i * m + p];
            }
        }
        let norm = (0..m).map(|i| q[i * m + j].powi(2)).sum::<f64>().sqrt();
        for i in 0..m {
            q[i * m + j] /= norm;
        }
    }
    q
}
