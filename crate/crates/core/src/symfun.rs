//! Exact symmetric functions of a fixed degree over arbitrary-precision
//! rationals.
//!
//! Polynomials are stored in the monomial symmetric basis `{m_λ}` with
//! `n = k` variables for degree `k`, which is the smallest variable count for
//! which the basis stays linearly independent. The power-sum basis `{p_λ}` is
//! reached through the exact transition matrix, and the zonal (`α = 2`) inner
//! product is `⟨p_λ, p_μ⟩ = δ_λμ 2^{ℓ(λ)} z_λ`.

use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::{enumerate, Partition};

/// Exact rational scalar, always held in lowest terms with positive denominator.
pub type ExactRational = BigRational;

#[cfg(test)]
pub(crate) fn q(n: i64, d: i64) -> ExactRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A homogeneous symmetric polynomial of degree `k` in the monomial basis.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPoly {
    degree: usize,
    coeffs: BTreeMap<Partition, ExactRational>,
}

impl SymPoly {
    pub fn zero(degree: usize) -> Self {
        SymPoly {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// The single monomial symmetric function `m_λ`.
    pub fn monomial(lambda: Partition) -> Self {
        let mut p = SymPoly::zero(lambda.weight());
        p.coeffs.insert(lambda, ExactRational::one());
        p
    }

    pub fn from_terms(
        degree: usize,
        terms: impl IntoIterator<Item = (Partition, ExactRational)>,
    ) -> Result<Self> {
        let mut p = SymPoly::zero(degree);
        for (lambda, c) in terms {
            p.add_term(lambda, c)?;
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficient of `m_λ` (zero when absent).
    pub fn coeff(&self, lambda: &Partition) -> ExactRational {
        self.coeffs.get(lambda).cloned().unwrap_or_else(Zero::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &ExactRational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, lambda: Partition, c: ExactRational) -> Result<()> {
        if lambda.weight() != self.degree {
            return Err(Error::DegreeMismatch(lambda.weight(), self.degree));
        }
        let entry = self.coeffs.entry(lambda).or_insert_with(Zero::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.retain(|_, v| !v.is_zero());
        }
        Ok(())
    }

    pub fn scale(&self, c: &ExactRational) -> SymPoly {
        if c.is_zero() {
            return SymPoly::zero(self.degree);
        }
        SymPoly {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, v)| (k.clone(), v * c))
                .collect(),
        }
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &ExactRational, other: &SymPoly) -> Result<SymPoly> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        let mut out = self.clone();
        for (lambda, v) in &other.coeffs {
            out.add_term(lambda.clone(), v * c)?;
        }
        Ok(out)
    }

    /// Evaluates at `x`; monomials with more parts than variables vanish.
    pub fn eval<T>(&self, x: &[T]) -> T
    where
        T: Clone + Zero + One + Add<Output = T> + Mul<Output = T> + FromExact,
    {
        let mut acc = T::zero();
        for (lambda, c) in &self.coeffs {
            if lambda.len() > x.len() {
                continue;
            }
            acc = acc + T::from_exact(c) * monomial_eval(lambda, x);
        }
        acc
    }
}

/// Scalars an exact coefficient can be converted into.
pub trait FromExact {
    fn from_exact(r: &ExactRational) -> Self;
}

impl FromExact for ExactRational {
    fn from_exact(r: &ExactRational) -> Self {
        r.clone()
    }
}

impl FromExact for f64 {
    fn from_exact(r: &ExactRational) -> Self {
        to_f64(r)
    }
}

/// Nearest `f64` to an exact rational, robust to numerators and denominators
/// beyond the `f64` range.
pub fn to_f64(r: &ExactRational) -> f64 {
    use num_traits::ToPrimitive;
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Scale both by a power of two so they fit.
    let shift = r.numer().bits().max(r.denom().bits()) as i64 - 1000;
    let (n, d) = if shift > 0 {
        (r.numer() >> shift as usize, r.denom() >> shift as usize)
    } else {
        (r.numer().clone(), r.denom().clone())
    };
    n.to_f64().unwrap_or(f64::NAN) / d.to_f64().unwrap_or(f64::NAN)
}

/// The distinct exponent vectors of `m_λ` in `n` variables: every distinct
/// permutation of `λ` zero-padded to length `n`. Empty when `ℓ(λ) > n`.
pub fn monomial_exponents(lambda: &Partition, n: usize) -> Vec<Vec<usize>> {
    let Ok(mut v) = lambda.padded(n) else {
        return Vec::new();
    };
    v.sort_unstable();
    let mut out = vec![v.clone()];
    while next_permutation(&mut v) {
        out.push(v.clone());
    }
    out
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

fn pow<T: Clone + One + Mul<Output = T>>(x: &T, e: usize) -> T {
    num_traits::pow::pow(x.clone(), e)
}

/// `m_λ(x)`: the sum over distinct permutations of `λ` across the variables
/// of `∏ x_{i_j}^{λ_j}`. Zero when `λ` has more parts than `x` has entries.
pub fn monomial_eval<T>(lambda: &Partition, x: &[T]) -> T
where
    T: Clone + Zero + One + Add<Output = T> + Mul<Output = T>,
{
    monomial_exponents(lambda, x.len())
        .iter()
        .fold(T::zero(), |acc, exps| {
            let term = exps
                .iter()
                .zip(x)
                .filter(|(&e, _)| e > 0)
                .fold(T::one(), |t, (&e, xi)| t * pow(xi, e));
            acc + term
        })
}

/// `p_λ = ∏ p_{λ_i}` expanded in the monomial basis (`n = |λ|` variables).
///
/// The coefficient of `m_μ` counts the maps from the parts of `λ` to the rows
/// of `μ` whose fibres sum to the rows.
pub fn power_sum_in_monomial_basis(lambda: &Partition) -> SymPoly {
    let k = lambda.weight();
    let mut out = SymPoly::zero(k);
    for mu in enumerate(k, k.max(1)) {
        let c = count_fillings(lambda.parts(), mu.parts());
        if c > 0 {
            out.coeffs.insert(mu, ExactRational::from_integer(c.into()));
        }
    }
    out
}

fn count_fillings(parts: &[usize], rows: &[usize]) -> u64 {
    let n = parts.len();
    let full = (1usize << n) - 1;
    let sums: Vec<usize> = (0..=full)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).map(|i| parts[i]).sum())
        .collect();
    let mut dp: HashMap<usize, u64> = HashMap::from([(0, 1)]);
    for &row in rows {
        let mut next: HashMap<usize, u64> = HashMap::new();
        for (&used, &count) in &dp {
            let free = full & !used;
            let mut sub = free;
            loop {
                if sub != 0 && sums[sub] == row {
                    *next.entry(used | sub).or_insert(0) += count;
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & free;
            }
        }
        dp = next;
    }
    dp.get(&full).copied().unwrap_or(0)
}

/// `z_λ = ∏_j j^{m_j} m_j!` where `m_j` is the multiplicity of `j` in `λ`.
pub fn z_lambda(lambda: &Partition) -> BigInt {
    let mut z = BigInt::one();
    for (j, &mj) in lambda.multiplicities().iter().enumerate().skip(1) {
        for i in 1..=mj {
            z *= BigInt::from(j) * BigInt::from(i);
        }
    }
    z
}

/// Power-sum/monomial transition data for one degree.
#[derive(Clone, Debug)]
pub struct DegreeBasis {
    degree: usize,
    parts: Vec<Partition>,
    index: HashMap<Partition, usize>,
    /// Row `λ`: coefficients of `p_λ` on `m_μ`.
    p_to_m: Vec<Vec<ExactRational>>,
    /// Row `λ`: coefficients of `m_λ` on `p_ν`.
    m_to_p: Vec<Vec<ExactRational>>,
    /// `⟨p_ν, p_ν⟩ = 2^{ℓ(ν)} z_ν`.
    p_norms: Vec<ExactRational>,
}

impl DegreeBasis {
    pub fn new(degree: usize) -> Result<Self> {
        let parts = enumerate(degree, degree.max(1));
        let index: HashMap<_, _> = parts
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let p_to_m: Vec<Vec<ExactRational>> = parts
            .iter()
            .map(|lambda| {
                let ps = power_sum_in_monomial_basis(lambda);
                parts.iter().map(|mu| ps.coeff(mu)).collect()
            })
            .collect();
        let m_to_p = invert(&p_to_m)?;
        let p_norms = parts
            .iter()
            .map(|nu| {
                ExactRational::from_integer(z_lambda(nu) * (BigInt::one() << nu.len()))
            })
            .collect();
        Ok(DegreeBasis {
            degree,
            parts,
            index,
            p_to_m,
            m_to_p,
            p_norms,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Partitions of the degree in descending lexicographic order.
    pub fn partitions(&self) -> &[Partition] {
        &self.parts
    }

    pub fn p_to_m(&self) -> &[Vec<ExactRational>] {
        &self.p_to_m
    }

    pub fn m_to_p(&self) -> &[Vec<ExactRational>] {
        &self.m_to_p
    }

    /// Dense monomial-basis coordinates in [`Self::partitions`] order.
    pub fn to_dense(&self, f: &SymPoly) -> Result<Vec<ExactRational>> {
        if f.degree != self.degree {
            return Err(Error::DegreeMismatch(f.degree, self.degree));
        }
        let mut v = vec![ExactRational::zero(); self.parts.len()];
        for (lambda, c) in f.terms() {
            v[self.index[lambda]] = c.clone();
        }
        Ok(v)
    }

    pub fn from_dense(&self, v: &[ExactRational]) -> SymPoly {
        SymPoly {
            degree: self.degree,
            coeffs: self
                .parts
                .iter()
                .zip(v)
                .filter(|(_, c)| !c.is_zero())
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        }
    }

    /// Power-sum coordinates `f̂_ν` with `f = Σ f̂_ν p_ν`.
    pub fn to_power_sums(&self, f: &SymPoly) -> Result<Vec<ExactRational>> {
        let dense = self.to_dense(f)?;
        let n = self.parts.len();
        Ok((0..n)
            .map(|nu| {
                dense
                    .iter()
                    .zip(&self.m_to_p)
                    .filter(|(c, _)| !c.is_zero())
                    .fold(ExactRational::zero(), |acc, (c, row)| acc + c * &row[nu])
            })
            .collect())
    }

    /// Inner product of dense monomial-basis vectors under `α = 2`.
    pub fn inner_dense(&self, f: &[ExactRational], g: &[ExactRational]) -> ExactRational {
        let n = self.parts.len();
        let mut acc = ExactRational::zero();
        for nu in 0..n {
            let fh = f
                .iter()
                .zip(&self.m_to_p)
                .fold(ExactRational::zero(), |a, (c, row)| a + c * &row[nu]);
            if fh.is_zero() {
                continue;
            }
            let gh = g
                .iter()
                .zip(&self.m_to_p)
                .fold(ExactRational::zero(), |a, (c, row)| a + c * &row[nu]);
            acc += fh * gh * &self.p_norms[nu];
        }
        acc
    }

    /// Gram matrix `⟨m_λ, m_μ⟩` in [`Self::partitions`] order.
    pub fn monomial_gram(&self) -> Vec<Vec<ExactRational>> {
        let n = self.parts.len();
        let mut gram = vec![vec![ExactRational::zero(); n]; n];
        for i in 0..n {
            for j in i..n {
                let v = (0..n).fold(ExactRational::zero(), |acc, nu| {
                    acc + &self.m_to_p[i][nu] * &self.m_to_p[j][nu] * &self.p_norms[nu]
                });
                gram[i][j] = v.clone();
                gram[j][i] = v;
            }
        }
        gram
    }
}

/// `⟨f, g⟩` under the zonal (`α = 2`) inner product.
pub fn inner_product_alpha2(f: &SymPoly, g: &SymPoly) -> Result<ExactRational> {
    if f.degree != g.degree {
        return Err(Error::DegreeMismatch(f.degree, g.degree));
    }
    let basis = DegreeBasis::new(f.degree)?;
    let fh = basis.to_power_sums(f)?;
    let gh = basis.to_power_sums(g)?;
    Ok(fh
        .iter()
        .zip(&gh)
        .zip(&basis.p_norms)
        .fold(ExactRational::zero(), |acc, ((a, b), w)| acc + a * b * w))
}

/// Exact inverse by Gauss-Jordan elimination.
pub(crate) fn invert(a: &[Vec<ExactRational>]) -> Result<Vec<Vec<ExactRational>>> {
    let n = a.len();
    let mut aug: Vec<Vec<ExactRational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    ExactRational::one()
                } else {
                    ExactRational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !aug[r][col].is_zero())
            .ok_or_else(|| Error::Internal("singular transition matrix".into()))?;
        aug.swap(col, pivot);
        let inv = aug[col][col].recip();
        for x in aug[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r == col || aug[r][col].is_zero() {
                continue;
            }
            let factor = aug[r][col].clone();
            for c in col..2 * n {
                let delta = &factor * &aug[col][c];
                aug[r][c] -= delta;
            }
        }
    }
    Ok(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}
