//! Integer partitions: enumeration, dominance order, conjugation and the
//! dual partition `κ* = (n - k_m, ..., n - k_1)`.
//!
//! A [`Partition`] is always stored in canonical form: weakly decreasing
//! positive parts with trailing zeros trimmed. Operations that need a fixed
//! number of parts (`kappa_star`, `rho`) take `m` explicitly and zero-pad.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// The empty partition of 0.
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Builds a partition from parts, trimming zeros. Fails if the parts are
    /// not weakly decreasing.
    pub fn new(parts: impl Into<Vec<usize>>) -> Result<Self> {
        let mut parts = parts.into();
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::BadPartition(
                format!("{parts:?}"),
                "parts must be weakly decreasing".into(),
            ));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    /// Sorts arbitrary non-negative parts into canonical form.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// `|κ|`, the sum of the parts.
    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of positive parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The `i`-th part (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// The parts zero-padded to exactly `m` entries.
    pub fn padded(&self, m: usize) -> Result<Vec<usize>> {
        if self.len() > m {
            return Err(Error::Domain(format!(
                "partition ({self}) has more than m = {m} parts"
            )));
        }
        let mut v = self.0.clone();
        v.resize(m, 0);
        Ok(v)
    }

    /// Multiplicity of each part size: `mult[j]` counts parts equal to `j`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut mult = vec![0; self.part(0) + 1];
        for &p in &self.0 {
            mult[p] += 1;
        }
        mult
    }

    /// True when every positive part is equal (including the empty partition).
    pub fn has_equal_parts(&self, m: usize) -> bool {
        (0..m).all(|i| self.part(i) == self.part(0))
    }
}

impl fmt::Display for Partition {
    /// Comma-separated parts; the empty partition prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for p in &self.0 {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::BadPartition(s.to_string(), e.to_string()))?;
        Partition::new(parts).map_err(|_| {
            Error::BadPartition(s.to_string(), "parts must be weakly decreasing".into())
        })
    }
}

impl serde::Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// All partitions of `k` with at most `max_parts` parts, in descending
/// lexicographic order. `enumerate(0, _)` is `[()]`.
pub fn enumerate(k: usize, max_parts: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(k, k, max_parts, &mut current, &mut out);
    out
}

fn fill(
    remaining: usize,
    largest: usize,
    slots: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition(current.clone()));
        return;
    }
    if slots == 0 {
        return;
    }
    for p in (1..=largest.min(remaining)).rev() {
        current.push(p);
        fill(remaining - p, p, slots - 1, current, out);
        current.pop();
    }
}

/// Dominance order: `true` iff every prefix sum of `mu` is at least the
/// corresponding prefix sum of `lambda` (i.e. `lambda <= mu`).
pub fn dominates(mu: &Partition, lambda: &Partition) -> Result<bool> {
    if mu.weight() != lambda.weight() {
        return Err(Error::UnequalWeight(mu.weight(), lambda.weight()));
    }
    let n = mu.len().max(lambda.len());
    let (mut sm, mut sl) = (0, 0);
    for i in 0..n {
        sm += mu.part(i);
        sl += lambda.part(i);
        if sm < sl {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The transpose of the Young diagram.
pub fn conjugate(lambda: &Partition) -> Partition {
    let parts = (1..=lambda.part(0))
        .map(|j| lambda.0.iter().take_while(|&&p| p >= j).count())
        .collect();
    Partition(parts)
}

/// `κ* = (n - k_m, ..., n - k_1)` with `κ` zero-padded to `m` parts.
pub fn kappa_star(kappa: &Partition, n: usize, m: usize) -> Result<Partition> {
    if n < kappa.part(0) {
        return Err(Error::Domain(format!(
            "kappa_star requires n >= k_1 (n = {n}, k_1 = {})",
            kappa.part(0)
        )));
    }
    let padded = kappa.padded(m)?;
    Partition::new(padded.iter().rev().map(|&k| n - k).collect::<Vec<_>>())
}

/// `ρ_κ = Σ_i k_i (k_i - i)` over `m` zero-padded parts.
pub fn rho(kappa: &Partition, m: usize) -> i64 {
    kappa
        .parts()
        .iter()
        .take(m)
        .enumerate()
        .map(|(i, &k)| k as i64 * (k as i64 - (i as i64 + 1)))
        .sum()
}
