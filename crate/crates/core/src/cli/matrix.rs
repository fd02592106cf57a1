use std::path::Path;

use crate::error::{domain, Error, Result};
use crate::linalg::{SpdMatrix, SymMatrix};
use crate::randmat::{random_spd, RngStream};

/// Condition-number cap for `random` matrices.
pub const RANDOM_CONDITION_CAP: f64 = 10.0;

/// Stream offset for matrices drawn from `--seed`; Monte Carlo chunks use the
/// low stream indices, so the two never overlap.
const MATRIX_STREAM_BASE: u64 = 1 << 62;

/// A matrix given on the command line: `identity`, `diag:a,b,…`, `random`, or
/// a path to a `{"m": .., "data": [[..]]}` file.
#[derive(Clone, Debug, PartialEq)]
pub enum MatrixSpec {
    Identity,
    Diag(Vec<f64>),
    Random,
    File(String),
}

impl std::str::FromStr for MatrixSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "identity" {
            return Ok(MatrixSpec::Identity);
        }
        if s == "random" {
            return Ok(MatrixSpec::Random);
        }
        if let Some(rest) = s.strip_prefix("diag:") {
            return Ok(MatrixSpec::Diag(parse_list(rest)?));
        }
        if s.is_empty() {
            return Err(Error::BadMatrix("empty matrix specifier".into()));
        }
        Ok(MatrixSpec::File(s.to_string()))
    }
}

impl MatrixSpec {
    /// Materialises the matrix. `slot` distinguishes several random matrices
    /// drawn from the same seed.
    pub fn symmetric(&self, m: usize, seed: u64, slot: u64) -> Result<SymMatrix> {
        let out = match self {
            MatrixSpec::Identity => SymMatrix::identity(m),
            MatrixSpec::Diag(d) => SymMatrix::diag(d),
            MatrixSpec::Random => {
                let mut rng = RngStream::new(seed, MATRIX_STREAM_BASE + slot);
                random_spd(&mut rng, m, RANDOM_CONDITION_CAP)?.as_sym().clone()
            }
            MatrixSpec::File(path) => {
                let text = std::fs::read_to_string(Path::new(path))
                    .map_err(|e| Error::Io(format!("{path}: {e}")))?;
                SymMatrix::from_json(&text)?
            }
        };
        if out.dim() != m {
            return Err(domain(format!(
                "matrix has dimension {} but --m is {m}",
                out.dim()
            )));
        }
        Ok(out)
    }

    pub fn spd(&self, m: usize, seed: u64, slot: u64) -> Result<SpdMatrix> {
        SpdMatrix::new(self.symmetric(m, seed, slot)?)
    }
}

/// Parses `1,2.5,-3` into floats.
pub fn parse_list(s: &str) -> Result<Vec<f64>> {
    let vals = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| Error::BadMatrix(format!("{t:?}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if vals.iter().any(|v| !v.is_finite()) {
        return Err(Error::BadMatrix(format!("non-finite entry in {s:?}")));
    }
    Ok(vals)
}
