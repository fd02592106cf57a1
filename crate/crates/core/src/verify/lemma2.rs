//! Highest-weight coefficient of `C_κ(Y⁻¹·diag(z))` as a polynomial in `z`.
//!
//! `F(z) = C_κ(Y⁻¹ diag(z))` is a polynomial of total degree `k`, so it is
//! recovered exactly (up to rounding) from its values on the integer grid
//! `{0, …, g−1}^m`. The coefficient of `z_1^{k_m} ⋯ z_m^{k_1}` is compared with
//! `d_κ ∏_j |Y_{[j]}|^{−e_j}`, `e_j = k_{m+1−j} − k_{m−j}` (`k_0 = 0`), where
//! `|Y_{[j]}|` is the `j`-th leading principal minor. The non-reversed
//! monomial `z_1^{k_1} ⋯ z_m^{k_m}` serves as a negative control.

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::linalg::{diag_product_eigs, leading_principal_minor, SpdMatrix};
use crate::partitions::Partition;
use crate::symfun::to_f64;
use crate::zonal::{d_kappa, ZonalTable};

/// Relative agreement required between extracted and predicted coefficients.
pub const LEMMA2_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ControlStatus {
    /// The non-reversed coefficient differs from the minor product.
    Mismatch,
    /// The non-reversed coefficient agrees with the minor product.
    Match,
    /// Equal parts: both monomials coincide, nothing to control.
    Degenerate,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoeffReport {
    pub m: usize,
    pub kappa: String,
    pub y: Vec<Vec<f64>>,
    pub grid_size: usize,
    /// Exponents of `z_1^{k_m} ⋯ z_m^{k_1}`.
    pub target_exponents: Vec<usize>,
    pub extracted: f64,
    pub predicted: f64,
    pub rel_error: f64,
    /// Exponents of `z_1^{k_1} ⋯ z_m^{k_m}`.
    pub control_exponents: Vec<usize>,
    pub control_coefficient: f64,
    pub control_rel_diff: f64,
    pub control: ControlStatus,
    pub tolerance: f64,
    pub pass: bool,
}

impl CoeffReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

fn rel(x: f64, predicted: f64) -> f64 {
    (x - predicted).abs() / predicted.abs().max(1e-300)
}

/// Monomial coefficients of the polynomial through `(j, ys[j])`, `j = 0..n`,
/// via Newton divided differences on the integer nodes.
fn interpolate_integer_nodes(ys: &[f64]) -> Vec<f64> {
    let n = ys.len();
    let mut c = ys.to_vec();
    for level in 1..n {
        for j in (level..n).rev() {
            c[j] = (c[j] - c[j - 1]) / level as f64;
        }
    }
    // Expand c_0 + x(c_1 + (x−1)(c_2 + …)) from the inside out.
    let mut poly = vec![0.0; n];
    poly[0] = c[n - 1];
    for j in (0..n - 1).rev() {
        // poly ← poly·(x − j) + c_j
        for d in (1..n).rev() {
            poly[d] = poly[d - 1] - j as f64 * poly[d];
        }
        poly[0] = c[j] - j as f64 * poly[0];
    }
    poly
}

/// Converts values on `{0..g−1}^m` (row-major) to monomial coefficients in
/// place, one axis at a time.
fn tensor_interpolate(values: &mut [f64], g: usize, m: usize) {
    let mut stride = 1;
    for _ in 0..m {
        let block = stride * g;
        for start in (0..values.len()).step_by(block) {
            for offset in 0..stride {
                let base = start + offset;
                let fiber: Vec<f64> = (0..g).map(|i| values[base + i * stride]).collect();
                for (i, c) in interpolate_integer_nodes(&fiber).into_iter().enumerate() {
                    values[base + i * stride] = c;
                }
            }
        }
        stride = block;
    }
}

/// Row-major flat index of an exponent vector (last variable fastest).
fn flat_index(exps: &[usize], g: usize) -> usize {
    exps.iter().fold(0, |acc, &e| acc * g + e)
}

/// Extracts the highest-weight coefficient of `C_κ(Y⁻¹ diag(z))` and checks it
/// against the leading-minor product.
pub fn verify_lemma2(
    table: &ZonalTable,
    kappa: &Partition,
    y: &SpdMatrix,
    grid_size: usize,
) -> Result<CoeffReport> {
    let m = y.dim();
    let parts = kappa.padded(m)?;
    let k = kappa.weight();
    if k > table.max_degree() {
        return Err(Error::MissingPartition(kappa.to_string(), table.max_degree()));
    }
    if grid_size < k + 1 {
        return Err(domain(format!(
            "requires grid_size >= k + 1 (grid_size = {grid_size}, k = {k})"
        )));
    }
    let poly = table.compile(kappa, m)?;
    let y_inv = y.inverse();

    let g = grid_size;
    let total = g.checked_pow(m as u32).ok_or_else(|| domain("grid too large"))?;
    let mut values = Vec::with_capacity(total);
    let mut z = vec![0usize; m];
    for _ in 0..total {
        let zf: Vec<f64> = z.iter().map(|&v| v as f64).collect();
        values.push(poly.eval(&diag_product_eigs(&y_inv, &zf)?));
        for d in (0..m).rev() {
            z[d] += 1;
            if z[d] < g {
                break;
            }
            z[d] = 0;
        }
    }
    tensor_interpolate(&mut values, g, m);

    let target: Vec<usize> = parts.iter().rev().copied().collect();
    let control = parts.clone();

    let mut predicted = to_f64(&d_kappa(table, kappa)?);
    for j in 1..=m {
        let upper = parts[m - j] as i64;
        let lower = if j == m { 0 } else { parts[m - j - 1] as i64 };
        let e = upper - lower;
        if e != 0 {
            predicted *= leading_principal_minor(y.as_sym(), j)?.powi(-e as i32);
        }
    }

    let extracted = values[flat_index(&target, g)];
    let rel_error = rel(extracted, predicted);
    let control_coefficient = values[flat_index(&control, g)];
    let control_rel_diff = rel(control_coefficient, predicted);
    let status = if kappa.has_equal_parts(m) {
        ControlStatus::Degenerate
    } else if control_rel_diff > LEMMA2_TOLERANCE {
        ControlStatus::Mismatch
    } else {
        ControlStatus::Match
    };

    Ok(CoeffReport {
        m,
        kappa: parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","),
        y: y.as_sym().rows(),
        grid_size,
        target_exponents: target,
        extracted,
        predicted,
        rel_error,
        control_exponents: control,
        control_coefficient,
        control_rel_diff,
        control: status,
        tolerance: LEMMA2_TOLERANCE,
        pass: rel_error <= LEMMA2_TOLERANCE && status != ControlStatus::Match,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::SymMatrix;
    use crate::zonal::build_table;

    fn y2() -> SpdMatrix {
        SpdMatrix::new(SymMatrix::from_rows(&[vec![2.0, 0.5], vec![0.5, 1.0]]).unwrap()).unwrap()
    }

    #[test]
    fn newton_interpolation_recovers_coefficients() {
        let f = |x: f64| 3.0 - 2.0 * x + 0.5 * x * x * x;
        let ys: Vec<f64> = (0..5).map(|i| f(i as f64)).collect();
        let c = interpolate_integer_nodes(&ys);
        for (got, want) in c.iter().zip([3.0, -2.0, 0.0, 0.5, 0.0]) {
            assert!((got - want).abs() < 1e-12, "{c:?}");
        }
    }

    #[test]
    fn tensor_interpolation_in_two_variables() {
        // f = 1 + 2x + 3y² + 4xy
        let g = 3;
        let mut vals = Vec::new();
        for x in 0..g {
            for y in 0..g {
                let (x, y) = (x as f64, y as f64);
                vals.push(1.0 + 2.0 * x + 3.0 * y * y + 4.0 * x * y);
            }
        }
        tensor_interpolate(&mut vals, g, 2);
        let want = [1.0, 0.0, 3.0, 2.0, 4.0, 0.0, 0.0, 0.0, 0.0];
        for (got, w) in vals.iter().zip(want) {
            assert!((got - w).abs() < 1e-12, "{vals:?}");
        }
    }

    #[test]
    fn linear_case_by_hand() {
        let table = build_table(3).unwrap();
        let y = y2();
        let det = 2.0 - 0.25;
        let r = verify_lemma2(&table, &"1".parse().unwrap(), &y, 3).unwrap();
        assert_eq!(r.target_exponents, vec![0, 1]);
        assert!((r.extracted - 2.0 / det).abs() < 1e-12);
        assert!((r.predicted - 2.0 / det).abs() < 1e-12);
        assert!((r.control_coefficient - 1.0 / det).abs() < 1e-12);
        assert_eq!(r.control, ControlStatus::Mismatch);
        assert!(r.pass);
    }

    #[test]
    fn quadratic_case_by_hand() {
        let table = build_table(3).unwrap();
        let y = y2();
        let det: f64 = 1.75;
        let r = verify_lemma2(&table, &"2".parse().unwrap(), &y, 3).unwrap();
        assert!((r.extracted - (2.0 / det).powi(2)).abs() < 1e-10);
        assert!(r.rel_error < 1e-10);
        assert!(r.pass);
    }

    #[test]
    fn equal_parts_are_degenerate() {
        let table = build_table(4).unwrap();
        let r = verify_lemma2(&table, &"2,2".parse().unwrap(), &y2(), 5).unwrap();
        assert_eq!(r.control, ControlStatus::Degenerate);
        assert_eq!(r.target_exponents, r.control_exponents);
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn preconditions() {
        let table = build_table(3).unwrap();
        assert!(verify_lemma2(&table, &"2".parse().unwrap(), &y2(), 2).is_err());
        assert!(verify_lemma2(&table, &"1,1,1".parse().unwrap(), &y2(), 4).is_err());
    }
}
