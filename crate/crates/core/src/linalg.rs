//! Small dense real matrices: symmetric eigenvalues by cyclic Jacobi
//! rotations, upper Cholesky `A = T'T`, inverse, determinant, leading
//! principal minors, `tr_j` and eigenvalues of products `V·T`.
//!
//! Dimensions are expected to be small (`m ≤ 8`); everything is `O(m³)` on
//! row-major `Vec<f64>` storage.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const SYMMETRY_TOL: f64 = 1e-12;

/// A real symmetric `m × m` matrix, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    m: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    /// Validates symmetry (`|a_ij − a_ji| ≤ 1e-12·max(1, |a_ij|)`) and stores
    /// the symmetrised `(A + A')/2`.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let m = rows.len();
        if m == 0 {
            return Err(Error::BadMatrix("empty matrix".into()));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != m) {
            return Err(Error::DimensionMismatch(r.len(), m));
        }
        if rows.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::BadMatrix("non-finite entry".into()));
        }
        let mut data = vec![0.0; m * m];
        for i in 0..m {
            for j in 0..m {
                let (a, b) = (rows[i][j], rows[j][i]);
                if (a - b).abs() > SYMMETRY_TOL * a.abs().max(1.0) {
                    return Err(Error::NotSymmetric(i, j, (a - b).abs()));
                }
                data[i * m + j] = 0.5 * (a + b);
            }
        }
        Ok(SymMatrix { m, data })
    }

    /// Symmetrises an arbitrary square row-major buffer without validation.
    pub(crate) fn symmetrize(m: usize, data: &[f64]) -> Self {
        let mut out = vec![0.0; m * m];
        for i in 0..m {
            for j in 0..m {
                out[i * m + j] = 0.5 * (data[i * m + j] + data[j * m + i]);
            }
        }
        SymMatrix { m, data: out }
    }

    pub fn identity(m: usize) -> Self {
        Self::diag(&vec![1.0; m])
    }

    pub fn diag(d: &[f64]) -> Self {
        let m = d.len();
        let mut data = vec![0.0; m * m];
        for (i, &x) in d.iter().enumerate() {
            data[i * m + i] = x;
        }
        SymMatrix { m, data }
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.m + j]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.m).map(<[f64]>::to_vec).collect()
    }

    pub fn scaled(&self, c: f64) -> Self {
        SymMatrix {
            m: self.m,
            data: self.data.iter().map(|x| c * x).collect(),
        }
    }

    pub fn trace(&self) -> f64 {
        (0..self.m).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |a, x| a.max(x.abs()))
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        sym_eigs(self)
    }

    /// Parses the matrix file format `{"m": 2, "data": [[..], [..]]}`.
    pub fn from_json(s: &str) -> Result<Self> {
        let file: MatrixFile =
            serde_json::from_str(s).map_err(|e| Error::BadMatrix(e.to_string()))?;
        if file.data.len() != file.m {
            return Err(Error::DimensionMismatch(file.data.len(), file.m));
        }
        Self::from_rows(&file.data)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&MatrixFile {
            m: self.m,
            data: self.rows(),
        })
        .expect("matrix serialises")
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    m: usize,
    data: Vec<Vec<f64>>,
}

/// A symmetric positive definite matrix together with its upper Cholesky
/// factor `T` (`A = T'T`, `t_ii > 0`).
#[derive(Clone, Debug, PartialEq)]
pub struct SpdMatrix {
    sym: SymMatrix,
    chol: Vec<f64>,
}

impl SpdMatrix {
    pub fn new(a: SymMatrix) -> Result<Self> {
        cholesky(&a)
    }

    pub fn identity(m: usize) -> Self {
        SpdMatrix {
            sym: SymMatrix::identity(m),
            chol: SymMatrix::identity(m).data,
        }
    }

    pub fn dim(&self) -> usize {
        self.sym.m
    }

    pub fn as_sym(&self) -> &SymMatrix {
        &self.sym
    }

    /// `t_ij` of the upper-triangular factor.
    pub fn factor(&self, i: usize, j: usize) -> f64 {
        self.chol[i * self.sym.m + j]
    }

    /// `det A = ∏ t_ii²`.
    pub fn determinant(&self) -> f64 {
        (0..self.dim()).map(|i| self.factor(i, i).powi(2)).product()
    }

    /// `A⁻¹ = T⁻¹ T⁻ᵀ`.
    pub fn inverse(&self) -> SymMatrix {
        let m = self.dim();
        // U = T⁻¹, upper triangular.
        let mut u = vec![0.0; m * m];
        for j in 0..m {
            u[j * m + j] = 1.0 / self.factor(j, j);
            for i in (0..j).rev() {
                let s: f64 = ((i + 1)..=j).map(|k| self.factor(i, k) * u[k * m + j]).sum();
                u[i * m + j] = -s / self.factor(i, i);
            }
        }
        let mut inv = vec![0.0; m * m];
        for i in 0..m {
            for j in i..m {
                let s: f64 = (j..m).map(|k| u[i * m + k] * u[j * m + k]).sum();
                inv[i * m + j] = s;
                inv[j * m + i] = s;
            }
        }
        SymMatrix { m, data: inv }
    }

    pub fn inverse_spd(&self) -> Result<SpdMatrix> {
        SpdMatrix::new(self.inverse())
    }

    /// Symmetric square root from the eigendecomposition.
    pub fn sqrt(&self) -> SymMatrix {
        let (vals, vecs) = sym_eigen(&self.sym);
        let m = self.dim();
        let mut out = vec![0.0; m * m];
        for i in 0..m {
            for j in 0..m {
                out[i * m + j] = (0..m)
                    .map(|k| vecs[i * m + k] * vals[k].max(0.0).sqrt() * vecs[j * m + k])
                    .sum();
            }
        }
        SymMatrix::symmetrize(m, &out)
    }
}

/// Upper Cholesky factorisation `A = T'T`.
pub fn cholesky(a: &SymMatrix) -> Result<SpdMatrix> {
    let m = a.m;
    let floor = 1e-12 * (a.trace() / m as f64).abs();
    let mut t = vec![0.0f64; m * m];
    for j in 0..m {
        let pivot = a.get(j, j) - (0..j).map(|k| t[k * m + j].powi(2)).sum::<f64>();
        if !(pivot > floor) || pivot <= 0.0 {
            return Err(Error::NotPositiveDefinite(j, pivot));
        }
        let tjj = pivot.sqrt();
        t[j * m + j] = tjj;
        for i in (j + 1)..m {
            let s: f64 = (0..j).map(|k| t[k * m + j] * t[k * m + i]).sum();
            t[j * m + i] = (a.get(j, i) - s) / tjj;
        }
    }
    Ok(SpdMatrix {
        sym: a.clone(),
        chol: t,
    })
}

/// Eigenvalues and eigenvectors (columns of a row-major matrix), eigenvalues
/// descending.
pub fn sym_eigen(a: &SymMatrix) -> (Vec<f64>, Vec<f64>) {
    let m = a.m;
    let mut w = a.data.clone();
    let mut v = SymMatrix::identity(m).data;
    let frob = w.iter().map(|x| x * x).sum::<f64>().sqrt();
    let target = 1e-14 * frob;
    for _sweep in 0..100 {
        let off: f64 = (0..m)
            .flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| w[i * m + j].powi(2))
            .sum::<f64>()
            .sqrt();
        if off <= target {
            break;
        }
        for p in 0..m {
            for q in (p + 1)..m {
                let apq = w[p * m + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (w[q * m + q] - w[p * m + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..m {
                    let (wkp, wkq) = (w[k * m + p], w[k * m + q]);
                    w[k * m + p] = c * wkp - s * wkq;
                    w[k * m + q] = s * wkp + c * wkq;
                }
                for k in 0..m {
                    let (wpk, wqk) = (w[p * m + k], w[q * m + k]);
                    w[p * m + k] = c * wpk - s * wqk;
                    w[q * m + k] = s * wpk + c * wqk;
                }
                for k in 0..m {
                    let (vkp, vkq) = (v[k * m + p], v[k * m + q]);
                    v[k * m + p] = c * vkp - s * vkq;
                    v[k * m + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| w[j * m + j].total_cmp(&w[i * m + i]));
    let vals = order.iter().map(|&i| w[i * m + i]).collect();
    let mut vecs = vec![0.0; m * m];
    for (new, &old) in order.iter().enumerate() {
        for k in 0..m {
            vecs[k * m + new] = v[k * m + old];
        }
    }
    (vals, vecs)
}

/// Eigenvalues of a symmetric matrix, descending.
pub fn sym_eigs(a: &SymMatrix) -> Vec<f64> {
    sym_eigen(a).0
}

/// Elementary symmetric functions `e_0..=e_m` of a list of values.
pub fn elementary_symmetric_of(values: &[f64]) -> Vec<f64> {
    let mut e = vec![0.0; values.len() + 1];
    e[0] = 1.0;
    for (n, &x) in values.iter().enumerate() {
        for j in (1..=n + 1).rev() {
            e[j] += x * e[j - 1];
        }
    }
    e
}

/// `tr_j(A)`: the `j`-th elementary symmetric function of the eigenvalues.
pub fn elementary_symmetric(a: &SymMatrix, j: usize) -> Result<f64> {
    if j == 0 || j > a.m {
        return Err(Error::Domain(format!("tr_j requires 1 <= j <= m (j = {j}, m = {})", a.m)));
    }
    Ok(elementary_symmetric_of(&sym_eigs(a))[j])
}

/// Determinant of a general square row-major matrix by partial pivoting.
pub fn general_determinant(m: usize, data: &[f64]) -> f64 {
    let mut a = data.to_vec();
    let mut det = 1.0;
    for c in 0..m {
        let piv = (c..m)
            .max_by(|&i, &j| a[i * m + c].abs().total_cmp(&a[j * m + c].abs()))
            .unwrap_or(c);
        if a[piv * m + c] == 0.0 {
            return 0.0;
        }
        if piv != c {
            for k in 0..m {
                a.swap(c * m + k, piv * m + k);
            }
            det = -det;
        }
        det *= a[c * m + c];
        for r in (c + 1)..m {
            let f = a[r * m + c] / a[c * m + c];
            for k in c..m {
                a[r * m + k] -= f * a[c * m + k];
            }
        }
    }
    det
}

/// Determinant of the top-left `j × j` block.
pub fn leading_principal_minor(a: &SymMatrix, j: usize) -> Result<f64> {
    if j == 0 || j > a.m {
        return Err(Error::Domain(format!(
            "leading minor requires 1 <= j <= m (j = {j}, m = {})",
            a.m
        )));
    }
    let block: Vec<f64> = (0..j)
        .flat_map(|r| (0..j).map(move |c| (r, c)))
        .map(|(r, c)| a.get(r, c))
        .collect();
    Ok(general_determinant(j, &block))
}

fn matmul(m: usize, a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; m * m];
    for i in 0..m {
        for k in 0..m {
            let aik = a[i * m + k];
            for j in 0..m {
                out[i * m + j] += aik * b[k * m + j];
            }
        }
    }
    out
}

/// Eigenvalues of `V·T` (descending), from the symmetric similar matrix
/// `V^{1/2} T V^{1/2}`. When `T` is exactly the identity these are the
/// eigenvalues of `V` itself.
pub fn product_eigs(v: &SpdMatrix, t: &SymMatrix) -> Result<Vec<f64>> {
    let m = v.dim();
    if t.m != m {
        return Err(Error::DimensionMismatch(m, t.m));
    }
    if *t == SymMatrix::identity(m) {
        return Ok(sym_eigs(v.as_sym()));
    }
    let root = v.sqrt();
    let s = matmul(m, &matmul(m, &root.data, &t.data), &root.data);
    Ok(sym_eigs(&SymMatrix::symmetrize(m, &s)))
}

/// Eigenvalues of `diag(√z) A diag(√z)` for `z ≥ 0`, i.e. of `A·diag(z)`.
pub fn diag_product_eigs(a: &SymMatrix, z: &[f64]) -> Result<Vec<f64>> {
    let m = a.m;
    if z.len() != m {
        return Err(Error::DimensionMismatch(m, z.len()));
    }
    if z.iter().any(|&x| x < 0.0) {
        return Err(Error::Domain("diagonal weights must be non-negative".into()));
    }
    let r: Vec<f64> = z.iter().map(|x| x.sqrt()).collect();
    let mut s = vec![0.0; m * m];
    for i in 0..m {
        for j in 0..m {
            s[i * m + j] = r[i] * a.get(i, j) * r[j];
        }
    }
    Ok(sym_eigs(&SymMatrix::symmetrize(m, &s)))
}

/// `A⁻¹` for positive definite `A`.
pub fn inverse(a: &SpdMatrix) -> SymMatrix {
    a.inverse()
}

/// `det A` for positive definite `A`.
pub fn determinant(a: &SpdMatrix) -> f64 {
    a.determinant()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn random_sym(rng: &mut impl Rng, m: usize) -> SymMatrix {
        let raw: Vec<f64> = (0..m * m).map(|_| rng.gen_range(-2.0..2.0)).collect();
        SymMatrix::symmetrize(m, &raw)
    }

    fn random_spd(rng: &mut impl Rng, m: usize) -> SpdMatrix {
        let raw: Vec<f64> = (0..m * m).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mut g = vec![0.0; m * m];
        for i in 0..m {
            for j in 0..m {
                g[i * m + j] = (0..m).map(|k| raw[k * m + i] * raw[k * m + j]).sum::<f64>()
                    + if i == j { 0.5 } else { 0.0 };
            }
        }
        SpdMatrix::new(SymMatrix::symmetrize(m, &g)).unwrap()
    }

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300)
    }

    #[test]
    fn cholesky_examples() {
        let i3 = cholesky(&SymMatrix::identity(3)).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(i3.factor(i, j), if i == j { 1.0 } else { 0.0 });
            }
        }
        let a = SymMatrix::from_rows(&[vec![4.0, 2.0], vec![2.0, 5.0]]).unwrap();
        let c = cholesky(&a).unwrap();
        assert_eq!((c.factor(0, 0), c.factor(0, 1), c.factor(1, 1)), (2.0, 1.0, 2.0));
        assert_eq!(c.factor(1, 0), 0.0);
        assert_eq!(c.determinant(), 16.0);
        let bad = SymMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap();
        assert!(matches!(cholesky(&bad), Err(Error::NotPositiveDefinite(1, _))));
    }

    #[test]
    fn cholesky_round_trip() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for m in 1..=6 {
            let a = random_spd(&mut rng, m);
            let mut err = 0.0f64;
            for i in 0..m {
                for j in 0..m {
                    let s: f64 = (0..m).map(|k| a.factor(k, i) * a.factor(k, j)).sum();
                    err = err.max((s - a.as_sym().get(i, j)).abs());
                }
            }
            assert!(err <= 1e-12 * a.as_sym().max_abs());
            assert!(sym_eigs(a.as_sym()).iter().all(|&x| x >= 0.0));
        }
    }

    #[test]
    fn eigen_examples() {
        assert_eq!(sym_eigs(&SymMatrix::diag(&[3.0, 1.0, 2.0])), vec![3.0, 2.0, 1.0]);
        let e = sym_eigs(&SymMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap());
        assert!(close(e[0], 1.0, 1e-15) && close(e[1], -1.0, 1e-15));
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for m in 1..=6 {
            for _ in 0..10 {
                let a = random_sym(&mut rng, m);
                let e = sym_eigs(&a);
                assert!(e.windows(2).all(|w| w[0] >= w[1]));
                assert!((e.iter().sum::<f64>() - a.trace()).abs() <= 1e-10 * a.max_abs() * m as f64);
                let det = general_determinant(m, a.data());
                assert!(close(e.iter().product::<f64>(), det, 1e-10) || det.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn elementary_symmetric_examples() {
        let d = SymMatrix::diag(&[1.0, 2.0, 3.0]);
        let tr: Vec<f64> = (1..=3).map(|j| elementary_symmetric(&d, j).unwrap()).collect();
        assert!(close(tr[0], 6.0, 1e-14) && close(tr[1], 11.0, 1e-14) && close(tr[2], 6.0, 1e-14));
        assert!(elementary_symmetric(&d, 0).is_err());
        assert!(elementary_symmetric(&d, 4).is_err());
    }

    /// Brute-force sum of all j×j principal minors.
    fn principal_minor_sum(a: &SymMatrix, j: usize) -> f64 {
        let m = a.dim();
        (0u32..(1 << m))
            .filter(|s| s.count_ones() as usize == j)
            .map(|s| {
                let idx: Vec<usize> = (0..m).filter(|i| s >> i & 1 == 1).collect();
                let block: Vec<f64> = idx
                    .iter()
                    .flat_map(|&r| idx.iter().map(move |&c| (r, c)))
                    .map(|(r, c)| a.get(r, c))
                    .collect();
                general_determinant(j, &block)
            })
            .sum()
    }

    #[test]
    fn elementary_symmetric_matches_principal_minors() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        for m in 1..=4 {
            for _ in 0..20 {
                let a = random_sym(&mut rng, m);
                for j in 1..=m {
                    let lhs = elementary_symmetric(&a, j).unwrap();
                    let rhs = principal_minor_sum(&a, j);
                    assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + rhs.abs()), "m={m} j={j}");
                }
                assert!(close(elementary_symmetric(&a, 1).unwrap(), a.trace(), 1e-12) || a.trace().abs() < 1e-12);
            }
        }
    }

    #[test]
    fn leading_minor_examples() {
        let a = SymMatrix::from_rows(&[vec![4.0, 2.0], vec![2.0, 5.0]]).unwrap();
        assert_eq!(leading_principal_minor(&a, 1).unwrap(), 4.0);
        assert_eq!(leading_principal_minor(&a, 2).unwrap(), 16.0);
        for j in 1..=4 {
            assert_eq!(leading_principal_minor(&SymMatrix::identity(4), j).unwrap(), 1.0);
        }
    }

    #[test]
    fn inverse_examples() {
        let i = SpdMatrix::identity(3);
        assert_eq!(i.inverse(), SymMatrix::identity(3));
        let d = SpdMatrix::new(SymMatrix::diag(&[2.0, 5.0])).unwrap();
        let di = d.inverse();
        for (got, want) in di.data().iter().zip(SymMatrix::diag(&[0.5, 0.2]).data()) {
            assert!((got - want).abs() <= 1e-15);
        }
        let mut rng = rand::rngs::StdRng::seed_from_u64(9);
        for m in 1..=6 {
            let a = random_spd(&mut rng, m);
            let prod = matmul(m, a.as_sym().data(), a.inverse().data());
            for r in 0..m {
                for c in 0..m {
                    let expect = if r == c { 1.0 } else { 0.0 };
                    assert!((prod[r * m + c] - expect).abs() <= 1e-10);
                }
            }
            assert!(close(a.determinant(), general_determinant(m, a.as_sym().data()), 1e-12));
        }
    }

    #[test]
    fn product_eig_examples() {
        let t = SymMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, -1.0]]).unwrap();
        let e = product_eigs(&SpdMatrix::identity(2), &t).unwrap();
        let et = sym_eigs(&t);
        assert!(close(e[0], et[0], 1e-14) && close(e[1], et[1], 1e-14));
        let v = SpdMatrix::new(SymMatrix::diag(&[4.0, 1.0])).unwrap();
        let e = product_eigs(&v, &SymMatrix::diag(&[1.0, -2.0])).unwrap();
        assert!(close(e[0], 4.0, 1e-14) && close(e[1], -2.0, 1e-14));
        assert!(product_eigs(&v, &SymMatrix::identity(3)).is_err());
    }

    /// Real roots of the characteristic polynomial of a general matrix,
    /// found by Faddeev–LeVerrier coefficients, grid scan and bisection.
    fn char_poly_roots(m: usize, a: &[f64]) -> Vec<f64> {
        let mut coeffs = vec![1.0];
        let mut mk = vec![0.0; m * m];
        for k in 1..=m {
            let prev_c = *coeffs.last().unwrap();
            let mut next = matmul(m, a, &mk);
            for i in 0..m {
                next[i * m + i] += prev_c;
            }
            mk = next;
            let am = matmul(m, a, &mk);
            let tr: f64 = (0..m).map(|i| am[i * m + i]).sum();
            coeffs.push(-tr / k as f64);
        }
        let eval = |x: f64| coeffs.iter().fold(0.0, |acc, c| acc * x + c);
        let bound = 1.0 + coeffs[1..].iter().fold(0.0f64, |a, c| a.max(c.abs()));
        let steps = 200_000;
        let h = 2.0 * bound / steps as f64;
        let mut roots = Vec::new();
        let mut x0 = -bound;
        let mut f0 = eval(x0);
        for s in 1..=steps {
            let x1 = -bound + s as f64 * h;
            let f1 = eval(x1);
            if f0 == 0.0 {
                roots.push(x0);
            } else if f0 * f1 < 0.0 {
                let (mut lo, mut hi) = (x0, x1);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if eval(lo) * eval(mid) <= 0.0 {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                roots.push(0.5 * (lo + hi));
            }
            x0 = x1;
            f0 = f1;
        }
        roots.sort_by(|a, b| b.total_cmp(a));
        roots
    }

    #[test]
    fn product_eigs_match_characteristic_roots() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(21);
        for m in 1..=3 {
            for _ in 0..20 {
                let v = random_spd(&mut rng, m);
                let t = random_sym(&mut rng, m);
                let got = product_eigs(&v, &t).unwrap();
                let vt = matmul(m, v.as_sym().data(), t.data());
                let want = char_poly_roots(m, &vt);
                assert_eq!(got.len(), want.len(), "m={m}");
                for (g, w) in got.iter().zip(&want) {
                    assert!((g - w).abs() <= 1e-8 * (1.0 + w.abs()), "{got:?} vs {want:?}");
                }
                let det_prod = v.determinant() * general_determinant(m, t.data());
                assert!((got.iter().product::<f64>() - det_prod).abs() <= 1e-10 * (1.0 + det_prod.abs()));
            }
        }
    }

    #[test]
    fn json_format() {
        let a = SymMatrix::from_json(r#"{"m": 2, "data": [[2, 1], [1, 3]]}"#).unwrap();
        assert_eq!(a.get(0, 1), 1.0);
        assert_eq!(SymMatrix::from_json(&a.to_json()).unwrap(), a);
        assert!(matches!(
            SymMatrix::from_json(r#"{"m": 2, "data": [[2, 1], [1.5, 3]]}"#),
            Err(Error::NotSymmetric(0, 1, _))
        ));
        assert!(SymMatrix::from_json(r#"{"m": 3, "data": [[2, 1], [1, 3]]}"#).is_err());
        // within tolerance: accepted and symmetrised
        let b = SymMatrix::from_rows(&[vec![1.0, 0.5], vec![0.5 + 1e-14, 1.0]]).unwrap();
        assert_eq!(b.get(0, 1), b.get(1, 0));
    }
}
