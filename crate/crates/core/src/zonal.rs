//! Zonal polynomial tables.
//!
//! For each degree `k` the monomial symmetric functions are orthogonalised
//! under the `α = 2` inner product in increasing lexicographic order, giving
//! monic `J_κ = m_κ + (lower terms)`. Expanding `p_1^k = Σ e_κ J_κ` by a
//! triangular solve and setting `C_κ = e_κ J_κ` fixes the normalisation
//! `Σ_{|κ|=k} C_κ(Y) = (tr Y)^k`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{SpdMatrix, SymMatrix};
use crate::partitions::{self, enumerate, kappa_star, Partition};
use crate::symfun::{monomial_exponents, to_f64, DegreeBasis, ExactRational, SymPoly};

/// Exact coefficients of every `C_κ` with `|κ| ≤ K` in the monomial basis.
#[derive(Clone, Debug)]
pub struct ZonalTable {
    max_degree: usize,
    polys: BTreeMap<Partition, SymPoly>,
    float_coeffs: BTreeMap<Partition, Vec<(Partition, f64)>>,
}

/// Builds the table for all partitions of weight at most `max_degree`.
/// `C_()` is the constant 1.
pub fn build_table(max_degree: usize) -> Result<ZonalTable> {
    let mut polys = BTreeMap::new();
    polys.insert(
        Partition::empty(),
        SymPoly::from_terms(0, [(Partition::empty(), ExactRational::one())])?,
    );
    for k in 1..=max_degree {
        for (kappa, poly) in build_degree(k)? {
            polys.insert(kappa, poly);
        }
    }
    let float_coeffs = polys
        .iter()
        .map(|(kappa, poly)| {
            let cs = poly.terms().map(|(l, c)| (l.clone(), to_f64(c))).collect();
            (kappa.clone(), cs)
        })
        .collect();
    Ok(ZonalTable {
        max_degree,
        polys,
        float_coeffs,
    })
}

fn build_degree(k: usize) -> Result<Vec<(Partition, SymPoly)>> {
    let basis = DegreeBasis::new(k)?;
    let parts = basis.partitions();
    let n = parts.len();
    let gram = basis.monomial_gram();
    let inner = |u: &[ExactRational], v: &[ExactRational]| -> ExactRational {
        let mut acc = ExactRational::zero();
        for (i, ui) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, vj) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                acc += ui * vj * &gram[i][j];
            }
        }
        acc
    };

    // `parts` is descending, so walk it backwards: each J_κ is orthogonalised
    // against the already-built J_λ with λ lexicographically smaller.
    let mut js: Vec<Vec<ExactRational>> = vec![Vec::new(); n];
    let mut norms: Vec<ExactRational> = vec![ExactRational::zero(); n];
    for i in (0..n).rev() {
        let mut v = vec![ExactRational::zero(); n];
        v[i] = ExactRational::one();
        for j in (i + 1)..n {
            let c = inner(&v, &js[j]) / &norms[j];
            if c.is_zero() {
                continue;
            }
            for (vt, jt) in v.iter_mut().zip(&js[j]) {
                *vt -= &c * jt;
            }
        }
        norms[i] = inner(&v, &v);
        if norms[i].is_zero() {
            return Err(Error::Internal(format!("degenerate Gram-Schmidt step at ({})", parts[i])));
        }
        js[i] = v;
    }

    // p_1^k is the last row of the p->m matrix (partition 1^k).
    let target = &basis.p_to_m()[n - 1];
    let mut e = vec![ExactRational::zero(); n];
    for i in 0..n {
        let mut r = target[i].clone();
        for j in 0..i {
            r -= &e[j] * &js[j][i];
        }
        e[i] = r / &js[i][i];
    }

    Ok(parts
        .iter()
        .enumerate()
        .map(|(i, kappa)| {
            let scaled: Vec<ExactRational> = js[i].iter().map(|c| c * &e[i]).collect();
            (kappa.clone(), basis.from_dense(&scaled))
        })
        .collect())
}

impl ZonalTable {
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// `C_κ` in the monomial basis.
    pub fn poly(&self, kappa: &Partition) -> Result<&SymPoly> {
        self.polys
            .get(kappa)
            .ok_or_else(|| Error::MissingPartition(kappa.to_string(), self.max_degree))
    }

    /// Exact coefficient of `m_λ` in `C_κ`.
    pub fn coefficient(&self, kappa: &Partition, lambda: &Partition) -> Result<ExactRational> {
        Ok(self.poly(kappa)?.coeff(lambda))
    }

    /// All partitions in the table, grouped by degree, each degree in
    /// descending lexicographic order.
    pub fn partitions_of(&self, k: usize) -> Vec<Partition> {
        if k > self.max_degree {
            return Vec::new();
        }
        enumerate(k, k.max(1))
    }

    /// `C_κ(x_1, ..., x_n)` with exact arithmetic.
    pub fn eval_exact(&self, kappa: &Partition, x: &[ExactRational]) -> Result<ExactRational> {
        Ok(self.poly(kappa)?.eval(x))
    }

    /// A float evaluator for `C_κ` in exactly `n` variables, for hot loops.
    pub fn compile(&self, kappa: &Partition, n: usize) -> Result<CompiledZonal> {
        let cs = self
            .float_coeffs
            .get(kappa)
            .ok_or_else(|| Error::MissingPartition(kappa.to_string(), self.max_degree))?;
        let terms = cs
            .iter()
            .flat_map(|(lambda, c)| {
                monomial_exponents(lambda, n)
                    .into_iter()
                    .map(move |e| (*c, e))
            })
            .collect();
        Ok(CompiledZonal { n, terms })
    }

    /// Writes the table as JSON: degree → list of `{kappa, coeffs}` with
    /// numerators and denominators as decimal strings.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&TableJson(self)).expect("table serialises")
    }

    /// CSV with columns `kappa,lambda,numerator,denominator`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("kappa,lambda,numerator,denominator\n");
        for k in 0..=self.max_degree {
            for kappa in self.partitions_of(k) {
                for (lambda, c) in self.polys[&kappa].terms() {
                    let _ = writeln!(
                        out,
                        "\"{kappa}\",\"{lambda}\",{},{}",
                        c.numer(),
                        c.denom()
                    );
                }
            }
        }
        out
    }
}

struct TableJson<'a>(&'a ZonalTable);

#[derive(Serialize)]
struct EntryJson {
    kappa: Partition,
    coeffs: Vec<CoeffJson>,
}

#[derive(Serialize)]
struct CoeffJson {
    lambda: Partition,
    num: String,
    den: String,
}

impl Serialize for TableJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let table = self.0;
        let mut map = s.serialize_map(Some(table.max_degree + 1))?;
        for k in 0..=table.max_degree {
            let entries: Vec<EntryJson> = table
                .partitions_of(k)
                .into_iter()
                .map(|kappa| EntryJson {
                    coeffs: table.polys[&kappa]
                        .terms()
                        .map(|(lambda, c)| CoeffJson {
                            lambda: lambda.clone(),
                            num: c.numer().to_string(),
                            den: c.denom().to_string(),
                        })
                        .collect(),
                    kappa,
                })
                .collect();
            map.serialize_entry(&k.to_string(), &entries)?;
        }
        map.end()
    }
}

/// `C_κ` flattened to `(coefficient, exponent vector)` pairs for a fixed
/// number of variables.
#[derive(Clone, Debug)]
pub struct CompiledZonal {
    n: usize,
    terms: Vec<(f64, Vec<usize>)>,
}

impl CompiledZonal {
    pub fn num_vars(&self) -> usize {
        self.n
    }

    /// Evaluates with Neumaier-compensated summation over monomial terms.
    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.n);
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for (c, exps) in &self.terms {
            let mut t = *c;
            for (&e, &xi) in exps.iter().zip(x) {
                if e > 0 {
                    t *= xi.powi(e as i32);
                }
            }
            let s = sum + t;
            if sum.abs() >= t.abs() {
                comp += (sum - s) + t;
            } else {
                comp += (t - s) + sum;
            }
            sum = s;
        }
        sum + comp
    }
}

/// `C_κ` at the given eigenvalues. Monomials with more parts than
/// eigenvalues vanish.
pub fn eval_eigs(table: &ZonalTable, kappa: &Partition, eigs: &[f64]) -> Result<f64> {
    Ok(table.compile(kappa, eigs.len())?.eval(eigs))
}

/// `C_κ(A)` for symmetric `A`, via its eigenvalues.
pub fn eval_matrix(table: &ZonalTable, kappa: &Partition, a: &SymMatrix) -> Result<f64> {
    eval_eigs(table, kappa, &a.eigenvalues())
}

/// `C_κ(I_m)`.
pub fn at_identity(table: &ZonalTable, kappa: &Partition, m: usize) -> Result<f64> {
    eval_eigs(table, kappa, &vec![1.0; m])
}

/// `d_κ`, the coefficient of `m_κ` in `C_κ`.
pub fn d_kappa(table: &ZonalTable, kappa: &Partition) -> Result<ExactRational> {
    table.coefficient(kappa, kappa)
}

/// `s_{κ,κ*} = C_κ(I_m) / C_{κ*}(I_m)`.
pub fn s_kappa_kappastar(
    table: &ZonalTable,
    kappa: &Partition,
    n: usize,
    m: usize,
) -> Result<f64> {
    let star = kappa_star(kappa, n, m)?;
    let num = at_identity(table, kappa, m)?;
    let den = at_identity(table, &star, m)?;
    if den == 0.0 {
        return Err(Error::ZeroDenominator(format!("C_({star})(I_{m}) = 0")));
    }
    Ok(num / den)
}

/// `det(A)^n C_κ(A⁻¹)/C_κ(I_m) − C_{κ*}(A)/C_{κ*}(I_m)`, which vanishes for
/// every `n ≥ k_1`.
pub fn dual_identity_residual(
    table: &ZonalTable,
    kappa: &Partition,
    n: usize,
    a: &SpdMatrix,
) -> Result<f64> {
    let (lhs, rhs) = dual_identity_sides(table, kappa, n, a)?;
    Ok(lhs - rhs)
}

/// Both sides of the dual identity, `(lhs, rhs)`.
pub fn dual_identity_sides(
    table: &ZonalTable,
    kappa: &Partition,
    n: usize,
    a: &SpdMatrix,
) -> Result<(f64, f64)> {
    let m = a.dim();
    let star = kappa_star(kappa, n, m)?;
    let inv = a.inverse();
    let lhs = a.determinant().powi(n as i32) * eval_matrix(table, kappa, &inv)?
        / at_identity(table, kappa, m)?;
    let rhs = eval_matrix(table, &star, a.as_sym())? / at_identity(table, &star, m)?;
    Ok((lhs, rhs))
}

/// Sparse multivariate polynomial over the rationals, keyed by exponent vector.
type MPoly = BTreeMap<Vec<usize>, ExactRational>;

fn add_to(p: &mut MPoly, e: Vec<usize>, c: ExactRational) {
    let entry = p.entry(e.clone()).or_insert_with(ExactRational::zero);
    *entry += c;
    if entry.is_zero() {
        p.remove(&e);
    }
}

fn expand(poly: &SymPoly, n: usize) -> MPoly {
    let mut out = MPoly::new();
    for (lambda, c) in poly.terms() {
        for e in monomial_exponents(lambda, n) {
            add_to(&mut out, e, c.clone());
        }
    }
    out
}

/// Exact quotient of `p` by `x_i − x_j`; `None` if the division leaves a remainder.
fn divide_by_difference(p: &MPoly, i: usize, j: usize) -> Option<MPoly> {
    let mut rem = p.clone();
    let mut quot = MPoly::new();
    loop {
        let lead = rem
            .iter()
            .filter(|(e, _)| e[i] > 0)
            .max_by_key(|(e, _)| e[i])
            .map(|(e, c)| (e.clone(), c.clone()));
        let Some((e, c)) = lead else { break };
        let mut q = e.clone();
        q[i] -= 1;
        let mut shifted = q.clone();
        shifted[j] += 1;
        add_to(&mut rem, e, -c.clone());
        add_to(&mut rem, shifted, c.clone());
        add_to(&mut quot, q, c);
    }
    rem.is_empty().then_some(quot)
}

/// Applies `Σ_i x_i² ∂²/∂x_i² + Σ_{i≠j} x_i²/(x_i − x_j) ∂/∂x_i` to `C_κ` in
/// `|κ|` variables and checks that the result is `(ρ_κ + k(k−1)) C_κ`,
/// exactly. Returns the eigenvalue when it holds.
pub fn eigen_operator_check(table: &ZonalTable, kappa: &Partition) -> Result<Option<i64>> {
    let k = kappa.weight();
    let n = k.max(1);
    let f = expand(table.poly(kappa)?, n);
    let mut image = MPoly::new();
    for (e, c) in &f {
        for i in 0..n {
            if e[i] >= 2 {
                let factor = ExactRational::from_integer((e[i] * (e[i] - 1)).into());
                add_to(&mut image, e.clone(), c * factor);
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            // x_i² ∂_i f − x_j² ∂_j f
            let mut num = MPoly::new();
            for (e, c) in &f {
                if e[i] > 0 {
                    let mut s = e.clone();
                    s[i] += 1;
                    add_to(&mut num, s, c * ExactRational::from_integer(e[i].into()));
                }
                if e[j] > 0 {
                    let mut s = e.clone();
                    s[j] += 1;
                    add_to(&mut num, s, -(c * ExactRational::from_integer(e[j].into())));
                }
            }
            let Some(quot) = divide_by_difference(&num, i, j) else {
                return Ok(None);
            };
            for (e, c) in quot {
                add_to(&mut image, e, c);
            }
        }
    }
    let eigenvalue = partitions::rho(kappa, n) + (k * (n - 1)) as i64;
    let lambda = ExactRational::from_integer(eigenvalue.into());
    for (e, c) in &f {
        add_to(&mut image, e.clone(), -(c * &lambda));
    }
    Ok(image.is_empty().then_some(eigenvalue))
}
