//! Verification harness: Monte Carlo checks of the Laplace-integral identity
//! and its arbitrary-`T` corollary, exact coefficient extraction for the
//! highest-weight term of `C_κ(Y⁻¹Z)`, and a quadrature check of `Γ_m`.
//!
//! The Monte Carlo checks rely on one reduction. Dividing
//! `∫ etr(−XZ) det(X)^{a−(m+1)/2} C_κ(X⁻¹) dX` by its `κ = ()` value
//! `Γ_m[a] det(Z)^{−a}` turns the integral into an expectation under the
//! Wishart law `W_m(2a, (2Z)⁻¹)`, so the claim becomes
//! `E[C_κ(X⁻¹)] = (−1)^k C_κ(Z) / (−a + (m+1)/2)_κ`.

mod lemma2;
mod mc;
mod quad;

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::linalg::{product_eigs, sym_eigs, SpdMatrix, SymMatrix};
use crate::partitions::Partition;
use crate::randmat::{wishart, WishartSpec};
use crate::specfun::{theorem1_ratio, ConstantVariant};
use crate::zonal::{eval_eigs, ZonalTable};

pub use lemma2::{verify_lemma2, CoeffReport, ControlStatus, LEMMA2_TOLERANCE};
pub use mc::{mc_accumulate, run_chunks, Accumulator, McConfig, THREADS_ENV};
pub use quad::{verify_gamma_integral, DEFAULT_QUAD_POINTS, GAMMA_QUAD_TOLERANCE};

/// Default `|z|` bound for accepting the corrected constant.
pub const DEFAULT_Z_PASS: f64 = 4.0;
/// Default `|z|` bound for rejecting the incorrect constant.
pub const DEFAULT_Z_REJECT: f64 = 10.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    /// Process exit code: 0 pass, 1 fail, 3 inconclusive.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Acceptance thresholds for the z-scores.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Thresholds {
    pub z_pass: f64,
    pub z_reject: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            z_pass: DEFAULT_Z_PASS,
            z_reject: DEFAULT_Z_REJECT,
        }
    }
}

/// Outcome of a Monte Carlo check. Field order is the JSON key order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MCReport {
    pub claim: &'static str,
    pub m: usize,
    pub a: f64,
    pub kappa: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v: Option<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<Vec<Vec<f64>>>,
    pub estimate: f64,
    pub stderr: f64,
    pub expected_correct: f64,
    pub expected_incorrect: f64,
    pub z_correct: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z_incorrect: Option<f64>,
    /// Whether the two constants differ, so the run can tell them apart.
    pub discriminating: bool,
    /// Zero sample variance: the z-scores are 0 or infinite by convention.
    pub degenerate: bool,
    pub n_samples: u64,
    pub seed: u64,
    pub chunk_size: u64,
    pub z_pass: f64,
    pub z_reject: f64,
    pub verdict: Verdict,
}

impl MCReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

/// `(estimate − expected)/stderr`, with zero-variance samples mapped to 0
/// on an exact match and to a signed infinity otherwise.
fn z_score(estimate: f64, stderr: f64, expected: f64) -> f64 {
    let diff = estimate - expected;
    if stderr > 0.0 {
        diff / stderr
    } else if diff.abs() <= 1e-12 * expected.abs().max(1.0) {
        0.0
    } else {
        f64::INFINITY.copysign(diff)
    }
}

fn decide(z_correct: f64, z_incorrect: Option<f64>, th: Thresholds) -> Verdict {
    if !(z_correct.abs() <= th.z_pass) {
        return Verdict::Fail;
    }
    match z_incorrect {
        Some(zi) if !(zi.abs() >= th.z_reject) => Verdict::Inconclusive,
        _ => Verdict::Pass,
    }
}

/// The two constants' ratios `E[C_κ(X⁻¹)] / C_κ(Z)`, and whether they differ.
fn ratios(a: f64, m: usize, kappa: &Partition) -> Result<(f64, f64, bool)> {
    let correct = theorem1_ratio(a, m, kappa, ConstantVariant::Corrected)?;
    let incorrect = theorem1_ratio(a, m, kappa, ConstantVariant::MuirheadIncorrect)?;
    let differ = (correct - incorrect).abs() > 1e-12 * correct.abs().max(incorrect.abs());
    Ok((correct, incorrect, differ))
}

fn check_table(table: &ZonalTable, kappa: &Partition) -> Result<()> {
    if kappa.weight() > table.max_degree() {
        return Err(Error::MissingPartition(kappa.to_string(), table.max_degree()));
    }
    Ok(())
}

/// `κ` zero-padded to `m` parts, e.g. `2,0`.
fn padded_label(kappa: &Partition, m: usize) -> Result<String> {
    Ok(kappa
        .padded(m)?
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(","))
}

struct Expected {
    correct: f64,
    incorrect: f64,
    discriminating: bool,
}

fn finish(
    claim: &'static str,
    m: usize,
    a: f64,
    kappa: &Partition,
    matrices: [Option<Vec<Vec<f64>>>; 3],
    acc: Accumulator,
    expected: Expected,
    cfg: &McConfig,
    th: Thresholds,
) -> Result<MCReport> {
    let estimate = acc.mean();
    let stderr = acc.stderr()?;
    let z_correct = z_score(estimate, stderr, expected.correct);
    let z_incorrect = expected
        .discriminating
        .then(|| z_score(estimate, stderr, expected.incorrect));
    let [z, v, t] = matrices;
    Ok(MCReport {
        claim,
        m,
        a,
        kappa: padded_label(kappa, m)?,
        z,
        v,
        t,
        estimate,
        stderr,
        expected_correct: expected.correct,
        expected_incorrect: expected.incorrect,
        z_correct,
        z_incorrect,
        discriminating: expected.discriminating,
        degenerate: stderr == 0.0,
        n_samples: acc.count(),
        seed: cfg.seed,
        chunk_size: cfg.chunk_size,
        z_pass: th.z_pass,
        z_reject: th.z_reject,
        verdict: decide(z_correct, z_incorrect, th),
    })
}

/// Expected values of `E[C_κ(X⁻¹)]` under both constants, without sampling.
pub fn theorem1_expected(
    table: &ZonalTable,
    a: f64,
    kappa: &Partition,
    z: &SpdMatrix,
) -> Result<(f64, f64)> {
    check_table(table, kappa)?;
    let (rc, ri, _) = ratios(a, z.dim(), kappa)?;
    let c = eval_eigs(table, kappa, &sym_eigs(z.as_sym()))?;
    Ok((rc * c, ri * c))
}

/// Expected values of `E[C_κ(T X⁻¹)]` with `X ~ W_m(2a, (2V)⁻¹)` under both
/// constants: `ratio · C_κ(VT)`.
pub fn corollary1_expected(
    table: &ZonalTable,
    a: f64,
    kappa: &Partition,
    v: &SpdMatrix,
    t: &SymMatrix,
) -> Result<(f64, f64)> {
    check_table(table, kappa)?;
    let (rc, ri, _) = ratios(a, v.dim(), kappa)?;
    let c = eval_eigs(table, kappa, &product_eigs(v, t)?)?;
    Ok((rc * c, ri * c))
}

/// Monte Carlo check of `E[C_κ(X⁻¹)]` for `X ~ W_m(2a, (2Z)⁻¹)`.
pub fn verify_theorem1(
    table: &ZonalTable,
    a: f64,
    kappa: &Partition,
    z: &SpdMatrix,
    cfg: &McConfig,
    th: Thresholds,
) -> Result<MCReport> {
    let m = z.dim();
    let (correct, incorrect) = theorem1_expected(table, a, kappa, z)?;
    let (_, _, discriminating) = ratios(a, m, kappa)?;
    let spec = WishartSpec::for_laplace_integrand(a, z)?;
    let poly = table.compile(kappa, m)?;
    let acc = run_chunks(cfg, |rng| {
        let x = wishart(rng, &spec)?;
        Ok(poly.eval(&sym_eigs(&x.inverse())))
    })?;
    finish(
        "theorem1",
        m,
        a,
        kappa,
        [Some(z.as_sym().rows()), None, None],
        acc,
        Expected {
            correct,
            incorrect,
            discriminating,
        },
        cfg,
        th,
    )
}

/// Monte Carlo check of `E[C_κ(T X⁻¹)] = (−1)^k C_κ(VT) / (−a+(m+1)/2)_κ`
/// for `X ~ W_m(2a, (2V)⁻¹)` and any symmetric `T`.
pub fn verify_corollary1(
    table: &ZonalTable,
    a: f64,
    kappa: &Partition,
    v: &SpdMatrix,
    t: &SymMatrix,
    cfg: &McConfig,
    th: Thresholds,
) -> Result<MCReport> {
    let m = v.dim();
    if t.dim() != m {
        return Err(Error::DimensionMismatch(m, t.dim()));
    }
    let (correct, incorrect) = corollary1_expected(table, a, kappa, v, t)?;
    let (_, _, discriminating) = ratios(a, m, kappa)?;
    let spec = WishartSpec::for_laplace_integrand(a, v)?;
    let poly = table.compile(kappa, m)?;
    let acc = run_chunks(cfg, |rng| {
        let x = wishart(rng, &spec)?;
        let x_inv = x.inverse_spd().map_err(|e| {
            domain(format!("sampled X⁻¹ is not numerically positive definite: {e}"))
        })?;
        Ok(poly.eval(&product_eigs(&x_inv, t)?))
    })?;
    finish(
        "corollary1",
        m,
        a,
        kappa,
        [None, Some(v.as_sym().rows()), Some(t.rows())],
        acc,
        Expected {
            correct,
            incorrect,
            discriminating,
        },
        cfg,
        th,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zonal::build_table;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn spd(rows: &[Vec<f64>]) -> SpdMatrix {
        SpdMatrix::new(SymMatrix::from_rows(rows).unwrap()).unwrap()
    }

    fn cfg(n: u64) -> McConfig {
        McConfig::new(n, 42)
    }

    #[test]
    fn closed_form_expectations() {
        let table = build_table(3).unwrap();
        // E[X⁻¹] = Σ⁻¹/(n−m−1) = 2I/3, trace 4/3.
        let (c, _) = theorem1_expected(&table, 3.0, &p("1"), &SpdMatrix::identity(2)).unwrap();
        assert!((c - 4.0 / 3.0).abs() < 1e-12);
        // Scalar: E[1/X] for X ~ Gamma(a, rate z) is z/(a−1).
        for z in [0.5, 1.0, 3.0] {
            let (c, _) = theorem1_expected(&table, 2.0, &p("1"), &spd(&[vec![z]])).unwrap();
            assert!((c - z).abs() < 1e-12 * z);
        }
        // Inverse-Wishart mean with an indefinite T: tr(T·2V)/(2a−m−1).
        let v = spd(&[vec![1.0, 0.0], vec![0.0, 2.0]]);
        let t = SymMatrix::diag(&[1.0, -1.0]);
        let (c, _) = corollary1_expected(&table, 4.0, &p("1"), &v, &t).unwrap();
        assert!((c + 0.4).abs() < 1e-12);
    }

    #[test]
    fn identity_t_matches_theorem_exactly() {
        let table = build_table(3).unwrap();
        let v = spd(&[vec![2.0, 0.3, 0.1], vec![0.3, 1.0, -0.2], vec![0.1, -0.2, 0.7]]);
        let t = SymMatrix::identity(3);
        for kappa in table.partitions_of(3) {
            let a = kappa.part(0) as f64 + 1.0 + 1.5;
            assert_eq!(
                theorem1_expected(&table, a, &kappa, &v).unwrap(),
                corollary1_expected(&table, a, &kappa, &v, &t).unwrap()
            );
        }
    }

    #[test]
    fn identity_v_uses_eigenvalues_of_t() {
        let table = build_table(3).unwrap();
        let t = SymMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, -1.0]]).unwrap();
        let (c, _) =
            corollary1_expected(&table, 4.0, &p("2"), &SpdMatrix::identity(2), &t).unwrap();
        let ratio = theorem1_ratio(4.0, 2, &p("2"), ConstantVariant::Corrected).unwrap();
        let direct = ratio * eval_eigs(&table, &p("2"), &t.eigenvalues()).unwrap();
        assert!((c - direct).abs() < 1e-12 * direct.abs());
    }

    #[test]
    fn discrimination_constants_differ_by_expected_factor() {
        let table = build_table(2).unwrap();
        let (c, i) = theorem1_expected(&table, 4.0, &p("2"), &SpdMatrix::identity(2)).unwrap();
        assert!((c / i - 1.6).abs() < 1e-12);
    }

    #[test]
    fn domain_is_checked_before_sampling() {
        let table = build_table(2).unwrap();
        let err = verify_theorem1(
            &table,
            2.0,
            &p("2"),
            &SpdMatrix::identity(2),
            &cfg(1000),
            Thresholds::default(),
        )
        .unwrap_err();
        assert!(err.to_string().contains("requires a > k_1 + (m-1)/2"));
        assert!(verify_theorem1(
            &table,
            5.0,
            &p("3"),
            &SpdMatrix::identity(2),
            &cfg(1000),
            Thresholds::default()
        )
        .is_err());
    }

    #[test]
    fn theorem1_small_runs_pass() {
        let table = build_table(2).unwrap();
        let r = verify_theorem1(
            &table,
            3.0,
            &p("1"),
            &SpdMatrix::identity(2),
            &cfg(50_000),
            Thresholds::default(),
        )
        .unwrap();
        assert_eq!(r.kappa, "1,0");
        assert!(r.z_correct.abs() <= 4.0, "{r:?}");
        // (1,0) has unequal parts, so the two constants differ.
        assert!(r.discriminating);
        assert!(r.z_incorrect.is_some());
        assert_ne!(r.verdict, Verdict::Fail);

        let r = verify_theorem1(
            &table,
            2.0,
            &p("1"),
            &spd(&[vec![2.5]]),
            &cfg(50_000),
            Thresholds::default(),
        )
        .unwrap();
        assert!(r.z_correct.abs() <= 4.0, "{r:?}");
    }

    #[test]
    fn corollary_with_identity_t_reproduces_theorem_samples() {
        let table = build_table(2).unwrap();
        let v = spd(&[vec![1.0, 0.2], vec![0.2, 0.5]]);
        let th = Thresholds::default();
        let a = 4.0;
        let r1 = verify_theorem1(&table, a, &p("1,1"), &v, &cfg(20_000), th).unwrap();
        let r2 = verify_corollary1(
            &table,
            a,
            &p("1,1"),
            &v,
            &SymMatrix::identity(2),
            &cfg(20_000),
            th,
        )
        .unwrap();
        assert_eq!(r1.expected_correct, r2.expected_correct);
        assert_eq!(r1.estimate, r2.estimate);
        assert_eq!(r1.stderr, r2.stderr);
    }

    #[test]
    fn verdict_rules() {
        let th = Thresholds::default();
        assert_eq!(decide(1.0, None, th), Verdict::Pass);
        assert_eq!(decide(4.5, None, th), Verdict::Fail);
        assert_eq!(decide(1.0, Some(12.0), th), Verdict::Pass);
        assert_eq!(decide(1.0, Some(-12.0), th), Verdict::Pass);
        assert_eq!(decide(1.0, Some(5.0), th), Verdict::Inconclusive);
        assert_eq!(decide(5.0, Some(50.0), th), Verdict::Fail);
        assert_eq!(decide(f64::NAN, None, th), Verdict::Fail);
    }

    #[test]
    fn zero_variance_is_flagged() {
        assert_eq!(z_score(1.0, 0.0, 1.0), 0.0);
        assert_eq!(z_score(1.5, 0.0, 1.0), f64::INFINITY);
        let table = build_table(1).unwrap();
        let r = verify_theorem1(
            &table,
            1.0,
            &Partition::empty(),
            &SpdMatrix::identity(2),
            &cfg(100),
            Thresholds::default(),
        )
        .unwrap();
        assert!(r.degenerate);
        assert_eq!(r.estimate, 1.0);
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn report_json_key_order() {
        let table = build_table(2).unwrap();
        let r = verify_theorem1(
            &table,
            4.0,
            &p("2"),
            &SpdMatrix::identity(2),
            &cfg(1000),
            Thresholds::default(),
        )
        .unwrap();
        let json = r.to_json();
        let keys = [
            "\"claim\"",
            "\"m\"",
            "\"a\"",
            "\"kappa\"",
            "\"z\"",
            "\"estimate\"",
            "\"stderr\"",
            "\"expected_correct\"",
            "\"expected_incorrect\"",
            "\"z_correct\"",
            "\"z_incorrect\"",
            "\"n_samples\"",
            "\"seed\"",
            "\"verdict\"",
        ];
        let pos: Vec<usize> = keys.iter().map(|k| json.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]), "{json}");
        assert!(json.contains("\"kappa\": \"2,0\""));
        assert_eq!(json, r.to_json());
    }
}
