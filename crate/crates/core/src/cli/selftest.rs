//! Fast property suite behind `matargs selftest`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::linalg::{SpdMatrix, SymMatrix};
use crate::partitions::{dominates, enumerate, Partition};
use crate::randmat::{random_spd, RngStream};
use crate::specfun::{
    gamma, multivariate_gamma, neg_pochhammer_identity_residual, pochhammer_rising,
    reindex_product_residuals, GammaForm, ShiftSign,
};
use crate::symfun::{ExactRational, SymPoly};
use crate::verify::{
    mc_accumulate, verify_corollary1, verify_gamma_integral, verify_lemma2, verify_theorem1,
    ControlStatus, McConfig, Thresholds, Verdict, DEFAULT_QUAD_POINTS,
};
use crate::zonal::{build_table, dual_identity_sides, eigen_operator_check, ZonalTable};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

/// `p_1^k` in the monomial basis: `m_λ` has coefficient `k!/∏ λ_i!`.
fn p1_power(k: usize) -> Result<SymPoly> {
    let fact = |n: usize| (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i));
    let mut out = SymPoly::zero(k);
    for lambda in enumerate(k, k) {
        let denom = lambda
            .parts()
            .iter()
            .fold(BigInt::one(), |acc, &p| acc * fact(p));
        out.add_term(lambda, ExactRational::new(fact(k), denom))?;
    }
    Ok(out)
}

fn table_invariants(table: &ZonalTable) -> Result<Check> {
    let mut bad = Vec::new();
    for k in 0..=table.max_degree() {
        let mut sum = SymPoly::zero(k);
        for kappa in table.partitions_of(k) {
            let poly = table.poly(&kappa)?;
            for (lambda, c) in poly.terms() {
                if !c.is_zero() && !dominates(&kappa, lambda)? {
                    bad.push(format!("C_({kappa}) has m_({lambda})"));
                }
            }
            sum = sum.axpy(&ExactRational::one(), poly)?;
        }
        if sum != p1_power(k)? {
            bad.push(format!("sum of degree-{k} polynomials is not p_1^{k}"));
        }
    }
    Ok(Check {
        name: "zonal table: dominance support and sum rule",
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("degrees 0..={}", table.max_degree())
        } else {
            bad.join("; ")
        },
    })
}

fn eigen_operator(table: &ZonalTable) -> Result<Check> {
    let mut failures = Vec::new();
    for k in 1..=4 {
        for kappa in table.partitions_of(k) {
            if eigen_operator_check(table, &kappa)?.is_none() {
                failures.push(kappa.to_string());
            }
        }
    }
    Ok(Check {
        name: "zonal table: Laplace-Beltrami eigenfunctions",
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            "degrees 1..=4".into()
        } else {
            format!("not eigenfunctions: {}", failures.join(" "))
        },
    })
}

fn dual_identity(table: &ZonalTable, seed: u64) -> Result<Check> {
    let mut worst = 0.0f64;
    let mut rng = RngStream::new(seed, 1 << 40);
    for m in [2, 3] {
        for k in 1..=3 {
            for kappa in enumerate(k, m) {
                for _ in 0..5 {
                    let a = random_spd(&mut rng, m, 10.0)?;
                    let (l, r) = dual_identity_sides(table, &kappa, kappa.part(0), &a)?;
                    worst = worst.max(rel(l, r));
                }
            }
        }
    }
    Ok(Check {
        name: "dual-partition identity",
        pass: worst <= 1e-8,
        detail: format!("max relative residual {worst:.3e}"),
    })
}

fn gamma_forms() -> Result<Check> {
    let mut worst = 0.0f64;
    for m in 1..=6 {
        for j in 0..20 {
            let a = (m as f64 - 1.0) / 2.0 + 0.3 + 0.7 * j as f64;
            let x = multivariate_gamma(a, m, GammaForm::Ascending, false)?;
            let y = multivariate_gamma(a, m, GammaForm::Descending, false)?;
            worst = worst.max(rel(x, y));
        }
    }
    let mut quad_worst = 0.0f64;
    for m in [1, 2] {
        for a in [1.6, 2.0, 3.0, 3.5] {
            let (q, c) = verify_gamma_integral(m, a, DEFAULT_QUAD_POINTS)?;
            quad_worst = quad_worst.max(rel(q, c));
        }
    }
    Ok(Check {
        name: "multivariate gamma: product forms and quadrature",
        pass: worst <= 1e-13 && quad_worst <= 1e-6,
        detail: format!("forms {worst:.3e}, quadrature {quad_worst:.3e}"),
    })
}

fn pochhammer(seed: u64) -> Check {
    let mut rng = RngStream::new(seed, 1 << 41);
    let mut worst = 0.0f64;
    for _ in 0..300 {
        let x = 0.05 + 15.0 * rng.uniform();
        let q = (rng.next_u64() % 9) as usize;
        worst = worst.max(rel(pochhammer_rising(x, q), gamma(x + q as f64) / gamma(x)));
        let scale = pochhammer_rising(-x, q).abs().max(1e-300);
        worst = worst.max(neg_pochhammer_identity_residual(x, q).abs() / scale);
        let shifts: Vec<usize> = (0..q.max(1)).map(|_| (rng.next_u64() % 4) as usize).collect();
        let g = |t: f64| 1.0 + t * t;
        let (r1, r2) = reindex_product_residuals(g, x, &shifts, ShiftSign::Plus);
        let base: f64 = (0..shifts.len()).map(|i| g(x + i as f64)).product();
        worst = worst.max(r1.abs() / base).max(r2.abs() / base);
    }
    Check {
        name: "Pochhammer identities",
        pass: worst <= 1e-12,
        detail: format!("max relative residual {worst:.3e}"),
    }
}

fn monte_carlo(table: &ZonalTable, seed: u64) -> Result<Vec<Check>> {
    let cfg = McConfig::new(40_000, seed);
    let th = Thresholds::default();
    let p = |s: &str| s.parse::<Partition>();
    let id2 = SpdMatrix::identity(2);

    let r = verify_theorem1(table, 3.0, &p("1")?, &id2, &cfg, th)?;
    let oracle = (r.expected_correct - 4.0 / 3.0).abs() <= 1e-12;
    let mut out = vec![Check {
        name: "Laplace integral: E[tr X^-1] at m=2, a=3",
        pass: oracle && r.z_correct.abs() <= th.z_pass,
        detail: format!(
            "expected {:.6} (oracle 4/3), estimate {:.6}, z = {:.2}",
            r.expected_correct, r.estimate, r.z_correct
        ),
    }];

    let v = SpdMatrix::new(SymMatrix::diag(&[1.0, 2.0]))?;
    let t = SymMatrix::diag(&[1.0, -1.0]);
    let r = verify_corollary1(table, 4.0, &p("1")?, &v, &t, &cfg, th)?;
    out.push(Check {
        name: "corollary: indefinite T",
        pass: (r.expected_correct + 0.4).abs() <= 1e-12 && r.z_correct.abs() <= th.z_pass,
        detail: format!(
            "expected {:.6} (oracle -2/5), estimate {:.6}, z = {:.2}",
            r.expected_correct, r.estimate, r.z_correct
        ),
    });

    let (mean, se) = mc_accumulate([0.0, 2.0])?;
    out.push(Check {
        name: "Monte Carlo accumulator",
        pass: mean == 1.0 && se == 1.0 && r.verdict != Verdict::Fail,
        detail: format!("[0, 2] -> ({mean}, {se})"),
    });
    Ok(out)
}

fn lemma2(table: &ZonalTable, seed: u64) -> Result<Check> {
    let mut rng = RngStream::new(seed, 1 << 42);
    let mut worst = 0.0f64;
    let mut control_failures = 0;
    for m in [2, 3] {
        for k in 1..=3 {
            for kappa in enumerate(k, m) {
                let y = random_spd(&mut rng, m, 10.0)?;
                let r = verify_lemma2(table, &kappa, &y, k + 1)?;
                worst = worst.max(r.rel_error);
                if r.control == ControlStatus::Match {
                    control_failures += 1;
                }
            }
        }
    }
    Ok(Check {
        name: "highest-weight coefficient",
        pass: worst <= 1e-8 && control_failures == 0,
        detail: format!("max relative error {worst:.3e}, control matches {control_failures}"),
    })
}

/// Runs every check; `seed` drives the random matrices and Monte Carlo.
pub fn run(seed: u64) -> Result<Vec<Check>> {
    let table = build_table(6)?;
    let mut checks = vec![
        table_invariants(&table)?,
        eigen_operator(&table)?,
        dual_identity(&table, seed)?,
        gamma_forms()?,
        pochhammer(seed),
        lemma2(&table, seed)?,
    ];
    checks.extend(monte_carlo(&table, seed)?);
    Ok(checks)
}
