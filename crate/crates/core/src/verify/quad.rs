//! `Γ_m[a] = ∫_{A>0} etr(−A) det(A)^{a−(m+1)/2} dA` by quadrature, for m ≤ 2.
//!
//! With `A = T'T` the integral factorises into one Gaussian integral per
//! off-diagonal entry of `T` and one gamma integral
//! `∫_0^∞ e^{−s} s^{a−(m−i)/2−1} ds` per diagonal entry (`s = t_ii²`). Each
//! factor is integrated numerically; nothing here calls a gamma function.

use crate::error::{domain, Result};
use crate::specfun::{multivariate_gamma, GammaForm};

/// Node count used when the caller does not choose one.
pub const DEFAULT_QUAD_POINTS: usize = 400;

/// Required relative agreement between quadrature and closed form.
pub const GAMMA_QUAD_TOLERANCE: f64 = 1e-6;

/// `∫_0^∞ e^{−s} s^{p−1} ds` by the exp-sinh rule `s = exp(π/2 · sinh t)`,
/// which absorbs the endpoint singularity at `s = 0` for `0 < p < 1`.
fn gamma_integral(p: f64, points: usize) -> f64 {
    let half_pi = std::f64::consts::FRAC_PI_2;
    // Integrand in t: exp(−s + p·ln s) · (π/2) cosh t, with ln s = (π/2) sinh t.
    // Left tail decays like s^p; stop once p·|ln s| exceeds ~60. Right tail
    // is negligible once s exceeds 4p + 100.
    let t_lo = -(60.0 / (p * half_pi)).asinh();
    let t_hi = ((4.0 * p + 100.0).ln() / half_pi).asinh();
    let h = (t_hi - t_lo) / (points - 1) as f64;
    let mut sum = 0.0;
    for j in 0..points {
        let t = t_lo + j as f64 * h;
        let ln_s = half_pi * t.sinh();
        let w = if j == 0 || j == points - 1 { 0.5 } else { 1.0 };
        sum += w * (p * ln_s - ln_s.exp()).exp() * half_pi * t.cosh();
    }
    sum * h
}

/// `∫_{−∞}^{∞} e^{−t²} dt` by the trapezoid rule, which converges
/// geometrically for this integrand.
fn gaussian_integral(points: usize) -> f64 {
    let (lo, hi) = (-9.0, 9.0);
    let h = (hi - lo) / (points - 1) as f64;
    (0..points)
        .map(|j| {
            let t = lo + j as f64 * h;
            let w = if j == 0 || j == points - 1 { 0.5 } else { 1.0 };
            w * (-t * t).exp()
        })
        .sum::<f64>()
        * h
}

/// Returns `(quadrature value, closed-form Γ_m[a])`.
pub fn verify_gamma_integral(m: usize, a: f64, quad_points: usize) -> Result<(f64, f64)> {
    if !(m == 1 || m == 2) {
        return Err(domain(format!("quadrature check supports m in {{1, 2}} (got {m})")));
    }
    if quad_points < 16 {
        return Err(domain(format!("requires quad_points >= 16 (got {quad_points})")));
    }
    let closed = multivariate_gamma(a, m, GammaForm::Ascending, false)?;
    let mut quad = 1.0;
    for _ in 0..m * (m - 1) / 2 {
        quad *= gaussian_integral(quad_points);
    }
    for i in 1..=m {
        quad *= gamma_integral(a - (m - i) as f64 / 2.0, quad_points);
    }
    Ok((quad, closed))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn scalar_gamma() {
        let (q, c) = verify_gamma_integral(1, 2.0, DEFAULT_QUAD_POINTS).unwrap();
        assert!((q - 1.0).abs() < 1e-8);
        assert!((c - 1.0).abs() < 1e-14);
    }

    #[test]
    fn two_by_two() {
        let (q, _) = verify_gamma_integral(2, 3.0, DEFAULT_QUAD_POINTS).unwrap();
        assert!(rel(q, 1.5 * std::f64::consts::PI) < 1e-6);
    }

    #[test]
    fn agrees_with_both_product_forms() {
        for m in [1, 2] {
            for a in [1.6, 2.0, 3.0, 3.5] {
                let (q, _) = verify_gamma_integral(m, a, DEFAULT_QUAD_POINTS).unwrap();
                for form in [GammaForm::Ascending, GammaForm::Descending] {
                    let c = multivariate_gamma(a, m, form, false).unwrap();
                    assert!(rel(q, c) < 1e-6, "m={m} a={a} {q} vs {c}");
                }
            }
        }
    }

    #[test]
    fn singular_endpoint_is_handled() {
        // a − 1/2 = 0.05: integrand ~ s^{−0.95} near zero.
        let (q, c) = verify_gamma_integral(2, 0.55, DEFAULT_QUAD_POINTS).unwrap();
        assert!(rel(q, c) < 1e-6, "{q} vs {c}");
    }

    #[test]
    fn domain() {
        assert!(verify_gamma_integral(3, 3.0, 100).is_err());
        assert!(verify_gamma_integral(2, 0.5, 100).is_err());
        assert!(verify_gamma_integral(1, 0.0, 100).is_err());
    }
}
