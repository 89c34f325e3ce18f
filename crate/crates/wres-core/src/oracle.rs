//! Independent floating-point oracles: adaptive quadrature on the real line
//! for the xi_n integrals, the Gamma-function closed form for sphere
//! moments, and the dual-path re-evaluation of a case ledger. The oracle
//! shares the exact Clifford trace (representation-free and cheap); numeric
//! independence is where the error modes differ, in the integrations.

use num_complex::Complex64;
use statrs::function::gamma::gamma;
use thiserror::Error;

use crate::curvature::{CurvatureFamily, NumericRiemann};
use crate::pipeline::CaseResult;
use crate::ratfunc::PoleLimitedRational;
use crate::scalars::Assignment;
use crate::sphere::SphereMonomial;

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("quadrature did not reach tolerance {tol} within {max_subdivisions} subdivisions (estimate {estimate})")]
    ToleranceNotReached { tol: f64, max_subdivisions: usize, estimate: f64 },
    #[error("integrand is not absolutely integrable")]
    NotIntegrable,
}

/// Configuration of the line quadrature.
#[derive(Clone, Copy, Debug)]
pub struct QuadratureConfig {
    pub tolerance: f64,
    /// Initial truncation radius; grown geometrically until the analytic
    /// tail bound drops below half the tolerance.
    pub initial_radius: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { tolerance: 1e-12, initial_radius: 32.0, max_subdivisions: 1 << 22 }
    }
}

/// Adaptive Simpson integration of the rational function over the real
/// line: the finite part over [-R, R] directly, the two tails through the
/// substitution x = 1/t, which turns them into smooth integrals over
/// (0, 1/R] because the integrand decays at least quadratically. Returns
/// the value and the requested error bound.
pub fn numeric_line_integral(
    f: &PoleLimitedRational,
    cfg: &QuadratureConfig,
) -> Result<(Complex64, f64), OracleError> {
    if f.is_zero() {
        return Ok((Complex64::new(0.0, 0.0), 0.0));
    }
    let deg = f.num().degree().unwrap_or(0) as i64;
    let total_pole = f.pow_minus_i() as i64 + f.pow_plus_i() as i64;
    let decay = total_pole - deg;
    if decay < 2 {
        return Err(OracleError::NotIntegrable);
    }

    let radius = cfg.initial_radius;
    let eval = |x: f64| f.eval_f64(x);
    // Tail integrand g(t) = [f(1/t) + f(-1/t)] / t^2, extended continuously
    // to t = 0 by the leading asymptotics: x^2 f(x) -> lead coefficient when
    // decay = 2 (and to 0 when the decay is faster).
    let lead = f.num().coeff(deg as usize).to_complex64();
    let tail_eval = |t: f64| {
        if t == 0.0 {
            if decay == 2 {
                2.0 * lead
            } else {
                Complex64::new(0.0, 0.0)
            }
        } else {
            let x = 1.0 / t;
            (eval(x) + eval(-x)) / (t * t)
        }
    };

    let mut budget = cfg.max_subdivisions;
    let not_reached = || OracleError::ToleranceNotReached {
        tol: cfg.tolerance,
        max_subdivisions: cfg.max_subdivisions,
        estimate: f64::NAN,
    };
    let finite = adaptive_simpson(
        &eval,
        -radius,
        radius,
        cfg.tolerance / 2.0,
        eval(-radius),
        eval(radius),
        eval(0.0),
        48,
        &mut budget,
    )
    .ok_or_else(not_reached)?;
    let cut = 1.0 / radius;
    let tails = adaptive_simpson(
        &tail_eval,
        0.0,
        cut,
        cfg.tolerance / 2.0,
        tail_eval(0.0),
        tail_eval(cut),
        tail_eval(cut / 2.0),
        48,
        &mut budget,
    )
    .ok_or_else(not_reached)?;
    Ok((finite + tails, cfg.tolerance))
}

#[allow(clippy::too_many_arguments)]
fn adaptive_simpson(
    f: &dyn Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    tol: f64,
    fa: Complex64,
    fb: Complex64,
    fm: Complex64,
    depth: u32,
    budget: &mut usize,
) -> Option<Complex64> {
    if *budget == 0 {
        return None;
    }
    *budget -= 1;
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let h = b - a;
    let whole = (fa + 4.0 * fm + fb) * (h / 6.0);
    let left = (fa + 4.0 * flm + fm) * (h / 12.0);
    let right = (fm + 4.0 * frm + fb) * (h / 12.0);
    let delta = left + right - whole;
    if depth == 0 {
        return None;
    }
    if delta.norm() <= 15.0 * tol {
        return Some(left + right + delta / 15.0);
    }
    let l = adaptive_simpson(f, a, m, tol / 2.0, fa, fm, flm, depth - 1, budget)?;
    let r = adaptive_simpson(f, m, b, tol / 2.0, fm, fb, frm, depth - 1, budget)?;
    Some(l + r)
}

/// Gamma-function closed form for the sphere moment (including the Omega_5
/// factor): int_{S^5} prod xi_i^{e_i} = 2 prod Gamma((e_i+1)/2) / Gamma(3 + sum e_i/2)
/// for all-even exponents, zero otherwise.
pub fn numeric_sphere_moment(m: &SphereMonomial) -> f64 {
    if m.exponents.iter().any(|e| e % 2 == 1) {
        return 0.0;
    }
    let mut num = 2.0;
    let mut half_sum = 0.0;
    for &e in &m.exponents {
        num *= gamma((e as f64 + 1.0) / 2.0);
        half_sum += e as f64 / 2.0;
    }
    num / gamma(3.0 + half_sum)
}

/// Outcome of the dual-path evaluation of a case.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Verdict {
    Agree,
    Disagree { exact: Complex64, numeric: Complex64, relative_error: f64 },
}

impl Verdict {
    pub fn agrees(&self) -> bool {
        matches!(self, Verdict::Agree)
    }
}

/// Re-evaluates the stored integrand ledger of a case numerically
/// (quadrature for xi_n, the Gamma form for moments, a generic curvature
/// tensor with the two antisymmetries and the pair swap for the Riemann
/// factors) and compares against the exact value under the assignment. The
/// generic tensor is rescaled so its scalar curvature matches the SB entry
/// of the assignment, which is exactly what the exact reduction asserts.
pub fn numeric_case_check(
    case: &CaseResult,
    assignment: &Assignment,
    seed: u64,
    tolerance: f64,
) -> Result<Verdict, OracleError> {
    let riemann = NumericRiemann::random(seed, assignment.get(crate::scalars::Indeterminate::SB).unwrap_or(0.9));
    let cfg = QuadratureConfig::default();

    let mut numeric = Complex64::new(0.0, 0.0);
    for term in &case.ledger {
        let (line, _) = numeric_line_integral(&term.xi_n, &cfg)?;
        let moment = numeric_sphere_moment(&term.xi_prime);
        if line.norm() < 1e-15 || moment.abs() < 1e-18 {
            continue;
        }
        let mut params = 1.0f64;
        for ind in crate::scalars::Indeterminate::ALL {
            let e = term.params[ind.index()];
            if e > 0 {
                params *= assignment.get(ind).unwrap_or(f64::NAN).powi(e as i32);
            }
        }
        let curv = match term.riemann {
            None => 1.0,
            Some(atom) => match atom.family {
                CurvatureFamily::Boundary => riemann.get(atom.slots),
                CurvatureFamily::Manifold => f64::NAN,
            },
        };
        numeric += line * moment * params * curv;
    }

    // Exact path: evaluate the case polynomial, then rescale by pi * Omega_5
    // to match the raw integrals.
    let exact = case
        .value
        .substitute_numeric(assignment)
        .expect("assignment covers all indeterminates")
        * std::f64::consts::PI
        * std::f64::consts::PI.powi(3);

    let scale = exact.norm().max(numeric.norm()).max(1.0);
    let rel = (exact - numeric).norm() / scale;
    if rel <= tolerance {
        Ok(Verdict::Agree)
    } else {
        Ok(Verdict::Disagree { exact, numeric, relative_error: rel })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use crate::scalars::GaussianRational as G;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn quadrature_of_cauchy_kernel() {
        let f = PoleLimitedRational::inv_one_plus_sq(1);
        let (v, _) = numeric_line_integral(&f, &QuadratureConfig::default()).unwrap();
        assert!((v.re - std::f64::consts::PI).abs() < 1e-9);
        assert!(v.im.abs() < 1e-9);
    }

    #[test]
    fn quadrature_of_vanishing_odd_integrand() {
        // The order-(-7) odd integrand whose vanishing the twelfth case uses.
        let f = PoleLimitedRational::new(
            Poly::from_coeffs(vec![
                G::zero(),
                G::from_parts(0, 1, -20, 1),
                G::zero(),
                G::from_parts(0, 1, 88, 1),
                G::zero(),
                G::from_parts(0, 1, 60, 1),
            ]),
            7,
            7,
        );
        let (v, _) = numeric_line_integral(&f, &QuadratureConfig::default()).unwrap();
        assert!(v.norm() < 1e-9);
    }

    #[test]
    fn quadrature_rejects_non_integrable() {
        let f = PoleLimitedRational::new(Poly::monomial(G::one(), 1), 1, 1);
        assert_eq!(
            numeric_line_integral(&f, &QuadratureConfig::default()),
            Err(OracleError::NotIntegrable)
        );
    }

    #[test]
    fn random_integrable_rationals_match_exact_residues() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let cfg = QuadratureConfig::default();
        for trial in 0..100 {
            let p = rng.gen_range(1..=7u32);
            let q = rng.gen_range(1..=7u32);
            let max_deg = (p + q).saturating_sub(2).min(12);
            let deg = rng.gen_range(0..=max_deg) as usize;
            let coeffs: Vec<G> = (0..=deg)
                .map(|_| {
                    G::from_parts(
                        rng.gen_range(-9..=9),
                        rng.gen_range(1..=4),
                        rng.gen_range(-9..=9),
                        rng.gen_range(1..=4),
                    )
                })
                .collect();
            let f = PoleLimitedRational::new(Poly::from_coeffs(coeffs), p, q);
            if f.is_zero() {
                continue;
            }
            let exact = f.integrate_real_line().unwrap().to_complex64() * std::f64::consts::PI;
            let (numeric, _) = numeric_line_integral(&f, &cfg).unwrap();
            let scale = exact.norm().max(1.0);
            assert!(
                (exact - numeric).norm() <= 1e-9 * scale,
                "trial {}: exact {} numeric {}",
                trial,
                exact,
                numeric
            );
        }
    }

    #[test]
    fn gamma_moments_match_exact_for_low_degrees() {
        // All even monomials of degree <= 8 against the exact rational value
        // times Omega_5 = pi^3.
        let omega5 = std::f64::consts::PI.powi(3);
        let mut stack = vec![[0u32; 6]];
        for _ in 0..4 {
            let mut next = Vec::new();
            for e in &stack {
                for k in 0..6 {
                    let mut e2 = *e;
                    e2[k] += 2;
                    next.push(e2);
                }
            }
            stack.append(&mut next);
            stack.sort();
            stack.dedup();
        }
        for e in stack {
            let m = SphereMonomial::new(e);
            let exact = crate::sphere::sphere_moment(&m);
            let exact_f = num_traits::ToPrimitive::to_f64(&exact).unwrap() * omega5;
            let numeric = numeric_sphere_moment(&m);
            let scale = exact_f.abs().max(1e-12);
            assert!(
                (exact_f - numeric).abs() <= 1e-12 * scale,
                "moment mismatch at {:?}: {} vs {}",
                e,
                exact_f,
                numeric
            );
        }
    }

    #[test]
    fn specific_gamma_moments() {
        let omega5 = std::f64::consts::PI.powi(3);
        let xi1sq = SphereMonomial::from_indices(&[1, 1]);
        assert!((numeric_sphere_moment(&xi1sq) - omega5 / 6.0).abs() < 1e-12);
        let xi1_4 = SphereMonomial::from_indices(&[1, 1, 1, 1]);
        assert!((numeric_sphere_moment(&xi1_4) - omega5 / 16.0).abs() < 1e-12);
        let xi12 = SphereMonomial::from_indices(&[1, 1, 2, 2]);
        assert!((numeric_sphere_moment(&xi12) - omega5 / 48.0).abs() < 1e-12);
    }
}
