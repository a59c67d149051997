//! Piecewise-constant 1-fan subsolution for the Riemann data.
//!
//! The subsolution has a single wedge `μ₋ t < x₂ < μ₊ t` between the left
//! and right states. Inside the wedge the density `ρ₁`, the averaged velocity
//! `(α, β)` and the pressure `p₁` are constant, the momentum flux `ρ v ⊗ v` is
//! relaxed to `ρ₁ (U + C₁/2 I)` with the traceless matrix
//! `U = [[γ, δ], [δ, −γ]]`, and the kinetic energy density is replaced by
//! `ρ₁ C₁ / 2`.
//!
//! For data with zero tangential velocity one has `α = δ = 0`, and the jump
//! conditions across the two fronts reduce to six equations
//!
//! ```text
//! mass      μ₋(ρ₋ − ρ₁)        = ρ₋v₋ − ρ₁β
//!           μ₊(ρ₁ − ρ₊)        = ρ₁β − ρ₊v₊
//! momentum  μ₋(ρ₋v₋ − ρ₁β)     = ρ₋v₋² + p₋ − ρ₁(C₁/2 − γ) − p₁
//!           μ₊(ρ₁β − ρ₊v₊)     = ρ₁(C₁/2 − γ) + p₁ − ρ₊v₊² − p₊
//! energy    μ₋(E₋ − E₁)        = (E₋ + p₋)v₋ − (E₁ + p₁)β
//!           μ₊(E₁ − E₊)        = (E₁ + p₁)β − (E₊ + p₊)v₊
//! ```
//!
//! with `E± = ½ρ±v±² + c_v p±` and `E₁ = ½ρ₁C₁ + c_v p₁`, for the unknowns
//! `(μ₋, μ₊, β, p₁, C₁, γ)`. The system is solved by damped Newton iteration
//! with a forward-difference Jacobian.

use nalgebra::{Matrix6, Vector6};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gas::{GasConstants, GasState};
use crate::rate::{PiecewiseFan, RateError};
use crate::riemann::{solve_riemann, RiemannData};

pub const RESIDUAL_TOLERANCE: f64 = 1e-10;
pub const MAX_ITERATIONS: usize = 100;
pub const MAX_HALVINGS: usize = 30;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SubsolutionError {
    #[error("rho1 must be positive and finite, got {0}")]
    InvalidDensity(f64),
    #[error("tangential velocities must vanish on both sides")]
    NonZeroTangentialVelocity,
    #[error("NewtonDivergence: no seed converged (best scaled residual {best_residual:e})")]
    NewtonDivergence { best_residual: f64 },
    #[error("InvalidIntermediate: p1 = {p1}, C1 = {c1} must both be positive")]
    InvalidIntermediate { p1: f64, c1: f64 },
}

impl SubsolutionError {
    pub fn name(&self) -> &'static str {
        match self {
            Self::InvalidDensity(_) => "InvalidDensity",
            Self::NonZeroTangentialVelocity => "NonZeroTangentialVelocity",
            Self::NewtonDivergence { .. } => "NewtonDivergence",
            Self::InvalidIntermediate { .. } => "InvalidIntermediate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FanSubsolution {
    pub rho1: f64,
    pub mu_minus: f64,
    pub mu_plus: f64,
    pub beta: f64,
    pub p1: f64,
    pub c1: f64,
    pub gamma: f64,
    pub alpha: f64,
    /// Scaled residuals of the six jump conditions at the solution.
    pub residuals: [f64; 6],
    pub iterations: usize,
}

impl FanSubsolution {
    pub fn unknowns(&self) -> [f64; 6] {
        [
            self.mu_minus,
            self.mu_plus,
            self.beta,
            self.p1,
            self.c1,
            self.gamma,
        ]
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().fold(0.0, |m, r| m.max(r.abs()))
    }

    /// Density, averaged velocity and pressure of the wedge.
    pub fn wedge_state(&self) -> GasState {
        GasState {
            rho: self.rho1,
            v1: self.alpha,
            v2: self.beta,
            p: self.p1,
        }
    }

    /// Density and pressure of the subsolution as a piecewise-constant fan.
    pub fn to_fan(&self, data: &RiemannData) -> Result<PiecewiseFan, RateError> {
        PiecewiseFan::new(
            vec![self.mu_minus, self.mu_plus],
            vec![data.left, self.wedge_state(), data.right],
        )
    }
}

/// Raw (unscaled) residuals and the per-equation magnitudes used for scaling.
fn residual_terms(
    data: &RiemannData,
    rho1: f64,
    x: &[f64; 6],
    g: GasConstants,
) -> ([f64; 6], [f64; 6]) {
    let [mu_m, mu_p, beta, p1, c1, gamma] = *x;
    let (l, r) = (&data.left, &data.right);
    let cv = g.c_v();
    let e_l = 0.5 * l.rho * l.v2 * l.v2 + cv * l.p;
    let e_r = 0.5 * r.rho * r.v2 * r.v2 + cv * r.p;
    let e_1 = 0.5 * rho1 * c1 + cv * p1;
    let flux_1 = rho1 * (0.5 * c1 - gamma) + p1;
    let m_l = l.rho * l.v2;
    let m_r = r.rho * r.v2;
    let m_1 = rho1 * beta;

    let eq = |terms: &[f64], lhs: f64, rhs: f64| {
        let scale = terms.iter().fold(1.0_f64, |m, t| m.max(t.abs()));
        (lhs - rhs, scale)
    };
    let rows = [
        eq(
            &[mu_m * l.rho, mu_m * rho1, m_l, m_1],
            mu_m * (l.rho - rho1),
            m_l - m_1,
        ),
        eq(
            &[mu_p * rho1, mu_p * r.rho, m_1, m_r],
            mu_p * (rho1 - r.rho),
            m_1 - m_r,
        ),
        eq(
            &[mu_m * m_l, mu_m * m_1, m_l * l.v2 + l.p, flux_1],
            mu_m * (m_l - m_1),
            m_l * l.v2 + l.p - flux_1,
        ),
        eq(
            &[mu_p * m_1, mu_p * m_r, flux_1, m_r * r.v2 + r.p],
            mu_p * (m_1 - m_r),
            flux_1 - m_r * r.v2 - r.p,
        ),
        eq(
            &[
                mu_m * e_l,
                mu_m * e_1,
                (e_l + l.p) * l.v2,
                (e_1 + p1) * beta,
            ],
            mu_m * (e_l - e_1),
            (e_l + l.p) * l.v2 - (e_1 + p1) * beta,
        ),
        eq(
            &[
                mu_p * e_1,
                mu_p * e_r,
                (e_1 + p1) * beta,
                (e_r + r.p) * r.v2,
            ],
            mu_p * (e_1 - e_r),
            (e_1 + p1) * beta - (e_r + r.p) * r.v2,
        ),
    ];
    let mut raw = [0.0; 6];
    let mut scale = [0.0; 6];
    for (i, (res, s)) in rows.into_iter().enumerate() {
        raw[i] = res;
        scale[i] = s;
    }
    (raw, scale)
}

/// Scaled residuals of the six jump conditions at `x = (μ₋, μ₊, β, p₁, C₁, γ)`.
pub fn subsolution_residuals(
    data: &RiemannData,
    rho1: f64,
    x: &[f64; 6],
    g: GasConstants,
) -> [f64; 6] {
    let (raw, scale) = residual_terms(data, rho1, x, g);
    std::array::from_fn(|i| raw[i] / scale[i])
}

fn scaled_norm(data: &RiemannData, rho1: f64, x: &[f64; 6], g: GasConstants) -> f64 {
    let r = subsolution_residuals(data, rho1, x, g);
    let n = r.iter().map(|v| v * v).sum::<f64>().sqrt();
    if n.is_finite() {
        n
    } else {
        f64::INFINITY
    }
}

fn newton(
    data: &RiemannData,
    rho1: f64,
    seed: [f64; 6],
    g: GasConstants,
) -> Result<([f64; 6], usize), f64> {
    let mut x = seed;
    let mut norm = scaled_norm(data, rho1, &x, g);
    for it in 0..=MAX_ITERATIONS {
        if subsolution_residuals(data, rho1, &x, g)
            .iter()
            .all(|r| r.abs() <= RESIDUAL_TOLERANCE)
        {
            return Ok((x, it));
        }
        if it == MAX_ITERATIONS {
            break;
        }
        let (f0, _) = residual_terms(data, rho1, &x, g);
        let mut jac = Matrix6::<f64>::zeros();
        for j in 0..6 {
            let h = 1e-7 * x[j].abs().max(1.0);
            let mut xp = x;
            xp[j] += h;
            let (fp, _) = residual_terms(data, rho1, &xp, g);
            for i in 0..6 {
                jac[(i, j)] = (fp[i] - f0[i]) / h;
            }
        }
        let rhs = -Vector6::from_column_slice(&f0);
        let Some(step) = jac.lu().solve(&rhs) else {
            return Err(norm);
        };
        let mut lambda = 1.0;
        let mut accepted = None;
        for _ in 0..=MAX_HALVINGS {
            let trial: [f64; 6] = std::array::from_fn(|i| x[i] + lambda * step[i]);
            let trial_norm = scaled_norm(data, rho1, &trial, g);
            if trial_norm < norm {
                accepted = Some((trial, trial_norm));
                break;
            }
            lambda *= 0.5;
        }
        match accepted {
            Some((trial, trial_norm)) => {
                x = trial;
                norm = trial_norm;
            }
            None => return Err(norm),
        }
    }
    Err(norm)
}

/// Completes a seed `(μ₋, μ₊, β, p₁)` with `C₁` from the left energy
/// condition and `γ` from the left momentum condition.
fn complete_seed(
    data: &RiemannData,
    rho1: f64,
    mu_m: f64,
    mu_p: f64,
    beta: f64,
    p1: f64,
    g: GasConstants,
) -> [f64; 6] {
    let l = &data.left;
    let cv = g.c_v();
    let e_l = 0.5 * l.rho * l.v2 * l.v2 + cv * l.p;
    // μ₋(E₋ − E₁) = (E₋+p₋)v₋ − (E₁+p₁)β, linear in E₁
    let denom = beta - mu_m;
    let e_1 = if denom.abs() > 1e-12 {
        ((e_l + l.p) * l.v2 - p1 * beta - mu_m * e_l) / denom
    } else {
        e_l
    };
    let c1 = ((e_1 - cv * p1) * 2.0 / rho1).max(beta * beta * 1.01 + 1e-12);
    let flux_1 = l.rho * l.v2 * l.v2 + l.p - mu_m * (l.rho * l.v2 - rho1 * beta);
    let gamma = 0.5 * c1 - (flux_1 - p1) / rho1;
    [mu_m, mu_p, beta, p1, c1, gamma]
}

fn seeds(data: &RiemannData, rho1: f64, g: GasConstants) -> Vec<[f64; 6]> {
    let (l, r) = (&data.left, &data.right);
    let mut out = Vec::new();
    if let Ok(sol) = solve_riemann(data, g) {
        if sol.pattern.is_two_shock() {
            let mu_m = sol.waves.first().map(|w| w.speed_lo).unwrap_or(l.v2);
            let mu_p = sol.waves.last().map(|w| w.speed_lo).unwrap_or(r.v2);
            let p1 = 0.5 * (sol.p_m + l.p);
            out.push(complete_seed(data, rho1, mu_m, mu_p, sol.v_m2, p1, g));
        }
    }
    // coarse multi-start: β across the velocity range, μ± from the mass conditions
    let (vmin, vmax) = (l.v2.min(r.v2), l.v2.max(r.v2));
    let span = (vmax - vmin).max(1.0);
    let p_ref = l.p.max(r.p);
    for bf in [0.5, 0.25, 0.75, 0.1, 0.9, -0.5, 1.5] {
        let beta = vmin + bf * (vmax - vmin);
        let mu_m = if (l.rho - rho1).abs() > 1e-12 {
            (l.rho * l.v2 - rho1 * beta) / (l.rho - rho1)
        } else {
            beta - span
        };
        let mu_p = if (rho1 - r.rho).abs() > 1e-12 {
            (rho1 * beta - r.rho * r.v2) / (rho1 - r.rho)
        } else {
            beta + span
        };
        for pf in [1.0, 10.0, 100.0, 1e3, 1e4] {
            out.push(complete_seed(data, rho1, mu_m, mu_p, beta, p_ref * pf, g));
        }
    }
    out
}

fn is_degenerate(data: &RiemannData, rho1: f64) -> bool {
    let (l, r) = (&data.left, &data.right);
    let same = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0);
    same(l.rho, r.rho) && same(l.v2, r.v2) && same(l.p, r.p) && same(rho1, l.rho)
}

/// Solves the jump conditions of the 1-fan subsolution with wedge density `rho1`.
pub fn solve_fan_subsolution(
    data: &RiemannData,
    rho1: f64,
    g: GasConstants,
) -> Result<FanSubsolution, SubsolutionError> {
    if !(rho1.is_finite() && rho1 > 0.0) {
        return Err(SubsolutionError::InvalidDensity(rho1));
    }
    if data.left.v1 != 0.0 || data.right.v1 != 0.0 {
        return Err(SubsolutionError::NonZeroTangentialVelocity);
    }

    if is_degenerate(data, rho1) {
        // constant data: no jumps, the fronts collapse onto the fluid velocity
        let s = data.left;
        let x = [s.v2, s.v2, s.v2, s.p, s.v2 * s.v2, -0.5 * s.v2 * s.v2];
        return Ok(build(data, rho1, x, 0, g));
    }

    let mut best = f64::INFINITY;
    for seed in seeds(data, rho1, g) {
        match newton(data, rho1, seed, g) {
            Ok((x, iterations)) if x[0] < x[1] => {
                let sub = build(data, rho1, x, iterations, g);
                if sub.p1 <= 0.0 || sub.c1 <= 0.0 {
                    return Err(SubsolutionError::InvalidIntermediate {
                        p1: sub.p1,
                        c1: sub.c1,
                    });
                }
                return Ok(sub);
            }
            Ok(_) => {}
            Err(norm) => best = best.min(norm),
        }
    }
    Err(SubsolutionError::NewtonDivergence {
        best_residual: best,
    })
}

fn build(
    data: &RiemannData,
    rho1: f64,
    x: [f64; 6],
    iterations: usize,
    g: GasConstants,
) -> FanSubsolution {
    FanSubsolution {
        rho1,
        mu_minus: x[0],
        mu_plus: x[1],
        beta: x[2],
        p1: x[3],
        c1: x[4],
        gamma: x[5],
        alpha: 0.0,
        residuals: subsolution_residuals(data, rho1, &x, g),
        iterations,
    }
}

/// One inequality of the admissibility set, `margin > 0` (or `≥ 0` when
/// `strict` is false) meaning satisfied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub name: String,
    pub margin: f64,
    pub strict: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdmissibilityDiagnostics {
    pub checks: Vec<InequalityCheck>,
}

impl AdmissibilityDiagnostics {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&InequalityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Evaluates the subsolution inequalities:
///
/// * `front_order`: `μ₊ − μ₋ > 0`;
/// * `kinetic_gap`: `C₁ − α² − β² > 0`;
/// * `relaxation_11`, `relaxation_22`, `relaxation_det`: the matrix
///   `C₁/2 I − ((α,β) ⊗ (α,β) − U)` is positive definite;
/// * `entropy_left`, `entropy_right`: entropy production on each front is
///   non-negative.
pub fn check_admissibility(
    sub: &FanSubsolution,
    data: &RiemannData,
    g: GasConstants,
) -> AdmissibilityDiagnostics {
    let (alpha, beta, half_c) = (sub.alpha, sub.beta, 0.5 * sub.c1);
    let delta = 0.0;
    let d11 = half_c - alpha * alpha + sub.gamma;
    let d22 = half_c - beta * beta - sub.gamma;
    let off = delta - alpha * beta;
    let wedge = sub.wedge_state();
    let entropy_left =
        crate::riemann::front_entropy_production(sub.mu_minus, &data.left, &wedge, g);
    let entropy_right =
        crate::riemann::front_entropy_production(sub.mu_plus, &wedge, &data.right, g);

    let check = |name: &str, margin: f64, strict: bool| InequalityCheck {
        name: name.to_string(),
        margin,
        strict,
        passed: if strict { margin > 0.0 } else { margin >= 0.0 },
    };
    AdmissibilityDiagnostics {
        checks: vec![
            check("front_order", sub.mu_plus - sub.mu_minus, true),
            check("kinetic_gap", sub.c1 - alpha * alpha - beta * beta, true),
            check("relaxation_11", d11, true),
            check("relaxation_22", d22, true),
            check("relaxation_det", d11 * d22 - off * off, true),
            check("entropy_left", entropy_left, false),
            check("entropy_right", entropy_right, false),
        ],
    }
}

/// Specific entropies `(s₋, s₁, s₊)` of the left state, the wedge and the right state.
pub fn subsolution_entropy_states(
    sub: &FanSubsolution,
    data: &RiemannData,
    g: GasConstants,
) -> (f64, f64, f64) {
    (
        data.left.specific_entropy(g),
        crate::gas::specific_entropy_from_pressure(sub.rho1, sub.p1, g),
        data.right.specific_entropy(g),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_inputs() {
        let g = GasConstants::default();
        let data = RiemannData::paper_preset();
        assert_eq!(
            solve_fan_subsolution(&data, -1.0, g),
            Err(SubsolutionError::InvalidDensity(-1.0))
        );
        assert_eq!(
            solve_fan_subsolution(&data, f64::NAN, g)
                .unwrap_err()
                .name(),
            "InvalidDensity"
        );
        let mut tangential = data;
        tangential.left.v1 = 1.0;
        assert_eq!(
            solve_fan_subsolution(&tangential, 14.0, g),
            Err(SubsolutionError::NonZeroTangentialVelocity)
        );
    }

    #[test]
    fn paper_fixture_converges_quickly() {
        let sub =
            solve_fan_subsolution(&RiemannData::paper_preset(), 14.0, GasConstants::default())
                .unwrap();
        assert!(sub.iterations <= 20, "{} iterations", sub.iterations);
        assert!(sub.max_residual() <= RESIDUAL_TOLERANCE);
    }

    #[test]
    fn degenerate_constant_state() {
        let g = GasConstants::default();
        let s = GasState {
            rho: 2.0,
            v1: 0.0,
            v2: -3.0,
            p: 5.0,
        };
        let data = RiemannData::new(s, s).unwrap();
        let sub = solve_fan_subsolution(&data, 2.0, g).unwrap();
        assert_eq!(sub.beta, s.v2);
        assert_eq!(sub.p1, s.p);
        assert!(sub.max_residual() == 0.0);
        let diag = check_admissibility(&sub, &data, g);
        assert!(!diag.get("kinetic_gap").unwrap().passed);
        assert_eq!(diag.get("kinetic_gap").unwrap().margin, 0.0);
        assert!(!diag.all_passed());
        assert!(sub.to_fan(&data).is_err());
    }

    #[test]
    fn unit_wedge_has_zero_entropy() {
        let g = GasConstants::default();
        let data = RiemannData::paper_preset();
        let mut sub = solve_fan_subsolution(&data, 14.0, g).unwrap();
        sub.rho1 = 1.0;
        sub.p1 = 1.0;
        assert_eq!(subsolution_entropy_states(&sub, &data, g).1, 0.0);
    }
}
