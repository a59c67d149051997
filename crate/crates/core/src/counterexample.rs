//! End-to-end comparison of the self-similar solution with the fan
//! subsolution for one set of Riemann data, and sweeps over `c_v`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::gas::GasConstants;
use crate::rate::{diperna_totals, entropy_rate, PiecewiseFan};
use crate::riemann::{solve_riemann, RiemannData, WaveKind};
use crate::subsolution::{check_admissibility, solve_fan_subsolution, AdmissibilityDiagnostics};

/// Default wedge density.
pub const DEFAULT_RHO1: f64 = 14.0;

/// Open brackets for the per-width rates of the preset data at `c_v = 3/2`.
pub const SELF_SIMILAR_BRACKET: (f64, f64) = (-1662.0, -1661.0);
pub const FAN_BRACKET: (f64, f64) = (867.0, 868.0);

/// Largest accepted scaled jump-condition residual on any front.
pub const RESIDUAL_GATE: f64 = 1e-8;
/// Smallest accepted entropy production on a shock.
pub const ENTROPY_GATE: f64 = -1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    SelfSimilarNotEntropyRateAdmissible,
    Inconclusive,
}

/// Whether a `c_v` value is one of the two endpoints for which the
/// counterexample is claimed, or an exploratory interior point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CvStatus {
    Claimed,
    Exploratory,
}

impl CvStatus {
    pub fn of(c_v: f64) -> Self {
        if c_v == 1.0 || c_v == 1.5 {
            Self::Claimed
        } else {
            Self::Exploratory
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateBoundsCheck {
    pub self_similar_in_bracket: bool,
    pub fan_in_bracket: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub data: RiemannData,
    pub c_v: f64,
    pub rho1: f64,
    pub cv_status: CvStatus,
    pub self_similar_rate: Option<f64>,
    pub fan_rate: Option<f64>,
    pub rate_bounds_check: RateBoundsCheck,
    /// Largest scaled jump residual over the shocks and the subsolution fronts.
    pub max_residual: Option<f64>,
    pub min_shock_entropy_production: Option<f64>,
    pub admissibility: Option<AdmissibilityDiagnostics>,
    pub self_similar_fan: Option<PiecewiseFan>,
    pub subsolution_fan: Option<PiecewiseFan>,
    pub subsolution: Option<crate::subsolution::FanSubsolution>,
    pub verdict: Verdict,
    /// Reason for an inconclusive verdict.
    pub cause: Option<String>,
}

impl CounterexampleReport {
    fn inconclusive(data: RiemannData, g: GasConstants, rho1: f64, cause: String) -> Self {
        Self {
            data,
            c_v: g.c_v(),
            rho1,
            cv_status: CvStatus::of(g.c_v()),
            self_similar_rate: None,
            fan_rate: None,
            rate_bounds_check: RateBoundsCheck {
                self_similar_in_bracket: false,
                fan_in_bracket: false,
            },
            max_residual: None,
            min_shock_entropy_production: None,
            admissibility: None,
            self_similar_fan: None,
            subsolution_fan: None,
            subsolution: None,
            verdict: Verdict::Inconclusive,
            cause: Some(cause),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.verdict == Verdict::SelfSimilarNotEntropyRateAdmissible
    }
}

fn in_open(x: f64, (lo, hi): (f64, f64)) -> bool {
    lo < x && x < hi
}

/// Solves both constructions for `data`, compares their entropy rates and
/// records every intermediate check.
pub fn reproduce_theorem(data: &RiemannData, rho1: f64, g: GasConstants) -> CounterexampleReport {
    let sol = match solve_riemann(data, g) {
        Ok(sol) => sol,
        Err(e) => return CounterexampleReport::inconclusive(*data, g, rho1, e.name().to_string()),
    };
    if !sol.waves.iter().any(|w| w.kind == WaveKind::Shock) {
        return CounterexampleReport::inconclusive(
            *data,
            g,
            rho1,
            format!("self-similar solution has no shock ({})", sol.pattern),
        );
    }
    let ss_fan = match PiecewiseFan::from_solution(&sol) {
        Ok(f) => f,
        Err(e) => return CounterexampleReport::inconclusive(*data, g, rho1, e.to_string()),
    };
    let sub = match solve_fan_subsolution(data, rho1, g) {
        Ok(s) => s,
        Err(e) => return CounterexampleReport::inconclusive(*data, g, rho1, e.name().to_string()),
    };
    let sub_fan = match sub.to_fan(data) {
        Ok(f) => f,
        Err(e) => return CounterexampleReport::inconclusive(*data, g, rho1, e.to_string()),
    };

    let ss_rate = entropy_rate(&ss_fan, g).rate_per_width;
    let fan_rate = entropy_rate(&sub_fan, g).rate_per_width;
    let diagnostics = check_admissibility(&sub, data, g);
    let max_residual = sol.max_jump_residual().max(sub.max_residual());
    let min_entropy = sol
        .waves
        .iter()
        .filter(|w| w.kind == WaveKind::Shock)
        .map(|w| w.entropy_production(g))
        .fold(f64::INFINITY, f64::min);

    let mut cause = None;
    if max_residual > RESIDUAL_GATE {
        cause = Some(format!(
            "jump residual {max_residual:e} above {RESIDUAL_GATE:e}"
        ));
    } else if min_entropy < ENTROPY_GATE {
        cause = Some(format!("shock entropy production {min_entropy:e} negative"));
    } else if !diagnostics.all_passed() {
        let failed: Vec<&str> = diagnostics
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        cause = Some(format!(
            "subsolution inequalities failed: {}",
            failed.join(", ")
        ));
    } else if fan_rate <= ss_rate {
        cause = Some("fan rate does not exceed the self-similar rate".to_string());
    }

    CounterexampleReport {
        data: *data,
        c_v: g.c_v(),
        rho1,
        cv_status: CvStatus::of(g.c_v()),
        self_similar_rate: Some(ss_rate),
        fan_rate: Some(fan_rate),
        rate_bounds_check: RateBoundsCheck {
            self_similar_in_bracket: in_open(ss_rate, SELF_SIMILAR_BRACKET),
            fan_in_bracket: in_open(fan_rate, FAN_BRACKET),
        },
        max_residual: Some(max_residual),
        min_shock_entropy_production: Some(min_entropy),
        admissibility: Some(diagnostics),
        self_similar_fan: Some(ss_fan),
        subsolution_fan: Some(sub_fan),
        subsolution: Some(sub),
        verdict: if cause.is_none() {
            Verdict::SelfSimilarNotEntropyRateAdmissible
        } else {
            Verdict::Inconclusive
        },
        cause,
    }
}

/// One report per `c_v` in `cv_grid`, computed in parallel; invalid grid
/// points give inconclusive reports.
pub fn sweep_cv(data: &RiemannData, rho1: f64, cv_grid: &[f64]) -> Vec<CounterexampleReport> {
    cv_grid
        .par_iter()
        .map(|&c_v| match GasConstants::new(c_v) {
            Ok(g) => reproduce_theorem(data, rho1, g),
            Err(e) => CounterexampleReport {
                c_v,
                cv_status: CvStatus::of(c_v),
                ..CounterexampleReport::inconclusive(
                    *data,
                    GasConstants::default(),
                    rho1,
                    e.to_string(),
                )
            },
        })
        .collect()
}

/// Number of interior sample times used by [`diperna_verdict`].
pub const DIPERNA_SAMPLES: usize = 16;

/// True when the fan's total entropy strictly exceeds the self-similar one at
/// every sampled time inside the validity window of the unit box.
pub fn diperna_verdict(report: &CounterexampleReport) -> bool {
    let (Some(ss), Some(fan)) = (&report.self_similar_fan, &report.subsolution_fan) else {
        return false;
    };
    let Ok(g) = GasConstants::new(report.c_v) else {
        return false;
    };
    diperna_dominates(ss, fan, g, 1.0, DIPERNA_SAMPLES)
}

/// `S_b(t) > S_a(t)` at `samples` equally spaced times in `(0, L / max speed)`.
pub fn diperna_dominates(
    a: &PiecewiseFan,
    b: &PiecewiseFan,
    g: GasConstants,
    half_width: f64,
    samples: usize,
) -> bool {
    let speed = a.max_abs_speed().max(b.max_abs_speed());
    let horizon = if speed > 0.0 { half_width / speed } else { 1.0 };
    (1..=samples).all(|k| {
        let t = horizon * k as f64 / (samples + 1) as f64;
        matches!(diperna_totals(a, b, g, half_width, t), Ok((sa, sb)) if sb > sa)
    })
}
