//! Exact solution of the 1-D Riemann problem for the full Euler system.
//!
//! The data are constant in `x₁` and jump across `x₂ = 0`, so the solution is
//! a self-similar fan in `ξ = x₂/t`: a left wave (shock or rarefaction), a
//! contact discontinuity and a right wave.
//!
//! When both outer waves are shocks the intermediate state is obtained from
//! the closed-form two-shock relations ([`solve_intermediate_pressure`],
//! [`intermediate_states`], [`shock_speeds`]). All other patterns go through
//! the usual shock/rarefaction wave-curve decomposition for `γ = 1 + 1/c_v`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gas::{GasConstants, GasError, GasState};

/// Relative jump size below which a wave is treated as absent.
pub const JUMP_TOLERANCE: f64 = 1e-12;
/// Intermediate pressures at or below this value are reported as vacuum.
pub const VACUUM_PRESSURE: f64 = 1e-14;

const BISECTION_RTOL: f64 = 1e-12;
const MAX_BRACKET_EXPANSIONS: usize = 2000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RiemannError {
    #[error("invalid state: {0}")]
    InvalidState(#[from] GasError),
    #[error("NoTwoShockRoot: intermediate pressure {p_m} does not exceed both end pressures ({p_left}, {p_right})")]
    NoTwoShockRoot { p_m: f64, p_left: f64, p_right: f64 },
    #[error("BracketingFailure: no sign change of the pressure function below {upper}")]
    BracketingFailure { upper: f64 },
    #[error("DegenerateShock: density does not jump across the {side} shock")]
    DegenerateShock { side: &'static str },
    #[error("VacuumFormation: data too expansive for a positive-pressure solution")]
    VacuumFormation,
}

impl RiemannError {
    /// Short stable name used on diagnostic output.
    pub fn name(&self) -> &'static str {
        match self {
            Self::InvalidState(_) => "InvalidState",
            Self::NoTwoShockRoot { .. } => "NoTwoShockRoot",
            Self::BracketingFailure { .. } => "BracketingFailure",
            Self::DegenerateShock { .. } => "DegenerateShock",
            Self::VacuumFormation => "VacuumFormation",
        }
    }
}

/// Left state on `x₂ < 0`, right state on `x₂ > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RiemannData {
    pub left: GasState,
    pub right: GasState,
}

impl RiemannData {
    pub fn new(left: GasState, right: GasState) -> Result<Self, RiemannError> {
        left.validate()?;
        right.validate()?;
        Ok(Self { left, right })
    }

    /// The data `(1,(0,0),2) / (10,(0,−100),1)` of the entropy-rate counterexample.
    pub fn paper_preset() -> Self {
        Self {
            left: GasState {
                rho: 1.0,
                v1: 0.0,
                v2: 0.0,
                p: 2.0,
            },
            right: GasState {
                rho: 10.0,
                v1: 0.0,
                v2: -100.0,
                p: 1.0,
            },
        }
    }

    /// Data reflected through `x₂ ↦ −x₂`: sides swap and `v₂` changes sign.
    pub fn mirrored(&self) -> Self {
        Self {
            left: self.right.reflected(),
            right: self.left.reflected(),
        }
    }

    pub fn velocity_jump(&self) -> f64 {
        self.right.v2 - self.left.v2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WaveKind {
    Shock,
    Rarefaction,
    Contact,
}

/// Characteristic family of a wave: the left (`v₂ − c`), middle (`v₂`) or
/// right (`v₂ + c`) field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WaveFamily {
    Left,
    Middle,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Wave {
    pub kind: WaveKind,
    pub family: WaveFamily,
    pub speed_lo: f64,
    pub speed_hi: f64,
    pub pre_state: GasState,
    pub post_state: GasState,
}

impl Wave {
    /// Scaled residuals of the mass, normal-momentum and energy jump
    /// conditions `σ⟦q⟧ = ⟦f(q)⟧` across a discontinuity.
    ///
    /// Each residual is divided by the largest magnitude among the terms
    /// entering it (at least 1). Rarefactions are continuous and report zeros.
    pub fn rankine_hugoniot_residuals(&self, g: GasConstants) -> [f64; 3] {
        if self.kind == WaveKind::Rarefaction {
            return [0.0; 3];
        }
        jump_residuals(self.speed_lo, &self.pre_state, &self.post_state, g)
    }

    /// Entropy production `σ(ρs)⁻ − σ(ρs)⁺ + (ρsv₂)⁺ − (ρsv₂)⁻` concentrated on
    /// the front; non-negative for admissible discontinuities.
    pub fn entropy_production(&self, g: GasConstants) -> f64 {
        if self.kind == WaveKind::Rarefaction {
            return 0.0;
        }
        front_entropy_production(self.speed_lo, &self.pre_state, &self.post_state, g)
    }
}

/// Scaled Rankine–Hugoniot residuals (mass, normal momentum, energy) for a
/// front of speed `speed` between `pre` (behind, smaller `x₂`) and `post`.
pub fn jump_residuals(speed: f64, pre: &GasState, post: &GasState, g: GasConstants) -> [f64; 3] {
    let scaled = |lhs_a: f64, lhs_b: f64, flux_a: f64, flux_b: f64| {
        let residual = speed * (lhs_b - lhs_a) - (flux_b - flux_a);
        let scale = [speed * lhs_a, speed * lhs_b, flux_a, flux_b]
            .iter()
            .fold(1.0_f64, |m, x| m.max(x.abs()));
        residual / scale
    };
    let (ea, eb) = (pre.total_energy(g), post.total_energy(g));
    [
        scaled(pre.rho, post.rho, pre.momentum(), post.momentum()),
        scaled(
            pre.momentum(),
            post.momentum(),
            pre.momentum() * pre.v2 + pre.p,
            post.momentum() * post.v2 + post.p,
        ),
        scaled(ea, eb, (ea + pre.p) * pre.v2, (eb + post.p) * post.v2),
    ]
}

/// Entropy produced on a front of speed `speed` separating `pre` and `post`.
pub fn front_entropy_production(
    speed: f64,
    pre: &GasState,
    post: &GasState,
    g: GasConstants,
) -> f64 {
    let (qa, qb) = (pre.entropy_density(g), post.entropy_density(g));
    speed * (qa - qb) + (qb * post.v2 - qa * pre.v2)
}

/// Labels of the outer waves and presence of the contact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WavePattern {
    pub left: Option<WaveKind>,
    pub contact: bool,
    pub right: Option<WaveKind>,
}

impl WavePattern {
    pub fn kinds(&self) -> Vec<WaveKind> {
        let mut out = Vec::with_capacity(3);
        out.extend(self.left);
        if self.contact {
            out.push(WaveKind::Contact);
        }
        out.extend(self.right);
        out
    }

    pub fn is_two_shock(&self) -> bool {
        self.left == Some(WaveKind::Shock) && self.right == Some(WaveKind::Shock)
    }
}

impl std::fmt::Display for WavePattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let kinds = self.kinds();
        if kinds.is_empty() {
            return write!(f, "none");
        }
        let names: Vec<&str> = kinds
            .iter()
            .map(|k| match k {
                WaveKind::Shock => "Shock",
                WaveKind::Rarefaction => "Rarefaction",
                WaveKind::Contact => "Contact",
            })
            .collect();
        write!(f, "{}", names.join("-"))
    }
}

/// The self-similar solution: waves ordered by speed with the constant states
/// between them (`states.len() == waves.len() + 1`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelfSimilarSolution {
    pub waves: Vec<Wave>,
    pub states: Vec<GasState>,
    pub p_m: f64,
    pub v_m2: f64,
    pub pattern: WavePattern,
    pub gas: GasConstants,
}

impl SelfSimilarSolution {
    /// State at `ξ = x₂/t`. Points exactly on a discontinuity get the state
    /// behind it (right-continuous in ξ).
    pub fn sample(&self, xi: f64) -> GasState {
        for (i, wave) in self.waves.iter().enumerate() {
            if xi < wave.speed_lo {
                return self.states[i];
            }
            if wave.kind == WaveKind::Rarefaction && xi < wave.speed_hi {
                return rarefaction_fan_state(wave, xi, self.gas);
            }
        }
        *self.states.last().expect("at least one state")
    }

    /// State at `(t, x₂)`; `t = 0` returns the initial data.
    pub fn state_at(&self, t: f64, x2: f64) -> GasState {
        if t > 0.0 {
            self.sample(x2 / t)
        } else if x2 < 0.0 {
            self.states[0]
        } else {
            *self.states.last().expect("at least one state")
        }
    }

    pub fn max_abs_speed(&self) -> f64 {
        self.waves
            .iter()
            .map(|w| w.speed_lo.abs().max(w.speed_hi.abs()))
            .fold(0.0, f64::max)
    }

    /// Largest scaled Rankine–Hugoniot residual over all discontinuities.
    pub fn max_jump_residual(&self) -> f64 {
        self.waves
            .iter()
            .flat_map(|w| w.rankine_hugoniot_residuals(self.gas))
            .fold(0.0, |m, r| m.max(r.abs()))
    }
}

fn rarefaction_fan_state(wave: &Wave, xi: f64, g: GasConstants) -> GasState {
    let gamma = g.adiabatic_exponent();
    let (gp1, gm1) = (gamma + 1.0, gamma - 1.0);
    match wave.family {
        WaveFamily::Left => {
            let s = wave.pre_state;
            let a = g.sound_speed(&s);
            let c = 2.0 / gp1 + gm1 / (gp1 * a) * (s.v2 - xi);
            GasState {
                rho: s.rho * c.powf(2.0 / gm1),
                v1: s.v1,
                v2: 2.0 / gp1 * (a + 0.5 * gm1 * s.v2 + xi),
                p: s.p * c.powf(2.0 * gamma / gm1),
            }
        }
        _ => {
            let s = wave.post_state;
            let a = g.sound_speed(&s);
            let c = 2.0 / gp1 - gm1 / (gp1 * a) * (s.v2 - xi);
            GasState {
                rho: s.rho * c.powf(2.0 / gm1),
                v1: s.v1,
                v2: 2.0 / gp1 * (-a + 0.5 * gm1 * s.v2 + xi),
                p: s.p * c.powf(2.0 * gamma / gm1),
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Closed-form two-shock relations
// ---------------------------------------------------------------------------

/// Velocity change across a shock from a state of density `rho`, pressure
/// `p_side` to intermediate pressure `p_m`:
/// `√(2c_v) (p_M − p)/√(ρ(p + (2c_v+1) p_M))`.
fn shock_branch(rho: f64, p_side: f64, p_m: f64, c_v: f64) -> f64 {
    (2.0 * c_v).sqrt() * (p_m - p_side) / (rho * (p_side + (2.0 * c_v + 1.0) * p_m)).sqrt()
}

fn shock_branch_derivative(rho: f64, p_side: f64, p_m: f64, c_v: f64) -> f64 {
    let k = 2.0 * c_v + 1.0;
    let d = rho * (p_side + k * p_m);
    (2.0 * c_v).sqrt() / d.sqrt() * (1.0 - 0.5 * k * (p_m - p_side) / (p_side + k * p_m))
}

/// Residual of the two-shock pressure equation,
/// `−(branch₋ + branch₊) − (v₊,₂ − v₋,₂)`. Strictly decreasing for `p > max(p₋, p₊)`.
pub fn two_shock_residual(data: &RiemannData, p_m: f64, g: GasConstants) -> f64 {
    let (l, r) = (&data.left, &data.right);
    -(shock_branch(l.rho, l.p, p_m, g.c_v()) + shock_branch(r.rho, r.p, p_m, g.c_v()))
        - data.velocity_jump()
}

fn two_shock_residual_derivative(data: &RiemannData, p_m: f64, g: GasConstants) -> f64 {
    let (l, r) = (&data.left, &data.right);
    -(shock_branch_derivative(l.rho, l.p, p_m, g.c_v())
        + shock_branch_derivative(r.rho, r.p, p_m, g.c_v()))
}

/// Intermediate pressure of a two-shock solution.
///
/// The upper bracket end is grown geometrically from `max(p₋, p₊)` until the
/// residual changes sign; bisection then narrows the bracket to a relative
/// width of `1e−12` and a few guarded Newton steps polish the root.
pub fn solve_intermediate_pressure(
    data: &RiemannData,
    g: GasConstants,
) -> Result<f64, RiemannError> {
    let (p_left, p_right) = (data.left.p, data.right.p);
    let mut lo = p_left.max(p_right);
    let f_lo = two_shock_residual(data, lo, g);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_lo < 0.0 {
        // root lies below max(p₋, p₊): at least one wave is a rarefaction
        let p_m = pressure_root_below(data, lo, g).unwrap_or(0.0);
        return Err(RiemannError::NoTwoShockRoot {
            p_m,
            p_left,
            p_right,
        });
    }

    let mut hi = 2.0 * lo;
    let mut expansions = 0;
    while two_shock_residual(data, hi, g) > 0.0 {
        lo = hi;
        hi *= 2.0;
        expansions += 1;
        if expansions > MAX_BRACKET_EXPANSIONS || !hi.is_finite() {
            return Err(RiemannError::BracketingFailure { upper: hi });
        }
    }

    while hi - lo > BISECTION_RTOL * hi {
        let mid = 0.5 * (lo + hi);
        if two_shock_residual(data, mid, g) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    let mut p = 0.5 * (lo + hi);
    for _ in 0..4 {
        let f = two_shock_residual(data, p, g);
        let df = two_shock_residual_derivative(data, p, g);
        if f == 0.0 || df == 0.0 {
            break;
        }
        let next = p - f / df;
        if !(next > lo && next < hi) || two_shock_residual(data, next, g).abs() >= f.abs() {
            break;
        }
        p = next;
    }
    Ok(p)
}

/// Normal velocity and densities of the two intermediate states.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntermediateStates {
    pub v_m2: f64,
    pub rho_m_minus: f64,
    pub rho_m_plus: f64,
}

fn shock_density(rho: f64, p_side: f64, p_m: f64, c_v: f64) -> f64 {
    let k = 2.0 * c_v + 1.0;
    rho * (p_side + k * p_m) / (p_m + k * p_side)
}

pub fn intermediate_states(data: &RiemannData, p_m: f64, g: GasConstants) -> IntermediateStates {
    let (l, r) = (&data.left, &data.right);
    IntermediateStates {
        v_m2: l.v2 - shock_branch(l.rho, l.p, p_m, g.c_v()),
        rho_m_minus: shock_density(l.rho, l.p, p_m, g.c_v()),
        rho_m_plus: shock_density(r.rho, r.p, p_m, g.c_v()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShockSpeeds {
    pub sigma_minus: f64,
    pub sigma_plus: f64,
    /// Contact speed, equal to the intermediate normal velocity.
    pub sigma_m: f64,
}

/// Shock speeds from the mass jump condition `σ±(ρ± − ρ_M±) = ρ± v±,₂ − ρ_M± v_M,₂`.
pub fn shock_speeds(
    data: &RiemannData,
    inter: &IntermediateStates,
    _g: GasConstants,
) -> Result<ShockSpeeds, RiemannError> {
    let speed = |s: &GasState, rho_m: f64, side| {
        let drho = s.rho - rho_m;
        if drho.abs() <= JUMP_TOLERANCE * s.rho.max(rho_m) {
            return Err(RiemannError::DegenerateShock { side });
        }
        Ok((s.rho * s.v2 - rho_m * inter.v_m2) / drho)
    };
    Ok(ShockSpeeds {
        sigma_minus: speed(&data.left, inter.rho_m_minus, "left")?,
        sigma_plus: speed(&data.right, inter.rho_m_plus, "right")?,
        sigma_m: inter.v_m2,
    })
}

// ---------------------------------------------------------------------------
// General wave-curve solver
// ---------------------------------------------------------------------------

/// Velocity jump function of one side: shock Hugoniot branch above `p_side`,
/// isentropic rarefaction branch below.
fn wave_curve(state: &GasState, p: f64, g: GasConstants) -> f64 {
    let gamma = g.adiabatic_exponent();
    if p > state.p {
        let a = 2.0 / ((gamma + 1.0) * state.rho);
        let b = (gamma - 1.0) / (gamma + 1.0) * state.p;
        (p - state.p) * (a / (p + b)).sqrt()
    } else {
        let c = g.sound_speed(state);
        2.0 * c / (gamma - 1.0) * ((p / state.p).powf((gamma - 1.0) / (2.0 * gamma)) - 1.0)
    }
}

fn pressure_function(data: &RiemannData, p: f64, g: GasConstants) -> f64 {
    wave_curve(&data.left, p, g) + wave_curve(&data.right, p, g) + data.velocity_jump()
}

/// Root of the increasing pressure function on `(0, upper]`, or `None` for vacuum.
fn pressure_root_below(data: &RiemannData, upper: f64, g: GasConstants) -> Option<f64> {
    let f_hi = pressure_function(data, upper, g);
    if f_hi == 0.0 {
        return Some(upper);
    }
    let gamma = g.adiabatic_exponent();
    let f_zero = data.velocity_jump()
        - 2.0 * (g.sound_speed(&data.left) + g.sound_speed(&data.right)) / (gamma - 1.0);
    if f_zero >= 0.0 {
        return None;
    }
    // bisect in log p: the root may sit many decades below the end pressures
    let (mut lo, mut hi) = (upper * 1e-300_f64.max(f64::MIN_POSITIVE), upper);
    if pressure_function(data, lo, g) >= 0.0 {
        return Some(lo);
    }
    for _ in 0..400 {
        let mid = (lo * hi).sqrt();
        if pressure_function(data, mid, g) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    Some(0.5 * (lo + hi))
}

fn is_jump(a: f64, b: f64) -> bool {
    (a - b).abs() > JUMP_TOLERANCE * a.abs().max(b.abs())
}

fn is_velocity_jump(a: f64, b: f64) -> bool {
    (a - b).abs() > JUMP_TOLERANCE * a.abs().max(b.abs()).max(1.0)
}

/// Intermediate pressure via the wave-curve decomposition, valid for every
/// wave pattern.
pub fn star_pressure(data: &RiemannData, g: GasConstants) -> Result<f64, RiemannError> {
    let upper = data.left.p.max(data.right.p);
    let f_upper = pressure_function(data, upper, g);
    let p = if f_upper == 0.0 {
        upper
    } else if f_upper > 0.0 {
        pressure_root_below(data, upper, g).ok_or(RiemannError::VacuumFormation)?
    } else {
        let mut lo = upper;
        let mut hi = 2.0 * upper;
        let mut n = 0;
        while pressure_function(data, hi, g) < 0.0 {
            lo = hi;
            hi *= 2.0;
            n += 1;
            if n > MAX_BRACKET_EXPANSIONS || !hi.is_finite() {
                return Err(RiemannError::BracketingFailure { upper: hi });
            }
        }
        while hi - lo > 1e-15 * hi {
            let mid = 0.5 * (lo + hi);
            if pressure_function(data, mid, g) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    if p <= VACUUM_PRESSURE {
        return Err(RiemannError::VacuumFormation);
    }
    Ok(p)
}

/// Solves the Riemann problem with the wave-curve decomposition only,
/// bypassing the closed-form two-shock path.
pub fn solve_riemann_general(
    data: &RiemannData,
    g: GasConstants,
) -> Result<SelfSimilarSolution, RiemannError> {
    data.left.validate()?;
    data.right.validate()?;
    let p = star_pressure(data, g)?;
    let gamma = g.adiabatic_exponent();
    let (l, r) = (data.left, data.right);
    let v = 0.5 * (l.v2 + r.v2) + 0.5 * (wave_curve(&r, p, g) - wave_curve(&l, p, g));

    let star_density = |s: &GasState| {
        if p > s.p {
            let k = (gamma - 1.0) / (gamma + 1.0);
            s.rho * (p / s.p + k) / (k * p / s.p + 1.0)
        } else {
            s.rho * (p / s.p).powf(1.0 / gamma)
        }
    };
    let star_l = GasState {
        rho: star_density(&l),
        v1: l.v1,
        v2: v,
        p,
    };
    let star_r = GasState {
        rho: star_density(&r),
        v1: r.v1,
        v2: v,
        p,
    };

    let outer = |s: &GasState, star: &GasState, family: WaveFamily| -> Option<Wave> {
        if !is_jump(p, s.p) {
            return None;
        }
        let sign = if family == WaveFamily::Left {
            -1.0
        } else {
            1.0
        };
        let c = g.sound_speed(s);
        let (pre, post) = if family == WaveFamily::Left {
            (*s, *star)
        } else {
            (*star, *s)
        };
        if p > s.p {
            let speed = s.v2
                + sign
                    * c
                    * ((gamma + 1.0) / (2.0 * gamma) * p / s.p + (gamma - 1.0) / (2.0 * gamma))
                        .sqrt();
            Some(Wave {
                kind: WaveKind::Shock,
                family,
                speed_lo: speed,
                speed_hi: speed,
                pre_state: pre,
                post_state: post,
            })
        } else {
            let head = s.v2 + sign * c;
            let tail = v + sign * g.sound_speed(star);
            let (lo, hi) = if head < tail {
                (head, tail)
            } else {
                (tail, head)
            };
            Some(Wave {
                kind: WaveKind::Rarefaction,
                family,
                speed_lo: lo,
                speed_hi: hi,
                pre_state: pre,
                post_state: post,
            })
        }
    };
    let left_wave = outer(&l, &star_l, WaveFamily::Left);
    let right_wave = outer(&r, &star_r, WaveFamily::Right);
    let contact = (is_jump(star_l.rho, star_r.rho) || is_velocity_jump(star_l.v1, star_r.v1))
        .then_some(Wave {
            kind: WaveKind::Contact,
            family: WaveFamily::Middle,
            speed_lo: v,
            speed_hi: v,
            pre_state: star_l,
            post_state: star_r,
        });
    Ok(assemble(l, [left_wave, contact, right_wave], p, v, g))
}

fn assemble(
    left: GasState,
    waves: [Option<Wave>; 3],
    p_m: f64,
    v_m2: f64,
    gas: GasConstants,
) -> SelfSimilarSolution {
    let pattern = WavePattern {
        left: waves[0].map(|w| w.kind),
        contact: waves[1].is_some(),
        right: waves[2].map(|w| w.kind),
    };
    let waves: Vec<Wave> = waves.into_iter().flatten().collect();
    let mut states = vec![left];
    states.extend(waves.iter().map(|w| w.post_state));
    SelfSimilarSolution {
        waves,
        states,
        p_m,
        v_m2,
        pattern,
        gas,
    }
}

/// Full self-similar solution of the Riemann problem.
///
/// In the two-shock regime the waves are built from the closed-form relations
/// ([`solve_intermediate_pressure`], [`intermediate_states`], [`shock_speeds`]);
/// otherwise from [`solve_riemann_general`].
pub fn solve_riemann(
    data: &RiemannData,
    g: GasConstants,
) -> Result<SelfSimilarSolution, RiemannError> {
    data.left.validate()?;
    data.right.validate()?;
    let (l, r) = (data.left, data.right);
    let two_shock = two_shock_residual(data, l.p.max(r.p), g) > 0.0;
    if !two_shock {
        return solve_riemann_general(data, g);
    }

    let p_m = solve_intermediate_pressure(data, g)?;
    if !(is_jump(p_m, l.p) && is_jump(p_m, r.p)) {
        return solve_riemann_general(data, g);
    }
    let inter = intermediate_states(data, p_m, g);
    let speeds = shock_speeds(data, &inter, g)?;
    let star_l = GasState {
        rho: inter.rho_m_minus,
        v1: l.v1,
        v2: inter.v_m2,
        p: p_m,
    };
    let star_r = GasState {
        rho: inter.rho_m_plus,
        v1: r.v1,
        v2: inter.v_m2,
        p: p_m,
    };
    let shock = |family, speed, pre, post| Wave {
        kind: WaveKind::Shock,
        family,
        speed_lo: speed,
        speed_hi: speed,
        pre_state: pre,
        post_state: post,
    };
    let contact = (is_jump(star_l.rho, star_r.rho) || is_velocity_jump(star_l.v1, star_r.v1))
        .then_some(Wave {
            kind: WaveKind::Contact,
            family: WaveFamily::Middle,
            speed_lo: speeds.sigma_m,
            speed_hi: speeds.sigma_m,
            pre_state: star_l,
            post_state: star_r,
        });
    Ok(assemble(
        l,
        [
            Some(shock(WaveFamily::Left, speeds.sigma_minus, l, star_l)),
            contact,
            Some(shock(WaveFamily::Right, speeds.sigma_plus, star_r, r)),
        ],
        p_m,
        inter.v_m2,
        g,
    ))
}

pub fn classify_wave_pattern(
    data: &RiemannData,
    g: GasConstants,
) -> Result<WavePattern, RiemannError> {
    solve_riemann(data, g).map(|s| s.pattern)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn st(rho: f64, v2: f64, p: f64) -> GasState {
        GasState {
            rho,
            v1: 0.0,
            v2,
            p,
        }
    }

    #[test]
    fn paper_intermediate_pressure() {
        let data = RiemannData::paper_preset();
        let g = GasConstants::default();
        let p_m = solve_intermediate_pressure(&data, g).unwrap();
        assert_abs_diff_eq!(p_m, 7700.164, epsilon = 1e-3);
        let scale = data.velocity_jump().abs().max(1.0);
        assert!(two_shock_residual(&data, p_m, g).abs() / scale <= 1e-10);
    }

    #[test]
    fn paper_intermediate_states_and_speeds() {
        let data = RiemannData::paper_preset();
        let g = GasConstants::default();
        let p_m = solve_intermediate_pressure(&data, g).unwrap();
        let inter = intermediate_states(&data, p_m, g);
        assert_abs_diff_eq!(inter.v_m2, -75.972, epsilon = 1e-3);
        assert_abs_diff_eq!(inter.rho_m_minus, 3.996, epsilon = 1e-3);
        assert_abs_diff_eq!(inter.rho_m_plus, 39.981, epsilon = 1e-3);
        let s = shock_speeds(&data, &inter, g).unwrap();
        assert_abs_diff_eq!(s.sigma_minus, -101.329, epsilon = 1e-3);
        assert_abs_diff_eq!(s.sigma_plus, -67.957, epsilon = 1e-3);
        assert_eq!(s.sigma_m, inter.v_m2);
        assert!(s.sigma_minus < s.sigma_m && s.sigma_m < s.sigma_plus);
    }

    #[test]
    fn identical_states_give_trivial_solution() {
        let g = GasConstants::default();
        let s = st(1.3, 0.7, 2.1);
        let data = RiemannData::new(s, s).unwrap();
        assert_eq!(solve_intermediate_pressure(&data, g).unwrap(), s.p);
        let inter = intermediate_states(&data, s.p, g);
        assert_eq!(inter.v_m2, s.v2);
        assert_eq!(inter.rho_m_minus, s.rho);
        assert_eq!(inter.rho_m_plus, s.rho);
        let sol = solve_riemann(&data, g).unwrap();
        assert!(sol.waves.is_empty());
        assert_eq!(sol.states, vec![s]);
        assert_eq!(sol.pattern.to_string(), "none");
        assert_eq!(sol.sample(-5.0), s);
    }

    #[test]
    fn degenerate_shock_is_reported() {
        let data = RiemannData::new(st(1.0, 0.0, 1.0), st(1.0, 0.0, 1.0)).unwrap();
        let inter = intermediate_states(&data, 1.0, GasConstants::default());
        assert!(matches!(
            shock_speeds(&data, &inter, GasConstants::default()),
            Err(RiemannError::DegenerateShock { side: "left" })
        ));
    }

    #[test]
    fn expansive_data_has_no_two_shock_root() {
        let data = RiemannData::new(st(1.0, 0.0, 1.0), st(1.0, 3.0, 1.0)).unwrap();
        let err = solve_intermediate_pressure(&data, GasConstants::default()).unwrap_err();
        match err {
            RiemannError::NoTwoShockRoot { p_m, .. } => assert!(p_m < 1.0),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn vacuum_is_detected() {
        let data = RiemannData::new(st(1.0, -10.0, 1.0), st(1.0, 10.0, 1.0)).unwrap();
        assert_eq!(
            solve_riemann(&data, GasConstants::default()),
            Err(RiemannError::VacuumFormation)
        );
    }

    #[test]
    fn paper_pattern_is_shock_contact_shock() {
        let p =
            classify_wave_pattern(&RiemannData::paper_preset(), GasConstants::default()).unwrap();
        assert_eq!(
            p.kinds(),
            vec![WaveKind::Shock, WaveKind::Contact, WaveKind::Shock]
        );
        assert_eq!(p.to_string(), "Shock-Contact-Shock");
    }

    #[test]
    fn closed_form_agrees_with_general_solver() {
        let data = RiemannData::paper_preset();
        let g = GasConstants::default();
        let a = solve_riemann(&data, g).unwrap();
        let b = solve_riemann_general(&data, g).unwrap();
        assert_eq!(a.pattern, b.pattern);
        assert!((a.p_m - b.p_m).abs() <= 1e-9 * a.p_m);
        for (wa, wb) in a.waves.iter().zip(&b.waves) {
            assert!((wa.speed_lo - wb.speed_lo).abs() <= 1e-9 * wa.speed_lo.abs().max(1.0));
            assert!((wa.post_state.rho - wb.post_state.rho).abs() <= 1e-9 * wa.post_state.rho);
        }
    }

    #[test]
    fn tangential_jump_alone_is_a_contact() {
        let g = GasConstants::default();
        let data = RiemannData::new(
            GasState {
                rho: 1.0,
                v1: 1.0,
                v2: 0.0,
                p: 1.0,
            },
            st(1.0, 0.0, 1.0),
        )
        .unwrap();
        let sol = solve_riemann(&data, g).unwrap();
        assert_eq!(sol.pattern.kinds(), vec![WaveKind::Contact]);
        assert_eq!(sol.waves[0].speed_lo, 0.0);
    }

    #[test]
    fn rarefaction_fan_is_continuous_at_edges() {
        let g = GasConstants::default();
        let data = RiemannData::new(st(1.0, 0.0, 1.0), st(1.0, 3.0, 1.0)).unwrap();
        let sol = solve_riemann(&data, g).unwrap();
        for w in sol.waves.iter().filter(|w| w.kind == WaveKind::Rarefaction) {
            let head = rarefaction_fan_state(w, w.speed_lo, g);
            let tail = rarefaction_fan_state(w, w.speed_hi, g);
            assert_abs_diff_eq!(head.p, w.pre_state.p, epsilon = 1e-12);
            assert_abs_diff_eq!(tail.p, w.post_state.p, epsilon = 1e-12);
            assert_abs_diff_eq!(head.v2, w.pre_state.v2, epsilon = 1e-12);
            assert_abs_diff_eq!(tail.rho, w.post_state.rho, epsilon = 1e-12);
        }
    }
}
