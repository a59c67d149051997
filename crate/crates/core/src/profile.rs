//! Fields prescribed by the arbitrary-entropy-profile construction.
//!
//! The domain is split into cells `Q_i` carrying constant initial density
//! `ρ₀ⁱ` and temperature `θ₀ⁱ`. Only integrals of cellwise-constant fields
//! enter, so each cell is represented by its volume. Given a step profile
//! `S̃(t)` the construction fixes
//!
//! * `θ(t) = exp(S̃(t)) θ₀ⁱ`,
//! * `s(t) = c_v S̃(t) + c_v log θ₀ⁱ − log ρ₀ⁱ`,
//! * kinetic energy `Λ − c_v exp(S̃(t)) ρ₀ⁱ θ₀ⁱ`,
//!
//! so that the total entropy is `S₀ + c_v S̃(t) M₀` and the total energy
//! density equals `Λ` everywhere.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gas::GasConstants;

pub const DEFAULT_MARGIN: f64 = 0.05;
/// Relative tolerance of the total-entropy identity.
pub const BALANCE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProfileError {
    #[error("profile needs as many values as breakpoints ({times} times, {values} values)")]
    LengthMismatch { times: usize, values: usize },
    #[error("breakpoint times must be finite, strictly increasing and inside [0, T]")]
    BadBreakpoints,
    #[error("onset time delta = {delta} and horizon T = {horizon} must satisfy 0 < delta <= T")]
    BadWindow { delta: f64, horizon: f64 },
    #[error("cell {index}: volume, rho0 and theta0 must be positive and finite")]
    BadCell { index: usize },
    #[error("partition has no cells")]
    EmptyPartition,
    #[error("EpsilonOutOfRange: epsilon = {epsilon} must lie in (0, {delta})")]
    EpsilonOutOfRange { epsilon: f64, delta: f64 },
    #[error("InfeasibleLambda: kinetic energy {kinetic} <= 0 in cell {cell} at t = {time}")]
    InfeasibleLambda {
        cell: usize,
        time: f64,
        kinetic: f64,
    },
    #[error("sample time {0} outside the admissible window")]
    SampleOutOfRange(f64),
    #[error("margin must be positive and finite, got {0}")]
    BadMargin(f64),
}

impl ProfileError {
    pub fn name(&self) -> &'static str {
        match self {
            Self::EpsilonOutOfRange { .. } => "EpsilonOutOfRange",
            Self::InfeasibleLambda { .. } => "InfeasibleLambda",
            _ => "InvalidProfileInput",
        }
    }
}

/// Right-continuous step function on `[0, T]`: zero before the first
/// breakpoint, `values[k]` on `[times[k], times[k+1])`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyProfile {
    delta: f64,
    horizon: f64,
    times: Vec<f64>,
    values: Vec<f64>,
}

impl EntropyProfile {
    /// Builds the step function. Membership in the admissible profile class
    /// is checked separately by [`validate_profile`].
    pub fn new(
        delta: f64,
        horizon: f64,
        times: Vec<f64>,
        values: Vec<f64>,
    ) -> Result<Self, ProfileError> {
        if times.len() != values.len() {
            return Err(ProfileError::LengthMismatch {
                times: times.len(),
                values: values.len(),
            });
        }
        if !(delta.is_finite() && horizon.is_finite() && delta > 0.0 && delta <= horizon) {
            return Err(ProfileError::BadWindow { delta, horizon });
        }
        let in_range = times
            .iter()
            .all(|t| t.is_finite() && (0.0..=horizon).contains(t));
        if !in_range || times.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ProfileError::BadBreakpoints);
        }
        Ok(Self {
            delta,
            horizon,
            times,
            values,
        })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn breakpoints(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.times.iter().copied().zip(self.values.iter().copied())
    }

    /// `S̃(t)`.
    pub fn value(&self, t: f64) -> f64 {
        match self.times.partition_point(|&bt| bt <= t) {
            0 => 0.0,
            k => self.values[k - 1],
        }
    }

    /// Left limit `S̃(T−)`.
    pub fn terminal_value(&self) -> f64 {
        match self.times.partition_point(|&bt| bt < self.horizon) {
            0 => 0.0,
            k => self.values[k - 1],
        }
    }

    /// Largest value attained on `[0, T)`.
    pub fn sup_before_horizon(&self) -> f64 {
        self.times
            .iter()
            .zip(&self.values)
            .filter(|(t, _)| **t < self.horizon)
            .fold(0.0_f64, |m, (_, v)| m.max(*v))
    }

    /// The profile advanced by `epsilon`: `t ↦ S̃(t + ε)` on `[0, T − ε]`.
    pub fn shifted(&self, epsilon: f64) -> Result<Self, ProfileError> {
        if !(epsilon > 0.0 && epsilon < self.delta) {
            return Err(ProfileError::EpsilonOutOfRange {
                epsilon,
                delta: self.delta,
            });
        }
        let mut times = Vec::with_capacity(self.times.len());
        let mut values = Vec::with_capacity(self.values.len());
        let mut carried = None;
        for (t, v) in self.breakpoints() {
            let ts = t - epsilon;
            if ts <= 0.0 {
                carried = Some(v);
            } else {
                times.push(ts);
                values.push(v);
            }
        }
        if let Some(v) = carried {
            times.insert(0, 0.0);
            values.insert(0, v);
        }
        Self::new(self.delta - epsilon, self.horizon - epsilon, times, values)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProfileViolation {
    /// `S̃(t) ≠ 0` for some `t < δ`.
    Onset,
    Nondecreasing,
    /// `S̃(T−)` not finite.
    Bounded,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileValidation {
    pub valid: bool,
    pub violations: Vec<ProfileViolation>,
}

pub fn validate_profile(profile: &EntropyProfile) -> ProfileValidation {
    let mut violations = Vec::new();
    if profile
        .breakpoints()
        .any(|(t, v)| t < profile.delta && v != 0.0)
    {
        violations.push(ProfileViolation::Onset);
    }
    let mut prev = 0.0;
    let mut monotone = true;
    for (_, v) in profile.breakpoints() {
        if v < prev {
            monotone = false;
        }
        prev = v;
    }
    if !monotone {
        violations.push(ProfileViolation::Nondecreasing);
    }
    if profile.values.iter().any(|v| !v.is_finite()) {
        violations.push(ProfileViolation::Bounded);
    }
    ProfileValidation {
        valid: violations.is_empty(),
        violations,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub volume: f64,
    pub rho0: f64,
    pub theta0: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionSpec {
    cells: Vec<Cell>,
}

impl PartitionSpec {
    pub fn new(cells: Vec<Cell>) -> Result<Self, ProfileError> {
        if cells.is_empty() {
            return Err(ProfileError::EmptyPartition);
        }
        for (index, c) in cells.iter().enumerate() {
            let ok = [c.volume, c.rho0, c.theta0]
                .iter()
                .all(|x| x.is_finite() && *x > 0.0);
            if !ok {
                return Err(ProfileError::BadCell { index });
            }
        }
        Ok(Self { cells })
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// `M₀ = Σ |Q_i| ρ₀ⁱ`.
    pub fn total_mass(&self) -> f64 {
        self.cells.iter().map(|c| c.volume * c.rho0).sum()
    }

    /// Initial total entropy `S₀ = Σ |Q_i| ρ₀ⁱ (c_v log θ₀ⁱ − log ρ₀ⁱ)`.
    pub fn initial_entropy(&self, g: GasConstants) -> f64 {
        self.cells
            .iter()
            .map(|c| c.volume * c.rho0 * (g.c_v() * c.theta0.ln() - c.rho0.ln()))
            .sum()
    }

    /// `(min θ₀ⁱ, max θ₀ⁱ)`.
    pub fn temperature_bounds(&self) -> (f64, f64) {
        self.cells
            .iter()
            .fold((f64::INFINITY, 0.0_f64), |(lo, hi), c| {
                (lo.min(c.theta0), hi.max(c.theta0))
            })
    }
}

/// `θᵢ(t) = exp(S̃(t)) θ₀ⁱ`.
pub fn temperature_field(partition: &PartitionSpec, profile: &EntropyProfile, t: f64) -> Vec<f64> {
    let factor = profile.value(t).exp();
    partition.cells.iter().map(|c| factor * c.theta0).collect()
}

/// Cellwise entropy density `ρ₀ⁱ sᵢ(t)`.
pub fn entropy_field(
    partition: &PartitionSpec,
    profile: &EntropyProfile,
    g: GasConstants,
    t: f64,
) -> Vec<f64> {
    let s_tilde = profile.value(t);
    partition
        .cells
        .iter()
        .map(|c| c.rho0 * (g.c_v() * s_tilde + g.c_v() * c.theta0.ln() - c.rho0.ln()))
        .collect()
}

fn internal_energy(c: &Cell, s_tilde: f64, g: GasConstants) -> f64 {
    g.c_v() * s_tilde.exp() * c.rho0 * c.theta0
}

/// Smallest admissible total energy density inflated by `1 + margin`:
/// `Λ = (1 + margin) c_v exp(sup S̃) max_i ρ₀ⁱ θ₀ⁱ`.
pub fn minimal_lambda(
    partition: &PartitionSpec,
    profile: &EntropyProfile,
    g: GasConstants,
    margin: f64,
) -> Result<f64, ProfileError> {
    if !(margin.is_finite() && margin > 0.0) {
        return Err(ProfileError::BadMargin(margin));
    }
    let peak = partition
        .cells
        .iter()
        .map(|c| c.rho0 * c.theta0)
        .fold(0.0, f64::max);
    Ok((1.0 + margin) * g.c_v() * profile.sup_before_horizon().exp() * peak)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BalanceSample {
    pub time: f64,
    pub total_mass: f64,
    pub total_entropy: f64,
    pub expected: f64,
    pub relative_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BalanceIncrement {
    pub from: f64,
    pub to: f64,
    pub increment: f64,
    pub expected: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyBalanceReport {
    pub epsilon: f64,
    pub initial_entropy: f64,
    pub total_mass: f64,
    pub samples: Vec<BalanceSample>,
    pub increments: Vec<BalanceIncrement>,
    pub max_relative_error: f64,
    pub nondecreasing: bool,
}

impl EntropyBalanceReport {
    pub fn holds(&self) -> bool {
        self.max_relative_error <= BALANCE_TOLERANCE
    }
}

/// Checks `Σ|Q_i| ρ₀ⁱ sᵢ(t) = S₀ + c_v S̃(t+ε) M₀` at each sample time for
/// the fields built from the ε-advanced profile.
pub fn verify_entropy_balance(
    partition: &PartitionSpec,
    profile: &EntropyProfile,
    g: GasConstants,
    epsilon: f64,
    sample_times: &[f64],
) -> Result<EntropyBalanceReport, ProfileError> {
    let advanced = profile.shifted(epsilon)?;
    let s0 = partition.initial_entropy(g);
    let m0 = partition.total_mass();

    let mut samples = Vec::with_capacity(sample_times.len());
    for &t in sample_times {
        if !(t >= 0.0 && t < advanced.horizon) {
            return Err(ProfileError::SampleOutOfRange(t));
        }
        let total: f64 = entropy_field(partition, &advanced, g, t)
            .iter()
            .zip(&partition.cells)
            .map(|(q, c)| c.volume * q)
            .sum();
        let s_tilde = advanced.value(t);
        let expected = s0 + g.c_v() * s_tilde * m0;
        let mass: f64 = partition.cells.iter().map(|c| c.volume * c.rho0).sum();
        let scale = expected
            .abs()
            .max(s0.abs())
            .max(g.c_v() * m0 * s_tilde.abs())
            .max(f64::MIN_POSITIVE);
        samples.push(BalanceSample {
            time: t,
            total_mass: mass,
            total_entropy: total,
            expected,
            relative_error: (total - expected).abs() / scale,
        });
    }
    let increments = samples
        .windows(2)
        .map(|w| BalanceIncrement {
            from: w[0].time,
            to: w[1].time,
            increment: w[1].total_entropy - w[0].total_entropy,
            expected: g.c_v() * m0 * (advanced.value(w[1].time) - advanced.value(w[0].time)),
        })
        .collect::<Vec<_>>();
    let nondecreasing = samples
        .windows(2)
        .all(|w| w[1].time < w[0].time || w[1].total_entropy >= w[0].total_entropy);
    Ok(EntropyBalanceReport {
        epsilon,
        initial_entropy: s0,
        total_mass: m0,
        max_relative_error: samples.iter().map(|s| s.relative_error).fold(0.0, f64::max),
        samples,
        increments,
        nondecreasing,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellEnergy {
    pub cell: usize,
    pub time: f64,
    pub kinetic: f64,
    pub internal: f64,
    /// `|e_kin + e_int − Λ|`.
    pub energy_defect: f64,
    /// `|m| = √(2 ρ₀ⁱ e_kin)`.
    pub momentum_magnitude: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyReport {
    pub lambda: f64,
    pub entries: Vec<CellEnergy>,
    pub min_kinetic: f64,
    pub max_energy_defect: f64,
}

/// Per cell and sample time: prescribed kinetic energy `Λ − c_v e^{S̃} ρ₀θ₀`,
/// its positivity, and the momentum magnitude it implies.
pub fn total_energy_check(
    partition: &PartitionSpec,
    profile: &EntropyProfile,
    g: GasConstants,
    lambda: f64,
    sample_times: &[f64],
) -> Result<EnergyReport, ProfileError> {
    let mut entries = Vec::with_capacity(sample_times.len() * partition.cells.len());
    for &time in sample_times {
        let s_tilde = profile.value(time);
        for (cell, c) in partition.cells.iter().enumerate() {
            let internal = internal_energy(c, s_tilde, g);
            let kinetic = lambda - internal;
            if kinetic.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
                return Err(ProfileError::InfeasibleLambda {
                    cell,
                    time,
                    kinetic,
                });
            }
            entries.push(CellEnergy {
                cell,
                time,
                kinetic,
                internal,
                energy_defect: (kinetic + internal - lambda).abs(),
                momentum_magnitude: (2.0 * c.rho0 * kinetic).sqrt(),
            });
        }
    }
    Ok(EnergyReport {
        lambda,
        min_kinetic: entries
            .iter()
            .map(|e| e.kinetic)
            .fold(f64::INFINITY, f64::min),
        max_energy_defect: entries.iter().map(|e| e.energy_defect).fold(0.0, f64::max),
        entries,
    })
}
