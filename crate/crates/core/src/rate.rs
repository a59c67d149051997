//! Entropy production rates of piecewise-constant fans.
//!
//! A fan depends on `x₂/t` only, so on the box `[−L, L]²` the total entropy
//! grows linearly in time as long as every front stays inside the box. The
//! rate is reported per unit width, i.e. divided by the `2L` coming from the
//! `x₁` integration.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gas::{GasConstants, GasState};
use crate::riemann::{SelfSimilarSolution, WaveKind};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RateError {
    #[error("fan needs exactly one more state than fronts ({fronts} fronts, {states} states)")]
    ShapeMismatch { fronts: usize, states: usize },
    #[error("front speeds must be finite and strictly increasing")]
    UnorderedFronts,
    #[error("invalid region state: {0}")]
    InvalidState(#[from] crate::gas::GasError),
    #[error("solution contains a rarefaction fan and is not piecewise constant")]
    NotPiecewiseConstant,
    #[error("WavesLeftBox: a front at speed {speed} leaves [-{half_width}, {half_width}] before t = {time}")]
    WavesLeftBox {
        speed: f64,
        half_width: f64,
        time: f64,
    },
    #[error("time window must satisfy 0 <= t1 < t2, got [{t1}, {t2}]")]
    InvalidWindow { t1: f64, t2: f64 },
}

/// Piecewise-constant function of `x₂/t`: `region_states[k]` lies between
/// `front_speeds[k-1]` and `front_speeds[k]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseFan {
    front_speeds: Vec<f64>,
    region_states: Vec<GasState>,
}

impl PiecewiseFan {
    pub fn new(front_speeds: Vec<f64>, region_states: Vec<GasState>) -> Result<Self, RateError> {
        if region_states.len() != front_speeds.len() + 1 {
            return Err(RateError::ShapeMismatch {
                fronts: front_speeds.len(),
                states: region_states.len(),
            });
        }
        if front_speeds.iter().any(|s| !s.is_finite())
            || front_speeds.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(RateError::UnorderedFronts);
        }
        for s in &region_states {
            s.validate()?;
        }
        Ok(Self {
            front_speeds,
            region_states,
        })
    }

    pub fn constant(state: GasState) -> Result<Self, RateError> {
        Self::new(Vec::new(), vec![state])
    }

    /// Fan of a self-similar Riemann solution. Fails if the solution contains
    /// a rarefaction wave.
    pub fn from_solution(sol: &SelfSimilarSolution) -> Result<Self, RateError> {
        if sol.waves.iter().any(|w| w.kind == WaveKind::Rarefaction) {
            return Err(RateError::NotPiecewiseConstant);
        }
        Self::new(
            sol.waves.iter().map(|w| w.speed_lo).collect(),
            sol.states.clone(),
        )
    }

    pub fn front_speeds(&self) -> &[f64] {
        &self.front_speeds
    }

    pub fn region_states(&self) -> &[GasState] {
        &self.region_states
    }

    pub fn max_abs_speed(&self) -> f64 {
        self.front_speeds.iter().fold(0.0, |m, s| m.max(s.abs()))
    }

    /// Fan with one front removed, merging the two regions it separated into
    /// the upstream one.
    pub fn without_front(&self, index: usize) -> Result<Self, RateError> {
        let mut speeds = self.front_speeds.clone();
        let mut states = self.region_states.clone();
        speeds.remove(index);
        states.remove(index + 1);
        Self::new(speeds, states)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyRateReport {
    /// `D_L / (2L)`.
    pub rate_per_width: f64,
    /// `σ_k ((ρs)_k − (ρs)_{k+1})` for every front.
    pub per_front_contributions: Vec<f64>,
    /// Largest front speed magnitude; fronts stay in `[−L, L]` for
    /// `t < L / max_front_speed`.
    pub max_front_speed: f64,
}

impl EntropyRateReport {
    /// Full rate `D_L` on the box `[−L, L]²`.
    pub fn rate_on_box(&self, half_width: f64) -> f64 {
        2.0 * half_width * self.rate_per_width
    }

    /// Largest time for which every front stays inside `[−L, L]`.
    pub fn validity_time(&self, half_width: f64) -> f64 {
        if self.max_front_speed > 0.0 {
            half_width / self.max_front_speed
        } else {
            f64::INFINITY
        }
    }
}

/// Closed-form entropy production rate `Σ_k σ_k ((ρs)_k − (ρs)_{k+1})` per unit width.
pub fn entropy_rate(fan: &PiecewiseFan, g: GasConstants) -> EntropyRateReport {
    let q: Vec<f64> = fan
        .region_states
        .iter()
        .map(|s| s.entropy_density(g))
        .collect();
    let per_front_contributions: Vec<f64> = fan
        .front_speeds
        .iter()
        .zip(q.windows(2))
        .map(|(sigma, w)| sigma * (w[0] - w[1]))
        .collect();
    EntropyRateReport {
        rate_per_width: per_front_contributions.iter().sum(),
        per_front_contributions,
        max_front_speed: fan.max_abs_speed(),
    }
}

/// `∫_{−L}^{L} ρs dx₂` of the fan at time `t`, integrated region by region.
pub fn box_entropy(
    fan: &PiecewiseFan,
    g: GasConstants,
    half_width: f64,
    t: f64,
) -> Result<f64, RateError> {
    box_entropy_dd(fan, g, half_width, t).map(|v| v.value())
}

/// Same integral carried in double-double arithmetic, so that differences of
/// nearby times keep their leading digits.
fn box_entropy_dd(
    fan: &PiecewiseFan,
    g: GasConstants,
    half_width: f64,
    t: f64,
) -> Result<Dd, RateError> {
    check_inside(fan, half_width, t)?;
    let n = fan.region_states.len();
    let mut total = Dd::from(0.0);
    for k in 0..n {
        let lo = if k == 0 {
            Dd::from(-half_width)
        } else {
            Dd::product(fan.front_speeds[k - 1], t)
        };
        let hi = if k + 1 == n {
            Dd::from(half_width)
        } else {
            Dd::product(fan.front_speeds[k], t)
        };
        total = total + (hi - lo).scale(fan.region_states[k].entropy_density(g));
    }
    Ok(total)
}

/// Unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi) / 2`.
#[derive(Debug, Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    fn from(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    fn two_sum(a: f64, b: f64) -> Self {
        let s = a + b;
        let bb = s - a;
        Self {
            hi: s,
            lo: (a - (s - bb)) + (b - bb),
        }
    }

    fn renormalize(hi: f64, lo: f64) -> Self {
        let s = hi + lo;
        Self {
            hi: s,
            lo: lo - (s - hi),
        }
    }

    fn product(a: f64, b: f64) -> Self {
        let p = a * b;
        Self {
            hi: p,
            lo: a.mul_add(b, -p),
        }
    }

    fn scale(self, x: f64) -> Self {
        let p = Self::product(self.hi, x);
        Self::renormalize(p.hi, p.lo + self.lo * x)
    }

    fn value(self) -> f64 {
        self.hi + self.lo
    }
}

impl std::ops::Add for Dd {
    type Output = Dd;
    fn add(self, other: Dd) -> Dd {
        let s = Dd::two_sum(self.hi, other.hi);
        Dd::renormalize(s.hi, s.lo + self.lo + other.lo)
    }
}

impl std::ops::Sub for Dd {
    type Output = Dd;
    fn sub(self, other: Dd) -> Dd {
        self + Dd {
            hi: -other.hi,
            lo: -other.lo,
        }
    }
}

fn check_inside(fan: &PiecewiseFan, half_width: f64, t: f64) -> Result<(), RateError> {
    match fan.front_speeds.iter().find(|s| s.abs() * t >= half_width) {
        Some(&speed) => Err(RateError::WavesLeftBox {
            speed,
            half_width,
            time: t,
        }),
        None => Ok(()),
    }
}

/// Finite-difference rate `(I(t2) − I(t1)) / (t2 − t1)` of the box entropy
/// per unit width.
pub fn entropy_rate_oracle(
    fan: &PiecewiseFan,
    g: GasConstants,
    half_width: f64,
    t1: f64,
    t2: f64,
) -> Result<f64, RateError> {
    if !(t1 >= 0.0 && t2 > t1) {
        return Err(RateError::InvalidWindow { t1, t2 });
    }
    let i1 = box_entropy_dd(fan, g, half_width, t1)?;
    let i2 = box_entropy_dd(fan, g, half_width, t2)?;
    Ok((i2 - i1).value() / (Dd::from(t2) - Dd::from(t1)).value())
}

/// Outcome of comparing two entropy rates for identical initial data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RateOrdering {
    FirstGreater,
    SecondGreater,
    Incomparable,
}

/// Strict comparison of per-width rates with no tolerance band.
pub fn compare_rates(a: &EntropyRateReport, b: &EntropyRateReport) -> RateOrdering {
    match a.rate_per_width.partial_cmp(&b.rate_per_width) {
        Some(Ordering::Less) => RateOrdering::SecondGreater,
        Some(Ordering::Greater) => RateOrdering::FirstGreater,
        _ => RateOrdering::Incomparable,
    }
}

/// Total entropies `(S_a(t), S_b(t))` over the square `[−L, L]²`.
pub fn diperna_totals(
    a: &PiecewiseFan,
    b: &PiecewiseFan,
    g: GasConstants,
    half_width: f64,
    t: f64,
) -> Result<(f64, f64), RateError> {
    let width = 2.0 * half_width;
    Ok((
        width * box_entropy(a, g, half_width, t)?,
        width * box_entropy(b, g, half_width, t)?,
    ))
}
