//! Ideal gas obeying the Boyle–Mariotte law `p = ρθ`, `e = c_v θ`.
//!
//! States are stored in terms of pressure; temperature is always derived as
//! `θ = p / ρ`. All quantities are nondimensional.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GasError {
    #[error("density must be positive and finite, got {0}")]
    NonPositiveDensity(f64),
    #[error("pressure must be positive and finite, got {0}")]
    NonPositivePressure(f64),
    #[error("velocity components must be finite")]
    NonFiniteVelocity,
    #[error("c_v must be positive and finite, got {0}")]
    InvalidHeatCapacity(f64),
}

/// Specific heat at constant volume.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GasConstants {
    c_v: f64,
}

impl GasConstants {
    pub fn new(c_v: f64) -> Result<Self, GasError> {
        if c_v.is_finite() && c_v > 0.0 {
            Ok(Self { c_v })
        } else {
            Err(GasError::InvalidHeatCapacity(c_v))
        }
    }

    pub fn c_v(&self) -> f64 {
        self.c_v
    }

    /// Adiabatic exponent `γ = 1 + 1/c_v`.
    pub fn adiabatic_exponent(&self) -> f64 {
        1.0 + 1.0 / self.c_v
    }

    /// Speed of sound `√(γ p / ρ)`.
    pub fn sound_speed(&self, state: &GasState) -> f64 {
        (self.adiabatic_exponent() * state.p / state.rho).sqrt()
    }
}

impl Default for GasConstants {
    /// Monatomic gas, `c_v = 3/2`.
    fn default() -> Self {
        Self { c_v: 1.5 }
    }
}

/// One constant fluid state: density, 2-D velocity `(v1, v2)` and pressure.
///
/// `v2` is the component normal to the initial discontinuity (the `x₂`
/// direction); `v1` is tangential.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GasState {
    pub rho: f64,
    pub v1: f64,
    pub v2: f64,
    pub p: f64,
}

impl GasState {
    pub fn new(rho: f64, v1: f64, v2: f64, p: f64) -> Result<Self, GasError> {
        let state = Self { rho, v1, v2, p };
        state.validate()?;
        Ok(state)
    }

    pub fn validate(&self) -> Result<(), GasError> {
        if !(self.rho.is_finite() && self.rho > 0.0) {
            return Err(GasError::NonPositiveDensity(self.rho));
        }
        if !(self.p.is_finite() && self.p > 0.0) {
            return Err(GasError::NonPositivePressure(self.p));
        }
        if !(self.v1.is_finite() && self.v2.is_finite()) {
            return Err(GasError::NonFiniteVelocity);
        }
        Ok(())
    }

    pub fn temperature(&self) -> f64 {
        self.p / self.rho
    }

    /// `s = c_v log θ − log ρ`.
    pub fn specific_entropy(&self, g: GasConstants) -> f64 {
        g.c_v * self.temperature().ln() - self.rho.ln()
    }

    /// Entropy per unit volume, `ρ s`.
    pub fn entropy_density(&self, g: GasConstants) -> f64 {
        self.rho * self.specific_entropy(g)
    }

    pub fn momentum(&self) -> f64 {
        self.rho * self.v2
    }

    /// Total energy density `½ρ|v|² + c_v p`.
    pub fn total_energy(&self, g: GasConstants) -> f64 {
        0.5 * self.rho * (self.v1 * self.v1 + self.v2 * self.v2) + g.c_v * self.p
    }

    /// Same state with `v2 ↦ −v2`, the reflection `x₂ ↦ −x₂`.
    pub fn reflected(&self) -> Self {
        Self {
            v2: -self.v2,
            ..*self
        }
    }
}

/// Specific entropy in the product form `log(p^{c_v} / ρ^{c_v+1})`.
///
/// Algebraically identical to [`GasState::specific_entropy`]; kept as a
/// separate route so the two can be checked against each other.
pub fn specific_entropy_from_pressure(rho: f64, p: f64, g: GasConstants) -> f64 {
    g.c_v * p.ln() - (g.c_v + 1.0) * rho.ln()
}
