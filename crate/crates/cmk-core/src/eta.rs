//! Representation-correction layer between the flat, time-free event
//! coordinates (`x′`, `ct′ = 0`) and the standard frame (`x`, `ct`).
//!
//! The strength parameter `β ∈ [0, 1)` drives everything: the axis angle
//! `θ = atan(β)`, the region-coordinate factor `η = 1/√(1−β²)`, and the axis
//! unit scale `γ = √((1+β²)/(1−β²))`. Region coordinates map as `x = η·x′`;
//! lifted events sit on the x′-axis line `ct = β·x`, which reproduces the
//! pairwise time-difference relation `Δt = ηβ·Δx′/c`.

use crate::minkowski::{Event, MinkowskiError, SpeedOfLight};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EtaError {
    #[error("beta must satisfy 0 <= beta < 1, got {0}")]
    BetaOutOfRange(f64),
    #[error("theta must satisfy 0 <= theta < 45 degrees, got {0}")]
    ThetaOutOfRange(f64),
    #[error("eta must satisfy eta >= 1, got {0}")]
    EtaOutOfRange(f64),
    #[error("dt must be nonnegative, got {0}")]
    NegativeDt(f64),
    #[error("dt = {0} with dx_prime = 0 has no solution in 0 <= beta < 1")]
    NoBetaSolution(f64),
    #[error("dt = 0 with dx_prime = 0 leaves beta indeterminate")]
    BetaIndeterminate,
    #[error("length must be nonnegative, got {0}")]
    NegativeLength(f64),
    #[error("scale unit must be positive and finite, got {0}")]
    InvalidScaleUnit(f64),
    #[error("non-finite input: {0}")]
    NonFinite(f64),
    #[error(transparent)]
    Minkowski(#[from] MinkowskiError),
}

pub type Result<T> = std::result::Result<T, EtaError>;

/// The β/θ/η/γ parameter bundle. β is canonical; the other three are derived
/// once at construction and never drift.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QGStrength {
    beta: f64,
    theta_deg: f64,
    eta: f64,
    gamma: f64,
}

impl QGStrength {
    pub fn from_beta(beta: f64) -> Result<Self> {
        if !(beta.is_finite() && (0.0..1.0).contains(&beta)) {
            return Err(EtaError::BetaOutOfRange(beta));
        }
        let one_minus_b2 = 1.0 - beta * beta;
        Ok(QGStrength {
            beta,
            theta_deg: beta.atan().to_degrees(),
            eta: 1.0 / one_minus_b2.sqrt(),
            gamma: ((1.0 + beta * beta) / one_minus_b2).sqrt(),
        })
    }

    pub fn from_theta_deg(theta_deg: f64) -> Result<Self> {
        if !(theta_deg.is_finite() && (0.0..45.0).contains(&theta_deg)) {
            return Err(EtaError::ThetaOutOfRange(theta_deg));
        }
        QGStrength::from_beta(theta_deg.to_radians().tan())
    }

    pub fn from_eta(eta: f64) -> Result<Self> {
        if !(eta.is_finite() && eta >= 1.0) {
            return Err(EtaError::EtaOutOfRange(eta));
        }
        QGStrength::from_beta((eta * eta - 1.0).sqrt() / eta)
    }

    /// The reference strength `β = 0` of the standard frame.
    pub fn reference() -> Self {
        QGStrength {
            beta: 0.0,
            theta_deg: 0.0,
            eta: 1.0,
            gamma: 1.0,
        }
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn theta_deg(&self) -> f64 {
        self.theta_deg
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

/// A time-free event: a location `x′` on the x′-axis with `ct′` pinned to 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QGEvent {
    pub x_prime: f64,
}

impl QGEvent {
    pub fn new(x_prime: f64) -> Result<Self> {
        if !x_prime.is_finite() {
            return Err(EtaError::NonFinite(x_prime));
        }
        Ok(QGEvent { x_prime })
    }

    /// Always zero: the representation carries no time information.
    pub fn ct_prime(&self) -> f64 {
        0.0
    }
}

/// Unit lengths of the two axis systems, related by `qg_unit = γ · s_unit`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleUnit {
    s_space_unit: f64,
    qg_space_unit: f64,
}

impl ScaleUnit {
    pub fn new(s_space_unit: f64, strength: &QGStrength) -> Result<Self> {
        if !(s_space_unit.is_finite() && s_space_unit > 0.0) {
            return Err(EtaError::InvalidScaleUnit(s_space_unit));
        }
        Ok(ScaleUnit {
            s_space_unit,
            qg_space_unit: strength.gamma() * s_space_unit,
        })
    }

    pub fn s_space_unit(&self) -> f64 {
        self.s_space_unit
    }

    pub fn qg_space_unit(&self) -> f64 {
        self.qg_space_unit
    }
}

/// Project a 1-d standard-frame event onto the x′-axis: `x′ = x/η`, time
/// information discarded.
pub fn project_to_qg(e: &Event, s: &QGStrength) -> Result<QGEvent> {
    if !e.is_one_d() {
        return Err(EtaError::Minkowski(MinkowskiError::NotOneDimensional));
    }
    Ok(QGEvent {
        x_prime: e.x() / s.eta,
    })
}

/// Lift a time-free event into the standard frame on the x′-axis line:
/// `x = η·x′`, `ct = β·x`.
pub fn lift_to_s(q: &QGEvent, s: &QGStrength) -> Event {
    let x = s.eta * q.x_prime;
    Event::one_d_unchecked(x, s.beta * x)
}

/// Time difference in the standard frame of two lifted events separated by
/// `Δx′`: `Δt = ηβ·|Δx′|/c`.
pub fn dt_between(s: &QGStrength, dx_prime: f64, c: SpeedOfLight) -> f64 {
    s.eta * s.beta * dx_prime.abs() / c.value()
}

/// Recover the strength from an observed `(Δt, Δx′)` pair: the unique
/// `β ∈ [0, 1)` with `β²/(1−β²) = (Δt·c)²/(Δx′)²`.
pub fn beta_from(dt: f64, dx_prime: f64, c: SpeedOfLight) -> Result<f64> {
    if !(dt.is_finite() && dt >= 0.0) {
        return Err(EtaError::NegativeDt(dt));
    }
    if dx_prime == 0.0 {
        if dt > 0.0 {
            return Err(EtaError::NoBetaSolution(dt));
        }
        return Err(EtaError::BetaIndeterminate);
    }
    let ratio = dt * c.value() / dx_prime.abs();
    let k = ratio * ratio;
    Ok((k / (1.0 + k)).sqrt())
}

/// Scale a nonnegative length by the axis factor γ.
pub fn scale_length(l: f64, s: &QGStrength) -> Result<f64> {
    if !(l.is_finite() && l >= 0.0) {
        return Err(EtaError::NegativeLength(l));
    }
    Ok(s.gamma * l)
}
