//! Minkowski-diagram geometry: events, invariant intervals, boosts along the
//! x-axis, causal classification, causality gradients, and the axis/calibration
//! constructions used to draw frames.
//!
//! All types are immutable values and all operations are pure functions, so the
//! module is safe for unrestricted concurrent use.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MinkowskiError {
    #[error("spatial dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("spatial dimension must be 1-3, got {0}")]
    DimensionOutOfRange(usize),
    #[error("non-finite coordinate: {0}")]
    NonFiniteCoordinate(f64),
    #[error("speed of light must be positive and finite, got {0}")]
    InvalidSpeedOfLight(f64),
    #[error("boost requires |omega/c| < 1, got {0}")]
    SuperluminalBoost(f64),
    #[error("operation requires 1-d spatial events")]
    NotOneDimensional,
    #[error("degenerate event pair: both events coincide")]
    DegeneratePair,
    #[error("tolerance must be nonnegative, got {0}")]
    NegativeTolerance(f64),
    #[error("no subluminal simultaneity frame for a {0:?} pair: it would require faster-than-light propagation")]
    NotSpaceLike(SeparationClass),
    #[error("no subluminal colocation frame for a {0:?} pair")]
    NotTimeLike(SeparationClass),
}

pub type Result<T> = std::result::Result<T, MinkowskiError>;

/// Propagation-speed constant for the frame under study.
///
/// Defaults to natural units (`c = 1`); every operation takes it explicitly so
/// dimensional scenarios stay well-typed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpeedOfLight(f64);

impl SpeedOfLight {
    pub fn new(c: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(MinkowskiError::InvalidSpeedOfLight(c));
        }
        Ok(SpeedOfLight(c))
    }

    /// Natural units, `c = 1`.
    pub fn natural() -> Self {
        SpeedOfLight(1.0)
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

impl Default for SpeedOfLight {
    fn default() -> Self {
        SpeedOfLight::natural()
    }
}

/// A point `(r, ct)` in a frame. Spatial dimension is 1-3 and fixed at
/// construction; `ct` carries length units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Event {
    coords: [f64; 3],
    dim: usize,
    ct: f64,
}

impl Event {
    pub fn new(spatial: &[f64], ct: f64) -> Result<Self> {
        if spatial.is_empty() || spatial.len() > 3 {
            return Err(MinkowskiError::DimensionOutOfRange(spatial.len()));
        }
        for &v in spatial {
            if !v.is_finite() {
                return Err(MinkowskiError::NonFiniteCoordinate(v));
            }
        }
        if !ct.is_finite() {
            return Err(MinkowskiError::NonFiniteCoordinate(ct));
        }
        let mut coords = [0.0; 3];
        coords[..spatial.len()].copy_from_slice(spatial);
        Ok(Event {
            coords,
            dim: spatial.len(),
            ct,
        })
    }

    /// 1-d event `(x, ct)`, the form used by boosts and gradients.
    pub fn one_d(x: f64, ct: f64) -> Result<Self> {
        Event::new(&[x], ct)
    }

    pub(crate) fn one_d_unchecked(x: f64, ct: f64) -> Self {
        Event {
            coords: [x, 0.0, 0.0],
            dim: 1,
            ct,
        }
    }

    pub fn spatial(&self) -> &[f64] {
        &self.coords[..self.dim]
    }

    /// First spatial coordinate.
    pub fn x(&self) -> f64 {
        self.coords[0]
    }

    pub fn ct(&self) -> f64 {
        self.ct
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_one_d(&self) -> bool {
        self.dim == 1
    }
}

/// A boost along the x-axis with velocity ratio `Ω/c` and the derived scaling
/// parameter `κ = 1/√(1−(Ω/c)²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Boost {
    omega_ratio: f64,
    kappa: f64,
}

impl Boost {
    pub fn from_ratio(omega_ratio: f64) -> Result<Self> {
        if !(omega_ratio.is_finite() && omega_ratio.abs() < 1.0) {
            return Err(MinkowskiError::SuperluminalBoost(omega_ratio));
        }
        Ok(Boost {
            omega_ratio,
            kappa: 1.0 / (1.0 - omega_ratio * omega_ratio).sqrt(),
        })
    }

    pub fn from_velocity(omega: f64, c: SpeedOfLight) -> Result<Self> {
        Boost::from_ratio(omega / c.value())
    }

    pub fn identity() -> Self {
        Boost {
            omega_ratio: 0.0,
            kappa: 1.0,
        }
    }

    pub fn omega_ratio(&self) -> f64 {
        self.omega_ratio
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// Relativistic velocity addition: the single boost equivalent to applying
    /// `self` then `other`.
    pub fn compose(&self, other: &Boost) -> Boost {
        let combined =
            (self.omega_ratio + other.omega_ratio) / (1.0 + self.omega_ratio * other.omega_ratio);
        Boost::from_ratio(combined).expect("composition of subluminal boosts is subluminal")
    }
}

/// Sign class of the invariant interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SeparationClass {
    TimeLike,
    LightLike,
    SpaceLike,
}

/// Classification of an event pair together with the invariant `s²` that
/// produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Separation {
    pub class: SeparationClass,
    pub s_squared: f64,
}

/// Causality gradient `∂ = |Δx|/|Δct|` between two 1-d events; `connected`
/// holds iff `∂ ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Gradient {
    pub value: f64,
    pub connected: bool,
}

/// Invariant interval `s² = c²(t₁−t₂)² − |r⃗₁−r⃗₂|²` between two events.
pub fn interval_squared(e1: &Event, e2: &Event, c: SpeedOfLight) -> Result<f64> {
    if e1.dim != e2.dim {
        return Err(MinkowskiError::DimensionMismatch(e1.dim, e2.dim));
    }
    // ct carries length units already: c²(t₁−t₂)² = (ct₁−ct₂)².
    let _ = c;
    let dt = e1.ct - e2.ct;
    let mut dr2 = 0.0;
    for i in 0..e1.dim {
        let d = e1.coords[i] - e2.coords[i];
        dr2 += d * d;
    }
    Ok(dt * dt - dr2)
}

/// Classify an event pair by the sign of `s²` with a tolerance band `eps`
/// around the light cone.
pub fn classify(e1: &Event, e2: &Event, c: SpeedOfLight, eps: f64) -> Result<Separation> {
    if eps < 0.0 {
        return Err(MinkowskiError::NegativeTolerance(eps));
    }
    let s_squared = interval_squared(e1, e2, c)?;
    let class = if s_squared > eps {
        SeparationClass::TimeLike
    } else if s_squared < -eps {
        SeparationClass::SpaceLike
    } else {
        SeparationClass::LightLike
    };
    Ok(Separation { class, s_squared })
}

/// Default classification band: `1e-12 · max(1, |s²|)`.
pub fn default_eps(s_squared: f64) -> f64 {
    1e-12 * s_squared.abs().max(1.0)
}

/// [`classify`] with the default scale-aware tolerance.
pub fn default_classify(e1: &Event, e2: &Event, c: SpeedOfLight) -> Result<Separation> {
    let s_squared = interval_squared(e1, e2, c)?;
    classify(e1, e2, c, default_eps(s_squared))
}

/// Causality gradient `∂ = |Δx|/|Δct|` from `origin` to `a` (1-d events).
///
/// A pair with `Δct = 0` but `Δx ≠ 0` has an infinite gradient and is reported
/// as disconnected; a fully degenerate pair is an error.
pub fn gradient(origin: &Event, a: &Event) -> Result<Gradient> {
    if !(origin.is_one_d() && a.is_one_d()) {
        return Err(MinkowskiError::NotOneDimensional);
    }
    let dx = (a.x() - origin.x()).abs();
    let dct = (a.ct() - origin.ct()).abs();
    if dct == 0.0 {
        if dx == 0.0 {
            return Err(MinkowskiError::DegeneratePair);
        }
        return Ok(Gradient {
            value: f64::INFINITY,
            connected: false,
        });
    }
    let value = dx / dct;
    Ok(Gradient {
        value,
        connected: value <= 1.0,
    })
}

/// Apply a boost along x: `x′ = κ(x − (Ω/c)·ct)`, `ct′ = κ(ct − (Ω/c)·x)`.
pub fn boost(e: &Event, b: &Boost, c: SpeedOfLight) -> Result<Event> {
    if !e.is_one_d() {
        return Err(MinkowskiError::NotOneDimensional);
    }
    let _ = c;
    let ratio = b.omega_ratio;
    let x = b.kappa * (e.x() - ratio * e.ct());
    let ct = b.kappa * (e.ct() - ratio * e.x());
    Ok(Event::one_d_unchecked(x, ct))
}

/// Velocity `Ω` of the frame in which a space-like pair is simultaneous:
/// `Ω = c²(t₁−t₂)/(x₁−x₂)`.
pub fn simultaneity_velocity(e1: &Event, e2: &Event, c: SpeedOfLight) -> Result<f64> {
    if !(e1.is_one_d() && e2.is_one_d()) {
        return Err(MinkowskiError::NotOneDimensional);
    }
    let sep = default_classify(e1, e2, c)?;
    if sep.class != SeparationClass::SpaceLike {
        return Err(MinkowskiError::NotSpaceLike(sep.class));
    }
    // c²(t₁−t₂) = c·(ct₁−ct₂)
    Ok(c.value() * (e1.ct() - e2.ct()) / (e1.x() - e2.x()))
}

/// Velocity `Ω` of the frame in which a time-like pair happens at the same
/// place: `Ω = (x₁−x₂)/(t₁−t₂)`.
pub fn colocation_velocity(e1: &Event, e2: &Event, c: SpeedOfLight) -> Result<f64> {
    if !(e1.is_one_d() && e2.is_one_d()) {
        return Err(MinkowskiError::NotOneDimensional);
    }
    let sep = default_classify(e1, e2, c)?;
    if sep.class != SeparationClass::TimeLike {
        return Err(MinkowskiError::NotTimeLike(sep.class));
    }
    Ok(c.value() * (e1.x() - e2.x()) / (e1.ct() - e2.ct()))
}

/// Slope descriptor of an axis drawn in `(x, ct)` coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum AxisSlope {
    /// The axis coincides with the ct-axis (unboosted frame).
    Vertical,
    /// Rise in `ct` per unit run in `x`.
    Slope(f64),
}

/// The boosted frame's axes as lines of the reference frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AxisLines {
    pub ct_axis: AxisSlope,
    pub x_axis: AxisSlope,
}

/// Axis lines of the boosted frame: the ct′-axis is `ct = x/(Ω/c)` and the
/// x′-axis is `ct = (Ω/c)·x`.
pub fn axis_lines(b: &Boost) -> AxisLines {
    let ratio = b.omega_ratio;
    let ct_axis = if ratio == 0.0 {
        AxisSlope::Vertical
    } else {
        AxisSlope::Slope(1.0 / ratio)
    };
    AxisLines {
        ct_axis,
        x_axis: AxisSlope::Slope(ratio),
    }
}

/// Membership test for the unit calibration hyperbola `x² − (ct)² = 1`
/// (the `s̄² = −1` length-unit curve, preserved by every boost).
pub fn calibration_check(e: &Event, eps: f64) -> Result<bool> {
    if !e.is_one_d() {
        return Err(MinkowskiError::NotOneDimensional);
    }
    if eps < 0.0 {
        return Err(MinkowskiError::NegativeTolerance(eps));
    }
    Ok((e.x() * e.x() - e.ct() * e.ct() - 1.0).abs() <= eps)
}
