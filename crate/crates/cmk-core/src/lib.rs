//! Core library of the correlation-measure kit (`cmk`): a toolkit for
//! checking that correlation measures evaluated over a causally-unbiased,
//! time-free event representation coincide with their standard spacetime
//! evaluations once region coordinates are corrected by the η factor.
//!
//! The crate is organized by layer:
//!
//! - [`minkowski`] — events, invariant intervals, boosts, causal
//!   classification, causality gradients, axis constructions.
//! - [`causaloid`] — the region data model: data tuples, measurement
//!   information, procedure and outcome sets, region scaling, inclusion
//!   diagnostics.
//! - [`eta`] — the β/θ/η/γ strength bundle and the coordinate transform
//!   between the time-free representation and the standard frame.
//! - [`measures`] — entropies, mutual/coherent information, the Holevo
//!   quantity, capacity solvers, and the paired QG/S evaluation.
//! - [`scenario`] — the JSON scenario format, flag planning, equivalence
//!   reports, curve and diagram emission.
//!
//! All types are immutable values and all operations are pure functions.
//!
//! # Example
//!
//! ```
//! use cmk_core::eta::{lift_to_s, project_to_qg, QGEvent, QGStrength};
//!
//! let strength = QGStrength::from_beta(0.6)?;
//! assert_eq!(strength.eta(), 1.25);
//!
//! // a time-free event lifts onto the x'-axis of the standard frame,
//! // and projecting it back recovers the original coordinate
//! let lifted = lift_to_s(&QGEvent::new(2.0)?, &strength);
//! assert_eq!((lifted.x(), lifted.ct()), (2.5, 1.5));
//! assert_eq!(project_to_qg(&lifted, &strength)?.x_prime, 2.0);
//! # Ok::<(), cmk_core::eta::EtaError>(())
//! ```

pub mod causaloid;
pub mod eta;
pub mod measures;
pub mod minkowski;
pub mod scenario;

pub use causaloid::SpaceTag;
pub use eta::{QGEvent, QGStrength, ScaleUnit};
pub use measures::{MeasureId, MeasurePair, QuantumContext, ScenarioProbability};
pub use minkowski::{Boost, Event, Separation, SeparationClass, SpeedOfLight};
pub use scenario::{FlagPlan, Report, Scenario};
