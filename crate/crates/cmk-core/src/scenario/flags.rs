//! Flag (lightline) planning from the coordinator to the local parties.
//!
//! In the standard space the coordinator emits a light pulse per party and
//! connectivity follows the causality gradient. In the QG space every event
//! sits at `ct′ = 0`, so no flag can connect the origin to any party: the
//! emission predicate is false for every beam.

use super::{EventCoords, PartyRole, Result, Scenario, ScenarioEvent};
use crate::causaloid::SpaceTag;
use crate::eta::lift_to_s;
use crate::eta::QGEvent;
use crate::minkowski::{gradient, Event};
use serde::Serialize;

/// One flag beam from the coordinator to a party.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlagLine {
    pub party: String,
    pub role: PartyRole,
    /// Causality gradient from the coordinator; `None` means unbounded
    /// (the pair is purely spatial).
    pub gradient: Option<f64>,
    pub connected: bool,
    /// Emission predicate: true exactly when a light pulse is emitted, which
    /// happens in the standard space for connected pairs only.
    pub emitted: bool,
}

/// The per-party flag beams of one scenario.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlagPlan {
    pub space: SpaceTag,
    pub flags: Vec<FlagLine>,
}

impl FlagPlan {
    pub fn connected_count(&self) -> usize {
        self.flags.iter().filter(|f| f.connected).count()
    }
}

fn event_point(e: &ScenarioEvent) -> Event {
    match e.coords {
        // QG events carry no time information
        EventCoords::Qg { x_prime } => Event::one_d(x_prime, 0.0).expect("validated coordinates"),
        EventCoords::S { x, ct } => Event::one_d(x, ct).expect("validated coordinates"),
    }
}

/// Plan the coordinator's flag beams in the scenario's own space.
pub fn plan_flags(sc: &Scenario) -> Result<FlagPlan> {
    let origin = Event::one_d(0.0, 0.0).expect("origin");
    let mut flags = Vec::new();
    for party in sc.flag_targets() {
        let g = gradient(&origin, &event_point(party))?;
        let connected = g.connected;
        flags.push(FlagLine {
            party: party.id.clone(),
            role: party.role,
            gradient: g.value.is_finite().then_some(g.value),
            connected,
            emitted: sc.space == SpaceTag::S && connected,
        });
    }
    Ok(FlagPlan {
        space: sc.space,
        flags,
    })
}

/// The standard-space counterpart of a QG scenario with lightline geometry:
/// each party's region lifts to `x = η·x′` and the event is placed on the
/// lightline from the coordinator, `ct = |x|`, so every flag has gradient 1.
pub fn lightline_counterpart(sc: &Scenario) -> Result<Scenario> {
    if sc.space != SpaceTag::Qg {
        return Err(super::ScenarioError::NotQgSpace("lightline_counterpart"));
    }
    let mut out = sc.clone();
    out.space = SpaceTag::S;
    for e in &mut out.events {
        let EventCoords::Qg { x_prime } = e.coords else {
            unreachable!("QG scenario has QG coordinates");
        };
        if e.role == PartyRole::Coordinator {
            e.coords = EventCoords::S { x: 0.0, ct: 0.0 };
        } else {
            let lifted = lift_to_s(&QGEvent::new(x_prime)?, &sc.strength);
            e.coords = EventCoords::S {
                x: lifted.x(),
                ct: lifted.x().abs(),
            };
        }
    }
    Ok(out)
}
