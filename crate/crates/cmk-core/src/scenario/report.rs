//! The equivalence report: paired QG/S measure values, transformed
//! coordinates, flag plans for both representations, and the region
//! inclusion diagnostics.

use super::flags::{lightline_counterpart, plan_flags, FlagPlan};
use super::{EventCoords, PartyRole, Result, Scenario, ScenarioError};
use crate::causaloid::{
    composite_info, inclusion_report, outcome_set, procedure_set, scale_data, scale_region,
    CompositeRegion, Datum, DatumStore, InclusionReport, RegionScope, SpaceSets, SpaceTag,
};
use crate::eta::{dt_between, lift_to_s, project_to_qg, QGEvent};
use crate::measures::{qg_measure, MeasureId};
use crate::minkowski::Event;
use serde::Serialize;

/// One event in both representations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransformedEvent {
    pub id: String,
    pub role: PartyRole,
    pub x_prime: f64,
    pub x: f64,
    pub ct: f64,
}

/// Paired evaluation of one requested measure, or the reason it was skipped.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureEntry {
    pub id: MeasureId,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub qg_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abs_diff: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

/// Coordinate transform summary, the payload of the `transform` subcommand.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransformSummary {
    pub c: f64,
    pub beta: f64,
    pub theta_deg: f64,
    pub eta: f64,
    pub gamma: f64,
    pub space: SpaceTag,
    pub events: Vec<TransformedEvent>,
    pub dx_prime_ab: f64,
    pub dx_ab: f64,
    pub dt_ab: f64,
}

/// Full equivalence report for a QG scenario.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub c: f64,
    pub beta: f64,
    pub theta_deg: f64,
    pub eta: f64,
    pub gamma: f64,
    pub tolerance: f64,
    pub transformed: Vec<TransformedEvent>,
    pub dx_prime_ab: f64,
    pub dx_ab: f64,
    pub dt_ab: f64,
    pub measures: Vec<MeasureEntry>,
    pub qg_flags: FlagPlan,
    pub s_lightline_flags: FlagPlan,
    pub inclusions: InclusionReport,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl TransformSummary {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }
}

fn transformed_event(e: &super::ScenarioEvent, sc: &Scenario) -> Result<TransformedEvent> {
    let (x_prime, x, ct) = match e.coords {
        EventCoords::Qg { x_prime } => {
            let lifted = lift_to_s(&QGEvent::new(x_prime)?, &sc.strength);
            (x_prime, lifted.x(), lifted.ct())
        }
        EventCoords::S { x, ct } => {
            let projected = project_to_qg(&Event::one_d(x, ct)?, &sc.strength)?;
            (projected.x_prime, x, ct)
        }
    };
    Ok(TransformedEvent {
        id: e.id.clone(),
        role: e.role,
        x_prime,
        x,
        ct,
    })
}

/// Transform every event of a scenario between the two representations.
pub fn transform_summary(sc: &Scenario) -> Result<TransformSummary> {
    let events = sc
        .events
        .iter()
        .map(|e| transformed_event(e, sc))
        .collect::<Result<Vec<_>>>()?;
    let a = events
        .iter()
        .find(|e| e.role == PartyRole::A)
        .expect("validated scenario has role A");
    let b = events
        .iter()
        .find(|e| e.role == PartyRole::B)
        .expect("validated scenario has role B");
    let dx_prime_ab = (b.x_prime - a.x_prime).abs();
    Ok(TransformSummary {
        c: sc.c.value(),
        beta: sc.strength.beta(),
        theta_deg: sc.strength.theta_deg(),
        eta: sc.strength.eta(),
        gamma: sc.strength.gamma(),
        space: sc.space,
        events,
        dx_prime_ab,
        dx_ab: sc.strength.eta() * dx_prime_ab,
        dt_ab: dt_between(&sc.strength, dx_prime_ab, sc.c),
    })
}

/// The full datum store of a party: every (setting, outcome) pair recorded at
/// its region coordinate.
fn party_store(coord: f64, settings: &[String], outcomes: &[String]) -> DatumStore {
    let mut store = DatumStore::new();
    for s in settings {
        for o in outcomes {
            store.insert(Datum::new(coord, s.clone(), o.clone()));
        }
    }
    store
}

fn region_sets(sc: &Scenario, store: &DatumStore, comp: &CompositeRegion) -> Result<SpaceSets> {
    let scope = RegionScope::Composite(comp.clone());
    let mut alphabet: Vec<String> = sc.pmf.a_settings().to_vec();
    for s in sc.pmf.b_settings() {
        if !alphabet.contains(s) {
            alphabet.push(s.clone());
        }
    }
    let mut selected = vec![sc.selection.a_setting.clone()];
    if !selected.contains(&sc.selection.b_setting) {
        selected.push(sc.selection.b_setting.clone());
    }
    let outcomes = outcome_set(&scope, store, &selected, &alphabet)?;
    let procedures = procedure_set(&scope, store);
    let info = composite_info(comp, store);
    Ok(SpaceSets::new(&outcomes, &procedures, &info))
}

fn inclusion_diagnostics(sc: &Scenario) -> Result<InclusionReport> {
    let coord_of = |role: PartyRole| match sc.party(role).coords {
        EventCoords::Qg { x_prime } => x_prime,
        EventCoords::S { x, .. } => x,
    };
    let a_coord = coord_of(PartyRole::A);
    let b_coord = coord_of(PartyRole::B);

    let mut store = party_store(a_coord, sc.pmf.a_settings(), sc.pmf.a_outcomes());
    store.extend(party_store(
        b_coord,
        sc.pmf.b_settings(),
        sc.pmf.b_outcomes(),
    ));
    let comp = CompositeRegion::from_coords(&[a_coord, b_coord], SpaceTag::Qg)?;

    let eta = sc.strength.eta();
    let scaled_store = scale_data(&store, eta)?;
    let scaled_comp = scale_region(&comp, eta)?;

    let qg_sets = region_sets(sc, &store, &comp)?;
    let s_sets = region_sets(sc, &scaled_store, &scaled_comp)?;
    Ok(inclusion_report(&qg_sets, &s_sets))
}

/// Evaluate every requested measure in both representations and assemble the
/// report. Declared-only measures are listed as skipped with the reason.
pub fn run_equivalence(sc: &Scenario, tolerance: f64) -> Result<Report> {
    if sc.space != SpaceTag::Qg {
        return Err(ScenarioError::NotQgSpace("run_equivalence"));
    }
    let summary = transform_summary(sc)?;
    let probability = sc.probability();
    let ctx = sc.quantum_context();

    let mut measures = Vec::new();
    for &id in &sc.measures {
        if !id.is_computable() {
            measures.push(MeasureEntry {
                id,
                qg_value: None,
                s_value: None,
                abs_diff: None,
                equal: None,
                skipped: Some(format!(
                    "{id} is declared-only: no computational procedure is registered"
                )),
            });
            continue;
        }
        let pair = qg_measure(&probability, &sc.strength, id, &ctx)?;
        measures.push(MeasureEntry {
            id,
            qg_value: Some(pair.qg_value),
            s_value: Some(pair.s_value),
            abs_diff: Some(pair.abs_diff()),
            equal: Some(pair.equal_within(tolerance)),
            skipped: None,
        });
    }

    Ok(Report {
        c: summary.c,
        beta: summary.beta,
        theta_deg: summary.theta_deg,
        eta: summary.eta,
        gamma: summary.gamma,
        tolerance,
        transformed: summary.events,
        dx_prime_ab: summary.dx_prime_ab,
        dx_ab: summary.dx_ab,
        dt_ab: summary.dt_ab,
        measures,
        qg_flags: plan_flags(sc)?,
        s_lightline_flags: plan_flags(&lightline_counterpart(sc)?)?,
        inclusions: inclusion_diagnostics(sc)?,
    })
}
