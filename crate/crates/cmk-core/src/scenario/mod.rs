//! Scenario ingestion and orchestration: the JSON scenario format, flag
//! planning, equivalence reports, and curve/diagram emission.
//!
//! A scenario file is a single UTF-8 JSON document. Parsing validates the
//! whole document and reports every violation it finds, not just the first.

mod diagram;
mod fig3;
mod flags;
mod report;

pub use diagram::emit_diagram;
pub use fig3::emit_fig3_curves;
pub use flags::{lightline_counterpart, plan_flags, FlagLine, FlagPlan};
pub use report::{run_equivalence, transform_summary, MeasureEntry, Report, TransformedEvent};

use crate::causaloid::{CausaloidError, SpaceTag};
use crate::eta::{EtaError, QGStrength};
use crate::measures::{
    CMatrix, Channel, ConditionalJointPmf, CqEnsemble, DensityMatrix, KrausChannel, MeasureError,
    MeasureId, MeasureSelection, QuantumContext, RegionBinding, ScenarioProbability,
    StochasticMatrix,
};
use crate::minkowski::{MinkowskiError, SpeedOfLight};
use nalgebra::Complex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("scenario is not valid JSON: {0}")]
    Syntax(String),
    #[error("scenario validation failed:\n  - {}", violations.join("\n  - "))]
    Invalid { violations: Vec<String> },
    #[error("{0} requires a scenario with QG coordinates")]
    NotQgSpace(&'static str),
    #[error("samples must be at least 2, got {0}")]
    TooFewSamples(usize),
    #[error("curve range must be finite with min <= max, got {0}..{1}")]
    BadRange(f64, f64),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Eta(#[from] EtaError),
    #[error(transparent)]
    Minkowski(#[from] MinkowskiError),
    #[error(transparent)]
    Causaloid(#[from] CausaloidError),
}

pub type Result<T> = std::result::Result<T, ScenarioError>;

/// Role of a scenario event.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartyRole {
    Coordinator,
    A,
    B,
    Other,
}

impl PartyRole {
    fn name(&self) -> &'static str {
        match self {
            PartyRole::Coordinator => "coordinator",
            PartyRole::A => "a",
            PartyRole::B => "b",
            PartyRole::Other => "other",
        }
    }
}

/// Coordinates of a scenario event, in whichever space the scenario declares.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EventCoords {
    Qg { x_prime: f64 },
    S { x: f64, ct: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioEvent {
    pub id: String,
    pub role: PartyRole,
    pub coords: EventCoords,
}

/// A validated scenario: geometry, alphabets, probability tables, optional
/// quantum data, and the requested measures.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub c: SpeedOfLight,
    pub strength: QGStrength,
    pub space: SpaceTag,
    pub events: Vec<ScenarioEvent>,
    pub pmf: ConditionalJointPmf,
    pub selection: MeasureSelection,
    pub ensemble: Option<CqEnsemble>,
    pub channel: Option<Channel>,
    pub measures: Vec<MeasureId>,
}

impl Scenario {
    /// Parse and validate a scenario document.
    pub fn parse(bytes: &[u8]) -> Result<Scenario> {
        parse_scenario(bytes)
    }

    pub fn coordinator(&self) -> &ScenarioEvent {
        self.events
            .iter()
            .find(|e| e.role == PartyRole::Coordinator)
            .expect("validated scenario has a coordinator")
    }

    pub fn party(&self, role: PartyRole) -> &ScenarioEvent {
        self.events
            .iter()
            .find(|e| e.role == role)
            .expect("validated scenario has roles A and B")
    }

    /// Parties that receive a flag, in declaration order.
    pub fn flag_targets(&self) -> impl Iterator<Item = &ScenarioEvent> {
        self.events
            .iter()
            .filter(|e| e.role != PartyRole::Coordinator)
    }

    /// The scenario's probability bound to the A/B region coordinates.
    pub fn probability(&self) -> ScenarioProbability {
        let coord_of = |e: &ScenarioEvent| match e.coords {
            EventCoords::Qg { x_prime } => x_prime,
            EventCoords::S { x, .. } => x,
        };
        ScenarioProbability::new(
            self.pmf.clone(),
            RegionBinding {
                a_coord: coord_of(self.party(PartyRole::A)),
                b_coord: coord_of(self.party(PartyRole::B)),
            },
            self.space,
            self.selection.clone(),
            None,
        )
        .expect("validated scenario probability")
    }

    pub fn quantum_context(&self) -> QuantumContext {
        QuantumContext {
            ensemble: self.ensemble.clone(),
            channel: self.channel.clone(),
            solver_tol: None,
            solver_max_iter: None,
        }
    }

    /// Override the strength parameter, revalidating the domain.
    pub fn with_beta(mut self, beta: f64) -> Result<Scenario> {
        self.strength = QGStrength::from_beta(beta).map_err(|e| ScenarioError::Invalid {
            violations: vec![e.to_string()],
        })?;
        Ok(self)
    }

    /// Override the requested measures, revalidating data requirements.
    pub fn with_measures(mut self, names: &[String]) -> Result<Scenario> {
        let mut violations = Vec::new();
        let mut measures = Vec::new();
        for name in names {
            match name.parse::<MeasureId>() {
                Ok(id) => measures.push(id),
                Err(e) => violations.push(e.to_string()),
            }
        }
        violations.extend(measure_requirements(
            &measures,
            self.ensemble.as_ref(),
            self.channel.as_ref(),
        ));
        if !violations.is_empty() {
            return Err(ScenarioError::Invalid { violations });
        }
        self.measures = measures;
        Ok(self)
    }
}

/// Violations raised by measures whose required data is absent.
fn measure_requirements(
    measures: &[MeasureId],
    ensemble: Option<&CqEnsemble>,
    channel: Option<&Channel>,
) -> Vec<String> {
    let mut violations = Vec::new();
    for id in measures {
        match id {
            MeasureId::Holevo | MeasureId::HolevoCapacity if ensemble.is_none() => {
                violations.push(format!("measure {id} requires an `ensemble`"));
            }
            MeasureId::ClassicalCapacity => match channel {
                Some(Channel::Classical(_)) => {}
                _ => violations.push(format!("measure {id} requires a classical `channel`")),
            },
            _ => {}
        }
    }
    violations
}

// ---------------------------------------------------------------------------
// raw document shapes

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    c: Option<f64>,
    beta: Option<f64>,
    theta_deg: Option<f64>,
    events: Vec<RawEvent>,
    alphabets: RawParties,
    settings: RawParties,
    pmf: Vec<RawTable>,
    selection: Option<RawSelection>,
    ensemble: Option<RawEnsemble>,
    channel: Option<RawChannel>,
    #[serde(default)]
    measures: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEvent {
    id: String,
    role: PartyRole,
    x_prime: Option<f64>,
    x: Option<f64>,
    ct: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParties {
    a: Vec<String>,
    b: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTable {
    a_setting: String,
    b_setting: String,
    table: Vec<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSelection {
    a_setting: String,
    b_setting: String,
    a_outcome: String,
}

/// Complex entries are `[re, im]` pairs; states and Kraus operators are
/// row-major square matrices of them.
type RawComplexMatrix = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEnsemble {
    priors: Vec<f64>,
    states: Vec<RawComplexMatrix>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawChannel {
    Classical { matrix: Vec<Vec<f64>> },
    Quantum { kraus: Vec<RawComplexMatrix> },
    Identity { dim: usize },
}

fn complex_matrix(raw: &RawComplexMatrix) -> CMatrix {
    let rows = raw.len();
    let cols = raw.first().map_or(0, |r| r.len());
    CMatrix::from_fn(rows, cols, |i, j| Complex::new(raw[i][j][0], raw[i][j][1]))
}

// ---------------------------------------------------------------------------
// validation

struct Violations(Vec<String>);

impl Violations {
    fn push(&mut self, msg: impl Into<String>) {
        self.0.push(msg.into());
    }
}

/// Parse a scenario document, collecting every validation violation.
pub fn parse_scenario(bytes: &[u8]) -> Result<Scenario> {
    let raw: RawScenario =
        serde_json::from_slice(bytes).map_err(|e| ScenarioError::Syntax(e.to_string()))?;
    let mut v = Violations(Vec::new());

    let c = match raw.c {
        None => Some(SpeedOfLight::natural()),
        Some(value) => match SpeedOfLight::new(value) {
            Ok(c) => Some(c),
            Err(e) => {
                v.push(e.to_string());
                None
            }
        },
    };

    let strength = match (raw.beta, raw.theta_deg) {
        (Some(beta), None) => match QGStrength::from_beta(beta) {
            Ok(s) => Some(s),
            Err(e) => {
                v.push(e.to_string());
                None
            }
        },
        (None, Some(theta)) => match QGStrength::from_theta_deg(theta) {
            Ok(s) => Some(s),
            Err(e) => {
                v.push(e.to_string());
                None
            }
        },
        (Some(_), Some(_)) => {
            v.push("declare exactly one of `beta` or `theta_deg`, not both");
            None
        }
        (None, None) => {
            v.push("missing strength parameter: declare `beta` or `theta_deg`");
            None
        }
    };

    let (events, space) = validate_events(&raw.events, &mut v);
    validate_alphabet("alphabets.a", &raw.alphabets.a, &mut v);
    validate_alphabet("alphabets.b", &raw.alphabets.b, &mut v);
    validate_alphabet("settings.a", &raw.settings.a, &mut v);
    validate_alphabet("settings.b", &raw.settings.b, &mut v);

    let pmf = validate_pmf_tables(&raw, &mut v);
    let selection = validate_selection(&raw, &mut v);
    let ensemble = validate_ensemble(&raw, &mut v);
    let channel = validate_channel(&raw, ensemble.as_ref(), &mut v);
    let measures = validate_measures(&raw, ensemble.as_ref(), channel.as_ref(), &mut v);

    if !v.0.is_empty() {
        return Err(ScenarioError::Invalid { violations: v.0 });
    }

    Ok(Scenario {
        c: c.unwrap(),
        strength: strength.unwrap(),
        space: space.unwrap(),
        events,
        pmf: pmf.unwrap(),
        selection: selection.unwrap(),
        ensemble,
        channel,
        measures,
    })
}

fn validate_events(raw: &[RawEvent], v: &mut Violations) -> (Vec<ScenarioEvent>, Option<SpaceTag>) {
    let mut events = Vec::new();
    let mut space: Option<SpaceTag> = None;
    let mut ids = std::collections::BTreeSet::new();

    for e in raw {
        if !ids.insert(e.id.clone()) {
            v.push(format!("duplicate event id {:?}", e.id));
        }
        let coords = match (e.x_prime, e.x, e.ct) {
            (Some(x_prime), None, None) => {
                if !x_prime.is_finite() {
                    v.push(format!("event {:?}: non-finite x_prime", e.id));
                    continue;
                }
                Some((EventCoords::Qg { x_prime }, SpaceTag::Qg))
            }
            (None, Some(x), Some(ct)) => {
                if !x.is_finite() || !ct.is_finite() {
                    v.push(format!("event {:?}: non-finite coordinates", e.id));
                    continue;
                }
                Some((EventCoords::S { x, ct }, SpaceTag::S))
            }
            _ => {
                v.push(format!(
                    "event {:?}: give either `x_prime` (QG space) or both `x` and `ct` (S space)",
                    e.id
                ));
                None
            }
        };
        let Some((coords, tag)) = coords else {
            continue;
        };
        match space {
            None => space = Some(tag),
            Some(existing) if existing != tag => {
                v.push(format!(
                    "event {:?}: coordinate form mixes spaces within one scenario",
                    e.id
                ));
            }
            _ => {}
        }
        events.push(ScenarioEvent {
            id: e.id.clone(),
            role: e.role,
            coords,
        });
    }

    let count = |role: PartyRole| events.iter().filter(|e| e.role == role).count();
    if count(PartyRole::Coordinator) != 1 {
        v.push(format!(
            "scenario needs exactly one coordinator event, found {}",
            count(PartyRole::Coordinator)
        ));
    }
    for role in [PartyRole::A, PartyRole::B] {
        if count(role) != 1 {
            v.push(format!(
                "scenario needs exactly one event with role {:?}, found {}",
                role.name(),
                count(role)
            ));
        }
    }
    for e in &events {
        let at_origin = match e.coords {
            EventCoords::Qg { x_prime } => x_prime == 0.0,
            EventCoords::S { x, ct } => x == 0.0 && ct == 0.0,
        };
        if e.role == PartyRole::Coordinator && !at_origin {
            v.push(format!("coordinator {:?} must sit at the origin", e.id));
        }
        if e.role != PartyRole::Coordinator && at_origin {
            v.push(format!(
                "event {:?} coincides with the coordinator origin",
                e.id
            ));
        }
    }
    (events, space)
}

fn validate_alphabet(name: &str, symbols: &[String], v: &mut Violations) {
    if symbols.is_empty() {
        v.push(format!("{name} must be nonempty"));
    }
    let mut seen = std::collections::BTreeSet::new();
    for s in symbols {
        if !seen.insert(s) {
            v.push(format!("{name} has duplicate symbol {s:?}"));
        }
    }
}

fn validate_pmf_tables(raw: &RawScenario, v: &mut Violations) -> Option<ConditionalJointPmf> {
    let violations_before = v.0.len();
    let mut seen = std::collections::BTreeSet::new();
    for t in &raw.pmf {
        if !raw.settings.a.contains(&t.a_setting) {
            v.push(format!(
                "pmf table names unknown A setting {:?}",
                t.a_setting
            ));
        }
        if !raw.settings.b.contains(&t.b_setting) {
            v.push(format!(
                "pmf table names unknown B setting {:?}",
                t.b_setting
            ));
        }
        if !seen.insert((t.a_setting.clone(), t.b_setting.clone())) {
            v.push(format!(
                "duplicate pmf table for setting pair ({}, {})",
                t.a_setting, t.b_setting
            ));
        }
        if t.table.len() != raw.alphabets.a.len()
            || t.table.iter().any(|r| r.len() != raw.alphabets.b.len())
        {
            v.push(format!(
                "pmf table ({}, {}) must be {} x {}",
                t.a_setting,
                t.b_setting,
                raw.alphabets.a.len(),
                raw.alphabets.b.len()
            ));
            continue;
        }
        if let Some(&bad) = t
            .table
            .iter()
            .flatten()
            .find(|p| !p.is_finite() || **p < 0.0)
        {
            v.push(format!(
                "pmf table ({}, {}) has a negative or non-finite entry {bad}",
                t.a_setting, t.b_setting
            ));
            continue;
        }
        let sum: f64 = t.table.iter().flatten().sum();
        if (sum - 1.0).abs() > 1e-9 {
            v.push(format!(
                "pmf table for setting pair ({}, {}) sums to {sum}, expected 1 within 1e-9",
                t.a_setting, t.b_setting
            ));
        }
    }
    for sa in &raw.settings.a {
        for sb in &raw.settings.b {
            if !seen.contains(&(sa.clone(), sb.clone())) {
                v.push(format!("missing pmf table for setting pair ({sa}, {sb})"));
            }
        }
    }
    if v.0.len() > violations_before {
        return None;
    }
    match ConditionalJointPmf::new(
        raw.alphabets.a.clone(),
        raw.alphabets.b.clone(),
        raw.settings.a.clone(),
        raw.settings.b.clone(),
        raw.pmf
            .iter()
            .map(|t| (t.a_setting.clone(), t.b_setting.clone(), t.table.clone()))
            .collect(),
    ) {
        Ok(pmf) => Some(pmf),
        Err(e) => {
            v.push(e.to_string());
            None
        }
    }
}

fn validate_selection(raw: &RawScenario, v: &mut Violations) -> Option<MeasureSelection> {
    let selection = match &raw.selection {
        Some(s) => MeasureSelection {
            a_setting: s.a_setting.clone(),
            b_setting: s.b_setting.clone(),
            a_outcome: s.a_outcome.clone(),
        },
        None => MeasureSelection {
            a_setting: raw.settings.a.first().cloned().unwrap_or_default(),
            b_setting: raw.settings.b.first().cloned().unwrap_or_default(),
            a_outcome: raw.alphabets.a.first().cloned().unwrap_or_default(),
        },
    };
    let mut ok = true;
    if !raw.settings.a.contains(&selection.a_setting) {
        v.push(format!(
            "selection names unknown A setting {:?}",
            selection.a_setting
        ));
        ok = false;
    }
    if !raw.settings.b.contains(&selection.b_setting) {
        v.push(format!(
            "selection names unknown B setting {:?}",
            selection.b_setting
        ));
        ok = false;
    }
    if !raw.alphabets.a.contains(&selection.a_outcome) {
        v.push(format!(
            "selection names unknown A outcome {:?}",
            selection.a_outcome
        ));
        ok = false;
    }
    ok.then_some(selection)
}

fn validate_ensemble(raw: &RawScenario, v: &mut Violations) -> Option<CqEnsemble> {
    let raw_ens = raw.ensemble.as_ref()?;
    let mut states = Vec::new();
    let mut ok = true;
    for (i, s) in raw_ens.states.iter().enumerate() {
        match DensityMatrix::new(complex_matrix(s)) {
            Ok(dm) => states.push(dm),
            Err(e) => {
                v.push(format!("ensemble state {i}: {e}"));
                ok = false;
            }
        }
    }
    if !ok {
        return None;
    }
    match CqEnsemble::new(raw_ens.priors.clone(), states) {
        Ok(ens) => Some(ens),
        Err(e) => {
            v.push(format!("ensemble: {e}"));
            None
        }
    }
}

fn validate_channel(
    raw: &RawScenario,
    ensemble: Option<&CqEnsemble>,
    v: &mut Violations,
) -> Option<Channel> {
    let channel = match raw.channel.as_ref()? {
        RawChannel::Classical { matrix } => match StochasticMatrix::new(matrix.clone()) {
            Ok(m) => Some(Channel::Classical(m)),
            Err(e) => {
                v.push(format!("channel: {e}"));
                None
            }
        },
        RawChannel::Quantum { kraus } => {
            match KrausChannel::new(kraus.iter().map(complex_matrix).collect()) {
                Ok(k) => Some(Channel::Quantum(k)),
                Err(e) => {
                    v.push(format!("channel: {e}"));
                    None
                }
            }
        }
        RawChannel::Identity { dim } => match KrausChannel::identity(*dim) {
            Ok(k) => Some(Channel::Quantum(k)),
            Err(e) => {
                v.push(format!("channel: {e}"));
                None
            }
        },
    };
    if let (Some(Channel::Quantum(k)), Some(ens)) = (&channel, ensemble) {
        if k.dim() != ens.dim() {
            v.push(format!(
                "channel dimension {} does not match ensemble dimension {}",
                k.dim(),
                ens.dim()
            ));
            return None;
        }
    }
    channel
}

fn validate_measures(
    raw: &RawScenario,
    ensemble: Option<&CqEnsemble>,
    channel: Option<&Channel>,
    v: &mut Violations,
) -> Vec<MeasureId> {
    let mut measures = Vec::new();
    for name in &raw.measures {
        match name.parse::<MeasureId>() {
            Ok(id) => measures.push(id),
            Err(e) => v.push(e.to_string()),
        }
    }
    for violation in measure_requirements(&measures, ensemble, channel) {
        v.push(violation);
    }
    measures
}
