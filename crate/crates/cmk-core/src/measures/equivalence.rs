//! The representation-equivalence layer: measure identifiers, region-bound
//! scenario probabilities, and the paired evaluation that re-keys region
//! coordinates by η before applying the standard-space measure.
//!
//! Re-keying touches only region coordinates — the probability tables and
//! ensembles are untouched — so the paired values coincide exactly; the pair
//! is returned so callers can assert it.

use super::capacity::{classical_capacity, holevo_capacity_fixed_states};
use super::classical::{
    coherent_information, conditional_entropy, mutual_information, shannon_entropy,
    ConditionalJointPmf, Party,
};
use super::quantum::{holevo, Channel, CqEnsemble};
use super::{MeasureError, Result};
use crate::causaloid::SpaceTag;
use crate::eta::QGStrength;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Registry of correlation-measure identifiers.
///
/// `PrivateCapacity` and `QuantumCapacity` are declared-only: no computational
/// procedure is registered for them, so evaluation refuses them. Custom
/// functionals can still be run representation-paired via
/// [`custom_measure_pair`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureId {
    Entropy,
    ConditionalEntropy,
    MutualInformation,
    CoherentInformation,
    Holevo,
    ClassicalCapacity,
    HolevoCapacity,
    PrivateCapacity,
    QuantumCapacity,
}

impl MeasureId {
    pub const ALL: [MeasureId; 9] = [
        MeasureId::Entropy,
        MeasureId::ConditionalEntropy,
        MeasureId::MutualInformation,
        MeasureId::CoherentInformation,
        MeasureId::Holevo,
        MeasureId::ClassicalCapacity,
        MeasureId::HolevoCapacity,
        MeasureId::PrivateCapacity,
        MeasureId::QuantumCapacity,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            MeasureId::Entropy => "entropy",
            MeasureId::ConditionalEntropy => "conditional_entropy",
            MeasureId::MutualInformation => "mutual_information",
            MeasureId::CoherentInformation => "coherent_information",
            MeasureId::Holevo => "holevo",
            MeasureId::ClassicalCapacity => "classical_capacity",
            MeasureId::HolevoCapacity => "holevo_capacity",
            MeasureId::PrivateCapacity => "private_capacity",
            MeasureId::QuantumCapacity => "quantum_capacity",
        }
    }

    /// Whether a computation is registered for this identifier.
    pub fn is_computable(&self) -> bool {
        !matches!(
            self,
            MeasureId::PrivateCapacity | MeasureId::QuantumCapacity
        )
    }
}

impl fmt::Display for MeasureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MeasureId {
    type Err = MeasureError;

    fn from_str(s: &str) -> Result<Self> {
        MeasureId::ALL
            .iter()
            .copied()
            .find(|m| m.name() == s)
            .ok_or_else(|| MeasureError::UnknownMeasure(s.to_string()))
    }
}

/// The conditioning selection realizing the outcome probability: both
/// settings fixed, plus the reference party's outcome for the plain entropy
/// measure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureSelection {
    pub a_setting: String,
    pub b_setting: String,
    pub a_outcome: String,
}

/// Region coordinates bound to the reference (A) and interest (B) roles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionBinding {
    pub a_coord: f64,
    pub b_coord: f64,
}

/// A probability scenario bound to regions of one space.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioProbability {
    pmf: ConditionalJointPmf,
    binding: RegionBinding,
    space: SpaceTag,
    selection: MeasureSelection,
    past_data_tag: Option<String>,
}

impl ScenarioProbability {
    pub fn new(
        pmf: ConditionalJointPmf,
        binding: RegionBinding,
        space: SpaceTag,
        selection: MeasureSelection,
        past_data_tag: Option<String>,
    ) -> Result<Self> {
        if !pmf.a_settings().contains(&selection.a_setting)
            || !pmf.b_settings().contains(&selection.b_setting)
        {
            return Err(MeasureError::UnknownSettingPair(
                selection.a_setting.clone(),
                selection.b_setting.clone(),
            ));
        }
        if !pmf.a_outcomes().contains(&selection.a_outcome) {
            return Err(MeasureError::UnknownOutcome(selection.a_outcome.clone()));
        }
        Ok(ScenarioProbability {
            pmf,
            binding,
            space,
            selection,
            past_data_tag,
        })
    }

    pub fn pmf(&self) -> &ConditionalJointPmf {
        &self.pmf
    }

    pub fn binding(&self) -> RegionBinding {
        self.binding
    }

    pub fn space(&self) -> SpaceTag {
        self.space
    }

    pub fn selection(&self) -> &MeasureSelection {
        &self.selection
    }

    pub fn past_data_tag(&self) -> Option<&str> {
        self.past_data_tag.as_deref()
    }

    /// The outcome distribution of B under the selection: both settings and
    /// A's outcome fixed.
    pub fn outcome_distribution(&self) -> Result<Vec<f64>> {
        self.pmf
            .joint_at(&self.selection.a_setting, &self.selection.b_setting)?
            .b_given_a(&self.selection.a_outcome)
    }
}

/// Optional quantum data needed by the ensemble/channel measures.
#[derive(Debug, Clone, Default)]
pub struct QuantumContext {
    pub ensemble: Option<CqEnsemble>,
    pub channel: Option<Channel>,
    pub solver_tol: Option<f64>,
    pub solver_max_iter: Option<usize>,
}

impl QuantumContext {
    fn tol(&self) -> f64 {
        self.solver_tol.unwrap_or(super::capacity::DEFAULT_TOL)
    }

    fn max_iter(&self) -> usize {
        self.solver_max_iter
            .unwrap_or(super::capacity::DEFAULT_MAX_ITER)
    }
}

/// Paired evaluation of one measure in the two representations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurePair {
    pub id: MeasureId,
    pub qg_value: f64,
    pub s_value: f64,
}

impl MeasurePair {
    pub fn abs_diff(&self) -> f64 {
        (self.qg_value - self.s_value).abs()
    }

    pub fn equal_within(&self, tol: f64) -> bool {
        self.abs_diff() <= tol
    }
}

/// Re-key the region binding by `x′ ↦ η·x′` and re-tag the scenario into the
/// standard space. The probability table is untouched.
pub fn eta_relabel(sp: &ScenarioProbability, strength: &QGStrength) -> Result<ScenarioProbability> {
    if sp.space != SpaceTag::Qg {
        return Err(MeasureError::NotQgTagged);
    }
    Ok(ScenarioProbability {
        pmf: sp.pmf.clone(),
        binding: RegionBinding {
            a_coord: strength.eta() * sp.binding.a_coord,
            b_coord: strength.eta() * sp.binding.b_coord,
        },
        space: SpaceTag::S,
        selection: sp.selection.clone(),
        past_data_tag: sp.past_data_tag.clone(),
    })
}

/// Direct standard-space evaluation of a computable measure.
pub fn s_measure(sp: &ScenarioProbability, g: MeasureId, ctx: &QuantumContext) -> Result<f64> {
    let sel = &sp.selection;
    match g {
        MeasureId::Entropy => shannon_entropy(&sp.outcome_distribution()?),
        MeasureId::ConditionalEntropy => {
            conditional_entropy(&sp.pmf, &sel.a_setting, &sel.b_setting, Party::A)
        }
        MeasureId::MutualInformation => mutual_information(&sp.pmf, &sel.a_setting, &sel.b_setting),
        MeasureId::CoherentInformation => {
            coherent_information(&sp.pmf, &sel.a_setting, &sel.b_setting)
        }
        MeasureId::Holevo => {
            let ens = ctx
                .ensemble
                .as_ref()
                .ok_or(MeasureError::MissingEnsemble(g))?;
            let identity;
            let ch = match &ctx.channel {
                Some(ch) => ch,
                None => {
                    identity = Channel::identity(ens.dim())?;
                    &identity
                }
            };
            holevo(ens, ch)
        }
        MeasureId::ClassicalCapacity => {
            let ch = ctx
                .channel
                .as_ref()
                .ok_or(MeasureError::MissingChannel(g))?;
            let result = classical_capacity(ch.as_classical()?, ctx.tol(), ctx.max_iter())?;
            if !result.converged {
                return Err(MeasureError::NotConverged(g));
            }
            Ok(result.bits)
        }
        MeasureId::HolevoCapacity => {
            let ens = ctx
                .ensemble
                .as_ref()
                .ok_or(MeasureError::MissingEnsemble(g))?;
            let identity;
            let ch = match &ctx.channel {
                Some(ch) => ch,
                None => {
                    identity = Channel::identity(ens.dim())?;
                    &identity
                }
            };
            let result = holevo_capacity_fixed_states(ens.states(), ch, ctx.tol(), ctx.max_iter())?;
            if !result.converged {
                return Err(MeasureError::NotConverged(g));
            }
            Ok(result.bits)
        }
        MeasureId::PrivateCapacity | MeasureId::QuantumCapacity => {
            Err(MeasureError::UnsupportedMeasure(g))
        }
    }
}

/// Evaluate a measure in both representations: η-relabel the region binding,
/// apply the standard-space measure to the relabeled scenario, and pair it
/// with the direct standard-space evaluation of the same table.
pub fn qg_measure(
    sp: &ScenarioProbability,
    strength: &QGStrength,
    g: MeasureId,
    ctx: &QuantumContext,
) -> Result<MeasurePair> {
    if !g.is_computable() {
        return Err(MeasureError::UnsupportedMeasure(g));
    }
    let relabeled = eta_relabel(sp, strength)?;
    Ok(MeasurePair {
        id: g,
        qg_value: s_measure(&relabeled, g, ctx)?,
        s_value: s_measure(sp, g, ctx)?,
    })
}

/// Representation-paired evaluation of a user-supplied functional, for
/// measures with no registered computation.
pub fn custom_measure_pair<F>(
    sp: &ScenarioProbability,
    strength: &QGStrength,
    id: MeasureId,
    f: F,
) -> Result<MeasurePair>
where
    F: Fn(&ScenarioProbability) -> Result<f64>,
{
    let relabeled = eta_relabel(sp, strength)?;
    Ok(MeasurePair {
        id,
        qg_value: f(&relabeled)?,
        s_value: f(sp)?,
    })
}
