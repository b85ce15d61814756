//! The region data model: data tuples `(x, φ, y)`, elementary and composite
//! regions, measurement information, procedure and outcome sets, and the
//! region-extension machinery that re-keys coordinates by η.
//!
//! Region identity is exact coordinate equality on canonical floating-point
//! values; coordinates act as set keys, so everything here is plain set
//! algebra over [`Datum`] values.

use ordered_float::OrderedFloat;
use serde::Serialize;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CausaloidError {
    #[error("non-finite region coordinate: {0}")]
    NonFiniteCoordinate(f64),
    #[error("composite region must be nonempty")]
    EmptyComposite,
    #[error("composite region mixes space tags")]
    MixedSpaceTags,
    #[error("unknown setting symbol: {0:?}")]
    UnknownSetting(String),
    #[error("datum coordinate {datum_coord} does not match region coordinate {region_coord}")]
    CoordMismatch { datum_coord: f64, region_coord: f64 },
    #[error("eta must satisfy eta >= 1, got {0}")]
    EtaOutOfRange(f64),
    #[error("region scaling requires a QG-tagged composite region")]
    NotQgTagged,
    #[error("outcome set is not contained in the procedure set")]
    OutcomesNotInProcedure,
}

pub type Result<T> = std::result::Result<T, CausaloidError>;

/// Region coordinate used as an exact set key. `-0.0` is canonicalized to
/// `0.0` so it cannot split a region in two.
pub type Coord = OrderedFloat<f64>;

pub fn coord(value: f64) -> Coord {
    // +0.0 normalizes -0.0
    OrderedFloat(value + 0.0)
}

/// Which representation a region belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SpaceTag {
    S,
    Qg,
}

/// One measurement record: the region coordinate it was taken at, the chosen
/// setting φ, and the observed outcome y.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Datum {
    pub region_coord: Coord,
    pub setting: String,
    pub outcome: String,
}

impl Datum {
    pub fn new(region_coord: f64, setting: impl Into<String>, outcome: impl Into<String>) -> Self {
        Datum {
            region_coord: coord(region_coord),
            setting: setting.into(),
            outcome: outcome.into(),
        }
    }
}

/// A store of data tuples with set semantics.
pub type DatumStore = BTreeSet<Datum>;

/// An elementary region: a single coordinate in one of the two spaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementaryRegion {
    pub coord: Coord,
    pub space: SpaceTag,
}

impl ElementaryRegion {
    pub fn new(coordinate: f64, space: SpaceTag) -> Result<Self> {
        if !coordinate.is_finite() {
            return Err(CausaloidError::NonFiniteCoordinate(coordinate));
        }
        Ok(ElementaryRegion {
            coord: coord(coordinate),
            space,
        })
    }
}

/// A finite set of elementary regions sharing one space tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositeRegion {
    regions: BTreeSet<ElementaryRegion>,
    space: SpaceTag,
}

impl CompositeRegion {
    pub fn new(regions: impl IntoIterator<Item = ElementaryRegion>) -> Result<Self> {
        let regions: BTreeSet<_> = regions.into_iter().collect();
        let mut tags = regions.iter().map(|r| r.space);
        let space = tags.next().ok_or(CausaloidError::EmptyComposite)?;
        if tags.any(|t| t != space) {
            return Err(CausaloidError::MixedSpaceTags);
        }
        Ok(CompositeRegion { regions, space })
    }

    pub fn from_coords(coords: &[f64], space: SpaceTag) -> Result<Self> {
        CompositeRegion::new(
            coords
                .iter()
                .map(|&c| ElementaryRegion::new(c, space))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn regions(&self) -> &BTreeSet<ElementaryRegion> {
        &self.regions
    }

    pub fn space(&self) -> SpaceTag {
        self.space
    }

    pub fn coords(&self) -> impl Iterator<Item = Coord> + '_ {
        self.regions.iter().map(|r| r.coord)
    }

    pub fn contains_coord(&self, c: Coord) -> bool {
        self.regions.iter().any(|r| r.coord == c)
    }

    pub fn len(&self) -> usize {
        self.regions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.regions.is_empty()
    }
}

/// Scope of a procedure or outcome set: one region or a composite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegionScope {
    Elementary(ElementaryRegion),
    Composite(CompositeRegion),
}

impl RegionScope {
    pub fn contains_coord(&self, c: Coord) -> bool {
        match self {
            RegionScope::Elementary(r) => r.coord == c,
            RegionScope::Composite(comp) => comp.contains_coord(c),
        }
    }
}

/// Measurement information `R_x`: every datum recorded at one region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasurementInfo {
    region: ElementaryRegion,
    data: DatumStore,
}

impl MeasurementInfo {
    pub fn new(region: ElementaryRegion, data: DatumStore) -> Result<Self> {
        if let Some(d) = data.iter().find(|d| d.region_coord != region.coord) {
            return Err(CausaloidError::CoordMismatch {
                datum_coord: d.region_coord.into_inner(),
                region_coord: region.coord.into_inner(),
            });
        }
        Ok(MeasurementInfo { region, data })
    }

    pub fn region(&self) -> &ElementaryRegion {
        &self.region
    }

    pub fn data(&self) -> &DatumStore {
        &self.data
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }
}

/// Measurement information `R_C` for a composite region: the union of the
/// per-region sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositeInfo {
    region: CompositeRegion,
    data: DatumStore,
}

impl CompositeInfo {
    pub fn region(&self) -> &CompositeRegion {
        &self.region
    }

    pub fn data(&self) -> &DatumStore {
        &self.data
    }
}

/// Procedure set `F`: the distinct (setting, outcome) choices in scope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProcedureSet {
    scope: RegionScope,
    entries: DatumStore,
}

impl ProcedureSet {
    pub fn scope(&self) -> &RegionScope {
        &self.scope
    }

    pub fn entries(&self) -> &DatumStore {
        &self.entries
    }
}

/// Outcome set `Y`: the distinct outcomes in scope under a setting selection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutcomeSet {
    scope: RegionScope,
    entries: DatumStore,
}

impl OutcomeSet {
    pub fn scope(&self) -> &RegionScope {
        &self.scope
    }

    pub fn entries(&self) -> &DatumStore {
        &self.entries
    }
}

/// Role of an event in a scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EventRole {
    Reference,
    Interest,
    Coordinator,
}

/// An event identified by its procedure/outcome pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventSpec {
    procedure: ProcedureSet,
    outcomes: OutcomeSet,
    role: EventRole,
}

impl EventSpec {
    pub fn new(procedure: ProcedureSet, outcomes: OutcomeSet, role: EventRole) -> Result<Self> {
        if !outcomes.entries.is_subset(&procedure.entries) {
            return Err(CausaloidError::OutcomesNotInProcedure);
        }
        Ok(EventSpec {
            procedure,
            outcomes,
            role,
        })
    }

    pub fn procedure(&self) -> &ProcedureSet {
        &self.procedure
    }

    pub fn outcomes(&self) -> &OutcomeSet {
        &self.outcomes
    }

    pub fn role(&self) -> EventRole {
        self.role
    }
}

/// Global information `V`: the union of measurement information over all
/// declared regions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalInfo {
    data: DatumStore,
}

impl GlobalInfo {
    pub fn from_parts(parts: impl IntoIterator<Item = MeasurementInfo>) -> Self {
        GlobalInfo {
            data: parts.into_iter().flat_map(|p| p.data).collect(),
        }
    }

    /// `V` over every region that occurs in the store.
    pub fn from_store(store: &DatumStore) -> Self {
        GlobalInfo {
            data: store.clone(),
        }
    }

    pub fn data(&self) -> &DatumStore {
        &self.data
    }
}

/// Filter a store down to the data recorded at one region.
pub fn measurement_info(region: &ElementaryRegion, store: &DatumStore) -> MeasurementInfo {
    let data = store
        .iter()
        .filter(|d| d.region_coord == region.coord)
        .cloned()
        .collect();
    MeasurementInfo {
        region: *region,
        data,
    }
}

/// Union of [`measurement_info`] over the members of a composite region.
pub fn composite_info(comp: &CompositeRegion, store: &DatumStore) -> CompositeInfo {
    let data = store
        .iter()
        .filter(|d| comp.contains_coord(d.region_coord))
        .cloned()
        .collect();
    CompositeInfo {
        region: comp.clone(),
        data,
    }
}

/// All distinct (setting, outcome) data for the scope.
pub fn procedure_set(scope: &RegionScope, store: &DatumStore) -> ProcedureSet {
    let entries = store
        .iter()
        .filter(|d| scope.contains_coord(d.region_coord))
        .cloned()
        .collect();
    ProcedureSet {
        scope: scope.clone(),
        entries,
    }
}

/// The scope's data restricted to the selected settings.
///
/// Every selected setting must come from the declared alphabet.
pub fn outcome_set(
    scope: &RegionScope,
    store: &DatumStore,
    selected_settings: &[String],
    setting_alphabet: &[String],
) -> Result<OutcomeSet> {
    for s in selected_settings {
        if !setting_alphabet.contains(s) {
            return Err(CausaloidError::UnknownSetting(s.clone()));
        }
    }
    let entries = store
        .iter()
        .filter(|d| scope.contains_coord(d.region_coord) && selected_settings.contains(&d.setting))
        .cloned()
        .collect();
    Ok(OutcomeSet {
        scope: scope.clone(),
        entries,
    })
}

/// Re-key a QG-tagged composite region into the standard space: each
/// coordinate `x′` maps to `η·x′`.
pub fn scale_region(comp: &CompositeRegion, eta: f64) -> Result<CompositeRegion> {
    if comp.space != SpaceTag::Qg {
        return Err(CausaloidError::NotQgTagged);
    }
    if !(eta.is_finite() && eta >= 1.0) {
        return Err(CausaloidError::EtaOutOfRange(eta));
    }
    CompositeRegion::new(
        comp.regions
            .iter()
            .map(|r| ElementaryRegion::new(eta * r.coord.into_inner(), SpaceTag::S))
            .collect::<Result<Vec<_>>>()?,
    )
}

/// Re-key a datum store by the same coordinate map `x′ ↦ η·x′`.
pub fn scale_data(store: &DatumStore, eta: f64) -> Result<DatumStore> {
    if !(eta.is_finite() && eta >= 1.0) {
        return Err(CausaloidError::EtaOutOfRange(eta));
    }
    Ok(store
        .iter()
        .map(|d| {
            Datum::new(
                eta * d.region_coord.into_inner(),
                d.setting.clone(),
                d.outcome.clone(),
            )
        })
        .collect())
}

/// The (Y, F, R) triple of one space, ready for inclusion checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceSets {
    pub outcomes: DatumStore,
    pub procedures: DatumStore,
    pub info: DatumStore,
}

impl SpaceSets {
    pub fn new(outcomes: &OutcomeSet, procedures: &ProcedureSet, info: &CompositeInfo) -> Self {
        SpaceSets {
            outcomes: outcomes.entries.clone(),
            procedures: procedures.entries.clone(),
            info: info.data.clone(),
        }
    }
}

/// One pairwise subset claim and whether it holds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InclusionEntry {
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

/// Pairwise subset report over the two (Y, F, R) triples.
///
/// The within-space chains `Y ⊆ F ⊆ R` are structural; the cross-space links
/// are diagnostics, since re-keyed coordinate sets are disjoint whenever
/// `η ≠ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InclusionReport {
    pub entries: Vec<InclusionEntry>,
}

impl InclusionReport {
    /// True when both within-space chains hold.
    pub fn within_space_chains_hold(&self) -> bool {
        self.entries
            .iter()
            .filter(|e| {
                (e.lhs.ends_with("_qg") && e.rhs.ends_with("_qg"))
                    || (e.lhs.ends_with("_s") && e.rhs.ends_with("_s"))
            })
            .all(|e| e.holds)
    }

    pub fn all_hold(&self) -> bool {
        self.entries.iter().all(|e| e.holds)
    }
}

fn entry(lhs: &str, a: &DatumStore, rhs: &str, b: &DatumStore) -> InclusionEntry {
    InclusionEntry {
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        holds: a.is_subset(b),
    }
}

/// Evaluate every pairwise subset claim across the two spaces: the
/// within-space chains plus the interleaved cross-space chain
/// `Y_qg ⊆ Y_s ⊆ F_qg ⊆ F_s ⊆ R_qg ⊆ R_s`.
pub fn inclusion_report(qg: &SpaceSets, s: &SpaceSets) -> InclusionReport {
    let entries = vec![
        entry("Y_qg", &qg.outcomes, "F_qg", &qg.procedures),
        entry("F_qg", &qg.procedures, "R_qg", &qg.info),
        entry("Y_s", &s.outcomes, "F_s", &s.procedures),
        entry("F_s", &s.procedures, "R_s", &s.info),
        entry("Y_qg", &qg.outcomes, "Y_s", &s.outcomes),
        entry("Y_s", &s.outcomes, "F_qg", &qg.procedures),
        entry("F_qg", &qg.procedures, "F_s", &s.procedures),
        entry("F_s", &s.procedures, "R_qg", &qg.info),
        entry("R_qg", &qg.info, "R_s", &s.info),
    ];
    InclusionReport { entries }
}
