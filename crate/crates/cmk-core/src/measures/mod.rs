//! Probability, entropy, and correlation-measure layer: discrete joint
//! tables, density matrices and channels, capacity solvers, and the paired
//! QG/S evaluation asserting representation equivalence.

mod capacity;
mod classical;
mod equivalence;
mod quantum;

pub use capacity::{
    classical_capacity, holevo_capacity_fixed_states, CapacityResult, DEFAULT_MAX_ITER, DEFAULT_TOL,
};
pub use classical::{
    coherent_information, conditional_entropy, mutual_information, shannon_entropy,
    ConditionalJointPmf, JointDistribution, Party,
};
pub use equivalence::{
    custom_measure_pair, eta_relabel, qg_measure, s_measure, MeasureId, MeasurePair,
    MeasureSelection, QuantumContext, RegionBinding, ScenarioProbability,
};
pub use quantum::{
    holevo, von_neumann_entropy, CMatrix, Channel, CqEnsemble, DensityMatrix, KrausChannel,
    StochasticMatrix, MAX_DIM,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeasureError {
    #[error("probability vector sums to {0}, expected 1 within 1e-9")]
    NotNormalized(f64),
    #[error("negative or non-finite probability: {0}")]
    NegativeProbability(f64),
    #[error("table shape does not match alphabets ({rows} x {cols})")]
    TableShape { rows: usize, cols: usize },
    #[error("pmf table for setting pair ({a_setting}, {b_setting}) sums to {sum}, expected 1 within 1e-9")]
    TableNotNormalized {
        a_setting: String,
        b_setting: String,
        sum: f64,
    },
    #[error("no pmf table declared for setting pair ({0}, {1})")]
    MissingSettingPair(String, String),
    #[error("unknown setting pair ({0}, {1})")]
    UnknownSettingPair(String, String),
    #[error("unknown outcome symbol {0:?}")]
    UnknownOutcome(String),
    #[error("conditioning outcome {0:?} has zero probability")]
    ZeroConditioningProbability(String),
    #[error("alphabets and setting lists must be nonempty")]
    EmptyAlphabet,
    #[error("matrix is not square: {0} x {1}")]
    NotSquare(usize, usize),
    #[error("dimension {0} out of range (1-16)")]
    DimOutOfRange(usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("matrix is not Hermitian (deviation {0})")]
    NotHermitian(f64),
    #[error("trace is {0}, expected 1 within 1e-10")]
    BadTrace(f64),
    #[error("negative eigenvalue {0} beyond tolerance")]
    NegativeEigenvalue(f64),
    #[error("state vector has zero norm")]
    ZeroStateVector,
    #[error("ensemble must be nonempty")]
    EmptyEnsemble,
    #[error("ensemble has {0} priors but {1} states")]
    EnsembleLengthMismatch(usize, usize),
    #[error("channel must be nonempty")]
    EmptyChannel,
    #[error("channel rows have unequal lengths")]
    RaggedRows,
    #[error("channel row {row} sums to {sum}, expected 1 within 1e-9")]
    RowNotStochastic { row: usize, sum: f64 },
    #[error("Kraus operators are not trace preserving (deviation {0})")]
    NotTracePreserving(f64),
    #[error("expected a classical channel")]
    ExpectedClassicalChannel,
    #[error("expected a quantum channel")]
    ExpectedQuantumChannel,
    #[error("solver tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("measure {0} did not converge within the iteration limit")]
    NotConverged(MeasureId),
    #[error("unknown measure identifier {0:?}")]
    UnknownMeasure(String),
    #[error("measure {0} is declared-only: no computational procedure is registered")]
    UnsupportedMeasure(MeasureId),
    #[error("measure {0} requires an ensemble")]
    MissingEnsemble(MeasureId),
    #[error("measure {0} requires a channel")]
    MissingChannel(MeasureId),
    #[error("scenario probability is not QG-tagged")]
    NotQgTagged,
}

pub type Result<T> = std::result::Result<T, MeasureError>;
