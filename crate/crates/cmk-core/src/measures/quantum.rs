//! Small-dimension quantum states and channels: density matrices, ensembles,
//! Kraus/stochastic channels, von Neumann entropy, and the Holevo quantity.

use super::classical::{clamp_rounding, PMF_TOLERANCE};
use super::{MeasureError, Result};
use nalgebra::{Complex, DMatrix, SymmetricEigen};

pub type CMatrix = DMatrix<Complex<f64>>;

/// Largest supported density-matrix dimension.
pub const MAX_DIM: usize = 16;

const HERMITIAN_TOLERANCE: f64 = 1e-10;
const TRACE_TOLERANCE: f64 = 1e-10;
const EIGENVALUE_TOLERANCE: f64 = 1e-10;
const COMPLETENESS_TOLERANCE: f64 = 1e-9;

/// A validated density matrix: Hermitian, positive semidefinite, unit trace,
/// dimension at most [`MAX_DIM`].
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    m: CMatrix,
}

impl DensityMatrix {
    pub fn new(m: CMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(MeasureError::NotSquare(m.nrows(), m.ncols()));
        }
        let dim = m.nrows();
        if dim == 0 || dim > MAX_DIM {
            return Err(MeasureError::DimOutOfRange(dim));
        }
        let mut herm_dev: f64 = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                herm_dev = herm_dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
            }
        }
        if herm_dev > HERMITIAN_TOLERANCE {
            return Err(MeasureError::NotHermitian(herm_dev));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > TRACE_TOLERANCE || tr.im.abs() > TRACE_TOLERANCE {
            return Err(MeasureError::BadTrace(tr.re));
        }
        let rho = DensityMatrix { m };
        if let Some(&min) = rho
            .eigenvalues()
            .iter()
            .min_by(|a, b| a.partial_cmp(b).unwrap())
        {
            if min < -EIGENVALUE_TOLERANCE {
                return Err(MeasureError::NegativeEigenvalue(min));
            }
        }
        Ok(rho)
    }

    /// Rank-one state `|ψ⟩⟨ψ|` from an amplitude vector (normalized here).
    pub fn pure(amplitudes: &[Complex<f64>]) -> Result<Self> {
        let norm2: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if norm2 <= 0.0 || !norm2.is_finite() {
            return Err(MeasureError::ZeroStateVector);
        }
        let norm = norm2.sqrt();
        let dim = amplitudes.len();
        let mut m = CMatrix::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = (amplitudes[i] / norm) * (amplitudes[j] / norm).conj();
            }
        }
        DensityMatrix::new(m)
    }

    /// Diagonal state from a probability vector.
    pub fn diagonal(probs: &[f64]) -> Result<Self> {
        super::classical::validate_pmf(probs)?;
        let dim = probs.len();
        let mut m = CMatrix::zeros(dim, dim);
        for (i, &p) in probs.iter().enumerate() {
            m[(i, i)] = Complex::new(p, 0.0);
        }
        DensityMatrix::new(m)
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        DensityMatrix::diagonal(&vec![1.0 / dim as f64; dim])
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    /// Real eigenvalues of the Hermitian matrix, unsorted.
    pub fn eigenvalues(&self) -> Vec<f64> {
        SymmetricEigen::new(self.m.clone())
            .eigenvalues
            .iter()
            .copied()
            .collect()
    }

    pub(crate) fn from_matrix_unchecked(m: CMatrix) -> Self {
        DensityMatrix { m }
    }
}

/// `−Σ λ log₂ λ` over the eigenvalues, clamped into `[0, 1]` to absorb
/// diagonalization noise.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    let h = -rho
        .eigenvalues()
        .into_iter()
        .map(|l| l.clamp(0.0, 1.0))
        .filter(|&l| l > 0.0)
        .map(|l| l * l.log2())
        .sum::<f64>()
        + 0.0;
    clamp_rounding(h)
}

/// A classical-quantum ensemble: prior probabilities over equal-dimension
/// states.
#[derive(Debug, Clone, PartialEq)]
pub struct CqEnsemble {
    priors: Vec<f64>,
    states: Vec<DensityMatrix>,
}

impl CqEnsemble {
    pub fn new(priors: Vec<f64>, states: Vec<DensityMatrix>) -> Result<Self> {
        if states.is_empty() {
            return Err(MeasureError::EmptyEnsemble);
        }
        if priors.len() != states.len() {
            return Err(MeasureError::EnsembleLengthMismatch(
                priors.len(),
                states.len(),
            ));
        }
        super::classical::validate_pmf(&priors)?;
        let dim = states[0].dim();
        if states.iter().any(|s| s.dim() != dim) {
            return Err(MeasureError::DimMismatch(dim, 0));
        }
        Ok(CqEnsemble { priors, states })
    }

    pub fn priors(&self) -> &[f64] {
        &self.priors
    }

    pub fn states(&self) -> &[DensityMatrix] {
        &self.states
    }

    pub fn dim(&self) -> usize {
        self.states[0].dim()
    }

    /// `Σ pᵢ ρᵢ`.
    pub fn average_state(&self) -> DensityMatrix {
        let dim = self.dim();
        let mut acc = CMatrix::zeros(dim, dim);
        for (p, s) in self.priors.iter().zip(&self.states) {
            acc += s.matrix() * Complex::new(*p, 0.0);
        }
        DensityMatrix::from_matrix_unchecked(acc)
    }
}

/// Row-stochastic transition matrix `W[x][y] = p(y|x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticMatrix {
    rows: Vec<Vec<f64>>,
}

impl StochasticMatrix {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(MeasureError::EmptyChannel);
        }
        let cols = rows[0].len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(MeasureError::RaggedRows);
            }
            if let Some(&bad) = row.iter().find(|v| !v.is_finite() || **v < 0.0) {
                return Err(MeasureError::NegativeProbability(bad));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > PMF_TOLERANCE {
                return Err(MeasureError::RowNotStochastic { row: i, sum });
            }
        }
        Ok(StochasticMatrix { rows })
    }

    /// Binary symmetric channel with flip probability `p`.
    pub fn binary_symmetric(p: f64) -> Result<Self> {
        StochasticMatrix::new(vec![vec![1.0 - p, p], vec![p, 1.0 - p]])
    }

    pub fn n_inputs(&self) -> usize {
        self.rows.len()
    }

    pub fn n_outputs(&self) -> usize {
        self.rows[0].len()
    }

    pub fn row(&self, x: usize) -> &[f64] {
        &self.rows[x]
    }

    /// Push an input distribution through the channel.
    pub fn apply(&self, input: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n_outputs()];
        for (px, row) in input.iter().zip(&self.rows) {
            for (o, w) in out.iter_mut().zip(row) {
                *o += px * w;
            }
        }
        out
    }
}

/// Completely positive trace-preserving map given by Kraus operators with
/// `Σ K†K = I`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    kraus: Vec<CMatrix>,
    dim: usize,
}

impl KrausChannel {
    pub fn new(kraus: Vec<CMatrix>) -> Result<Self> {
        let first = kraus.first().ok_or(MeasureError::EmptyChannel)?;
        if !first.is_square() {
            return Err(MeasureError::NotSquare(first.nrows(), first.ncols()));
        }
        let dim = first.nrows();
        if dim == 0 || dim > MAX_DIM {
            return Err(MeasureError::DimOutOfRange(dim));
        }
        if kraus.iter().any(|k| k.nrows() != dim || k.ncols() != dim) {
            return Err(MeasureError::DimMismatch(dim, 0));
        }
        let mut sum = CMatrix::zeros(dim, dim);
        for k in &kraus {
            sum += k.adjoint() * k;
        }
        let mut dev: f64 = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                let expected = if i == j {
                    Complex::new(1.0, 0.0)
                } else {
                    Complex::new(0.0, 0.0)
                };
                dev = dev.max((sum[(i, j)] - expected).norm());
            }
        }
        if dev > COMPLETENESS_TOLERANCE {
            return Err(MeasureError::NotTracePreserving(dev));
        }
        Ok(KrausChannel { kraus, dim })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        KrausChannel::new(vec![CMatrix::identity(dim, dim)])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kraus(&self) -> &[CMatrix] {
        &self.kraus
    }

    /// `Σ K ρ K†`.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.dim {
            return Err(MeasureError::DimMismatch(rho.dim(), self.dim));
        }
        let mut out = CMatrix::zeros(self.dim, self.dim);
        for k in &self.kraus {
            out += k * rho.matrix() * k.adjoint();
        }
        Ok(DensityMatrix::from_matrix_unchecked(out))
    }
}

/// A noisy process: either a classical transition matrix or a quantum map.
#[derive(Debug, Clone, PartialEq)]
pub enum Channel {
    Classical(StochasticMatrix),
    Quantum(KrausChannel),
}

impl Channel {
    pub fn identity(dim: usize) -> Result<Self> {
        Ok(Channel::Quantum(KrausChannel::identity(dim)?))
    }

    pub fn as_classical(&self) -> Result<&StochasticMatrix> {
        match self {
            Channel::Classical(m) => Ok(m),
            Channel::Quantum(_) => Err(MeasureError::ExpectedClassicalChannel),
        }
    }

    pub fn as_quantum(&self) -> Result<&KrausChannel> {
        match self {
            Channel::Quantum(k) => Ok(k),
            Channel::Classical(_) => Err(MeasureError::ExpectedQuantumChannel),
        }
    }
}

/// Holevo quantity `χ = S(N(Σ pᵢρᵢ)) − Σ pᵢ S(N(ρᵢ))` of an ensemble pushed
/// through a quantum channel.
pub fn holevo(ens: &CqEnsemble, ch: &Channel) -> Result<f64> {
    let k = ch.as_quantum()?;
    if k.dim() != ens.dim() {
        return Err(MeasureError::DimMismatch(ens.dim(), k.dim()));
    }
    let avg_out = k.apply(&ens.average_state())?;
    let mut chi = von_neumann_entropy(&avg_out);
    for (p, s) in ens.priors().iter().zip(ens.states()) {
        chi -= p * von_neumann_entropy(&k.apply(s)?);
    }
    Ok(clamp_rounding(chi))
}
