//! Alternating-maximization capacity solvers: classical channel capacity over
//! input distributions, and Holevo capacity over priors for a fixed state set.
//!
//! Both iterations carry an upper/lower capacity bound pair; convergence means
//! the gap dropped below the requested tolerance (in bits). Non-convergence is
//! not an error: the best iterate is returned with `converged = false`.

use super::quantum::{Channel, CqEnsemble, DensityMatrix, StochasticMatrix};
use super::{MeasureError, Result};
use nalgebra::SymmetricEigen;

const LN_2: f64 = std::f64::consts::LN_2;

/// Default stopping tolerance (bits) and iteration cap.
pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_ITER: usize = 100_000;

/// Outcome of a capacity optimization.
#[derive(Debug, Clone, PartialEq)]
pub struct CapacityResult {
    /// Capacity estimate in bits (the lower bound of the final iterate).
    pub bits: f64,
    /// Maximizing input distribution at the final iterate.
    pub input_distribution: Vec<f64>,
    /// Certified suboptimality bound in bits: the true capacity lies within
    /// `bound_gap` above `bits`.
    pub bound_gap: f64,
    pub converged: bool,
    pub iterations: usize,
}

fn check_solver_params(tol: f64, max_iter: usize) -> Result<()> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(MeasureError::InvalidTolerance(tol));
    }
    if max_iter == 0 {
        return Err(MeasureError::InvalidTolerance(0.0));
    }
    Ok(())
}

/// `max_X I(X:Y)` of a discrete memoryless channel, within `tol` bits.
///
/// Alternating maximization over the input distribution: each step computes
/// the per-letter divergence `D_x = Σ_y W(y|x) ln(W(y|x)/q(y))` against the
/// current output distribution and reweights inputs by `exp(D_x)`. The gap
/// `max_x D_x − Σ_x p_x D_x` bounds the distance to capacity.
pub fn classical_capacity(
    ch: &StochasticMatrix,
    tol: f64,
    max_iter: usize,
) -> Result<CapacityResult> {
    check_solver_params(tol, max_iter)?;
    let n_in = ch.n_inputs();
    let n_out = ch.n_outputs();
    let mut p = vec![1.0 / n_in as f64; n_in];
    let mut divergences = vec![0.0; n_in];

    let mut lower_nats = 0.0;
    let mut gap_bits = f64::INFINITY;
    let mut iterations = 0;
    let mut converged = false;

    while iterations < max_iter {
        iterations += 1;

        let mut q = vec![0.0; n_out];
        for (px, x) in p.iter().zip(0..n_in) {
            for (qy, w) in q.iter_mut().zip(ch.row(x)) {
                *qy += px * w;
            }
        }

        let mut upper_nats = f64::NEG_INFINITY;
        lower_nats = 0.0;
        for x in 0..n_in {
            let d: f64 = ch
                .row(x)
                .iter()
                .zip(&q)
                .filter(|(w, _)| **w > 0.0)
                .map(|(w, qy)| w * (w / qy).ln())
                .sum();
            divergences[x] = d;
            upper_nats = upper_nats.max(d);
            lower_nats += p[x] * d;
        }

        gap_bits = (upper_nats - lower_nats) / LN_2;
        if gap_bits <= tol {
            converged = true;
            break;
        }

        // reweight, shifting by the max divergence so exp cannot overflow
        let mut norm = 0.0;
        for x in 0..n_in {
            p[x] *= (divergences[x] - upper_nats).exp();
            norm += p[x];
        }
        for px in p.iter_mut() {
            *px /= norm;
        }
    }

    Ok(CapacityResult {
        bits: lower_nats / LN_2,
        input_distribution: p,
        bound_gap: gap_bits,
        converged,
        iterations,
    })
}

/// Quantum relative-entropy helper: `Tr ρ log σ̄` in nats, computed in the
/// eigenbasis of `σ̄`. Weights below 1e-15 are treated as outside the support.
fn trace_rho_log_sigma(
    rho: &DensityMatrix,
    sigma_eigen: &SymmetricEigen<nalgebra::Complex<f64>, nalgebra::Dyn>,
) -> f64 {
    let mut acc = 0.0;
    for (k, &lambda) in sigma_eigen.eigenvalues.iter().enumerate() {
        let v = sigma_eigen.eigenvectors.column(k);
        let weight = (v.adjoint() * rho.matrix() * v)[(0, 0)].re;
        if weight > 1e-15 {
            acc += weight * lambda.max(1e-300).ln();
        }
    }
    acc
}

/// `max_p χ({p, N(ρ_x)})` for a fixed state set, within `tol` bits.
///
/// Same alternating-maximization shape as [`classical_capacity`] with the
/// per-letter divergence replaced by the quantum relative entropy
/// `D(σ_x ‖ σ̄)`, where `σ_x = N(ρ_x)` and `σ̄` is the prior-averaged output.
pub fn holevo_capacity_fixed_states(
    states: &[DensityMatrix],
    ch: &Channel,
    tol: f64,
    max_iter: usize,
) -> Result<CapacityResult> {
    check_solver_params(tol, max_iter)?;
    if states.is_empty() {
        return Err(MeasureError::EmptyEnsemble);
    }
    let k = ch.as_quantum()?;
    let dim = states[0].dim();
    if states.iter().any(|s| s.dim() != dim) || k.dim() != dim {
        return Err(MeasureError::DimMismatch(dim, k.dim()));
    }

    let outputs: Vec<DensityMatrix> = states
        .iter()
        .map(|s| k.apply(s))
        .collect::<Result<Vec<_>>>()?;
    // Tr σ_x log σ_x = −S(σ_x), fixed across iterations
    let self_terms: Vec<f64> = outputs
        .iter()
        .map(|s| -super::quantum::von_neumann_entropy(s) * LN_2)
        .collect();

    let n = states.len();
    let mut p = vec![1.0 / n as f64; n];
    let mut divergences = vec![0.0; n];
    let mut lower_nats = 0.0;
    let mut gap_bits = f64::INFINITY;
    let mut iterations = 0;
    let mut converged = false;

    while iterations < max_iter {
        iterations += 1;

        let ens = CqEnsemble::new(p.clone(), outputs.clone())?;
        let avg = ens.average_state();
        let eigen = SymmetricEigen::new(avg.matrix().clone());

        let mut upper_nats = f64::NEG_INFINITY;
        lower_nats = 0.0;
        for x in 0..n {
            let d = self_terms[x] - trace_rho_log_sigma(&outputs[x], &eigen);
            divergences[x] = d;
            upper_nats = upper_nats.max(d);
            lower_nats += p[x] * d;
        }

        gap_bits = (upper_nats - lower_nats) / LN_2;
        if gap_bits <= tol {
            converged = true;
            break;
        }

        let mut norm = 0.0;
        for x in 0..n {
            p[x] *= (divergences[x] - upper_nats).exp();
            norm += p[x];
        }
        for px in p.iter_mut() {
            *px /= norm;
        }
    }

    Ok(CapacityResult {
        bits: (lower_nats / LN_2).max(0.0),
        input_distribution: p,
        bound_gap: gap_bits,
        converged,
        iterations,
    })
}
