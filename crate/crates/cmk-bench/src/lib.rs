//! Benchmark fixtures: deterministic scenarios, ensembles, and channels of
//! representative size.

use cmk_core::measures::{CMatrix, Channel, CqEnsemble, DensityMatrix, StochasticMatrix};
use cmk_core::Scenario;
use nalgebra::Complex;

/// A QG scenario with ternary outcome alphabets and two settings per party.
pub fn ternary_scenario() -> Scenario {
    let json = r#"{
        "beta": 0.6,
        "events": [
            {"id": "O", "role": "coordinator", "x_prime": 0.0},
            {"id": "A", "role": "a", "x_prime": 1.0},
            {"id": "B", "role": "b", "x_prime": 2.0}
        ],
        "alphabets": {"a": ["0", "1", "2"], "b": ["0", "1", "2"]},
        "settings": {"a": ["s0", "s1"], "b": ["s0", "s1"]},
        "pmf": [
            {"a_setting": "s0", "b_setting": "s0",
             "table": [[0.20, 0.05, 0.05], [0.05, 0.20, 0.05], [0.05, 0.05, 0.30]]},
            {"a_setting": "s0", "b_setting": "s1",
             "table": [[0.10, 0.10, 0.10], [0.10, 0.10, 0.10], [0.10, 0.10, 0.20]]},
            {"a_setting": "s1", "b_setting": "s0",
             "table": [[0.30, 0.02, 0.02], [0.02, 0.30, 0.02], [0.02, 0.02, 0.28]]},
            {"a_setting": "s1", "b_setting": "s1",
             "table": [[0.12, 0.11, 0.10], [0.09, 0.12, 0.11], [0.10, 0.11, 0.14]]}
        ],
        "measures": ["entropy", "conditional_entropy", "mutual_information", "coherent_information"]
    }"#;
    Scenario::parse(json.as_bytes()).expect("fixture scenario is valid")
}

/// Four pure qubit states at mixed overlaps with uniform priors.
pub fn qubit_ensemble() -> CqEnsemble {
    let amp = |re0: f64, re1: f64| {
        DensityMatrix::pure(&[Complex::new(re0, 0.0), Complex::new(re1, 0.0)]).unwrap()
    };
    let h = 0.5f64.sqrt();
    CqEnsemble::new(
        vec![0.25; 4],
        vec![amp(1.0, 0.0), amp(0.0, 1.0), amp(h, h), amp(h, -h)],
    )
    .unwrap()
}

pub fn identity_channel(dim: usize) -> Channel {
    Channel::identity(dim).expect("identity channel")
}

/// A mildly asymmetric 4x4 classical channel.
pub fn quaternary_channel() -> StochasticMatrix {
    StochasticMatrix::new(vec![
        vec![0.85, 0.05, 0.05, 0.05],
        vec![0.05, 0.80, 0.10, 0.05],
        vec![0.05, 0.10, 0.80, 0.05],
        vec![0.02, 0.03, 0.05, 0.90],
    ])
    .unwrap()
}

/// An 8-dimensional diagonal-dominant density matrix.
pub fn octonion_state() -> DensityMatrix {
    let dim = 8;
    let mut m = CMatrix::zeros(dim, dim);
    for i in 0..dim {
        m[(i, i)] = Complex::new(1.0 / dim as f64, 0.0);
        if i + 1 < dim {
            m[(i, i + 1)] = Complex::new(0.01, 0.005);
            m[(i + 1, i)] = Complex::new(0.01, -0.005);
        }
    }
    DensityMatrix::new(m).unwrap()
}
