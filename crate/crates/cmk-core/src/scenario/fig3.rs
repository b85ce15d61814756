//! CSV emission of the distance-transfer curves `Δx = η(β)·Δx′` for a list
//! of strength values. Output is byte-deterministic: ',' delimiter, '\n' line
//! endings, shortest round-trip decimal formatting.

use super::{Result, ScenarioError};
use crate::eta::QGStrength;
use std::fmt::Write;

/// Shortest round-trip decimal form of a float.
pub(crate) fn fmt_num(v: f64) -> String {
    format!("{v}")
}

/// Emit `(Δx′, Δx per β)` columns over `samples` evenly spaced points of
/// `dx_prime_range`.
pub fn emit_fig3_curves(
    betas: &[f64],
    dx_prime_range: (f64, f64),
    samples: usize,
) -> Result<Vec<u8>> {
    if samples < 2 {
        return Err(ScenarioError::TooFewSamples(samples));
    }
    let (lo, hi) = dx_prime_range;
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(ScenarioError::BadRange(lo, hi));
    }
    let strengths = betas
        .iter()
        .map(|&b| QGStrength::from_beta(b))
        .collect::<std::result::Result<Vec<_>, _>>()?;

    let mut out = String::from("dx_prime");
    for s in &strengths {
        write!(out, ",dx_beta_{}", fmt_num(s.beta())).expect("string write");
    }
    out.push('\n');

    for i in 0..samples {
        let t = i as f64 / (samples - 1) as f64;
        let dx_prime = lo + (hi - lo) * t;
        out.push_str(&fmt_num(dx_prime));
        for s in &strengths {
            write!(out, ",{}", fmt_num(s.eta() * dx_prime)).expect("string write");
        }
        out.push('\n');
    }
    Ok(out.into_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_csv(bytes: &[u8]) -> Vec<Vec<f64>> {
        let text = std::str::from_utf8(bytes).unwrap();
        text.lines()
            .skip(1)
            .map(|line| line.split(',').map(|v| v.parse().unwrap()).collect())
            .collect()
    }

    #[test]
    fn header_names_each_beta() {
        let bytes = emit_fig3_curves(&[0.25, 0.5], (0.0, 10.0), 3).unwrap();
        let text = std::str::from_utf8(&bytes).unwrap();
        assert!(text.starts_with("dx_prime,dx_beta_0.25,dx_beta_0.5\n"));
    }

    #[test]
    fn reference_curve_is_identity() {
        let bytes = emit_fig3_curves(&[0.0], (0.0, 10.0), 11).unwrap();
        for row in parse_csv(&bytes) {
            assert_eq!(row[0], row[1]);
        }
    }

    #[test]
    fn zero_separation_maps_to_zero() {
        let bytes = emit_fig3_curves(&[0.25, 0.9], (0.0, 10.0), 5).unwrap();
        let rows = parse_csv(&bytes);
        assert_eq!(rows[0], vec![0.0, 0.0, 0.0]);
    }

    #[test]
    fn curves_scale_by_eta() {
        let bytes = emit_fig3_curves(&[0.6], (0.0, 4.0), 5).unwrap();
        let rows = parse_csv(&bytes);
        for row in rows {
            assert_eq!(row[1], 1.25 * row[0]);
        }
    }

    #[test]
    fn domain_violations_rejected() {
        assert!(emit_fig3_curves(&[1.0], (0.0, 1.0), 5).is_err());
        assert!(emit_fig3_curves(&[0.5], (0.0, 1.0), 1).is_err());
        assert!(emit_fig3_curves(&[0.5], (2.0, 1.0), 5).is_err());
    }

    #[test]
    fn output_is_deterministic() {
        let a = emit_fig3_curves(&[0.25, 0.5, 0.75, 0.9], (0.0, 10.0), 101).unwrap();
        let b = emit_fig3_curves(&[0.25, 0.5, 0.75, 0.9], (0.0, 10.0), 101).unwrap();
        assert_eq!(a, b);
    }
}
