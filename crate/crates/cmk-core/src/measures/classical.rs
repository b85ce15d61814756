//! Discrete probability tables and the entropic measures built on them.
//!
//! Everything is base-2 with the `0·log 0 = 0` convention. Joint tables are
//! conditional on a setting pair; the measure functions pick the pair out of a
//! [`ConditionalJointPmf`] and work on the resulting fixed-settings joint.

use super::{MeasureError, Result};

pub(crate) const PMF_TOLERANCE: f64 = 1e-9;

/// `−Σ p log₂ p` of a probability vector.
pub fn shannon_entropy(p: &[f64]) -> Result<f64> {
    validate_pmf(p)?;
    Ok(entropy_terms(p.iter().copied()))
}

pub(crate) fn validate_pmf(p: &[f64]) -> Result<()> {
    if let Some(&bad) = p.iter().find(|v| !v.is_finite() || **v < 0.0) {
        return Err(MeasureError::NegativeProbability(bad));
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > PMF_TOLERANCE {
        return Err(MeasureError::NotNormalized(sum));
    }
    Ok(())
}

pub(crate) fn entropy_terms(p: impl Iterator<Item = f64>) -> f64 {
    // the trailing + 0.0 keeps a degenerate pmf from producing -0.0
    -p.filter(|&v| v > 0.0).map(|v| v * v.log2()).sum::<f64>() + 0.0
}

/// Clamp a tiny negative rounding residue on a quantity that is nonnegative
/// by construction.
pub(crate) fn clamp_rounding(v: f64) -> f64 {
    if (-1e-12..0.0).contains(&v) {
        0.0
    } else {
        v
    }
}

/// Joint distribution `p(y_A, y_B)` at a fixed setting pair.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    a_outcomes: Vec<String>,
    b_outcomes: Vec<String>,
    /// row-major `[a][b]`
    p: Vec<f64>,
}

impl JointDistribution {
    pub fn new(
        a_outcomes: Vec<String>,
        b_outcomes: Vec<String>,
        table: &[Vec<f64>],
    ) -> Result<Self> {
        if table.len() != a_outcomes.len() || table.iter().any(|r| r.len() != b_outcomes.len()) {
            return Err(MeasureError::TableShape {
                rows: a_outcomes.len(),
                cols: b_outcomes.len(),
            });
        }
        let p: Vec<f64> = table.iter().flatten().copied().collect();
        validate_pmf(&p)?;
        Ok(JointDistribution {
            a_outcomes,
            b_outcomes,
            p,
        })
    }

    pub fn a_outcomes(&self) -> &[String] {
        &self.a_outcomes
    }

    pub fn b_outcomes(&self) -> &[String] {
        &self.b_outcomes
    }

    pub fn prob(&self, a: usize, b: usize) -> f64 {
        self.p[a * self.b_outcomes.len() + b]
    }

    pub fn marginal_a(&self) -> Vec<f64> {
        (0..self.a_outcomes.len())
            .map(|a| (0..self.b_outcomes.len()).map(|b| self.prob(a, b)).sum())
            .collect()
    }

    pub fn marginal_b(&self) -> Vec<f64> {
        (0..self.b_outcomes.len())
            .map(|b| (0..self.a_outcomes.len()).map(|a| self.prob(a, b)).sum())
            .collect()
    }

    pub fn joint_entropy(&self) -> f64 {
        entropy_terms(self.p.iter().copied())
    }

    pub fn entropy_a(&self) -> f64 {
        entropy_terms(self.marginal_a().into_iter())
    }

    pub fn entropy_b(&self) -> f64 {
        entropy_terms(self.marginal_b().into_iter())
    }

    /// Conditional distribution of B's outcome given `a_outcome`.
    pub fn b_given_a(&self, a_outcome: &str) -> Result<Vec<f64>> {
        let a = self
            .a_outcomes
            .iter()
            .position(|s| s == a_outcome)
            .ok_or_else(|| MeasureError::UnknownOutcome(a_outcome.to_string()))?;
        let pa: f64 = (0..self.b_outcomes.len()).map(|b| self.prob(a, b)).sum();
        if pa <= 0.0 {
            return Err(MeasureError::ZeroConditioningProbability(
                a_outcome.to_string(),
            ));
        }
        Ok((0..self.b_outcomes.len())
            .map(|b| self.prob(a, b) / pa)
            .collect())
    }
}

/// Which party's outcome is conditioned on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Party {
    A,
    B,
}

/// Conditional joint table `p(y_A, y_B | φ_A, φ_B)` over finite alphabets,
/// complete over every setting pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalJointPmf {
    a_outcomes: Vec<String>,
    b_outcomes: Vec<String>,
    a_settings: Vec<String>,
    b_settings: Vec<String>,
    /// indexed `[ia_setting * n_b_settings + ib_setting]`
    tables: Vec<JointDistribution>,
}

impl ConditionalJointPmf {
    /// `tables` supplies one joint table per `(φ_A, φ_B)` pair.
    pub fn new(
        a_outcomes: Vec<String>,
        b_outcomes: Vec<String>,
        a_settings: Vec<String>,
        b_settings: Vec<String>,
        tables: Vec<(String, String, Vec<Vec<f64>>)>,
    ) -> Result<Self> {
        for name in [&a_outcomes, &b_outcomes, &a_settings, &b_settings] {
            if name.is_empty() {
                return Err(MeasureError::EmptyAlphabet);
            }
        }
        let mut slots: Vec<Option<JointDistribution>> =
            vec![None; a_settings.len() * b_settings.len()];
        for (sa, sb, table) in tables {
            let ia = a_settings
                .iter()
                .position(|s| *s == sa)
                .ok_or_else(|| MeasureError::UnknownSettingPair(sa.clone(), sb.clone()))?;
            let ib = b_settings
                .iter()
                .position(|s| *s == sb)
                .ok_or_else(|| MeasureError::UnknownSettingPair(sa.clone(), sb.clone()))?;
            let joint = JointDistribution::new(a_outcomes.clone(), b_outcomes.clone(), &table)
                .map_err(|e| match e {
                    MeasureError::NotNormalized(sum) => MeasureError::TableNotNormalized {
                        a_setting: sa.clone(),
                        b_setting: sb.clone(),
                        sum,
                    },
                    other => other,
                })?;
            slots[ia * b_settings.len() + ib] = Some(joint);
        }
        if let Some(missing) = slots.iter().position(|s| s.is_none()) {
            let ia = missing / b_settings.len();
            let ib = missing % b_settings.len();
            return Err(MeasureError::MissingSettingPair(
                a_settings[ia].clone(),
                b_settings[ib].clone(),
            ));
        }
        Ok(ConditionalJointPmf {
            a_outcomes,
            b_outcomes,
            a_settings,
            b_settings,
            tables: slots.into_iter().map(|s| s.unwrap()).collect(),
        })
    }

    pub fn a_outcomes(&self) -> &[String] {
        &self.a_outcomes
    }

    pub fn b_outcomes(&self) -> &[String] {
        &self.b_outcomes
    }

    pub fn a_settings(&self) -> &[String] {
        &self.a_settings
    }

    pub fn b_settings(&self) -> &[String] {
        &self.b_settings
    }

    pub fn joint_at(&self, a_setting: &str, b_setting: &str) -> Result<&JointDistribution> {
        let ia = self.a_settings.iter().position(|s| s == a_setting);
        let ib = self.b_settings.iter().position(|s| s == b_setting);
        match (ia, ib) {
            (Some(ia), Some(ib)) => Ok(&self.tables[ia * self.b_settings.len() + ib]),
            _ => Err(MeasureError::UnknownSettingPair(
                a_setting.to_string(),
                b_setting.to_string(),
            )),
        }
    }
}

/// `H(B|A) = H(A,B) − H(A)` (or the symmetric form) at a fixed setting pair.
pub fn conditional_entropy(
    pmf: &ConditionalJointPmf,
    a_setting: &str,
    b_setting: &str,
    condition_on: Party,
) -> Result<f64> {
    let joint = pmf.joint_at(a_setting, b_setting)?;
    let h = match condition_on {
        Party::A => joint.joint_entropy() - joint.entropy_a(),
        Party::B => joint.joint_entropy() - joint.entropy_b(),
    };
    Ok(clamp_rounding(h))
}

/// `I(A:B) = H(A) + H(B) − H(A,B)` at a fixed setting pair; symmetric and
/// nonnegative.
pub fn mutual_information(
    pmf: &ConditionalJointPmf,
    a_setting: &str,
    b_setting: &str,
) -> Result<f64> {
    let joint = pmf.joint_at(a_setting, b_setting)?;
    Ok(clamp_rounding(
        joint.entropy_a() + joint.entropy_b() - joint.joint_entropy(),
    ))
}

/// Coherent information `−H(A|B)`, taken literally on the classical table
/// (hence `≤ 0` on classical data).
pub fn coherent_information(
    pmf: &ConditionalJointPmf,
    a_setting: &str,
    b_setting: &str,
) -> Result<f64> {
    Ok(-conditional_entropy(pmf, a_setting, b_setting, Party::B)? + 0.0)
}
