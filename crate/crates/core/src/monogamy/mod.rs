//! Monogamy lower bounds, polygamy upper bounds, their preconditions, and
//! the verdict engine that evaluates them on a state.

mod bounds;
mod coeff;
mod conditions;
mod verdict;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use bounds::{evaluate_bound, lower_bound, upper_bound};
pub use coeff::{binary_vector, coeff_base, hamming_weight, powered};
pub use conditions::{
    admissible_split, check_descending, check_dominance, check_split, split_point, ConditionCheck,
    CONDITION_TOL,
};
pub use verdict::{
    verdict, verdict_from_values, BoundEntry, BoundReport, VerdictInput, VerdictOptions,
};

/// Pair values v_j = Q(ρ_{A B_j}), possibly reordered.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairValues {
    values: Vec<f64>,
    /// `perm[k]` is the original index of `values[k]`.
    perm: Vec<usize>,
    sorted: bool,
}

impl PairValues {
    /// Keeps the given order. Entries must be finite and nonnegative; tiny
    /// negative round-off is clamped.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        let values = values
            .into_iter()
            .map(|v| {
                if !v.is_finite() || v < -CONDITION_TOL {
                    Err(Error::InvalidArgument(format!(
                        "pair value {v} is not >= 0"
                    )))
                } else {
                    Ok(v.max(0.0))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let perm = (0..values.len()).collect();
        Ok(Self {
            values,
            perm,
            sorted: false,
        })
    }

    /// Sorts descending (stable) and records where each value came from.
    pub fn sorted_descending(values: Vec<f64>) -> Result<Self> {
        let raw = Self::new(values)?;
        let mut perm: Vec<usize> = (0..raw.values.len()).collect();
        perm.sort_by(|&a, &b| raw.values[b].total_cmp(&raw.values[a]));
        let values = perm.iter().map(|&k| raw.values[k]).collect();
        Ok(Self {
            values,
            perm,
            sorted: true,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn is_sorted(&self) -> bool {
        self.sorted
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Coefficient family of a bound. Lower bounds need exponent ≥ γ, upper
/// bounds 0 ≤ exponent ≤ γ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "scheme", rename_all = "snake_case")]
pub enum BoundScheme {
    /// Σ v_j^γ.
    Ckw,
    /// Σ v_j^e.
    AlphaPower,
    /// Σ (e/γ)^j v_j^e.
    LegacyGeometric,
    /// Σ x^{w_H(j)} v_j^e.
    HammingLower,
    /// Σ x^j v_j^e.
    GeometricLower,
    /// Σ (e/γ)^{w_H(j)} v_j^e.
    RatioHammingLower,
    /// Σ v_j^γ, the assistance dual of CKW.
    DualSum,
    /// Σ x^{w_H(j)} v_j^e.
    HammingUpper,
    /// Σ x^j v_j^e.
    GeometricUpper,
    /// Geometric up to m, then x^{m+2} in the middle and x^{m+1} last.
    /// `None` picks the largest admissible m at evaluation time.
    SplitUpper { m: Option<i32> },
    /// Σ (e/γ)^{w_H(j)} v_j^e.
    RatioHammingUpper,
    /// Σ (e/γ)^j v_j^e.
    RatioGeometricUpper,
}

impl BoundScheme {
    pub fn is_lower(&self) -> bool {
        matches!(
            self,
            BoundScheme::Ckw
                | BoundScheme::AlphaPower
                | BoundScheme::LegacyGeometric
                | BoundScheme::HammingLower
                | BoundScheme::GeometricLower
                | BoundScheme::RatioHammingLower
        )
    }

    /// Whether the bound's exponent is pinned to γ.
    pub fn fixed_exponent(&self) -> bool {
        matches!(self, BoundScheme::Ckw | BoundScheme::DualSum)
    }

    pub fn name(&self) -> String {
        match self {
            BoundScheme::Ckw => "ckw".into(),
            BoundScheme::AlphaPower => "alpha_power".into(),
            BoundScheme::LegacyGeometric => "legacy_geometric".into(),
            BoundScheme::HammingLower => "hamming_lower".into(),
            BoundScheme::GeometricLower => "geometric_lower".into(),
            BoundScheme::RatioHammingLower => "ratio_hamming_lower".into(),
            BoundScheme::DualSum => "dual_sum".into(),
            BoundScheme::HammingUpper => "hamming_upper".into(),
            BoundScheme::GeometricUpper => "geometric_upper".into(),
            BoundScheme::SplitUpper { m: Some(m) } => format!("split_upper_m{m}"),
            BoundScheme::SplitUpper { m: None } => "split_upper".into(),
            BoundScheme::RatioHammingUpper => "ratio_hamming_upper".into(),
            BoundScheme::RatioGeometricUpper => "ratio_geometric_upper".into(),
        }
    }

    pub fn lower_family() -> Vec<BoundScheme> {
        vec![
            BoundScheme::Ckw,
            BoundScheme::AlphaPower,
            BoundScheme::LegacyGeometric,
            BoundScheme::HammingLower,
            BoundScheme::GeometricLower,
            BoundScheme::RatioHammingLower,
        ]
    }

    pub fn upper_family() -> Vec<BoundScheme> {
        vec![
            BoundScheme::DualSum,
            BoundScheme::HammingUpper,
            BoundScheme::GeometricUpper,
            BoundScheme::SplitUpper { m: None },
            BoundScheme::RatioHammingUpper,
            BoundScheme::RatioGeometricUpper,
        ]
    }

    /// Coefficient of term j out of n. `SplitUpper { m: None }` must be
    /// resolved first.
    pub fn coefficient(&self, j: usize, n: usize, exponent: f64, gamma: f64) -> Result<f64> {
        let x = coeff_base(exponent, gamma);
        let ratio = exponent / gamma;
        let w = hamming_weight(j as u64) as i32;
        let ji = j as i32;
        Ok(match self {
            BoundScheme::Ckw | BoundScheme::AlphaPower | BoundScheme::DualSum => 1.0,
            BoundScheme::LegacyGeometric | BoundScheme::RatioGeometricUpper => ratio.powi(ji),
            BoundScheme::HammingLower | BoundScheme::HammingUpper => x.powi(w),
            BoundScheme::GeometricLower | BoundScheme::GeometricUpper => x.powi(ji),
            BoundScheme::RatioHammingLower | BoundScheme::RatioHammingUpper => ratio.powi(w),
            BoundScheme::SplitUpper { m: Some(m) } => {
                let m = *m;
                if m < -1 {
                    return Err(Error::InvalidArgument(format!("split point {m} < -1")));
                }
                if ji <= m {
                    x.powi(ji)
                } else if j + 1 == n {
                    x.powi(m + 1)
                } else {
                    x.powi(m + 2)
                }
            }
            BoundScheme::SplitUpper { m: None } => {
                return Err(Error::InvalidArgument(
                    "split point must be resolved before evaluation".into(),
                ))
            }
        })
    }
}

/// A scheme at a concrete exponent and γ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundSpec {
    pub scheme: BoundScheme,
    pub exponent: f64,
    pub gamma: f64,
}

impl BoundSpec {
    pub fn new(scheme: BoundScheme, exponent: f64, gamma: f64) -> Self {
        Self {
            scheme,
            exponent,
            gamma,
        }
    }

    /// γ ≥ 1; exponent ≥ γ for lower bounds and in [0, γ] for upper ones.
    pub fn validate(&self) -> Result<()> {
        let (e, g) = (self.exponent, self.gamma);
        if !(g.is_finite() && g >= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "gamma must be >= 1, got {g}"
            )));
        }
        if !e.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "exponent {e} is not finite"
            )));
        }
        if self.scheme.fixed_exponent() && (e - g).abs() > CONDITION_TOL {
            return Err(Error::InvalidArgument(format!(
                "{} is defined only at exponent = gamma = {g}, got {e}",
                self.scheme.name()
            )));
        }
        if self.scheme.is_lower() && e < g - CONDITION_TOL {
            return Err(Error::InvalidArgument(format!(
                "{} needs exponent >= gamma = {g}, got {e}",
                self.scheme.name()
            )));
        }
        if !self.scheme.is_lower() && !(-CONDITION_TOL..=g + CONDITION_TOL).contains(&e) {
            return Err(Error::InvalidArgument(format!(
                "{} needs 0 <= exponent <= gamma = {g}, got {e}",
                self.scheme.name()
            )));
        }
        Ok(())
    }
}
