use serde::Serialize;

use super::bounds::evaluate_bound;
use super::coeff::powered;
use super::conditions::{admissible_split, check_descending, check_dominance, check_split};
use super::{BoundScheme, BoundSpec, PairValues, CONDITION_TOL};
use crate::error::{Error, Result};
use crate::measures::{MeasureKind, RoofConfig};
use crate::states::{pair_reductions, MultipartiteState, QuantumState};

/// Tolerance on slack when deciding whether a bound held numerically.
const SLACK_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct VerdictOptions {
    /// Overrides the measure's own γ; required for negativity.
    pub gamma: Option<f64>,
    /// Keep partner order instead of sorting descending.
    pub unsorted: bool,
    /// Used only for pairs that are not two qubits.
    pub roof: Option<RoofConfig>,
}

impl Default for VerdictOptions {
    fn default() -> Self {
        Self {
            gamma: None,
            unsorted: false,
            roof: Some(RoofConfig::default()),
        }
    }
}

/// Precomputed measure values around one focus subsystem.
#[derive(Debug, Clone)]
pub struct VerdictInput {
    pub focus: usize,
    pub cut_value: f64,
    /// Partner subsystem for each pair value, ascending.
    pub partners: Vec<usize>,
    pub pair_values: Vec<f64>,
}

impl VerdictInput {
    /// Evaluates the cut and every pair of a pure state.
    pub fn compute(
        state: &MultipartiteState,
        focus: usize,
        kind: &MeasureKind,
        roof: Option<&RoofConfig>,
    ) -> Result<Self> {
        kind.validate()?;
        let cut_value = kind.cut_value(state, &[focus])?;
        let red = pair_reductions(&QuantumState::Pure(state.clone()), focus)?;
        let pair_values = red
            .pairs
            .iter()
            .map(|rho| kind.pair_value(rho, roof))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            focus,
            cut_value,
            partners: red.partners,
            pair_values,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundEntry {
    pub name: String,
    pub scheme: BoundScheme,
    pub lower: bool,
    pub bound: f64,
    /// lhs − bound for lower bounds, bound − lhs for upper bounds.
    pub slack: f64,
    pub satisfied: bool,
    /// Whether the scheme's precondition holds for these values and this
    /// measure; bounds are evaluated either way.
    pub applicable: bool,
    pub condition: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub measure: String,
    pub focus: usize,
    pub exponent: f64,
    pub gamma: f64,
    pub cut_value: f64,
    /// cut_value^exponent.
    pub lhs: f64,
    pub partners: Vec<usize>,
    /// In partner order.
    pub pair_values: Vec<f64>,
    pub sorted: bool,
    /// `perm[k]` indexes `pair_values` for the k-th evaluated term.
    pub perm: Vec<usize>,
    pub ordered_values: Vec<f64>,
    /// Q^γ(cut) − Σ Q^γ(pairs).
    pub delta_q: f64,
    pub entries: Vec<BoundEntry>,
}

fn resolve_gamma(kind: &MeasureKind, opts: &VerdictOptions) -> Result<f64> {
    let g = opts.gamma.or(kind.default_gamma()).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "measure '{}' needs an explicit gamma",
            kind.label()
        ))
    })?;
    if !(g.is_finite() && g >= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "gamma must be >= 1, got {g}"
        )));
    }
    Ok(g)
}

fn precondition(
    scheme: &BoundScheme,
    pv: &PairValues,
    gamma: f64,
    exponent: f64,
    kind: &MeasureKind,
) -> (bool, String) {
    if scheme.is_lower() == kind.is_assistance() {
        let side = if scheme.is_lower() {
            "lower bounds pair with entanglement measures, not assistance ones"
        } else {
            "upper bounds pair with assistance measures"
        };
        return (false, side.into());
    }
    match scheme {
        BoundScheme::Ckw | BoundScheme::DualSum => (
            (exponent - gamma).abs() <= CONDITION_TOL,
            "exponent equals gamma".into(),
        ),
        BoundScheme::AlphaPower => (
            exponent >= gamma - CONDITION_TOL,
            "exponent >= gamma".into(),
        ),
        BoundScheme::LegacyGeometric => (
            false,
            "needs cut values of nested sub-collections; not checked".into(),
        ),
        BoundScheme::HammingLower
        | BoundScheme::HammingUpper
        | BoundScheme::RatioHammingLower
        | BoundScheme::RatioHammingUpper => {
            let c = check_descending(pv);
            (c.holds, c.detail)
        }
        BoundScheme::GeometricLower
        | BoundScheme::GeometricUpper
        | BoundScheme::RatioGeometricUpper => {
            let c = check_dominance(pv, gamma);
            (c.holds, c.detail)
        }
        BoundScheme::SplitUpper { m } => match m {
            Some(m) => {
                let c = check_split(pv, gamma, *m);
                (c.holds, c.detail)
            }
            None => (false, "unresolved split point".into()),
        },
    }
}

/// Evaluates `schemes` at each exponent on precomputed values. Schemes whose
/// exponent range excludes a given exponent are left out of that report.
pub fn verdict_from_values(
    input: &VerdictInput,
    kind: &MeasureKind,
    exponents: &[f64],
    schemes: &[BoundScheme],
    opts: &VerdictOptions,
) -> Result<Vec<BoundReport>> {
    let gamma = resolve_gamma(kind, opts)?;
    if input.partners.len() != input.pair_values.len() {
        return Err(Error::DimMismatch(format!(
            "{} partners for {} pair values",
            input.partners.len(),
            input.pair_values.len()
        )));
    }
    let pv = if opts.unsorted {
        PairValues::new(input.pair_values.clone())?
    } else {
        PairValues::sorted_descending(input.pair_values.clone())?
    };
    let delta_q = powered(input.cut_value, gamma)
        - pv.values().iter().map(|&v| powered(v, gamma)).sum::<f64>();
    let auto_m = admissible_split(&pv, gamma).unwrap_or(-1);

    let mut reports = Vec::with_capacity(exponents.len());
    for &exponent in exponents {
        let lhs = powered(input.cut_value, exponent);
        let mut entries = Vec::new();
        for scheme in schemes {
            let scheme = match scheme {
                BoundScheme::SplitUpper { m: None } => BoundScheme::SplitUpper { m: Some(auto_m) },
                s => *s,
            };
            let spec = BoundSpec::new(scheme, exponent, gamma);
            if spec.validate().is_err() {
                continue;
            }
            let bound = evaluate_bound(&pv, &spec)?;
            let slack = if scheme.is_lower() {
                lhs - bound
            } else {
                bound - lhs
            };
            let (applicable, condition) = precondition(&scheme, &pv, gamma, exponent, kind);
            entries.push(BoundEntry {
                name: scheme.name(),
                scheme,
                lower: scheme.is_lower(),
                bound,
                slack,
                satisfied: slack >= -SLACK_TOL,
                applicable,
                condition,
            });
        }
        reports.push(BoundReport {
            measure: kind.label().to_string(),
            focus: input.focus,
            exponent,
            gamma,
            cut_value: input.cut_value,
            lhs,
            partners: input.partners.clone(),
            pair_values: input.pair_values.clone(),
            sorted: pv.is_sorted(),
            perm: pv.perm().to_vec(),
            ordered_values: pv.values().to_vec(),
            delta_q,
            entries,
        });
    }
    Ok(reports)
}

/// Computes the measure around `focus` and evaluates every scheme at every
/// exponent.
pub fn verdict(
    state: &MultipartiteState,
    focus: usize,
    kind: &MeasureKind,
    exponents: &[f64],
    schemes: &[BoundScheme],
    opts: &VerdictOptions,
) -> Result<Vec<BoundReport>> {
    resolve_gamma(kind, opts)?;
    let input = VerdictInput::compute(state, focus, kind, opts.roof.as_ref())?;
    verdict_from_values(&input, kind, exponents, schemes, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{ghz_state, w_state};

    fn entry<'a>(r: &'a BoundReport, name: &str) -> &'a BoundEntry {
        r.entries.iter().find(|e| e.name == name).unwrap()
    }

    #[test]
    fn w4_ckw_is_tight() {
        let w = w_state(4).unwrap();
        let r = verdict(
            &w,
            0,
            &MeasureKind::Concurrence,
            &[2.0],
            &BoundScheme::lower_family(),
            &VerdictOptions::default(),
        )
        .unwrap();
        let ckw = entry(&r[0], "ckw");
        assert!(ckw.slack.abs() < 1e-7);
        assert!(r[0].delta_q.abs() < 1e-7);
        assert!((r[0].cut_value - 3f64.sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn ghz_has_unit_slack() {
        let g = ghz_state(3).unwrap();
        let r = verdict(
            &g,
            0,
            &MeasureKind::Concurrence,
            &[2.0, 3.0],
            &BoundScheme::lower_family(),
            &VerdictOptions::default(),
        )
        .unwrap();
        assert!((entry(&r[0], "ckw").slack - 1.0).abs() < 1e-7);
        // CKW is only defined at γ
        assert!(r[1].entries.iter().all(|e| e.name != "ckw"));
        for e in &r[1].entries {
            assert!((e.slack - 1.0).abs() < 1e-7);
        }
    }

    #[test]
    fn w4_upper_family() {
        let w = w_state(4).unwrap();
        let r = verdict(
            &w,
            0,
            &MeasureKind::ConcurrenceOfAssistance,
            &[1.0],
            &BoundScheme::upper_family(),
            &VerdictOptions::default(),
        )
        .unwrap();
        let lhs = 3f64.sqrt() / 2.0;
        assert!((r[0].lhs - lhs).abs() < 1e-12);
        let split = entry(&r[0], "split_upper_m-1");
        assert!(split.applicable);
        assert!(split.satisfied);
        let geo = entry(&r[0], "geometric_upper");
        assert!(!geo.applicable);
        assert!(!geo.satisfied);
        assert!(entry(&r[0], "hamming_upper").applicable);
    }

    #[test]
    fn mismatched_family_is_flagged() {
        let w = w_state(3).unwrap();
        let r = verdict(
            &w,
            0,
            &MeasureKind::Concurrence,
            &[1.0],
            &[BoundScheme::HammingUpper],
            &VerdictOptions::default(),
        )
        .unwrap();
        assert!(!r[0].entries[0].applicable);
    }

    #[test]
    fn negativity_needs_gamma() {
        let w = w_state(3).unwrap();
        let err = verdict(
            &w,
            0,
            &MeasureKind::Negativity,
            &[2.0],
            &BoundScheme::lower_family(),
            &VerdictOptions::default(),
        );
        assert!(matches!(err, Err(Error::InvalidArgument(_))));
        let opts = VerdictOptions {
            gamma: Some(2.0),
            ..Default::default()
        };
        assert!(verdict(
            &w,
            0,
            &MeasureKind::Negativity,
            &[2.0],
            &[BoundScheme::Ckw],
            &opts
        )
        .is_ok());
    }

    #[test]
    fn unsorted_keeps_partner_order() {
        let input = VerdictInput {
            focus: 0,
            cut_value: 0.9,
            partners: vec![1, 2, 3],
            pair_values: vec![0.1, 0.5, 0.3],
        };
        let kind = MeasureKind::Concurrence;
        let s = verdict_from_values(
            &input,
            &kind,
            &[2.0],
            &[BoundScheme::Ckw],
            &VerdictOptions::default(),
        )
        .unwrap();
        assert_eq!(s[0].perm, vec![1, 2, 0]);
        assert_eq!(s[0].ordered_values, vec![0.5, 0.3, 0.1]);
        let opts = VerdictOptions {
            unsorted: true,
            ..Default::default()
        };
        let u = verdict_from_values(&input, &kind, &[2.0], &[BoundScheme::Ckw], &opts).unwrap();
        assert_eq!(u[0].ordered_values, vec![0.1, 0.5, 0.3]);
        assert!(!u[0].sorted);
    }

    #[test]
    fn report_serializes() {
        let w = w_state(3).unwrap();
        let r = verdict(
            &w,
            1,
            &MeasureKind::Scren,
            &[1.0, 2.0],
            &BoundScheme::lower_family(),
            &VerdictOptions::default(),
        )
        .unwrap();
        let j = serde_json::to_string(&r).unwrap();
        assert!(j.contains("\"measure\":\"scren\""));
    }
}
