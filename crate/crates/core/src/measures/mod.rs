//! Correlation measures: concurrence, concurrence of assistance, negativity,
//! SCREN and SCRENoA, plus the convex-roof optimizer used as their oracle.

mod roof;
mod two_qubit;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::states::{reduce_amplitudes, DensityOperator, MultipartiteState};
use crate::tensor::{hermitian_eigenvalues, normalize_set, DimList};

pub use roof::{convex_roof, RoofConfig, RoofDirection, RoofResult};
pub use two_qubit::{
    coa_two_qubit, concurrence_two_qubit, negativity, scren_two_qubit, screnoa_two_qubit, spin_flip,
};

/// Which correlation quantity a pair value or cut value refers to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureKind {
    Concurrence,
    ConcurrenceOfAssistance,
    Negativity,
    Scren,
    ScrenOa,
    GenericQ { label: String, gamma: f64 },
}

impl MeasureKind {
    /// The power at which the two-party relation is monogamous: 2 for
    /// concurrence, 1 for SCREN; `None` when it has to be supplied.
    pub fn default_gamma(&self) -> Option<f64> {
        match self {
            MeasureKind::Concurrence | MeasureKind::ConcurrenceOfAssistance => Some(2.0),
            MeasureKind::Scren | MeasureKind::ScrenOa => Some(1.0),
            MeasureKind::Negativity => None,
            MeasureKind::GenericQ { gamma, .. } => Some(*gamma),
        }
    }

    /// Assistance (max-roof) measures pair with polygamy upper bounds.
    pub fn is_assistance(&self) -> bool {
        matches!(
            self,
            MeasureKind::ConcurrenceOfAssistance | MeasureKind::ScrenOa
        )
    }

    pub fn label(&self) -> &str {
        match self {
            MeasureKind::Concurrence => "concurrence",
            MeasureKind::ConcurrenceOfAssistance => "coa",
            MeasureKind::Negativity => "negativity",
            MeasureKind::Scren => "scren",
            MeasureKind::ScrenOa => "screnoa",
            MeasureKind::GenericQ { label, .. } => label,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            MeasureKind::GenericQ { gamma, .. } if gamma.is_nan() || *gamma < 1.0 => Err(
                Error::InvalidArgument(format!("generic measure needs gamma >= 1, got {gamma}")),
            ),
            _ => Ok(()),
        }
    }

    /// Value on the cut `focus | rest` of a pure state.
    pub fn cut_value(&self, state: &MultipartiteState, focus: &[usize]) -> Result<f64> {
        match self {
            MeasureKind::Concurrence | MeasureKind::ConcurrenceOfAssistance => {
                concurrence_pure(state, focus)
            }
            MeasureKind::Negativity => negativity_pure(state, focus),
            MeasureKind::Scren => scren_pure(state, focus),
            MeasureKind::ScrenOa => screnoa_pure(state, focus),
            MeasureKind::GenericQ { label, .. } => Err(Error::IncompatibleMeasure(format!(
                "no evaluator for generic measure '{label}'"
            ))),
        }
    }

    /// Value on a two-party reduction. Two-qubit pairs use closed forms;
    /// other pairs fall back to the convex roof when `roof` is given.
    pub fn pair_value(&self, rho: &DensityOperator, roof: Option<&RoofConfig>) -> Result<f64> {
        let qubit_pair = rho.dims().as_slice() == [2, 2];
        let need_roof = |what: &str| -> Result<&RoofConfig> {
            roof.ok_or_else(|| {
                Error::IncompatibleMeasure(format!(
                    "{what} of a {:?} pair needs the convex-roof oracle",
                    rho.dims().as_slice()
                ))
            })
        };
        match self {
            MeasureKind::Concurrence if qubit_pair => concurrence_two_qubit(rho),
            MeasureKind::ConcurrenceOfAssistance if qubit_pair => coa_two_qubit(rho),
            MeasureKind::Scren if qubit_pair => scren_two_qubit(rho),
            MeasureKind::ScrenOa if qubit_pair => screnoa_two_qubit(rho),
            MeasureKind::Negativity => negativity(rho, &[0]),
            MeasureKind::Concurrence => {
                let cfg = need_roof("concurrence")?.with_direction(RoofDirection::Min);
                Ok(convex_roof(rho, bipartite_concurrence, &cfg)?.value)
            }
            MeasureKind::ConcurrenceOfAssistance => {
                let cfg =
                    need_roof("concurrence of assistance")?.with_direction(RoofDirection::Max);
                Ok(convex_roof(rho, bipartite_concurrence, &cfg)?.value)
            }
            MeasureKind::Scren => {
                let cfg = need_roof("SCREN")?.with_direction(RoofDirection::Min);
                Ok(convex_roof(rho, bipartite_negativity, &cfg)?.value.powi(2))
            }
            MeasureKind::ScrenOa => {
                let cfg = need_roof("SCRENoA")?.with_direction(RoofDirection::Max);
                Ok(convex_roof(rho, bipartite_negativity, &cfg)?.value.powi(2))
            }
            MeasureKind::GenericQ { label, .. } => Err(Error::IncompatibleMeasure(format!(
                "no evaluator for generic measure '{label}'"
            ))),
        }
    }
}

fn check_bipartition(state: &MultipartiteState, focus: &[usize]) -> Result<Vec<usize>> {
    let focus = normalize_set(focus);
    let n = state.num_subsystems();
    if let Some(&k) = focus.iter().find(|&&k| k >= n) {
        return Err(Error::SubsystemOutOfRange { index: k, count: n });
    }
    if focus.is_empty() || focus.len() == n {
        return Err(Error::InvalidArgument(format!(
            "focus {focus:?} is not a nonempty proper subset of {n} subsystems"
        )));
    }
    Ok(focus)
}

fn focus_spectrum(state: &MultipartiteState, focus: &[usize]) -> Result<Vec<f64>> {
    let focus = check_bipartition(state, focus)?;
    let rho_a = reduce_amplitudes(state.dims(), state.amps(), &focus)?;
    Ok(hermitian_eigenvalues(&rho_a)?
        .into_iter()
        .map(|x| x.max(0.0))
        .collect())
}

/// C(|ψ⟩) = √(2[1 − Tr ρ_A²]) across `focus | rest`.
pub fn concurrence_pure(state: &MultipartiteState, focus: &[usize]) -> Result<f64> {
    let focus = check_bipartition(state, focus)?;
    let rho_a = reduce_amplitudes(state.dims(), state.amps(), &focus)?;
    let purity: f64 = rho_a.entries().iter().map(|z| z.norm_sqr()).sum();
    Ok((2.0 * (1.0 - purity)).max(0.0).sqrt())
}

/// N(|ψ⟩) = (Tr √ρ_A)² − 1 across `focus | rest`.
pub fn negativity_pure(state: &MultipartiteState, focus: &[usize]) -> Result<f64> {
    let spectrum = focus_spectrum(state, focus)?;
    Ok(negativity_from_spectrum(&spectrum))
}

/// SCREN of a pure state: the only decomposition is the state itself.
pub fn scren_pure(state: &MultipartiteState, focus: &[usize]) -> Result<f64> {
    Ok(negativity_pure(state, focus)?.powi(2))
}

/// SCRENoA of a pure state; identical to [`scren_pure`].
pub fn screnoa_pure(state: &MultipartiteState, focus: &[usize]) -> Result<f64> {
    scren_pure(state, focus)
}

fn negativity_from_spectrum(spectrum: &[f64]) -> f64 {
    let s: f64 = spectrum.iter().map(|&x| x.max(0.0).sqrt()).sum();
    (s * s - 1.0).max(0.0)
}

/// Schmidt coefficients squared of a normalized vector on `dims[0] ⊗ rest`,
/// computed from the smaller side's Gram matrix.
fn schmidt_spectrum(dims: &DimList, amps: &[Complex64]) -> Vec<f64> {
    let d0 = dims.get(0);
    let d1 = amps.len() / d0;
    let (small, large, row_major) = if d0 <= d1 {
        (d0, d1, true)
    } else {
        (d1, d0, false)
    };
    let at = |s: usize, l: usize| {
        if row_major {
            amps[s * d1 + l]
        } else {
            amps[l * d1 + s]
        }
    };
    match small {
        1 => vec![1.0],
        2 => {
            let (mut a, mut b, mut c) = (0.0, 0.0, Complex64::new(0.0, 0.0));
            for l in 0..large {
                let (x, y) = (at(0, l), at(1, l));
                a += x.norm_sqr();
                b += y.norm_sqr();
                c += x * y.conj();
            }
            let mean = 0.5 * (a + b);
            let disc = (0.25 * (a - b) * (a - b) + c.norm_sqr()).sqrt();
            vec![mean + disc, (mean - disc).max(0.0)]
        }
        _ => {
            let mut gram = crate::tensor::ComplexMatrix::zeros(small);
            for i in 0..small {
                for j in i..small {
                    let z: Complex64 = (0..large).map(|l| at(i, l) * at(j, l).conj()).sum();
                    gram[(i, j)] = z;
                    gram[(j, i)] = z.conj();
                }
            }
            hermitian_eigenvalues(&gram)
                .map(|v| v.into_iter().map(|x| x.max(0.0)).collect())
                .unwrap_or_else(|_| vec![1.0])
        }
    }
}

/// Pure-state concurrence of a normalized vector across `dims[0] | rest`.
pub fn bipartite_concurrence(dims: &DimList, amps: &[Complex64]) -> f64 {
    let purity: f64 = schmidt_spectrum(dims, amps).iter().map(|x| x * x).sum();
    (2.0 * (1.0 - purity)).max(0.0).sqrt()
}

/// Pure-state negativity of a normalized vector across `dims[0] | rest`.
pub fn bipartite_negativity(dims: &DimList, amps: &[Complex64]) -> f64 {
    negativity_from_spectrum(&schmidt_spectrum(dims, amps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{ghz_state, haar_random_pure, ou_state, w_state};

    fn bell() -> MultipartiteState {
        ghz_state(2).unwrap()
    }

    #[test]
    fn concurrence_of_bell_and_product() {
        assert!((concurrence_pure(&bell(), &[0]).unwrap() - 1.0).abs() < 1e-15);
        let prod = MultipartiteState::basis(DimList::qubits(3), &[0, 1, 0]).unwrap();
        assert!(concurrence_pure(&prod, &[0]).unwrap().abs() < 1e-15);
    }

    #[test]
    fn concurrence_of_w4_cut() {
        let c = concurrence_pure(&w_state(4).unwrap(), &[0]).unwrap();
        assert!((c - 3f64.sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn invalid_bipartitions() {
        let w = w_state(3).unwrap();
        assert!(concurrence_pure(&w, &[]).is_err());
        assert!(concurrence_pure(&w, &[0, 1, 2]).is_err());
        assert!(concurrence_pure(&w, &[3]).is_err());
        assert!(negativity_pure(&w, &[0, 1, 2]).is_err());
    }

    #[test]
    fn pure_negativity_values() {
        assert!((negativity_pure(&bell(), &[0]).unwrap() - 1.0).abs() < 1e-14);
        let w = negativity_pure(&w_state(4).unwrap(), &[0]).unwrap();
        assert!((w - 3f64.sqrt() / 2.0).abs() < 1e-12);
        let ou = negativity_pure(&ou_state(), &[0]).unwrap();
        assert!((ou - 6f64.sqrt() / 3.0).abs() < 1e-12);
    }

    #[test]
    fn pure_scren_values() {
        assert!((screnoa_pure(&w_state(4).unwrap(), &[0]).unwrap() - 0.75).abs() < 1e-12);
        assert!((scren_pure(&bell(), &[0]).unwrap() - 1.0).abs() < 1e-14);
        assert!((scren_pure(&ou_state(), &[0]).unwrap() - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn pure_negativity_matches_partial_transpose_route() {
        for seed in 0..25 {
            let dims = DimList::new(vec![2, 3]).unwrap();
            let psi = haar_random_pure(&dims, seed).unwrap();
            let direct = negativity_pure(&psi, &[0]).unwrap();
            let via_pt = negativity(&psi.projector(), &[0]).unwrap();
            assert!((direct - via_pt).abs() < 1e-8, "seed {seed}");
            assert!((bipartite_negativity(psi.dims(), psi.amps()) - direct).abs() < 1e-12);
            assert!(
                (bipartite_concurrence(psi.dims(), psi.amps())
                    - concurrence_pure(&psi, &[0]).unwrap())
                .abs()
                    < 1e-12
            );
        }
    }

    #[test]
    fn schmidt_spectrum_uses_either_side() {
        let psi = ou_state();
        let dims = DimList::new(vec![3, 4]).unwrap();
        let n = bipartite_negativity(&dims, psi.amps());
        assert!((n - 6f64.sqrt() / 3.0).abs() < 1e-12);
        let dims = DimList::new(vec![4, 3]).unwrap();
        let four_by_three = haar_random_pure(&dims, 9).unwrap();
        let full = negativity_pure(
            &MultipartiteState::new(dims.clone(), four_by_three.amps().to_vec()).unwrap(),
            &[0],
        )
        .unwrap();
        assert!((bipartite_negativity(&dims, four_by_three.amps()) - full).abs() < 1e-10);
    }

    #[test]
    fn generic_q_requires_gamma_at_least_one() {
        let bad = MeasureKind::GenericQ {
            label: "q".into(),
            gamma: 0.5,
        };
        assert!(bad.validate().is_err());
        assert!(bad.cut_value(&bell(), &[0]).is_err());
    }
}
