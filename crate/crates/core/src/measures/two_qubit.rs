use crate::error::{Error, Result};
use crate::states::DensityOperator;
use crate::tensor::{
    hermitian_eigenvalues, matrix_sqrt_psd, partial_transpose, trace_norm_hermitian, ComplexMatrix,
};

/// Eigenvalues of ρ·ρ̃ below this are zero.
const MU_CLAMP: f64 = 1e-12;

fn require_qubit_pair(rho: &DensityOperator) -> Result<()> {
    if rho.dims().as_slice() != [2, 2] {
        return Err(Error::IncompatibleMeasure(format!(
            "two-qubit formula applied to dims {:?}",
            rho.dims().as_slice()
        )));
    }
    Ok(())
}

/// ρ̃ = (σ_y ⊗ σ_y) ρ* (σ_y ⊗ σ_y).
pub fn spin_flip(rho: &ComplexMatrix) -> ComplexMatrix {
    // σ_y⊗σ_y is real: anti-diagonal with signs (−1, 1, 1, −1).
    const SIGN: [f64; 4] = [-1.0, 1.0, 1.0, -1.0];
    let mut out = ComplexMatrix::zeros(4);
    for i in 0..4 {
        for j in 0..4 {
            out[(i, j)] = rho[(3 - i, 3 - j)].conj() * (SIGN[i] * SIGN[j]);
        }
    }
    out
}

/// √μᵢ in descending order, μᵢ the eigenvalues of ρρ̃ obtained from the
/// Hermitian similar matrix √ρ ρ̃ √ρ.
fn sqrt_spin_flip_spectrum(rho: &DensityOperator) -> Result<Vec<f64>> {
    require_qubit_pair(rho)?;
    let m = rho.matrix();
    let root = matrix_sqrt_psd(m)?;
    let r = root.matmul(&spin_flip(m))?.matmul(&root)?.hermitian_part();
    let mu = hermitian_eigenvalues(&r)?;
    Ok(mu
        .into_iter()
        .map(|x| if x < MU_CLAMP { 0.0 } else { x.sqrt() })
        .collect())
}

/// Two-qubit concurrence, max(0, √μ₁ − √μ₂ − √μ₃ − √μ₄).
pub fn concurrence_two_qubit(rho: &DensityOperator) -> Result<f64> {
    let s = sqrt_spin_flip_spectrum(rho)?;
    Ok((s[0] - s[1] - s[2] - s[3]).max(0.0))
}

/// Two-qubit concurrence of assistance, Σ √μᵢ = Tr √(√ρ ρ̃ √ρ).
pub fn coa_two_qubit(rho: &DensityOperator) -> Result<f64> {
    Ok(sqrt_spin_flip_spectrum(rho)?.iter().sum())
}

/// SCREN of a two-qubit state. Two-qubit pure states have N = C, so the
/// negativity roof coincides with the concurrence roof.
pub fn scren_two_qubit(rho: &DensityOperator) -> Result<f64> {
    Ok(concurrence_two_qubit(rho)?.powi(2))
}

/// SCRENoA of a two-qubit state, C_a².
pub fn screnoa_two_qubit(rho: &DensityOperator) -> Result<f64> {
    Ok(coa_two_qubit(rho)?.powi(2))
}

/// ‖ρ^{T_part}‖₁ − 1.
pub fn negativity(rho: &DensityOperator, part: &[usize]) -> Result<f64> {
    if part.is_empty() {
        return Err(Error::InvalidArgument("empty transposition set".into()));
    }
    let pt = partial_transpose(rho.matrix(), rho.dims(), part)?;
    Ok((trace_norm_hermitian(&pt)? - 1.0).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{ghz_state, pair_reductions, random_mixed, w_state, QuantumState};
    use crate::tensor::{kron, DimList};

    fn bell_projector() -> DensityOperator {
        ghz_state(2).unwrap().projector()
    }

    fn w4_pair() -> DensityOperator {
        let w = QuantumState::Pure(w_state(4).unwrap());
        pair_reductions(&w, 0).unwrap().pairs.remove(0)
    }

    #[test]
    fn bell_values() {
        let b = bell_projector();
        assert!((concurrence_two_qubit(&b).unwrap() - 1.0).abs() < 1e-7);
        assert!((coa_two_qubit(&b).unwrap() - 1.0).abs() < 1e-7);
        assert!((negativity(&b, &[0]).unwrap() - 1.0).abs() < 1e-12);
        assert!((scren_two_qubit(&b).unwrap() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn w4_pair_values() {
        let p = w4_pair();
        assert!((concurrence_two_qubit(&p).unwrap() - 0.5).abs() < 1e-7);
        assert!((coa_two_qubit(&p).unwrap() - 0.5).abs() < 1e-7);
        assert!((screnoa_two_qubit(&p).unwrap() - 0.25).abs() < 1e-7);
    }

    #[test]
    fn maximally_mixed_values() {
        let mm = DensityOperator::maximally_mixed(DimList::qubits(2));
        assert!(concurrence_two_qubit(&mm).unwrap().abs() < 1e-12);
        assert!((coa_two_qubit(&mm).unwrap() - 1.0).abs() < 1e-12);
        assert!(scren_two_qubit(&mm).unwrap().abs() < 1e-12);
        assert!((screnoa_two_qubit(&mm).unwrap() - 1.0).abs() < 1e-12);
        assert!(negativity(&mm, &[0]).unwrap().abs() < 1e-12);
    }

    #[test]
    fn product_state_has_no_negativity() {
        let a = ComplexMatrix::from_real_rows(&[&[0.7, 0.3], &[0.3, 0.3]]).unwrap();
        let b = ComplexMatrix::from_real_rows(&[&[0.5, 0.1], &[0.1, 0.5]]).unwrap();
        let rho = DensityOperator::new(DimList::qubits(2), kron(&a, &b).unwrap()).unwrap();
        assert!(negativity(&rho, &[0]).unwrap().abs() < 1e-12);
        assert!(concurrence_two_qubit(&rho).unwrap().abs() < 1e-7);
    }

    #[test]
    fn wrong_dims_rejected() {
        let rho = DensityOperator::maximally_mixed(DimList::new(vec![2, 3]).unwrap());
        assert!(matches!(
            concurrence_two_qubit(&rho),
            Err(Error::IncompatibleMeasure(_))
        ));
        assert!(coa_two_qubit(&rho).is_err());
    }

    #[test]
    fn pure_input_matches_pure_formula() {
        for seed in 0..20 {
            let psi = crate::states::haar_random_pure(&DimList::qubits(2), seed).unwrap();
            let c_pure = crate::measures::concurrence_pure(&psi, &[0]).unwrap();
            let rho = psi.projector();
            assert!((concurrence_two_qubit(&rho).unwrap() - c_pure).abs() < 1e-6);
            assert!((coa_two_qubit(&rho).unwrap() - c_pure).abs() < 1e-6);
        }
    }

    #[test]
    fn assistance_dominates_concurrence() {
        let dims = DimList::qubits(2);
        for seed in 0..200 {
            let rank = 1 + (seed as usize % 4);
            let rho = random_mixed(&dims, rank, seed).unwrap();
            let c = concurrence_two_qubit(&rho).unwrap();
            let ca = coa_two_qubit(&rho).unwrap();
            assert!(ca >= c - 1e-12, "seed {seed}: {ca} < {c}");
        }
    }
}
