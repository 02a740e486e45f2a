//! Multipartite pure states, density operators, and the named example states.

mod io;
mod random;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tensor::{
    check_psd, hermitian_eigenvalues, normalize_set, partial_trace, ComplexMatrix, DimList,
    DEFAULT_DIM_CAP,
};

pub use io::{load_state, save_state, state_from_json, state_to_json};
pub use random::{haar_random_pure, haar_unitary, random_mixed, rng_for};

/// Tolerance on ‖ψ‖₂ = 1 for constructed states.
pub const NORM_TOL: f64 = 1e-10;

/// Normalized pure state on a tensor product of subsystems.
#[derive(Debug, Clone, PartialEq)]
pub struct MultipartiteState {
    dims: DimList,
    amps: Vec<Complex64>,
}

impl MultipartiteState {
    /// Wraps amplitudes that must already be normalized to within [`NORM_TOL`].
    pub fn new(dims: DimList, amps: Vec<Complex64>) -> Result<Self> {
        let total = dims.checked_total(DEFAULT_DIM_CAP)?;
        if amps.len() != total {
            return Err(Error::DimMismatch(format!(
                "{} amplitudes for dims {:?} (expected {total})",
                amps.len(),
                dims.as_slice()
            )));
        }
        let norm = l2_norm(&amps);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState(format!(
                "amplitude norm {norm} is not 1"
            )));
        }
        Ok(Self { dims, amps })
    }

    /// Normalizes arbitrary nonzero amplitudes.
    pub fn from_unnormalized(dims: DimList, mut amps: Vec<Complex64>) -> Result<Self> {
        let norm = l2_norm(&amps);
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidState(
                "zero or non-finite amplitude vector".into(),
            ));
        }
        amps.iter_mut().for_each(|a| *a /= norm);
        Self::new(dims, amps)
    }

    /// Computational basis state with the given digits.
    pub fn basis(dims: DimList, digits: &[usize]) -> Result<Self> {
        if digits.len() != dims.len() || digits.iter().zip(dims.as_slice()).any(|(b, d)| b >= d) {
            return Err(Error::InvalidArgument(format!(
                "basis digits {digits:?} invalid for dims {:?}",
                dims.as_slice()
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dims.total()];
        amps[dims.compose(digits)] = Complex64::new(1.0, 0.0);
        Self::new(dims, amps)
    }

    pub fn dims(&self) -> &DimList {
        &self.dims
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn num_subsystems(&self) -> usize {
        self.dims.len()
    }

    pub fn norm(&self) -> f64 {
        l2_norm(&self.amps)
    }

    pub fn projector(&self) -> DensityOperator {
        DensityOperator {
            dims: self.dims.clone(),
            mat: ComplexMatrix::outer(&self.amps),
        }
    }

    /// Tensor product `self ⊗ other`.
    pub fn tensor(&self, other: &MultipartiteState) -> Result<Self> {
        let dims = self.dims.concat(&other.dims);
        dims.checked_total(DEFAULT_DIM_CAP)?;
        let amps = self
            .amps
            .iter()
            .flat_map(|a| other.amps.iter().map(move |b| a * b))
            .collect();
        Self::new(dims, amps)
    }

    /// Reduced density matrix on `keep`, computed directly from the amplitudes.
    pub fn reduced(&self, keep: &[usize]) -> Result<ComplexMatrix> {
        reduce_amplitudes(&self.dims, &self.amps, keep)
    }

    /// Reduced state on `keep` as a density operator.
    pub fn reduced_operator(&self, keep: &[usize]) -> Result<DensityOperator> {
        let keep = normalize_set(keep);
        Ok(DensityOperator {
            dims: self.dims.select(&keep),
            mat: self.reduced(&keep)?,
        })
    }
}

/// ρ_keep = Tr_rest |ψ⟩⟨ψ| for a (not necessarily normalized) amplitude vector.
pub fn reduce_amplitudes(
    dims: &DimList,
    amps: &[Complex64],
    keep: &[usize],
) -> Result<ComplexMatrix> {
    let keep = normalize_set(keep);
    check_subsystems(dims, &keep)?;
    if keep.is_empty() {
        return Err(Error::InvalidArgument("empty subsystem set".into()));
    }
    if amps.len() != dims.total() {
        return Err(Error::DimMismatch(format!(
            "{} amplitudes for dims {:?}",
            amps.len(),
            dims.as_slice()
        )));
    }
    let traced: Vec<usize> = (0..dims.len()).filter(|k| !keep.contains(k)).collect();
    let keep_dims = dims.select(&keep);
    let traced_dims = dims.select(&traced);
    let n_keep = keep_dims.total();
    let n_traced = if traced.is_empty() {
        1
    } else {
        traced_dims.total()
    };
    // Coefficient matrix M[i][t] so that ρ = M·M†.
    let mut coeff = vec![Complex64::new(0.0, 0.0); n_keep * n_traced];
    for (f, &a) in amps.iter().enumerate() {
        if a.norm_sqr() == 0.0 {
            continue;
        }
        let d = dims.digits(f);
        let i = keep_dims.compose(&keep.iter().map(|&k| d[k]).collect::<Vec<_>>());
        let t = if traced.is_empty() {
            0
        } else {
            traced_dims.compose(&traced.iter().map(|&k| d[k]).collect::<Vec<_>>())
        };
        coeff[i * n_traced + t] = a;
    }
    let mut rho = ComplexMatrix::zeros(n_keep);
    for i in 0..n_keep {
        for j in i..n_keep {
            let mut acc = Complex64::new(0.0, 0.0);
            for t in 0..n_traced {
                acc += coeff[i * n_traced + t] * coeff[j * n_traced + t].conj();
            }
            rho[(i, j)] = acc;
            rho[(j, i)] = acc.conj();
        }
    }
    Ok(rho)
}

fn l2_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn check_subsystems(dims: &DimList, set: &[usize]) -> Result<()> {
    match set.iter().find(|&&k| k >= dims.len()) {
        Some(&k) => Err(Error::SubsystemOutOfRange {
            index: k,
            count: dims.len(),
        }),
        None => Ok(()),
    }
}

/// Density operator with its subsystem structure.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    dims: DimList,
    mat: ComplexMatrix,
}

impl DensityOperator {
    /// Validates Hermiticity (1e-12 scaled), unit trace (1e-10) and PSD (−1e-10).
    pub fn new(dims: DimList, mat: ComplexMatrix) -> Result<Self> {
        let total = dims.checked_total(DEFAULT_DIM_CAP)?;
        if mat.dim() != total {
            return Err(Error::DimMismatch(format!(
                "{0}x{0} matrix for dims {1:?}",
                mat.dim(),
                dims.as_slice()
            )));
        }
        if !mat.is_hermitian() {
            return Err(Error::InvalidState(format!(
                "density matrix not Hermitian (deviation {:e})",
                mat.hermitian_deviation()
            )));
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > 1e-10 || tr.im.abs() > 1e-10 {
            return Err(Error::InvalidState(format!("trace {tr} is not 1")));
        }
        let ev = hermitian_eigenvalues(&mat)?;
        check_psd(&ev).map_err(|_| {
            Error::InvalidState(format!(
                "negative eigenvalue {:e}",
                ev.last().copied().unwrap_or(0.0)
            ))
        })?;
        Ok(Self {
            dims,
            mat: mat.hermitian_part(),
        })
    }

    pub fn maximally_mixed(dims: DimList) -> Self {
        let n = dims.total();
        Self {
            dims,
            mat: ComplexMatrix::identity(n).scale(Complex64::new(1.0 / n as f64, 0.0)),
        }
    }

    pub fn dims(&self) -> &DimList {
        &self.dims
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn num_subsystems(&self) -> usize {
        self.dims.len()
    }

    pub fn reduced(&self, keep: &[usize]) -> Result<DensityOperator> {
        let keep = normalize_set(keep);
        Ok(DensityOperator {
            dims: self.dims.select(&keep),
            mat: partial_trace(&self.mat, &self.dims, &keep)?,
        })
    }

    pub fn purity(&self) -> f64 {
        self.mat.entries().iter().map(|z| z.norm_sqr()).sum()
    }
}

/// Either kind of state, as read from a state file.
#[derive(Debug, Clone, PartialEq)]
pub enum QuantumState {
    Pure(MultipartiteState),
    Mixed(DensityOperator),
}

impl QuantumState {
    pub fn dims(&self) -> &DimList {
        match self {
            QuantumState::Pure(s) => s.dims(),
            QuantumState::Mixed(r) => r.dims(),
        }
    }

    pub fn reduced(&self, keep: &[usize]) -> Result<DensityOperator> {
        match self {
            QuantumState::Pure(s) => s.reduced_operator(keep),
            QuantumState::Mixed(r) => r.reduced(keep),
        }
    }

    pub fn as_pure(&self) -> Option<&MultipartiteState> {
        match self {
            QuantumState::Pure(s) => Some(s),
            QuantumState::Mixed(_) => None,
        }
    }
}

impl From<MultipartiteState> for QuantumState {
    fn from(s: MultipartiteState) -> Self {
        QuantumState::Pure(s)
    }
}

impl From<DensityOperator> for QuantumState {
    fn from(r: DensityOperator) -> Self {
        QuantumState::Mixed(r)
    }
}

/// Two-party reductions ρ_{A B_j} around a focus subsystem A.
#[derive(Debug, Clone)]
pub struct PairReductions {
    pub focus: usize,
    /// Index of the partner subsystem for each entry of `pairs`, ascending.
    pub partners: Vec<usize>,
    pub pairs: Vec<DensityOperator>,
}

/// Keeps `focus` together with each other subsystem in turn.
pub fn pair_reductions(state: &QuantumState, focus: usize) -> Result<PairReductions> {
    let n = state.dims().len();
    if n < 2 {
        return Err(Error::InvalidArgument(
            "pair reductions need at least two subsystems".into(),
        ));
    }
    if focus >= n {
        return Err(Error::SubsystemOutOfRange {
            index: focus,
            count: n,
        });
    }
    let partners: Vec<usize> = (0..n).filter(|&k| k != focus).collect();
    let mut pairs = Vec::with_capacity(partners.len());
    for &j in &partners {
        // focus first so every pair operator acts on [d_A, d_Bj]
        let reduced = state.reduced(&[focus.min(j), focus.max(j)])?;
        pairs.push(if focus < j {
            reduced
        } else {
            swap_two_party(&reduced)
        });
    }
    Ok(PairReductions {
        focus,
        partners,
        pairs,
    })
}

/// Reorders a two-party operator on [d0, d1] to act on [d1, d0].
fn swap_two_party(rho: &DensityOperator) -> DensityOperator {
    let (d0, d1) = (rho.dims.get(0), rho.dims.get(1));
    let mut mat = ComplexMatrix::zeros(d0 * d1);
    for a in 0..d0 {
        for b in 0..d1 {
            for c in 0..d0 {
                for d in 0..d1 {
                    mat[(b * d0 + a, d * d0 + c)] = rho.mat[(a * d1 + b, c * d1 + d)];
                }
            }
        }
    }
    DensityOperator {
        dims: DimList::new(vec![d1, d0]).expect("nonzero dims"),
        mat,
    }
}

/// (|10…0⟩ + |01…0⟩ + … + |0…01⟩)/√n on n qubits.
pub fn w_state(n: usize) -> Result<MultipartiteState> {
    if n < 2 {
        return Err(Error::InvalidArgument("W state needs n >= 2".into()));
    }
    let dims = DimList::qubits(n);
    dims.checked_total(DEFAULT_DIM_CAP)?;
    let mut amps = vec![Complex64::new(0.0, 0.0); dims.total()];
    let a = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
    for k in 0..n {
        amps[1 << k] = a;
    }
    MultipartiteState::new(dims, amps)
}

/// (|0…0⟩ + |1…1⟩)/√2 on n qubits.
pub fn ghz_state(n: usize) -> Result<MultipartiteState> {
    if n < 2 {
        return Err(Error::InvalidArgument("GHZ state needs n >= 2".into()));
    }
    let dims = DimList::qubits(n);
    dims.checked_total(DEFAULT_DIM_CAP)?;
    let mut amps = vec![Complex64::new(0.0, 0.0); dims.total()];
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    amps[0] = h;
    amps[dims.total() - 1] = h;
    MultipartiteState::new(dims, amps)
}

/// The 3⊗2⊗2 state (√2|100⟩ + √2|101⟩ + |200⟩ + |211⟩)/√6 that violates
/// tangle-based monogamy.
pub fn ou_state() -> MultipartiteState {
    let dims = DimList::new(vec![3, 2, 2]).expect("static dims");
    let mut amps = vec![Complex64::new(0.0, 0.0); 12];
    let s2 = 2f64.sqrt();
    for (digits, w) in [
        ([1, 0, 0], s2),
        ([1, 0, 1], s2),
        ([2, 0, 0], 1.0),
        ([2, 1, 1], 1.0),
    ] {
        amps[dims.compose(&digits)] = Complex64::new(w / 6f64.sqrt(), 0.0);
    }
    MultipartiteState::new(dims, amps).expect("normalized by construction")
}
