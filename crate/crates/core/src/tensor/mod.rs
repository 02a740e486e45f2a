//! Dense complex linear algebra for small multipartite systems.

mod eigen;
mod matrix;
mod ops;

pub(crate) use eigen::check_psd;
pub use eigen::{
    hermitian_eig, hermitian_eigenvalues, matrix_sqrt_psd, trace_norm_hermitian,
    EigenDecomposition, PSD_CLAMP,
};
pub use matrix::{ComplexMatrix, DimList, DEFAULT_DIM_CAP};
pub(crate) use ops::normalize_set;
pub use ops::{kron, kron_capped, partial_trace, partial_transpose};
