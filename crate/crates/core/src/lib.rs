//! Multiqubit entanglement monogamy toolkit.
//!
//! Computes concurrence, concurrence of assistance, negativity and the
//! squared convex-roof extended negativity (SCREN) together with its
//! assistance dual, for small pure and mixed states. On top of those it
//! evaluates the Hamming-weight family of monogamy lower bounds and
//! polygamy upper bounds, checks their preconditions, and reports slacks.
//!
//! Modules, bottom-up:
//!
//! - [`tensor`]: dense complex matrices, Jacobi eigensolver, partial trace/transpose.
//! - [`states`]: state construction, sampling, reductions, JSON files.
//! - [`measures`]: closed-form measures plus a convex-roof optimizer.
//! - [`monogamy`]: coefficients, bounds, conditions, and the verdict engine.

pub mod error;
pub mod measures;
pub mod monogamy;
pub mod states;
pub mod tensor;

pub use error::{Error, Result};
pub use measures::MeasureKind;
pub use monogamy::{BoundReport, BoundScheme, BoundSpec, PairValues};
pub use states::{DensityOperator, MultipartiteState, QuantumState};
pub use tensor::{ComplexMatrix, DimList};

/// Crate version embedded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
