//! Dense complex linear algebra for small Hilbert spaces.
//!
//! Everything here works on row-major [`ComplexMatrix`] values. States carry
//! labelled subsystems so that partial traces can be requested by name
//! (`"A"`, `"B"`, `"E"`, ...). Entropies are in bits.

mod eigen;
mod entropy;
mod matrix;
mod state;

pub use eigen::{eig_hermitian, eigvals_hermitian, HermitianEigen};
pub use entropy::{binary_entropy, matrix_sqrt_psd, shannon_entropy, trace_norm, von_neumann_entropy};
pub use matrix::{tensor, ComplexMatrix, HERMITIAN_TOL};
pub use state::{partial_trace, DensityOperator, PureStateVector, Subsystems, EIGEN_CLAMP, TRACE_TOL};

pub(crate) use entropy::{h2, spectrum_entropy};
