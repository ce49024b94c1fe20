//! Entanglement-assisted classical-quantum (CQE) capacity regions.
//!
//! The crate is layered bottom-up:
//!
//! - [`qlinalg`]: dense complex matrices, labelled states, partial traces,
//!   Hermitian eigendecomposition and entropies (bits).
//! - [`channels`]: Kraus channels, isometric extensions and the built-in
//!   dephasing, erasure and completely depolarizing channels.
//! - [`entropics`]: ensembles, the block-diagonal state σ^{XABE} and its
//!   conditional entropic quantities.
//! - [`regions`]: one-shot polytopes, vertex enumeration, unit-protocol
//!   arithmetic and child protocols.
//! - [`closedform`]: single-letter formulas for the erasure, dephasing and
//!   depolarizing channels.
//! - [`bounds`]: continuity, gentle-measurement and data-processing checks.

pub mod bounds;
pub mod channels;
pub mod closedform;
pub mod entropics;
mod error;
pub mod qlinalg;
pub mod random;
pub mod regions;

pub use error::{Error, Result};
