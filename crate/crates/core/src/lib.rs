//! # entrosep-core
//!
//! Entropic separability conditions for bipartite quantum systems in finite
//! dimensions.
//!
//! Local measurements on two subsystems are combined into a joint POVM by the
//! *convolution scheme*: the joint element `k` is `Σ_i N_{A,i} ⊗ N_{B,k-i}` with
//! the index difference taken modulo the number of outcomes. For product states
//! the joint distribution is the cyclic convolution of the local ones, so local
//! entropic uncertainty bounds (Maassen–Uffink type, majorization type, and the
//! index-of-coincidence bounds for MUBs, MUMs, SIC-POVMs and general SIC-POVMs)
//! turn into inequalities obeyed by every separable state. A violation certifies
//! entanglement.
//!
//! ## Layout
//!
//! - [`linalg`]: dense complex matrices, Hermitian eigenvalues, spectral norm,
//!   Kronecker products, partial trace and density-matrix validation.
//! - [`entropy`]: probability vectors, cyclic convolution, Rényi/Tsallis
//!   entropies, the α-logarithm and majorization.
//! - [`states`]: the Werner family, the two-qutrit family, product mixtures.
//! - [`measurements`]: rank-one and general POVMs, MUB/SIC/MUM/general-SIC
//!   constructions and their validators.
//! - [`majorization`]: the `s_k` profile of an overlap matrix and the
//!   majorizing vectors built from it.
//! - [`criteria`]: convolution POVMs and every separability condition.
//! - [`sampling`]: Haar-random states and random separable mixtures.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod criteria;
pub mod entropy;
mod error;
pub mod linalg;
pub mod majorization;
pub mod measurements;
pub mod sampling;
pub mod states;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, DensityMatrix, C64};

/// Numerical tolerances shared across the crate.
pub mod tol {
    /// Allowed deviation from Hermiticity of a density matrix.
    pub const HERMITIAN: f64 = 1e-9;
    /// Allowed deviation of a trace from one.
    pub const TRACE: f64 = 1e-9;
    /// Smallest eigenvalue still accepted as positive semidefinite.
    pub const PSD: f64 = 1e-9;
    /// Probability-vector normalization and clamping tolerance.
    pub const PROB: f64 = 1e-9;
    /// Tolerance on `Σ N_i = I` and on the structural measurement relations.
    pub const POVM: f64 = 1e-9;
    /// A criterion is violated only when its margin falls below `-CRITERION`.
    pub const CRITERION: f64 = 1e-9;
    /// Orders within this distance of one use the Shannon formula.
    pub const SHANNON_WINDOW: f64 = 1e-7;
    /// Ties between consecutive `s_k` values are merged below this gap.
    pub const S_TIE: f64 = 1e-10;
}
