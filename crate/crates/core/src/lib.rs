//! Decide whether high-dimensional entangled pure states can be built from
//! lower-dimensional entangled pairs under local unitaries, and certify the
//! states that cannot.
//!
//! A bipartite state of two D-level systems with D = d₁·d₂ is *decomposable*
//! if it equals, up to local unitaries on each side, a tensor product of a
//! d₁×d₁-level and a d₂×d₂-level entangled pair. Whether this holds is a
//! function of the Schmidt coefficients alone: arrange them into a d₁×d₂
//! matrix with nonincreasing rows and columns, and the state is decomposable
//! exactly when some admissible arrangement has rank one. The admissible
//! arrangements are indexed by standard Young tableaux of the rectangular
//! shape, and the maximal overlap with the decomposable set is the largest
//! top singular value over those arrangements.
//!
//! The crate provides:
//!
//! - [`statevec`]: dense multipartite states, local unitaries, regrouping,
//!   partial traces, JSON state files;
//! - [`constructors`]: named states (maximally entangled, GHZ, weighted graph
//!   and hypergraph states, witness extremizers) and graph transformations;
//! - [`schmidt`]: coefficient matrices, Schmidt spectra, the exact
//!   local-unitary overlap bound;
//! - [`tableaux`]: standard Young tableau enumeration, hook-length counting,
//!   and the rank-one backtracking search;
//! - [`decompose`]: exact decomposability tests, maximal overlaps, extremal
//!   witness states and witness evaluation on density matrices;
//! - [`seesaw`]: alternating optimization over factor states and local
//!   unitaries for full and bipartition decomposability, and the
//!   fully-decomposable / MME / GMME classifier.

pub mod constructors;
pub mod decompose;
pub mod error;
pub mod schmidt;
pub mod seesaw;
pub mod statevec;
pub mod tableaux;

pub use error::{Error, Result};
pub use schmidt::{CoefficientMatrix, SchmidtSpectrum};
pub use statevec::{Bipartition, DensityMatrix, FactorizationSpec, Operator, PureState};
pub use tableaux::{ArrangementMatrix, YoungTableau};

/// Normalization tolerance promised by constructors and unitary application.
pub const NORM_TOL: f64 = 1e-12;
/// Unitarity tolerance for user-supplied local unitaries.
pub const UNITARY_TOL: f64 = 1e-10;
/// Hermiticity and trace tolerance for density matrices.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Eigenvalues of a density matrix may dip this far below zero.
pub const PSD_TOL: f64 = 1e-9;
/// Rank-one test: second singular value of an arrangement below this is zero.
pub const RANK_ONE_TOL: f64 = 1e-9;
