//! Toolkit for tail-dependence compatibility of matrices in `[0,1]^{d×d}`.
//!
//! A matrix with unit diagonal is a tail-dependence matrix exactly when it
//! lies in the unit-diagonal cross-section of the convex cone spanned by the
//! rank-one matrices `p p^T` over binary vectors `p`. This crate decides that
//! membership (floating-point and exact-rational linear programming), builds
//! explicit copula models realizing any compatible matrix, samples those
//! models reproducibly, and verifies them with a rank-based empirical
//! tail-dependence estimator.
//!
//! Modules map onto the pipeline:
//!
//! * [`matrix`] — validated matrix value types and elementary transforms
//! * [`bernoulli`] — finite distributions of binary vectors/matrices and
//!   their exact moments
//! * [`solver`] — cone-membership decisions and decompositions
//! * [`copula`] — base and composite copula models with samplers and
//!   closed-form evaluators
//! * [`estimator`] — empirical tail-dependence estimation from samples
//! * [`formats`] — CSV/JSON formats shared with the command-line tool

pub mod bernoulli;
pub mod copula;
pub mod error;
pub mod estimator;
pub mod formats;
pub mod matrix;
pub mod solver;

pub use error::{Error, Result};

/// Library-wide cap on matrix dimension. Cone membership enumerates all
/// `2^d - 1` binary vectors, so this keeps desk-scale problems tractable.
pub const MAX_DIM: usize = 20;
