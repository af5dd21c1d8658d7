//! Iterative solvers for the linear complementarity problem
//!
//! Given a square matrix `A` and a vector `sigma`, `LCP(sigma, A)` asks for a
//! vector `lambda` with
//!
//! ```text
//! lambda >= 0,   w = A lambda + sigma >= 0,   lambda^T w = 0.
//! ```
//!
//! The crate is organized around a small sparse CSR matrix type and a family
//! of stationary iterations built from matrix splittings `A = M - N`:
//!
//! - [`matrix`]: CSR storage, the `D - L - U` decomposition, comparison
//!   matrices, Z/M/H/H+/P classification and Perron-root estimation.
//! - [`splittings`]: the NPJ / NPGS / NPSOR / NPAOR splitting family and the
//!   M-splitting / H-compatible predicates.
//! - [`solvers`]: the projected fixed-point iteration, the modulus-based
//!   MGS / MSOR baseline and the shared residual machinery.
//! - [`convergence`]: the iteration operator `T` and sufficient-condition
//!   certificates for convergence.
//! - [`problems`]: block-tridiagonal benchmark generators, random H+
//!   instances and an exhaustive support-enumeration oracle.
//! - [`io`]: MatrixMarket and plain-text vector files.
//!
//! All numerics are generic over [`Scalar`] (implemented for `f32` and
//! `f64`); the `*64` aliases below fix the common double precision case.
//!
//! ```
//! use lcpkit::{problems, solvers, splittings};
//!
//! let problem = problems::gen_example1::<f64>(10, 4.0).unwrap();
//! let split = splittings::make_splitting(&problem.a, splittings::SplittingKind::Npgs).unwrap();
//! let cfg = solvers::SolverConfig::new(1e-5, 10_000, problems::alternating_start(100)).unwrap();
//! let report = solvers::projected_solve(&problem, &split, &cfg).unwrap();
//! assert!(report.converged);
//! assert_eq!(report.iterations, 21);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod convergence;
pub mod dense;
mod error;
pub mod io;
pub mod matrix;
pub mod problems;
mod scalar;
pub mod solvers;
pub mod splittings;

pub use error::{LcpError, Result};
pub use scalar::Scalar;

pub use convergence::{ConvergenceCertificate, RhoEstimate, RhoMode};
pub use matrix::{ClassificationReport, DluParts, LinearOperator, SparseMatrix, SpectralEstimate};
pub use problems::{BenchSpec, Family};
pub use solvers::{LcpProblem, ModulusConfig, ModulusVariant, SolveReport, SolverConfig};
pub use splittings::{Splitting, SplittingAnalysis, SplittingKind};

pub type SparseMatrix64 = SparseMatrix<f64>;
pub type SparseMatrix32 = SparseMatrix<f32>;
pub type LcpProblem64 = LcpProblem<f64>;
pub type LcpProblem32 = LcpProblem<f32>;
pub type Splitting64 = Splitting<f64>;
pub type SplittingKind64 = SplittingKind<f64>;
pub type SolverConfig64 = SolverConfig<f64>;
pub type SolveReport64 = SolveReport<f64>;
pub type ModulusConfig64 = ModulusConfig<f64>;
pub type ConvergenceCertificate64 = ConvergenceCertificate<f64>;
