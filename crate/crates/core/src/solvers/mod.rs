//! Projected fixed-point iteration, modulus-based baseline and the shared
//! residual machinery.

mod modulus;
mod projected;
mod report;
mod system;

pub use modulus::{modulus_solve, ModulusConfig, ModulusSolver, ModulusVariant};
pub use projected::{projected_solve, IterationState, ProjectedSolver};
pub use report::{RunRecord, SolveReport, CSV_HEADER};
pub use system::SystemSolver;

use crate::matrix::SparseMatrix;
use crate::{LcpError, Result, Scalar};

/// Slack allowed when validating a stored known solution.
pub const KNOWN_SOLUTION_SLACK: f64 = 1e-9;

/// Iterates whose max-norm exceeds this are treated as divergent.
pub const DIVERGENCE_BOUND: f64 = 1e12;

/// `LCP(sigma, A)`: find `lambda >= 0` with `A lambda + sigma >= 0` and
/// `lambda^T (A lambda + sigma) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LcpProblem<T> {
    pub a: SparseMatrix<T>,
    pub sigma: Vec<T>,
    pub known_solution: Option<Vec<T>>,
}

impl<T: Scalar> LcpProblem<T> {
    pub fn new(a: SparseMatrix<T>, sigma: Vec<T>) -> Result<Self> {
        if sigma.len() != a.dim() {
            return Err(LcpError::DimensionMismatch { expected: a.dim(), got: sigma.len() });
        }
        if sigma.iter().any(|v| !v.is_finite()) {
            return Err(LcpError::InvalidParameter("sigma has non-finite entries".into()));
        }
        Ok(Self { a, sigma, known_solution: None })
    }

    /// Attaches a solution after checking it against the complementarity
    /// conditions with [`KNOWN_SOLUTION_SLACK`].
    pub fn with_known_solution(mut self, lambda: Vec<T>) -> Result<Self> {
        if lambda.len() != self.dim() {
            return Err(LcpError::DimensionMismatch { expected: self.dim(), got: lambda.len() });
        }
        let slack = T::lit(KNOWN_SOLUTION_SLACK);
        if let Some(i) = lambda.iter().position(|&v| v < T::zero()) {
            return Err(LcpError::InvalidParameter(format!("known solution negative at index {i}")));
        }
        let w = self.w(&lambda);
        if let Some(i) = w.iter().position(|&v| v < -slack) {
            return Err(LcpError::InvalidParameter(format!("known solution infeasible at index {i}")));
        }
        let gap = lambda.iter().zip(&w).fold(T::zero(), |acc, (&l, &wi)| acc + l * wi);
        if gap.abs() > slack {
            return Err(LcpError::InvalidParameter(format!("known solution complementarity gap {gap}")));
        }
        self.known_solution = Some(lambda);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    /// `w = A lambda + sigma`.
    pub fn w(&self, lambda: &[T]) -> Vec<T> {
        let mut w = self.a.mul_vec(lambda);
        for (wi, &s) in w.iter_mut().zip(&self.sigma) {
            *wi += s;
        }
        w
    }
}

/// Residual threshold, iteration cap and starting vector.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig<T> {
    pub tol: T,
    pub max_iters: usize,
    pub initial: Vec<T>,
}

impl<T: Scalar> SolverConfig<T> {
    pub fn new(tol: T, max_iters: usize, initial: Vec<T>) -> Result<Self> {
        if !(tol > T::zero()) {
            return Err(LcpError::InvalidParameter(format!("tol must be positive, got {tol}")));
        }
        if max_iters < 1 {
            return Err(LcpError::InvalidParameter("max_iters must be at least 1".into()));
        }
        if initial.iter().any(|v| !v.is_finite()) {
            return Err(LcpError::InvalidParameter("initial vector has non-finite entries".into()));
        }
        Ok(Self { tol, max_iters, initial })
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if self.initial.len() != n {
            return Err(LcpError::DimensionMismatch { expected: n, got: self.initial.len() });
        }
        Ok(())
    }
}

/// `Res(lambda) = || min(lambda, A lambda + sigma) ||_2`.
pub fn residual<T: Scalar>(p: &LcpProblem<T>, lambda: &[T]) -> Result<T> {
    if lambda.len() != p.dim() {
        return Err(LcpError::DimensionMismatch { expected: p.dim(), got: lambda.len() });
    }
    let mut scratch = vec![T::zero(); p.dim()];
    Ok(residual_with(p, lambda, &mut scratch))
}

pub(crate) fn residual_with<T: Scalar>(p: &LcpProblem<T>, lambda: &[T], aw: &mut [T]) -> T {
    p.a.mul_vec_into(lambda, aw);
    let mut sum = T::zero();
    for ((&l, &ax), &s) in lambda.iter().zip(aw.iter()).zip(&p.sigma) {
        let m = l.min(ax + s);
        sum += m * m;
    }
    sum.sqrt()
}

pub(crate) fn project_into<T: Scalar>(zeta: &[T], lambda: &mut [T]) {
    for (l, &z) in lambda.iter_mut().zip(zeta) {
        *l = z.max(T::zero());
    }
}

pub(crate) fn check_finite<T: Scalar>(x: &[T], iteration: usize) -> Result<()> {
    let bound = T::lit(DIVERGENCE_BOUND);
    if x.iter().any(|v| !v.is_finite() || v.abs() > bound) {
        return Err(LcpError::Divergence { iteration });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar(a: f64, s: f64) -> LcpProblem<f64> {
        LcpProblem::new(SparseMatrix::diagonal(&[a]), vec![s]).unwrap()
    }

    #[test]
    fn residual_examples() {
        let p = scalar(4.0, -4.0);
        assert_eq!(residual(&p, &[1.0]).unwrap(), 0.0);
        assert_eq!(residual(&p, &[0.0]).unwrap(), 4.0);
        assert_eq!(residual(&p, &[2.0]).unwrap(), 2.0);
        assert!(residual(&p, &[1.0, 2.0]).is_err());
    }

    #[test]
    fn known_solution_is_checked() {
        assert!(scalar(4.0, -4.0).with_known_solution(vec![1.0]).is_ok());
        assert!(scalar(4.0, -4.0).with_known_solution(vec![2.0]).is_err());
        assert!(scalar(4.0, -4.0).with_known_solution(vec![0.0]).is_err());
        assert!(scalar(4.0, 4.0).with_known_solution(vec![-1.0]).is_err());
        assert!(scalar(4.0, 4.0).with_known_solution(vec![0.0]).is_ok());
    }

    #[test]
    fn config_validation() {
        assert!(SolverConfig::new(0.0, 10, vec![0.0]).is_err());
        assert!(SolverConfig::new(1e-5, 0, vec![0.0]).is_err());
        assert!(SolverConfig::new(1e-5, 1, vec![f64::NAN]).is_err());
        assert!(LcpProblem::new(SparseMatrix::<f64>::identity(2), vec![1.0]).is_err());
    }
}
