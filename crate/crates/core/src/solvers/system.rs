use crate::dense::{DenseMatrix, Lu, DENSE_LIMIT};
use crate::matrix::{diagonal_solve, lower_triangular_solve_into, SparseMatrix};
use crate::{LcpError, Result, Scalar};

/// Pre-analyzed solver for the fixed system matrix of a stationary iteration.
#[derive(Debug, Clone)]
pub enum SystemSolver<T> {
    Diagonal(Vec<T>),
    LowerTriangular(SparseMatrix<T>),
    DenseLu(Lu<T>),
}

impl<T: Scalar> SystemSolver<T> {
    /// Picks diagonal, forward-substitution or dense LU by structure.
    pub fn new(m: &SparseMatrix<T>) -> Result<Self> {
        if m.is_diagonal() {
            let d = m.diag();
            if let Some(row) = d.iter().position(|&x| x == T::zero()) {
                return Err(LcpError::Singular { row });
            }
            return Ok(SystemSolver::Diagonal(d));
        }
        if m.is_lower_triangular() {
            if let Some(row) = (0..m.dim()).find(|&i| m.get(i, i) == T::zero()) {
                return Err(LcpError::Singular { row });
            }
            return Ok(SystemSolver::LowerTriangular(m.clone()));
        }
        if m.dim() > DENSE_LIMIT {
            return Err(LcpError::Unsupported(format!(
                "non-triangular system of dimension {} exceeds the dense limit {DENSE_LIMIT}",
                m.dim()
            )));
        }
        Ok(SystemSolver::DenseLu(DenseMatrix::from_sparse(m).lu()?))
    }

    pub fn label(&self) -> &'static str {
        match self {
            SystemSolver::Diagonal(_) => "diagonal",
            SystemSolver::LowerTriangular(_) => "lower-triangular",
            SystemSolver::DenseLu(_) => "dense-lu",
        }
    }

    pub fn solve_into(&self, b: &[T], x: &mut [T]) -> Result<()> {
        match self {
            SystemSolver::Diagonal(d) => diagonal_solve(d, b, x),
            SystemSolver::LowerTriangular(m) => lower_triangular_solve_into(m, b, x),
            SystemSolver::DenseLu(lu) => {
                lu.solve_into(b, x);
                Ok(())
            }
        }
    }
}
