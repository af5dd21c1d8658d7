use super::SparseMatrix;
use crate::{LcpError, Result, Scalar};

/// Forward substitution for lower-triangular `m`, row by row in index order.
pub fn lower_triangular_solve<T: Scalar>(m: &SparseMatrix<T>, b: &[T]) -> Result<Vec<T>> {
    let mut x = vec![T::zero(); m.dim()];
    lower_triangular_solve_into(m, b, &mut x)?;
    Ok(x)
}

pub fn lower_triangular_solve_into<T: Scalar>(m: &SparseMatrix<T>, b: &[T], x: &mut [T]) -> Result<()> {
    let n = m.dim();
    if b.len() != n {
        return Err(LcpError::DimensionMismatch { expected: n, got: b.len() });
    }
    if x.len() != n {
        return Err(LcpError::DimensionMismatch { expected: n, got: x.len() });
    }
    for i in 0..n {
        let mut s = b[i];
        let mut pivot = T::zero();
        for (j, v) in m.row(i) {
            if j < i {
                s -= v * x[j];
            } else if j == i {
                pivot = v;
            } else {
                return Err(LcpError::NotLowerTriangular { row: i, col: j });
            }
        }
        if pivot == T::zero() {
            return Err(LcpError::Singular { row: i });
        }
        x[i] = s / pivot;
    }
    Ok(())
}

/// `x_i = b_i / d_i`.
pub fn diagonal_solve<T: Scalar>(d: &[T], b: &[T], x: &mut [T]) -> Result<()> {
    if b.len() != d.len() || x.len() != d.len() {
        return Err(LcpError::DimensionMismatch { expected: d.len(), got: b.len() });
    }
    for i in 0..d.len() {
        if d[i] == T::zero() {
            return Err(LcpError::Singular { row: i });
        }
        x[i] = b[i] / d[i];
    }
    Ok(())
}
