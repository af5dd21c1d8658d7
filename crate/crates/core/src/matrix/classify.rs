use serde::Serialize;

use super::SparseMatrix;
use crate::dense::{DenseMatrix, DENSE_LIMIT};
use crate::{LcpError, Result, Scalar};

/// Largest dimension for which principal minors are enumerated.
pub const P_MATRIX_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport<T> {
    pub is_z: bool,
    pub is_m: bool,
    pub is_h: bool,
    pub is_h_plus: bool,
    /// Present only when the dimension is within the requested minor limit.
    pub is_p: Option<bool>,
    /// Positive `v` with `<A> v = 1`; present whenever `is_h` holds. For a
    /// Z-matrix with positive diagonal `<A> = A`, so this also witnesses `is_m`.
    pub witness_v: Option<Vec<T>>,
}

/// `<A>`: `|a_ii|` on the diagonal, `-|a_ij|` elsewhere.
pub fn comparison_matrix<T: Scalar>(a: &SparseMatrix<T>) -> SparseMatrix<T> {
    a.map_entries(|i, j, v| if i == j { v.abs() } else { -v.abs() })
}

pub fn is_z_matrix<T: Scalar>(a: &SparseMatrix<T>) -> bool {
    a.iter().all(|(i, j, v)| i == j || v <= T::zero())
}

/// For a Z-matrix, returns `v = A^{-1} 1` when it exists and is strictly
/// positive, which holds iff `A` is a nonsingular M-matrix. Non-Z input
/// returns `None`.
pub fn m_matrix_witness<T: Scalar>(a: &SparseMatrix<T>) -> Option<Vec<T>> {
    if !is_z_matrix(a) {
        return None;
    }
    let d = a.diag();
    if d.iter().any(|&x| x <= T::zero()) {
        return None;
    }
    let n = a.dim();
    let ones = vec![T::one(); n];
    let v =
        if n <= DENSE_LIMIT { DenseMatrix::from_sparse(a).lu().ok()?.solve(&ones) } else { gauss_seidel_probe(a, &d)? };
    if v.iter().all(|&x| x > T::zero() && x.is_finite()) {
        Some(v)
    } else {
        None
    }
}

pub fn is_m_matrix<T: Scalar>(a: &SparseMatrix<T>) -> bool {
    m_matrix_witness(a).is_some()
}

/// Gauss-Seidel on `A v = 1` from `v = 0`. For a Z-matrix with positive
/// diagonal the iterates increase monotonically and converge iff `A` is an
/// M-matrix.
fn gauss_seidel_probe<T: Scalar>(a: &SparseMatrix<T>, d: &[T]) -> Option<Vec<T>> {
    let n = a.dim();
    let max_sweeps = 10 * n + 1000;
    let tol = T::lit(1e-12);
    let mut v = vec![T::zero(); n];
    for _ in 0..max_sweeps {
        let mut change = T::zero();
        let mut size = T::zero();
        for i in 0..n {
            let mut s = T::one();
            for (j, aij) in a.row(i) {
                if j != i {
                    s -= aij * v[j];
                }
            }
            let next = s / d[i];
            change = change.max((next - v[i]).abs());
            size = size.max(next.abs());
            v[i] = next;
        }
        if !size.is_finite() || size > T::lit(1e300) {
            return None;
        }
        if change <= tol * size {
            return Some(v);
        }
    }
    None
}

/// All `2^n - 1` nonempty principal minors are positive.
pub fn is_p_matrix<T: Scalar>(a: &SparseMatrix<T>) -> Result<bool> {
    let n = a.dim();
    if n > P_MATRIX_LIMIT {
        return Err(LcpError::InvalidParameter(format!(
            "P-matrix enumeration limited to n <= {P_MATRIX_LIMIT}, got {n}"
        )));
    }
    let dense = DenseMatrix::from_sparse(a);
    let mut idx = Vec::with_capacity(n);
    for mask in 1u32..(1u32 << n) {
        idx.clear();
        idx.extend((0..n).filter(|&k| mask & (1 << k) != 0));
        if dense.principal(&idx).determinant()? <= T::zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Z / M / H / H+ status and, for `n <= p_matrix_limit`, P status.
pub fn classify<T: Scalar>(a: &SparseMatrix<T>, p_matrix_limit: usize) -> Result<ClassificationReport<T>> {
    if p_matrix_limit > P_MATRIX_LIMIT {
        return Err(LcpError::InvalidParameter(format!(
            "p_matrix_limit must be <= {P_MATRIX_LIMIT}, got {p_matrix_limit}"
        )));
    }
    let is_z = is_z_matrix(a);
    let is_m = is_z && is_m_matrix(a);
    let witness = m_matrix_witness(&comparison_matrix(a));
    let is_h = witness.is_some();
    let is_h_plus = is_h && a.diag().iter().all(|&x| x > T::zero());
    let is_p = if a.dim() <= p_matrix_limit { Some(is_p_matrix(a)?) } else { None };
    Ok(ClassificationReport { is_z, is_m, is_h, is_h_plus, is_p, witness_v: witness })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[f64]]) -> SparseMatrix<f64> {
        SparseMatrix::from_dense(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn comparison_examples() {
        assert_eq!(
            comparison_matrix(&m(&[&[4.0, -1.0], &[2.0, 3.0]])).to_rows(),
            vec![vec![4.0, -1.0], vec![-2.0, 3.0]]
        );
        assert_eq!(comparison_matrix(&SparseMatrix::<f64>::identity(2)), SparseMatrix::identity(2));
        assert_eq!(
            comparison_matrix(&m(&[&[-2.0, 1.0], &[1.0, -2.0]])).to_rows(),
            vec![vec![2.0, -1.0], vec![-1.0, 2.0]]
        );
    }

    #[test]
    fn textbook_m_matrix() {
        let r = classify(&m(&[&[2.0, -1.0], &[-1.0, 2.0]]), 20).unwrap();
        assert!(r.is_z && r.is_m && r.is_h && r.is_h_plus);
        assert_eq!(r.is_p, Some(true));
        let v = r.witness_v.unwrap();
        assert!((v[0] - 1.0).abs() < 1e-14 && (v[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn z_matrix_with_negative_determinant() {
        let r = classify(&m(&[&[1.0, -2.0], &[-2.0, 1.0]]), 20).unwrap();
        assert!(r.is_z);
        assert!(!r.is_m && !r.is_h && !r.is_h_plus);
        assert_eq!(r.is_p, Some(false));
        assert!(r.witness_v.is_none());
    }

    #[test]
    fn block_laplacian_is_m_and_p() {
        let a =
            m(&[&[8.0, -1.0, -1.0, 0.0], &[-1.0, 8.0, 0.0, -1.0], &[-1.0, 0.0, 8.0, -1.0], &[0.0, -1.0, -1.0, 8.0]]);
        let r = classify(&a, 20).unwrap();
        assert!(r.is_z && r.is_m && r.is_h_plus);
        assert_eq!(r.is_p, Some(true));
        // row sums are all 6, so A^{-1} 1 = 1/6
        for v in r.witness_v.unwrap() {
            assert!((v - 1.0 / 6.0).abs() < 1e-14);
        }
    }

    #[test]
    fn h_matrix_that_is_not_z() {
        let r = classify(&m(&[&[3.0, 1.0], &[1.0, 3.0]]), 2).unwrap();
        assert!(!r.is_z && !r.is_m && r.is_h && r.is_h_plus);
        assert_eq!(r.is_p, Some(true));
        let r = classify(&m(&[&[-3.0, 1.0], &[1.0, -3.0]]), 0).unwrap();
        assert!(r.is_h && !r.is_h_plus);
        assert_eq!(r.is_p, None);
    }

    #[test]
    fn singular_z_matrix_is_not_m() {
        assert!(!is_m_matrix(&m(&[&[1.0, -1.0], &[-1.0, 1.0]])));
    }

    #[test]
    fn limit_guard() {
        assert!(classify(&SparseMatrix::<f64>::identity(2), 21).is_err());
        let r = classify(&SparseMatrix::<f64>::identity(3), 2).unwrap();
        assert_eq!(r.is_p, None);
    }

    #[test]
    fn gauss_seidel_probe_agrees_with_dense() {
        let a = m(&[&[4.0, -1.0, -1.0], &[-1.0, 4.0, -1.0], &[-1.0, -1.0, 4.0]]);
        let v = gauss_seidel_probe(&a, &a.diag()).unwrap();
        for x in v {
            assert!((x - 0.5).abs() < 1e-10);
        }
        let bad = m(&[&[1.0, -2.0], &[-2.0, 1.0]]);
        assert!(gauss_seidel_probe(&bad, &bad.diag()).is_none());
    }
}
