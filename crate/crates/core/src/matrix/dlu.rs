use super::{CsrBuilder, SparseMatrix};
use crate::Scalar;

/// `A = diag(d) - l - u` with `l`, `u` the negated strict triangles of `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct DluParts<T> {
    pub d: Vec<T>,
    pub l: SparseMatrix<T>,
    pub u: SparseMatrix<T>,
}

impl<T: Scalar> DluParts<T> {
    pub fn dim(&self) -> usize {
        self.d.len()
    }

    /// `L + U`, the negated off-diagonal part of `A`.
    pub fn off_diagonal(&self) -> SparseMatrix<T> {
        // patterns are disjoint so this is exact
        self.l.add(&self.u).expect("parts share dimension")
    }

    /// Rebuilds `diag(d) - l - u`.
    pub fn reassemble(&self) -> SparseMatrix<T> {
        let n = self.dim();
        let mut b = CsrBuilder::with_capacity(n, self.l.nnz() + self.u.nnz() + n);
        for i in 0..n {
            for (j, v) in self.l.row(i) {
                b.push(i, j, -v);
            }
            b.push(i, i, self.d[i]);
            for (j, v) in self.u.row(i) {
                b.push(i, j, -v);
            }
        }
        b.finish()
    }
}

/// Splits `a` into its diagonal and negated strict lower/upper triangles.
/// A missing diagonal entry yields `d[i] = 0`.
pub fn dlu_split<T: Scalar>(a: &SparseMatrix<T>) -> DluParts<T> {
    let n = a.dim();
    let mut d = vec![T::zero(); n];
    let mut l = CsrBuilder::with_capacity(n, a.nnz() / 2);
    let mut u = CsrBuilder::with_capacity(n, a.nnz() / 2);
    for (i, j, v) in a.iter() {
        if j < i {
            l.push(i, j, -v);
        } else if j > i {
            u.push(i, j, -v);
        } else {
            d[i] = v;
        }
    }
    DluParts { d, l: l.finish(), u: u.finish() }
}
