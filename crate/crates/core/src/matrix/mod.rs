//! Sparse linear algebra primitives.
//!
//! [`SparseMatrix`] is square CSR storage. All splitting and solver code
//! flows through it; dense materialization lives in [`crate::dense`].

mod classify;
mod dlu;
mod spectral;
mod triangular;

pub use classify::{
    classify, comparison_matrix, is_m_matrix, is_p_matrix, is_z_matrix, m_matrix_witness, ClassificationReport,
    P_MATRIX_LIMIT,
};
pub use dlu::{dlu_split, DluParts};
pub use spectral::{
    certify_rho_lt_one, default_power_max_iters, spectral_radius_nonneg, spectral_radius_nonneg_with, FnOperator,
    LinearOperator, SpectralEstimate, DEFAULT_POWER_TOL,
};
pub use triangular::{diagonal_solve, lower_triangular_solve, lower_triangular_solve_into};

use crate::dense::DenseMatrix;
use crate::{LcpError, Result, Scalar};

/// Square real matrix in compressed sparse row form.
///
/// Column indices are strictly increasing within a row and no stored value is
/// exactly zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix<T> {
    n: usize,
    row_starts: Vec<usize>,
    col_indices: Vec<usize>,
    values: Vec<T>,
}

impl<T: Scalar> SparseMatrix<T> {
    /// Builds from raw CSR arrays, validating every structural invariant.
    pub fn from_csr(n: usize, row_starts: Vec<usize>, col_indices: Vec<usize>, values: Vec<T>) -> Result<Self> {
        if row_starts.len() != n + 1 {
            return Err(LcpError::InvalidStructure(format!(
                "row_starts has length {}, expected {}",
                row_starts.len(),
                n + 1
            )));
        }
        if row_starts[0] != 0 || row_starts[n] != values.len() || col_indices.len() != values.len() {
            return Err(LcpError::InvalidStructure("row_starts does not span the value array".into()));
        }
        for i in 0..n {
            let (s, e) = (row_starts[i], row_starts[i + 1]);
            if s > e {
                return Err(LcpError::InvalidStructure(format!("row_starts decreases at row {i}")));
            }
            let cols = &col_indices[s..e];
            if cols.iter().any(|&c| c >= n) {
                return Err(LcpError::InvalidStructure(format!("column index out of range in row {i}")));
            }
            if cols.windows(2).any(|w| w[0] >= w[1]) {
                return Err(LcpError::InvalidStructure(format!("columns not strictly increasing in row {i}")));
            }
        }
        if let Some(k) = values.iter().position(|v| *v == T::zero()) {
            return Err(LcpError::InvalidStructure(format!("explicit zero stored at position {k}")));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(LcpError::InvalidStructure("non-finite value".into()));
        }
        Ok(Self { n, row_starts, col_indices, values })
    }

    /// Builds from `(row, col, value)` triplets. Duplicates are summed and
    /// resulting zeros dropped.
    pub fn from_triplets<I>(n: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, T)>,
    {
        let mut entries: Vec<(usize, usize, T)> = Vec::new();
        for (i, j, v) in triplets {
            if i >= n || j >= n {
                return Err(LcpError::InvalidStructure(format!("entry ({i}, {j}) outside {n}x{n}")));
            }
            if !v.is_finite() {
                return Err(LcpError::InvalidStructure(format!("non-finite entry at ({i}, {j})")));
            }
            entries.push((i, j, v));
        }
        entries.sort_by_key(|&(i, j, _)| (i, j));
        let mut b = CsrBuilder::with_capacity(n, entries.len());
        let mut iter = entries.into_iter().peekable();
        while let Some((i, j, mut v)) = iter.next() {
            while let Some(&(i2, j2, v2)) = iter.peek() {
                if (i2, j2) != (i, j) {
                    break;
                }
                v += v2;
                iter.next();
            }
            b.push(i, j, v);
        }
        Ok(b.finish())
    }

    pub fn from_dense(rows: &[Vec<T>]) -> Result<Self> {
        let n = rows.len();
        let mut b = CsrBuilder::with_capacity(n, n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(LcpError::NotSquare { rows: n, cols: row.len() });
            }
            for (j, &v) in row.iter().enumerate() {
                b.push(i, j, v);
            }
        }
        Ok(b.finish())
    }

    pub fn zeros(n: usize) -> Self {
        Self { n, row_starts: vec![0; n + 1], col_indices: Vec::new(), values: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![T::one(); n])
    }

    pub fn diagonal(d: &[T]) -> Self {
        let mut b = CsrBuilder::with_capacity(d.len(), d.len());
        for (i, &v) in d.iter().enumerate() {
            b.push(i, i, v);
        }
        b.finish()
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row_starts(&self) -> &[usize] {
        &self.row_starts
    }

    pub fn col_indices(&self) -> &[usize] {
        &self.col_indices
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Stored `(col, value)` pairs of row `i`, in increasing column order.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, T)> + '_ {
        let (s, e) = (self.row_starts[i], self.row_starts[i + 1]);
        self.col_indices[s..e].iter().copied().zip(self.values[s..e].iter().copied())
    }

    pub fn row_nnz(&self, i: usize) -> usize {
        self.row_starts[i + 1] - self.row_starts[i]
    }

    /// All stored `(row, col, value)` triplets in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, T)> + '_ {
        (0..self.n).flat_map(move |i| self.row(i).map(move |(j, v)| (i, j, v)))
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        let (s, e) = (self.row_starts[i], self.row_starts[i + 1]);
        match self.col_indices[s..e].binary_search(&j) {
            Ok(k) => self.values[s + k],
            Err(_) => T::zero(),
        }
    }

    pub fn diag(&self) -> Vec<T> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        let mut y = vec![T::zero(); self.n];
        self.mul_vec_into(x, &mut y);
        y
    }

    /// `y = A x`, summing each row left to right.
    pub fn mul_vec_into(&self, x: &[T], y: &mut [T]) {
        debug_assert_eq!(x.len(), self.n);
        debug_assert_eq!(y.len(), self.n);
        for (i, yi) in y.iter_mut().enumerate() {
            let (s, e) = (self.row_starts[i], self.row_starts[i + 1]);
            let mut acc = T::zero();
            for k in s..e {
                acc += self.values[k] * x[self.col_indices[k]];
            }
            *yi = acc;
        }
    }

    /// Applies `f(row, col, value)` to every stored entry, dropping zeros.
    pub fn map_entries(&self, f: impl Fn(usize, usize, T) -> T) -> Self {
        let mut b = CsrBuilder::with_capacity(self.n, self.nnz());
        for (i, j, v) in self.iter() {
            b.push(i, j, f(i, j, v));
        }
        b.finish()
    }

    /// Entrywise absolute value.
    pub fn abs(&self) -> Self {
        self.map_entries(|_, _, v| v.abs())
    }

    pub fn scale(&self, c: T) -> Self {
        self.map_entries(|_, _, v| c * v)
    }

    /// Entrywise `f(self_ij, other_ij)` over the union of both patterns.
    /// `f(0, 0)` is assumed to be zero.
    pub fn zip_with(&self, other: &Self, f: impl Fn(T, T) -> T) -> Result<Self> {
        if self.n != other.n {
            return Err(LcpError::DimensionMismatch { expected: self.n, got: other.n });
        }
        let mut b = CsrBuilder::with_capacity(self.n, self.nnz() + other.nnz());
        for i in 0..self.n {
            let mut a = self.row(i).peekable();
            let mut c = other.row(i).peekable();
            loop {
                match (a.peek().copied(), c.peek().copied()) {
                    (None, None) => break,
                    (Some((ja, va)), None) => {
                        b.push(i, ja, f(va, T::zero()));
                        a.next();
                    }
                    (None, Some((jc, vc))) => {
                        b.push(i, jc, f(T::zero(), vc));
                        c.next();
                    }
                    (Some((ja, va)), Some((jc, vc))) => {
                        if ja < jc {
                            b.push(i, ja, f(va, T::zero()));
                            a.next();
                        } else if jc < ja {
                            b.push(i, jc, f(T::zero(), vc));
                            c.next();
                        } else {
                            b.push(i, ja, f(va, vc));
                            a.next();
                            c.next();
                        }
                    }
                }
            }
        }
        Ok(b.finish())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// `self + diag(shift)`.
    pub fn add_diagonal(&self, shift: &[T]) -> Result<Self> {
        if shift.len() != self.n {
            return Err(LcpError::DimensionMismatch { expected: self.n, got: shift.len() });
        }
        self.add(&Self::diagonal(shift))
    }

    pub fn transpose(&self) -> Self {
        let mut t: Vec<(usize, usize, T)> = self.iter().map(|(i, j, v)| (j, i, v)).collect();
        t.sort_by_key(|&(i, j, _)| (i, j));
        let mut b = CsrBuilder::with_capacity(self.n, t.len());
        for (i, j, v) in t {
            b.push(i, j, v);
        }
        b.finish()
    }

    /// Entries strictly below the diagonal.
    pub fn strict_lower(&self) -> Self {
        self.filter(|i, j| j < i)
    }

    /// Entries strictly above the diagonal.
    pub fn strict_upper(&self) -> Self {
        self.filter(|i, j| j > i)
    }

    fn filter(&self, keep: impl Fn(usize, usize) -> bool) -> Self {
        let mut b = CsrBuilder::with_capacity(self.n, self.nnz());
        for (i, j, v) in self.iter() {
            if keep(i, j) {
                b.push(i, j, v);
            }
        }
        b.finish()
    }

    /// First stored entry strictly above the diagonal, if any.
    pub fn first_upper_entry(&self) -> Option<(usize, usize)> {
        self.iter().find(|&(i, j, _)| j > i).map(|(i, j, _)| (i, j))
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.first_upper_entry().is_none()
    }

    pub fn is_diagonal(&self) -> bool {
        self.iter().all(|(i, j, _)| i == j)
    }

    pub fn is_symmetric(&self) -> bool {
        self.iter().all(|(i, j, v)| self.get(j, i) == v)
    }

    pub fn max_abs(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }

    /// Largest entrywise difference `max |self_ij - other_ij|`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        Ok(self.sub(other)?.max_abs())
    }

    /// Entrywise equality within `rel_tol` times the largest absolute entry of
    /// either operand.
    pub fn approx_eq(&self, other: &Self, rel_tol: T) -> bool {
        match self.max_abs_diff(other) {
            Ok(d) => d <= rel_tol * self.max_abs().max(other.max_abs()),
            Err(_) => false,
        }
    }

    /// Every stored entry is `>= 0`.
    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|&v| v >= T::zero())
    }

    pub fn to_dense(&self) -> DenseMatrix<T> {
        DenseMatrix::from_sparse(self)
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.to_dense().to_rows()
    }
}

impl<T: Scalar> LinearOperator<T> for SparseMatrix<T> {
    fn dim(&self) -> usize {
        self.n
    }

    fn apply(&self, x: &[T], y: &mut [T]) {
        self.mul_vec_into(x, y);
    }
}

/// Row-by-row CSR assembly. Entries must arrive in row-major order with
/// strictly increasing columns per row; zeros are skipped.
pub(crate) struct CsrBuilder<T> {
    n: usize,
    row_starts: Vec<usize>,
    col_indices: Vec<usize>,
    values: Vec<T>,
}

impl<T: Scalar> CsrBuilder<T> {
    pub(crate) fn with_capacity(n: usize, nnz: usize) -> Self {
        let mut row_starts = Vec::with_capacity(n + 1);
        row_starts.push(0);
        Self { n, row_starts, col_indices: Vec::with_capacity(nnz), values: Vec::with_capacity(nnz) }
    }

    pub(crate) fn push(&mut self, i: usize, j: usize, v: T) {
        while self.row_starts.len() <= i {
            self.row_starts.push(self.values.len());
        }
        if v == T::zero() {
            return;
        }
        debug_assert!(j < self.n);
        self.col_indices.push(j);
        self.values.push(v);
    }

    pub(crate) fn finish(mut self) -> SparseMatrix<T> {
        while self.row_starts.len() <= self.n {
            self.row_starts.push(self.values.len());
        }
        SparseMatrix { n: self.n, row_starts: self.row_starts, col_indices: self.col_indices, values: self.values }
    }
}
