//! Small dense row-major matrices with LU factorization.
//!
//! Used for certification (exact inverses, principal minors), the oracle and
//! the fallback solve path of custom splittings. Never on the hot path of the
//! structured splittings.

use crate::matrix::{LinearOperator, SparseMatrix};
use crate::{LcpError, Result, Scalar};

/// Largest dimension accepted by dense materialization.
pub const DENSE_LIMIT: usize = 2000;

#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> DenseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(LcpError::DimensionMismatch { expected: c, got: row.len() });
            }
            data.extend_from_slice(row);
        }
        Ok(Self { rows: r, cols: c, data })
    }

    pub fn from_sparse(a: &SparseMatrix<T>) -> Self {
        let n = a.dim();
        let mut m = Self::zeros(n, n);
        for (i, j, v) in a.iter() {
            m[(i, j)] = v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn abs(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v.abs()).collect() }
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        debug_assert_eq!(x.len(), self.cols);
        (0..self.rows).map(|i| self.row(i).iter().zip(x).fold(T::zero(), |acc, (&a, &b)| acc + a * b)).collect()
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(LcpError::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == T::zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Dense `self * b` where `b` is sparse.
    pub fn mul_sparse(&self, b: &SparseMatrix<T>) -> Result<Self> {
        if self.cols != b.dim() {
            return Err(LcpError::DimensionMismatch { expected: self.cols, got: b.dim() });
        }
        let mut out = Self::zeros(self.rows, b.dim());
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == T::zero() {
                    continue;
                }
                for (j, v) in b.row(k) {
                    out[(i, j)] += a * v;
                }
            }
        }
        Ok(out)
    }

    /// Submatrix on the rows and columns listed in `idx`.
    pub fn principal(&self, idx: &[usize]) -> Self {
        let k = idx.len();
        let mut out = Self::zeros(k, k);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                out[(a, b)] = self[(i, j)];
            }
        }
        out
    }

    pub fn lu(&self) -> Result<Lu<T>> {
        Lu::factor(self)
    }

    pub fn inverse(&self) -> Result<Self> {
        self.lu()?.inverse()
    }

    /// Determinant via partial-pivoting elimination; singular input yields 0.
    pub fn determinant(&self) -> Result<T> {
        if self.rows != self.cols {
            return Err(LcpError::NotSquare { rows: self.rows, cols: self.cols });
        }
        match Lu::factor(self) {
            Ok(lu) => Ok(lu.determinant()),
            Err(LcpError::Singular { .. }) => Ok(T::zero()),
            Err(e) => Err(e),
        }
    }
}

impl<T> std::ops::Index<(usize, usize)> for DenseMatrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for DenseMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> LinearOperator<T> for DenseMatrix<T> {
    fn dim(&self) -> usize {
        self.rows
    }

    fn apply(&self, x: &[T], y: &mut [T]) {
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = self.row(i).iter().zip(x).fold(T::zero(), |acc, (&a, &b)| acc + a * b);
        }
    }
}

/// `P A = L U` with unit lower `L`, both packed into one matrix.
#[derive(Debug, Clone)]
pub struct Lu<T> {
    packed: DenseMatrix<T>,
    perm: Vec<usize>,
    swaps: usize,
}

impl<T: Scalar> Lu<T> {
    pub fn factor(a: &DenseMatrix<T>) -> Result<Self> {
        if a.rows != a.cols {
            return Err(LcpError::NotSquare { rows: a.rows, cols: a.cols });
        }
        let n = a.rows;
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut swaps = 0;
        let scale = a.data.iter().fold(T::zero(), |m, v| m.max(v.abs()));
        let tiny = scale * T::epsilon() * T::from_usize(n.max(1)).unwrap_or_else(T::one);
        for k in 0..n {
            let (p, pmax) =
                (k..n)
                    .map(|i| (i, lu[(i, k)].abs()))
                    .fold((k, T::zero()), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pmax <= tiny || pmax == T::zero() {
                return Err(LcpError::Singular { row: k });
            }
            if p != k {
                for j in 0..n {
                    lu.data.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                swaps += 1;
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let f = lu[(i, k)] / pivot;
                lu[(i, k)] = f;
                if f == T::zero() {
                    continue;
                }
                for j in k + 1..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] -= f * u;
                }
            }
        }
        Ok(Self { packed: lu, perm, swaps })
    }

    pub fn dim(&self) -> usize {
        self.packed.rows
    }

    pub fn solve(&self, b: &[T]) -> Vec<T> {
        let mut x = vec![T::zero(); b.len()];
        self.solve_into(b, &mut x);
        x
    }

    pub fn solve_into(&self, b: &[T], x: &mut [T]) {
        let n = self.dim();
        for i in 0..n {
            let mut s = b[self.perm[i]];
            for j in 0..i {
                s -= self.packed[(i, j)] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..n {
                s -= self.packed[(i, j)] * x[j];
            }
            x[i] = s / self.packed[(i, i)];
        }
    }

    pub fn inverse(&self) -> Result<DenseMatrix<T>> {
        let n = self.dim();
        let mut inv = DenseMatrix::zeros(n, n);
        let mut e = vec![T::zero(); n];
        let mut col = vec![T::zero(); n];
        for j in 0..n {
            e.iter_mut().for_each(|v| *v = T::zero());
            e[j] = T::one();
            self.solve_into(&e, &mut col);
            for i in 0..n {
                inv[(i, j)] = col[i];
            }
        }
        Ok(inv)
    }

    pub fn determinant(&self) -> T {
        let mut d = (0..self.dim()).fold(T::one(), |acc, i| acc * self.packed[(i, i)]);
        if self.swaps % 2 == 1 {
            d = -d;
        }
        d
    }
}
