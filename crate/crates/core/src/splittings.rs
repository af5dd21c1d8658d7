//! The projected-type splitting family.
//!
//! Every kind is a splitting `A = M - N` built from `A = D - L - U`. The
//! projected iteration then uses the shifted pair `(M + I + D, N + I + D)`,
//! which has the same difference.
//!
//! | kind       | `M`                  | `N`                                   |
//! |------------|----------------------|---------------------------------------|
//! | NPJ        | `D`                  | `L + U`                               |
//! | NPGS       | `D - L`              | `U`                                   |
//! | NPSOR(a)   | `(1/a) D - L`        | `(1/a - 1) D + U`                     |
//! | NPAOR(a,b) | `(1/a)(D - b L)`     | `(1/a)[(1 - a) D + (a - b) L + a U]`  |
//!
//! NPAOR reduces to NPSOR at `b = a`, to NPGS at `(1, 1)` and to NPJ at
//! `(1, 0)`. Coefficients are evaluated so that those reductions produce
//! bitwise identical matrices.

use serde::Serialize;

use crate::matrix::{comparison_matrix, dlu_split, is_m_matrix, CsrBuilder, DluParts, SparseMatrix};
use crate::{LcpError, Result, Scalar};

/// Relative tolerance for entrywise matrix identities.
pub const MATRIX_EQ_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "tag", rename_all = "lowercase")]
pub enum SplittingKind<T> {
    Npj,
    Npgs,
    Npsor { alpha: T },
    Npaor { alpha: T, beta: T },
    Custom,
}

impl<T: Scalar> SplittingKind<T> {
    pub fn name(&self) -> &'static str {
        match self {
            SplittingKind::Npj => "npj",
            SplittingKind::Npgs => "npgs",
            SplittingKind::Npsor { .. } => "npsor",
            SplittingKind::Npaor { .. } => "npaor",
            SplittingKind::Custom => "custom",
        }
    }

    /// Equivalent NPAOR parameters `(alpha, beta)`; `None` for custom.
    pub fn aor_parameters(&self) -> Option<(T, T)> {
        match *self {
            SplittingKind::Npj => Some((T::one(), T::zero())),
            SplittingKind::Npgs => Some((T::one(), T::one())),
            SplittingKind::Npsor { alpha } => Some((alpha, alpha)),
            SplittingKind::Npaor { alpha, beta } => Some((alpha, beta)),
            SplittingKind::Custom => None,
        }
    }

    fn validate(&self) -> Result<()> {
        let alpha = match *self {
            SplittingKind::Npsor { alpha } => alpha,
            SplittingKind::Npaor { alpha, beta } => {
                if !beta.is_finite() {
                    return Err(LcpError::InvalidParameter(format!("beta must be finite, got {beta}")));
                }
                alpha
            }
            _ => return Ok(()),
        };
        if !(alpha > T::zero()) || !alpha.is_finite() {
            return Err(LcpError::InvalidParameter(format!("alpha must be positive and finite, got {alpha}")));
        }
        Ok(())
    }
}

/// `A = M - N` together with the kind that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Splitting<T> {
    pub m: SparseMatrix<T>,
    pub n_part: SparseMatrix<T>,
    pub kind: SplittingKind<T>,
}

impl<T: Scalar> Splitting<T> {
    /// Wraps a caller-provided pair after checking `M - N = A`.
    pub fn custom(a: &SparseMatrix<T>, m: SparseMatrix<T>, n_part: SparseMatrix<T>) -> Result<Self> {
        for part in [&m, &n_part] {
            if part.dim() != a.dim() {
                return Err(LcpError::DimensionMismatch { expected: a.dim(), got: part.dim() });
            }
        }
        let s = Self { m, n_part, kind: SplittingKind::Custom };
        if !s.reproduces(a) {
            return Err(LcpError::InvalidParameter("custom splitting does not satisfy M - N = A".into()));
        }
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.m.dim()
    }

    /// `M - N = A` within [`MATRIX_EQ_TOL`].
    pub fn reproduces(&self, a: &SparseMatrix<T>) -> bool {
        match self.m.sub(&self.n_part) {
            Ok(diff) => diff.approx_eq(a, T::lit(MATRIX_EQ_TOL)),
            Err(_) => false,
        }
    }

    /// The pair `(M + I + D, N + I + D)` the projected iteration is built on.
    pub fn shifted(&self, a: &SparseMatrix<T>) -> Result<(SparseMatrix<T>, SparseMatrix<T>)> {
        let shift: Vec<T> = a.diag().into_iter().map(|d| T::one() + d).collect();
        Ok((self.m.add_diagonal(&shift)?, self.n_part.add_diagonal(&shift)?))
    }
}

/// Coefficients of `M = md D - ml L - mu U`, `N = nd D + nl L + nu U`.
struct Coefficients<T> {
    md: T,
    ml: T,
    nd: T,
    nl: T,
    nu: T,
}

fn assemble<T: Scalar>(p: &DluParts<T>, c: &Coefficients<T>) -> (SparseMatrix<T>, SparseMatrix<T>) {
    let n = p.dim();
    let mut m = CsrBuilder::with_capacity(n, p.l.nnz() + n);
    let mut nn = CsrBuilder::with_capacity(n, p.l.nnz() + p.u.nnz() + n);
    for i in 0..n {
        for (j, v) in p.l.row(i) {
            m.push(i, j, -(c.ml * v));
            nn.push(i, j, c.nl * v);
        }
        m.push(i, i, c.md * p.d[i]);
        nn.push(i, i, c.nd * p.d[i]);
        for (j, v) in p.u.row(i) {
            nn.push(i, j, c.nu * v);
        }
    }
    (m.finish(), nn.finish())
}

fn coefficients<T: Scalar>(kind: &SplittingKind<T>) -> Coefficients<T> {
    let (one, zero) = (T::one(), T::zero());
    match *kind {
        SplittingKind::Npj => Coefficients { md: one, ml: zero, nd: zero, nl: one, nu: one },
        SplittingKind::Npgs => Coefficients { md: one, ml: one, nd: zero, nl: zero, nu: one },
        SplittingKind::Npsor { alpha } => {
            Coefficients { md: one / alpha, ml: one, nd: (one - alpha) / alpha, nl: zero, nu: one }
        }
        SplittingKind::Npaor { alpha, beta } => Coefficients {
            md: one / alpha,
            ml: beta / alpha,
            nd: (one - alpha) / alpha,
            nl: (alpha - beta) / alpha,
            nu: T::one(),
        },
        SplittingKind::Custom => unreachable!("custom splittings are caller-provided"),
    }
}

/// Builds `(M, N)` for one of the named kinds.
pub fn make_splitting<T: Scalar>(a: &SparseMatrix<T>, kind: SplittingKind<T>) -> Result<Splitting<T>> {
    if let SplittingKind::Custom = kind {
        return Err(LcpError::InvalidParameter("use Splitting::custom for caller-provided splittings".into()));
    }
    kind.validate()?;
    let parts = dlu_split(a);
    let (m, n_part) = assemble(&parts, &coefficients(&kind));
    Ok(Splitting { m, n_part, kind })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SplittingAnalysis {
    pub is_valid: bool,
    pub is_m_splitting: bool,
    pub is_h_compatible: bool,
}

/// `<A> = <M> - |N|` within [`MATRIX_EQ_TOL`].
pub fn is_h_compatible<T: Scalar>(a: &SparseMatrix<T>, m: &SparseMatrix<T>, n_part: &SparseMatrix<T>) -> Result<bool> {
    let rhs = comparison_matrix(m).sub(&n_part.abs())?;
    Ok(comparison_matrix(a).approx_eq(&rhs, T::lit(MATRIX_EQ_TOL)))
}

/// M-splitting: `M` a nonsingular M-matrix and `N >= 0`.
pub fn is_m_splitting<T: Scalar>(m: &SparseMatrix<T>, n_part: &SparseMatrix<T>) -> bool {
    n_part.is_nonnegative() && is_m_matrix(m)
}

pub fn analyze_splitting<T: Scalar>(a: &SparseMatrix<T>, s: &Splitting<T>) -> Result<SplittingAnalysis> {
    for part in [&s.m, &s.n_part] {
        if part.dim() != a.dim() {
            return Err(LcpError::DimensionMismatch { expected: a.dim(), got: part.dim() });
        }
    }
    Ok(SplittingAnalysis {
        is_valid: s.reproduces(a),
        is_m_splitting: is_m_splitting(&s.m, &s.n_part),
        is_h_compatible: is_h_compatible(a, &s.m, &s.n_part)?,
    })
}
