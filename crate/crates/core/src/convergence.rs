//! The iteration operator `T = |(M + 2I + D)^{-1}| (|N + I + D| + |A - I|)`
//! and sufficient-condition certificates for the projected iteration.
//!
//! `rho(T) < 1` guarantees convergence from any start for P-matrices. For
//! H+ matrices with an H-compatible splitting, convergence also follows from
//! diagonal conditions that need no spectral computation:
//!
//! 1. `D >= I` and `<A> + 2I - D - |L + U|` is an M-matrix, or
//! 2. `D < I`.
//!
//! Both are checked entrywise on the diagonal.

use std::fmt;

use serde::Serialize;

use crate::dense::{DenseMatrix, DENSE_LIMIT};
use crate::matrix::{
    classify, comparison_matrix, dlu_split, is_m_matrix, spectral_radius_nonneg_with, LinearOperator, SparseMatrix,
};
use crate::solvers::SystemSolver;
use crate::splittings::{is_h_compatible, Splitting};
use crate::{LcpError, Result, Scalar};

/// Margin below 1 required before declaring `rho(T) < 1`.
pub const RHO_MARGIN: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RhoMode {
    /// `|(M + 2I + D)^{-1}|` materialized densely.
    ExactDense,
    /// `<M + 2I + D>^{-1}` in place of `|(M + 2I + D)^{-1}|`; an upper bound.
    ComparisonBound,
    /// Triangular solve with a sign pattern making the inverse nonnegative;
    /// exact without materializing.
    Operator,
}

impl fmt::Display for RhoMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RhoMode::ExactDense => "exact_dense",
            RhoMode::ComparisonBound => "comparison_bound",
            RhoMode::Operator => "operator",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RhoEstimate<T> {
    pub rho: T,
    pub mode: RhoMode,
    pub iterations: usize,
    pub converged: bool,
}

/// `T` (or its comparison bound) as a nonnegative linear operator.
#[derive(Debug, Clone)]
pub struct IterationOperator<T> {
    mode: RhoMode,
    repr: OperatorRepr<T>,
}

#[derive(Debug, Clone)]
enum OperatorRepr<T> {
    Dense(DenseMatrix<T>),
    Solve { system: SystemSolver<T>, b: SparseMatrix<T> },
}

impl<T: Scalar> IterationOperator<T> {
    pub fn mode(&self) -> RhoMode {
        self.mode
    }

    /// Dense copy of the operator, materializing column by column if needed.
    pub fn to_dense(&self) -> DenseMatrix<T> {
        match &self.repr {
            OperatorRepr::Dense(t) => t.clone(),
            OperatorRepr::Solve { b, .. } => {
                let n = b.dim();
                let mut t = DenseMatrix::zeros(n, n);
                let mut e = vec![T::zero(); n];
                let mut col = vec![T::zero(); n];
                for j in 0..n {
                    e[j] = T::one();
                    self.apply(&e, &mut col);
                    e[j] = T::zero();
                    for i in 0..n {
                        t[(i, j)] = col[i];
                    }
                }
                t
            }
        }
    }
}

impl<T: Scalar> LinearOperator<T> for IterationOperator<T> {
    fn dim(&self) -> usize {
        match &self.repr {
            OperatorRepr::Dense(t) => t.rows(),
            OperatorRepr::Solve { b, .. } => b.dim(),
        }
    }

    fn apply(&self, x: &[T], y: &mut [T]) {
        match &self.repr {
            OperatorRepr::Dense(t) => t.apply(x, y),
            OperatorRepr::Solve { system, b } => {
                let bx = b.mul_vec(x);
                system.solve_into(&bx, y).expect("system validated at construction");
            }
        }
    }
}

/// `M + 2I + D` and `|N + I + D| + |A - I|`.
fn operator_parts<T: Scalar>(a: &SparseMatrix<T>, s: &Splitting<T>) -> Result<(SparseMatrix<T>, SparseMatrix<T>)> {
    let n = a.dim();
    if s.dim() != n {
        return Err(LcpError::DimensionMismatch { expected: n, got: s.dim() });
    }
    let (m1, n1) = s.shifted(a)?;
    let ms = m1.add_diagonal(&vec![T::one(); n])?;
    let a_minus_i = a.add_diagonal(&vec![-T::one(); n])?;
    let b = n1.abs().add(&a_minus_i.abs())?;
    Ok((ms, b))
}

/// Lower triangular (or diagonal) with positive diagonal and nonpositive
/// off-diagonal entries, so that the inverse is entrywise nonnegative.
fn has_nonnegative_inverse_pattern<T: Scalar>(m: &SparseMatrix<T>) -> bool {
    m.is_lower_triangular()
        && m.iter().all(|(i, j, v)| if i == j { v > T::zero() } else { v <= T::zero() })
        && (0..m.dim()).all(|i| m.get(i, i) > T::zero())
}

pub fn iteration_operator<T: Scalar>(
    a: &SparseMatrix<T>,
    s: &Splitting<T>,
    mode: RhoMode,
) -> Result<IterationOperator<T>> {
    let (ms, b) = operator_parts(a, s)?;
    let n = a.dim();
    let repr = match mode {
        RhoMode::ExactDense => {
            if n > DENSE_LIMIT {
                return Err(LcpError::Unsupported(format!("exact_dense mode limited to n <= {DENSE_LIMIT}")));
            }
            let inv = DenseMatrix::from_sparse(&ms).inverse()?.abs();
            OperatorRepr::Dense(inv.mul_sparse(&b)?)
        }
        RhoMode::Operator => {
            if !has_nonnegative_inverse_pattern(&ms) {
                return Err(LcpError::Unsupported(
                    "operator mode needs M + 2I + D lower triangular with positive diagonal and nonpositive off-diagonal"
                        .into(),
                ));
            }
            OperatorRepr::Solve { system: SystemSolver::new(&ms)?, b }
        }
        RhoMode::ComparisonBound => {
            let cmp = comparison_matrix(&ms);
            let ok = has_nonnegative_inverse_pattern(&cmp) || (n <= DENSE_LIMIT && is_m_matrix(&cmp));
            if !ok {
                return Err(LcpError::Unsupported(
                    "comparison_bound mode needs <M + 2I + D> to be a nonsingular M-matrix".into(),
                ));
            }
            OperatorRepr::Solve { system: SystemSolver::new(&cmp)?, b }
        }
    };
    Ok(IterationOperator { mode, repr })
}

/// Power-iteration estimate of `rho(T)` in the requested mode.
pub fn iteration_operator_rho<T: Scalar>(
    a: &SparseMatrix<T>,
    s: &Splitting<T>,
    mode: RhoMode,
) -> Result<RhoEstimate<T>> {
    let op = iteration_operator(a, s, mode)?;
    let e = spectral_radius_nonneg_with(&op)?;
    Ok(RhoEstimate { rho: e.rho, mode, iterations: e.iterations, converged: e.converged })
}

/// Exact mode when available: operator under the sign pattern, dense up to
/// the dense limit, otherwise the comparison bound.
pub fn default_rho_mode<T: Scalar>(a: &SparseMatrix<T>, s: &Splitting<T>) -> Result<RhoMode> {
    let (ms, _) = operator_parts(a, s)?;
    Ok(if has_nonnegative_inverse_pattern(&ms) {
        RhoMode::Operator
    } else if a.dim() <= DENSE_LIMIT {
        RhoMode::ExactDense
    } else {
        RhoMode::ComparisonBound
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceCertificate<T> {
    pub rho_t: Option<T>,
    pub rho_mode: Option<RhoMode>,
    pub rho_condition_satisfied: Option<bool>,
    pub is_p: Option<bool>,
    pub h_plus: bool,
    pub h_compatible: bool,
    pub case1_d_geq_i: bool,
    pub case1_m_matrix: bool,
    pub case2_d_lt_i: bool,
    pub h_conditions_satisfied: bool,
    pub notes: Vec<String>,
}

impl<T> ConvergenceCertificate<T> {
    fn empty() -> Self {
        Self {
            rho_t: None,
            rho_mode: None,
            rho_condition_satisfied: None,
            is_p: None,
            h_plus: false,
            h_compatible: false,
            case1_d_geq_i: false,
            case1_m_matrix: false,
            case2_d_lt_i: false,
            h_conditions_satisfied: false,
            notes: Vec::new(),
        }
    }
}

fn fill_rho<T: Scalar>(cert: &mut ConvergenceCertificate<T>, a: &SparseMatrix<T>, s: &Splitting<T>) -> Result<()> {
    let mode = default_rho_mode(a, s)?;
    let est = iteration_operator_rho(a, s, mode)?;
    cert.rho_t = Some(est.rho);
    cert.rho_mode = Some(mode);
    cert.rho_condition_satisfied = Some(est.rho < T::one() - T::lit(RHO_MARGIN));
    if mode == RhoMode::ComparisonBound {
        cert.notes.push("rho(T) is an upper bound from the comparison matrix, not the exact value".into());
    }
    if !est.converged {
        cert.notes.push(format!("power iteration did not converge in {} steps; rho(T) is approximate", est.iterations));
    }
    Ok(())
}

/// Spectral condition `rho(T) < 1` plus P-matrix status for `n <= p_limit`.
pub fn check_theorem_p<T: Scalar>(
    a: &SparseMatrix<T>,
    s: &Splitting<T>,
    p_limit: usize,
) -> Result<ConvergenceCertificate<T>> {
    let mut cert = ConvergenceCertificate::empty();
    fill_rho(&mut cert, a, s)?;
    if a.dim() <= p_limit {
        let cls = classify(a, p_limit)?;
        cert.is_p = cls.is_p;
        if cls.is_p == Some(false) {
            cert.notes.push("A is not a P-matrix; uniqueness of the solution is not guaranteed".into());
        }
    } else {
        cert.notes.push(format!("P-matrix status not enumerated (n = {} > {p_limit})", a.dim()));
    }
    cert.notes.push("H+ diagonal conditions not evaluated".into());
    Ok(cert)
}

/// H+ / H-compatibility and the two diagonal cases.
pub fn check_theorem_h<T: Scalar>(a: &SparseMatrix<T>, s: &Splitting<T>) -> Result<ConvergenceCertificate<T>> {
    let n = a.dim();
    if s.dim() != n {
        return Err(LcpError::DimensionMismatch { expected: n, got: s.dim() });
    }
    let mut cert = ConvergenceCertificate::empty();
    cert.h_plus = classify(a, 0)?.is_h_plus;

    let (m1, n1) = s.shifted(a)?;
    cert.h_compatible = is_h_compatible(a, &m1, &n1)?;

    let d = a.diag();
    cert.case1_d_geq_i = d.iter().all(|&x| x >= T::one());
    cert.case2_d_lt_i = d.iter().all(|&x| x < T::one());

    let parts = dlu_split(a);
    let two: Vec<T> = d.iter().map(|&x| T::lit(2.0) - x).collect();
    let k = comparison_matrix(a).add_diagonal(&two)?.sub(&parts.off_diagonal().abs())?;
    cert.case1_m_matrix = is_m_matrix(&k);
    cert.notes.push("<A> + 2I - D - |B| equals 2I - 2|L + U| for positive diagonals".into());

    cert.h_conditions_satisfied =
        cert.h_plus && cert.h_compatible && ((cert.case1_d_geq_i && cert.case1_m_matrix) || cert.case2_d_lt_i);
    if !cert.h_conditions_satisfied {
        cert.notes.push("H+ diagonal conditions not met; they are sufficient, not necessary".into());
    }
    Ok(cert)
}

/// Both checks in one certificate.
pub fn certify<T: Scalar>(a: &SparseMatrix<T>, s: &Splitting<T>, p_limit: usize) -> Result<ConvergenceCertificate<T>> {
    let mut cert = check_theorem_h(a, s)?;
    let p = check_theorem_p(a, s, p_limit)?;
    cert.rho_t = p.rho_t;
    cert.rho_mode = p.rho_mode;
    cert.rho_condition_satisfied = p.rho_condition_satisfied;
    cert.is_p = p.is_p;
    cert.notes.extend(p.notes.into_iter().filter(|n| !n.starts_with("H+ diagonal conditions not evaluated")));
    Ok(cert)
}

impl<T: Scalar> fmt::Display for ConvergenceCertificate<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { "pass" } else { "fail" };
        let opt = |b: Option<bool>| b.map_or("n/a", |v| if v { "pass" } else { "fail" });
        writeln!(f, "convergence certificate")?;
        match (self.rho_t, self.rho_mode) {
            (Some(r), Some(m)) => writeln!(f, "  rho(T)            {r:.10} ({m})")?,
            _ => writeln!(f, "  rho(T)            n/a")?,
        }
        writeln!(f, "  rho(T) < 1        {}", opt(self.rho_condition_satisfied))?;
        writeln!(f, "  P-matrix          {}", opt(self.is_p))?;
        writeln!(f, "  H+ matrix         {}", yn(self.h_plus))?;
        writeln!(f, "  H-compatible      {}", yn(self.h_compatible))?;
        writeln!(f, "  case 1: D >= I    {}", yn(self.case1_d_geq_i))?;
        writeln!(f, "  case 1: M-matrix  {}", yn(self.case1_m_matrix))?;
        writeln!(f, "  case 2: D < I     {}", yn(self.case2_d_lt_i))?;
        writeln!(f, "  H+ conditions     {}", yn(self.h_conditions_satisfied))?;
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}
