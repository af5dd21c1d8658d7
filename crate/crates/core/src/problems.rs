//! Benchmark generators, random H+ instances and a support-enumeration
//! oracle for small problems.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dense::DenseMatrix;
use crate::matrix::SparseMatrix;
use crate::solvers::LcpProblem;
use crate::{LcpError, Result, Scalar};

/// Largest dimension the enumeration oracle accepts.
pub const ORACLE_LIMIT: usize = 20;

/// Acceptance slack for sign tests in the oracle.
pub const ORACLE_SLACK: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Example1,
    Example2,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Example1 => "example1",
            Family::Example2 => "example2",
        })
    }
}

impl FromStr for Family {
    type Err = LcpError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "example1" => Ok(Family::Example1),
            "example2" => Ok(Family::Example2),
            other => Err(LcpError::InvalidParameter(format!("unknown family '{other}'"))),
        }
    }
}

/// Block-tridiagonal benchmark with block order `m` (so `n = m^2`) and
/// diagonal shift `delta1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BenchSpec {
    pub family: Family,
    pub m: usize,
    pub delta1: f64,
}

impl BenchSpec {
    pub fn new(family: Family, m: usize, delta1: f64) -> Result<Self> {
        if m < 2 {
            return Err(LcpError::InvalidParameter(format!("block order m must be >= 2, got {m}")));
        }
        if !(delta1 >= 0.0) || !delta1.is_finite() {
            return Err(LcpError::InvalidParameter(format!("delta1 must be nonnegative, got {delta1}")));
        }
        Ok(Self { family, m, delta1 })
    }

    pub fn n(&self) -> usize {
        self.m * self.m
    }

    pub fn generate<T: Scalar>(&self) -> Result<LcpProblem<T>> {
        let delta = T::lit(self.delta1);
        match self.family {
            Family::Example1 => gen_example1(self.m, delta),
            Family::Example2 => gen_example2(self.m, delta),
        }
    }
}

/// `(1, 0, 1, 0, ...)`, the standard starting vector of the benchmarks.
pub fn alternating_start<T: Scalar>(n: usize) -> Vec<T> {
    (0..n).map(|i| if i % 2 == 0 { T::one() } else { T::zero() }).collect()
}

/// `(1, 2, 1, 2, ...)`, truncated for odd `n`.
pub fn alternating_solution<T: Scalar>(n: usize) -> Vec<T> {
    (0..n).map(|i| if i % 2 == 0 { T::one() } else { T::lit(2.0) }).collect()
}

/// `P + delta I` with `P` block tridiagonal: diagonal blocks
/// `tridiag(-1, 4, -1)` of order `m`, sub-diagonal blocks `lower * I`,
/// super-diagonal blocks `upper * I`.
fn block_tridiagonal<T: Scalar>(m: usize, delta1: T, lower: T, upper: T) -> Result<SparseMatrix<T>> {
    if m < 2 {
        return Err(LcpError::InvalidParameter(format!("block order m must be >= 2, got {m}")));
    }
    if !(delta1 >= T::zero()) {
        return Err(LcpError::InvalidParameter(format!("delta1 must be nonnegative, got {delta1}")));
    }
    let n = m * m;
    let four = T::lit(4.0) + delta1;
    let mut t = Vec::with_capacity(5 * n);
    for block in 0..m {
        for k in 0..m {
            let r = block * m + k;
            if block > 0 {
                t.push((r, r - m, lower));
            }
            if k > 0 {
                t.push((r, r - 1, -T::one()));
            }
            t.push((r, r, four));
            if k + 1 < m {
                t.push((r, r + 1, -T::one()));
            }
            if block + 1 < m {
                t.push((r, r + m, upper));
            }
        }
    }
    SparseMatrix::from_triplets(n, t)
}

fn with_planted_solution<T: Scalar>(a: SparseMatrix<T>) -> Result<LcpProblem<T>> {
    let lambda = alternating_solution(a.dim());
    let sigma: Vec<T> = a.mul_vec(&lambda).into_iter().map(|v| -v).collect();
    LcpProblem::new(a, sigma)?.with_known_solution(lambda)
}

/// Symmetric block Laplacian shifted by `delta1`, with planted solution
/// `(1, 2, 1, 2, ...)` and `sigma = -A lambda*`.
pub fn gen_example1<T: Scalar>(m: usize, delta1: T) -> Result<LcpProblem<T>> {
    with_planted_solution(block_tridiagonal(m, delta1, -T::one(), -T::one())?)
}

/// Nonsymmetric variant: sub-diagonal blocks `-1.5 I`, super-diagonal
/// blocks `-0.5 I`.
pub fn gen_example2<T: Scalar>(m: usize, delta1: T) -> Result<LcpProblem<T>> {
    with_planted_solution(block_tridiagonal(m, delta1, T::lit(-1.5), T::lit(-0.5))?)
}

/// Dense strictly diagonally dominant Z-matrix (hence H+ and P) with
/// off-diagonals in `[-1, 0]`, diagonal `sum |a_ij| + U(0.1, 2)` and
/// `sigma ~ U(-5, 5)`. Deterministic per seed.
pub fn gen_random_hplus<T: Scalar>(n: usize, seed: u64) -> Result<LcpProblem<T>> {
    if n == 0 {
        return Err(LcpError::InvalidParameter("dimension must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Vec::with_capacity(n * n);
    for i in 0..n {
        let mut row_sum = 0.0;
        for j in 0..n {
            if i != j {
                let v: f64 = -rng.gen_range(0.0..=1.0);
                row_sum -= v;
                t.push((i, j, T::lit(v)));
            }
        }
        let margin: f64 = rng.gen_range(0.1..2.0);
        t.push((i, i, T::lit(row_sum + margin)));
    }
    let sigma = (0..n).map(|_| T::lit(rng.gen_range(-5.0..=5.0))).collect();
    LcpProblem::new(SparseMatrix::from_triplets(n, t)?, sigma)
}

/// Solves `A_SS lambda_S = -sigma_S` for the support encoded by `mask` and
/// returns the full vector if it passes both sign tests.
fn try_support<T: Scalar>(dense: &DenseMatrix<T>, sigma: &[T], mask: u32, slack: T) -> Option<Vec<T>> {
    let n = sigma.len();
    let support: Vec<usize> = (0..n).filter(|&k| mask & (1 << k) != 0).collect();
    let mut lambda = vec![T::zero(); n];
    if !support.is_empty() {
        let rhs: Vec<T> = support.iter().map(|&i| -sigma[i]).collect();
        let lu = dense.principal(&support).lu().ok()?;
        let sol = lu.solve(&rhs);
        if sol.iter().any(|&v| !(v >= -slack)) {
            return None;
        }
        for (&i, &v) in support.iter().zip(&sol) {
            lambda[i] = v.max(T::zero());
        }
    }
    let w: Vec<T> = dense.mul_vec(&lambda).into_iter().zip(sigma).map(|(x, &s)| x + s).collect();
    let feasible = (0..n).filter(|&k| mask & (1 << k) == 0).all(|k| w[k] >= -slack);
    feasible.then_some(lambda)
}

fn oracle_setup<T: Scalar>(p: &LcpProblem<T>) -> Result<(DenseMatrix<T>, T)> {
    if p.dim() > ORACLE_LIMIT {
        return Err(LcpError::InvalidParameter(format!("oracle limited to n <= {ORACLE_LIMIT}, got {}", p.dim())));
    }
    let slack = T::lit(ORACLE_SLACK).max(T::epsilon() * T::lit(100.0));
    Ok((DenseMatrix::from_sparse(&p.a), slack))
}

/// First complementary support (ascending bitmask order) whose solution is
/// feasible. Singular principal submatrices are skipped.
pub fn oracle_solve<T: Scalar>(p: &LcpProblem<T>) -> Result<Option<Vec<T>>> {
    let (dense, slack) = oracle_setup(p)?;
    let n = p.dim();
    Ok((0u32..(1u32 << n)).find_map(|mask| try_support(&dense, &p.sigma, mask, slack)))
}

/// Every accepted support's solution, in bitmask order.
pub fn oracle_all<T: Scalar>(p: &LcpProblem<T>) -> Result<Vec<Vec<T>>> {
    let (dense, slack) = oracle_setup(p)?;
    let n = p.dim();
    Ok((0u32..(1u32 << n)).filter_map(|mask| try_support(&dense, &p.sigma, mask, slack)).collect())
}
