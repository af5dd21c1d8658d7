use std::time::Instant;

use super::system::SystemSolver;
use super::{check_finite, project_into, residual_with, LcpProblem, SolveReport, SolverConfig};
use crate::matrix::SparseMatrix;
use crate::splittings::Splitting;
use crate::{LcpError, Result, Scalar};

/// Snapshot handed to observers after each iteration.
#[derive(Debug)]
pub struct IterationState<'a, T> {
    /// 1-based iteration number.
    pub iteration: usize,
    /// Raw solve result of this iteration.
    pub zeta: &'a [T],
    /// `max(0, zeta)`.
    pub lambda: &'a [T],
    pub residual: T,
}

/// The projected fixed-point iteration
///
/// ```text
/// (M + 2I + D) zeta' = (N + I + D) lambda + |(A - I) lambda + sigma| - sigma,
/// lambda = max(0, zeta)
/// ```
///
/// with the system matrix assembled and analyzed once.
#[derive(Debug, Clone)]
pub struct ProjectedSolver<'a, T> {
    problem: &'a LcpProblem<T>,
    system: SystemSolver<T>,
    rhs_matrix: SparseMatrix<T>,
    a_minus_i: SparseMatrix<T>,
}

impl<'a, T: Scalar> ProjectedSolver<'a, T> {
    pub fn new(problem: &'a LcpProblem<T>, splitting: &Splitting<T>) -> Result<Self> {
        let n = problem.dim();
        if splitting.dim() != n {
            return Err(LcpError::DimensionMismatch { expected: n, got: splitting.dim() });
        }
        let (m_shift, rhs_matrix) = splitting.shifted(&problem.a)?;
        let system_matrix = m_shift.add_diagonal(&vec![T::one(); n])?;
        let system = SystemSolver::new(&system_matrix)?;
        let a_minus_i = problem.a.add_diagonal(&vec![-T::one(); n])?;
        Ok(Self { problem, system, rhs_matrix, a_minus_i })
    }

    pub fn system(&self) -> &SystemSolver<T> {
        &self.system
    }

    /// One application of the fixed-point map to `lambda`, written to `zeta`.
    pub fn step(&self, lambda: &[T], zeta: &mut [T]) -> Result<()> {
        let n = self.problem.dim();
        let mut rhs = vec![T::zero(); n];
        let mut tmp = vec![T::zero(); n];
        self.step_with(lambda, zeta, &mut rhs, &mut tmp)
    }

    fn step_with(&self, lambda: &[T], zeta: &mut [T], rhs: &mut [T], tmp: &mut [T]) -> Result<()> {
        self.rhs_matrix.mul_vec_into(lambda, rhs);
        self.a_minus_i.mul_vec_into(lambda, tmp);
        for ((r, &t), &s) in rhs.iter_mut().zip(tmp.iter()).zip(&self.problem.sigma) {
            *r += (t + s).abs() - s;
        }
        self.system.solve_into(rhs, zeta)
    }

    pub fn solve(&self, cfg: &SolverConfig<T>) -> Result<SolveReport<T>> {
        self.solve_observed(cfg, |_| {})
    }

    pub fn solve_observed(
        &self,
        cfg: &SolverConfig<T>,
        mut observer: impl FnMut(&IterationState<'_, T>),
    ) -> Result<SolveReport<T>> {
        let n = self.problem.dim();
        cfg.check_dim(n)?;
        let start = Instant::now();
        let mut zeta = cfg.initial.clone();
        let mut next = vec![T::zero(); n];
        let mut lambda = vec![T::zero(); n];
        let mut rhs = vec![T::zero(); n];
        let mut tmp = vec![T::zero(); n];
        let mut residuals = Vec::new();
        let mut converged = false;
        project_into(&zeta, &mut lambda);
        for k in 1..=cfg.max_iters {
            self.step_with(&lambda, &mut next, &mut rhs, &mut tmp)?;
            check_finite(&next, k)?;
            std::mem::swap(&mut zeta, &mut next);
            project_into(&zeta, &mut lambda);
            let res = residual_with(self.problem, &lambda, &mut tmp);
            residuals.push(res);
            observer(&IterationState { iteration: k, zeta: &zeta, lambda: &lambda, residual: res });
            if res < cfg.tol {
                converged = true;
                break;
            }
        }
        Ok(SolveReport {
            iterations: residuals.len(),
            lambda,
            residuals,
            converged,
            wall_seconds: start.elapsed().as_secs_f64(),
        })
    }
}

/// Runs the projected iteration for `splitting` until `Res < cfg.tol`.
pub fn projected_solve<T: Scalar>(
    p: &LcpProblem<T>,
    splitting: &Splitting<T>,
    cfg: &SolverConfig<T>,
) -> Result<SolveReport<T>> {
    ProjectedSolver::new(p, splitting)?.solve(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::splittings::{make_splitting, SplittingKind};

    fn scalar(a: f64, s: f64) -> LcpProblem<f64> {
        LcpProblem::new(SparseMatrix::diagonal(&[a]), vec![s]).unwrap()
    }

    #[test]
    fn scalar_sequence_by_hand() {
        let p = scalar(4.0, -4.0);
        let s = make_splitting(&p.a, SplittingKind::Npgs).unwrap();
        let solver = ProjectedSolver::new(&p, &s).unwrap();
        let mut z = [0.0];
        solver.step(&[0.0], &mut z).unwrap();
        assert!((z[0] - 0.8).abs() < 1e-15);
        solver.step(&[0.8], &mut z).unwrap();
        assert!((z[0] - 0.96).abs() < 1e-15);

        let cfg = SolverConfig::new(1e-12, 200, vec![0.0]).unwrap();
        let mut seen = Vec::new();
        let r = solver.solve_observed(&cfg, |st| seen.push(st.zeta[0])).unwrap();
        assert!(r.converged);
        assert!((seen[0] - 0.8).abs() < 1e-15 && (seen[1] - 0.96).abs() < 1e-15);
        assert!((r.lambda[0] - 1.0).abs() < 1e-12);
        assert_eq!(r.residuals.len(), r.iterations);
    }

    #[test]
    fn known_solution_is_a_fixed_point() {
        let p = scalar(4.0, -4.0);
        let s = make_splitting(&p.a, SplittingKind::Npgs).unwrap();
        let r = projected_solve(&p, &s, &SolverConfig::new(1e-5, 50, vec![1.0]).unwrap()).unwrap();
        assert!(r.converged);
        assert_eq!(r.iterations, 1);
        assert_eq!(r.residuals, vec![0.0]);
        assert_eq!(r.lambda, vec![1.0]);
    }

    #[test]
    fn non_convergence_is_reported() {
        let p = scalar(4.0, -4.0);
        let s = make_splitting(&p.a, SplittingKind::Npgs).unwrap();
        let r = projected_solve(&p, &s, &SolverConfig::new(1e-14, 3, vec![0.0]).unwrap()).unwrap();
        assert!(!r.converged);
        assert_eq!(r.iterations, 3);
    }

    #[test]
    fn divergence_names_iteration() {
        // A = -1, M = 0: the map is zeta' = 3 lambda + 2
        let p = LcpProblem::new(SparseMatrix::diagonal(&[-1.0]), vec![-1.0]).unwrap();
        let s = Splitting::custom(&p.a, SparseMatrix::zeros(1), SparseMatrix::diagonal(&[1.0])).unwrap();
        let err = projected_solve(&p, &s, &SolverConfig::new(1e-10, 10_000, vec![1.0]).unwrap()).unwrap_err();
        assert!(matches!(err, LcpError::Divergence { .. }), "{err:?}");
    }

    #[test]
    fn singular_system_is_an_error() {
        // M + 2I + D = 0 when M = -2 - d
        let p = scalar(1.0, -1.0);
        let s = Splitting::custom(&p.a, SparseMatrix::diagonal(&[-3.0]), SparseMatrix::diagonal(&[-4.0])).unwrap();
        assert_eq!(ProjectedSolver::new(&p, &s).unwrap_err(), LcpError::Singular { row: 0 });
    }

    #[test]
    fn wrong_initial_length() {
        let p = scalar(4.0, -4.0);
        let s = make_splitting(&p.a, SplittingKind::Npj).unwrap();
        assert!(projected_solve(&p, &s, &SolverConfig::new(1e-5, 5, vec![0.0, 0.0]).unwrap()).is_err());
    }
}
