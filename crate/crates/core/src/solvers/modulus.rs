use std::time::Instant;

use serde::Serialize;

use super::system::SystemSolver;
use super::{check_finite, residual_with, LcpProblem, SolveReport, SolverConfig};
use crate::matrix::SparseMatrix;
use crate::splittings::{make_splitting, Splitting, SplittingKind};
use crate::{LcpError, Result, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModulusVariant {
    Mgs,
    Msor,
}

/// Parameters of the modulus-based baseline with `Omega = omega_scale * D`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModulusConfig<T> {
    pub omega_scale: T,
    pub gamma: T,
    pub alpha: T,
    pub variant: ModulusVariant,
}

impl<T: Scalar> ModulusConfig<T> {
    /// Modulus Gauss-Seidel with `Omega = D / 2` and `gamma = 1`.
    pub fn mgs() -> Self {
        Self { omega_scale: T::lit(0.5), gamma: T::one(), alpha: T::one(), variant: ModulusVariant::Mgs }
    }

    /// Modulus SOR with `Omega = D / (2 alpha)` and `gamma = 1`.
    pub fn msor(alpha: T) -> Self {
        Self { omega_scale: T::one() / (T::lit(2.0) * alpha), gamma: T::one(), alpha, variant: ModulusVariant::Msor }
    }

    pub fn with_gamma(mut self, gamma: T) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn with_omega_scale(mut self, omega_scale: T) -> Self {
        self.omega_scale = omega_scale;
        self
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("omega_scale", self.omega_scale), ("gamma", self.gamma), ("alpha", self.alpha)] {
            if !(v > T::zero()) || !v.is_finite() {
                return Err(LcpError::InvalidParameter(format!("{name} must be positive and finite, got {v}")));
            }
        }
        Ok(())
    }

    /// Splitting `A = M - N` driving the iteration: Gauss-Seidel for MGS,
    /// SOR with `alpha` for MSOR.
    pub fn splitting(&self, a: &SparseMatrix<T>) -> Result<Splitting<T>> {
        match self.variant {
            ModulusVariant::Mgs => make_splitting(a, SplittingKind::Npgs),
            ModulusVariant::Msor => make_splitting(a, SplittingKind::Npsor { alpha: self.alpha }),
        }
    }
}

/// Modulus-based matrix splitting iteration
///
/// ```text
/// (M + Omega) x' = N x + (Omega - A) |x| - gamma sigma,
/// lambda = (|x| + x) / gamma
/// ```
pub struct ModulusSolver<'a, T> {
    problem: &'a LcpProblem<T>,
    system: SystemSolver<T>,
    n_part: SparseMatrix<T>,
    omega: Vec<T>,
    gamma: T,
}

impl<'a, T: Scalar> ModulusSolver<'a, T> {
    pub fn new(problem: &'a LcpProblem<T>, mcfg: &ModulusConfig<T>) -> Result<Self> {
        mcfg.validate()?;
        let split = mcfg.splitting(&problem.a)?;
        let omega: Vec<T> = problem.a.diag().into_iter().map(|d| mcfg.omega_scale * d).collect();
        let system = SystemSolver::new(&split.m.add_diagonal(&omega)?)?;
        Ok(Self { problem, system, n_part: split.n_part, omega, gamma: mcfg.gamma })
    }

    pub fn solve(&self, cfg: &SolverConfig<T>) -> Result<SolveReport<T>> {
        let n = self.problem.dim();
        cfg.check_dim(n)?;
        let start = Instant::now();
        let mut x = cfg.initial.clone();
        let mut next = vec![T::zero(); n];
        let mut abs_x = vec![T::zero(); n];
        let mut rhs = vec![T::zero(); n];
        let mut tmp = vec![T::zero(); n];
        let mut lambda = vec![T::zero(); n];
        let mut residuals = Vec::new();
        let mut converged = false;
        for k in 1..=cfg.max_iters {
            for (a, &v) in abs_x.iter_mut().zip(&x) {
                *a = v.abs();
            }
            self.n_part.mul_vec_into(&x, &mut rhs);
            self.problem.a.mul_vec_into(&abs_x, &mut tmp);
            for i in 0..n {
                rhs[i] += self.omega[i] * abs_x[i] - tmp[i] - self.gamma * self.problem.sigma[i];
            }
            self.system.solve_into(&rhs, &mut next)?;
            check_finite(&next, k)?;
            std::mem::swap(&mut x, &mut next);
            for (l, &v) in lambda.iter_mut().zip(&x) {
                *l = (v.abs() + v) / self.gamma;
            }
            let res = residual_with(self.problem, &lambda, &mut tmp);
            residuals.push(res);
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

/// Runs the modulus baseline from `x = cfg.initial` until `Res < cfg.tol`.
pub fn modulus_solve<T: Scalar>(
    p: &LcpProblem<T>,
    cfg: &SolverConfig<T>,
    mcfg: &ModulusConfig<T>,
) -> Result<SolveReport<T>> {
    ModulusSolver::new(p, mcfg)?.solve(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar(a: f64, s: f64) -> LcpProblem<f64> {
        LcpProblem::new(SparseMatrix::diagonal(&[a]), vec![s]).unwrap()
    }

    #[test]
    fn scalar_fixed_point_for_both_gammas() {
        // 6x = -2|x| + 4 gamma, so x = gamma / 2 and lambda = 1 for any gamma
        let p = scalar(4.0, -4.0);
        for gamma in [1.0, 2.0] {
            let mcfg = ModulusConfig::mgs().with_gamma(gamma);
            let solver = ModulusSolver::new(&p, &mcfg).unwrap();
            let r = solver.solve(&SolverConfig::new(1e-13, 200, vec![0.0]).unwrap()).unwrap();
            assert!(r.converged);
            assert!((r.lambda[0] - 1.0).abs() < 1e-12, "gamma {gamma}: {:?}", r.lambda);
            // starting on the fixed point confirms in one pass
            let r = solver.solve(&SolverConfig::new(1e-13, 200, vec![gamma / 2.0]).unwrap()).unwrap();
            assert_eq!(r.iterations, 1);
        }
    }

    #[test]
    fn msor_omega_scale() {
        let m = ModulusConfig::<f64>::msor(0.85);
        assert!((m.omega_scale - 1.0 / 1.7).abs() < 1e-15);
        assert_eq!(m.variant, ModulusVariant::Msor);
        assert_eq!(ModulusConfig::<f64>::mgs().omega_scale, 0.5);
    }

    #[test]
    fn rejects_nonpositive_parameters() {
        let p = scalar(4.0, -4.0);
        assert!(ModulusSolver::new(&p, &ModulusConfig::mgs().with_gamma(0.0)).is_err());
        assert!(ModulusSolver::new(&p, &ModulusConfig::msor(-1.0)).is_err());
        assert!(ModulusSolver::new(&p, &ModulusConfig::mgs().with_omega_scale(f64::INFINITY)).is_err());
    }

    #[test]
    fn solves_small_system() {
        // lambda = (0.5, 0), w = (0, 0.5)
        let a = SparseMatrix::<f64>::from_dense(&[vec![2.0, -1.0], vec![-1.0, 2.0]]).unwrap();
        let p = LcpProblem::new(a, vec![-1.0, 1.0]).unwrap();
        let r = modulus_solve(&p, &SolverConfig::new(1e-12, 500, vec![1.0, 0.0]).unwrap(), &ModulusConfig::msor(1.2))
            .unwrap();
        assert!(r.converged);
        assert!((r.lambda[0] - 0.5).abs() < 1e-10 && r.lambda[1].abs() < 1e-10);
    }
}
