use std::path::PathBuf;

use clap::ValueEnum;
use lcpkit::io::{read_problem, read_vector_file};
use lcpkit::problems::{alternating_start, gen_random_hplus};
use lcpkit::solvers::{modulus_solve, projected_solve, RunRecord};
use lcpkit::splittings::make_splitting;
use lcpkit::{BenchSpec, Family, LcpProblem64, ModulusConfig64, SolveReport64, SolverConfig, SplittingKind64};
use serde::Serialize;

use crate::args::{FamilyArg, GeneratorArgs, MethodArgs, ProblemArgs};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Npj,
    Npgs,
    Npsor,
    Npaor,
    Mgs,
    Msor,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Npj => "npj",
            Method::Npgs => "npgs",
            Method::Npsor => "npsor",
            Method::Npaor => "npaor",
            Method::Mgs => "mgs",
            Method::Msor => "msor",
        }
    }

    pub fn is_modulus(self) -> bool {
        matches!(self, Method::Mgs | Method::Msor)
    }
}

/// Where the instance comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum ProblemSource {
    Bench(BenchSpec),
    Random { n: usize, seed: u64 },
    Files { matrix: PathBuf, sigma: PathBuf },
}

impl ProblemSource {
    pub fn from_generator(g: &GeneratorArgs) -> Result<Self, CliError> {
        let family =
            g.family.ok_or_else(|| CliError::Usage("one of --family or --matrix/--sigma is required".into()))?;
        let bench = |family| -> Result<Self, CliError> {
            let m = g.m.ok_or_else(|| CliError::Usage(format!("--m is required for --family {family}")))?;
            Ok(ProblemSource::Bench(BenchSpec::new(family, m, g.delta)?))
        };
        match family {
            FamilyArg::Example1 => bench(Family::Example1),
            FamilyArg::Example2 => bench(Family::Example2),
            FamilyArg::Random => {
                let n = g.n.ok_or_else(|| CliError::Usage("--n is required for --family random".into()))?;
                Ok(ProblemSource::Random { n, seed: g.seed.unwrap_or(0) })
            }
        }
    }

    pub fn from_args(p: &ProblemArgs) -> Result<Self, CliError> {
        match (&p.matrix, &p.sigma) {
            (Some(matrix), Some(sigma)) => Ok(ProblemSource::Files { matrix: matrix.clone(), sigma: sigma.clone() }),
            _ => Self::from_generator(&p.generator),
        }
    }

    pub fn load(&self) -> Result<LcpProblem64, CliError> {
        Ok(match self {
            ProblemSource::Bench(spec) => spec.generate()?,
            ProblemSource::Random { n, seed } => gen_random_hplus(*n, *seed)?,
            ProblemSource::Files { matrix, sigma } => read_problem(matrix, sigma)?,
        })
    }
}

/// Method and stopping parameters of a single run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub method: Method,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub gamma: f64,
    pub omega_scale: Option<f64>,
    pub tol: f64,
    pub max_iters: usize,
}

impl RunConfig {
    pub fn new(m: &MethodArgs, tol: f64, max_iters: usize) -> Result<Self, CliError> {
        let cfg = Self {
            method: m.method,
            alpha: m.alpha,
            beta: m.beta,
            gamma: m.gamma,
            omega_scale: m.omega_scale,
            tol,
            max_iters,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let need_alpha = matches!(self.method, Method::Npsor | Method::Npaor | Method::Msor);
        if need_alpha && self.alpha.is_none() {
            return Err(CliError::Usage(format!("--alpha is required for {}", self.method.name())));
        }
        if self.method == Method::Npaor && self.beta.is_none() {
            return Err(CliError::Usage("--beta is required for npaor".into()));
        }
        if !self.tol.is_finite() || self.tol <= 0.0 {
            return Err(CliError::Usage(format!("--tol must be positive, got {}", self.tol)));
        }
        Ok(())
    }

    /// Splitting of the projected methods; `None` for the modulus baselines.
    pub fn splitting_kind(&self) -> Option<SplittingKind64> {
        let alpha = self.alpha.unwrap_or(1.0);
        Some(match self.method {
            Method::Npj => SplittingKind64::Npj,
            Method::Npgs => SplittingKind64::Npgs,
            Method::Npsor => SplittingKind64::Npsor { alpha },
            Method::Npaor => SplittingKind64::Npaor { alpha, beta: self.beta.unwrap_or(alpha) },
            Method::Mgs | Method::Msor => return None,
        })
    }

    pub fn modulus_config(&self) -> Option<ModulusConfig64> {
        let base = match self.method {
            Method::Mgs => ModulusConfig64::mgs(),
            Method::Msor => ModulusConfig64::msor(self.alpha.unwrap_or(1.0)),
            _ => return None,
        };
        let base = base.with_gamma(self.gamma);
        Some(match self.omega_scale {
            Some(s) => base.with_omega_scale(s),
            None => base,
        })
    }

    /// Parameters as reported in records: `alpha` for every method (1 for
    /// the Gauss-Seidel variants), `beta` for npaor only.
    pub fn reported_params(&self) -> (Option<f64>, Option<f64>) {
        match self.method {
            Method::Npj => (None, None),
            Method::Npgs | Method::Mgs => (Some(1.0), None),
            Method::Npsor | Method::Msor => (self.alpha, None),
            Method::Npaor => (self.alpha, self.beta),
        }
    }

    pub fn execute(&self, p: &LcpProblem64, initial: Vec<f64>) -> Result<SolveReport64, CliError> {
        let cfg = SolverConfig::new(self.tol, self.max_iters, initial)?;
        if let Some(kind) = self.splitting_kind() {
            Ok(projected_solve(p, &make_splitting(&p.a, kind)?, &cfg)?)
        } else {
            let mcfg = self.modulus_config().expect("modulus method");
            Ok(modulus_solve(p, &cfg, &mcfg)?)
        }
    }

    pub fn record(&self, report: &SolveReport64) -> RunRecord {
        let (alpha, beta) = self.reported_params();
        report.to_record(self.method.name(), alpha, beta)
    }
}

/// Parses `--init`: "alt", "zero", or a vector file of length `n`.
pub fn initial_vector(spec: &str, n: usize) -> Result<Vec<f64>, CliError> {
    let v = match spec {
        "alt" => alternating_start(n),
        "zero" => vec![0.0; n],
        path => read_vector_file(path)?,
    };
    if v.len() != n {
        return Err(CliError::Usage(format!("initial vector has length {}, expected {n}", v.len())));
    }
    Ok(v)
}
