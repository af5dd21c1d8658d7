use serde::Serialize;

use crate::Scalar;

/// Outcome of one iterative solve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport<T> {
    pub lambda: Vec<T>,
    pub iterations: usize,
    /// Residual after each iteration.
    pub residuals: Vec<T>,
    pub converged: bool,
    pub wall_seconds: f64,
}

impl<T: Scalar> SolveReport<T> {
    pub fn final_residual(&self) -> Option<T> {
        self.residuals.last().copied()
    }

    pub fn to_record(&self, method: &str, alpha: Option<f64>, beta: Option<f64>) -> RunRecord {
        RunRecord {
            method: method.to_string(),
            n: self.lambda.len(),
            alpha,
            beta,
            iterations: self.iterations,
            residual_final: self.final_residual().map_or(f64::NAN, Scalar::to_f64_lossy),
            wall_seconds: self.wall_seconds,
            converged: self.converged,
        }
    }
}

pub const CSV_HEADER: &str = "method,n,alpha,beta,iterations,residual_final,wall_seconds,converged";

/// Flat per-run record; field order is the JSON and CSV column order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunRecord {
    pub method: String,
    pub n: usize,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub iterations: usize,
    pub residual_final: f64,
    pub wall_seconds: f64,
    pub converged: bool,
}

impl RunRecord {
    /// One CSV line (no trailing newline) matching [`CSV_HEADER`]. Missing
    /// parameters are empty fields.
    pub fn csv_row(&self) -> String {
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{:e},{:.6},{}",
            self.method,
            self.n,
            opt(self.alpha),
            opt(self.beta),
            self.iterations,
            self.residual_final,
            self.wall_seconds,
            self.converged
        )
    }
}
