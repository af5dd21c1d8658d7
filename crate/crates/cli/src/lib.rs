//! The `lcpkit` command line: `solve`, `check`, `table` and `gen`.
//!
//! [`run_cli`] is the whole program minus process plumbing, so tests drive it
//! directly with in-memory writers. Exit codes: 0 success or convergence,
//! 2 a solve that hit the iteration limit, 1 usage and I/O errors.

pub mod args;
pub mod run;
pub mod table;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::error::ErrorKind;
use clap::Parser;
use lcpkit::convergence::certify;
use lcpkit::io::write_problem;
use lcpkit::solvers::{RunRecord, CSV_HEADER};
use lcpkit::splittings::make_splitting;
use lcpkit::LcpError;
use serde::Serialize;

use args::{CheckArgs, CheckFormat, Cli, Command, Format, GenArgs, SolveArgs, TableArgs};
use run::{initial_vector, ProblemSource, RunConfig};
use table::{render_csv, render_json, render_markdown, run_table, TableConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NOT_CONVERGED: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lcp(#[from] LcpError),
    #[error("{path}: {source}")]
    Write { path: String, source: std::io::Error },
}

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn run_cli<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_ERROR,
            };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Solve(a) => cmd_solve(a, out),
        Command::Check(a) => cmd_check(a, out),
        Command::Table(a) => cmd_table(a, out),
        Command::Gen(a) => cmd_gen(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn emit(text: &str, output: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    let (res, path) = match output {
        Some(p) => (std::fs::write(p, text), p.display().to_string()),
        None => (out.write_all(text.as_bytes()), "<stdout>".to_string()),
    };
    res.map_err(|source| CliError::Write { path, source })
}

#[derive(Serialize)]
struct SolveOutput<'a> {
    #[serde(flatten)]
    record: &'a RunRecord,
    lambda: &'a [f64],
}

pub fn cmd_solve(a: &SolveArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let cfg = RunConfig::new(&a.method, a.tol, a.max_iters)?;
    let problem = ProblemSource::from_args(&a.problem)?.load()?;
    let report = cfg.execute(&problem, initial_vector(&a.init, problem.dim())?)?;
    let record = cfg.record(&report);
    let text = match a.format {
        Format::Csv => format!("{CSV_HEADER}\n{}\n", record.csv_row()),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&SolveOutput { record: &record, lambda: &report.lambda })
                .expect("record serializes");
            s.push('\n');
            s
        }
        Format::Md => format!(
            "| method | n | IT | Res | CPU | converged |\n|---|---:|---:|---:|---:|---|\n| {} | {} | {} | {:.1e} | {:.4} | {} |\n",
            record.method, record.n, record.iterations, record.residual_final, record.wall_seconds, record.converged
        ),
    };
    emit(&text, a.output.as_deref(), out)?;
    Ok(if report.converged { EXIT_OK } else { EXIT_NOT_CONVERGED })
}

pub fn cmd_check(a: &CheckArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let cfg = RunConfig::new(&a.method, 1e-5, 1)?;
    let kind = cfg
        .splitting_kind()
        .ok_or_else(|| CliError::Usage(format!("check applies to projected methods, not {}", cfg.method.name())))?;
    let problem = ProblemSource::from_args(&a.problem)?.load()?;
    let cert = certify(&problem.a, &make_splitting(&problem.a, kind)?, a.p_limit)?;
    let text = match a.format {
        CheckFormat::Text => format!("problem: n = {}, method: {}\n{cert}", problem.dim(), cfg.method.name()),
        CheckFormat::Json => {
            let mut s = serde_json::to_string_pretty(&cert).expect("certificate serializes");
            s.push('\n');
            s
        }
    };
    emit(&text, a.output.as_deref(), out)?;
    Ok(EXIT_OK)
}

pub fn cmd_table(a: &TableArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let mut cfg = TableConfig::new(a.which);
    if !a.sizes.is_empty() {
        cfg.sizes = a.sizes.clone();
    }
    if let Some(alpha) = a.alpha {
        cfg.msor_alpha = alpha;
    }
    if let Some(alpha1) = a.alpha1 {
        cfg.npsor_alpha = alpha1;
    }
    cfg.gamma = a.gamma;
    cfg.delta = a.delta;
    cfg.tol = a.tol;
    cfg.max_iters = a.max_iters;
    let t = run_table(&cfg)?;
    let text = match a.format {
        Format::Csv => render_csv(&t),
        Format::Md => render_markdown(&t),
        Format::Json => render_json(&t),
    };
    emit(&text, a.output.as_deref(), out)?;
    Ok(if t.all_converged() { EXIT_OK } else { EXIT_NOT_CONVERGED })
}

pub fn cmd_gen(a: &GenArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let problem = ProblemSource::from_generator(&a.generator)?.load()?;
    write_problem(&problem, &a.matrix, &a.sigma)?;
    let text = format!(
        "wrote n = {} ({} nonzeros) to {} and {}\n",
        problem.dim(),
        problem.a.nnz(),
        a.matrix.display(),
        a.sigma.display()
    );
    emit(&text, None, out)?;
    Ok(EXIT_OK)
}
