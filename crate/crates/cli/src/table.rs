use std::fmt::Write as _;

use clap::ValueEnum;
use lcpkit::solvers::{RunRecord, CSV_HEADER};
use lcpkit::{BenchSpec, Family, LcpProblem64};
use rayon::prelude::*;

use crate::run::{Method, RunConfig};
use crate::CliError;

/// Environment variable capping the number of table cells run in parallel.
pub const THREADS_ENV: &str = "LCPKIT_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    /// Symmetric block benchmark, MSOR alpha = 0.85.
    Table1,
    /// Nonsymmetric block benchmark, MSOR alpha = 0.88.
    Table2,
}

impl TableKind {
    pub fn family(self) -> Family {
        match self {
            TableKind::Table1 => Family::Example1,
            TableKind::Table2 => Family::Example2,
        }
    }

    pub fn default_sizes(self) -> &'static [usize] {
        match self {
            TableKind::Table1 => &[100, 900, 2500, 3600, 6400, 10000],
            TableKind::Table2 => &[100, 400, 900, 1600, 2500, 3600],
        }
    }

    pub fn default_msor_alpha(self) -> f64 {
        match self {
            TableKind::Table1 => 0.85,
            TableKind::Table2 => 0.88,
        }
    }

    pub fn default_npsor_alpha(self) -> f64 {
        1.7
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableConfig {
    pub kind: TableKind,
    pub sizes: Vec<usize>,
    pub msor_alpha: f64,
    pub npsor_alpha: f64,
    pub gamma: f64,
    pub delta: f64,
    pub tol: f64,
    pub max_iters: usize,
}

impl TableConfig {
    pub fn new(kind: TableKind) -> Self {
        Self {
            kind,
            sizes: kind.default_sizes().to_vec(),
            msor_alpha: kind.default_msor_alpha(),
            npsor_alpha: kind.default_npsor_alpha(),
            gamma: 1.0,
            delta: 4.0,
            tol: 1e-5,
            max_iters: 10_000,
        }
    }

    /// Method rows in the order MGS, NPGS, MSOR, NPSOR.
    pub fn rows(&self) -> Vec<RunConfig> {
        let row = |method, alpha| RunConfig {
            method,
            alpha,
            beta: None,
            gamma: self.gamma,
            omega_scale: None,
            tol: self.tol,
            max_iters: self.max_iters,
        };
        vec![
            row(Method::Mgs, None),
            row(Method::Npgs, None),
            row(Method::Msor, Some(self.msor_alpha)),
            row(Method::Npsor, Some(self.npsor_alpha)),
        ]
    }

    fn block_orders(&self) -> Result<Vec<usize>, CliError> {
        if self.sizes.is_empty() {
            return Err(CliError::Usage("no table sizes given".into()));
        }
        self.sizes
            .iter()
            .map(|&n| {
                let m = (n as f64).sqrt().round() as usize;
                if m * m != n || m < 2 {
                    Err(CliError::Usage(format!("table size {n} is not a perfect square m^2 with m >= 2")))
                } else {
                    Ok(m)
                }
            })
            .collect()
    }
}

/// Per-cell results, row-major over [`TableConfig::rows`] x sizes.
#[derive(Debug, Clone, PartialEq)]
pub struct TableResult {
    pub kind: TableKind,
    pub sizes: Vec<usize>,
    pub records: Vec<RunRecord>,
}

impl TableResult {
    pub fn all_converged(&self) -> bool {
        self.records.iter().all(|r| r.converged)
    }

    pub fn cell(&self, method: Method, n: usize) -> Option<&RunRecord> {
        let col = self.sizes.iter().position(|&s| s == n)?;
        let row = [Method::Mgs, Method::Npgs, Method::Msor, Method::Npsor].iter().position(|&m| m == method)?;
        self.records.get(row * self.sizes.len() + col)
    }
}

fn thread_cap() -> Option<usize> {
    std::env::var(THREADS_ENV).ok()?.trim().parse().ok().filter(|&k| k > 0)
}

pub fn run_table(cfg: &TableConfig) -> Result<TableResult, CliError> {
    let orders = cfg.block_orders()?;
    let problems: Vec<LcpProblem64> = orders
        .iter()
        .map(|&m| BenchSpec::new(cfg.kind.family(), m, cfg.delta)?.generate())
        .collect::<lcpkit::Result<_>>()?;
    let rows = cfg.rows();
    let cells: Vec<(usize, usize)> = (0..rows.len()).flat_map(|r| (0..problems.len()).map(move |c| (r, c))).collect();
    let solve = |&(r, c): &(usize, usize)| -> Result<RunRecord, CliError> {
        let p = &problems[c];
        let report = rows[r].execute(p, lcpkit::problems::alternating_start(p.dim()))?;
        Ok(rows[r].record(&report))
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_cap().unwrap_or(0))
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    let records = pool.install(|| cells.par_iter().map(solve).collect::<Result<Vec<_>, _>>())?;
    Ok(TableResult { kind: cfg.kind, sizes: cfg.sizes.clone(), records })
}

pub fn render_csv(t: &TableResult) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in &t.records {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

pub fn render_json(t: &TableResult) -> String {
    let mut s = serde_json::to_string_pretty(&t.records).expect("records serialize");
    s.push('\n');
    s
}

/// Report layout: one block of IT / CPU / Res lines per method.
pub fn render_markdown(t: &TableResult) -> String {
    let mut out = String::new();
    out.push_str("| Method | |");
    for n in &t.sizes {
        let _ = write!(out, " n={n} |");
    }
    out.push_str("\n|---|---|");
    out.push_str(&"---:|".repeat(t.sizes.len()));
    out.push('\n');
    for chunk in t.records.chunks(t.sizes.len()) {
        let first = &chunk[0];
        let param = match first.method.as_str() {
            "npgs" | "npsor" => format!("alpha1 = {}", first.alpha.unwrap_or(1.0)),
            _ => format!("alpha = {}", first.alpha.unwrap_or(1.0)),
        };
        let cells = |f: &dyn Fn(&RunRecord) -> String| chunk.iter().map(|r| format!(" {} |", f(r))).collect::<String>();
        let it = cells(&|r| if r.converged { r.iterations.to_string() } else { format!("{}*", r.iterations) });
        let cpu = cells(&|r| format!("{:.4}", r.wall_seconds));
        let res = cells(&|r| format!("{:.1e}", r.residual_final));
        let _ = writeln!(out, "| {} | IT |{it}", first.method.to_uppercase());
        let _ = writeln!(out, "| {param} | CPU |{cpu}");
        let _ = writeln!(out, "|  | Res |{res}");
    }
    if !t.all_converged() {
        out.push_str("\n`*` marks runs that hit the iteration limit.\n");
    }
    out
}
