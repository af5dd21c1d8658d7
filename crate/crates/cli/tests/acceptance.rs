//! Acceptance gate: one PASS/FAIL line per criterion; nonzero exit on any failure.

use std::time::Instant;

use lcpkit::convergence::{check_theorem_h, iteration_operator, iteration_operator_rho, RhoMode};
use lcpkit::matrix::certify_rho_lt_one;
use lcpkit::problems::{alternating_start, gen_example1, gen_example2, gen_random_hplus, oracle_solve};
use lcpkit::solvers::{projected_solve, residual, ProjectedSolver};
use lcpkit::splittings::{make_splitting, SplittingKind};
use lcpkit::{LcpProblem64, LinearOperator, SolveReport64, SolverConfig, SplittingKind64};
use lcpkit_cli::run::{Method, RunConfig};
use lcpkit_cli::run_cli;
use lcpkit_cli::table::{run_table, TableConfig, TableKind};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn within(got: usize, want: usize, slack: usize) -> bool {
    got.abs_diff(want) <= slack
}

fn cfg(method: Method, alpha: Option<f64>, beta: Option<f64>, gamma: f64) -> RunConfig {
    RunConfig { method, alpha, beta, gamma, omega_scale: None, tol: 1e-5, max_iters: 10_000 }
}

fn run(p: &LcpProblem64, c: &RunConfig) -> SolveReport64 {
    c.execute(p, alternating_start(p.dim())).expect("solve")
}

fn it_check(p: &LcpProblem64, c: &RunConfig, want: usize, label: &str, out: &mut Vec<String>) -> bool {
    let r = run(p, c);
    let ok = r.converged && within(r.iterations, want, 2);
    out.push(format!("{label} IT={} (target {want})", r.iterations));
    ok
}

fn inf_dist(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

/// `max |(lambda + w) - |lambda - w||` for a converged exit.
fn complementarity_gap(p: &LcpProblem64, lambda: &[f64]) -> f64 {
    let w = p.w(lambda);
    lambda.iter().zip(&w).map(|(l, w)| ((l + w) - (l - w).abs()).abs()).fold(0.0, f64::max)
}

fn criterion1() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    let mut pass = true;
    for (m, gs, sor) in [(10, 21, 15), (30, 23, 16)] {
        let p = gen_example1(m, 4.0).unwrap();
        pass &= it_check(&p, &cfg(Method::Npgs, None, None, 1.0), gs, &format!("NPGS n={}", m * m), &mut notes);
        pass &= it_check(&p, &cfg(Method::Npsor, Some(1.7), None, 1.0), sor, &format!("NPSOR n={}", m * m), &mut notes);
    }
    let secs = start.elapsed().as_secs_f64();
    pass &= secs < 5.0;
    notes.push(format!("{secs:.3}s"));
    Outcome { pass, detail: notes.join(", ") }
}

fn criterion2() -> Outcome {
    let p = gen_example1(10, 4.0).unwrap();
    let mut pass = true;
    let mut notes = Vec::new();
    for (method, alpha, want) in [(Method::Mgs, None, 36), (Method::Msor, Some(0.85), 15)] {
        let best = [1.0, 2.0]
            .into_iter()
            .map(|g| (g, run(&p, &cfg(method, alpha, None, g))))
            .filter(|(_, r)| r.converged)
            .min_by_key(|(_, r)| r.iterations.abs_diff(want));
        match best {
            Some((g, r)) => {
                pass &= within(r.iterations, want, 3);
                notes.push(format!("{} IT={} (target {want}) gamma={g}", method.name().to_uppercase(), r.iterations));
            }
            None => {
                pass = false;
                notes.push(format!("{} did not converge", method.name()));
            }
        }
    }
    Outcome { pass, detail: notes.join(", ") }
}

fn criterion3() -> Outcome {
    let mut notes = Vec::new();
    let p100 = gen_example2(10, 4.0).unwrap();
    let p400 = gen_example2(20, 4.0).unwrap();
    let mut pass = it_check(&p100, &cfg(Method::Npgs, None, None, 1.0), 18, "NPGS n=100", &mut notes);
    pass &= it_check(&p400, &cfg(Method::Npgs, None, None, 1.0), 21, "NPGS n=400", &mut notes);
    pass &= it_check(&p100, &cfg(Method::Npsor, Some(1.7), None, 1.0), 12, "NPSOR n=100", &mut notes);
    Outcome { pass, detail: notes.join(", ") }
}

fn criterion4() -> Outcome {
    let mut pass = true;
    let mut cells = 0;
    for (kind, sizes) in [(TableKind::Table1, vec![100, 900]), (TableKind::Table2, vec![100, 400, 900])] {
        for gamma in [1.0, 2.0] {
            let mut tc = TableConfig::new(kind);
            tc.sizes = sizes.clone();
            tc.gamma = gamma;
            let t = run_table(&tc).unwrap();
            for &n in &sizes {
                let it = |m| t.cell(m, n).unwrap().iterations;
                pass &=
                    t.all_converged() && it(Method::Npgs) <= it(Method::Mgs) && it(Method::Npsor) <= it(Method::Msor);
                cells += 1;
            }
        }
    }
    Outcome { pass, detail: format!("{cells} (table, n, gamma) cells compared") }
}

fn criterion5() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut failures = 0;
    let kinds = [
        SplittingKind64::Npj,
        SplittingKind64::Npgs,
        SplittingKind64::Npsor { alpha: 1.0 },
        SplittingKind64::Npsor { alpha: 1.5 },
    ];
    for seed in 0..100u64 {
        let p = gen_random_hplus::<f64>(1 + (seed as usize % 8), seed).unwrap();
        let exact = oracle_solve(&p).unwrap().expect("H+ problems have a solution");
        let cfg = SolverConfig::new(1e-10, 10_000, alternating_start(p.dim())).unwrap();
        for kind in kinds {
            let r = projected_solve(&p, &make_splitting(&p.a, kind).unwrap(), &cfg).unwrap();
            let d = inf_dist(&r.lambda, &exact);
            worst = worst.max(d);
            if !r.converged || d > 1e-6 {
                failures += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        pass: failures == 0 && secs < 10.0,
        detail: format!("400 solves, max deviation {worst:.2e}, {failures} failures, {secs:.3}s"),
    }
}

fn criterion6() -> Outcome {
    let mut worst_res: f64 = 0.0;
    let mut worst_gap: f64 = 0.0;
    let mut exits = 0;
    let mut pass = true;
    for m in [2, 5, 10, 20, 30, 40, 50, 60, 80, 100] {
        for p in [gen_example1(m, 4.0).unwrap(), gen_example2(m, 4.0).unwrap()] {
            worst_res = worst_res.max(residual(&p, p.known_solution.as_ref().unwrap()).unwrap());
            if m > 30 {
                continue;
            }
            for c in [
                cfg(Method::Npj, None, None, 1.0),
                cfg(Method::Npgs, None, None, 1.0),
                cfg(Method::Npsor, Some(1.7), None, 1.0),
                cfg(Method::Npaor, Some(1.2), Some(0.6), 1.0),
                cfg(Method::Mgs, None, None, 2.0),
                cfg(Method::Msor, Some(0.85), None, 1.0),
            ] {
                let r = run(&p, &c);
                pass &= r.converged;
                worst_gap = worst_gap.max(complementarity_gap(&p, &r.lambda));
                exits += 1;
            }
        }
    }
    for seed in 0..40u64 {
        let p = gen_random_hplus::<f64>(2 + seed as usize, seed).unwrap();
        let r = run(&p, &cfg(Method::Npgs, None, None, 1.0));
        pass &= r.converged;
        worst_gap = worst_gap.max(complementarity_gap(&p, &r.lambda));
        exits += 1;
    }
    pass &= worst_res <= 1e-12 && worst_gap <= 10.0 * 1e-5;
    Outcome {
        pass,
        detail: format!("max Res(lambda*) {worst_res:.1e}, max complementarity gap {worst_gap:.1e} over {exits} exits"),
    }
}

fn criterion7() -> Outcome {
    let p = gen_example1(10, 4.0).unwrap();
    let star = p.known_solution.clone().unwrap();
    let s = make_splitting(&p.a, SplittingKind::Npgs).unwrap();
    let t = iteration_operator(&p.a, &s, RhoMode::ExactDense).unwrap();
    let solver = ProjectedSolver::new(&p, &s).unwrap();
    let cfg = SolverConfig::new(1e-14, 200, alternating_start(p.dim())).unwrap();
    let mut prev: Vec<f64> = alternating_start(p.dim());
    let mut worst = f64::NEG_INFINITY;
    let mut steps = 0;
    solver
        .solve_observed(&cfg, |st| {
            let e: Vec<f64> = prev.iter().zip(&star).map(|(a, b)| (a - b).abs()).collect();
            let bound = t.apply_vec(&e);
            for i in 0..star.len() {
                worst = worst.max((st.lambda[i] - star[i]).abs() - bound[i]);
            }
            prev = st.lambda.to_vec();
            steps += 1;
        })
        .unwrap();
    Outcome { pass: worst <= 1e-10, detail: format!("{steps} iterations, max excess {worst:.1e}") }
}

fn criterion8() -> Outcome {
    let kinds = [SplittingKind64::Npj, SplittingKind64::Npgs, SplittingKind64::Npsor { alpha: 1.2 }];
    let (mut fired_h, mut fired_v, mut violations, mut bound_fail) = (0, 0, 0, 0);
    for seed in 0..50u64 {
        let n = 1 + (seed as usize * 7) % 32;
        let mut a = gen_random_hplus::<f64>(n, 1000 + seed).unwrap().a;
        if seed % 2 == 1 {
            // pull the diagonal below one so the D < I case is exercised
            let dmax = a.diag().into_iter().fold(0.0, f64::max);
            a = a.scale(1.0 / (dmax + 1.0));
        }
        for kind in kinds {
            let s = make_splitting(&a, kind).unwrap();
            let exact = iteration_operator_rho(&a, &s, RhoMode::ExactDense).unwrap().rho;
            let bound = iteration_operator_rho(&a, &s, RhoMode::ComparisonBound).unwrap().rho;
            if bound < exact - 1e-9 {
                bound_fail += 1;
            }
            if check_theorem_h(&a, &s).unwrap().h_conditions_satisfied {
                fired_h += 1;
                violations += usize::from(exact >= 1.0);
            }
            let t = iteration_operator(&a, &s, RhoMode::ExactDense).unwrap();
            if certify_rho_lt_one(&t, &vec![1.0; n]).unwrap() {
                fired_v += 1;
                violations += usize::from(exact >= 1.0);
            }
        }
    }
    Outcome {
        pass: violations == 0 && bound_fail == 0,
        detail: format!(
            "150 (instance, splitting) pairs, H+ test fired {fired_h}, vector test fired {fired_v}, {violations} unsound, {bound_fail} bound violations"
        ),
    }
}

fn trajectory(p: &LcpProblem64, kind: SplittingKind64) -> Vec<Vec<f64>> {
    let s = make_splitting(&p.a, kind).unwrap();
    let cfg = SolverConfig::new(1e-5, 10_000, alternating_start(p.dim())).unwrap();
    let mut out = Vec::new();
    ProjectedSolver::new(p, &s).unwrap().solve_observed(&cfg, |st| out.push(st.zeta.to_vec())).unwrap();
    out
}

fn criterion9() -> Outcome {
    let p = gen_example1(5, 4.0).unwrap();
    let alpha = 1.3;
    let mut worst: f64 = 0.0;
    let mut pass = true;
    for (aor, named) in [
        ((1.0, 1.0), SplittingKind64::Npgs),
        ((1.0, 0.0), SplittingKind64::Npj),
        ((alpha, alpha), SplittingKind64::Npsor { alpha }),
    ] {
        let x = trajectory(&p, SplittingKind64::Npaor { alpha: aor.0, beta: aor.1 });
        let y = trajectory(&p, named);
        pass &= x.len() == y.len();
        for (a, b) in x.iter().zip(&y) {
            worst = worst.max(inf_dist(a, b));
        }
    }
    Outcome { pass: pass && worst <= 1e-14, detail: format!("max iterate difference {worst:.1e}") }
}

fn table_csv() -> String {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_cli(["lcpkit", "table", "table1", "--sizes", "100,900", "--format", "csv"], &mut out, &mut err);
    assert_eq!(code, 0, "{}", String::from_utf8_lossy(&err));
    String::from_utf8(out).unwrap()
}

fn strip_timing(csv: &str) -> String {
    let header: Vec<&str> = csv.lines().next().unwrap_or_default().split(',').collect();
    let col = header.iter().position(|&h| h == "wall_seconds").expect("wall_seconds column");
    csv.lines()
        .map(|l| l.split(',').enumerate().filter(|&(i, _)| i != col).map(|(_, f)| f).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join("\n")
}

fn criterion10() -> Outcome {
    let a = table_csv();
    let b = table_csv();
    let same = strip_timing(&a) == strip_timing(&b);
    Outcome {
        pass: same && a.lines().count() == 9,
        detail: format!("{} bytes, {} rows", a.len(), a.lines().count() - 1),
    }
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("table1 projected iteration counts", criterion1),
        ("table1 modulus baselines", criterion2),
        ("table2 projected iteration counts", criterion3),
        ("projected methods need no more steps than modulus", criterion4),
        ("oracle equivalence on random H+ problems", criterion5),
        ("fixed point and complementarity invariants", criterion6),
        ("entrywise contraction by T", criterion7),
        ("certificate soundness", criterion8),
        ("AOR reduction identities", criterion9),
        ("table determinism", criterion10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        failed += usize::from(!o.pass);
        println!("criterion {:>2} {}: {name}: {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
