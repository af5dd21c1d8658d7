use lcpkit::problems::{gen_example1, gen_example2, gen_random_hplus};
use lcpkit::splittings::{analyze_splitting, make_splitting, SplittingKind};
use lcpkit::SparseMatrix;

fn kinds() -> Vec<SplittingKind<f64>> {
    let mut out = vec![SplittingKind::Npj, SplittingKind::Npgs];
    for alpha in [0.5, 1.0, 1.7] {
        out.push(SplittingKind::Npsor { alpha });
        for beta in [0.0, 0.5, alpha] {
            out.push(SplittingKind::Npaor { alpha, beta });
        }
    }
    out
}

fn check(a: &SparseMatrix<f64>) {
    for kind in kinds() {
        let s = make_splitting(a, kind).unwrap();
        let diff = s.m.sub(&s.n_part).unwrap();
        assert!(diff.max_abs_diff(a).unwrap() <= 1e-12 * a.max_abs().max(1.0), "{kind:?}");
        assert!(analyze_splitting(a, &s).unwrap().is_valid);
    }
}

#[test]
fn splittings_reproduce_benchmarks() {
    for m in [2, 3, 5] {
        check(&gen_example1::<f64>(m, 4.0).unwrap().a);
        check(&gen_example2::<f64>(m, 4.0).unwrap().a);
    }
}

#[test]
fn splittings_reproduce_random_instances() {
    for seed in 0..30 {
        check(&gen_random_hplus::<f64>(1 + (seed as usize % 12), seed).unwrap().a);
    }
}

#[test]
fn benchmark_splittings_are_h_compatible() {
    let a = gen_example1::<f64>(4, 4.0).unwrap().a;
    for kind in [SplittingKind::Npj, SplittingKind::Npgs, SplittingKind::Npsor { alpha: 0.9 }] {
        let s = make_splitting(&a, kind).unwrap();
        let r = analyze_splitting(&a, &s).unwrap();
        assert!(r.is_h_compatible && r.is_m_splitting, "{kind:?}");
    }
}
