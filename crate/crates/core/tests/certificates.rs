use lcpkit::convergence::{certify, check_theorem_h, iteration_operator, iteration_operator_rho, RhoMode};
use lcpkit::matrix::certify_rho_lt_one;
use lcpkit::problems::{gen_example1, gen_random_hplus};
use lcpkit::splittings::{make_splitting, SplittingKind};
use lcpkit::SparseMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn kinds() -> [SplittingKind<f64>; 4] {
    [SplittingKind::Npj, SplittingKind::Npgs, SplittingKind::Npsor { alpha: 0.8 }, SplittingKind::Npsor { alpha: 1.4 }]
}

/// Diagonally dominant instance with a scaled diagonal, so both diagonal cases occur.
fn scaled_instance(n: usize, seed: u64) -> SparseMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = if seed.is_multiple_of(2) { 0.1 } else { 1.0 };
    let mut rows = vec![vec![0.0; n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        let mut sum = 0.0;
        for (j, v) in row.iter_mut().enumerate() {
            if i != j && rng.gen_bool(0.3) {
                *v = -scale * rng.gen_range(0.0..0.3);
                sum += f64::abs(*v);
            }
        }
        row[i] = sum + scale * rng.gen_range(0.1..4.0);
    }
    SparseMatrix::from_dense(&rows).unwrap()
}

#[test]
fn comparison_bound_dominates_exact() {
    for seed in 0..25u64 {
        let a = gen_random_hplus::<f64>(2 + seed as usize * 2, seed).unwrap().a;
        for kind in kinds() {
            let s = make_splitting(&a, kind).unwrap();
            let exact = iteration_operator_rho(&a, &s, RhoMode::ExactDense).unwrap().rho;
            let bound = iteration_operator_rho(&a, &s, RhoMode::ComparisonBound).unwrap().rho;
            assert!(bound >= exact - 1e-9, "seed {seed} {kind:?}: {bound} < {exact}");
        }
    }
}

#[test]
fn sufficient_conditions_imply_contraction() {
    let mut fired = 0;
    for seed in 0..40u64 {
        let a = scaled_instance(1 + seed as usize % 16, seed);
        for kind in kinds() {
            let s = make_splitting(&a, kind).unwrap();
            let exact = iteration_operator_rho(&a, &s, RhoMode::ExactDense).unwrap().rho;
            if check_theorem_h(&a, &s).unwrap().h_conditions_satisfied {
                fired += 1;
                assert!(exact < 1.0, "seed {seed} {kind:?}: rho {exact}");
            }
            let t = iteration_operator(&a, &s, RhoMode::ExactDense).unwrap();
            if certify_rho_lt_one(&t, &vec![1.0; a.dim()]).unwrap() {
                assert!(exact < 1.0 + 1e-8);
            }
        }
    }
    assert!(fired > 0);
}

#[test]
fn certificates_are_pure() {
    let a = gen_random_hplus::<f64>(12, 9).unwrap().a;
    let s = make_splitting(&a, SplittingKind::Npsor { alpha: 1.2 }).unwrap();
    assert_eq!(certify(&a, &s, 12).unwrap(), certify(&a, &s, 12).unwrap());
}

#[test]
fn benchmark_certificate_reports_spectral_radius() {
    let p = gen_example1::<f64>(10, 4.0).unwrap();
    let s = make_splitting(&p.a, SplittingKind::Npgs).unwrap();
    let c = certify(&p.a, &s, 0).unwrap();
    assert_eq!(c.rho_mode, Some(RhoMode::Operator));
    let exact = iteration_operator_rho(&p.a, &s, RhoMode::ExactDense).unwrap().rho;
    assert!((c.rho_t.unwrap() - exact).abs() < 1e-8);
    assert!(c.h_plus && !c.h_conditions_satisfied);
}
