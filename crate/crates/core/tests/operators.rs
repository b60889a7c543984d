mod common;

use fockmult_core::sample::random_polynomial;
use fockmult_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn kernel_matches_gram_oracle_on_6x6() {
    let mut rng = ChaCha8Rng::seed_from_u64(60);
    for _ in 0..20 {
        let a = common::random_dense(6, 6, &mut rng);
        let est = norm::operator_norm(&ScalarMatrix::from_rows(a.clone()).unwrap(), &NormConfig::default()).unwrap();
        assert!(est.converged);
        assert!((est.value - common::gram_norm(&a)).abs() < 1e-8);
    }
}

#[test]
fn oracle_agrees_with_known_spectra() {
    let c = |x: f64| C64::new(x, 0.0);
    let diag = vec![vec![c(3.0), c(0.0)], vec![c(0.0), c(-5.0)]];
    assert!((common::gram_norm(&diag) - 5.0).abs() < 1e-13);
    // Bidiagonal ones matrix of size (k+2)×(k+1): top singular value 2cos(π/(2k+4)).
    let k = 10;
    let b: common::Dense = (0..k + 2)
        .map(|i| {
            (0..k + 1)
                .map(|j| if i == j || i == j + 1 { c(1.0) } else { c(0.0) })
                .collect()
        })
        .collect();
    let exact = 2.0 * (std::f64::consts::PI / (2.0 * k as f64 + 4.0)).cos();
    assert!((common::gram_norm(&b) - exact).abs() < 1e-12);
}

#[test]
fn truncated_norm_matches_oracle_on_every_family() {
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    let cfg = NormConfig::default().with_tol(1e-14);
    for (spec, level) in [
        (MonoidSpec::symmetric(3).unwrap(), 0),
        (MonoidSpec::cyclic(5).unwrap(), 0),
        (MonoidSpec::integers(), 4),
        (MonoidSpec::nonneg_integers(), 6),
        (MonoidSpec::nonneg_vectors(2).unwrap(), 2),
        (MonoidSpec::free(2).unwrap(), 2),
    ] {
        let phi = random_polynomial(&spec.window(level.min(1)).unwrap(), &mut rng);
        let domain = spec.window(level).unwrap();
        for m in [
            left_mult_matrix(&phi, &domain).unwrap(),
            right_mult_matrix(&phi, &domain).unwrap(),
        ] {
            let est = operator_norm(&m, &cfg).unwrap();
            let oracle = common::gram_norm(&m.to_dense());
            assert!(
                (est.value - oracle).abs() < 1e-8,
                "{}: {} vs {oracle}",
                spec.describe(),
                est.value
            );
        }
    }
}

#[test]
fn cyclic_norm_is_the_dft_sup() {
    let mut rng = ChaCha8Rng::seed_from_u64(62);
    for n in [2, 3, 5, 8] {
        let spec = MonoidSpec::cyclic(n).unwrap();
        let w = spec.window(0).unwrap();
        let phi = random_polynomial(&w, &mut rng);
        let coeffs: Vec<C64> = (0..n).map(|i| phi.get(&Element::Int(i as i64))).collect();
        let est = operator_norm(&left_mult_matrix(&phi, &w).unwrap(), &NormConfig::default()).unwrap();
        assert!((est.value - common::dft_sup(&coeffs)).abs() < 1e-8);
    }
}

#[test]
fn applying_a_multiplication_matrix_convolves() {
    let mut rng = ChaCha8Rng::seed_from_u64(63);
    let f2 = MonoidSpec::free(2).unwrap();
    let domain = f2.window(3).unwrap();
    for _ in 0..10 {
        let phi = random_polynomial(&f2.window(2).unwrap(), &mut rng);
        let f = random_polynomial(&domain, &mut rng);
        let via_matrix = left_mult_matrix(&phi, &domain).unwrap().apply(&f).unwrap();
        assert!(via_matrix.max_abs_diff(&convolve(&phi, &f).unwrap()) < 1e-14);
        let via_matrix = right_mult_matrix(&phi, &domain).unwrap().apply(&f).unwrap();
        assert!(via_matrix.max_abs_diff(&convolve(&f, &phi).unwrap()) < 1e-14);
    }
}

#[test]
fn adjoint_satisfies_the_inner_product_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(64);
    let z5 = MonoidSpec::cyclic(5).unwrap();
    let w = z5.window(0).unwrap();
    let a = left_mult_matrix(&random_polynomial(&w, &mut rng), &w).unwrap();
    for _ in 0..10 {
        let f = random_polynomial(&w, &mut rng);
        let g = random_polynomial(&w, &mut rng);
        let lhs = inner(&a.apply(&f).unwrap(), &g).unwrap();
        let rhs = inner(&f, &adjoint(&a).apply(&g).unwrap()).unwrap();
        assert!((lhs - rhs).norm() < 1e-14);
    }
}

#[test]
fn composition_requires_matching_windows() {
    let zp = MonoidSpec::nonneg_integers();
    let a = OperatorMatrix::identity(&zp.window(3).unwrap());
    let b = OperatorMatrix::identity(&zp.window(2).unwrap());
    assert!(matches!(multiply(&a, &b), Err(Error::IncompatibleWindow(_))));
    // Same size, different windows.
    let z = MonoidSpec::integers();
    let c = OperatorMatrix::identity(&z.window(1).unwrap());
    let d = OperatorMatrix::identity(&MonoidSpec::cyclic(3).unwrap().window(0).unwrap());
    assert!(multiply(&c, &d).is_err());
}

#[test]
fn shift_powers_compose() {
    let zp = MonoidSpec::nonneg_integers();
    let w = zp.window(4).unwrap();
    let v1 = lrr_matrix(&Element::Int(1), &w).unwrap();
    let v1b = lrr_matrix(&Element::Int(1), v1.codomain()).unwrap();
    let v2 = lrr_matrix(&Element::Int(2), &w).unwrap();
    assert_eq!(multiply(&v1b, &v1).unwrap().max_abs_diff(&v2).unwrap(), 0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(65);
    let s = rng.gen_range(0..5i64);
    let vs = lrr_matrix(&Element::Int(s), &w).unwrap();
    assert_eq!(operator_norm(&vs, &NormConfig::default()).unwrap().value, 1.0);
}
