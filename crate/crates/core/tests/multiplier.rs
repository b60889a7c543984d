mod common;

use std::f64::consts::PI;

use fockmult_core::sample::{random_coeff, random_polynomial};
use fockmult_core::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn poly(spec: &MonoidSpec, terms: &[(Element, f64)]) -> Polynomial {
    FockVector::from_terms_auto(
        spec,
        terms.iter().map(|(e, x)| (e.clone(), C64::new(*x, 0.0))).collect(),
    )
    .unwrap()
}

#[test]
fn abelian_pairs_have_equal_components() {
    let mut rng = ChaCha8Rng::seed_from_u64(70);
    for (spec, level) in [
        (MonoidSpec::cyclic(4).unwrap(), 0),
        (MonoidSpec::integers(), 3),
        (MonoidSpec::nonneg_integers(), 5),
        (MonoidSpec::nonneg_vectors(3).unwrap(), 2),
    ] {
        let phi = random_polynomial(&spec.window(level.min(2)).unwrap(), &mut rng);
        let domain = spec.window(level).unwrap();
        let l = left_mult_matrix(&phi, &domain).unwrap();
        let r = right_mult_matrix(&phi, &domain).unwrap();
        assert_eq!(l.to_dense(), r.to_dense(), "{}", spec.describe());
    }
}

#[test]
fn sweep_approaches_the_closed_form() {
    let zp = MonoidSpec::nonneg_integers();
    let phi = poly(&zp, &[(Element::Int(0), 1.0), (Element::Int(1), 1.0)]);
    let cfg = NormConfig::default().with_tol(1e-14);
    let rep = finfty_sweep(&phi, &[1, 4, 16, 64], 1e-6, &cfg).unwrap();
    for (&k, v) in rep.levels.iter().zip(&rep.norms) {
        assert!((v - 2.0 * (PI / (2.0 * k as f64 + 4.0)).cos()).abs() < 1e-9);
    }
    assert!(rep.extrapolate < hardy_norm_grid(&phi, 1 << 16).unwrap());
    assert!(rep.is_monotone(1e-10));
}

#[test]
fn free_sum_of_generators_is_constant() {
    let f2 = MonoidSpec::free(2).unwrap();
    let phi = poly(&f2, &[(Element::Word(vec![1]), 1.0), (Element::Word(vec![2]), 1.0)]);
    let rep = finfty_sweep(&phi, &[1, 2, 3, 4, 5], 1e-9, &NormConfig::default()).unwrap();
    assert!(rep.norms.iter().all(|v| (v - 2f64.sqrt()).abs() < 1e-12));
    assert!(rep.converged);
    // Flip-symmetric symbol: both components have the same norm.
    let p = make_pair(&phi, 4).unwrap();
    let cfg = NormConfig::default();
    let l = operator_norm(p.lmat(), &cfg).unwrap().value;
    let r = operator_norm(p.rmat(), &cfg).unwrap().value;
    assert!((l - r).abs() < 1e-12);
}

#[test]
fn laurent_symbols_match_the_fourier_sup() {
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    let z = MonoidSpec::integers();
    let cfg = NormConfig::default().with_tol(1e-12);
    for _ in 0..3 {
        let phi = random_polynomial(&z.window(2).unwrap(), &mut rng);
        let sup = hardy_norm_grid(&phi, 4096).unwrap();
        let rep = finfty_sweep(&phi, &[16, 64, 256], 1e-6, &cfg).unwrap();
        assert!(rep.is_monotone(1e-10));
        assert!(rep.extrapolate <= sup + 1e-9);
        assert!(sup - rep.extrapolate < 1e-2, "{} vs {sup}", rep.extrapolate);
    }
}

#[test]
fn pair_algebra_on_cyclic_groups() {
    let mut rng = ChaCha8Rng::seed_from_u64(72);
    let z3 = MonoidSpec::cyclic(3).unwrap();
    let w = z3.window(0).unwrap();
    let cfg = NormConfig::default();
    for _ in 0..100 {
        let p = make_pair(&random_polynomial(&w, &mut rng), 0).unwrap();
        let q = make_pair(&random_polynomial(&w, &mut rng), 0).unwrap();
        let pq = pair_product(&p, &q).unwrap();
        let n = |x: &MultiplierPair| pair_norm(x, &cfg).unwrap().value;
        let exact =
            |x: &MultiplierPair| common::dft_sup(&(0..3).map(|i| x.symbol().get(&Element::Int(i))).collect::<Vec<_>>());
        assert!(exact(&pq) <= exact(&p) * exact(&q) * (1.0 + 1e-12));
        assert!((n(&pq) - exact(&pq)).abs() < 1e-8);
        // The composed components equal the independent circulant product.
        let prod = common::matmul(&p.lmat().to_dense(), &q.lmat().to_dense());
        assert!(common::max_abs_diff(&pq.lmat().to_dense(), &prod) < 1e-14);
        let s = random_coeff(&mut rng);
        let ps = pair_scale(&p, s);
        assert!((n(&ps) - s.norm() * n(&p)).abs() < 1e-10);
    }
}

#[test]
fn adjoint_is_an_involution_on_s3() {
    let mut rng = ChaCha8Rng::seed_from_u64(73);
    let s3 = MonoidSpec::symmetric(3).unwrap();
    let w = s3.window(0).unwrap();
    for _ in 0..20 {
        let p = make_pair(&random_polynomial(&w, &mut rng), 0).unwrap();
        let back = pair_adjoint(&pair_adjoint(&p).unwrap()).unwrap();
        assert!(back.symbol().max_abs_diff(p.symbol()) < 1e-15);
        // (pq)* = q* p*
        let q = make_pair(&random_polynomial(&w, &mut rng), 0).unwrap();
        let lhs = pair_adjoint(&pair_product(&p, &q).unwrap()).unwrap();
        let rhs = pair_product(&pair_adjoint(&q).unwrap(), &pair_adjoint(&p).unwrap()).unwrap();
        assert!(lhs.symbol().max_abs_diff(rhs.symbol()) < 1e-14);
    }
}

#[test]
fn circulant_of_random_z5_symbols() {
    let mut rng = ChaCha8Rng::seed_from_u64(74);
    let z5 = MonoidSpec::cyclic(5).unwrap();
    let w = z5.window(0).unwrap();
    for _ in 0..10 {
        let rep = circulant_of(&random_polynomial(&w, &mut rng)).unwrap();
        assert!(rep.is_circulant(0.0) && rep.round_trip);
        assert!(rep.verdict(1e-12).passed);
    }
}

#[test]
fn bidisc_sweep_stays_below_the_grid_sup() {
    let z2 = MonoidSpec::nonneg_vectors(2).unwrap();
    let phi = poly(
        &z2,
        &[
            (Element::Vector(vec![0, 0]), 1.0),
            (Element::Vector(vec![1, 0]), 1.0),
            (Element::Vector(vec![0, 1]), 1.0),
        ],
    );
    let rep = finfty_sweep(&phi, &[2, 4, 8], 1e-2, &NormConfig::default()).unwrap();
    assert!(rep.is_monotone(1e-10));
    assert!(rep.norms.iter().all(|&v| v <= 3.0 + 1e-12));
    let tri = MonoidSpec::nonneg_vectors(3).unwrap();
    let phi3 = poly(
        &tri,
        &[
            (Element::Vector(vec![0, 0, 0]), 1.0),
            (Element::Vector(vec![1, 1, 0]), -1.0),
        ],
    );
    assert!((hardy_norm_grid(&phi3, 16).unwrap() - 2.0).abs() < 1e-14);
}
