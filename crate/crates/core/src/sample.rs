//! Seeded random symbols and scalar matrices for the sampled checks.

use std::sync::Arc;

use rand::Rng;

use crate::fock::{FockVector, C64};
use crate::norm::ScalarMatrix;
use crate::semigroup::Window;

/// Uniform on the square `[-1, 1] × [-1, 1]`.
pub fn random_coeff<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// A random coefficient on every element of `window`.
pub fn random_polynomial<R: Rng + ?Sized>(window: &Arc<Window>, rng: &mut R) -> FockVector {
    let values: Vec<C64> = (0..window.len()).map(|_| random_coeff(rng)).collect();
    FockVector::from_dense(window, &values).expect("length matches window")
}

/// Random coefficients on at most `terms` distinct elements of `window`.
pub fn random_sparse_polynomial<R: Rng + ?Sized>(window: &Arc<Window>, terms: usize, rng: &mut R) -> FockVector {
    let mut values = vec![C64::new(0.0, 0.0); window.len()];
    for _ in 0..terms {
        let i = rng.gen_range(0..window.len());
        values[i] = random_coeff(rng);
    }
    FockVector::from_dense(window, &values).expect("length matches window")
}

pub fn random_scalar_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ScalarMatrix {
    let mut m = ScalarMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, random_coeff(rng));
        }
    }
    m
}
