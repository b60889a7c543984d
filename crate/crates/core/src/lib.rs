//! Multiplier pairs of semigroup Fock spaces, computed on exact finite
//! truncations.
//!
//! For a left-cancellative monoid `S`, a multiplier is a pair `(L, R)` of
//! operators on `ℓ²(S)` with `f·L(g) = R(f)·g`; every such pair is left and
//! right convolution by a single symbol `φ`. This crate builds those operators
//! as sparse matrices on canonical windows of `S` and estimates their norms,
//! for finite groups, `ℤ`, `ℤ₊`, `ℤ₊^d` and free monoids.

// `!(x <= tol)` is used on purpose so that NaN fails the comparison.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod checks;
pub mod error;
pub mod fock;
pub mod matricial;
pub mod multiplier;
pub mod norm;
pub mod operators;
pub mod sample;
pub mod semigroup;
pub mod verdict;

pub use checks::{reversed_symbol, run_check, Check, CheckConfig};
pub use error::{Error, Result};
pub use fock::{apply_u, convolve, convolve_left, convolve_right, inner, FockVector, Polynomial, C64};
pub use matricial::{
    bimodule_action, direct_sum, left_action, matricial_norm, matricial_product, right_action, ruan_axiom_check,
    MatricialBlock, RuanConfig,
};
pub use multiplier::{
    circulant_of, default_grid, finfty_sweep, hardy_norm_grid, identity_pair, intertwine_residual, make_pair, pair_add,
    pair_adjoint, pair_norm, pair_product, pair_scale, popescu_norm, verify_intertwine, CirculantReport,
    MultiplierPair, NormReport, DEFAULT_SWEEP_TOL,
};
pub use norm::{LinearMap, NormConfig, NormEstimate, ScalarMatrix, DEFAULT_NORM_SEED};
pub use operators::{
    adjoint, flip_matrix, left_mult_matrix, lrr_matrix, multiply, operator_norm, right_mult_matrix, sharp_of, u_action,
    AntiLinearU, OperatorMatrix, SparseMatrix,
};
pub use semigroup::{
    check_left_cancellative, Cancellativity, Element, MonoidKind, MonoidSpec, Window, DEFAULT_CAPACITY,
};
pub use verdict::Verdict;
