//! Spectral norm by power iteration on `A†A`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::C64;

/// Anything that can be applied, with its adjoint, to dense vectors.
pub trait LinearMap {
    fn nrows(&self) -> usize;
    fn ncols(&self) -> usize;
    /// `y ← A x`; `y` has length `nrows`.
    fn apply(&self, x: &[C64], y: &mut [C64]);
    /// `x ← A† y`; `x` has length `ncols`.
    fn apply_adjoint(&self, y: &[C64], x: &mut [C64]);
    fn is_zero(&self) -> bool;
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormConfig {
    pub tol: f64,
    pub max_iters: usize,
    pub seed: u64,
}

pub const DEFAULT_NORM_SEED: u64 = 0x5EED;

impl Default for NormConfig {
    fn default() -> Self {
        NormConfig {
            tol: 1e-12,
            max_iters: 100_000,
            seed: DEFAULT_NORM_SEED,
        }
    }
}

impl NormConfig {
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

impl NormEstimate {
    pub fn max(self, other: NormEstimate) -> NormEstimate {
        NormEstimate {
            value: self.value.max(other.value),
            iterations: self.iterations + other.iterations,
            converged: self.converged && other.converged,
        }
    }
}

fn norm2(v: &[C64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

struct Run {
    lambda: f64,
    iterations: usize,
    converged: bool,
}

fn iterate<A: LinearMap + ?Sized>(a: &A, mut x: Vec<C64>, cfg: &NormConfig) -> Run {
    let mut y = vec![C64::new(0.0, 0.0); a.nrows()];
    a.apply(&x, &mut y);
    let mut lambda = norm2(&y).powi(2);
    for it in 1..=cfg.max_iters {
        a.apply_adjoint(&y, &mut x);
        let nz = norm2(&x);
        if nz == 0.0 {
            // Start vector in the kernel.
            return Run {
                lambda,
                iterations: it,
                converged: false,
            };
        }
        let inv = 1.0 / nz;
        x.iter_mut().for_each(|c| *c *= inv);
        a.apply(&x, &mut y);
        let next = norm2(&y).powi(2);
        let done = (next - lambda).abs() <= cfg.tol * lambda.max(1.0);
        lambda = next.max(lambda);
        if done {
            return Run {
                lambda,
                iterations: it,
                converged: true,
            };
        }
    }
    Run {
        lambda,
        iterations: cfg.max_iters,
        converged: false,
    }
}

/// Largest singular value of `a`.
///
/// Starts from a seeded random unit vector and stops once consecutive
/// Rayleigh quotients of `A†A` differ by at most `tol·max(1, λ)`. A run that
/// exhausts `max_iters` (or starts in the kernel) is retried once from a
/// rotated start vector; if that also fails the best estimate is returned
/// with `converged = false`.
pub fn operator_norm<A: LinearMap + ?Sized>(a: &A, cfg: &NormConfig) -> Result<NormEstimate> {
    if !(cfg.tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {}",
            cfg.tol
        )));
    }
    if cfg.max_iters == 0 {
        return Err(Error::InvalidArgument("max_iters must be positive".into()));
    }
    let n = a.ncols();
    if n == 0 || a.nrows() == 0 || a.is_zero() {
        return Ok(NormEstimate {
            value: 0.0,
            iterations: 0,
            converged: true,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut start: Vec<C64> = (0..n)
        .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let s = norm2(&start);
    start.iter_mut().for_each(|c| *c /= s);

    let first = iterate(a, start.clone(), cfg);
    if first.converged && first.lambda > 0.0 {
        return Ok(finish(first.lambda, first.iterations, true));
    }

    start.rotate_right(1);
    for (j, c) in start.iter_mut().enumerate() {
        if j % 2 == 1 {
            *c = C64::new(-c.im, c.re);
        }
    }
    let second = iterate(a, start, cfg);
    let iterations = first.iterations + second.iterations;
    if second.converged && second.lambda > 0.0 {
        return Ok(finish(second.lambda.max(first.lambda), iterations, true));
    }
    Ok(finish(first.lambda.max(second.lambda), iterations, false))
}

fn finish(lambda: f64, iterations: usize, converged: bool) -> NormEstimate {
    NormEstimate {
        value: lambda.max(0.0).sqrt(),
        iterations,
        converged,
    }
}

/// Dense row-major complex matrix. Used for the scalar matrices acting on
/// matricial blocks and for small test fixtures.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ScalarMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ScalarMatrix {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<C64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(ScalarMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn scale(&self, c: C64) -> Self {
        ScalarMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }
}

impl LinearMap for ScalarMatrix {
    fn nrows(&self) -> usize {
        self.rows
    }

    fn ncols(&self) -> usize {
        self.cols
    }

    fn apply(&self, x: &[C64], y: &mut [C64]) {
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = self.data[i * self.cols..(i + 1) * self.cols]
                .iter()
                .zip(x)
                .map(|(a, b)| a * b)
                .sum();
        }
    }

    fn apply_adjoint(&self, y: &[C64], x: &mut [C64]) {
        x.iter_mut().for_each(|c| *c = C64::new(0.0, 0.0));
        for (i, yi) in y.iter().enumerate() {
            for (j, xj) in x.iter_mut().enumerate() {
                *xj += self.data[i * self.cols + j].conj() * yi;
            }
        }
    }

    fn is_zero(&self) -> bool {
        self.data.iter().all(|c| *c == C64::new(0.0, 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(rows: &[&[f64]]) -> ScalarMatrix {
        ScalarMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_has_norm_one() {
        let est = operator_norm(&ScalarMatrix::identity(5), &NormConfig::default()).unwrap();
        assert!((est.value - 1.0).abs() < 1e-15);
        assert!(est.converged);
    }

    #[test]
    fn scaled_partial_isometry() {
        let est = operator_norm(&real(&[&[0.0, 2.0], &[0.0, 0.0]]), &NormConfig::default()).unwrap();
        assert!((est.value - 2.0).abs() < 1e-14);
    }

    #[test]
    fn zero_short_circuits() {
        let est = operator_norm(&ScalarMatrix::zeros(3, 4), &NormConfig::default()).unwrap();
        assert_eq!(
            est,
            NormEstimate {
                value: 0.0,
                iterations: 0,
                converged: true
            }
        );
    }

    #[test]
    fn rejects_bad_tolerance() {
        let cfg = NormConfig::default().with_tol(0.0);
        assert!(matches!(
            operator_norm(&ScalarMatrix::identity(2), &cfg),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn reports_non_convergence() {
        // An unreachable tolerance and a tiny iteration budget.
        let m = real(&[&[1.0, 0.0], &[0.0, 0.9]]);
        let cfg = NormConfig {
            tol: 1e-300,
            max_iters: 3,
            seed: 1,
        };
        let est = operator_norm(&m, &cfg).unwrap();
        assert!(!est.converged);
        assert_eq!(est.iterations, 6);
        assert!(est.value <= 1.0 && est.value > 0.9);
    }

    #[test]
    fn rank_one() {
        let m = real(&[&[3.0, 3.0], &[0.0, 0.0]]);
        let est = operator_norm(&m, &NormConfig::default()).unwrap();
        assert!((est.value - 18f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let m = real(&[&[1.0, 2.0, 0.5], &[0.0, -1.0, 0.25], &[4.0, 0.0, 1.0]]);
        let cfg = NormConfig::default();
        assert_eq!(operator_norm(&m, &cfg).unwrap(), operator_norm(&m, &cfg).unwrap());
    }
}
