//! Independent oracles shared by the integration tests. Nothing here calls the
//! power-iteration kernel.

#![allow(dead_code)]

use fockmult_core::C64;
use rand::Rng;

pub type Dense = Vec<Vec<C64>>;

pub fn random_dense<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> Dense {
    (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect()
        })
        .collect()
}

pub fn adjoint(a: &Dense) -> Dense {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| (0..rows).map(|i| a[i][j].conj()).collect()).collect()
}

pub fn matmul(a: &Dense, b: &Dense) -> Dense {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum()).collect())
        .collect()
}

pub fn max_abs_diff(a: &Dense, b: &Dense) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(x, y)| x.iter().zip(y).map(|(p, q)| (p - q).norm()))
        .fold(0.0, f64::max)
}

/// Reduces a Hermitian matrix to real symmetric tridiagonal form
/// `(diagonal, off-diagonal magnitudes)` by Householder reflections.
fn tridiagonalize(mut a: Dense) -> (Vec<f64>, Vec<f64>) {
    let n = a.len();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<C64> = (k + 1..n).map(|i| a[i][k]).collect();
        let xnorm = x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() == 0.0 {
            C64::new(1.0, 0.0)
        } else {
            x[0] / x[0].norm()
        };
        let mut v = x.clone();
        v[0] += phase * xnorm;
        let vnorm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|c| *c /= vnorm);
        // H = I − 2 v v† acting on indices k+1..n; A ← H A H.
        let m = v.len();
        #[allow(clippy::needless_range_loop)]
        for col in 0..n {
            let s: C64 = (0..m).map(|i| v[i].conj() * a[k + 1 + i][col]).sum();
            for i in 0..m {
                a[k + 1 + i][col] -= 2.0 * v[i] * s;
            }
        }
        for row in a.iter_mut() {
            let s: C64 = (0..m).map(|i| row[k + 1 + i] * v[i]).sum();
            for i in 0..m {
                row[k + 1 + i] -= 2.0 * s * v[i].conj();
            }
        }
    }
    let d = (0..n).map(|i| a[i][i].re).collect();
    let e = (0..n.saturating_sub(1)).map(|i| a[i + 1][i].norm()).collect();
    (d, e)
}

/// Number of eigenvalues of the tridiagonal matrix below `x` (Sturm count).
fn count_below(d: &[f64], e: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..d.len() {
        let off = if i == 0 { 0.0 } else { e[i - 1] * e[i - 1] / q };
        q = d[i] - x - off;
        if q == 0.0 {
            q = -f64::EPSILON * (x.abs() + 1.0);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Largest eigenvalue of a Hermitian matrix by bisection on Sturm counts.
pub fn hermitian_max_eigenvalue(a: &Dense) -> f64 {
    let n = a.len();
    if n == 0 {
        return 0.0;
    }
    let (d, e) = tridiagonalize(a.clone());
    let radius = (0..n)
        .map(|i| {
            let left = if i > 0 { e[i - 1] } else { 0.0 };
            let right = if i + 1 < n { e[i] } else { 0.0 };
            d[i].abs() + left + right
        })
        .fold(0.0, f64::max);
    let (mut lo, mut hi) = (-radius - 1.0, radius + 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if count_below(&d, &e, mid) == n {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Largest singular value of `a` as the square root of the top eigenvalue of
/// its Gram matrix.
pub fn gram_norm(a: &Dense) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    hermitian_max_eigenvalue(&matmul(&adjoint(a), a)).max(0.0).sqrt()
}

/// `max_j |Σ_m c_m ω^{jm}|` over the `n`-th roots of unity: the norm of the
/// circulant with first column `c`.
pub fn dft_sup(c: &[C64]) -> f64 {
    let n = c.len();
    (0..n)
        .map(|j| {
            c.iter()
                .enumerate()
                .map(|(m, cm)| cm * C64::from_polar(1.0, 2.0 * std::f64::consts::PI * (j * m) as f64 / n as f64))
                .sum::<C64>()
                .norm()
        })
        .fold(0.0, f64::max)
}

/// Dense circulant with first column `c`.
pub fn circulant(c: &[C64]) -> Dense {
    let n = c.len();
    (0..n).map(|i| (0..n).map(|j| c[(i + n - j) % n]).collect()).collect()
}
