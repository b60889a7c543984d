//! Multiplier pairs `(L, R)` generated by a symbol, their algebra operations,
//! norm sweeps over increasing truncations, and the comparisons with
//! circulant matrices, torus-grid sup norms and free-monoid depth norms.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::fock::{apply_u, convolve, fmt_sig17, FockVector, Polynomial, C64};
use crate::norm::{NormConfig, NormEstimate};
use crate::operators::{left_mult_matrix, multiply, operator_norm, right_mult_matrix, sharp_of, OperatorMatrix};
use crate::sample::random_sparse_polynomial;
use crate::semigroup::{Element, MonoidKind, MonoidSpec, Window};
use crate::verdict::Verdict;

/// Relative tolerance used when a composed operator is compared with the
/// symbol-generated one.
const COMPOSE_TOL: f64 = 1e-10;

/// Left and right multiplication by `symbol`, restricted to `window(level)`
/// with exact columns.
#[derive(Clone, Debug)]
pub struct MultiplierPair {
    symbol: Polynomial,
    level: usize,
    lmat: OperatorMatrix,
    rmat: OperatorMatrix,
}

impl MultiplierPair {
    pub fn symbol(&self) -> &Polynomial {
        &self.symbol
    }

    pub fn spec(&self) -> &MonoidSpec {
        self.symbol.spec()
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn domain(&self) -> &Arc<Window> {
        self.lmat.domain()
    }

    pub fn lmat(&self) -> &OperatorMatrix {
        &self.lmat
    }

    pub fn rmat(&self) -> &OperatorMatrix {
        &self.rmat
    }

    /// Assembles a pair from arbitrary components without checking that they
    /// come from `symbol`. Only useful for exercising the intertwining check.
    pub fn from_parts_unchecked(symbol: Polynomial, lmat: OperatorMatrix, rmat: OperatorMatrix) -> Result<Self> {
        if **lmat.domain() != **rmat.domain() {
            return Err(Error::IncompatibleWindow("components act on different windows".into()));
        }
        Ok(MultiplierPair {
            level: lmat.domain().level(),
            symbol,
            lmat,
            rmat,
        })
    }

    /// `L(δ_e)`, read back from the matrix.
    pub fn recovered_symbol(&self) -> Result<Polynomial> {
        let e = FockVector::delta(&self.spec().identity(), self.domain())?;
        self.lmat.apply(&e)?.compact()
    }

    fn components_identical(&self) -> bool {
        *self.lmat.codomain() == *self.rmat.codomain() && self.lmat.matrix() == self.rmat.matrix()
    }
}

/// The pair `(L_φ, R_φ)` on `window(level)`. The support of `φ` may exceed the
/// window; columns are still exact.
pub fn make_pair(phi: &Polynomial, level: usize) -> Result<MultiplierPair> {
    let domain = phi.spec().window(level)?;
    make_pair_on(phi, &domain)
}

fn make_pair_on(phi: &Polynomial, domain: &Arc<Window>) -> Result<MultiplierPair> {
    let symbol = phi.compact()?;
    let lmat = left_mult_matrix(&symbol, domain)?;
    let rmat = if symbol.spec().is_abelian() {
        lmat.clone()
    } else {
        right_mult_matrix(&symbol, domain)?
    };
    Ok(MultiplierPair {
        level: domain.level(),
        symbol,
        lmat,
        rmat,
    })
}

pub fn identity_pair(spec: &MonoidSpec, level: usize) -> Result<MultiplierPair> {
    make_pair(&FockVector::unit(spec)?, level)
}

/// `max(‖L‖, ‖R‖)` on the pair's window.
pub fn pair_norm(p: &MultiplierPair, cfg: &NormConfig) -> Result<NormEstimate> {
    let l = operator_norm(&p.lmat, cfg)?;
    if p.components_identical() {
        return Ok(l);
    }
    Ok(l.max(operator_norm(&p.rmat, cfg)?))
}

fn same_spec(p: &MultiplierPair, q: &MultiplierPair) -> Result<()> {
    if p.spec() != q.spec() {
        return Err(Error::IncompatibleWindow(format!(
            "pairs over {} and {}",
            p.spec().describe(),
            q.spec().describe()
        )));
    }
    Ok(())
}

/// `(L_p + L_q, R_p + R_q)` on the deeper of the two windows.
pub fn pair_add(p: &MultiplierPair, q: &MultiplierPair) -> Result<MultiplierPair> {
    same_spec(p, q)?;
    make_pair(&p.symbol.add(&q.symbol)?, p.level.max(q.level))
}

pub fn pair_scale(p: &MultiplierPair, c: C64) -> MultiplierPair {
    MultiplierPair {
        symbol: p.symbol.scale(c),
        level: p.level,
        lmat: p.lmat.scale(c),
        rmat: p.rmat.scale(c),
    }
}

/// Relative entrywise disagreement between two operators on the same domain.
fn relative_gap(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<f64> {
    let scale = a.matrix().max_abs().max(b.matrix().max_abs()).max(1.0);
    Ok(a.max_abs_diff(b)? / scale)
}

/// `p·q = (L_p L_q, R_q R_p)` on the deeper of the two windows.
///
/// The second factor of each composition is rebuilt on the codomain of the
/// first, so both products are exact. The result is the pair generated by
/// `φ_p∗φ_q`; the composed matrices are checked against it.
pub fn pair_product(p: &MultiplierPair, q: &MultiplierPair) -> Result<MultiplierPair> {
    same_spec(p, q)?;
    let spec = p.spec();
    let domain = spec.window(p.level.max(q.level))?;
    let product = make_pair_on(&convolve(&p.symbol, &q.symbol)?, &domain)?;

    let lq = left_mult_matrix(&q.symbol, &domain)?;
    let lp = left_mult_matrix(&p.symbol, lq.codomain())?;
    let l = multiply(&lp, &lq)?;
    let rp = right_mult_matrix(&p.symbol, &domain)?;
    let rq = right_mult_matrix(&q.symbol, rp.codomain())?;
    let r = multiply(&rq, &rp)?;

    let gap = relative_gap(&l, &product.lmat)?.max(relative_gap(&r, &product.rmat)?);
    if !(gap <= COMPOSE_TOL) {
        return Err(Error::Invariant(format!(
            "composed pair differs from the symbol pair by {gap:e}"
        )));
    }
    Ok(product)
}

/// `(L, R)* = (R#, L#)`, the pair generated by `Uφ`.
///
/// On finite groups the windows are the whole group and the `#` components
/// are computed and checked against the symbol pair. On `ℤ` the result is the
/// pair of `Uφ` directly, since truncated matrices are not square there.
pub fn pair_adjoint(p: &MultiplierPair) -> Result<MultiplierPair> {
    let spec = p.spec();
    if !spec.is_group() {
        return Err(Error::Unsupported(format!(
            "the pair adjoint needs a group, got {}",
            spec.describe()
        )));
    }
    let star = make_pair_on(&apply_u(&p.symbol)?, p.domain())?;
    if spec.is_finite() {
        let l = sharp_of(&p.rmat)?;
        let r = sharp_of(&p.lmat)?;
        let gap = relative_gap(&l, &star.lmat)?.max(relative_gap(&r, &star.rmat)?);
        if !(gap <= COMPOSE_TOL) {
            return Err(Error::Invariant(format!(
                "(R#, L#) differs from the pair of Uφ by {gap:e}"
            )));
        }
    }
    Ok(star)
}

/// `max |f∗L(g) − R(f)∗g|` for `f`, `g` on the pair's domain. Columns are
/// exact, so both sides are computed without truncation.
pub fn intertwine_residual(p: &MultiplierPair, f: &FockVector, g: &FockVector) -> Result<f64> {
    let f = f.rebase(p.domain())?;
    let g = g.rebase(p.domain())?;
    let lhs = convolve(&f, &p.lmat.apply(&g)?)?;
    let rhs = convolve(&p.rmat.apply(&f)?, &g)?;
    Ok(lhs.max_abs_diff(&rhs))
}

/// Samples `trials` pairs of sparse random polynomials on the pair's domain
/// and reports the worst intertwining residual.
pub fn verify_intertwine(p: &MultiplierPair, trials: usize, seed: u64, tol: f64) -> Result<Verdict> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut verdict = Verdict::new("intertwine", trials, seed, tol);
    let domain = p.domain();
    let terms = domain.len().min(4);
    for _ in 0..trials {
        let f = random_sparse_polynomial(domain, terms, &mut rng);
        let g = random_sparse_polynomial(domain, terms, &mut rng);
        let res = intertwine_residual(p, &f, &g)?;
        verdict.record(res, || {
            json!({
                "f": serde_json::from_str::<serde_json::Value>(&f.to_json_string()).unwrap_or_default(),
                "g": serde_json::from_str::<serde_json::Value>(&g.to_json_string()).unwrap_or_default(),
            })
        });
    }
    Ok(verdict)
}

/// Pair norms of one symbol over increasing truncation levels.
///
/// The values are lower bounds for the norm of the full multiplier and are
/// nondecreasing in the level. A small final increment is evidence that the
/// symbol defines a bounded multiplier, not a proof.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    pub levels: Vec<usize>,
    pub norms: Vec<f64>,
    /// Whether the last increment is at most the sweep tolerance. A single
    /// level has no increment and never counts as converged.
    pub converged: bool,
    pub extrapolate: f64,
    /// Whether every power iteration met its stopping rule.
    #[serde(skip)]
    pub kernel_converged: bool,
}

impl NormReport {
    pub fn is_monotone(&self, slack: f64) -> bool {
        self.norms.windows(2).all(|w| w[1] >= w[0] - slack)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("level,norm\n");
        for (k, v) in self.levels.iter().zip(&self.norms) {
            let _ = writeln!(out, "{k},{}", fmt_sig17(*v));
        }
        out
    }
}

pub const DEFAULT_SWEEP_TOL: f64 = 1e-6;

pub fn finfty_sweep(phi: &Polynomial, levels: &[usize], tol: f64, cfg: &NormConfig) -> Result<NormReport> {
    if levels.is_empty() {
        return Err(Error::InvalidArgument("at least one level is required".into()));
    }
    if levels.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument(format!(
            "levels must be strictly increasing, got {levels:?}"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "sweep tolerance must be positive, got {tol}"
        )));
    }
    // Fail on capacity before any work is done.
    let spec = phi.spec();
    let deepest = *levels.last().expect("nonempty");
    let requested = spec.window_size(deepest);
    if requested > spec.capacity() as u128 {
        return Err(Error::Capacity {
            requested,
            cap: spec.capacity(),
        });
    }
    let mut norms = Vec::with_capacity(levels.len());
    let mut kernel_converged = true;
    for &k in levels {
        let est = pair_norm(&make_pair(phi, k)?, cfg)?;
        kernel_converged &= est.converged;
        norms.push(est.value);
    }
    let n = norms.len();
    let converged = n >= 2 && (norms[n - 1] - norms[n - 2]).abs() <= tol;
    Ok(NormReport {
        levels: levels.to_vec(),
        extrapolate: norms[n - 1],
        norms,
        converged,
        kernel_converged,
    })
}

/// The left-multiplication matrix of a symbol on a cyclic group, with a
/// check of constant wrap-around diagonals.
#[derive(Clone, Debug)]
pub struct CirculantReport {
    pub matrix: OperatorMatrix,
    /// First column of the matrix, i.e. the symbol read back.
    pub symbol: Vec<C64>,
    /// `max |A[i][j] − A[(i−j) mod n][0]|`.
    pub max_deviation: f64,
    /// Whether the extracted first column equals the symbol exactly.
    pub round_trip: bool,
}

impl CirculantReport {
    pub fn is_circulant(&self, tol: f64) -> bool {
        self.max_deviation <= tol
    }

    pub fn verdict(&self, tol: f64) -> Verdict {
        let mut v = Verdict::new("circulant", 1, 0, tol);
        let dev = if self.round_trip {
            self.max_deviation
        } else {
            f64::INFINITY
        };
        let symbol: Vec<[f64; 2]> = self.symbol.iter().map(|c| [c.re, c.im]).collect();
        v.record(dev, || json!({ "symbol": symbol, "round_trip": self.round_trip }));
        if v.witness.is_none() {
            v.witness = Some(json!({ "symbol": symbol, "round_trip": self.round_trip }));
        }
        v
    }
}

pub fn circulant_of(phi: &Polynomial) -> Result<CirculantReport> {
    let spec = phi.spec();
    let MonoidKind::Cyclic { n } = *spec.kind() else {
        return Err(Error::Unsupported(format!(
            "circulant form needs a cyclic group, got {}",
            spec.describe()
        )));
    };
    let window = spec.window(0)?;
    let matrix = left_mult_matrix(phi, &window)?;
    let symbol: Vec<C64> = (0..n).map(|i| matrix.entry(i, 0)).collect();
    let mut max_deviation: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let d = (matrix.entry(i, j) - symbol[(i + n - j) % n]).norm();
            max_deviation = max_deviation.max(d);
        }
    }
    let round_trip = (0..n).all(|i| symbol[i] == phi.get(&Element::Int(i as i64)));
    Ok(CirculantReport {
        matrix,
        symbol,
        max_deviation,
        round_trip,
    })
}

/// Default torus grid: `2¹⁶` points for one variable, `1024²` for two and
/// `256³` for three.
pub fn default_grid(d: usize) -> usize {
    match d {
        1 => 1 << 16,
        2 => 1024,
        _ => 256,
    }
}

fn exponents(spec: &MonoidSpec, e: &Element) -> Vec<i64> {
    match (spec.kind(), e) {
        (_, Element::Int(v)) => vec![*v],
        (_, Element::Vector(v)) => v.clone(),
        _ => unreachable!("torus evaluation only sees lattice elements"),
    }
}

/// `max |Σ φ(m) e^{i m·θ}|` over the uniform `grid^d` torus grid.
///
/// Accepts `ℤ₊`, `ℤ₊^d` (`d ≤ 3`) and, for Laurent symbols, `ℤ`.
pub fn hardy_norm_grid(phi: &Polynomial, grid: usize) -> Result<f64> {
    let spec = phi.spec();
    let d = match spec.kind() {
        MonoidKind::NonNegIntegers | MonoidKind::Integers => 1,
        MonoidKind::NonNegVectors { d } if *d <= 3 => *d,
        MonoidKind::NonNegVectors { d } => {
            return Err(Error::Unsupported(format!(
                "torus grids are capped at 3 variables, got {d}"
            )))
        }
        _ => {
            return Err(Error::Unsupported(format!(
                "torus evaluation needs ℤ, ℤ₊ or ℤ₊^d, got {}",
                spec.describe()
            )))
        }
    };
    let degree = phi.degree();
    if grid < 2 * (degree + 1) {
        return Err(Error::InvalidArgument(format!(
            "grid {grid} is too coarse for degree {degree}; need at least {}",
            2 * (degree + 1)
        )));
    }
    let roots: Vec<C64> = (0..grid)
        .map(|j| C64::from_polar(1.0, 2.0 * PI * j as f64 / grid as f64))
        .collect();
    let g = grid as i64;
    let terms: Vec<(Vec<usize>, C64)> = phi
        .terms()
        .map(|(e, c)| (exponents(spec, e).iter().map(|m| m.rem_euclid(g) as usize).collect(), c))
        .collect();
    if terms.is_empty() {
        return Ok(0.0);
    }

    let mut best: f64 = 0.0;
    let mut point = vec![0usize; d];
    loop {
        let value: C64 = terms
            .iter()
            .map(|(m, c)| {
                let mut z = *c;
                for (mi, ji) in m.iter().zip(&point) {
                    z *= roots[(mi * ji) % grid];
                }
                z
            })
            .sum();
        best = best.max(value.norm());
        // Odometer over the grid.
        let mut axis = 0;
        loop {
            if axis == d {
                return Ok(best);
            }
            point[axis] += 1;
            if point[axis] < grid {
                break;
            }
            point[axis] = 0;
            axis += 1;
        }
    }
}

/// Pair norm at word depth `depth` on a free monoid: a lower bound for the
/// norm of `φ` as an element of the noncommutative Hardy algebra, where the
/// word `g_{i1}⋯g_{ik}` plays the tensor `e_{i1}⊗⋯⊗e_{ik}`.
pub fn popescu_norm(phi: &Polynomial, depth: usize, cfg: &NormConfig) -> Result<NormEstimate> {
    if !matches!(phi.spec().kind(), MonoidKind::FreeMonoid { .. }) {
        return Err(Error::Unsupported(format!(
            "depth norms are defined on free monoids, got {}",
            phi.spec().describe()
        )));
    }
    pair_norm(&make_pair(phi, depth)?, cfg)
}
