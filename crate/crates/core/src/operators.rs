//! Concrete matrices for left/right multiplication, the regular isometries,
//! the flip and the `#` operation, all on explicit windows.
//!
//! Multiplication operators are built with exact columns: the codomain is the
//! smallest canonical window that holds every product, so column `j` is the
//! full image of `δ_{domain[j]}` and nothing is projected away. A matrix on
//! window `k` is therefore a restriction of the one on window `k + 1`.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fock::{fmt_sig17, FockVector, Polynomial, C64};
use crate::norm::{self, LinearMap, NormConfig, NormEstimate};
use crate::semigroup::{Element, MonoidKind, MonoidSpec, Window};

const ZERO: C64 = C64::new(0.0, 0.0);

/// Column-compressed complex matrix. Row indices in each column are strictly
/// increasing and stored values are nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    cols: Vec<Vec<(usize, C64)>>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            ncols,
            cols: vec![Vec::new(); ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            nrows: n,
            ncols: n,
            cols: (0..n).map(|i| vec![(i, C64::new(1.0, 0.0))]).collect(),
        }
    }

    /// Builds from unsorted column entries; duplicates are summed and exact
    /// zeros dropped.
    pub fn from_columns(nrows: usize, cols: Vec<Vec<(usize, C64)>>) -> Result<Self> {
        let ncols = cols.len();
        let cols = cols
            .into_iter()
            .map(|mut col| {
                if col.iter().any(|&(r, _)| r >= nrows) {
                    return Err(Error::Shape(format!("row index out of range for {nrows} rows")));
                }
                col.sort_by_key(|&(r, _)| r);
                let mut merged: Vec<(usize, C64)> = Vec::with_capacity(col.len());
                for (r, v) in col {
                    match merged.last_mut() {
                        Some((last, acc)) if *last == r => *acc += v,
                        _ => merged.push((r, v)),
                    }
                }
                merged.retain(|&(_, v)| v != ZERO);
                Ok(merged)
            })
            .collect::<Result<_>>()?;
        Ok(SparseMatrix { nrows, ncols, cols })
    }

    pub fn from_dense(rows: &[Vec<C64>]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let cols = (0..ncols)
            .map(|j| (0..nrows).map(|i| (i, rows[i][j])).collect())
            .collect();
        Self::from_columns(nrows, cols)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn column(&self, j: usize) -> &[(usize, C64)] {
        &self.cols[j]
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.cols[j]
            .binary_search_by_key(&i, |&(r, _)| r)
            .map(|k| self.cols[j][k].1)
            .unwrap_or(ZERO)
    }

    pub fn to_dense(&self) -> Vec<Vec<C64>> {
        let mut out = vec![vec![ZERO; self.ncols]; self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                out[i][j] = v;
            }
        }
        out
    }

    pub fn adjoint(&self) -> SparseMatrix {
        let mut cols: Vec<Vec<(usize, C64)>> = vec![Vec::new(); self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                cols[i].push((j, v.conj()));
            }
        }
        // Columns were visited in order, so each new column is already sorted.
        SparseMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            cols,
        }
    }

    pub fn conj(&self) -> SparseMatrix {
        SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            cols: self
                .cols
                .iter()
                .map(|c| c.iter().map(|&(i, v)| (i, v.conj())).collect())
                .collect(),
        }
    }

    pub fn scale(&self, c: C64) -> SparseMatrix {
        if c == ZERO {
            return Self::zeros(self.nrows, self.ncols);
        }
        SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            cols: self
                .cols
                .iter()
                .map(|col| {
                    col.iter()
                        .map(|&(i, v)| (i, v * c))
                        .filter(|&(_, v)| v != ZERO)
                        .collect()
                })
                .collect(),
        }
    }

    pub fn add(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.nrows != other.nrows || self.ncols != other.ncols {
            return Err(Error::Shape(format!(
                "{}x{} + {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| a.iter().chain(b).copied().collect())
            .collect();
        Self::from_columns(self.nrows, cols)
    }

    /// `self · other`.
    pub fn multiply(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.ncols != other.nrows {
            return Err(Error::Shape(format!(
                "{}x{} · {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        let mut acc = vec![ZERO; self.nrows];
        let mut touched = vec![false; self.nrows];
        let mut rows: Vec<usize> = Vec::new();
        let mut cols = Vec::with_capacity(other.ncols);
        for bcol in &other.cols {
            for &(k, b) in bcol {
                for &(i, a) in &self.cols[k] {
                    if !touched[i] {
                        touched[i] = true;
                        rows.push(i);
                    }
                    acc[i] += a * b;
                }
            }
            rows.sort_unstable();
            let col: Vec<(usize, C64)> = rows.iter().map(|&i| (i, acc[i])).filter(|&(_, v)| v != ZERO).collect();
            for &i in &rows {
                acc[i] = ZERO;
                touched[i] = false;
            }
            rows.clear();
            cols.push(col);
        }
        Ok(SparseMatrix {
            nrows: self.nrows,
            ncols: other.ncols,
            cols,
        })
    }

    /// Maps row `i` to `row_map[i]` in a matrix with `nrows` rows.
    pub(crate) fn remap_rows(&self, nrows: usize, row_map: &[usize]) -> SparseMatrix {
        let cols = self
            .cols
            .iter()
            .map(|col| {
                let mut c: Vec<(usize, C64)> = col.iter().map(|&(i, v)| (row_map[i], v)).collect();
                c.sort_by_key(|&(r, _)| r);
                c
            })
            .collect();
        SparseMatrix {
            nrows,
            ncols: self.ncols,
            cols,
        }
    }

    /// Block matrix with `block_rows × block_cols` blocks of shape
    /// `inner_rows × inner_cols`; `blocks` is row-major, `None` meaning zero.
    pub fn from_blocks(
        block_rows: usize,
        block_cols: usize,
        inner_rows: usize,
        inner_cols: usize,
        blocks: &[Option<&SparseMatrix>],
    ) -> Result<SparseMatrix> {
        if blocks.len() != block_rows * block_cols {
            return Err(Error::Shape(format!(
                "{} blocks for a {block_rows}x{block_cols} layout",
                blocks.len()
            )));
        }
        let mut cols: Vec<Vec<(usize, C64)>> = vec![Vec::new(); block_cols * inner_cols];
        for bj in 0..block_cols {
            for bi in 0..block_rows {
                let Some(b) = blocks[bi * block_cols + bj] else {
                    continue;
                };
                if b.nrows != inner_rows || b.ncols != inner_cols {
                    return Err(Error::Shape(format!(
                        "block ({bi},{bj}) is {}x{}, expected {inner_rows}x{inner_cols}",
                        b.nrows, b.ncols
                    )));
                }
                for (j, col) in b.cols.iter().enumerate() {
                    cols[bj * inner_cols + j].extend(col.iter().map(|&(i, v)| (bi * inner_rows + i, v)));
                }
            }
        }
        Ok(SparseMatrix {
            nrows: block_rows * inner_rows,
            ncols: block_cols * inner_cols,
            cols,
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.cols
            .iter()
            .flat_map(|c| c.iter().map(|(_, v)| v.norm()))
            .fold(0.0, f64::max)
    }
}

impl LinearMap for SparseMatrix {
    fn nrows(&self) -> usize {
        self.nrows
    }

    fn ncols(&self) -> usize {
        self.ncols
    }

    fn apply(&self, x: &[C64], y: &mut [C64]) {
        y.iter_mut().for_each(|c| *c = ZERO);
        for (col, &xj) in self.cols.iter().zip(x) {
            for &(i, v) in col {
                y[i] += v * xj;
            }
        }
    }

    fn apply_adjoint(&self, y: &[C64], x: &mut [C64]) {
        for (col, xj) in self.cols.iter().zip(x.iter_mut()) {
            *xj = col.iter().map(|&(i, v)| v.conj() * y[i]).sum();
        }
    }

    fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }
}

/// A matrix between two windows of the same monoid. Column `j` is the image
/// of `δ_{domain[j]}`, row `i` the coefficient of `δ_{codomain[i]}`.
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    domain: Arc<Window>,
    codomain: Arc<Window>,
    matrix: SparseMatrix,
}

impl OperatorMatrix {
    pub fn new(domain: &Arc<Window>, codomain: &Arc<Window>, matrix: SparseMatrix) -> Result<Self> {
        if domain.spec() != codomain.spec() {
            return Err(Error::IncompatibleWindow(
                "domain and codomain belong to different monoids".into(),
            ));
        }
        if matrix.ncols != domain.len() || matrix.nrows != codomain.len() {
            return Err(Error::Shape(format!(
                "{}x{} matrix for windows of sizes {} -> {}",
                matrix.nrows,
                matrix.ncols,
                domain.len(),
                codomain.len()
            )));
        }
        Ok(OperatorMatrix {
            domain: Arc::clone(domain),
            codomain: Arc::clone(codomain),
            matrix,
        })
    }

    pub fn identity(window: &Arc<Window>) -> Self {
        OperatorMatrix {
            domain: Arc::clone(window),
            codomain: Arc::clone(window),
            matrix: SparseMatrix::identity(window.len()),
        }
    }

    pub fn zero(domain: &Arc<Window>, codomain: &Arc<Window>) -> Self {
        OperatorMatrix {
            domain: Arc::clone(domain),
            codomain: Arc::clone(codomain),
            matrix: SparseMatrix::zeros(codomain.len(), domain.len()),
        }
    }

    pub fn domain(&self) -> &Arc<Window> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Window> {
        &self.codomain
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    pub fn spec(&self) -> &MonoidSpec {
        self.domain.spec()
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.matrix.get(i, j)
    }

    /// Entry at row `u`, column `r`, addressed by element.
    pub fn get(&self, u: &Element, r: &Element) -> C64 {
        match (self.codomain.index_of(u), self.domain.index_of(r)) {
            (Some(i), Some(j)) => self.matrix.get(i, j),
            _ => ZERO,
        }
    }

    pub fn is_square(&self) -> bool {
        *self.domain == *self.codomain
    }

    /// The same operator with a larger codomain window.
    pub fn embed_codomain(&self, target: &Arc<Window>) -> Result<Self> {
        if **target == *self.codomain {
            return Ok(OperatorMatrix {
                domain: Arc::clone(&self.domain),
                codomain: Arc::clone(target),
                matrix: self.matrix.clone(),
            });
        }
        if target.spec() != self.spec() {
            return Err(Error::IncompatibleWindow("different monoids".into()));
        }
        let row_map = self
            .codomain
            .elements()
            .iter()
            .map(|e| target.index_of(e).ok_or_else(|| Error::OutOfWindow(e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Ok(OperatorMatrix {
            domain: Arc::clone(&self.domain),
            codomain: Arc::clone(target),
            matrix: self.matrix.remap_rows(target.len(), &row_map),
        })
    }

    fn common_codomain(&self, other: &OperatorMatrix) -> Result<Arc<Window>> {
        if *self.domain != *other.domain {
            return Err(Error::IncompatibleWindow(format!(
                "domains {} and {}",
                self.domain.label(),
                other.domain.label()
            )));
        }
        Ok(if self.codomain.level() >= other.codomain.level() {
            Arc::clone(&self.codomain)
        } else {
            Arc::clone(&other.codomain)
        })
    }

    /// Sum of two operators on the same domain; codomains are nested windows.
    pub fn add(&self, other: &OperatorMatrix) -> Result<Self> {
        let cod = self.common_codomain(other)?;
        let a = self.embed_codomain(&cod)?;
        let b = other.embed_codomain(&cod)?;
        Ok(OperatorMatrix {
            domain: a.domain,
            codomain: cod,
            matrix: a.matrix.add(&b.matrix)?,
        })
    }

    pub fn scale(&self, c: C64) -> Self {
        OperatorMatrix {
            domain: Arc::clone(&self.domain),
            codomain: Arc::clone(&self.codomain),
            matrix: self.matrix.scale(c),
        }
    }

    /// Largest entrywise difference, comparing the two operators as maps
    /// between elements (codomains may be different nested windows).
    pub fn max_abs_diff(&self, other: &OperatorMatrix) -> Result<f64> {
        let diff = self.add(&other.scale(C64::new(-1.0, 0.0)))?;
        Ok(diff.matrix.max_abs())
    }

    pub fn apply(&self, f: &FockVector) -> Result<FockVector> {
        if **f.window() != *self.domain {
            return Err(Error::IncompatibleWindow(format!(
                "vector on {} applied to operator on {}",
                f.window().label(),
                self.domain.label()
            )));
        }
        let mut out = vec![ZERO; self.codomain.len()];
        self.matrix.apply(&f.to_dense(), &mut out);
        FockVector::from_dense(&self.codomain, &out)
    }

    pub fn to_dense(&self) -> Vec<Vec<C64>> {
        self.matrix.to_dense()
    }

    /// Dense CSV dump: a `# domain=… codomain=…` header, then one line per
    /// codomain element with entries written as `re+imj`.
    pub fn to_csv(&self) -> String {
        let mut out = format!("# domain={} codomain={}\n", self.domain.label(), self.codomain.label());
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|c| fmt_complex(*c)).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }
}

pub fn fmt_complex(c: C64) -> String {
    let sign = if c.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{sign}{}j", fmt_sig17(c.re), fmt_sig17(c.im.abs()))
}

impl LinearMap for OperatorMatrix {
    fn nrows(&self) -> usize {
        self.matrix.nrows
    }

    fn ncols(&self) -> usize {
        self.matrix.ncols
    }

    fn apply(&self, x: &[C64], y: &mut [C64]) {
        self.matrix.apply(x, y)
    }

    fn apply_adjoint(&self, y: &[C64], x: &mut [C64]) {
        self.matrix.apply_adjoint(y, x)
    }

    fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

fn mult_matrix(phi: &Polynomial, domain: &Arc<Window>, side: Side) -> Result<OperatorMatrix> {
    let spec = domain.spec();
    if phi.spec() != spec {
        return Err(Error::IncompatibleWindow(
            "symbol and domain belong to different monoids".into(),
        ));
    }
    let terms: Vec<(&Element, C64)> = phi.terms().collect();
    let products: Vec<Vec<(Element, C64)>> = domain
        .elements()
        .iter()
        .map(|r| {
            terms
                .iter()
                .map(|&(s, c)| {
                    let u = match side {
                        Side::Left => spec.compose_unchecked(s, r),
                        Side::Right => spec.compose_unchecked(r, s),
                    };
                    (u, c)
                })
                .collect()
        })
        .collect();
    let codomain = if terms.is_empty() {
        Arc::clone(domain)
    } else {
        spec.window_containing(products.iter().flatten().map(|(u, _)| u))?
    };
    let cols = products
        .into_iter()
        .map(|col| {
            col.into_iter()
                .map(|(u, c)| (codomain.index_of(&u).expect("codomain holds every product"), c))
                .collect()
        })
        .collect();
    OperatorMatrix::new(domain, &codomain, SparseMatrix::from_columns(codomain.len(), cols)?)
}

/// `L_φ : f ↦ φ∗f` restricted to `domain`, with exact columns.
pub fn left_mult_matrix(phi: &Polynomial, domain: &Arc<Window>) -> Result<OperatorMatrix> {
    mult_matrix(phi, domain, Side::Left)
}

/// `R_φ : f ↦ f∗φ` restricted to `domain`, with exact columns.
pub fn right_mult_matrix(phi: &Polynomial, domain: &Arc<Window>) -> Result<OperatorMatrix> {
    mult_matrix(phi, domain, Side::Right)
}

/// The isometry `V_s δ_r = δ_{sr}` on `domain`.
pub fn lrr_matrix(s: &Element, domain: &Arc<Window>) -> Result<OperatorMatrix> {
    let spec = domain.spec();
    spec.validate(s)?;
    let delta = FockVector::delta(s, &spec.window(spec.level(s))?)?;
    left_mult_matrix(&delta, domain)
}

/// The anti-linear `U` on a group window: permute by inversion, then
/// conjugate coefficients. Never materialized as a complex matrix.
#[derive(Clone, Debug)]
pub struct AntiLinearU {
    window: Arc<Window>,
    perm: Vec<usize>,
}

impl AntiLinearU {
    pub fn window(&self) -> &Arc<Window> {
        &self.window
    }

    /// `perm[index(g)] = index(g⁻¹)`.
    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn is_involution(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &j)| self.perm[j] == i)
    }

    pub fn apply(&self, f: &FockVector) -> Result<FockVector> {
        if **f.window() != *self.window {
            return Err(Error::IncompatibleWindow(
                "vector and U act on different windows".into(),
            ));
        }
        let mut out = vec![ZERO; self.window.len()];
        for (i, c) in f.indexed_terms() {
            out[self.perm[i]] = c.conj();
        }
        FockVector::from_dense(&self.window, &out)
    }
}

pub fn u_action(window: &Arc<Window>) -> Result<AntiLinearU> {
    let spec = window.spec();
    if !spec.is_group() {
        return Err(Error::Unsupported(format!(
            "U requires a group, got {}",
            spec.describe()
        )));
    }
    let perm = window
        .elements()
        .iter()
        .map(|g| {
            let inv = spec.invert(g)?;
            window
                .index_of(&inv)
                .ok_or_else(|| Error::OutOfWindow(format!("{inv} (window not inversion-closed)")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AntiLinearU {
        window: Arc::clone(window),
        perm,
    })
}

/// The flip `W e_α = e_α̃` on a free-monoid window.
pub fn flip_matrix(window: &Arc<Window>) -> Result<OperatorMatrix> {
    let spec = window.spec();
    if !matches!(spec.kind(), MonoidKind::FreeMonoid { .. }) {
        return Err(Error::Unsupported("the flip is defined on free monoids".into()));
    }
    let cols = window
        .elements()
        .iter()
        .map(|alpha| {
            let rev = spec.reverse_word(alpha)?;
            let i = window.index_of(&rev).expect("reversal preserves length");
            Ok(vec![(i, C64::new(1.0, 0.0))])
        })
        .collect::<Result<Vec<_>>>()?;
    OperatorMatrix::new(window, window, SparseMatrix::from_columns(window.len(), cols)?)
}

/// `A# = U A U` written as the linear map `P·conj(A)·P`, where `P` is the
/// inversion permutation.
pub fn sharp_of(a: &OperatorMatrix) -> Result<OperatorMatrix> {
    if !a.is_square() {
        return Err(Error::Unsupported(
            "sharp_of needs an operator from a window to itself".into(),
        ));
    }
    let u = u_action(&a.domain)?;
    let p = &u.perm;
    let cols = (0..a.domain.len())
        .map(|j| a.matrix.cols[p[j]].iter().map(|&(i, v)| (p[i], v.conj())).collect())
        .collect();
    OperatorMatrix::new(
        &a.domain,
        &a.codomain,
        SparseMatrix::from_columns(a.codomain.len(), cols)?,
    )
}

/// Conjugate transpose; swaps domain and codomain.
pub fn adjoint(a: &OperatorMatrix) -> OperatorMatrix {
    OperatorMatrix {
        domain: Arc::clone(&a.codomain),
        codomain: Arc::clone(&a.domain),
        matrix: a.matrix.adjoint(),
    }
}

/// `a ∘ b`. Requires `b.codomain == a.domain` as windows, not just in size.
pub fn multiply(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<OperatorMatrix> {
    if *b.codomain != *a.domain {
        return Err(Error::IncompatibleWindow(format!(
            "cannot compose {} -> {} after {} -> {}",
            a.domain.label(),
            a.codomain.label(),
            b.domain.label(),
            b.codomain.label()
        )));
    }
    Ok(OperatorMatrix {
        domain: Arc::clone(&b.domain),
        codomain: Arc::clone(&a.codomain),
        matrix: a.matrix.multiply(&b.matrix)?,
    })
}

/// Largest singular value of the truncated operator.
pub fn operator_norm(a: &OperatorMatrix, cfg: &NormConfig) -> Result<NormEstimate> {
    norm::operator_norm(a, cfg)
}
