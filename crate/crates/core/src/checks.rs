//! Named sampled verifications, each producing a [`Verdict`].

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fock::{apply_u, convolve, inner, FockVector};
use crate::matricial::{ruan_axiom_check, RuanConfig};
use crate::multiplier::{intertwine_residual, make_pair, pair_adjoint, pair_norm, pair_product};
use crate::norm::NormConfig;
use crate::operators::{
    adjoint, flip_matrix, left_mult_matrix, lrr_matrix, multiply, right_mult_matrix, sharp_of, OperatorMatrix,
};
use crate::sample::{random_polynomial, random_sparse_polynomial};
use crate::semigroup::{MonoidKind, MonoidSpec};
use crate::verdict::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    /// `‖p*p‖ = ‖p‖²` on finite groups.
    Cstar,
    /// `L_φ = W† R_φ̃ W` on free monoids, `φ̃` the word-reversed symbol.
    Flip,
    /// `f∗L(g) = R(f)∗g`.
    Intertwine,
    /// Operator-space axioms on blocks of pairs.
    Ruan,
    /// `U² = 1`, `U* = U` and `U(fφ) = U(φ)U(f)` on groups.
    Ustar,
    /// `L_φ = R_φ` on abelian monoids.
    Abelian,
    /// `R_φ# = L_φ*` on finite groups.
    Sharp,
    /// `V_s† V_s = I`.
    Isometry,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::Cstar,
        Check::Flip,
        Check::Intertwine,
        Check::Ruan,
        Check::Ustar,
        Check::Abelian,
        Check::Sharp,
        Check::Isometry,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Cstar => "cstar",
            Check::Flip => "flip",
            Check::Intertwine => "intertwine",
            Check::Ruan => "ruan",
            Check::Ustar => "ustar",
            Check::Abelian => "abelian",
            Check::Sharp => "sharp",
            Check::Isometry => "isometry",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown check {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckConfig {
    /// Truncation level of the operators (ignored on finite groups).
    pub level: usize,
    /// Level of the window random symbols are drawn from, capped at `level`.
    /// The operator-space check always draws from level 1.
    pub symbol_level: usize,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    /// Block size for the operator-space check.
    pub n: usize,
    pub norm: NormConfig,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            level: 3,
            symbol_level: 2,
            trials: 50,
            seed: 0,
            tol: 1e-8,
            n: 2,
            norm: NormConfig::default(),
        }
    }
}

impl CheckConfig {
    fn symbol_window_level(&self) -> usize {
        self.symbol_level.min(self.level)
    }
}

pub fn run_check(check: Check, spec: &MonoidSpec, cfg: &CheckConfig) -> Result<Verdict> {
    match check {
        Check::Cstar => cstar_check(spec, cfg),
        Check::Flip => flip_check(spec, cfg),
        Check::Intertwine => intertwine_check(spec, cfg),
        Check::Ruan => {
            let mut rc = RuanConfig::new(cfg.n, cfg.level);
            rc.trials = cfg.trials;
            rc.seed = cfg.seed;
            rc.tol = cfg.tol;
            rc.norm = cfg.norm;
            ruan_axiom_check(spec, &rc)
        }
        Check::Ustar => ustar_check(spec, cfg),
        Check::Abelian => abelian_check(spec, cfg),
        Check::Sharp => sharp_check(spec, cfg),
        Check::Isometry => isometry_check(spec, cfg),
    }
}

fn require_finite_group(spec: &MonoidSpec, what: &str) -> Result<()> {
    if spec.is_group() && spec.is_finite() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "{what} needs a finite group, got {}",
            spec.describe()
        )))
    }
}

fn poly_value(f: &FockVector) -> Value {
    serde_json::from_str(&f.to_json_string()).unwrap_or(Value::Null)
}

/// `|‖p*p‖ − ‖p‖²| / max(1, ‖p‖²)` for random symbols on a finite group.
pub fn cstar_check(spec: &MonoidSpec, cfg: &CheckConfig) -> Result<Verdict> {
    require_finite_group(spec, "the C*-identity check")?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut verdict = Verdict::new("cstar", cfg.trials, cfg.seed, cfg.tol);
    let w = spec.window(0)?;
    for _ in 0..cfg.trials {
        let phi = random_polynomial(&w, &mut rng);
        let p = make_pair(&phi, 0)?;
        let pp = pair_product(&pair_adjoint(&p)?, &p)?;
        let np = pair_norm(&p, &cfg.norm)?.value;
        let npp = pair_norm(&pp, &cfg.norm)?.value;
        let res = (npp - np * np).abs() / (np * np).max(1.0);
        verdict.record(
            res,
            || json!({ "symbol": poly_value(&phi), "norm": np, "norm_star_product": npp }),
        );
    }
    Ok(verdict)
}

/// `φ̃(α) = φ(α̃)`: the symbol with every word reversed.
pub fn reversed_symbol(phi: &FockVector) -> Result<FockVector> {
    let spec = phi.spec();
    let terms = phi
        .terms()
        .map(|(e, c)| Ok((spec.reverse_word(e)?, c)))
        .collect::<Result<Vec<_>>>()?;
    FockVector::from_terms(phi.window(), terms)
}

/// `max |L_φ − W† R_φ̃ W|` for random symbols on a free monoid.
///
/// The flip turns right multiplication by `φ̃` into left multiplication by
/// `φ`; `W† R_φ W` itself equals `L_φ` only for flip-symmetric `φ`.
pub fn flip_check(spec: &MonoidSpec, cfg: &CheckConfig) -> Result<Verdict> {
    if !matches!(spec.kind(), MonoidKind::FreeMonoid { .. }) {
        return Err(Error::Unsupported(format!(
            "the flip check needs a free monoid, got {}",
            spec.describe()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut verdict = Verdict::new("flip", cfg.trials, cfg.seed, cfg.tol);
    let domain = spec.window(cfg.level)?;
    let w_dom = flip_matrix(&domain)?;
    let sw = spec.window(cfg.symbol_window_level())?;
    for _ in 0..cfg.trials {
        let phi = random_polynomial(&sw, &mut rng);
        let l = left_mult_matrix(&phi, &domain)?;
        let r = right_mult_matrix(&reversed_symbol(&phi)?, &domain)?;
        let w_cod = flip_matrix(r.codomain())?;
        let conj = multiply(&adjoint(&w_cod), &multiply(&r, &w_dom)?)?;
        let res = l.max_abs_diff(&conj)?;
        verdict.record(res, || json!({ "symbol": poly_value(&phi) }));
    }
    Ok(verdict)
}

/// Intertwining residual for a fresh random symbol and random `f`, `g` per
/// trial.
pub fn intertwine_check(spec: &MonoidSpec, cfg: &CheckConfig) -> Result<Verdict> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut verdict = Verdict::new("intertwine", cfg.trials, cfg.seed, cfg.tol);
    let sw = spec.window(cfg.symbol_window_level())?;
    for _ in 0..cfg.trials {
        let phi = random_sparse_polynomial(&sw, 4, &mut rng);
        let p = make_pair(&phi, cfg.level)?;
        let terms = p.domain().len().min(4);
        let f = random_sparse_polynomial(p.domain(), terms, &mut rng);
        let g = random_sparse_polynomial(p.domain(), terms, &mut rng);
        let res = intertwine_residual(&p, &f, &g)?;
        verdict.record(
            res,
            || json!({ "symbol": poly_value(&phi), "f": poly_value(&f), "g": poly_value(&g) }),
        );
    }
    Ok(verdict)
}

/// `U` laws on a group window: involution, self-adjointness
/// `⟨Uf, g⟩ = ⟨Ug, f⟩` and `U(f∗φ) = U(φ)∗U(f)`.
pub fn ustar_check(spec: &MonoidSpec, cfg: &CheckConfig) -> Result<Verdict> {
    if !spec.is_group() {
        return Err(Error::Unsupported(format!("U needs a group, got {}", spec.describe())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut verdict = Verdict::new("ustar", cfg.trials, cfg.seed, cfg.tol);
    let w = spec.window(cfg.level)?;
    for _ in 0..cfg.trials {
        let f = random_polynomial(&w, &mut rng);
        let phi = random_polynomial(&w, &mut rng);
        let uf = apply_u(&f)?;
        let involution = apply_u(&uf)?.max_abs_diff(&f);
        let uphi = apply_u(&phi)?;
        let self_adjoint = (inner(&uf, &phi)? - inner(&uphi, &f)?).norm();
        let anti = apply_u(&convolve(&f, &phi)?)?.max_abs_diff(&convolve(&uphi, &uf)?);
        let res = involution.max(self_adjoint).max(anti);
        verdict.record(res, || {
            json!({ "f": poly_value(&f), "phi": poly_value(&phi),
                    "involution": involution, "self_adjoint": self_adjoint, "anti_multiplicative": anti })
        });
    }
    Ok(verdict)
}

/// `max |L_φ − R_φ|` with both matrices built independently.
pub fn abelian_check(spec: &MonoidSpec, cfg: &CheckConfig) -> Result<Verdict> {
    if !spec.is_abelian() {
        return Err(Error::Unsupported(format!("{} is not abelian", spec.describe())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut verdict = Verdict::new("abelian", cfg.trials, cfg.seed, cfg.tol);
    let domain = spec.window(cfg.level)?;
    let sw = spec.window(cfg.symbol_window_level())?;
    for _ in 0..cfg.trials {
        let phi = random_polynomial(&sw, &mut rng);
        let l = left_mult_matrix(&phi, &domain)?;
        let r = right_mult_matrix(&phi, &domain)?;
        let res = l.max_abs_diff(&r)?;
        verdict.record(res, || json!({ "symbol": poly_value(&phi) }));
    }
    Ok(verdict)
}

/// `max |R_φ# − L_φ*|` for random symbols on a finite group.
pub fn sharp_check(spec: &MonoidSpec, cfg: &CheckConfig) -> Result<Verdict> {
    require_finite_group(spec, "the sharp/adjoint check")?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut verdict = Verdict::new("sharp", cfg.trials, cfg.seed, cfg.tol);
    let w = spec.window(0)?;
    for _ in 0..cfg.trials {
        let phi = random_polynomial(&w, &mut rng);
        let l = left_mult_matrix(&phi, &w)?;
        let r = right_mult_matrix(&phi, &w)?;
        let res = sharp_of(&r)?.max_abs_diff(&adjoint(&l))?;
        verdict.record(res, || json!({ "symbol": poly_value(&phi) }));
    }
    Ok(verdict)
}

/// `max |V_s† V_s − I|` for random `s` in the window.
pub fn isometry_check(spec: &MonoidSpec, cfg: &CheckConfig) -> Result<Verdict> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut verdict = Verdict::new("isometry", cfg.trials, cfg.seed, cfg.tol);
    let domain = spec.window(cfg.level)?;
    let sw = spec.window(cfg.symbol_window_level())?;
    for _ in 0..cfg.trials {
        let s = sw.element(rng.gen_range(0..sw.len())).clone();
        let v = lrr_matrix(&s, &domain)?;
        let vtv = multiply(&adjoint(&v), &v)?;
        let res = vtv.max_abs_diff(&OperatorMatrix::identity(&domain))?;
        verdict.record(res, || json!({ "s": spec.element_to_value(&s) }));
    }
    Ok(verdict)
}
