//! Finitely supported vectors of `ℓ²(S)` over a window, convolution, and the
//! anti-linear involution `U` of a group.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_complex::Complex64;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::semigroup::{Element, MonoidSpec, Window};

pub type C64 = Complex64;

/// A finitely supported coefficient map over a window. Exact zeros are never
/// stored.
#[derive(Clone, Debug)]
pub struct FockVector {
    window: Arc<Window>,
    coeffs: BTreeMap<usize, C64>,
}

/// Symbols and test vectors are the same thing: finitely supported vectors.
pub type Polynomial = FockVector;

impl FockVector {
    pub fn zero(window: &Arc<Window>) -> Self {
        FockVector {
            window: Arc::clone(window),
            coeffs: BTreeMap::new(),
        }
    }

    /// Dirac vector `δ_s`.
    pub fn delta(s: &Element, window: &Arc<Window>) -> Result<Self> {
        let i = window.index_of(s).ok_or_else(|| Error::OutOfWindow(s.to_string()))?;
        let mut coeffs = BTreeMap::new();
        coeffs.insert(i, C64::new(1.0, 0.0));
        Ok(FockVector {
            window: Arc::clone(window),
            coeffs,
        })
    }

    /// The unit `δ_e` placed in the level-0 window.
    pub fn unit(spec: &MonoidSpec) -> Result<Self> {
        Self::delta(&spec.identity(), &spec.window(0)?)
    }

    /// Sums the given terms; every element must lie in `window`.
    pub fn from_terms(window: &Arc<Window>, terms: impl IntoIterator<Item = (Element, C64)>) -> Result<Self> {
        let mut v = Self::zero(window);
        for (e, c) in terms {
            let i = window.index_of(&e).ok_or_else(|| Error::OutOfWindow(e.to_string()))?;
            v.accumulate(i, c);
        }
        v.prune();
        Ok(v)
    }

    /// Like [`FockVector::from_terms`] but places the result in the smallest
    /// canonical window containing the support.
    pub fn from_terms_auto(spec: &MonoidSpec, terms: Vec<(Element, C64)>) -> Result<Self> {
        for (e, _) in &terms {
            spec.validate(e)?;
        }
        let window = spec.window_containing(terms.iter().map(|(e, _)| e))?;
        Self::from_terms(&window, terms)
    }

    pub fn from_dense(window: &Arc<Window>, values: &[C64]) -> Result<Self> {
        if values.len() != window.len() {
            return Err(Error::Shape(format!(
                "{} coefficients for a window of {} elements",
                values.len(),
                window.len()
            )));
        }
        let coeffs = values
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != C64::new(0.0, 0.0))
            .map(|(i, c)| (i, *c))
            .collect();
        Ok(FockVector {
            window: Arc::clone(window),
            coeffs,
        })
    }

    fn accumulate(&mut self, i: usize, c: C64) {
        *self.coeffs.entry(i).or_insert(C64::new(0.0, 0.0)) += c;
    }

    fn prune(&mut self) {
        self.coeffs.retain(|_, c| *c != C64::new(0.0, 0.0));
    }

    pub fn window(&self) -> &Arc<Window> {
        &self.window
    }

    pub fn spec(&self) -> &MonoidSpec {
        self.window.spec()
    }

    pub fn get(&self, e: &Element) -> C64 {
        self.window
            .index_of(e)
            .and_then(|i| self.coeffs.get(&i).copied())
            .unwrap_or(C64::new(0.0, 0.0))
    }

    /// Nonzero terms in window order.
    pub fn terms(&self) -> impl Iterator<Item = (&Element, C64)> + '_ {
        self.coeffs.iter().map(|(&i, &c)| (self.window.element(i), c))
    }

    /// Nonzero terms keyed by window index.
    pub fn indexed_terms(&self) -> impl Iterator<Item = (usize, C64)> + '_ {
        self.coeffs.iter().map(|(&i, &c)| (i, c))
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn to_dense(&self) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); self.window.len()];
        for (&i, &c) in &self.coeffs {
            out[i] = c;
        }
        out
    }

    /// Largest level among the support (0 for the zero vector).
    pub fn degree(&self) -> usize {
        self.terms().map(|(e, _)| self.spec().level(e)).max().unwrap_or(0)
    }

    /// Re-expresses the vector over another window of the same monoid.
    pub fn rebase(&self, window: &Arc<Window>) -> Result<Self> {
        if window.spec() != self.spec() {
            return Err(Error::IncompatibleWindow("different monoids".into()));
        }
        if Arc::ptr_eq(window, &self.window) || **window == *self.window {
            return Ok(FockVector {
                window: Arc::clone(window),
                coeffs: self.coeffs.clone(),
            });
        }
        Self::from_terms(window, self.terms().map(|(e, c)| (e.clone(), c)))
    }

    /// The same vector over the smallest canonical window holding its support.
    pub fn compact(&self) -> Result<Self> {
        let w = self.spec().window(self.degree())?;
        self.rebase(&w)
    }

    pub fn scale(&self, c: C64) -> Self {
        let mut out = FockVector {
            window: Arc::clone(&self.window),
            coeffs: self.coeffs.iter().map(|(&i, &x)| (i, x * c)).collect(),
        };
        out.prune();
        out
    }

    /// Sum over the larger of the two (nested) windows.
    pub fn add(&self, other: &FockVector) -> Result<Self> {
        if self.spec() != other.spec() {
            return Err(Error::IncompatibleWindow("different monoids".into()));
        }
        let window = if self.window.level() >= other.window.level() {
            &self.window
        } else {
            &other.window
        };
        let mut out = self.rebase(window)?;
        for (e, c) in other.terms() {
            let i = window.index_of(e).ok_or_else(|| Error::OutOfWindow(e.to_string()))?;
            out.accumulate(i, c);
        }
        out.prune();
        Ok(out)
    }

    pub fn sub(&self, other: &FockVector) -> Result<Self> {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    /// `max |self(e) − other(e)|` over the union of the supports, comparing by
    /// element so the two windows may differ.
    pub fn max_abs_diff(&self, other: &FockVector) -> f64 {
        let mut worst: f64 = 0.0;
        for (e, c) in self.terms() {
            worst = worst.max((c - other.get(e)).norm());
        }
        for (e, c) in other.terms() {
            if self.get(e) == C64::new(0.0, 0.0) {
                worst = worst.max(c.norm());
            }
        }
        worst
    }

    /// Polynomial JSON, coefficients in window order with 17 significant digits.
    pub fn to_json_string(&self) -> String {
        let spec = self.spec();
        let mut out = String::from("[");
        for (k, (e, c)) in self.terms().enumerate() {
            if k > 0 {
                out.push(',');
            }
            let _ = write!(
                out,
                "{{\"elem\":{},\"re\":{},\"im\":{}}}",
                spec.format_element(e),
                fmt_sig17(c.re),
                fmt_sig17(c.im)
            );
        }
        out.push(']');
        out
    }

    pub fn from_json(spec: &MonoidSpec, text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::parse(&e, "polynomial"))?;
        Self::from_value(spec, &value)
    }

    pub fn from_value(spec: &MonoidSpec, value: &Value) -> Result<Self> {
        let items = value.as_array().ok_or_else(|| Error::Parse {
            position: 0,
            message: "polynomial must be a JSON array".into(),
        })?;
        let mut terms = Vec::with_capacity(items.len());
        for (pos, item) in items.iter().enumerate() {
            let bad = |msg: &str| Error::Parse {
                position: pos,
                message: format!("term {pos}: {msg}"),
            };
            let elem = item.get("elem").ok_or_else(|| bad("missing \"elem\""))?;
            let e = spec.element_from_value(elem).map_err(|err| bad(&err.to_string()))?;
            let part = |key: &str| -> Result<f64> {
                match item.get(key) {
                    None => Ok(0.0),
                    Some(v) => v.as_f64().ok_or_else(|| bad(&format!("\"{key}\" must be a number"))),
                }
            };
            terms.push((e, C64::new(part("re")?, part("im")?)));
        }
        Self::from_terms_auto(spec, terms)
    }
}

/// `x` in scientific notation with 17 significant digits.
pub fn fmt_sig17(x: f64) -> String {
    format!("{x:.16e}")
}

fn same_window(f: &FockVector, g: &FockVector) -> Result<()> {
    if *f.window == *g.window {
        Ok(())
    } else {
        Err(Error::IncompatibleWindow(format!(
            "{} vs {}",
            f.window.label(),
            g.window.label()
        )))
    }
}

/// `⟨f, g⟩`, linear in `f` and conjugate-linear in `g`.
pub fn inner(f: &FockVector, g: &FockVector) -> Result<C64> {
    same_window(f, g)?;
    Ok(f.coeffs
        .iter()
        .filter_map(|(i, a)| g.coeffs.get(i).map(|b| a * b.conj()))
        .sum())
}

/// `(a∗b)(u) = Σ_{s·r=u} a(s) b(r)` written into `target`.
fn product_into(a: &FockVector, b: &FockVector, target: &Arc<Window>) -> Result<FockVector> {
    let spec = a.spec();
    if spec != b.spec() || spec != target.spec() {
        return Err(Error::IncompatibleWindow("operands belong to different monoids".into()));
    }
    let mut out = FockVector::zero(target);
    for (s, x) in a.terms() {
        for (r, y) in b.terms() {
            let u = spec.compose_unchecked(s, r);
            let i = target
                .index_of(&u)
                .ok_or_else(|| Error::TruncationOverflow(format!("{s}·{r} = {u}")))?;
            out.accumulate(i, x * y);
        }
    }
    out.prune();
    Ok(out)
}

/// `p∗f` in `target`. Products escaping `target` are an error.
pub fn convolve_left(p: &Polynomial, f: &FockVector, target: &Arc<Window>) -> Result<FockVector> {
    product_into(p, f, target)
}

/// `f∗p` in `target`.
pub fn convolve_right(f: &FockVector, p: &Polynomial, target: &Arc<Window>) -> Result<FockVector> {
    product_into(f, p, target)
}

/// `a∗b` in the smallest canonical window containing every product.
pub fn convolve(a: &FockVector, b: &FockVector) -> Result<FockVector> {
    let spec = a.spec();
    if spec != b.spec() {
        return Err(Error::IncompatibleWindow("operands belong to different monoids".into()));
    }
    let level = a
        .terms()
        .flat_map(|(s, _)| b.terms().map(move |(r, _)| spec.level(&spec.compose_unchecked(s, r))))
        .max()
        .unwrap_or(0);
    product_into(a, b, &spec.window(level)?)
}

/// `U(Σ c_g δ_g) = Σ conj(c_g) δ_{g⁻¹}`, on the same window.
pub fn apply_u(f: &FockVector) -> Result<FockVector> {
    let spec = f.spec();
    if !spec.is_group() {
        return Err(Error::Unsupported(format!(
            "U requires a group, got {}",
            spec.describe()
        )));
    }
    let mut out = FockVector::zero(&f.window);
    for (g, c) in f.terms() {
        let inv = spec.invert(g)?;
        let i = f
            .window
            .index_of(&inv)
            .ok_or_else(|| Error::OutOfWindow(format!("{inv} (window not inversion-closed)")))?;
        out.accumulate(i, c.conj());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn delta_examples() {
        let zp = MonoidSpec::nonneg_integers();
        let w = zp.window(3).unwrap();
        let d0 = FockVector::delta(&Element::Int(0), &w).unwrap();
        assert_eq!(d0.to_dense()[0], c(1.0, 0.0));
        assert_eq!(d0.norm(), 1.0);
        assert!(matches!(
            FockVector::delta(&Element::Int(7), &w),
            Err(Error::OutOfWindow(_))
        ));
        let f2 = MonoidSpec::free(2).unwrap();
        let vacuum = FockVector::delta(&f2.identity(), &f2.window(2).unwrap()).unwrap();
        assert_eq!(vacuum.get(&Element::Word(vec![])), c(1.0, 0.0));
    }

    #[test]
    fn inner_examples() {
        let w = MonoidSpec::nonneg_integers().window(3).unwrap();
        let d1 = FockVector::delta(&Element::Int(1), &w).unwrap();
        let d2 = FockVector::delta(&Element::Int(2), &w).unwrap();
        let d0 = FockVector::delta(&Element::Int(0), &w).unwrap();
        assert_eq!(inner(&d1, &d1).unwrap(), c(1.0, 0.0));
        assert_eq!(inner(&d1, &d2).unwrap(), c(0.0, 0.0));
        assert_eq!(inner(&d0.scale(c(2.0, 1.0)), &d0).unwrap(), c(2.0, 1.0));
        assert_eq!(inner(&d0, &d0.scale(c(2.0, 1.0))).unwrap(), c(2.0, -1.0));
        let other = MonoidSpec::nonneg_integers().window(4).unwrap();
        let d0b = FockVector::delta(&Element::Int(0), &other).unwrap();
        assert!(matches!(inner(&d0, &d0b), Err(Error::IncompatibleWindow(_))));
    }

    #[test]
    fn convolution_examples() {
        let zp = MonoidSpec::nonneg_integers();
        let w = zp.window(3).unwrap();
        let d = |k| FockVector::delta(&Element::Int(k), &w).unwrap();
        assert_eq!(convolve_left(&d(1), &d(2), &w).unwrap().max_abs_diff(&d(3)), 0.0);
        assert_eq!(convolve_right(&d(2), &d(1), &w).unwrap().max_abs_diff(&d(3)), 0.0);

        let small = zp.window(2).unwrap();
        let d2 = FockVector::delta(&Element::Int(2), &small).unwrap();
        assert!(matches!(
            convolve_left(&d2, &d2, &small),
            Err(Error::TruncationOverflow(_))
        ));

        let f2 = MonoidSpec::free(2).unwrap();
        let wf = f2.window(2).unwrap();
        let g = |w: &[u32]| FockVector::delta(&Element::Word(w.to_vec()), &wf).unwrap();
        assert_eq!(
            convolve_left(&g(&[1]), &g(&[2]), &wf)
                .unwrap()
                .max_abs_diff(&g(&[1, 2])),
            0.0
        );
        assert_eq!(
            convolve_right(&g(&[2]), &g(&[1]), &wf)
                .unwrap()
                .max_abs_diff(&g(&[2, 1])),
            0.0
        );

        let z3 = MonoidSpec::cyclic(3).unwrap();
        let w3 = z3.window(0).unwrap();
        let e = |k| FockVector::delta(&Element::Int(k), &w3).unwrap();
        assert_eq!(convolve_right(&e(2), &e(2), &w3).unwrap().max_abs_diff(&e(1)), 0.0);
    }

    #[test]
    fn auto_convolution_picks_minimal_window() {
        let z = MonoidSpec::integers();
        let p = FockVector::from_terms_auto(
            &z,
            vec![(Element::Int(-2), c(1.0, 0.0)), (Element::Int(1), c(1.0, 0.0))],
        )
        .unwrap();
        let q = p.scale(c(0.0, 1.0));
        let pq = convolve(&p, &q).unwrap();
        assert_eq!(pq.window().level(), 4);
        assert_eq!(pq.get(&Element::Int(-1)), c(0.0, 2.0));
    }

    #[test]
    fn u_examples() {
        let z3 = MonoidSpec::cyclic(3).unwrap();
        let w = z3.window(0).unwrap();
        let d1 = FockVector::delta(&Element::Int(1), &w).unwrap();
        let d2 = FockVector::delta(&Element::Int(2), &w).unwrap();
        assert_eq!(apply_u(&d1).unwrap().max_abs_diff(&d2), 0.0);

        let z = MonoidSpec::integers();
        let wz = z.window(2).unwrap();
        let f = FockVector::delta(&Element::Int(2), &wz).unwrap().scale(c(1.0, 1.0));
        let uf = apply_u(&f).unwrap();
        assert_eq!(uf.get(&Element::Int(-2)), c(1.0, -1.0));
        assert_eq!(uf.support_len(), 1);

        let zp = MonoidSpec::nonneg_integers();
        let g = FockVector::unit(&zp).unwrap();
        assert!(matches!(apply_u(&g), Err(Error::Unsupported(_))));
    }

    #[test]
    fn polynomial_json() {
        let f2 = MonoidSpec::free(2).unwrap();
        let p = FockVector::from_json(
            &f2,
            r#"[{"elem":{"word":[1]},"re":1},{"elem":{"word":[2]},"re":1,"im":-0.5},{"elem":{"word":[1]},"re":1}]"#,
        )
        .unwrap();
        assert_eq!(p.get(&Element::Word(vec![1])), c(2.0, 0.0));
        assert_eq!(p.window().level(), 1);
        let text = p.to_json_string();
        assert!(text.contains("2.0000000000000000e0"), "{text}");
        let back = FockVector::from_json(&f2, &text).unwrap();
        assert_eq!(back.max_abs_diff(&p), 0.0);
        assert!(FockVector::from_json(&f2, r#"[{"elem":{"word":[3]},"re":1}]"#).is_err());
        assert!(FockVector::from_json(&f2, r#"{"elem":1}"#).is_err());
    }

    #[test]
    fn exact_zeros_are_pruned() {
        let w = MonoidSpec::nonneg_integers().window(2).unwrap();
        let v = FockVector::from_terms(
            &w,
            vec![(Element::Int(1), c(1.0, 0.0)), (Element::Int(1), c(-1.0, 0.0))],
        )
        .unwrap();
        assert!(v.is_zero());
        // Tiny but nonzero coefficients survive.
        let t = FockVector::from_terms(&w, vec![(Element::Int(1), c(1e-300, 0.0))]).unwrap();
        assert_eq!(t.support_len(), 1);
    }
}
