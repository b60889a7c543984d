//! The supported monoids, their elements, and canonical truncation windows.
//!
//! Every monoid here is left-cancellative and has an identity. A [`Window`] is
//! the finite, ordered set of elements of level at most `k`, where the level of
//! an element is its distance from the identity in the natural grading of the
//! family (absolute value, max-coordinate, word length; zero for finite groups).
//! Level is subadditive under composition, which is what makes the exact-column
//! operator truncations in [`crate::operators`] possible.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Default maximum number of elements a single window may hold.
pub const DEFAULT_CAPACITY: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Element {
    /// Cyclic, integer and non-negative integer payloads.
    Int(i64),
    /// Row index into a Cayley table.
    Idx(usize),
    /// Point of the non-negative lattice.
    Vector(Vec<i64>),
    /// Word over generators `1..=rank`; the empty word is the identity.
    Word(Vec<u32>),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Int(v) => write!(f, "{v}"),
            Element::Idx(i) => write!(f, "#{i}"),
            Element::Vector(v) => {
                write!(f, "(")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            Element::Word(w) if w.is_empty() => write!(f, "ε"),
            Element::Word(w) => {
                for g in w {
                    write!(f, "g{g}")?;
                }
                Ok(())
            }
        }
    }
}

/// A validated multiplication table. Rows index the left factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    table: Vec<Vec<usize>>,
    names: Vec<String>,
    identity: usize,
    inverses: Option<Vec<usize>>,
}

impl CayleyTable {
    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn product(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.table
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonoidKind {
    FiniteGroup(Arc<CayleyTable>),
    Cyclic { n: usize },
    Integers,
    NonNegIntegers,
    NonNegVectors { d: usize },
    FreeMonoid { rank: usize },
}

/// A concrete left-cancellative monoid together with the window capacity cap.
#[derive(Clone, Debug)]
pub struct MonoidSpec {
    kind: MonoidKind,
    capacity: usize,
}

impl PartialEq for MonoidSpec {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for MonoidSpec {}

impl MonoidSpec {
    fn new(kind: MonoidKind) -> Self {
        MonoidSpec {
            kind,
            capacity: DEFAULT_CAPACITY,
        }
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidMonoid("cyclic group order must be positive".into()));
        }
        Ok(Self::new(MonoidKind::Cyclic { n }))
    }

    pub fn integers() -> Self {
        Self::new(MonoidKind::Integers)
    }

    pub fn nonneg_integers() -> Self {
        Self::new(MonoidKind::NonNegIntegers)
    }

    pub fn nonneg_vectors(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidMonoid("lattice dimension must be positive".into()));
        }
        Ok(Self::new(MonoidKind::NonNegVectors { d }))
    }

    pub fn free(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidMonoid("free monoid rank must be at least 1".into()));
        }
        if rank > u32::MAX as usize {
            return Err(Error::InvalidMonoid("free monoid rank too large".into()));
        }
        Ok(Self::new(MonoidKind::FreeMonoid { rank }))
    }

    /// Finite group from a Cayley table. Checks the Latin-square property,
    /// the identity and associativity.
    pub fn group(table: Vec<Vec<usize>>, names: Vec<String>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidMonoid("empty Cayley table".into()));
        }
        let names = check_names(n, names)?;
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidMonoid(format!(
                    "row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
            if !is_permutation(row.iter().copied(), n) {
                return Err(Error::InvalidMonoid(format!("row {i} is not a permutation")));
            }
        }
        for j in 0..n {
            if !is_permutation(table.iter().map(|row| row[j]), n) {
                return Err(Error::InvalidMonoid(format!("column {j} is not a permutation")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::InvalidMonoid("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidMonoid(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        let inverses = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| table[a][b] == identity)
                    .expect("latin square row contains identity")
            })
            .collect();
        Ok(Self::new(MonoidKind::FiniteGroup(Arc::new(CayleyTable {
            table,
            names,
            identity,
            inverses: Some(inverses),
        }))))
    }

    /// Builds a finite table without the group checks. Intended for feeding
    /// deliberately broken tables to [`check_left_cancellative`]; arithmetic on
    /// the result is only as meaningful as the table itself.
    pub fn table_unchecked(table: Vec<Vec<usize>>, names: Vec<String>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidMonoid(
                "table must be square with entries below its order".into(),
            ));
        }
        let names = check_names(n, names)?;
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .unwrap_or(0);
        Ok(Self::new(MonoidKind::FiniteGroup(Arc::new(CayleyTable {
            table,
            names,
            identity,
            inverses: None,
        }))))
    }

    /// The symmetric group on `n` letters, elements in lexicographic order of
    /// their one-line notation, product `(a·b)(i) = a(b(i))`.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 || n > 6 {
            return Err(Error::InvalidMonoid("symmetric group supported for 1 ≤ n ≤ 6".into()));
        }
        let perms = permutations(n);
        let index: HashMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| index[&b.iter().map(|&i| a[i]).collect::<Vec<_>>()])
                    .collect()
            })
            .collect();
        let names = perms
            .iter()
            .map(|p| p.iter().map(|i| (i + 1).to_string()).collect::<String>())
            .collect();
        Self::group(table, names)
    }

    pub fn with_capacity(mut self, capacity: usize) -> Self {
        self.capacity = capacity;
        self
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn kind(&self) -> &MonoidKind {
        &self.kind
    }

    pub fn is_group(&self) -> bool {
        match &self.kind {
            MonoidKind::FiniteGroup(t) => t.inverses.is_some(),
            MonoidKind::Cyclic { .. } | MonoidKind::Integers => true,
            _ => false,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.kind, MonoidKind::FiniteGroup(_) | MonoidKind::Cyclic { .. })
    }

    pub fn is_abelian(&self) -> bool {
        match &self.kind {
            MonoidKind::FiniteGroup(t) => {
                let n = t.order();
                (0..n).all(|a| (0..n).all(|b| t.table[a][b] == t.table[b][a]))
            }
            MonoidKind::FreeMonoid { rank } => *rank == 1,
            _ => true,
        }
    }

    pub fn validate(&self, e: &Element) -> Result<()> {
        let ok = match (&self.kind, e) {
            (MonoidKind::FiniteGroup(t), Element::Idx(i)) => *i < t.order(),
            (MonoidKind::Cyclic { n }, Element::Int(v)) => *v >= 0 && (*v as u64) < *n as u64,
            (MonoidKind::Integers, Element::Int(_)) => true,
            (MonoidKind::NonNegIntegers, Element::Int(v)) => *v >= 0,
            (MonoidKind::NonNegVectors { d }, Element::Vector(v)) => v.len() == *d && v.iter().all(|&x| x >= 0),
            (MonoidKind::FreeMonoid { rank }, Element::Word(w)) => w.iter().all(|&g| g >= 1 && g as usize <= *rank),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidElement(format!(
                "{e} is not an element of {}",
                self.describe()
            )))
        }
    }

    pub fn identity(&self) -> Element {
        match &self.kind {
            MonoidKind::FiniteGroup(t) => Element::Idx(t.identity),
            MonoidKind::Cyclic { .. } | MonoidKind::Integers | MonoidKind::NonNegIntegers => Element::Int(0),
            MonoidKind::NonNegVectors { d } => Element::Vector(vec![0; *d]),
            MonoidKind::FreeMonoid { .. } => Element::Word(Vec::new()),
        }
    }

    pub fn compose(&self, a: &Element, b: &Element) -> Result<Element> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(self.compose_unchecked(a, b))
    }

    /// Product of two elements already known to be valid for this monoid.
    pub(crate) fn compose_unchecked(&self, a: &Element, b: &Element) -> Element {
        match (&self.kind, a, b) {
            (MonoidKind::FiniteGroup(t), Element::Idx(x), Element::Idx(y)) => Element::Idx(t.table[*x][*y]),
            (MonoidKind::Cyclic { n }, Element::Int(x), Element::Int(y)) => Element::Int((x + y) % *n as i64),
            (_, Element::Int(x), Element::Int(y)) => Element::Int(x + y),
            (_, Element::Vector(x), Element::Vector(y)) => {
                Element::Vector(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            (_, Element::Word(x), Element::Word(y)) => {
                let mut w = Vec::with_capacity(x.len() + y.len());
                w.extend_from_slice(x);
                w.extend_from_slice(y);
                Element::Word(w)
            }
            _ => unreachable!("compose_unchecked called with mismatched payloads"),
        }
    }

    pub fn invert(&self, g: &Element) -> Result<Element> {
        self.validate(g)?;
        match (&self.kind, g) {
            (MonoidKind::FiniteGroup(t), Element::Idx(i)) => match &t.inverses {
                Some(inv) => Ok(Element::Idx(inv[*i])),
                None => Err(Error::Unsupported("table was not verified to be a group".into())),
            },
            (MonoidKind::Cyclic { n }, Element::Int(v)) => Ok(Element::Int((*n as i64 - v) % *n as i64)),
            (MonoidKind::Integers, Element::Int(v)) => Ok(Element::Int(-v)),
            _ => Err(Error::Unsupported(format!("{} has no inverses", self.describe()))),
        }
    }

    /// Grading used to define windows: `level(a·b) ≤ level(a) + level(b)`.
    pub fn level(&self, e: &Element) -> usize {
        match (&self.kind, e) {
            (MonoidKind::FiniteGroup(_), _) | (MonoidKind::Cyclic { .. }, _) => 0,
            (_, Element::Int(v)) => v.unsigned_abs() as usize,
            (_, Element::Vector(v)) => v.iter().copied().max().unwrap_or(0) as usize,
            (_, Element::Word(w)) => w.len(),
            (_, Element::Idx(_)) => 0,
        }
    }

    pub fn reverse_word(&self, alpha: &Element) -> Result<Element> {
        match (&self.kind, alpha) {
            (MonoidKind::FreeMonoid { .. }, Element::Word(w)) => {
                self.validate(alpha)?;
                Ok(Element::Word(w.iter().rev().copied().collect()))
            }
            (MonoidKind::FreeMonoid { .. }, _) => Err(Error::InvalidElement(format!("{alpha} is not a word"))),
            _ => Err(Error::Unsupported("word reversal requires a free monoid".into())),
        }
    }

    /// Number of elements in `window(level)`, saturating.
    pub fn window_size(&self, level: usize) -> u128 {
        let k = level as u128;
        match &self.kind {
            MonoidKind::FiniteGroup(t) => t.order() as u128,
            MonoidKind::Cyclic { n } => *n as u128,
            MonoidKind::NonNegIntegers => k + 1,
            MonoidKind::Integers => 2 * k + 1,
            MonoidKind::NonNegVectors { d } => (k + 1).checked_pow(*d as u32).unwrap_or(u128::MAX),
            MonoidKind::FreeMonoid { rank } => {
                let n = *rank as u128;
                let mut total: u128 = 0;
                let mut term: u128 = 1;
                for _ in 0..=level {
                    total = total.saturating_add(term);
                    term = term.saturating_mul(n);
                    if total == u128::MAX {
                        break;
                    }
                }
                total
            }
        }
    }

    /// Canonical ordered truncation of level `level`.
    pub fn window(&self, level: usize) -> Result<Arc<Window>> {
        let requested = self.window_size(level);
        if requested > self.capacity as u128 {
            return Err(Error::Capacity {
                requested,
                cap: self.capacity,
            });
        }
        let level = if self.is_finite() { 0 } else { level };
        let elements: Vec<Element> = match &self.kind {
            MonoidKind::FiniteGroup(t) => (0..t.order()).map(Element::Idx).collect(),
            MonoidKind::Cyclic { n } => (0..*n as i64).map(Element::Int).collect(),
            MonoidKind::NonNegIntegers => (0..=level as i64).map(Element::Int).collect(),
            MonoidKind::Integers => (-(level as i64)..=level as i64).map(Element::Int).collect(),
            MonoidKind::NonNegVectors { d } => lattice_box(*d, level as i64),
            MonoidKind::FreeMonoid { rank } => words_up_to(*rank as u32, level),
        };
        let index = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        Ok(Arc::new(Window {
            spec: self.clone(),
            level,
            elements,
            index,
        }))
    }

    /// Smallest canonical window containing every element of `elems`.
    pub fn window_containing<'a>(&self, elems: impl IntoIterator<Item = &'a Element>) -> Result<Arc<Window>> {
        let level = elems.into_iter().map(|e| self.level(e)).max().unwrap_or(0);
        self.window(level)
    }

    pub fn parse_element(&self, text: &str) -> Result<Element> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::parse(&e, "element"))?;
        self.element_from_value(&value)
    }

    pub fn element_from_value(&self, value: &Value) -> Result<Element> {
        let bad = |msg: &str| Error::Parse {
            position: 0,
            message: format!("{msg}: {value}"),
        };
        let obj = value.as_object().ok_or_else(|| bad("element must be an object"))?;
        if obj.len() != 1 {
            return Err(bad("element object must have exactly one key"));
        }
        let (key, payload) = obj.iter().next().expect("one key");
        let e = match key.as_str() {
            "int" => Element::Int(payload.as_i64().ok_or_else(|| bad("\"int\" expects an integer"))?),
            "idx" => Element::Idx(
                payload
                    .as_u64()
                    .ok_or_else(|| bad("\"idx\" expects a non-negative integer"))? as usize,
            ),
            "vec" => Element::Vector(int_array(payload).ok_or_else(|| bad("\"vec\" expects an integer array"))?),
            "word" => {
                let raw = int_array(payload).ok_or_else(|| bad("\"word\" expects an integer array"))?;
                let mut word = Vec::with_capacity(raw.len());
                for (pos, g) in raw.into_iter().enumerate() {
                    if g < 1 || g > u32::MAX as i64 {
                        return Err(Error::Parse {
                            position: pos,
                            message: format!("generator {g} out of range"),
                        });
                    }
                    word.push(g as u32);
                }
                Element::Word(word)
            }
            other => return Err(bad(&format!("unknown element key {other:?}"))),
        };
        if let (MonoidKind::FreeMonoid { rank }, Element::Word(w)) = (&self.kind, &e) {
            if let Some(pos) = w.iter().position(|&g| g as usize > *rank) {
                return Err(Error::Parse {
                    position: pos,
                    message: format!("generator {} out of range 1..={rank}", w[pos]),
                });
            }
        }
        self.validate(&e).map_err(|err| Error::Parse {
            position: 0,
            message: err.to_string(),
        })?;
        Ok(e)
    }

    pub fn element_to_value(&self, e: &Element) -> Value {
        match e {
            Element::Int(v) => json!({ "int": v }),
            Element::Idx(i) => json!({ "idx": i }),
            Element::Vector(v) => json!({ "vec": v }),
            Element::Word(w) => json!({ "word": w }),
        }
    }

    /// Canonical compact JSON form of an element.
    pub fn format_element(&self, e: &Element) -> String {
        self.element_to_value(e).to_string()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::parse(&e, "monoid spec"))?;
        Self::from_value(&value)
    }

    pub fn from_value(value: &Value) -> Result<Self> {
        let kind = value
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::InvalidMonoid(format!("missing \"kind\" in {value}")))?;
        let uint = |key: &str| -> Result<usize> {
            value
                .get(key)
                .and_then(Value::as_u64)
                .map(|v| v as usize)
                .ok_or_else(|| Error::InvalidMonoid(format!("\"{kind}\" requires a non-negative integer \"{key}\"")))
        };
        match kind {
            "cyclic" => Self::cyclic(uint("n")?),
            "z" => Ok(Self::integers()),
            "zplus" => Ok(Self::nonneg_integers()),
            "zplus_d" => Self::nonneg_vectors(uint("d")?),
            "free" => Self::free(uint("rank")?),
            "group" => {
                let table: Vec<Vec<usize>> = value
                    .get("table")
                    .map(|t| serde_json::from_value(t.clone()))
                    .transpose()
                    .map_err(|e| Error::InvalidMonoid(format!("bad Cayley table: {e}")))?
                    .ok_or_else(|| Error::InvalidMonoid("\"group\" requires \"table\"".into()))?;
                let names: Vec<String> = value
                    .get("names")
                    .map(|t| serde_json::from_value(t.clone()))
                    .transpose()
                    .map_err(|e| Error::InvalidMonoid(format!("bad names: {e}")))?
                    .unwrap_or_default();
                Self::group(table, names)
            }
            other => Err(Error::InvalidMonoid(format!("unknown kind {other:?}"))),
        }
    }

    pub fn to_value(&self) -> Value {
        match &self.kind {
            MonoidKind::FiniteGroup(t) => json!({ "kind": "group", "table": t.table, "names": t.names }),
            MonoidKind::Cyclic { n } => json!({ "kind": "cyclic", "n": n }),
            MonoidKind::Integers => json!({ "kind": "z" }),
            MonoidKind::NonNegIntegers => json!({ "kind": "zplus" }),
            MonoidKind::NonNegVectors { d } => json!({ "kind": "zplus_d", "d": d }),
            MonoidKind::FreeMonoid { rank } => json!({ "kind": "free", "rank": rank }),
        }
    }

    /// Short human-readable name.
    pub fn describe(&self) -> String {
        match &self.kind {
            MonoidKind::FiniteGroup(t) => format!("group of order {}", t.order()),
            MonoidKind::Cyclic { n } => format!("Z_{n}"),
            MonoidKind::Integers => "Z".into(),
            MonoidKind::NonNegIntegers => "Z+".into(),
            MonoidKind::NonNegVectors { d } => format!("Z+^{d}"),
            MonoidKind::FreeMonoid { rank } => format!("F+_{rank}"),
        }
    }
}

fn check_names(n: usize, names: Vec<String>) -> Result<Vec<String>> {
    if names.is_empty() {
        return Ok((0..n).map(|i| i.to_string()).collect());
    }
    if names.len() != n {
        return Err(Error::InvalidMonoid(format!(
            "{} names for a table of order {n}",
            names.len()
        )));
    }
    Ok(names)
}

fn is_permutation(entries: impl Iterator<Item = usize>, n: usize) -> bool {
    let mut seen = vec![false; n];
    for x in entries {
        if x >= n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    seen.into_iter().all(|s| s)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

fn int_array(v: &Value) -> Option<Vec<i64>> {
    v.as_array()?.iter().map(Value::as_i64).collect()
}

fn lattice_box(d: usize, k: i64) -> Vec<Element> {
    let mut out = Vec::new();
    let mut digits = vec![0i64; d];
    loop {
        out.push(Element::Vector(digits.clone()));
        let mut pos = d;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if digits[pos] < k {
                digits[pos] += 1;
                break;
            }
            digits[pos] = 0;
        }
    }
}

fn words_up_to(rank: u32, k: usize) -> Vec<Element> {
    let mut out = vec![Element::Word(Vec::new())];
    for len in 1..=k {
        let mut word = vec![1u32; len];
        loop {
            out.push(Element::Word(word.clone()));
            let mut pos = len;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                if word[pos] < rank {
                    word[pos] += 1;
                    break;
                }
                word[pos] = 1;
            }
            if word.iter().all(|&g| g == 1) {
                break;
            }
        }
    }
    out
}

/// Finite ordered truncation of a monoid with element lookup.
///
/// Two windows are equal when they come from the same monoid at the same
/// level; their element sequences are then identical.
#[derive(Debug, Clone)]
pub struct Window {
    spec: MonoidSpec,
    level: usize,
    elements: Vec<Element>,
    index: HashMap<Element, usize>,
}

impl PartialEq for Window {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || (self.level == other.level && self.spec == other.spec)
    }
}

impl Eq for Window {}

impl Window {
    pub fn spec(&self) -> &MonoidSpec {
        &self.spec
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    pub fn index_of(&self, e: &Element) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.index.contains_key(e)
    }

    /// `true` when every element of `self` also lies in `other`.
    pub fn is_subset_of(&self, other: &Window) -> bool {
        self.spec == other.spec && self.elements.iter().all(|e| other.contains(e))
    }

    pub fn is_inversion_closed(&self) -> bool {
        self.spec.is_group()
            && self
                .elements
                .iter()
                .all(|g| self.spec.invert(g).map(|h| self.contains(&h)).unwrap_or(false))
    }

    /// `<spec json>/<level>`, as used in matrix dump headers.
    pub fn label(&self) -> String {
        format!("{}/{}", self.spec.to_value(), self.level)
    }
}

/// Result of [`check_left_cancellative`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cancellativity {
    Pass,
    /// `t·r = t·r2` with `r ≠ r2`.
    Counterexample {
        t: Element,
        r: Element,
        r2: Element,
        product: Element,
    },
}

impl Cancellativity {
    pub fn passed(&self) -> bool {
        matches!(self, Cancellativity::Pass)
    }
}

/// Searches `w` for `t, r, r′` with `t·r = t·r′` and `r ≠ r′`.
pub fn check_left_cancellative(w: &Window) -> Cancellativity {
    let spec = w.spec();
    for t in w.elements() {
        let mut seen: HashMap<Element, &Element> = HashMap::with_capacity(w.len());
        for r in w.elements() {
            let product = spec.compose_unchecked(t, r);
            if let Some(prev) = seen.get(&product) {
                return Cancellativity::Counterexample {
                    t: t.clone(),
                    r: (*prev).clone(),
                    r2: r.clone(),
                    product,
                };
            }
            seen.insert(product, r);
        }
    }
    Cancellativity::Pass
}
