//! Action-filtered chain complexes over GF(2) with bigraded differentials.
//!
//! A complex is a finite set of named generators, each carrying an exact
//! rational action value, together with arrows labelled by a pair `(i, j)` of
//! small nonnegative integers. Each label selects a layer of the
//! differential; the total differential is the mod-2 sum of the layers. A
//! complex is valid when the action strictly decreases along every arrow, the
//! total differential squares to zero, and the low-order layer identities
//! hold separately: the `(0,0)` layer squares to zero and its mixed products
//! with the `(1,0)` and `(0,1)` layers cancel. The last two do not follow
//! from the total identity on synthetic data (layers can cancel each other
//! across different gradings), which is why they are checked on their own.
//!
//! The homology that matters downstream is that of the `(0,0)` layer,
//! computed on open action windows `(a, b)`. Window truncation is exact
//! because action decreases strictly along arrows, and window bounds that
//! collide with a generator action are rejected rather than resolved by a
//! tie-break. Morphisms carry a rational action shift and labelled entries;
//! they induce maps on window homology, and a morphism with a one-sided
//! inverse on homology is injective there — the algebraic skeleton of the
//! braid-stability argument, runnable on finite synthetic complexes.
//!
//! All linear algebra is over GF(2) on bit-packed matrices.

use crate::rational::{fmt_rat, parse_rat, Rat};
use num_traits::{Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// Bigrading label on an arrow or morphism entry.
pub type Label = (u8, u8);

/// Largest supported value for either label component.
pub const MAX_LABEL: u8 = 9;

#[derive(Debug, thiserror::Error)]
pub enum FloerError {
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("unknown generator name `{0}`")]
    UnknownName(String),
    #[error("arrow index out of range: {0}")]
    ArrowIndex(String),
    #[error("label ({i}, {j}) on `{src}` -> `{dst}` exceeds the supported range 0..={MAX_LABEL}")]
    LabelRange {
        src: String,
        dst: String,
        i: u32,
        j: u32,
    },
    #[error(
        "duplicate arrow `{src}` -> `{dst}` with label ({i}, {j}); GF(2) multiplicities are 0 or 1"
    )]
    DuplicateArrow {
        src: String,
        dst: String,
        i: u8,
        j: u8,
    },
    #[error("window needs lo < hi, got ({0}, {1})")]
    BadWindow(String, String),
    #[error("window bound {bound} collides with the action of generator `{name}`")]
    SpectrumCollision { name: String, bound: String },
    #[error("morphism shift must be nonnegative, got {0}")]
    NegativeShift(String),
    #[error("morphism shift violated: `{src}` ({src_action}) -> `{tgt}` ({tgt_action}) exceeds shift {shift}")]
    ShiftViolated {
        src: String,
        src_action: String,
        tgt: String,
        tgt_action: String,
        shift: String,
    },
    #[error("not a chain map: commuting square fails at generator `{0}`")]
    NotChainMap(String),
    #[error("composition label ({0}, {1}) exceeds the supported range 0..={MAX_LABEL}")]
    LabelOverflow(u32, u32),
    #[error("dimension mismatch: {0}")]
    ShapeMismatch(String),
    #[error("complex json: {0}")]
    Json(String),
}

/// Bit-packed GF(2) matrix, row major. `a.mul(b)` composes row vectors:
/// row `r` of the product is the XOR of the `b` rows selected by row `r` of
/// `a`, so with chains as row vectors `a.mul(b)` means "apply a, then b".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMat {
    pub rows: usize,
    pub cols: usize,
    words: Vec<Vec<u128>>,
}

fn row_get(row: &[u128], c: usize) -> bool {
    (row[c / 128] >> (c % 128)) & 1 == 1
}

fn row_set(row: &mut [u128], c: usize) {
    row[c / 128] |= 1u128 << (c % 128);
}

fn row_xor(row: &mut [u128], other: &[u128]) {
    for (a, b) in row.iter_mut().zip(other) {
        *a ^= b;
    }
}

fn row_is_zero(row: &[u128]) -> bool {
    row.iter().all(|&w| w == 0)
}

fn row_first_set(row: &[u128]) -> Option<usize> {
    for (w, &v) in row.iter().enumerate() {
        if v != 0 {
            return Some(w * 128 + v.trailing_zeros() as usize);
        }
    }
    None
}

impl BitMat {
    pub fn zero(rows: usize, cols: usize) -> BitMat {
        BitMat {
            rows,
            cols,
            words: vec![vec![0; cols.div_ceil(128)]; rows],
        }
    }

    pub fn identity(n: usize) -> BitMat {
        let mut m = BitMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let (w, b) = (c / 128, c % 128);
        if v {
            self.words[r][w] |= 1u128 << b;
        } else {
            self.words[r][w] &= !(1u128 << b);
        }
    }

    pub fn toggle(&mut self, r: usize, c: usize) {
        self.words[r][c / 128] ^= 1u128 << (c % 128);
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        (self.words[r][c / 128] >> (c % 128)) & 1 == 1
    }

    pub fn mul(&self, rhs: &BitMat) -> BitMat {
        assert_eq!(self.cols, rhs.rows, "inner dimensions");
        let mut out = BitMat::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for j in 0..self.cols {
                if self.get(r, j) {
                    row_xor(&mut out.words[r], &rhs.words[j]);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &BitMat) -> BitMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shapes");
        let mut out = self.clone();
        for r in 0..self.rows {
            row_xor(&mut out.words[r], &rhs.words[r]);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|row| row_is_zero(row))
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.words.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            let (w, b) = (c / 128, c % 128);
            let Some(p) = (rank..rows.len()).find(|&r| (rows[r][w] >> b) & 1 == 1) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && (row[w] >> b) & 1 == 1 {
                    row_xor(row, &pivot);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Row vector times matrix: the XOR of the rows selected by `row`.
    fn apply_to_row(&self, row: &[u128]) -> Vec<u128> {
        let mut out = vec![0u128; self.cols.div_ceil(128)];
        for r in 0..self.rows {
            if row_get(row, r) {
                row_xor(&mut out, &self.words[r]);
            }
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct Generator {
    pub name: String,
    pub action: Rat,
}

/// One differential entry: generator `src` hits generator `dst` in the
/// `(i, j)` layer with GF(2) multiplicity 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Arrow {
    pub src: usize,
    pub dst: usize,
    pub label: Label,
}

/// Finite action-filtered complex with a bigraded differential.
#[derive(Debug, Clone)]
pub struct FilteredComplex {
    pub generators: Vec<Generator>,
    pub arrows: Vec<Arrow>,
}

/// Outcome of [`FilteredComplex::validate`]: the mathematical invariants,
/// each reported on its own so a cancellation between layers cannot hide a
/// broken layer identity behind a clean total differential.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    /// Action strictly decreases along every arrow.
    pub action_decreases: bool,
    /// The total differential squares to zero.
    pub dd_zero: bool,
    /// The `(0,0)` layer squares to zero.
    pub d00_squared_zero: bool,
    /// `d10 d00 + d00 d10 = 0`.
    pub mixed_10_zero: bool,
    /// `d01 d00 + d00 d01 = 0`.
    pub mixed_01_zero: bool,
    pub violations: Vec<String>,
}

impl FilteredComplex {
    /// Structural construction checks: unique names, indices in range,
    /// labels within `0..=MAX_LABEL`, no repeated arrow triple. The
    /// mathematical invariants are reported by [`Self::validate`].
    pub fn new(
        generators: Vec<Generator>,
        arrows: Vec<Arrow>,
    ) -> Result<FilteredComplex, FloerError> {
        let mut names = BTreeSet::new();
        for g in &generators {
            if !names.insert(g.name.as_str()) {
                return Err(FloerError::DuplicateName(g.name.clone()));
            }
        }
        let mut seen = BTreeSet::new();
        for a in &arrows {
            if a.src >= generators.len() || a.dst >= generators.len() {
                return Err(FloerError::ArrowIndex(format!(
                    "arrow ({}, {}) on {} generators",
                    a.src,
                    a.dst,
                    generators.len()
                )));
            }
            if a.label.0 > MAX_LABEL || a.label.1 > MAX_LABEL {
                return Err(FloerError::LabelRange {
                    src: generators[a.src].name.clone(),
                    dst: generators[a.dst].name.clone(),
                    i: a.label.0 as u32,
                    j: a.label.1 as u32,
                });
            }
            if !seen.insert(*a) {
                return Err(FloerError::DuplicateArrow {
                    src: generators[a.src].name.clone(),
                    dst: generators[a.dst].name.clone(),
                    i: a.label.0,
                    j: a.label.1,
                });
            }
        }
        Ok(FilteredComplex { generators, arrows })
    }

    pub fn empty() -> FilteredComplex {
        FilteredComplex {
            generators: Vec::new(),
            arrows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// The matrix of one differential layer; row `i` is the image of
    /// generator `i` within that layer.
    pub fn layer_matrix(&self, label: Label) -> BitMat {
        let n = self.dim();
        let mut d = BitMat::zero(n, n);
        for a in &self.arrows {
            if a.label == label {
                d.set(a.src, a.dst, true);
            }
        }
        d
    }

    /// The total differential: the mod-2 sum over all layers, so two arrows
    /// between the same generators in different layers cancel here while
    /// remaining visible to the per-layer identities.
    pub fn total_matrix(&self) -> BitMat {
        let n = self.dim();
        let mut d = BitMat::zero(n, n);
        for a in &self.arrows {
            d.toggle(a.src, a.dst);
        }
        d
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let mut action_decreases = true;
        for a in &self.arrows {
            let (src, dst) = (&self.generators[a.src], &self.generators[a.dst]);
            if dst.action >= src.action {
                action_decreases = false;
                violations.push(format!(
                    "arrow `{}` ({}) -> `{}` ({}) does not decrease the action",
                    src.name,
                    fmt_rat(&src.action),
                    dst.name,
                    fmt_rat(&dst.action)
                ));
            }
        }
        let name_of_first_bad = |m: &BitMat| -> String {
            (0..self.dim())
                .find(|&i| (0..self.dim()).any(|j| m.get(i, j)))
                .map(|i| self.generators[i].name.clone())
                .unwrap_or_default()
        };
        let total = self.total_matrix();
        let dd = total.mul(&total);
        let dd_zero = dd.is_zero();
        if !dd_zero {
            violations.push(format!(
                "total differential does not square to zero, starting from `{}`",
                name_of_first_bad(&dd)
            ));
        }
        let d00 = self.layer_matrix((0, 0));
        let d10 = self.layer_matrix((1, 0));
        let d01 = self.layer_matrix((0, 1));
        let sq00 = d00.mul(&d00);
        let d00_squared_zero = sq00.is_zero();
        if !d00_squared_zero {
            violations.push(format!(
                "(0,0) layer does not square to zero, starting from `{}`",
                name_of_first_bad(&sq00)
            ));
        }
        let mix10 = d10.mul(&d00).add(&d00.mul(&d10));
        let mixed_10_zero = mix10.is_zero();
        if !mixed_10_zero {
            violations.push(format!(
                "mixed identity d10 d00 + d00 d10 fails, starting from `{}`",
                name_of_first_bad(&mix10)
            ));
        }
        let mix01 = d01.mul(&d00).add(&d00.mul(&d01));
        let mixed_01_zero = mix01.is_zero();
        if !mixed_01_zero {
            violations.push(format!(
                "mixed identity d01 d00 + d00 d01 fails, starting from `{}`",
                name_of_first_bad(&mix01)
            ));
        }
        ValidationReport {
            ok: violations.is_empty(),
            action_decreases,
            dd_zero,
            d00_squared_zero,
            mixed_10_zero,
            mixed_01_zero,
            violations,
        }
    }

    /// Open-window truncation: keeps generators with `lo < action < hi` and
    /// the arrows between survivors. Exact because action strictly decreases
    /// along arrows. A bound equal to a generator action is an error.
    pub fn window(&self, lo: &Rat, hi: &Rat) -> Result<FilteredComplex, FloerError> {
        if lo >= hi {
            return Err(FloerError::BadWindow(fmt_rat(lo), fmt_rat(hi)));
        }
        for g in &self.generators {
            if g.action == *lo || g.action == *hi {
                return Err(FloerError::SpectrumCollision {
                    name: g.name.clone(),
                    bound: fmt_rat(&g.action),
                });
            }
        }
        let keep: Vec<usize> = (0..self.dim())
            .filter(|&i| {
                let a = &self.generators[i].action;
                lo < a && a < hi
            })
            .collect();
        let mut renum = BTreeMap::new();
        for (new, &old) in keep.iter().enumerate() {
            renum.insert(old, new);
        }
        let generators = keep.iter().map(|&i| self.generators[i].clone()).collect();
        let arrows = self
            .arrows
            .iter()
            .filter_map(|a| {
                Some(Arrow {
                    src: *renum.get(&a.src)?,
                    dst: *renum.get(&a.dst)?,
                    label: a.label,
                })
            })
            .collect();
        Ok(FilteredComplex { generators, arrows })
    }

    /// GF(2) homology rank of the `(0,0)` layer: `dim - 2 rank(d00)`, valid
    /// because the layer squares to zero on valid complexes.
    pub fn homology00(&self) -> usize {
        self.dim() - 2 * self.layer_matrix((0, 0)).rank()
    }

    /// Homology rank of the total differential.
    pub fn homology_total(&self) -> usize {
        self.dim() - 2 * self.total_matrix().rank()
    }

    /// All action values, ascending, with multiplicity.
    pub fn spectrum(&self) -> Vec<Rat> {
        let mut v: Vec<Rat> = self.generators.iter().map(|g| g.action.clone()).collect();
        v.sort();
        v
    }

    /// Smallest nonzero distance between action values; `None` when fewer
    /// than two distinct values exist.
    pub fn spectrum_gap(&self) -> Option<Rat> {
        let v = self.spectrum();
        let mut gap: Option<Rat> = None;
        for w in v.windows(2) {
            let d = &w[1] - &w[0];
            if d.is_positive() && gap.as_ref().is_none_or(|g| &d < g) {
                gap = Some(d);
            }
        }
        gap
    }

    /// Maximal groups of generators whose actions chain within `two_delta`.
    fn clusters(&self, two_delta: &Rat) -> Vec<Vec<usize>> {
        let mut order: Vec<usize> = (0..self.dim()).collect();
        order.sort_by(|&a, &b| self.generators[a].action.cmp(&self.generators[b].action));
        let mut out: Vec<Vec<usize>> = Vec::new();
        for i in order {
            let a = &self.generators[i].action;
            match out.last_mut() {
                Some(cluster)
                    if (a - &self.generators[*cluster.last().unwrap()].action).abs()
                        <= *two_delta =>
                {
                    cluster.push(i)
                }
                _ => out.push(vec![i]),
            }
        }
        out
    }

    /// Spectrum-discreteness predicate: every pair of actions differs by at
    /// least `eps` or at most `2 delta`, and no `(0,0)` arrow connects two
    /// generators of the same `2 delta` cluster. Requires `eps > 2 delta`;
    /// returns false otherwise. When this holds and a window of width below
    /// `eps` contains exactly one cluster, the window's `(0,0)` homology is
    /// the cluster size.
    pub fn admissible_spectrum(&self, eps: &Rat, delta: &Rat) -> bool {
        let two_delta = Rat::from_integer(2.into()) * delta;
        if *eps <= two_delta {
            return false;
        }
        for i in 0..self.dim() {
            for j in (i + 1)..self.dim() {
                let d = (&self.generators[i].action - &self.generators[j].action).abs();
                if d > two_delta && d < *eps {
                    return false;
                }
            }
        }
        let clusters = self.clusters(&two_delta);
        // Chains could stretch past 2 delta; the pair condition above makes
        // that impossible, but keep clusters honest.
        for c in &clusters {
            let lo = &self.generators[c[0]].action;
            let hi = &self.generators[*c.last().unwrap()].action;
            if (hi - lo).abs() > two_delta {
                return false;
            }
        }
        let cluster_of: BTreeMap<usize, usize> = clusters
            .iter()
            .enumerate()
            .flat_map(|(ci, c)| c.iter().map(move |&g| (g, ci)))
            .collect();
        self.arrows
            .iter()
            .all(|a| a.label != (0, 0) || cluster_of[&a.src] != cluster_of[&a.dst])
    }

    pub fn to_json(&self) -> String {
        let generators: Vec<serde_json::Value> = self
            .generators
            .iter()
            .map(|g| serde_json::json!({ "name": g.name, "action": fmt_rat(&g.action) }))
            .collect();
        let arrows: Vec<serde_json::Value> = self
            .arrows
            .iter()
            .map(|a| {
                serde_json::json!({
                    "src": self.generators[a.src].name,
                    "dst": self.generators[a.dst].name,
                    "i": a.label.0,
                    "j": a.label.1,
                })
            })
            .collect();
        serde_json::to_string_pretty(&serde_json::json!({
            "generators": generators,
            "arrows": arrows,
        }))
        .expect("complex serializes")
    }

    pub fn from_json(text: &str) -> Result<FilteredComplex, FloerError> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| FloerError::Json(e.to_string()))?;
        Self::from_json_value(&v)
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<FilteredComplex, FloerError> {
        let gens = v
            .get("generators")
            .and_then(|g| g.as_array())
            .ok_or_else(|| FloerError::Json("missing `generators` array".into()))?;
        let mut generators = Vec::with_capacity(gens.len());
        for g in gens {
            let name = g
                .get("name")
                .and_then(|n| n.as_str())
                .ok_or_else(|| FloerError::Json("generator without a `name` string".into()))?;
            let action = json_rat(g.get("action"))
                .map_err(|e| FloerError::Json(format!("action of `{name}`: {e}")))?;
            generators.push(Generator {
                name: name.to_string(),
                action,
            });
        }
        let index: BTreeMap<&str, usize> = generators
            .iter()
            .enumerate()
            .map(|(i, g)| (g.name.as_str(), i))
            .collect();
        let mut arrows = Vec::new();
        if let Some(list) = v.get("arrows") {
            let list = list
                .as_array()
                .ok_or_else(|| FloerError::Json("`arrows` must be an array".into()))?;
            for a in list {
                let field = |key: &str| -> Result<&str, FloerError> {
                    a.get(key)
                        .and_then(|s| s.as_str())
                        .ok_or_else(|| FloerError::Json(format!("arrow without `{key}`")))
                };
                let (src_name, dst_name) = (field("src")?, field("dst")?);
                let src = *index
                    .get(src_name)
                    .ok_or_else(|| FloerError::UnknownName(src_name.to_string()))?;
                let dst = *index
                    .get(dst_name)
                    .ok_or_else(|| FloerError::UnknownName(dst_name.to_string()))?;
                let (i, j) = (json_label(a.get("i"))?, json_label(a.get("j"))?);
                if i > MAX_LABEL as u64 || j > MAX_LABEL as u64 {
                    return Err(FloerError::LabelRange {
                        src: src_name.to_string(),
                        dst: dst_name.to_string(),
                        i: i as u32,
                        j: j as u32,
                    });
                }
                arrows.push(Arrow {
                    src,
                    dst,
                    label: (i as u8, j as u8),
                });
            }
        }
        FilteredComplex::new(generators, arrows)
    }
}

fn json_label(v: Option<&serde_json::Value>) -> Result<u64, FloerError> {
    v.and_then(|x| x.as_u64()).ok_or_else(|| {
        FloerError::Json("arrow labels `i`, `j` must be nonnegative integers".into())
    })
}

/// Rational from JSON: a `"p/q"` / decimal string or an exact number.
fn json_rat(v: Option<&serde_json::Value>) -> Result<Rat, String> {
    let v = v.ok_or("missing value")?;
    if let Some(s) = v.as_str() {
        return parse_rat(s);
    }
    if let Some(n) = v.as_i64() {
        return Ok(Rat::from_integer(n.into()));
    }
    if let Some(f) = v.as_f64() {
        return num_traits::FromPrimitive::from_f64(f).ok_or_else(|| format!("bad number {f}"));
    }
    Err(format!("expected a rational, got {v}"))
}

/// One morphism entry: source generator `src` maps onto target generator
/// `dst` in the `(i, j)` layer with GF(2) multiplicity 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct MorphismEntry {
    pub src: usize,
    pub dst: usize,
    pub label: Label,
}

/// Action-filtered morphism between two complexes. The action contract is
/// one-sided: every entry's target may sit lower by any amount but at most
/// `shift` higher, so the identity is a valid morphism at shift zero.
#[derive(Debug, Clone)]
pub struct FilteredMorphism {
    pub shift: Rat,
    pub entries: Vec<MorphismEntry>,
}

impl FilteredMorphism {
    pub fn identity(c: &FilteredComplex) -> FilteredMorphism {
        FilteredMorphism {
            shift: Rat::zero(),
            entries: (0..c.dim())
                .map(|i| MorphismEntry {
                    src: i,
                    dst: i,
                    label: (0, 0),
                })
                .collect(),
        }
    }

    pub fn zero(shift: Rat) -> FilteredMorphism {
        FilteredMorphism {
            shift,
            entries: Vec::new(),
        }
    }

    /// The total matrix: mod-2 sum over all layers.
    pub fn total_matrix(&self, source: &FilteredComplex, target: &FilteredComplex) -> BitMat {
        let mut m = BitMat::zero(source.dim(), target.dim());
        for e in &self.entries {
            m.toggle(e.src, e.dst);
        }
        m
    }

    /// The matrix of one layer.
    pub fn layer_matrix(
        &self,
        label: Label,
        source: &FilteredComplex,
        target: &FilteredComplex,
    ) -> BitMat {
        let mut m = BitMat::zero(source.dim(), target.dim());
        for e in &self.entries {
            if e.label == label {
                m.set(e.src, e.dst, true);
            }
        }
        m
    }

    pub fn to_json(&self, source: &FilteredComplex, target: &FilteredComplex) -> String {
        let entries: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|e| {
                serde_json::json!({
                    "src": source.generators[e.src].name,
                    "dst": target.generators[e.dst].name,
                    "i": e.label.0,
                    "j": e.label.1,
                })
            })
            .collect();
        serde_json::to_string_pretty(&serde_json::json!({
            "shift": fmt_rat(&self.shift),
            "entries": entries,
        }))
        .expect("morphism serializes")
    }

    pub fn from_json_value(
        v: &serde_json::Value,
        source: &FilteredComplex,
        target: &FilteredComplex,
    ) -> Result<FilteredMorphism, FloerError> {
        let shift = match v.get("shift") {
            None => Rat::zero(),
            some => json_rat(some).map_err(|e| FloerError::Json(format!("shift: {e}")))?,
        };
        let mut entries = Vec::new();
        if let Some(list) = v.get("entries") {
            let list = list
                .as_array()
                .ok_or_else(|| FloerError::Json("`entries` must be an array".into()))?;
            for e in list {
                let field = |key: &str| -> Result<&str, FloerError> {
                    e.get(key)
                        .and_then(|s| s.as_str())
                        .ok_or_else(|| FloerError::Json(format!("entry without `{key}`")))
                };
                let (src_name, dst_name) = (field("src")?, field("dst")?);
                let src = source
                    .index_of(src_name)
                    .ok_or_else(|| FloerError::UnknownName(src_name.to_string()))?;
                let dst = target
                    .index_of(dst_name)
                    .ok_or_else(|| FloerError::UnknownName(dst_name.to_string()))?;
                let i = e.get("i").and_then(|x| x.as_u64()).unwrap_or(0);
                let j = e.get("j").and_then(|x| x.as_u64()).unwrap_or(0);
                if i > MAX_LABEL as u64 || j > MAX_LABEL as u64 {
                    return Err(FloerError::LabelOverflow(i as u32, j as u32));
                }
                entries.push(MorphismEntry {
                    src,
                    dst,
                    label: (i as u8, j as u8),
                });
            }
        }
        Ok(FilteredMorphism { shift, entries })
    }
}

/// Checks index ranges, the nonnegative shift, the one-sided action-shift
/// contract on every entry, duplicate entries, and the chain-map identity
/// `F d_A = d_B F` for the total differentials.
pub fn validate_morphism(
    source: &FilteredComplex,
    target: &FilteredComplex,
    m: &FilteredMorphism,
) -> Result<(), FloerError> {
    if m.shift.is_negative() {
        return Err(FloerError::NegativeShift(fmt_rat(&m.shift)));
    }
    let mut seen = BTreeSet::new();
    for e in &m.entries {
        if e.src >= source.dim() || e.dst >= target.dim() {
            return Err(FloerError::ShapeMismatch(format!(
                "entry ({}, {}) on a {} -> {} generator morphism",
                e.src,
                e.dst,
                source.dim(),
                target.dim()
            )));
        }
        if e.label.0 > MAX_LABEL || e.label.1 > MAX_LABEL {
            return Err(FloerError::LabelOverflow(
                e.label.0 as u32,
                e.label.1 as u32,
            ));
        }
        if !seen.insert(*e) {
            return Err(FloerError::DuplicateArrow {
                src: source.generators[e.src].name.clone(),
                dst: target.generators[e.dst].name.clone(),
                i: e.label.0,
                j: e.label.1,
            });
        }
        let (src, tgt) = (&source.generators[e.src], &target.generators[e.dst]);
        if tgt.action > &src.action + &m.shift {
            return Err(FloerError::ShiftViolated {
                src: src.name.clone(),
                src_action: fmt_rat(&src.action),
                tgt: tgt.name.clone(),
                tgt_action: fmt_rat(&tgt.action),
                shift: fmt_rat(&m.shift),
            });
        }
    }
    let f = m.total_matrix(source, target);
    let diff = source
        .total_matrix()
        .mul(&f)
        .add(&f.mul(&target.total_matrix()));
    if !diff.is_zero() {
        let bad = (0..source.dim())
            .find(|&i| (0..target.dim()).any(|j| diff.get(i, j)))
            .map(|i| source.generators[i].name.clone())
            .unwrap_or_default();
        return Err(FloerError::NotChainMap(bad));
    }
    Ok(())
}

/// `f` then `g`; shifts add, entry labels add componentwise, and parallel
/// paths cancel mod 2. Fails when a composite label leaves the supported
/// range.
pub fn compose(f: &FilteredMorphism, g: &FilteredMorphism) -> Result<FilteredMorphism, FloerError> {
    let mut parity: BTreeMap<MorphismEntry, bool> = BTreeMap::new();
    for ef in &f.entries {
        for eg in &g.entries {
            if ef.dst != eg.src {
                continue;
            }
            let (i, j) = (
                ef.label.0 as u32 + eg.label.0 as u32,
                ef.label.1 as u32 + eg.label.1 as u32,
            );
            if i > MAX_LABEL as u32 || j > MAX_LABEL as u32 {
                return Err(FloerError::LabelOverflow(i, j));
            }
            let e = MorphismEntry {
                src: ef.src,
                dst: eg.dst,
                label: (i as u8, j as u8),
            };
            *parity.entry(e).or_insert(false) ^= true;
        }
    }
    Ok(FilteredMorphism {
        shift: &f.shift + &g.shift,
        entries: parity
            .into_iter()
            .filter(|(_, odd)| *odd)
            .map(|(e, _)| e)
            .collect(),
    })
}

/// Whether `h` witnesses `f` and `g` as chain homotopic in the `(0,0)`
/// theory: over GF(2) the identity checked is
/// `F00 + G00 = d00_A H00 + H00 d00_B`, with `h` running `A -> B` like the
/// maps themselves.
pub fn is_chain_homotopy00(
    source: &FilteredComplex,
    target: &FilteredComplex,
    f: &FilteredMorphism,
    g: &FilteredMorphism,
    h: &FilteredMorphism,
) -> bool {
    let fm = f.layer_matrix((0, 0), source, target);
    let gm = g.layer_matrix((0, 0), source, target);
    let hm = h.layer_matrix((0, 0), source, target);
    let d_a = source.layer_matrix((0, 0));
    let d_b = target.layer_matrix((0, 0));
    fm.add(&gm) == d_a.mul(&hm).add(&hm.mul(&d_b))
}

/// Echelon rows over GF(2), each carrying a coefficient row that records how
/// it was assembled; used to express cycles in a chosen homology basis.
struct CosetSolver {
    rows: Vec<(Vec<u128>, Vec<u128>, usize)>,
    coeff_words: usize,
}

impl CosetSolver {
    fn new(coeff_bits: usize) -> CosetSolver {
        CosetSolver {
            rows: Vec::new(),
            coeff_words: coeff_bits.div_ceil(128).max(1),
        }
    }

    fn reduce(&self, chain: &mut Vec<u128>, coeff: &mut Vec<u128>) {
        for (rc, rcoef, pivot) in &self.rows {
            if row_get(chain, *pivot) {
                row_xor(chain, rc);
                row_xor(coeff, rcoef);
            }
        }
    }

    /// Inserts the pair if the chain is independent; returns whether it was.
    fn insert(&mut self, mut chain: Vec<u128>, mut coeff: Vec<u128>) -> bool {
        self.reduce(&mut chain, &mut coeff);
        match row_first_set(&chain) {
            Some(pivot) => {
                self.rows.push((chain, coeff, pivot));
                true
            }
            None => false,
        }
    }

    /// Coefficients of `chain` over the recorded rows, or `None` when it is
    /// outside their span.
    fn coords(&self, chain: &[u128]) -> Option<Vec<u128>> {
        let mut c = chain.to_vec();
        let mut coeff = vec![0u128; self.coeff_words];
        self.reduce(&mut c, &mut coeff);
        row_is_zero(&c).then_some(coeff)
    }
}

/// Basis data for the `(0,0)` homology of one complex: representative
/// cycles plus a solver that expresses any cycle in that basis.
struct Homology00Basis {
    rank: usize,
    reps: Vec<Vec<u128>>,
    solver: CosetSolver,
}

fn homology00_basis(c: &FilteredComplex) -> Homology00Basis {
    let d = c.layer_matrix((0, 0));
    let n = c.dim();
    let words = n.div_ceil(128).max(1);
    // Tracked elimination of the rows of d: tracker rows with a zero image
    // form a kernel basis for x -> x d; nonzero reduced rows span the image.
    let mut echelon: Vec<(Vec<u128>, Vec<u128>, usize)> = Vec::new();
    let mut kernel: Vec<Vec<u128>> = Vec::new();
    let mut boundaries: Vec<Vec<u128>> = Vec::new();
    for r in 0..n {
        let mut data = d.words[r].clone();
        let mut tracker = vec![0u128; words];
        row_set(&mut tracker, r);
        for (erow, etrk, pivot) in &echelon {
            if row_get(&data, *pivot) {
                row_xor(&mut data, erow);
                row_xor(&mut tracker, etrk);
            }
        }
        match row_first_set(&data) {
            Some(pivot) => {
                boundaries.push(data.clone());
                echelon.push((data, tracker, pivot));
            }
            None => kernel.push(tracker),
        }
    }
    // Homology representatives: kernel vectors independent of boundaries.
    let mut solver = CosetSolver::new(n.max(1));
    for b in &boundaries {
        solver.insert(b.clone(), vec![0u128; solver.coeff_words]);
    }
    let mut reps = Vec::new();
    for z in kernel {
        let mut coeff = vec![0u128; solver.coeff_words];
        row_set(&mut coeff, reps.len());
        if solver.insert(z.clone(), coeff) {
            reps.push(z);
        }
    }
    Homology00Basis {
        rank: reps.len(),
        reps,
        solver,
    }
}

/// A morphism's action on `(0,0)` window homology, as a matrix between the
/// chosen bases. The source window is `(a, b)` on the source complex; the
/// target window is shifted by the morphism shift.
pub struct InducedMap {
    pub source_rank: usize,
    pub target_rank: usize,
    pub matrix: BitMat,
}

impl InducedMap {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source_rank
    }
}

/// Restricts the `(0,0)` layer of `m` to the window pair and reads off the
/// induced map on `(0,0)` homology. Verifies the premises: `m` validates,
/// window bounds avoid both spectra, every representative cycle maps to a
/// cycle, and every image is expressible in the target homology basis.
pub fn induced_map(
    source: &FilteredComplex,
    target: &FilteredComplex,
    m: &FilteredMorphism,
    a: &Rat,
    b: &Rat,
) -> Result<InducedMap, FloerError> {
    validate_morphism(source, target, m)?;
    let w1 = source.window(a, b)?;
    let w2 = target.window(&(a + &m.shift), &(b + &m.shift))?;
    // Restricted (0,0) matrix between window chain spaces, indexed by name.
    let mut restricted = BitMat::zero(w1.dim(), w2.dim());
    for e in &m.entries {
        if e.label != (0, 0) {
            continue;
        }
        let (Some(i), Some(j)) = (
            w1.index_of(&source.generators[e.src].name),
            w2.index_of(&target.generators[e.dst].name),
        ) else {
            continue;
        };
        restricted.set(i, j, true);
    }
    let h1 = homology00_basis(&w1);
    let h2 = homology00_basis(&w2);
    let d2 = w2.layer_matrix((0, 0));
    let mut matrix = BitMat::zero(h1.rank, h2.rank);
    for (i, rep) in h1.reps.iter().enumerate() {
        let image = restricted.apply_to_row(rep);
        if !row_is_zero(&d2.apply_to_row(&image)) {
            return Err(FloerError::NotChainMap(format!(
                "induced image of homology class {i} is not a cycle"
            )));
        }
        let coords = h2.solver.coords(&image).ok_or_else(|| {
            FloerError::ShapeMismatch(format!(
                "induced image of homology class {i} escapes the target basis"
            ))
        })?;
        for jj in 0..h2.rank {
            if row_get(&coords, jj) {
                matrix.set(i, jj, true);
            }
        }
    }
    Ok(InducedMap {
        source_rank: h1.rank,
        target_rank: h2.rank,
        matrix,
    })
}

/// Outcome of the one-sided-inverse injectivity argument on window homology
/// for a concrete pair of morphisms `f: A -> B`, `g: B -> A` and a window
/// `(a, b)`. The comparison target for "the composition is the identity" is
/// the canonical window-shift map of `A` at the combined shift, which is the
/// plain identity matrix when both shifts vanish.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SkeletonReport {
    pub shapes_ok: bool,
    pub f_valid: bool,
    pub g_valid: bool,
    pub window: (String, String),
    pub source_rank: usize,
    pub middle_rank: usize,
    pub end_rank: usize,
    pub f_rank: usize,
    pub g_rank: usize,
    pub composed_rank: usize,
    pub canonical_rank: usize,
    /// The composed induced map equals the canonical shift map.
    pub composed_is_canonical: bool,
    pub canonical_injective: bool,
    pub f_injective: bool,
    /// `composed_is_canonical && canonical_injective` implies `f_injective`.
    pub implication_holds: bool,
    pub notes: Vec<String>,
}

/// Verifies the injectivity skeleton on window homology: when `g` after `f`
/// induces the canonical window-shift map (the identity for shift-zero
/// morphisms) and that canonical map is injective, then the map induced by
/// `f` must be injective. Premises and conclusion are reported separately so
/// a failed premise shows up as such rather than as a false theorem.
pub fn theorem_skeleton_check(
    cplus: &FilteredComplex,
    cminus: &FilteredComplex,
    f: &FilteredMorphism,
    g: &FilteredMorphism,
    a: &Rat,
    b: &Rat,
) -> SkeletonReport {
    let mut notes = Vec::new();
    let window = (fmt_rat(a), fmt_rat(b));
    let shapes_ok = f
        .entries
        .iter()
        .all(|e| e.src < cplus.dim() && e.dst < cminus.dim())
        && g.entries
            .iter()
            .all(|e| e.src < cminus.dim() && e.dst < cplus.dim());
    let mut report = SkeletonReport {
        shapes_ok,
        f_valid: false,
        g_valid: false,
        window,
        source_rank: 0,
        middle_rank: 0,
        end_rank: 0,
        f_rank: 0,
        g_rank: 0,
        composed_rank: 0,
        canonical_rank: 0,
        composed_is_canonical: false,
        canonical_injective: false,
        f_injective: false,
        implication_holds: true,
        notes: Vec::new(),
    };
    if !shapes_ok {
        report
            .notes
            .push("morphism entries reference generators outside the complexes".into());
        return report;
    }
    report.f_valid = match validate_morphism(cplus, cminus, f) {
        Ok(()) => true,
        Err(e) => {
            notes.push(format!("f invalid: {e}"));
            false
        }
    };
    report.g_valid = match validate_morphism(cminus, cplus, g) {
        Ok(()) => true,
        Err(e) => {
            notes.push(format!("g invalid: {e}"));
            false
        }
    };
    if !(report.f_valid && report.g_valid) {
        report.notes = notes;
        return report;
    }
    let mid = a + &f.shift;
    let mid_hi = b + &f.shift;
    let run = || -> Result<(InducedMap, InducedMap, InducedMap), FloerError> {
        let fi = induced_map(cplus, cminus, f, a, b)?;
        let gi = induced_map(cminus, cplus, g, &mid, &mid_hi)?;
        let total_shift = &f.shift + &g.shift;
        let canonical = induced_map(
            cplus,
            cplus,
            &FilteredMorphism {
                shift: total_shift,
                entries: FilteredMorphism::identity(cplus).entries,
            },
            a,
            b,
        )?;
        Ok((fi, gi, canonical))
    };
    let (fi, gi, canonical) = match run() {
        Ok(t) => t,
        Err(e) => {
            notes.push(format!("induced maps unavailable: {e}"));
            report.notes = notes;
            return report;
        }
    };
    let composed = fi.matrix.mul(&gi.matrix);
    report.source_rank = fi.source_rank;
    report.middle_rank = fi.target_rank;
    report.end_rank = gi.target_rank;
    report.f_rank = fi.rank();
    report.g_rank = gi.rank();
    report.composed_rank = composed.rank();
    report.canonical_rank = canonical.rank();
    report.composed_is_canonical = composed == canonical.matrix;
    report.canonical_injective = canonical.rank() == canonical.source_rank;
    report.f_injective = fi.is_injective();
    report.implication_holds =
        !(report.composed_is_canonical && report.canonical_injective) || report.f_injective;
    if report.composed_is_canonical {
        notes.push("g after f induces the canonical window-shift map".into());
    } else {
        notes.push("g after f differs from the canonical window-shift map".into());
    }
    report.notes = notes;
    report
}

#[derive(Debug, Clone, Copy)]
pub struct RandomComplexParams {
    pub pieces: usize,
    /// Include pieces whose arrows live in nonzero layers.
    pub mixed_layers: bool,
    /// Action values land on the grid `units / denom`.
    pub denom: i64,
}

impl Default for RandomComplexParams {
    fn default() -> Self {
        RandomComplexParams {
            pieces: 12,
            mixed_layers: true,
            denom: 64,
        }
    }
}

/// Expected homology ranks of a generated complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomComplexStats {
    pub h00: usize,
    pub h_total: usize,
}

/// Builds a valid random complex as a disjoint sum of standard pieces:
/// isolated generators, arrows in the `(0,0)` or an off layer, diamonds
/// whose two sides split across layers (so the mixed identities cancel
/// nontrivially), and all-`(0,0)` diamonds and 3-cubes. Returns the complex
/// with its expected `(0,0)` and total homology ranks.
pub fn random_complex(
    seed: u64,
    params: &RandomComplexParams,
) -> (FilteredComplex, RandomComplexStats) {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut generators = Vec::new();
    let mut arrows = Vec::new();
    let mut stats = RandomComplexStats { h00: 0, h_total: 0 };
    let off_labels: [Label; 3] = [(1, 0), (0, 1), (1, 1)];

    for p in 0..params.pieces {
        let base: i64 = rng.gen_range(0..=192);
        let denom = params.denom;
        let level = |lvl: i64, rng: &mut rand_chacha::ChaCha8Rng| {
            Rat::new((base + 16 * lvl + rng.gen_range(0..4)).into(), denom.into())
        };
        let start = generators.len();
        let mut kind = rng.gen_range(0..7u8);
        if !params.mixed_layers && matches!(kind, 2 | 4 | 5) {
            kind = 1;
        }
        match kind {
            0 => {
                generators.push(Generator {
                    name: format!("p{p}_pt"),
                    action: level(0, &mut rng),
                });
                stats.h00 += 1;
                stats.h_total += 1;
            }
            1 | 2 => {
                let bottom = level(0, &mut rng);
                let top = level(1, &mut rng);
                generators.push(Generator {
                    name: format!("p{p}_lo"),
                    action: bottom,
                });
                generators.push(Generator {
                    name: format!("p{p}_hi"),
                    action: top,
                });
                let label = if kind == 1 {
                    (0, 0)
                } else {
                    off_labels[rng.gen_range(0..off_labels.len())]
                };
                arrows.push(Arrow {
                    src: start + 1,
                    dst: start,
                    label,
                });
                // Off-layer arrows are invisible to the (0,0) theory.
                stats.h00 += if label == (0, 0) { 0 } else { 2 };
            }
            3 | 4 | 5 => {
                let acts = [
                    level(0, &mut rng),
                    level(1, &mut rng),
                    level(1, &mut rng),
                    level(2, &mut rng),
                ];
                for (n, suffix) in ["bot", "m1", "m2", "top"].iter().enumerate() {
                    generators.push(Generator {
                        name: format!("p{p}_{suffix}"),
                        action: acts[n].clone(),
                    });
                }
                let (bot, m1, m2, top) = (start, start + 1, start + 2, start + 3);
                let off = off_labels[rng.gen_range(0..2)]; // (1,0) or (0,1)
                let sides: [(Label, Label); 2] = match kind {
                    3 => [((0, 0), (0, 0)), ((0, 0), (0, 0))],
                    // One side drops a layer going in, the other coming out:
                    // the two composite paths share the total label and
                    // cancel, exercising the mixed identities.
                    4 => [((0, 0), off), (off, (0, 0))],
                    // Both (0,0) layers empty: full rank in (0,0) homology.
                    _ => [((1, 0), (0, 1)), ((0, 1), (1, 0))],
                };
                arrows.push(Arrow {
                    src: top,
                    dst: m1,
                    label: sides[0].0,
                });
                arrows.push(Arrow {
                    src: m1,
                    dst: bot,
                    label: sides[0].1,
                });
                arrows.push(Arrow {
                    src: top,
                    dst: m2,
                    label: sides[1].0,
                });
                arrows.push(Arrow {
                    src: m2,
                    dst: bot,
                    label: sides[1].1,
                });
                stats.h00 += match kind {
                    3 => 0,
                    4 => 0, // d00 keeps one full side: rank 2
                    _ => 4, // d00 empty
                };
            }
            _ => {
                // 3-cube: vertices are subsets of {0,1,2}; the differential
                // drops one element at a time, acyclic over GF(2).
                for s in 0..8usize {
                    generators.push(Generator {
                        name: format!("p{p}_c{s}"),
                        action: level(s.count_ones() as i64, &mut rng),
                    });
                }
                for s in 0..8usize {
                    for bit in 0..3 {
                        if s >> bit & 1 == 1 {
                            arrows.push(Arrow {
                                src: start + s,
                                dst: start + (s & !(1 << bit)),
                                label: (0, 0),
                            });
                        }
                    }
                }
            }
        }
    }
    let c = FilteredComplex::new(generators, arrows).expect("generated pieces are structural");
    debug_assert!(c.validate().ok);
    (c, stats)
}
