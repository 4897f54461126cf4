//! Canonical data model for undirected, directed, and submodular hypergraphs,
//! together with exact evaluators for cuts and Laplacian quadratic forms and a
//! brute-force all-cuts oracle.
//!
//! Conventions used throughout the crate:
//!
//! * Vertices are `0..n`.
//! * A directed hyperedge `(tail, head)` crosses a cut `S` iff
//!   `tail ∩ S ≠ ∅` and `head ⊄ S`. This is the convention implied by the
//!   directed quadratic form: the edge term is
//!   `w · (max_{u ∈ tail} x_u − min_{v ∈ head} x_v)₊²`, which is nonzero at
//!   `x = 1_S` exactly under that condition.
//! * Cut evaluators sum edge contributions in edge order, so two hypergraphs
//!   whose edges cross the same cuts with the same weights produce
//!   bit-identical cut values.

use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of a vertex inside its owning hypergraph; always `< n`.
pub type VertexId = usize;

/// Default cap on `n` for any operation that enumerates all `2^n` cuts.
pub const DEFAULT_ENUM_LIMIT: usize = 20;

/// Hard ceiling for the enumeration cap; the environment override cannot
/// raise the limit past this.
pub const MAX_ENUM_LIMIT: usize = 24;

/// Current cap on `n` for `2^n` cut enumeration.
///
/// Reads `HYPERSPARSE_ENUM_LIMIT` on every call (cheap, and keeps tests able
/// to vary it); invalid or missing values fall back to
/// [`DEFAULT_ENUM_LIMIT`], and the result is clamped to [`MAX_ENUM_LIMIT`].
pub fn enumeration_limit() -> usize {
    match std::env::var("HYPERSPARSE_ENUM_LIMIT") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(k) => k.min(MAX_ENUM_LIMIT),
            Err(_) => DEFAULT_ENUM_LIMIT,
        },
        Err(_) => DEFAULT_ENUM_LIMIT,
    }
}

fn check_enum_limit(n: usize) -> Result<()> {
    let limit = enumeration_limit();
    if n > limit {
        return Err(Error::EnumerationLimit { n, limit });
    }
    Ok(())
}

/// A subset of `[0, n)` with bitset semantics; the query type for every cut
/// evaluator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CutSet {
    n: usize,
    words: Vec<u64>,
}

impl CutSet {
    /// The empty subset of `[0, n)`.
    pub fn empty(n: usize) -> Self {
        CutSet {
            n,
            words: vec![0; n.div_ceil(64).max(1)],
        }
    }

    /// The full subset `[0, n)`.
    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    /// Subset given by the low `n` bits of `mask` (requires `n ≤ 64`).
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 64, "from_mask requires n <= 64");
        let keep = if n == 64 { !0 } else { (1u64 << n) - 1 };
        let mut s = Self::empty(n);
        s.words[0] = mask & keep;
        s
    }

    /// Subset from explicit members; rejects out-of-range vertices.
    pub fn from_members<I: IntoIterator<Item = VertexId>>(n: usize, members: I) -> Result<Self> {
        let mut s = Self::empty(n);
        for v in members {
            if v >= n {
                return Err(Error::IndexOutOfRange {
                    what: "cut member",
                    index: v,
                    bound: n,
                });
            }
            s.insert(v);
        }
        Ok(s)
    }

    /// Universe size.
    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v < self.n && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn insert(&mut self, v: VertexId) {
        debug_assert!(v < self.n);
        self.words[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: VertexId) {
        debug_assert!(v < self.n);
        self.words[v / 64] &= !(1 << (v % 64));
    }

    /// Number of members.
    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// `V − S` within the same universe.
    pub fn complement(&self) -> Self {
        let mut out = self.clone();
        for (i, w) in out.words.iter_mut().enumerate() {
            *w = !*w;
            // clear bits at or past n
            let base = i * 64;
            if base + 64 > self.n {
                let used = self.n.saturating_sub(base);
                *w &= if used == 0 {
                    0
                } else if used == 64 {
                    !0
                } else {
                    (1u64 << used) - 1
                };
            }
        }
        out
    }

    /// Members in ascending order.
    pub fn members(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.n).filter(move |&v| self.contains(v))
    }

    /// True iff some vertex of `verts` is a member.
    pub fn intersects(&self, verts: &[VertexId]) -> bool {
        verts.iter().any(|&v| self.contains(v))
    }

    /// True iff every vertex of `verts` is a member.
    pub fn contains_all(&self, verts: &[VertexId]) -> bool {
        verts.iter().all(|&v| self.contains(v))
    }

    /// Hex rendering of the bitmask, `0x`-prefixed, most significant word
    /// first. Used in reports.
    pub fn to_hex(&self) -> String {
        let mut out = String::from("0x");
        let mut started = false;
        for w in self.words.iter().rev() {
            if started {
                out.push_str(&format!("{w:016x}"));
            } else if *w != 0 || std::ptr::eq(w, &self.words[0]) {
                out.push_str(&format!("{w:x}"));
                started = true;
            }
        }
        out
    }
}

impl std::fmt::Debug for CutSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CutSet(n={}, {{", self.n)?;
        for (i, v) in self.members().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}})")
    }
}

/// Real test vector for a quadratic form; must have length `n` and finite
/// entries. Checked by the evaluators.
pub fn check_test_vector(x: &[f64], n: usize) -> Result<()> {
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            what: "test vector",
            expected: n,
            got: x.len(),
        });
    }
    if let Some(bad) = x.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite {
            what: format!("test vector entry {bad}"),
        });
    }
    Ok(())
}

/// An undirected hyperedge: a nonempty vertex set with a nonnegative weight.
#[derive(Clone, Debug, PartialEq)]
pub struct UndirectedHyperedge {
    /// Member vertices, sorted ascending, no duplicates.
    pub vertices: Vec<VertexId>,
    pub weight: f64,
}

impl UndirectedHyperedge {
    /// Builds an edge, sorting and deduplicating the vertex list.
    pub fn new(mut vertices: Vec<VertexId>, weight: f64) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        UndirectedHyperedge { vertices, weight }
    }

    /// True iff the edge is bichromatic under `s`: `s ∩ e ≠ ∅` and
    /// `s ∩ e ≠ e`.
    pub fn crosses(&self, s: &CutSet) -> bool {
        s.intersects(&self.vertices) && !s.contains_all(&self.vertices)
    }

    /// `w · (max_{u∈e} x_u − min_{v∈e} x_v)²`.
    pub fn quad_term(&self, x: &[f64]) -> f64 {
        let mut hi = f64::NEG_INFINITY;
        let mut lo = f64::INFINITY;
        for &v in &self.vertices {
            hi = hi.max(x[v]);
            lo = lo.min(x[v]);
        }
        let d = hi - lo;
        self.weight * d * d
    }
}

/// A directed hyperedge `(tail, head)`; the sets may overlap.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectedHyperedge {
    /// Tail vertices, sorted ascending, no duplicates.
    pub tail: Vec<VertexId>,
    /// Head vertices, sorted ascending, no duplicates.
    pub head: Vec<VertexId>,
    pub weight: f64,
}

impl DirectedHyperedge {
    pub fn new(mut tail: Vec<VertexId>, mut head: Vec<VertexId>, weight: f64) -> Self {
        tail.sort_unstable();
        tail.dedup();
        head.sort_unstable();
        head.dedup();
        DirectedHyperedge { tail, head, weight }
    }

    /// True iff `tail ∩ S ≠ ∅` and `head ⊄ S`.
    pub fn crosses(&self, s: &CutSet) -> bool {
        s.intersects(&self.tail) && !s.contains_all(&self.head)
    }

    /// `w · (max_{u∈tail} x_u − min_{v∈head} x_v)₊²`.
    pub fn quad_term(&self, x: &[f64]) -> f64 {
        let mut hi = f64::NEG_INFINITY;
        for &v in &self.tail {
            hi = hi.max(x[v]);
        }
        let mut lo = f64::INFINITY;
        for &v in &self.head {
            lo = lo.min(x[v]);
        }
        let d = (hi - lo).max(0.0);
        self.weight * d * d
    }
}

/// Weighted undirected hypergraph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq)]
pub struct UndirectedHypergraph {
    pub n: usize,
    pub edges: Vec<UndirectedHyperedge>,
}

/// Weighted directed hypergraph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectedHypergraph {
    pub n: usize,
    pub edges: Vec<DirectedHyperedge>,
}

/// Property flags a splitting function claims for itself. Claims are
/// trusted by constructions and certified separately by the `submod`
/// checkers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Claims {
    pub submodular: bool,
    pub monotone: bool,
    pub symmetric: bool,
}

type OracleFn = dyn Fn(u64) -> f64 + Send + Sync;

/// Evaluation oracle for one hyperedge's set function `g_e`.
///
/// The oracle maps a bitmask over positions of the sorted support to a
/// nonnegative real. Position `i` corresponds to `support()[i]`, so the mask
/// is independent of the ambient vertex numbering.
#[derive(Clone)]
pub struct SplittingFunction {
    support: Vec<VertexId>,
    oracle: Arc<OracleFn>,
    pub claims: Claims,
    name: String,
}

impl SplittingFunction {
    /// Builds a splitting function from an oracle over support-position
    /// masks. The support is sorted and deduplicated; at most 63 members so
    /// subsets fit in a `u64` mask.
    pub fn new<F>(
        name: impl Into<String>,
        support: Vec<VertexId>,
        claims: Claims,
        oracle: F,
    ) -> Result<Self>
    where
        F: Fn(u64) -> f64 + Send + Sync + 'static,
    {
        let mut support = support;
        support.sort_unstable();
        support.dedup();
        if support.is_empty() {
            return Err(Error::InvalidArgument(
                "splitting function support is empty".into(),
            ));
        }
        if support.len() > 63 {
            return Err(Error::InvalidArgument(format!(
                "splitting function support has {} members; at most 63 supported",
                support.len()
            )));
        }
        Ok(SplittingFunction {
            support,
            oracle: Arc::new(oracle),
            claims,
            name: name.into(),
        })
    }

    /// Table-backed splitting function: `table[mask]` holds the value for
    /// each of the `2^k` subsets of the sorted support.
    pub fn from_table(
        name: impl Into<String>,
        support: Vec<VertexId>,
        claims: Claims,
        table: Vec<f64>,
    ) -> Result<Self> {
        let k = {
            let mut s = support.clone();
            s.sort_unstable();
            s.dedup();
            s.len()
        };
        if table.len() != 1usize << k {
            return Err(Error::InvalidArgument(format!(
                "splitting table has {} entries, expected 2^{k}",
                table.len()
            )));
        }
        let table = Arc::new(table);
        Self::new(name, support, claims, move |mask| table[mask as usize])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Sorted support vertices.
    pub fn support(&self) -> &[VertexId] {
        &self.support
    }

    pub fn arity(&self) -> usize {
        self.support.len()
    }

    /// Evaluates on a subset given as a mask over support positions.
    pub fn eval_mask(&self, mask: u64) -> f64 {
        (self.oracle)(mask)
    }

    /// Evaluates on `S ∩ support` for a global cut set `S`.
    pub fn eval_cut(&self, s: &CutSet) -> f64 {
        self.eval_mask(self.cut_mask(s))
    }

    /// Mask over support positions of `S ∩ support`.
    pub fn cut_mask(&self, s: &CutSet) -> u64 {
        let mut mask = 0u64;
        for (i, &v) in self.support.iter().enumerate() {
            if s.contains(v) {
                mask |= 1 << i;
            }
        }
        mask
    }

    /// Full evaluation table over all `2^k` subsets of the support.
    pub fn table(&self) -> Vec<f64> {
        (0..1u64 << self.arity())
            .map(|m| self.eval_mask(m))
            .collect()
    }

    /// Same oracle with every value scaled by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        let inner = Arc::clone(&self.oracle);
        SplittingFunction {
            support: self.support.clone(),
            oracle: Arc::new(move |mask| c * inner(mask)),
            claims: self.claims,
            name: self.name.clone(),
        }
    }
}

impl std::fmt::Debug for SplittingFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SplittingFunction")
            .field("name", &self.name)
            .field("support", &self.support)
            .field("claims", &self.claims)
            .finish()
    }
}

/// Hypergraph whose edges are splitting-function oracles.
#[derive(Clone, Debug)]
pub struct SubmodularHypergraph {
    pub n: usize,
    pub edges: Vec<SplittingFunction>,
}

fn check_cut_dim(cut: &CutSet, n: usize) -> Result<()> {
    if cut.universe() != n {
        return Err(Error::DimensionMismatch {
            what: "cut set universe",
            expected: n,
            got: cut.universe(),
        });
    }
    Ok(())
}

impl UndirectedHypergraph {
    pub fn new(n: usize, edges: Vec<UndirectedHyperedge>) -> Self {
        UndirectedHypergraph { n, edges }
    }

    /// Total weight of edges crossing `s`.
    pub fn cut_value(&self, s: &CutSet) -> Result<f64> {
        check_cut_dim(s, self.n)?;
        // + 0.0 folds the -0.0 an empty sum produces back to +0.0
        Ok(self
            .edges
            .iter()
            .map(|e| if e.crosses(s) { e.weight } else { 0.0 })
            .sum::<f64>()
            + 0.0)
    }

    /// Laplacian quadratic form `Σ_e w_e · max_{u,v∈e}(x_u − x_v)²`.
    pub fn quad_form(&self, x: &[f64]) -> Result<f64> {
        check_test_vector(x, self.n)?;
        Ok(self.edges.iter().map(|e| e.quad_term(x)).sum::<f64>() + 0.0)
    }

    /// Exact cut values for all `2^n` subsets, indexed by bitmask.
    pub fn all_cut_values(&self) -> Result<Vec<f64>> {
        check_enum_limit(self.n)?;
        all_cuts_by_mask(self.n, |s| self.cut_value(s).expect("dimension checked"))
    }

    /// Human-readable invariant violations; empty iff well formed.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.n == 0 {
            out.push("vertex count is zero".to_string());
        }
        for (i, e) in self.edges.iter().enumerate() {
            if e.vertices.is_empty() {
                out.push(format!("edge {i}: empty vertex set"));
            }
            if e.weight < 0.0 {
                out.push(format!("edge {i}: negative weight"));
            }
            if !e.weight.is_finite() {
                out.push(format!("edge {i}: non-finite weight"));
            }
            if e.vertices.windows(2).any(|w| w[0] >= w[1]) {
                out.push(format!(
                    "edge {i}: vertex list not sorted or has duplicates"
                ));
            }
            if let Some(&v) = e.vertices.iter().find(|&&v| v >= self.n) {
                out.push(format!("edge {i}: bad vertex id {v} (n = {})", self.n));
            }
        }
        out
    }
}

impl DirectedHypergraph {
    pub fn new(n: usize, edges: Vec<DirectedHyperedge>) -> Self {
        DirectedHypergraph { n, edges }
    }

    /// Total weight of edges with `tail ∩ S ≠ ∅` and `head ⊄ S`.
    pub fn cut_value(&self, s: &CutSet) -> Result<f64> {
        check_cut_dim(s, self.n)?;
        // + 0.0 folds the -0.0 an empty sum produces back to +0.0
        Ok(self
            .edges
            .iter()
            .map(|e| if e.crosses(s) { e.weight } else { 0.0 })
            .sum::<f64>()
            + 0.0)
    }

    /// Directed quadratic form
    /// `Σ_e w_e · (max_{u∈tail} x_u − min_{v∈head} x_v)₊²`.
    pub fn quad_form(&self, x: &[f64]) -> Result<f64> {
        check_test_vector(x, self.n)?;
        Ok(self.edges.iter().map(|e| e.quad_term(x)).sum::<f64>() + 0.0)
    }

    pub fn all_cut_values(&self) -> Result<Vec<f64>> {
        check_enum_limit(self.n)?;
        all_cuts_by_mask(self.n, |s| self.cut_value(s).expect("dimension checked"))
    }

    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.n == 0 {
            out.push("vertex count is zero".to_string());
        }
        for (i, e) in self.edges.iter().enumerate() {
            if e.tail.is_empty() {
                out.push(format!("edge {i}: empty tail"));
            }
            if e.head.is_empty() {
                out.push(format!("edge {i}: empty head"));
            }
            if e.weight < 0.0 {
                out.push(format!("edge {i}: negative weight"));
            }
            if !e.weight.is_finite() {
                out.push(format!("edge {i}: non-finite weight"));
            }
            for (side, verts) in [("tail", &e.tail), ("head", &e.head)] {
                if verts.windows(2).any(|w| w[0] >= w[1]) {
                    out.push(format!("edge {i}: {side} not sorted or has duplicates"));
                }
                if let Some(&v) = verts.iter().find(|&&v| v >= self.n) {
                    out.push(format!(
                        "edge {i}: bad vertex id {v} in {side} (n = {})",
                        self.n
                    ));
                }
            }
        }
        out
    }
}

impl SubmodularHypergraph {
    pub fn new(n: usize, edges: Vec<SplittingFunction>) -> Self {
        SubmodularHypergraph { n, edges }
    }

    /// `Σ_e g_e(S ∩ e)`; rejects oracle outputs that are negative or
    /// non-finite, naming the offending edge.
    pub fn cut_value(&self, s: &CutSet) -> Result<f64> {
        check_cut_dim(s, self.n)?;
        let mut total = 0.0;
        for (i, e) in self.edges.iter().enumerate() {
            let v = e.eval_cut(s);
            if !v.is_finite() || v < 0.0 {
                return Err(Error::OracleContract {
                    edge: i,
                    detail: format!("returned {v}"),
                });
            }
            total += v;
        }
        Ok(total)
    }

    pub fn all_cut_values(&self) -> Result<Vec<f64>> {
        check_enum_limit(self.n)?;
        let mut out = Vec::with_capacity(1usize << self.n);
        for mask in 0..1u64 << self.n {
            out.push(self.cut_value(&CutSet::from_mask(self.n, mask))?);
        }
        Ok(out)
    }

    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.n == 0 {
            out.push("vertex count is zero".to_string());
        }
        for (i, e) in self.edges.iter().enumerate() {
            if let Some(&v) = e.support().iter().find(|&&v| v >= self.n) {
                out.push(format!("edge {i}: bad vertex id {v} (n = {})", self.n));
            }
        }
        out
    }
}

fn all_cuts_by_mask(n: usize, mut f: impl FnMut(&CutSet) -> f64) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(1usize << n);
    for mask in 0..1u64 << n {
        out.push(f(&CutSet::from_mask(n, mask)));
    }
    Ok(out)
}

/// Uniform view of a hypergraph as "edges contributing weight to cuts",
/// shared by the sensitivity sampler and the exhaustive verifiers.
///
/// For undirected and directed hypergraphs an edge contributes its full
/// weight when it crosses the cut and nothing otherwise; for submodular
/// hypergraphs the contribution is `g_e(S ∩ e)`.
pub trait CutInstance: Clone {
    fn vertex_count(&self) -> usize;
    fn edge_count(&self) -> usize;

    /// Contribution of edge `edge` to the cut value at `cut`.
    fn cut_contribution(&self, edge: usize, cut: &CutSet) -> f64;

    /// Weight carried by the edge before any resampling; 1 for splitting
    /// functions (their scale lives inside the oracle).
    fn base_weight(&self, edge: usize) -> f64;

    /// Reweighted sub-hypergraph keeping exactly the listed edges. Weights
    /// replace the originals (they are not multiplied on top).
    fn reweighted(&self, kept: &[(usize, f64)]) -> Self;

    /// Cut value as the sum of contributions in edge order.
    fn cut_total(&self, cut: &CutSet) -> f64 {
        (0..self.edge_count())
            .map(|e| self.cut_contribution(e, cut))
            .sum::<f64>()
            + 0.0
    }
}

impl CutInstance for UndirectedHypergraph {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn cut_contribution(&self, edge: usize, cut: &CutSet) -> f64 {
        let e = &self.edges[edge];
        if e.crosses(cut) {
            e.weight
        } else {
            0.0
        }
    }

    fn base_weight(&self, edge: usize) -> f64 {
        self.edges[edge].weight
    }

    fn reweighted(&self, kept: &[(usize, f64)]) -> Self {
        let edges = kept
            .iter()
            .map(|&(i, w)| UndirectedHyperedge {
                vertices: self.edges[i].vertices.clone(),
                weight: w,
            })
            .collect();
        UndirectedHypergraph { n: self.n, edges }
    }
}

impl CutInstance for DirectedHypergraph {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn cut_contribution(&self, edge: usize, cut: &CutSet) -> f64 {
        let e = &self.edges[edge];
        if e.crosses(cut) {
            e.weight
        } else {
            0.0
        }
    }

    fn base_weight(&self, edge: usize) -> f64 {
        self.edges[edge].weight
    }

    fn reweighted(&self, kept: &[(usize, f64)]) -> Self {
        let edges = kept
            .iter()
            .map(|&(i, w)| DirectedHyperedge {
                tail: self.edges[i].tail.clone(),
                head: self.edges[i].head.clone(),
                weight: w,
            })
            .collect();
        DirectedHypergraph { n: self.n, edges }
    }
}

impl CutInstance for SubmodularHypergraph {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn cut_contribution(&self, edge: usize, cut: &CutSet) -> f64 {
        self.edges[edge].eval_cut(cut)
    }

    fn base_weight(&self, _edge: usize) -> f64 {
        1.0
    }

    fn reweighted(&self, kept: &[(usize, f64)]) -> Self {
        let edges = kept.iter().map(|&(i, c)| self.edges[i].scaled(c)).collect();
        SubmodularHypergraph { n: self.n, edges }
    }
}
