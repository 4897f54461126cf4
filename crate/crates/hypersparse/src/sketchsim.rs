//! Packing of `k` undirected hypergraphs on a shared `n`-vertex set into one
//! directed hypergraph on `n + k` vertices, and recovery of each source cut
//! value from three directed-cut queries by inclusion-exclusion, with a
//! noisy-oracle harness quantifying the additive `3ε|E_i|` bound.
//!
//! Encoding: vertices `0..n` are the shared set `V`, vertices `n..n+k` are
//! the markers `w_0..w_{k−1}`; every edge `e ∈ E_i` becomes the directed
//! edge `(tail = e, head = {w_i})` with weight 1. Under the crossing
//! convention of [`hypercore`](crate::hypercore) the three queries
//!
//! * `Q1 = S ∪ (W − {w_i})` counts `A = |{e ∈ E_i : e ∩ S ≠ ∅}|`,
//! * `Q2 = (V − S) ∪ (W − {w_i})` counts `B = |{e ∈ E_i : e ∩ S ≠ e}|`,
//! * `Q3 = V ∪ (W − {w_i})` counts `T = |E_i|`,
//!
//! and `A + B − T = cut_{H_i}(S)`. Edges tagged `j ≠ i` never cross any of
//! the three queries, so packed hypergraphs cannot interfere.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hypercore::{CutSet, DirectedHyperedge, DirectedHypergraph, UndirectedHypergraph};

/// The packed directed hypergraph plus its vertex-role and edge-tag maps.
#[derive(Clone, Debug)]
pub struct MultiEncoding {
    /// Directed hypergraph on `source_n + k` vertices, all weights 1.
    pub graph: DirectedHypergraph,
    /// Size of the shared vertex set `V`.
    pub source_n: usize,
    /// Number of packed hypergraphs (typically `k = n`).
    pub k: usize,
    /// Source hypergraph index of each edge, in edge order.
    pub tags: Vec<usize>,
}

impl MultiEncoding {
    /// Global vertex id of the marker `w_i`.
    pub fn marker(&self, i: usize) -> usize {
        self.source_n + i
    }

    /// Number of edges tagged `i`.
    pub fn edges_tagged(&self, i: usize) -> usize {
        self.tags.iter().filter(|&&t| t == i).count()
    }
}

/// Packs unweighted undirected hypergraphs, all on the same vertex count,
/// into one directed hypergraph. Rejects weighted edges (the encoding is
/// defined for the unweighted regime) and malformed inputs.
pub fn encode_multi(inputs: &[UndirectedHypergraph]) -> Result<MultiEncoding> {
    let k = inputs.len();
    if k == 0 {
        return Err(Error::InvalidArgument("no hypergraphs to encode".into()));
    }
    let n = inputs[0].n;
    let mut edges = Vec::new();
    let mut tags = Vec::new();
    for (i, h) in inputs.iter().enumerate() {
        if h.n != n {
            return Err(Error::DimensionMismatch {
                what: "packed hypergraph vertex count",
                expected: n,
                got: h.n,
            });
        }
        let violations = h.validate();
        if !violations.is_empty() {
            return Err(Error::InvalidArgument(format!(
                "hypergraph {i}: {}",
                violations.join("; ")
            )));
        }
        for (j, e) in h.edges.iter().enumerate() {
            if e.weight != 1.0 {
                return Err(Error::InvalidArgument(format!(
                    "hypergraph {i} edge {j}: weighted input (weight {}) rejected, the encoding is unweighted",
                    e.weight
                )));
            }
            edges.push(DirectedHyperedge {
                tail: e.vertices.clone(),
                head: vec![n + i],
                weight: 1.0,
            });
            tags.push(i);
        }
    }
    Ok(MultiEncoding {
        graph: DirectedHypergraph::new(n + k, edges),
        source_n: n,
        k,
        tags,
    })
}

/// The three recovery queries for index `i` and source cut `S ⊆ V`, as cut
/// sets over the packed vertex set `[0, n + k)`.
pub fn recovery_queries(
    i: usize,
    s: &CutSet,
    n: usize,
    k: usize,
) -> Result<(CutSet, CutSet, CutSet)> {
    if i >= k {
        return Err(Error::IndexOutOfRange {
            what: "packed hypergraph index",
            index: i,
            bound: k,
        });
    }
    if s.universe() != n {
        return Err(Error::DimensionMismatch {
            what: "source cut universe",
            expected: n,
            got: s.universe(),
        });
    }
    let mut base = CutSet::empty(n + k);
    for j in 0..k {
        if j != i {
            base.insert(n + j);
        }
    }
    let mut q1 = base.clone();
    for v in s.members() {
        q1.insert(v);
    }
    let mut q2 = base.clone();
    for v in 0..n {
        if !s.contains(v) {
            q2.insert(v);
        }
    }
    let mut q3 = base;
    for v in 0..n {
        q3.insert(v);
    }
    Ok((q1, q2, q3))
}

/// How a [`CutSketchOracle`] perturbs the true directed cut values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleMode {
    /// True cut values.
    Exact,
    /// Per-query multiplier drawn uniformly from `[1−ε, 1+ε]`,
    /// deterministic per `(query, seed)`.
    Random,
    /// `+ε` on every query except the `Q3`-shaped ones (all of `V` present,
    /// exactly one marker missing), which get `−ε`; this maximizes the
    /// recovery error of the inclusion-exclusion estimate.
    AdversarialCorner,
}

/// Simulates a `(1 ± ε)` cut sketch of the packed graph. Answers are
/// consistent: the same query always returns the same value, as a sketch is
/// a fixed data structure.
pub struct CutSketchOracle<'a> {
    graph: &'a DirectedHypergraph,
    source_n: usize,
    k: usize,
    pub epsilon: f64,
    mode: OracleMode,
    seed: u64,
}

/// Builds an oracle over the encoding's graph; `epsilon` must lie in
/// `[0, 1)` and is ignored by the exact mode.
pub fn noisy_oracle(
    enc: &MultiEncoding,
    epsilon: f64,
    mode: OracleMode,
    seed: u64,
) -> Result<CutSketchOracle<'_>> {
    if !(0.0..1.0).contains(&epsilon) {
        return Err(Error::InvalidConfig(format!(
            "oracle epsilon must be in [0,1), got {epsilon}"
        )));
    }
    Ok(CutSketchOracle {
        graph: &enc.graph,
        source_n: enc.source_n,
        k: enc.k,
        epsilon,
        mode,
        seed,
    })
}

fn fnv1a(words: impl IntoIterator<Item = u64>) -> u64 {
    let mut hash = 0xcbf29ce484222325u64;
    for w in words {
        for b in w.to_le_bytes() {
            hash ^= b as u64;
            hash = hash.wrapping_mul(0x100000001b3);
        }
    }
    hash
}

impl CutSketchOracle<'_> {
    /// Answer for one cut query over the packed vertex set.
    pub fn answer(&self, q: &CutSet) -> Result<f64> {
        let truth = self.graph.cut_value(q)?;
        Ok(match self.mode {
            OracleMode::Exact => truth,
            OracleMode::Random => {
                let h = fnv1a(
                    std::iter::once(q.universe() as u64)
                        .chain((0..q.universe()).map(|v| q.contains(v) as u64)),
                );
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ h);
                let mult = 1.0 - self.epsilon + 2.0 * self.epsilon * rng.random::<f64>();
                truth * mult
            }
            OracleMode::AdversarialCorner => {
                if self.is_q3_shaped(q) {
                    truth - self.epsilon * truth
                } else {
                    truth + self.epsilon * truth
                }
            }
        })
    }

    /// A query is `Q3`-shaped iff it contains all of `V` and misses exactly
    /// one marker. Classification is by shape, not provenance, so coinciding
    /// queries (e.g. `Q1` at `S = V`) stay consistent.
    fn is_q3_shaped(&self, q: &CutSet) -> bool {
        (0..self.source_n).all(|v| q.contains(v))
            && (0..self.k)
                .filter(|&j| !q.contains(self.source_n + j))
                .count()
                == 1
    }
}

/// Inclusion-exclusion recovery: `oracle(Q1) + oracle(Q2) − oracle(Q3)`.
/// Exact oracles recover `cut_{H_i}(S)` with integer equality; an `ε`-oracle
/// is off by at most `3ε|E_i|`.
pub fn recover_cut(
    oracle: &CutSketchOracle<'_>,
    enc: &MultiEncoding,
    i: usize,
    s: &CutSet,
) -> Result<f64> {
    let (q1, q2, q3) = recovery_queries(i, s, enc.source_n, enc.k)?;
    Ok(oracle.answer(&q1)? + oracle.answer(&q2)? - oracle.answer(&q3)?)
}

/// The three crossing counts behind the recovery, computed directly from
/// the edges tagged `i`: `A = |{e : e ∩ S ≠ ∅}|`, `B = |{e : e ∩ S ≠ e}|`,
/// `T = |E_i|`. Always satisfies `A + B − T = cut_{H_i}(S)`, and each count
/// equals the true directed cut value of the matching query.
pub fn crossing_census(enc: &MultiEncoding, i: usize, s: &CutSet) -> Result<(u64, u64, u64)> {
    if i >= enc.k {
        return Err(Error::IndexOutOfRange {
            what: "packed hypergraph index",
            index: i,
            bound: enc.k,
        });
    }
    if s.universe() != enc.source_n {
        return Err(Error::DimensionMismatch {
            what: "source cut universe",
            expected: enc.source_n,
            got: s.universe(),
        });
    }
    let mut a = 0;
    let mut b = 0;
    let mut t = 0;
    for (e, &tag) in enc.graph.edges.iter().zip(&enc.tags) {
        if tag != i {
            continue;
        }
        t += 1;
        if s.intersects(&e.tail) {
            a += 1;
        }
        if !s.contains_all(&e.tail) {
            b += 1;
        }
    }
    Ok((a, b, t))
}
