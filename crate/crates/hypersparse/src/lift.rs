//! Lifting of directed hypergraphs to undirected hypergraphs on `n² + 1`
//! vertices, of test vectors to `ℝ^{n²+1}`, and the inverse edge map.
//!
//! Vertex layout of the lifted space: `pair(u, v) ↦ u·n + v` and
//! `star ↦ n²`. A directed edge `(tail, head)` lifts to
//! `{pair(u, v) : u ∈ tail, v ∈ head} ∪ {star}` with the same weight; a test
//! vector `x` lifts to `ϑ(x)` with `ϑ(x)_{u,v} = max(x_u − x_v, 0)` and
//! `ϑ(x)_* = 0`. Both maps preserve every per-edge quadratic-form term
//! bit-exactly: the edge term on either side is
//! `w · (max_{tail} x − min_{head} x)₊²` computed from the same floats.

use crate::error::{Error, Result};
use crate::hypercore::{
    check_test_vector, CutSet, DirectedHyperedge, DirectedHypergraph, UndirectedHyperedge,
    UndirectedHypergraph,
};

/// A vertex of the lifted space: an ordered pair from `V × V` or the star.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftedVertexId {
    Pair(usize, usize),
    Star,
}

impl LiftedVertexId {
    /// Canonical embedding into `[0, n²]`.
    pub fn encode(self, n: usize) -> usize {
        match self {
            LiftedVertexId::Pair(u, v) => u * n + v,
            LiftedVertexId::Star => n * n,
        }
    }

    /// Inverse of [`encode`](Self::encode); rejects ids past `n²`.
    pub fn decode(id: usize, n: usize) -> Result<Self> {
        match id.cmp(&(n * n)) {
            std::cmp::Ordering::Less => Ok(LiftedVertexId::Pair(id / n, id % n)),
            std::cmp::Ordering::Equal => Ok(LiftedVertexId::Star),
            std::cmp::Ordering::Greater => Err(Error::IndexOutOfRange {
                what: "lifted vertex id",
                index: id,
                bound: n * n + 1,
            }),
        }
    }
}

/// An undirected hypergraph on `source_n² + 1` vertices produced by lifting;
/// every edge contains the star vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftedHypergraph {
    pub graph: UndirectedHypergraph,
    pub source_n: usize,
}

impl LiftedHypergraph {
    pub fn star(&self) -> usize {
        self.source_n * self.source_n
    }
}

/// Lifts one directed edge: `φ(e) = tail × head ∪ {star}`, same weight.
/// The output has exactly `|tail| · |head| + 1` vertices.
pub fn lift_edge(e: &DirectedHyperedge, n: usize) -> UndirectedHyperedge {
    let mut vertices = Vec::with_capacity(e.tail.len() * e.head.len() + 1);
    for &u in &e.tail {
        for &v in &e.head {
            vertices.push(LiftedVertexId::Pair(u, v).encode(n));
        }
    }
    vertices.push(LiftedVertexId::Star.encode(n));
    // tail and head are sorted, so pair ids u·n+v arrive sorted and the star
    // id n² is the largest; only dedup is conceptually needed and even that
    // is a no-op because pair ids are distinct for distinct (u, v).
    UndirectedHyperedge::new(vertices, e.weight)
}

/// Inverts [`lift_edge`]: recovers `(tail, head)` from an undirected edge
/// over lifted ids.
///
/// The edge must contain the star and its pair ids must form exactly a
/// product `L × R`; anything else is rejected, since the inverse map is only
/// defined on true images of the lift.
pub fn unlift_edge(f: &UndirectedHyperedge, n: usize) -> Result<DirectedHyperedge> {
    let star = n * n;
    let mut tail = Vec::new();
    let mut head = Vec::new();
    let mut pairs = 0usize;
    let mut saw_star = false;
    for &id in &f.vertices {
        match LiftedVertexId::decode(id, n)? {
            LiftedVertexId::Star => saw_star = true,
            LiftedVertexId::Pair(u, v) => {
                pairs += 1;
                tail.push(u);
                head.push(v);
            }
        }
    }
    if !saw_star {
        return Err(Error::NotALiftedEdge {
            detail: format!("star vertex {star} missing"),
        });
    }
    tail.sort_unstable();
    tail.dedup();
    head.sort_unstable();
    head.dedup();
    if tail.is_empty() {
        return Err(Error::NotALiftedEdge {
            detail: "no pair vertices present".into(),
        });
    }
    // Every pair projects into tail × head, so the pair set is the full
    // product iff the counts match (edge vertex lists carry no duplicates).
    let expected = tail.len() * head.len();
    if pairs != expected {
        return Err(Error::NotALiftedEdge {
            detail: format!(
                "{{{}}}×{{{}}} requires {expected} pairs but {pairs} present",
                join(&tail),
                join(&head)
            ),
        });
    }
    Ok(DirectedHyperedge {
        tail,
        head,
        weight: f.weight,
    })
}

fn join(vs: &[usize]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Lifts a whole directed hypergraph, edge by edge, preserving edge order.
pub fn lift_hypergraph(h: &DirectedHypergraph) -> LiftedHypergraph {
    let n = h.n;
    let edges = h.edges.iter().map(|e| lift_edge(e, n)).collect();
    LiftedHypergraph {
        graph: UndirectedHypergraph::new(n * n + 1, edges),
        source_n: n,
    }
}

/// Applies `φ⁻¹` to every edge; fails with the edge index on any edge that
/// is not a true lift image.
pub fn unlift_hypergraph(l: &LiftedHypergraph) -> Result<DirectedHypergraph> {
    let n = l.source_n;
    if l.graph.n != n * n + 1 {
        return Err(Error::DimensionMismatch {
            what: "lifted hypergraph vertex count",
            expected: n * n + 1,
            got: l.graph.n,
        });
    }
    let mut edges = Vec::with_capacity(l.graph.edges.len());
    for (i, f) in l.graph.edges.iter().enumerate() {
        match unlift_edge(f, n) {
            Ok(e) => edges.push(e),
            Err(Error::NotALiftedEdge { detail }) => {
                return Err(Error::NotALiftedEdgeAt { index: i, detail })
            }
            Err(e) => return Err(e),
        }
    }
    Ok(DirectedHypergraph::new(n, edges))
}

/// Lifts a test vector: `ϑ(x)_{u,v} = max(x_u − x_v, 0)`, `ϑ(x)_* = 0`.
/// Indicator vectors map to indicator vectors.
pub fn lift_vector(x: &[f64]) -> Result<Vec<f64>> {
    check_test_vector(x, x.len())?;
    let n = x.len();
    let mut out = vec![0.0; n * n + 1];
    for u in 0..n {
        for v in 0..n {
            out[u * n + v] = (x[u] - x[v]).max(0.0);
        }
    }
    Ok(out)
}

/// Cut-set form of `ϑ(1_S)`: the lifted cut contains `pair(u, v)` iff
/// `u ∈ S` and `v ∉ S`, and never the star.
pub fn lift_cut(s: &CutSet) -> CutSet {
    let n = s.universe();
    let mut out = CutSet::empty(n * n + 1);
    for u in s.members() {
        for v in 0..n {
            if !s.contains(v) {
                out.insert(u * n + v);
            }
        }
    }
    out
}
