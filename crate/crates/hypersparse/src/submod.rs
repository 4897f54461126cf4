//! Splitting-function toolkit: monotone-to-symmetric lifting, brute-force
//! property certification, built-in monotone submodular families, and the
//! monotone-hypergraph sparsification pipeline.
//!
//! The lifting adds one shared star vertex. For a base function `f` on
//! support `e`, the lifted `f′` on `e ∪ {star}` satisfies
//! `f′(S) = f(S)` and `f′((e − S) ∪ {star}) = f(S)` for all `S ⊆ e` — both
//! clauses bottom out in the same oracle call, so the defining identity holds
//! bit-exactly. `f′` is always symmetric; it is submodular whenever `f` is
//! monotone and submodular.
//!
//! Certification is exhaustive over the support and therefore exact: the
//! built-in families use dyadic parameters so every comparison the checkers
//! make is free of rounding noise.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hypercore::{
    enumeration_limit, Claims, CutInstance, SplittingFunction, SubmodularHypergraph, VertexId,
};
use crate::sparsify::{
    verify_cut_sparsifier, AllCuts, SparsifierBackend, SparsifierResult, SparsifyConfig,
};

/// Witness of a submodularity violation: masks are over support positions
/// in the documented enumeration order (ascending `T`, then ascending strict
/// superset `U`, then ascending element).
#[derive(Clone, Debug, PartialEq)]
pub struct SubmodularityWitness {
    pub t_mask: u64,
    pub u_mask: u64,
    /// Support position of the added element `x ∉ U`.
    pub element: usize,
    pub marginal_t: f64,
    pub marginal_u: f64,
}

impl std::fmt::Display for SubmodularityWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "marginal of element {} on T={:#x} is {} but on U={:#x} is {}",
            self.element, self.t_mask, self.marginal_t, self.u_mask, self.marginal_u
        )
    }
}

/// Witness of a monotonicity violation.
#[derive(Clone, Debug, PartialEq)]
pub struct MonotonicityWitness {
    pub s_mask: u64,
    pub element: usize,
    pub value_without: f64,
    pub value_with: f64,
}

impl std::fmt::Display for MonotonicityWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "adding element {} to S={:#x} drops the value from {} to {}",
            self.element, self.s_mask, self.value_without, self.value_with
        )
    }
}

/// Witness of a symmetry violation.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryWitness {
    pub s_mask: u64,
    pub value: f64,
    pub complement_value: f64,
}

impl std::fmt::Display for SymmetryWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "f(S={:#x}) = {} but f(complement) = {}",
            self.s_mask, self.value, self.complement_value
        )
    }
}

fn check_arity(f: &SplittingFunction) -> Result<()> {
    let limit = enumeration_limit();
    if f.arity() > limit {
        return Err(Error::EnumerationLimit {
            n: f.arity(),
            limit,
        });
    }
    Ok(())
}

/// Exhaustive decreasing-marginals check over all `T ⊂ U ⊆ support`,
/// `x ∉ U`. Returns `None` on pass, otherwise the first violating triple in
/// enumeration order.
pub fn check_submodular(f: &SplittingFunction) -> Result<Option<SubmodularityWitness>> {
    check_arity(f)?;
    let k = f.arity();
    let full = (1u64 << k) - 1;
    for t in 0..=full {
        for u in (t + 1)..=full {
            if u & t != t {
                continue;
            }
            for x in 0..k {
                let bit = 1u64 << x;
                if u & bit != 0 {
                    continue;
                }
                let marginal_t = f.eval_mask(t | bit) - f.eval_mask(t);
                let marginal_u = f.eval_mask(u | bit) - f.eval_mask(u);
                if marginal_t < marginal_u {
                    return Ok(Some(SubmodularityWitness {
                        t_mask: t,
                        u_mask: u,
                        element: x,
                        marginal_t,
                        marginal_u,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Exhaustive monotonicity check: `f(S ∪ {x}) ≥ f(S)` for all `S`, `x ∉ S`.
pub fn check_monotone(f: &SplittingFunction) -> Result<Option<MonotonicityWitness>> {
    check_arity(f)?;
    let k = f.arity();
    let full = (1u64 << k) - 1;
    for s in 0..=full {
        for x in 0..k {
            let bit = 1u64 << x;
            if s & bit != 0 {
                continue;
            }
            let without = f.eval_mask(s);
            let with = f.eval_mask(s | bit);
            if with < without {
                return Ok(Some(MonotonicityWitness {
                    s_mask: s,
                    element: x,
                    value_without: without,
                    value_with: with,
                }));
            }
        }
    }
    Ok(None)
}

/// Exhaustive symmetry check, pairing each subset with its complement.
pub fn check_symmetric(f: &SplittingFunction) -> Result<Option<SymmetryWitness>> {
    check_arity(f)?;
    let k = f.arity();
    let full = (1u64 << k) - 1;
    for s in 0..=full {
        let c = full & !s;
        if c < s {
            continue;
        }
        let v = f.eval_mask(s);
        let vc = f.eval_mask(c);
        if v != vc {
            return Ok(Some(SymmetryWitness {
                s_mask: s,
                value: v,
                complement_value: vc,
            }));
        }
    }
    Ok(None)
}

/// A symmetrized splitting function together with the star vertex it uses.
#[derive(Clone, Debug)]
pub struct LiftedSplittingFunction {
    function: SplittingFunction,
    star: VertexId,
}

impl LiftedSplittingFunction {
    pub fn function(&self) -> &SplittingFunction {
        &self.function
    }

    pub fn star(&self) -> VertexId {
        self.star
    }

    pub fn into_function(self) -> SplittingFunction {
        self.function
    }
}

/// Lifts `f` on support `e` to `f′` on `e ∪ {star}` with
/// `f′(T) = f(T)` for star-free `T` and `f′(T) = f(e − (T − {star}))`
/// otherwise. Total for any `f`; the submodularity conclusion needs `f`
/// monotone and submodular, symmetry holds unconditionally.
pub fn symmetrize(f: &SplittingFunction, star: VertexId) -> Result<LiftedSplittingFunction> {
    if f.support().contains(&star) {
        return Err(Error::InvalidArgument(format!(
            "star vertex {star} already in the support"
        )));
    }
    let mut support = f.support().to_vec();
    support.push(star);
    support.sort_unstable();
    let star_pos = support
        .iter()
        .position(|&v| v == star)
        .expect("just inserted");
    let k = f.arity();
    let full_base = (1u64 << k) - 1;
    let base = f.clone();
    let low_mask = (1u64 << star_pos) - 1;
    let oracle = move |mask: u64| -> f64 {
        let without_star = (mask & low_mask) | ((mask >> (star_pos + 1)) << star_pos);
        if mask >> star_pos & 1 == 0 {
            base.eval_mask(without_star)
        } else {
            base.eval_mask(full_base & !without_star)
        }
    };
    let claims = Claims {
        submodular: f.claims.monotone && f.claims.submodular,
        monotone: false,
        symmetric: true,
    };
    let function = SplittingFunction::new(format!("sym({})", f.name()), support, claims, oracle)?;
    Ok(LiftedSplittingFunction { function, star })
}

/// A submodular hypergraph on `source_n + 1` vertices whose edges all share
/// the star vertex `source_n`.
#[derive(Clone, Debug)]
pub struct LiftedSubmodularHypergraph {
    pub hypergraph: SubmodularHypergraph,
    pub source_n: usize,
}

impl LiftedSubmodularHypergraph {
    pub fn star(&self) -> VertexId {
        self.source_n
    }
}

/// Replaces every splitting function by its symmetrization onto the shared
/// star vertex `n`. All edges must claim monotone + submodular; with
/// `certify` the claims are verified exhaustively first and a failure names
/// the edge and witness.
///
/// For every star-free `S` the lifted cut equals the original cut, term by
/// term.
pub fn lift_monotone_hypergraph(
    h: &SubmodularHypergraph,
    certify: bool,
) -> Result<LiftedSubmodularHypergraph> {
    let star = h.n;
    let mut edges = Vec::with_capacity(h.edges.len());
    for (i, f) in h.edges.iter().enumerate() {
        if !(f.claims.monotone && f.claims.submodular) {
            return Err(Error::InvalidArgument(format!(
                "edge {i} ({}) does not claim monotone + submodular",
                f.name()
            )));
        }
        if certify {
            if let Some(w) = check_monotone(f)? {
                return Err(Error::CertificationFailed {
                    edge: i,
                    name: f.name().to_string(),
                    witness: format!("not monotone: {w}"),
                });
            }
            if let Some(w) = check_submodular(f)? {
                return Err(Error::CertificationFailed {
                    edge: i,
                    name: f.name().to_string(),
                    witness: format!("not submodular: {w}"),
                });
            }
        }
        edges.push(symmetrize(f, star)?.into_function());
    }
    Ok(LiftedSubmodularHypergraph {
        hypergraph: SubmodularHypergraph::new(h.n + 1, edges),
        source_n: h.n,
    })
}

/// The monotone sparsification pipeline: lift to the symmetric hypergraph on
/// `n + 1` vertices, sparsify it with the backend over all `2^(n+1)` cuts,
/// and keep the same edge indices and weights on the original hypergraph.
/// The result is re-verified against all `2^n` cuts of the input.
pub fn sparsify_monotone<B: SparsifierBackend<SubmodularHypergraph>>(
    h: &SubmodularHypergraph,
    cfg: &SparsifyConfig,
    backend: &B,
) -> Result<SparsifierResult> {
    cfg.check()?;
    let lifted = lift_monotone_hypergraph(h, false)?;
    let family = AllCuts {
        n: lifted.hypergraph.n,
    };
    let mut res = backend.sparsify(&lifted.hypergraph, &family, cfg)?;
    let hhat = h.reweighted(&res.kept);
    let report = verify_cut_sparsifier(h, &hhat, cfg.epsilon)?;
    if !report.pass {
        return Err(Error::VerificationFailed {
            retries: res.retries_used,
            max_rel_error: report.max_rel_error,
            worst_cut: report.worst_cut.to_hex(),
        });
    }
    res.verified_max_rel_error = Some(report.max_rel_error);
    res.worst_cut = Some(report.worst_cut);
    Ok(res)
}

/// Built-in splitting-function families.
///
/// Every constructor fixes the claims to what the family provably satisfies.
/// Parameters are meant to be dyadic (multiples of 1/64) so that the
/// exhaustive checkers compare exact floats; [`corpus`] generates them that
/// way.
pub mod families {
    use super::*;

    const MONOTONE_SUBMODULAR: Claims = Claims {
        submodular: true,
        monotone: true,
        symmetric: false,
    };

    fn weight_sum(weights: &Arc<Vec<f64>>, mask: u64) -> f64 {
        let mut total = 0.0;
        for (i, w) in weights.iter().enumerate() {
            if mask >> i & 1 == 1 {
                total += w;
            }
        }
        total
    }

    fn check_weights(support: &[VertexId], weights: &[f64]) -> Result<()> {
        if support.len() != weights.len() {
            return Err(Error::DimensionMismatch {
                what: "per-member parameter list",
                expected: support.len(),
                got: weights.len(),
            });
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidArgument(
                "family parameters must be finite and nonnegative".into(),
            ));
        }
        Ok(())
    }

    /// `g(S) = Σ_{i∈S} w_i` (modular, hence submodular; monotone).
    pub fn modular(
        name: &str,
        support: Vec<VertexId>,
        weights: Vec<f64>,
    ) -> Result<SplittingFunction> {
        check_weights(&support, &weights)?;
        let weights = Arc::new(weights);
        SplittingFunction::new(name, support, MONOTONE_SUBMODULAR, move |mask| {
            weight_sum(&weights, mask)
        })
    }

    /// `g(S) = min(|S|, cap)`.
    pub fn truncated_cardinality(
        name: &str,
        support: Vec<VertexId>,
        cap: usize,
    ) -> Result<SplittingFunction> {
        SplittingFunction::new(name, support, MONOTONE_SUBMODULAR, move |mask| {
            (mask.count_ones() as usize).min(cap) as f64
        })
    }

    /// `g(S) = min(w(S), budget)`.
    pub fn budget_additive(
        name: &str,
        support: Vec<VertexId>,
        weights: Vec<f64>,
        budget: f64,
    ) -> Result<SplittingFunction> {
        check_weights(&support, &weights)?;
        let weights = Arc::new(weights);
        SplittingFunction::new(name, support, MONOTONE_SUBMODULAR, move |mask| {
            weight_sum(&weights, mask).min(budget)
        })
    }

    /// Weighted coverage: ground element `j` has weight `element_weights[j]`
    /// and is covered by member `i` iff `covers[i]` has bit `j` set;
    /// `g(S) = Σ_{j covered by S} w_j`.
    pub fn coverage(
        name: &str,
        support: Vec<VertexId>,
        covers: Vec<u64>,
        element_weights: Vec<f64>,
    ) -> Result<SplittingFunction> {
        if support.len() != covers.len() {
            return Err(Error::DimensionMismatch {
                what: "cover list",
                expected: support.len(),
                got: covers.len(),
            });
        }
        if element_weights.len() > 64 {
            return Err(Error::InvalidArgument("at most 64 ground elements".into()));
        }
        let covers = Arc::new(covers);
        let element_weights = Arc::new(element_weights);
        SplittingFunction::new(name, support, MONOTONE_SUBMODULAR, move |mask| {
            let mut covered = 0u64;
            for (i, c) in covers.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    covered |= c;
                }
            }
            element_weights
                .iter()
                .enumerate()
                .filter(|(j, _)| covered >> *j & 1 == 1)
                .map(|(_, w)| w)
                .sum::<f64>()
                + 0.0
        })
    }

    /// Partition matroid rank: member `i` belongs to block `blocks[i]` and
    /// block `b` has capacity `caps[b]`;
    /// `g(S) = Σ_b min(|S ∩ block b|, caps[b])`.
    pub fn partition_matroid_rank(
        name: &str,
        support: Vec<VertexId>,
        blocks: Vec<usize>,
        caps: Vec<usize>,
    ) -> Result<SplittingFunction> {
        if support.len() != blocks.len() {
            return Err(Error::DimensionMismatch {
                what: "block assignment",
                expected: support.len(),
                got: blocks.len(),
            });
        }
        if let Some(&b) = blocks.iter().find(|&&b| b >= caps.len()) {
            return Err(Error::IndexOutOfRange {
                what: "matroid block",
                index: b,
                bound: caps.len(),
            });
        }
        let blocks = Arc::new(blocks);
        let caps = Arc::new(caps);
        SplittingFunction::new(name, support, MONOTONE_SUBMODULAR, move |mask| {
            let mut counts = vec![0usize; caps.len()];
            for (i, &b) in blocks.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    counts[b] += 1;
                }
            }
            counts
                .iter()
                .zip(caps.iter())
                .map(|(&c, &cap)| c.min(cap))
                .sum::<usize>() as f64
        })
    }

    /// Concave of modular: `g(S) = sqrt(w(S))`.
    pub fn sqrt_modular(
        name: &str,
        support: Vec<VertexId>,
        weights: Vec<f64>,
    ) -> Result<SplittingFunction> {
        check_weights(&support, &weights)?;
        let weights = Arc::new(weights);
        SplittingFunction::new(name, support, MONOTONE_SUBMODULAR, move |mask| {
            weight_sum(&weights, mask).sqrt()
        })
    }

    /// Concave of modular: `g(S) = ln(1 + w(S))`.
    pub fn log1p_modular(
        name: &str,
        support: Vec<VertexId>,
        weights: Vec<f64>,
    ) -> Result<SplittingFunction> {
        check_weights(&support, &weights)?;
        let weights = Arc::new(weights);
        SplittingFunction::new(name, support, MONOTONE_SUBMODULAR, move |mask| {
            weight_sum(&weights, mask).ln_1p()
        })
    }

    /// Facility location: `g(S) = Σ_j max_{i∈S} gains[i][j]` (max over the
    /// empty set is 0).
    pub fn facility_location(
        name: &str,
        support: Vec<VertexId>,
        gains: Vec<Vec<f64>>,
    ) -> Result<SplittingFunction> {
        if support.len() != gains.len() {
            return Err(Error::DimensionMismatch {
                what: "gain matrix rows",
                expected: support.len(),
                got: gains.len(),
            });
        }
        let sites = gains.first().map_or(0, |g| g.len());
        if gains.iter().any(|g| g.len() != sites) {
            return Err(Error::InvalidArgument("ragged gain matrix".into()));
        }
        let gains = Arc::new(gains);
        SplittingFunction::new(name, support, MONOTONE_SUBMODULAR, move |mask| {
            (0..sites)
                .map(|j| {
                    let mut best = 0.0f64;
                    for (i, g) in gains.iter().enumerate() {
                        if mask >> i & 1 == 1 {
                            best = best.max(g[j]);
                        }
                    }
                    best
                })
                .sum::<f64>()
                + 0.0
        })
    }

    /// Probabilistic coverage:
    /// `g(S) = Σ_j w_j · (1 − Π_{i∈S}(1 − p[i][j]))`.
    pub fn probabilistic_coverage(
        name: &str,
        support: Vec<VertexId>,
        probs: Vec<Vec<f64>>,
        element_weights: Vec<f64>,
    ) -> Result<SplittingFunction> {
        if support.len() != probs.len() {
            return Err(Error::DimensionMismatch {
                what: "probability matrix rows",
                expected: support.len(),
                got: probs.len(),
            });
        }
        let elems = element_weights.len();
        if probs.iter().any(|p| p.len() != elems) {
            return Err(Error::InvalidArgument("ragged probability matrix".into()));
        }
        if probs.iter().flatten().any(|&p| !(0.0..=1.0).contains(&p)) {
            return Err(Error::InvalidArgument(
                "probabilities must lie in [0,1]".into(),
            ));
        }
        let probs = Arc::new(probs);
        let element_weights = Arc::new(element_weights);
        SplittingFunction::new(name, support, MONOTONE_SUBMODULAR, move |mask| {
            (0..elems)
                .map(|j| {
                    let mut miss = 1.0;
                    for (i, p) in probs.iter().enumerate() {
                        if mask >> i & 1 == 1 {
                            miss *= 1.0 - p[j];
                        }
                    }
                    element_weights[j] * (1.0 - miss)
                })
                .sum::<f64>()
                + 0.0
        })
    }

    /// Negative control: `g(S) = |S|²` has increasing marginals, so it is
    /// monotone but not submodular. Claims are set accordingly.
    pub fn square_cardinality(name: &str, support: Vec<VertexId>) -> Result<SplittingFunction> {
        SplittingFunction::new(
            name,
            support,
            Claims {
                submodular: false,
                monotone: true,
                symmetric: false,
            },
            |mask| {
                let c = mask.count_ones() as f64;
                c * c
            },
        )
    }

    /// The splitting function of an undirected hyperedge:
    /// `g(T) = 1` iff `∅ ≠ T ≠ e`. Symmetric and submodular, not monotone.
    pub fn undirected_cut_style(name: &str, support: Vec<VertexId>) -> Result<SplittingFunction> {
        let k = support.len();
        let full = (1u64 << k) - 1;
        SplittingFunction::new(
            name,
            support,
            Claims {
                submodular: true,
                monotone: false,
                symmetric: true,
            },
            move |mask| {
                if mask != 0 && mask != full {
                    1.0
                } else {
                    0.0
                }
            },
        )
    }
}

/// Deterministic corpus of monotone submodular functions spanning the
/// built-in families (nine families, several parameterizations each, support
/// sizes 2..=7, dyadic parameters).
pub fn corpus(seed: u64) -> Vec<SplittingFunction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    // multiples of 1/64 in [1/8, 4]; sums over <= 7 members stay exact in f64
    fn dyadic(rng: &mut ChaCha8Rng) -> f64 {
        rng.random_range(8..=256u32) as f64 / 64.0
    }
    fn dyadic_vec(rng: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
        (0..k).map(|_| dyadic(rng)).collect()
    }

    for round in 0..7u64 {
        let k = 2 + (round as usize % 6); // support sizes 2..=7
        let support: Vec<usize> = (0..k).collect();

        let w = dyadic_vec(&mut rng, k);
        out.push(families::modular(&format!("modular-{round}"), support.clone(), w).unwrap());

        let cap = 1 + (rng.random_range(0..k as u32) as usize);
        out.push(
            families::truncated_cardinality(&format!("trunc-card-{round}"), support.clone(), cap)
                .unwrap(),
        );

        let w = dyadic_vec(&mut rng, k);
        let budget = dyadic(&mut rng) + 1.0;
        out.push(
            families::budget_additive(&format!("budget-{round}"), support.clone(), w, budget)
                .unwrap(),
        );

        let elems = 3 + (round as usize % 4);
        let covers: Vec<u64> = (0..k).map(|_| rng.random_range(1..1u64 << elems)).collect();
        let ew = dyadic_vec(&mut rng, elems);
        out.push(
            families::coverage(&format!("coverage-{round}"), support.clone(), covers, ew).unwrap(),
        );

        let nblocks = 1 + (round as usize % 3);
        let blocks: Vec<usize> = (0..k)
            .map(|_| rng.random_range(0..nblocks as u32) as usize)
            .collect();
        let caps: Vec<usize> = (0..nblocks)
            .map(|_| 1 + rng.random_range(0..2u32) as usize)
            .collect();
        out.push(
            families::partition_matroid_rank(
                &format!("partition-rank-{round}"),
                support.clone(),
                blocks,
                caps,
            )
            .unwrap(),
        );

        let w = dyadic_vec(&mut rng, k);
        out.push(families::sqrt_modular(&format!("sqrt-{round}"), support.clone(), w).unwrap());

        let w = dyadic_vec(&mut rng, k);
        out.push(families::log1p_modular(&format!("log1p-{round}"), support.clone(), w).unwrap());

        let sites = 2 + (round as usize % 3);
        let gains: Vec<Vec<f64>> = (0..k).map(|_| dyadic_vec(&mut rng, sites)).collect();
        out.push(
            families::facility_location(&format!("facility-{round}"), support.clone(), gains)
                .unwrap(),
        );

        let elems = 2 + (round as usize % 3);
        let probs: Vec<Vec<f64>> = (0..k)
            .map(|_| {
                (0..elems)
                    .map(|_| rng.random_range(2..=16u32) as f64 / 32.0)
                    .collect()
            })
            .collect();
        let ew = dyadic_vec(&mut rng, elems);
        out.push(
            families::probabilistic_coverage(
                &format!("prob-coverage-{round}"),
                support.clone(),
                probs,
                ew,
            )
            .unwrap(),
        );
    }
    out
}
