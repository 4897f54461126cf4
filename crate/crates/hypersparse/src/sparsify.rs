//! Pluggable cut-sparsifier backend with a sensitivity-sampling baseline and
//! exhaustive verification, plus the directed sparsification pipeline
//! (lift → sparsify → unlift).
//!
//! The baseline draws `m′` i.i.d. edges with probabilities proportional to
//! their sensitivities (maximum fractional contribution to any positive cut
//! in the preserved family), reweights by inverse probability, verifies every
//! cut in the family exhaustively, and retries with `seed + 1` on failure.
//! Verified outputs therefore satisfy the `(1 ± ε)` band by construction.
//!
//! A backend receives the family of cuts it must preserve. For a plain
//! undirected or submodular hypergraph that family is all `2^n` cuts; the
//! directed pipeline instead passes the image family `{ϑ(1_S)}` of the lift,
//! which is exactly the set of cuts the directed guarantee needs and keeps
//! the enumeration at `2^n` instead of `2^(n²+1)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::hypercore::{
    enumeration_limit, CutInstance, CutSet, DirectedHypergraph, UndirectedHypergraph,
};
use crate::lift::{lift_cut, lift_hypergraph};

/// Parameters of a sparsification run.
#[derive(Clone, Debug)]
pub struct SparsifyConfig {
    /// Multiplicative error of the `(1 ± ε)` guarantee; in `(0, 1)`.
    pub epsilon: f64,
    /// Failure probability budget of the sample-count formula; in `(0, 1)`.
    pub delta: f64,
    /// Oversampling constant `c ≥ 1` of the sample-count formula.
    pub oversample_c: f64,
    /// RNG seed; retries use `seed + attempt`.
    pub seed: u64,
    /// Number of re-draws allowed after a failed verification.
    pub max_retries: u32,
}

impl SparsifyConfig {
    /// Config with the default `delta = 0.01`, `oversample_c = 3`,
    /// `max_retries = 16`.
    pub fn new(epsilon: f64, seed: u64) -> Result<Self> {
        let cfg = SparsifyConfig {
            epsilon,
            delta: 0.01,
            oversample_c: 3.0,
            seed,
            max_retries: 16,
        };
        cfg.check()?;
        Ok(cfg)
    }

    pub fn check(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "epsilon must be in (0,1), got {}",
                self.epsilon
            )));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "delta must be in (0,1), got {}",
                self.delta
            )));
        }
        if self.oversample_c.is_nan() || self.oversample_c < 1.0 {
            return Err(Error::InvalidConfig(format!(
                "oversample_c must be >= 1, got {}",
                self.oversample_c
            )));
        }
        Ok(())
    }
}

/// Outcome of a sparsification run: which input edges were kept and with
/// what new weights, plus the verification summary.
#[derive(Clone, Debug)]
pub struct SparsifierResult {
    /// Distinct original edge indices with their new weights, ascending by
    /// index. Weights replace the originals.
    pub kept: Vec<(usize, f64)>,
    /// Largest relative cut error observed by verification, when it ran.
    pub verified_max_rel_error: Option<f64>,
    /// Cut attaining the largest relative error, when verification ran over
    /// a nontrivial sample.
    pub worst_cut: Option<CutSet>,
    /// Number of failed draws before the returned one.
    pub retries_used: u32,
    /// The computed sample count `m′` (also reported when the shortcut
    /// branch returned the input unchanged).
    pub samples_drawn: usize,
}

impl SparsifierResult {
    /// Result that keeps everything at original weight. Zero-weight edges
    /// are dropped so kept weights stay strictly positive; they contribute
    /// nothing to any cut.
    fn identity<H: CutInstance>(h: &H, samples_drawn: usize) -> Self {
        SparsifierResult {
            kept: (0..h.edge_count())
                .map(|i| (i, h.base_weight(i)))
                .filter(|&(_, w)| w > 0.0)
                .collect(),
            verified_max_rel_error: Some(0.0),
            worst_cut: None,
            retries_used: 0,
            samples_drawn,
        }
    }
}

/// An enumerable family of cuts a sparsifier must preserve. Families are
/// indexed by `0..2^log_len()` with a deterministic order.
pub trait CutFamily: Sync {
    /// Base-2 log of the family size.
    fn log_len(&self) -> usize;
    /// The `index`-th cut.
    fn cut(&self, index: u64) -> CutSet;

    fn len(&self) -> u64 {
        1u64 << self.log_len()
    }

    fn is_empty(&self) -> bool {
        false
    }
}

/// All `2^n` cuts of an `n`-vertex hypergraph, indexed by bitmask.
pub struct AllCuts {
    pub n: usize,
}

impl CutFamily for AllCuts {
    fn log_len(&self) -> usize {
        self.n
    }

    fn cut(&self, index: u64) -> CutSet {
        CutSet::from_mask(self.n, index)
    }
}

/// The image cuts `ϑ(1_S)` of a lift, indexed by the bitmask of the source
/// cut `S ⊆ [0, source_n)`. These live on `source_n² + 1` vertices.
pub struct LiftedImageCuts {
    pub source_n: usize,
}

impl CutFamily for LiftedImageCuts {
    fn log_len(&self) -> usize {
        self.source_n
    }

    fn cut(&self, index: u64) -> CutSet {
        lift_cut(&CutSet::from_mask(self.source_n, index))
    }
}

fn check_family_limit(family: &dyn CutFamily) -> Result<()> {
    let limit = enumeration_limit();
    if family.log_len() > limit {
        return Err(Error::EnumerationLimit {
            n: family.log_len(),
            limit,
        });
    }
    Ok(())
}

/// Per-edge sensitivities over an explicit cut family:
/// `σ_e = max over family cuts with positive value of contribution_e / value`.
///
/// Every `σ_e` lies in `[0, 1]` and they sum to at least 1 when any cut in
/// the family is positive; if all cuts are zero the input is degenerate.
pub fn compute_sensitivities_over<H: CutInstance>(
    h: &H,
    family: &dyn CutFamily,
) -> Result<Vec<f64>> {
    check_family_limit(family)?;
    let m = h.edge_count();
    let mut sigma = vec![0.0; m];
    let mut contribs = vec![0.0; m];
    let mut any_positive = false;
    for idx in 0..family.len() {
        let cut = family.cut(idx);
        let mut value = 0.0;
        for (e, c) in contribs.iter_mut().enumerate() {
            *c = h.cut_contribution(e, &cut);
            value += *c;
        }
        if value > 0.0 {
            any_positive = true;
            for (s, &c) in sigma.iter_mut().zip(contribs.iter()) {
                let ratio = c / value;
                if ratio > *s {
                    *s = ratio;
                }
            }
        }
    }
    if !any_positive {
        return Err(Error::DegenerateInput(
            "every cut in the family has value zero".into(),
        ));
    }
    Ok(sigma)
}

/// Sensitivities over all `2^n` cuts (requires `n` within the enumeration
/// limit).
pub fn compute_sensitivities<H: CutInstance>(h: &H) -> Result<Vec<f64>> {
    compute_sensitivities_over(
        h,
        &AllCuts {
            n: h.vertex_count(),
        },
    )
}

/// Relative-error scan of `hhat` against `h` over a cut family. Returns
/// `(pass, max_rel_error, worst_cut)`; a zero-value cut counts as error 0
/// when exactly zero in `hhat` and as infinite error otherwise.
fn scan_family<H: CutInstance>(
    h: &H,
    hhat: &H,
    family: &dyn CutFamily,
    epsilon: f64,
) -> (bool, f64, CutSet) {
    let mut pass = true;
    let mut max_rel = 0.0;
    let mut worst = family.cut(0);
    for idx in 0..family.len() {
        let cut = family.cut(idx);
        let v = h.cut_total(&cut);
        let vh = hhat.cut_total(&cut);
        let diff = (vh - v).abs();
        let rel = if v > 0.0 {
            diff / v
        } else if vh == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        if rel > max_rel {
            max_rel = rel;
            worst = cut;
        }
        if diff.is_nan() || diff > epsilon * v {
            pass = false;
        }
    }
    (pass, max_rel, worst)
}

/// Exhaustive `(1 ± ε)` cut verification report.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub pass: bool,
    pub max_rel_error: f64,
    pub worst_cut: CutSet,
}

/// Checks `|cut_Ĥ(S) − cut_H(S)| ≤ ε · cut_H(S)` for all `2^n` subsets
/// (zero-value cuts must be exactly zero in `Ĥ`); reports the argmax of the
/// relative error.
pub fn verify_cut_sparsifier<H: CutInstance>(
    h: &H,
    hhat: &H,
    epsilon: f64,
) -> Result<VerifyReport> {
    if h.vertex_count() != hhat.vertex_count() {
        return Err(Error::DimensionMismatch {
            what: "sparsifier vertex count",
            expected: h.vertex_count(),
            got: hhat.vertex_count(),
        });
    }
    let family = AllCuts {
        n: h.vertex_count(),
    };
    check_family_limit(&family)?;
    let (pass, max_rel_error, worst_cut) = scan_family(h, hhat, &family, epsilon);
    Ok(VerifyReport {
        pass,
        max_rel_error,
        worst_cut,
    })
}

/// A cut sparsifier that can be dropped into the reduction pipelines. The
/// family argument is the set of cuts the caller needs preserved; honoring
/// the [`SparsifierResult`] contract means returning a reweighted subset of
/// the input's edges that passes the `(1 ± ε)` test on that family.
pub trait SparsifierBackend<H: CutInstance> {
    fn sparsify(
        &self,
        h: &H,
        family: &dyn CutFamily,
        cfg: &SparsifyConfig,
    ) -> Result<SparsifierResult>;
}

/// The baseline backend: sensitivity sampling with exhaustive verification
/// and retries.
pub struct SensitivityBackend;

impl<H: CutInstance> SparsifierBackend<H> for SensitivityBackend {
    fn sparsify(
        &self,
        h: &H,
        family: &dyn CutFamily,
        cfg: &SparsifyConfig,
    ) -> Result<SparsifierResult> {
        sample_over(h, family, cfg)
    }
}

/// Backend that returns the input unchanged; useful as a pipeline probe.
pub struct IdentityBackend;

impl<H: CutInstance> SparsifierBackend<H> for IdentityBackend {
    fn sparsify(
        &self,
        h: &H,
        _family: &dyn CutFamily,
        _cfg: &SparsifyConfig,
    ) -> Result<SparsifierResult> {
        Ok(SparsifierResult::identity(h, 0))
    }
}

fn draw_sample<H: CutInstance>(
    h: &H,
    sigma: &[f64],
    cum: &[f64],
    total: f64,
    m_prime: usize,
    seed: u64,
) -> Vec<(usize, f64)> {
    let m = sigma.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0u64; m];
    for _ in 0..m_prime {
        let u = rng.random::<f64>() * total;
        let mut idx = cum.partition_point(|&c| c <= u);
        if idx >= m {
            idx = m - 1;
        }
        // an index with zero sensitivity can only be hit through the
        // clamp above; step back to the nearest sampled edge
        while sigma[idx] == 0.0 {
            idx -= 1;
        }
        counts[idx] += 1;
    }
    let mut kept = Vec::new();
    for (i, &c) in counts.iter().enumerate() {
        if c > 0 {
            let p = sigma[i] / total;
            let scale = c as f64 / (m_prime as f64 * p);
            kept.push((i, h.base_weight(i) * scale));
        }
    }
    kept
}

/// Sensitivity sampling over an explicit cut family. Draws
/// `m′ = ⌈c · Σσ · (log₂|family| + ln(1/δ)) / ε²⌉` edges i.i.d. with
/// probability `σ_e / Σσ`, emitting each drawn edge with weight
/// `w_e · count / (m′ · p_e)` (repeated draws merge by weight addition).
/// When `m′ ≥ m` the input is returned unchanged. Each draw is verified over
/// the family; failures retry with `seed + 1`, up to `max_retries`.
/// Deterministic given `(h, family, cfg)`.
pub fn sample_over<H: CutInstance>(
    h: &H,
    family: &dyn CutFamily,
    cfg: &SparsifyConfig,
) -> Result<SparsifierResult> {
    cfg.check()?;
    let sigma = compute_sensitivities_over(h, family)?;
    let total: f64 = sigma.iter().sum();
    let n_eff = family.log_len() as f64;
    let m_prime = (cfg.oversample_c * total * (n_eff + (1.0 / cfg.delta).ln())
        / (cfg.epsilon * cfg.epsilon))
        .ceil() as usize;
    let m = h.edge_count();
    if m_prime >= m {
        // sampling cannot shrink the input; return it verbatim
        return Ok(SparsifierResult::identity(h, m_prime));
    }
    let mut cum = Vec::with_capacity(m);
    let mut acc = 0.0;
    for &s in &sigma {
        acc += s;
        cum.push(acc);
    }
    let mut last_rel = 0.0;
    let mut last_worst = family.cut(0);
    for attempt in 0..=cfg.max_retries {
        let kept = draw_sample(
            h,
            &sigma,
            &cum,
            total,
            m_prime,
            cfg.seed.wrapping_add(attempt as u64),
        );
        let hhat = h.reweighted(&kept);
        let (pass, max_rel, worst) = scan_family(h, &hhat, family, cfg.epsilon);
        if pass {
            return Ok(SparsifierResult {
                kept,
                verified_max_rel_error: Some(max_rel),
                worst_cut: Some(worst),
                retries_used: attempt,
                samples_drawn: m_prime,
            });
        }
        last_rel = max_rel;
        last_worst = worst;
    }
    Err(Error::VerificationFailed {
        retries: cfg.max_retries,
        max_rel_error: last_rel,
        worst_cut: last_worst.to_hex(),
    })
}

/// Sensitivity sampling of an undirected or submodular hypergraph over all
/// `2^n` cuts (requires `n` within the enumeration limit).
pub fn sensitivity_sample<H: CutInstance>(h: &H, cfg: &SparsifyConfig) -> Result<SparsifierResult> {
    sample_over(
        h,
        &AllCuts {
            n: h.vertex_count(),
        },
        cfg,
    )
}

/// The directed sparsification pipeline: lift to `n² + 1` vertices, run an
/// undirected cut-sparsifier backend on the lifted hypergraph (preserving
/// the image cuts `ϑ(1_S)`), and carry the kept edges back. Lifting
/// preserves edge order, so lifted index `i` is directed index `i` and
/// unlifting never needs the inverse edge map at all. The returned result is
/// re-verified against all `2^n` directed cuts of the input.
pub fn sparsify_directed<B: SparsifierBackend<UndirectedHypergraph>>(
    h: &DirectedHypergraph,
    cfg: &SparsifyConfig,
    backend: &B,
) -> Result<SparsifierResult> {
    cfg.check()?;
    let family = LiftedImageCuts { source_n: h.n };
    check_family_limit(&family)?;
    let lifted = lift_hypergraph(h);
    let mut res = backend.sparsify(&lifted.graph, &family, cfg)?;
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

/// A hypergraph kind carrying a Laplacian quadratic form.
pub trait QuadFormInstance {
    fn vertex_count(&self) -> usize;
    fn quad_form(&self, x: &[f64]) -> Result<f64>;
}

impl QuadFormInstance for UndirectedHypergraph {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn quad_form(&self, x: &[f64]) -> Result<f64> {
        UndirectedHypergraph::quad_form(self, x)
    }
}

impl QuadFormInstance for DirectedHypergraph {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn quad_form(&self, x: &[f64]) -> Result<f64> {
        DirectedHypergraph::quad_form(self, x)
    }
}

/// Sampled spectral comparison. The Gaussian side is a HEURISTIC: it reports
/// the worst deviation seen, it proves nothing.
#[derive(Clone, Debug)]
pub struct SpectralReport {
    pub epsilon: f64,
    /// Max relative deviation over all `2^n` cut indicator vectors; only
    /// present when `n` is within the enumeration limit.
    pub max_cut_vector_deviation: Option<f64>,
    /// True iff the cut-vector side stayed within `epsilon`.
    pub cut_vectors_within_epsilon: Option<bool>,
    /// Max relative deviation over the sampled Gaussian vectors.
    pub max_gaussian_deviation: f64,
    pub gaussian_vectors_tested: usize,
    /// Always true: this report is a sampled heuristic, not a certificate.
    pub heuristic: bool,
}

/// Compares quadratic forms of `h` and `hhat` on `num_vectors` standard
/// normal vectors, plus all `2^n` cut vectors when `n` is within the
/// enumeration limit.
pub fn verify_spectral_sample<H: QuadFormInstance>(
    h: &H,
    hhat: &H,
    epsilon: f64,
    num_vectors: usize,
    seed: u64,
) -> Result<SpectralReport> {
    if h.vertex_count() != hhat.vertex_count() {
        return Err(Error::DimensionMismatch {
            what: "sparsifier vertex count",
            expected: h.vertex_count(),
            got: hhat.vertex_count(),
        });
    }
    if num_vectors == 0 {
        return Err(Error::InvalidArgument("num_vectors must be >= 1".into()));
    }
    let n = h.vertex_count();
    let deviation = |x: &[f64]| -> Result<f64> {
        let q = h.quad_form(x)?;
        let qh = hhat.quad_form(x)?;
        Ok(if q > 0.0 {
            (qh - q).abs() / q
        } else if qh == 0.0 {
            0.0
        } else {
            f64::INFINITY
        })
    };

    let mut max_cut = None;
    if n <= enumeration_limit() {
        let mut worst = 0.0f64;
        for mask in 0..1u64 << n {
            let x: Vec<f64> = (0..n).map(|v| ((mask >> v) & 1) as f64).collect();
            worst = worst.max(deviation(&x)?);
        }
        max_cut = Some(worst);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = StandardNormal;
    let mut max_gauss = 0.0f64;
    for _ in 0..num_vectors {
        let x: Vec<f64> = (0..n).map(|_| normal.sample(&mut rng)).collect();
        max_gauss = max_gauss.max(deviation(&x)?);
    }

    Ok(SpectralReport {
        epsilon,
        max_cut_vector_deviation: max_cut,
        cut_vectors_within_epsilon: max_cut.map(|d| d <= epsilon),
        max_gaussian_deviation: max_gauss,
        gaussian_vectors_tested: num_vectors,
        heuristic: true,
    })
}
