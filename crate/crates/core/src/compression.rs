//! Selection schemes and sample compression: the boosting-based scheme built
//! on the one-inclusion learner, and the finite-cover enumerator.

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::data::{
    most_consistent_member, realizable_indices, Hypothesis, HypothesisClass, Label, Sample,
};
use crate::error::{Error, Result};
use crate::oig::OigPredictor;
use crate::rng;

/// Pointwise plurality vote; ties go to the smallest label index.
pub fn majority_vote(classifiers: &[Hypothesis]) -> Result<Hypothesis> {
    let first = classifiers
        .first()
        .ok_or_else(|| Error::Invariant("majority vote over an empty committee".into()))?;
    let n = first.n_domain();
    if classifiers.iter().any(|h| h.n_domain() != n) {
        return Err(Error::DimensionMismatch("committee members disagree on domain size".into()));
    }
    let mut table = Vec::with_capacity(n);
    let mut counts: std::collections::BTreeMap<Label, usize> = std::collections::BTreeMap::new();
    for x in 0..n {
        counts.clear();
        for h in classifiers {
            *counts.entry(h.table()[x]).or_insert(0) += 1;
        }
        // BTreeMap iterates labels ascending, so `>` keeps the smallest on ties.
        let (best, _) = counts.iter().fold((Label(0), 0usize), |(bl, bc), (&l, &c)| {
            if c > bc {
                (l, c)
            } else {
                (bl, bc)
            }
        });
        table.push(best);
    }
    Ok(Hypothesis::new(table))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Preserves the published round count and constants.
    Faithful,
    /// Stops at the first realizing majority; sizes only shrink.
    Practical,
}

#[derive(Debug, Clone, Copy)]
pub struct CompressionParams {
    /// Weak-learner error threshold, in (0, 1/2).
    pub gamma: f64,
    pub mode: Mode,
    /// Weak-learner sample size (block length).
    pub d_weak: usize,
    /// Practical-mode cap on boosting rounds.
    pub max_boost_rounds: usize,
    /// Per-round redraw attempts for a block passing the error gate.
    pub retry_cap: usize,
    /// Random fallback tuples tried after boosting gives up.
    pub fallback_draws: usize,
}

impl CompressionParams {
    pub fn new(mode: Mode, d_weak: usize) -> Result<Self> {
        let p = CompressionParams {
            gamma: 1.0 / 3.0,
            mode,
            d_weak,
            max_boost_rounds: 600,
            retry_cap: 24,
            fallback_draws: 400,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma > 0.0 && self.gamma < 0.5) {
            return Err(Error::Invariant(format!("gamma must lie in (0, 1/2), got {}", self.gamma)));
        }
        if self.d_weak == 0 {
            return Err(Error::Invariant("weak sample size must be ≥ 1".into()));
        }
        Ok(())
    }

    /// Boosting rounds `⌈3.01·log(n+1)/((1/2γ − 1)²γ)⌉`.
    pub fn round_count(&self, n: usize) -> usize {
        round_count(n, self.gamma)
    }

    /// Compression size bound `k(n)` = rounds × block length.
    pub fn size_bound(&self, n: usize) -> usize {
        self.round_count(n) * self.d_weak
    }
}

pub fn round_count(n: usize, gamma: f64) -> usize {
    let denom = (1.0 / (2.0 * gamma) - 1.0).powi(2) * gamma;
    (3.01 * ((n + 1) as f64).ln() / denom).ceil() as usize
}

/// Weighted multiplicative-update search for a tuple whose block-majority
/// realizes the target sequence.
///
/// Each accepted round trains the weak learner on a block drawn by example
/// weight, requires weighted error ≤ γ, and doubles the weight of
/// misclassified examples. With the published round count the unweighted
/// majority of gated rounds must interpolate the target, so a miss falls
/// through to the caller's fallbacks.
pub(crate) fn boost_realizing_tuple(
    s_tilde: &Sample,
    params: &CompressionParams,
    rounds_target: usize,
    rng: &mut ChaCha8Rng,
    weak: &mut dyn FnMut(&Sample) -> Hypothesis,
) -> std::result::Result<Vec<usize>, String> {
    let n_t = s_tilde.len();
    if n_t == 0 {
        return Ok(Vec::new());
    }
    let rounds_max = match params.mode {
        Mode::Faithful => rounds_target,
        Mode::Practical => rounds_target.min(params.max_boost_rounds),
    };
    let m = params.d_weak;
    let mut weights = vec![1.0f64; n_t];
    let mut committee: Vec<Hypothesis> = Vec::new();
    let mut positions: Vec<usize> = Vec::new();

    let draw_block = |weights: &[f64], rng: &mut ChaCha8Rng| -> Vec<usize> {
        let total: f64 = weights.iter().sum();
        (0..m)
            .map(|_| {
                let mut u = rng.gen::<f64>() * total;
                for (i, &w) in weights.iter().enumerate() {
                    u -= w;
                    if u <= 0.0 {
                        return i;
                    }
                }
                n_t - 1
            })
            .collect()
    };

    for round in 0..rounds_max {
        let mut accepted: Option<(Vec<usize>, Hypothesis)> = None;
        for _ in 0..params.retry_cap.max(1) {
            let block_pos = draw_block(&weights, rng);
            let block = s_tilde.subsequence(&block_pos);
            let h = weak(&block);
            let total: f64 = weights.iter().sum();
            let err: f64 = s_tilde
                .items()
                .iter()
                .zip(&weights)
                .filter(|(e, _)| h.at(e.x) != e.y)
                .map(|(_, &w)| w)
                .sum::<f64>()
                / total;
            if err <= params.gamma + 1e-12 {
                accepted = Some((block_pos, h));
                break;
            }
        }
        let Some((block_pos, h)) = accepted else {
            return Err(format!("no block passed the γ gate in round {round}"));
        };
        for (i, e) in s_tilde.items().iter().enumerate() {
            if h.at(e.x) != e.y {
                weights[i] *= 2.0;
            }
        }
        // Rescale to dodge overflow; relative weights are all that matter.
        let mean: f64 = weights.iter().sum::<f64>() / n_t as f64;
        weights.iter_mut().for_each(|w| *w /= mean);
        positions.extend_from_slice(&block_pos);
        committee.push(h);

        if params.mode == Mode::Practical {
            if let Ok(maj) = majority_vote(&committee) {
                if maj.realizes(s_tilde) {
                    return Ok(positions);
                }
            }
        }
    }
    let maj = majority_vote(&committee).map_err(|e| e.to_string())?;
    if maj.realizes(s_tilde) {
        Ok(positions)
    } else {
        Err(format!("majority after {rounds_max} rounds does not realize the target"))
    }
}

/// Shared fallback ladder once boosting reports failure: a deterministic
/// covering block when the block length allows it, then seeded random
/// tuples, and finally a hard error carrying diagnostics.
pub(crate) fn compress_with_fallbacks(
    s_tilde: &Sample,
    params: &CompressionParams,
    rounds_target: usize,
    rng: &mut ChaCha8Rng,
    weak: &mut dyn FnMut(&Sample) -> Hypothesis,
    reconstruct: &mut dyn FnMut(&Sample) -> Hypothesis,
    boost_err: String,
) -> Result<Vec<usize>> {
    let n_t = s_tilde.len();
    let m = params.d_weak;
    // A block containing every target element is interpolated by the
    // one-inclusion weak learner, so repeating it fills any round budget.
    if m >= n_t && n_t > 0 {
        let block: Vec<usize> = (0..m).map(|i| i % n_t).collect();
        let blocks = match params.mode {
            Mode::Faithful => rounds_target,
            Mode::Practical => 1,
        };
        let positions: Vec<usize> =
            (0..blocks).flat_map(|_| block.iter().copied()).collect();
        let t = s_tilde.subsequence(&positions);
        if reconstruct(&t).realizes(s_tilde) {
            return Ok(positions);
        }
    }
    for _ in 0..params.fallback_draws {
        let blocks = match params.mode {
            Mode::Faithful => rounds_target,
            Mode::Practical => 1 + (rng.gen::<u64>() % rounds_target.max(1) as u64) as usize,
        };
        let positions: Vec<usize> =
            (0..blocks * m).map(|_| rng.gen_range(0..n_t)).collect();
        let t = s_tilde.subsequence(&positions);
        if reconstruct(&t).realizes(s_tilde) {
            return Ok(positions);
        }
    }
    Err(Error::CompressionFailed(format!(
        "no realizing tuple found (target length {n_t}, block {m}, rounds {rounds_target}): {boost_err}"
    )))
}

/// A compress/reconstruct pair with a declared size bound. Compression
/// returns positions into the input sequence; reconstruction is
/// deterministic.
pub trait SelectionScheme {
    fn compress(&self, s: &Sample) -> Result<Vec<usize>>;
    fn reconstruct(&self, t: &Sample) -> Hypothesis;
    fn size_bound(&self, n: usize) -> usize;
}

/// Sample compression via the one-inclusion weak learner: blocks of a fixed
/// weak sample size, boosted until their majority realizes the filtered
/// input.
pub struct Scsr<'a> {
    class: &'a HypothesisClass,
    params: CompressionParams,
    predictor: OigPredictor<'a>,
    seed: u64,
}

impl<'a> Scsr<'a> {
    pub fn new(class: &'a HypothesisClass, params: CompressionParams, seed: u64) -> Result<Self> {
        params.validate()?;
        Ok(Scsr { class, params, predictor: OigPredictor::new(class), seed })
    }

    pub fn params(&self) -> &CompressionParams {
        &self.params
    }

    fn weak_learn(&self, block: &Sample) -> Hypothesis {
        // Unrealizable blocks cannot happen on sequences the selection map
        // produces; the default keeps reconstruction total anyway.
        self.predictor
            .learn(block)
            .unwrap_or_else(|_| Hypothesis::zeroed(self.class.n_domain()))
    }
}

impl SelectionScheme for Scsr<'_> {
    /// Keeps the best-realizable subsequence and finds a tuple of blocks
    /// whose reconstruction realizes it; returns positions into `s`.
    fn compress(&self, s: &Sample) -> Result<Vec<usize>> {
        let tilde_idx = realizable_indices(s, self.class.member(most_consistent_member(self.class, s)));
        let s_tilde = s.subsequence(&tilde_idx);
        let rounds_target = self.params.round_count(s.len());
        let mut rng = rng::stream(self.seed, s.content_hash());
        let mut weak = |block: &Sample| self.weak_learn(block);
        let positions = match boost_realizing_tuple(
            &s_tilde,
            &self.params,
            rounds_target,
            &mut rng,
            &mut weak,
        ) {
            Ok(p) => p,
            Err(msg) => {
                let mut weak = |block: &Sample| self.weak_learn(block);
                let mut recon = |t: &Sample| reconstruct_blocks(t, self.params.d_weak, &mut weak);
                compress_with_fallbacks(
                    &s_tilde,
                    &self.params,
                    rounds_target,
                    &mut rng,
                    &mut |b| self.weak_learn(b),
                    &mut recon,
                    msg,
                )?
            }
        };
        Ok(positions.into_iter().map(|p| tilde_idx[p]).collect())
    }

    /// Consecutive blocks, one weak run each, majority vote; the all-zero
    /// default when the tuple is shorter than one block.
    fn reconstruct(&self, t: &Sample) -> Hypothesis {
        let mut weak = |block: &Sample| self.weak_learn(block);
        reconstruct_blocks(t, self.params.d_weak, &mut weak)
    }

    fn size_bound(&self, n: usize) -> usize {
        self.params.size_bound(n)
    }
}

/// Shared reconstruction shape: carve `t` into consecutive blocks of length
/// `m`, train on each, majority-vote. Leftover elements beyond the last full
/// block are ignored, matching the block indexing of the selection maps.
pub(crate) fn reconstruct_blocks(
    t: &Sample,
    m: usize,
    weak: &mut dyn FnMut(&Sample) -> Hypothesis,
) -> Hypothesis {
    let a = t.len() / m;
    if a < 1 {
        let probe = weak(&Sample::empty());
        return Hypothesis::zeroed(probe.n_domain());
    }
    let committee: Vec<Hypothesis> = (0..a)
        .map(|i| {
            let positions: Vec<usize> = (i * m..(i + 1) * m).collect();
            weak(&t.subsequence(&positions))
        })
        .collect();
    majority_vote(&committee).expect("committee is nonempty and shape-consistent")
}

/// How the cover enumerator walks the tuple space.
#[derive(Debug, Clone, Copy)]
pub enum CoverMode {
    /// Every tuple of input elements up to the scheme's size bound.
    /// Guarantees membership of each member's compression and the
    /// `n^(k+1)` cardinality bound; explodes combinatorially, so a budget
    /// guards it.
    Full { tuple_budget: u64 },
    /// Only the tuples the selection map can actually emit for
    /// member-realizable subsequences: one compression per member, plus the
    /// default hypothesis from the empty tuple. Keeps the cover size linear
    /// in the class at the cost of the generic enumeration guarantee.
    MemberCompressions,
}

/// Enumerates the reconstruction cover of `s`.
pub fn cc_enumerate<S: SelectionScheme>(
    s: &Sample,
    class: &HypothesisClass,
    scheme: &S,
    mode: CoverMode,
) -> Result<HypothesisClass> {
    let mut tables: BTreeSet<Hypothesis> = BTreeSet::new();
    match mode {
        CoverMode::Full { tuple_budget } => {
            let n = s.len() as u64;
            let k_max = scheme.size_bound(s.len());
            let mut total: u64 = 0;
            let mut count: u64 = 1;
            for _ in 0..=k_max {
                total = total.saturating_add(count);
                count = count.saturating_mul(n.max(1));
                if total > tuple_budget {
                    return Err(Error::BudgetExceeded(format!(
                        "full enumeration needs > {tuple_budget} tuples (n = {n}, k = {k_max}); \
                         use a smaller size bound or member-compression mode"
                    )));
                }
            }
            for k in 0..=k_max {
                let mut idx = vec![0usize; k];
                loop {
                    tables.insert(scheme.reconstruct(&s.subsequence(&idx)));
                    // Next index tuple in lexicographic order.
                    let mut pos = k;
                    loop {
                        if pos == 0 {
                            break;
                        }
                        pos -= 1;
                        idx[pos] += 1;
                        if idx[pos] < s.len() {
                            break;
                        }
                        idx[pos] = 0;
                        if pos == 0 {
                            pos = usize::MAX;
                            break;
                        }
                    }
                    if k == 0 || pos == usize::MAX {
                        break;
                    }
                }
                if s.is_empty() && k > 0 {
                    break;
                }
            }
        }
        CoverMode::MemberCompressions => {
            tables.insert(scheme.reconstruct(&Sample::empty()));
            let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
            for h in class.members() {
                let idx = realizable_indices(s, h);
                if !seen.insert(idx.clone()) {
                    continue;
                }
                let sub = s.subsequence(&idx);
                let t = scheme.compress(&sub)?;
                tables.insert(scheme.reconstruct(&sub.subsequence(&t)));
            }
        }
    }
    HypothesisClass::new(class.n_domain(), class.n_labels(), tables.into_iter().collect())
}
