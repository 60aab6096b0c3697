//! Finite encodings of instances, labels, hypotheses, classes, distributions
//! and samples, plus the loss functions used everywhere downstream.
//!
//! Domains and label alphabets are index sets `[0, n)`; a hypothesis is a
//! dense label table over the domain. All types are immutable after
//! construction and all operations are pure given their inputs and seed.

use std::collections::BTreeSet;

use num_rational::Ratio;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng;

/// A point of the finite domain, identified by its index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Instance(pub usize);

/// A label, identified by its index in the alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Label(pub usize);

/// A labeled example.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Example {
    pub x: Instance,
    pub y: Label,
}

impl Example {
    pub fn new(x: usize, y: usize) -> Self {
        Example { x: Instance(x), y: Label(y) }
    }
}

/// An ordered sequence of examples; duplicates are allowed and order is
/// preserved under every operation.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sample {
    items: Vec<Example>,
}

impl Sample {
    pub fn new(items: Vec<Example>) -> Self {
        Sample { items }
    }

    pub fn empty() -> Self {
        Sample { items: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[Example] {
        &self.items
    }

    pub fn subsequence(&self, indices: &[usize]) -> Sample {
        Sample { items: indices.iter().map(|&i| self.items[i]).collect() }
    }

    pub fn concat(parts: &[&Sample]) -> Sample {
        let mut items = Vec::new();
        for p in parts {
            items.extend_from_slice(&p.items);
        }
        Sample { items }
    }

    /// Stable content hash, used to derive per-input random streams.
    pub fn content_hash(&self) -> u64 {
        rng::fnv1a(
            std::iter::once(self.items.len() as u64)
                .chain(self.items.iter().flat_map(|e| [e.x.0 as u64, e.y.0 as u64])),
        )
    }
}

impl FromIterator<Example> for Sample {
    fn from_iter<T: IntoIterator<Item = Example>>(iter: T) -> Self {
        Sample { items: iter.into_iter().collect() }
    }
}

/// A total function on the domain, stored as one label per instance.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Hypothesis {
    table: Vec<Label>,
}

impl Hypothesis {
    pub fn new(table: Vec<Label>) -> Self {
        Hypothesis { table }
    }

    pub fn from_indices(table: &[usize]) -> Self {
        Hypothesis { table: table.iter().map(|&y| Label(y)).collect() }
    }

    /// The all-zero table; the fixed default hypothesis used by the
    /// reconstruction maps when a tuple is too short to carve into blocks.
    pub fn zeroed(n_domain: usize) -> Self {
        Hypothesis { table: vec![Label(0); n_domain] }
    }

    /// Constant classifier `x ↦ label`.
    pub fn constant(n_domain: usize, label: usize) -> Self {
        Hypothesis { table: vec![Label(label); n_domain] }
    }

    pub fn n_domain(&self) -> usize {
        self.table.len()
    }

    pub fn at(&self, x: Instance) -> Label {
        self.table[x.0]
    }

    pub fn table(&self) -> &[Label] {
        self.table.as_slice()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.table.iter().map(|l| l.0).collect()
    }

    /// True iff `y = h(x)` for every example of `s`.
    pub fn realizes(&self, s: &Sample) -> bool {
        s.items().iter().all(|e| self.at(e.x) == e.y)
    }
}

/// A finite, deduplicated, canonically ordered set of hypotheses over a
/// shared domain and label alphabet. The canonical (lexicographic) order is
/// the tie-break used by every argmax/argmin in the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisClass {
    n_domain: usize,
    n_labels: usize,
    members: Vec<Hypothesis>,
}

impl HypothesisClass {
    pub fn new(n_domain: usize, n_labels: usize, members: Vec<Hypothesis>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::Invariant("hypothesis class must be nonempty".into()));
        }
        let mut set = BTreeSet::new();
        for h in &members {
            if h.n_domain() != n_domain {
                return Err(Error::DimensionMismatch(format!(
                    "hypothesis table has length {}, domain size is {}",
                    h.n_domain(),
                    n_domain
                )));
            }
            if let Some(l) = h.table().iter().find(|l| l.0 >= n_labels) {
                return Err(Error::Invariant(format!(
                    "label {} out of range (n_labels = {})",
                    l.0, n_labels
                )));
            }
            set.insert(h.clone());
        }
        Ok(HypothesisClass { n_domain, n_labels, members: set.into_iter().collect() })
    }

    pub fn from_tables(n_domain: usize, n_labels: usize, tables: &[Vec<usize>]) -> Result<Self> {
        let members = tables.iter().map(|t| Hypothesis::from_indices(t)).collect();
        HypothesisClass::new(n_domain, n_labels, members)
    }

    pub fn n_domain(&self) -> usize {
        self.n_domain
    }

    pub fn n_labels(&self) -> usize {
        self.n_labels
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Members in canonical order.
    pub fn members(&self) -> &[Hypothesis] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &Hypothesis {
        &self.members[i]
    }

    /// Projection of the class onto a tuple of instances: the deduplicated,
    /// canonically ordered set of restricted label vectors.
    pub fn projection(&self, tuple: &[Instance]) -> Vec<Vec<Label>> {
        let set: BTreeSet<Vec<Label>> = self
            .members
            .iter()
            .map(|h| tuple.iter().map(|&x| h.at(x)).collect())
            .collect();
        set.into_iter().collect()
    }

    /// Some member realizing `s`, if any (first in canonical order).
    pub fn realizer(&self, s: &Sample) -> Option<&Hypothesis> {
        self.members.iter().find(|h| h.realizes(s))
    }

    pub fn is_realizable(&self, s: &Sample) -> bool {
        self.realizer(s).is_some()
    }

    pub fn content_hash(&self) -> u64 {
        rng::fnv1a(
            [self.n_domain as u64, self.n_labels as u64].into_iter().chain(
                self.members.iter().flat_map(|h| h.table().iter().map(|l| l.0 as u64)),
            ),
        )
    }
}

/// An explicit probability table over instance-label pairs.
#[derive(Debug, Clone)]
pub struct Distribution {
    n_domain: usize,
    n_labels: usize,
    probs: Vec<f64>,
    cumulative: Vec<f64>,
}

impl Distribution {
    pub const SUM_TOLERANCE: f64 = 1e-12;

    pub fn new(n_domain: usize, n_labels: usize, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != n_domain * n_labels {
            return Err(Error::DimensionMismatch(format!(
                "probability table has {} entries, expected {}",
                probs.len(),
                n_domain * n_labels
            )));
        }
        if probs.iter().any(|&p| p < 0.0 || !p.is_finite()) {
            return Err(Error::Invariant("probabilities must be finite and nonnegative".into()));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > Self::SUM_TOLERANCE {
            return Err(Error::Invariant(format!("probabilities sum to {sum}, expected 1")));
        }
        let mut cumulative = Vec::with_capacity(probs.len());
        let mut acc = 0.0;
        for &p in &probs {
            acc += p;
            cumulative.push(acc);
        }
        Ok(Distribution { n_domain, n_labels, probs, cumulative })
    }

    /// Builds from possibly unnormalized nonnegative masses (dividing by the
    /// total); the file loaders use this after checking their own tolerance.
    pub fn from_masses(n_domain: usize, n_labels: usize, masses: Vec<f64>) -> Result<Self> {
        let sum: f64 = masses.iter().sum();
        if sum <= 0.0 || !sum.is_finite() {
            return Err(Error::Invariant("total mass must be positive".into()));
        }
        Distribution::new(n_domain, n_labels, masses.into_iter().map(|m| m / sum).collect())
    }

    pub fn point_mass(n_domain: usize, n_labels: usize, z: Example) -> Result<Self> {
        let mut probs = vec![0.0; n_domain * n_labels];
        probs[z.x.0 * n_labels + z.y.0] = 1.0;
        Distribution::new(n_domain, n_labels, probs)
    }

    pub fn n_domain(&self) -> usize {
        self.n_domain
    }

    pub fn n_labels(&self) -> usize {
        self.n_labels
    }

    pub fn prob(&self, x: Instance, y: Label) -> f64 {
        self.probs[x.0 * self.n_labels + y.0]
    }

    /// Iterates over `(x, y, p)` with positive mass.
    pub fn support(&self) -> impl Iterator<Item = (Instance, Label, f64)> + '_ {
        self.probs.iter().enumerate().filter(|(_, &p)| p > 0.0).map(move |(i, &p)| {
            (Instance(i / self.n_labels), Label(i % self.n_labels), p)
        })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    fn draw(&self, u: f64) -> Example {
        // Inverse CDF; the final bucket absorbs rounding slack.
        let idx = match self.cumulative.binary_search_by(|c| c.partial_cmp(&u).unwrap()) {
            Ok(i) => i + 1,
            Err(i) => i,
        };
        let idx = idx.min(self.probs.len() - 1);
        Example::new(idx / self.n_labels, idx % self.n_labels)
    }
}

fn check_shapes_h_p(h: &Hypothesis, p: &Distribution) -> Result<()> {
    if h.n_domain() != p.n_domain() {
        return Err(Error::DimensionMismatch(format!(
            "hypothesis domain {} vs distribution domain {}",
            h.n_domain(),
            p.n_domain()
        )));
    }
    Ok(())
}

/// `er_P(h)`: mass of pairs mislabeled by `h`.
pub fn error_rate(h: &Hypothesis, p: &Distribution) -> Result<f64> {
    check_shapes_h_p(h, p)?;
    let mut err = 0.0;
    for (x, y, mass) in p.support() {
        if h.at(x) != y {
            err += mass;
        }
    }
    Ok(err.clamp(0.0, 1.0))
}

/// `er_s(h)` as an exact rational mistakes/length; 0 on the empty sequence.
pub fn empirical_error(h: &Hypothesis, s: &Sample) -> Ratio<u64> {
    if s.is_empty() {
        return Ratio::new(0, 1);
    }
    let wrong = s.items().iter().filter(|e| h.at(e.x) != e.y).count() as u64;
    Ratio::new(wrong, s.len() as u64)
}

/// `s(h)`: the longest subsequence of `s` realizable by `h`, i.e. exactly the
/// examples where `h` agrees, in original order.
pub fn realizable_subsequence(s: &Sample, h: &Hypothesis) -> Sample {
    s.items().iter().copied().filter(|e| h.at(e.x) == e.y).collect()
}

/// Positions of `s(h)` within `s`.
pub fn realizable_indices(s: &Sample, h: &Hypothesis) -> Vec<usize> {
    s.items()
        .iter()
        .enumerate()
        .filter(|(_, e)| h.at(e.x) == e.y)
        .map(|(i, _)| i)
        .collect()
}

/// The masked loss `1{hstar(x) = y ≠ f(x)}`: a mistake of `f` only where
/// `hstar` is correct.
pub fn masked_loss(hstar: &Hypothesis, f: &Hypothesis, z: Example) -> bool {
    hstar.at(z.x) == z.y && f.at(z.x) != z.y
}

/// The menu loss `1{f(x) ≠ y ∈ μ(x)}`: a mistake of `f` only where the true
/// label is on the menu.
pub fn menu_loss(menu: &Menu, f: &Hypothesis, z: Example) -> bool {
    menu.contains(z.x, z.y) && f.at(z.x) != z.y
}

/// Mass of the masked-loss event under `p`.
pub fn masked_loss_mass(hstar: &Hypothesis, f: &Hypothesis, p: &Distribution) -> Result<f64> {
    check_shapes_h_p(hstar, p)?;
    check_shapes_h_p(f, p)?;
    let mut mass = 0.0;
    for (x, y, m) in p.support() {
        if masked_loss(hstar, f, Example { x, y }) {
            mass += m;
        }
    }
    Ok(mass)
}

/// Empirical menu-loss as an exact rational; 0 on the empty sequence.
pub fn empirical_menu_loss(menu: &Menu, f: &Hypothesis, s: &Sample) -> Ratio<u64> {
    if s.is_empty() {
        return Ratio::new(0, 1);
    }
    let wrong = s.items().iter().filter(|e| menu_loss(menu, f, **e)).count() as u64;
    Ratio::new(wrong, s.len() as u64)
}

/// `n` i.i.d. draws from `p`; deterministic given the seed.
pub fn sample(p: &Distribution, n: usize, seed: u64) -> Sample {
    let mut rng = rng::root(seed);
    (0..n).map(|_| p.draw(rng.gen::<f64>())).collect()
}

/// Minimizer of `er_P` over the class, ties broken by canonical member
/// order. The domain is finite so the infimum is attained.
pub fn best_in_class(class: &HypothesisClass, p: &Distribution) -> Result<(Hypothesis, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for (i, h) in class.members().iter().enumerate() {
        let e = error_rate(h, p)?;
        match best {
            Some((_, be)) if e >= be => {}
            _ => best = Some((i, e)),
        }
    }
    let (i, e) = best.expect("class is nonempty");
    Ok((class.member(i).clone(), e))
}

/// Member maximizing agreement `|s(h)|`, ties broken canonically. Returns
/// the member index.
pub fn most_consistent_member(class: &HypothesisClass, s: &Sample) -> usize {
    let mut best = 0usize;
    let mut best_agree = 0usize;
    for (i, h) in class.members().iter().enumerate() {
        let agree = s.items().iter().filter(|e| h.at(e.x) == e.y).count();
        if i == 0 || agree > best_agree {
            best = i;
            best_agree = agree;
        }
    }
    best
}

/// A per-instance finite set of candidate labels (the reduced label space).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Menu {
    sets: Vec<BTreeSet<Label>>,
}

impl Menu {
    pub fn new(sets: Vec<BTreeSet<Label>>) -> Self {
        Menu { sets }
    }

    /// The trivial menu offering the whole alphabet everywhere.
    pub fn full(n_domain: usize, n_labels: usize) -> Self {
        let all: BTreeSet<Label> = (0..n_labels).map(Label).collect();
        Menu { sets: vec![all; n_domain] }
    }

    pub fn n_domain(&self) -> usize {
        self.sets.len()
    }

    pub fn contains(&self, x: Instance, y: Label) -> bool {
        self.sets[x.0].contains(&y)
    }

    pub fn at(&self, x: Instance) -> &BTreeSet<Label> {
        &self.sets[x.0]
    }

    /// Menu size `p`: the largest per-instance set.
    pub fn size(&self) -> usize {
        self.sets.iter().map(|s| s.len()).max().unwrap_or(0)
    }

    /// True when every per-instance set is empty (e.g. built from an empty
    /// list); callers treat this as a degenerate menu.
    pub fn is_vacuous(&self) -> bool {
        self.sets.iter().all(|s| s.is_empty())
    }

    pub fn content_hash(&self) -> u64 {
        rng::fnv1a(std::iter::once(self.sets.len() as u64).chain(self.sets.iter().flat_map(
            |s| std::iter::once(u64::MAX).chain(s.iter().map(|l| l.0 as u64)),
        )))
    }
}
