//! Exact brute-force dimension computation: Natarajan and DS dimensions with
//! shattering witnesses, one-inclusion-graph density, and a desk-scale
//! bracket for the realizable dimension.

use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::data::{error_rate, sample, Distribution, Example, HypothesisClass, Instance, Label};
use crate::error::{Error, Result};
use crate::oig::{OigPredictor, OneInclusionGraph};
use crate::rng;
use rand::Rng;

pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;
pub const DEFAULT_SUBSET_CAP: usize = 20;

/// Whether a search ran to completion or was cut off by its node budget
/// (in which case the reported dimension is only a lower bound).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SearchStatus {
    Exact,
    LowerBoundOnly,
}

/// Points plus the two labelings whose product cube the class realizes.
#[derive(Debug, Clone, Serialize)]
pub struct NatarajanWitness {
    pub points: Vec<Instance>,
    pub f: Vec<Label>,
    pub g: Vec<Label>,
}

/// Points plus a pseudo-cube contained in the projection.
#[derive(Debug, Clone, Serialize)]
pub struct PseudoCubeWitness {
    pub points: Vec<Instance>,
    pub cube: Vec<Vec<Label>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NatarajanResult {
    pub dim: usize,
    pub witness: Option<NatarajanWitness>,
    pub status: SearchStatus,
}

#[derive(Debug, Clone, Serialize)]
pub struct DsResult {
    pub dim: usize,
    pub witness: Option<PseudoCubeWitness>,
    pub status: SearchStatus,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k == 0 || k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // Advance the rightmost index that can move.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    // Nondecreasing k-tuples over [0, n); density is invariant under
    // coordinate permutation so one representative per multiset suffices.
    let mut out = Vec::new();
    let mut cur = vec![0usize; k];
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] + 1 < n {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[i];
        }
    }
}

/// Is `cube` a pseudo-cube of dimension `d`: nonempty, finite, and every
/// vector has an `i`-neighbor for every coordinate `i` (same everywhere else,
/// different at `i`)?
pub fn is_pseudo_cube(cube: &[Vec<Label>], d: usize) -> bool {
    if cube.is_empty() || cube.iter().any(|v| v.len() != d) {
        return false;
    }
    let neighbor_at = |a: &[Label], b: &[Label], i: usize| {
        a[i] != b[i] && a.iter().zip(b).enumerate().all(|(j, (x, y))| j == i || x == y)
    };
    cube.iter().all(|v| (0..d).all(|i| cube.iter().any(|w| neighbor_at(v, w, i))))
}

/// Iterated core peeling: delete vectors lacking an `i`-neighbor for some
/// `i` until stable. Any pseudo-cube survives every round, and a nonempty
/// fixed point satisfies the neighbor requirement by construction, so the
/// result is nonempty iff the set contains a pseudo-cube (and is then the
/// largest one).
pub fn pseudo_cube_core(vectors: &[Vec<Label>], d: usize, work: &mut u64) -> Vec<Vec<Label>> {
    let mut alive: Vec<Vec<Label>> = vectors.to_vec();
    loop {
        let mut keep = Vec::with_capacity(alive.len());
        for v in &alive {
            *work += (alive.len() * d) as u64;
            let ok = (0..d).all(|i| {
                alive.iter().any(|w| {
                    w[i] != v[i]
                        && w.iter().zip(v.iter()).enumerate().all(|(j, (a, b))| j == i || a == b)
                })
            });
            if ok {
                keep.push(v.clone());
            }
        }
        if keep.len() == alive.len() {
            return alive;
        }
        alive = keep;
        if alive.is_empty() {
            return alive;
        }
    }
}

/// Largest `d ≤ cap` admitting an N-shattered tuple, with a witness.
/// Exhaustive over point combinations and per-coordinate label pairs; cut
/// off by `node_budget` with an explicit lower-bound status.
pub fn natarajan_dimension(
    class: &HypothesisClass,
    cap: usize,
    node_budget: u64,
) -> NatarajanResult {
    let cap = cap.min(class.n_domain());
    let mut best = NatarajanResult { dim: 0, witness: None, status: SearchStatus::Exact };
    let mut work: u64 = 0;
    for d in 1..=cap {
        let mut shattered_here: Option<NatarajanWitness> = None;
        'tuples: for combo in combinations(class.n_domain(), d) {
            let points: Vec<Instance> = combo.iter().map(|&i| Instance(i)).collect();
            let proj = class.projection(&points);
            let proj_set: std::collections::BTreeSet<&Vec<Label>> = proj.iter().collect();
            // Candidate {f(i), g(i)} pairs per coordinate, from labels that
            // actually appear there.
            let mut pairs_per_coord: Vec<Vec<(Label, Label)>> = Vec::with_capacity(d);
            for i in 0..d {
                let mut labels: Vec<Label> =
                    proj.iter().map(|v| v[i]).collect::<std::collections::BTreeSet<_>>()
                        .into_iter()
                        .collect();
                labels.sort();
                let mut pairs = Vec::new();
                for a in 0..labels.len() {
                    for b in a + 1..labels.len() {
                        pairs.push((labels[a], labels[b]));
                    }
                }
                if pairs.is_empty() {
                    continue 'tuples;
                }
                pairs_per_coord.push(pairs);
            }
            // Depth-first over pair choices; check the full product cube.
            let mut choice = vec![0usize; d];
            'assign: loop {
                work += 1 << d;
                if work > node_budget {
                    best.status = SearchStatus::LowerBoundOnly;
                    return best;
                }
                let ok = (0..(1usize << d)).all(|mask| {
                    let v: Vec<Label> = (0..d)
                        .map(|i| {
                            let (a, b) = pairs_per_coord[i][choice[i]];
                            if mask >> i & 1 == 0 {
                                a
                            } else {
                                b
                            }
                        })
                        .collect();
                    proj_set.contains(&v)
                });
                if ok {
                    let f = (0..d).map(|i| pairs_per_coord[i][choice[i]].0).collect();
                    let g = (0..d).map(|i| pairs_per_coord[i][choice[i]].1).collect();
                    shattered_here = Some(NatarajanWitness { points: points.clone(), f, g });
                    break 'tuples;
                }
                // Next assignment.
                let mut i = 0;
                loop {
                    if i == d {
                        break 'assign;
                    }
                    choice[i] += 1;
                    if choice[i] < pairs_per_coord[i].len() {
                        break;
                    }
                    choice[i] = 0;
                    i += 1;
                }
            }
        }
        match shattered_here {
            Some(w) => {
                best.dim = d;
                best.witness = Some(w);
            }
            None => break,
        }
    }
    best
}

/// Largest `d ≤ cap` such that some `d`-tuple is DS-shattered (its
/// projection contains a pseudo-cube), with the peeled core as witness.
pub fn ds_dimension(class: &HypothesisClass, cap: usize, node_budget: u64) -> DsResult {
    let cap = cap.min(class.n_domain());
    let mut best = DsResult { dim: 0, witness: None, status: SearchStatus::Exact };
    let mut work: u64 = 0;
    for d in 1..=cap {
        let mut found: Option<PseudoCubeWitness> = None;
        for combo in combinations(class.n_domain(), d) {
            let points: Vec<Instance> = combo.iter().map(|&i| Instance(i)).collect();
            let proj = class.projection(&points);
            // A d-dimensional pseudo-cube needs distinct values in every
            // coordinate, so skip tuples that are constant somewhere.
            if (0..d).any(|i| proj.iter().map(|v| v[i]).collect::<std::collections::BTreeSet<_>>().len() < 2)
            {
                continue;
            }
            let core = pseudo_cube_core(&proj, d, &mut work);
            if work > node_budget {
                best.status = SearchStatus::LowerBoundOnly;
                return best;
            }
            if !core.is_empty() {
                debug_assert!(is_pseudo_cube(&core, d));
                found = Some(PseudoCubeWitness { points, cube: core });
                break;
            }
        }
        match found {
            Some(w) => {
                best.dim = d;
                best.witness = Some(w);
            }
            None => break,
        }
    }
    best
}

/// A density value; `exact = false` means some projection exceeded the
/// subset cap and its maximal average degree was lower-bounded by the
/// full-set average degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Density {
    #[serde(serialize_with = "ser_ratio")]
    pub value: Ratio<u64>,
    pub exact: bool,
}

fn ser_ratio<S: serde::Serializer>(r: &Ratio<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut m = s.serialize_map(Some(3))?;
    m.serialize_entry("num", r.numer())?;
    m.serialize_entry("den", r.denom())?;
    m.serialize_entry("approx", &r.to_f64())?;
    m.end()
}

impl Density {
    pub fn to_f64(self) -> f64 {
        self.value.to_f64().unwrap_or(f64::NAN)
    }
}

/// `μ_H(m)`: the maximum over `m`-tuples of instances (repeats allowed; one
/// representative per multiset since the value is permutation-invariant) of
/// the maximal average degree of the projected one-inclusion graph.
pub fn density(class: &HypothesisClass, m: usize, subset_cap: usize) -> Result<Density> {
    if m == 0 || m > class.n_domain() {
        return Err(Error::Invariant(format!(
            "density requires 1 ≤ m ≤ domain size, got m = {m} over {}",
            class.n_domain()
        )));
    }
    let mut best = Ratio::new(0u64, 1u64);
    let mut exact = true;
    for tuple in multisets(class.n_domain(), m) {
        let points: Vec<Instance> = tuple.iter().map(|&i| Instance(i)).collect();
        let graph = OneInclusionGraph::from_class(class, &points)?;
        let (md, ex) = graph.max_avg_degree(subset_cap);
        exact &= ex;
        if md > best {
            best = md;
        }
    }
    Ok(Density { value: best, exact })
}

/// Upper bound on `μ_H(m)` valid for every `m`, including beyond the domain.
/// Beyond the domain size every tuple repeats points, and repeated
/// coordinates only fragment edges, so the running maximum over smaller
/// tuples dominates.
pub fn density_upper(class: &HypothesisClass, m: usize, subset_cap: usize) -> Result<Density> {
    let mut best = Ratio::new(0u64, 1u64);
    let mut exact = true;
    for m_eff in 1..=m.min(class.n_domain()) {
        let d = density(class, m_eff, subset_cap)?;
        exact &= d.exact;
        if d.value > best {
            best = d.value;
        }
    }
    Ok(Density { value: best, exact })
}

/// Smallest `n` with `⌈μ_H(n+1)⌉/(n+1) ≤ r`: the one-inclusion bound on the
/// sample size needed for expected realizable error `r`.
pub fn realizable_dim_upper(class: &HypothesisClass, r: f64, subset_cap: usize) -> Result<usize> {
    if !(0.0..0.5).contains(&r) || r <= 0.0 {
        return Err(Error::Invariant(format!("threshold r must lie in (0, 1/2), got {r}")));
    }
    let mut n = 1usize;
    loop {
        let mu = density_upper(class, n + 1, subset_cap)?;
        let ceil = mu.value.ceil().to_integer();
        if ceil as f64 / (n + 1) as f64 <= r {
            return Ok(n);
        }
        n += 1;
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct RealizableDimEstimate {
    /// Smallest sample size at which the one-inclusion learner's mean error
    /// over the generated realizable family fell to the threshold.
    pub lower: usize,
    /// Density-bound sample size (sound upper estimate).
    pub upper: usize,
    pub status: SearchStatus,
}

/// Brackets the realizable dimension at threshold `r`: the upper end from
/// the one-inclusion density bound, the lower end from Monte Carlo over a
/// generated family of realizable distributions (uniform over the graph of
/// each member restricted to random supports).
pub fn estimate_realizable_dimension(
    class: &HypothesisClass,
    r: f64,
    trial_budget: u64,
    seed: u64,
) -> Result<RealizableDimEstimate> {
    let upper = realizable_dim_upper(class, r, DEFAULT_SUBSET_CAP)?;
    let predictor = OigPredictor::new(class);
    let n_domain = class.n_domain();

    // Generated family: per member, a few random nonempty supports.
    let supports_per_member = 3usize;
    let draws = 8usize;
    let mut family: Vec<Distribution> = Vec::new();
    let mut rng = rng::stream(seed, 0x5ea1);
    for h in class.members() {
        for _ in 0..supports_per_member {
            let mut support: Vec<usize> =
                (0..n_domain).filter(|_| rng.gen::<f64>() < 0.5).collect();
            if support.is_empty() {
                support.push(rng.gen_range(0..n_domain));
            }
            let mut masses = vec![0.0; n_domain * class.n_labels()];
            for &x in &support {
                masses[x * class.n_labels() + h.at(Instance(x)).0] = 1.0;
            }
            family.push(Distribution::from_masses(n_domain, class.n_labels(), masses)?);
        }
    }

    let mut used: u64 = 0;
    for n in 1..=upper {
        let mut total = 0.0;
        let mut count = 0usize;
        for (fi, p) in family.iter().enumerate() {
            for t in 0..draws {
                if used >= trial_budget {
                    return Ok(RealizableDimEstimate {
                        lower: n,
                        upper,
                        status: SearchStatus::LowerBoundOnly,
                    });
                }
                used += 1;
                let s = sample(p, n, rng::fnv1a([seed, n as u64, fi as u64, t as u64]));
                let h = predictor.learn(&s)?;
                total += error_rate(&h, p)?;
                count += 1;
            }
        }
        if total / count as f64 <= r {
            return Ok(RealizableDimEstimate { lower: n, upper, status: SearchStatus::Exact });
        }
    }
    Ok(RealizableDimEstimate { lower: upper, upper, status: SearchStatus::Exact })
}

/// Derives the weak-learner sample size used by the compression schemes: the
/// density-bound sample size at error 1/3, honoring an explicit override.
pub fn weak_sample_size(class: &HypothesisClass, override_d: Option<usize>) -> Result<usize> {
    match override_d {
        Some(d) if d >= 1 => Ok(d),
        Some(d) => Err(Error::Invariant(format!("weak sample size must be ≥ 1, got {d}"))),
        None => realizable_dim_upper(class, 1.0 / 3.0, DEFAULT_SUBSET_CAP),
    }
}

#[allow(unused)]
fn unused(_: Example) {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::gen_constant_class;
    use proptest::prelude::*;

    fn full_cube(d: usize) -> HypothesisClass {
        let tables: Vec<Vec<usize>> =
            (0..(1usize << d)).map(|m| (0..d).map(|i| (m >> i) & 1).collect()).collect();
        HypothesisClass::from_tables(d, 2, &tables).unwrap()
    }

    fn cycle6_class() -> HypothesisClass {
        let tables =
            vec![vec![0, 0], vec![0, 1], vec![1, 1], vec![1, 2], vec![2, 2], vec![2, 0]];
        HypothesisClass::from_tables(2, 3, &tables).unwrap()
    }

    #[test]
    fn full_cube_dimensions() {
        for d in 1..=3 {
            let class = full_cube(d);
            let nat = natarajan_dimension(&class, d, DEFAULT_NODE_BUDGET);
            assert_eq!(nat.dim, d);
            assert_eq!(nat.status, SearchStatus::Exact);
            let w = nat.witness.unwrap();
            assert!(w.f.iter().zip(&w.g).all(|(a, b)| a != b));
            let ds = ds_dimension(&class, d, DEFAULT_NODE_BUDGET);
            assert_eq!(ds.dim, d);
            assert!(is_pseudo_cube(&ds.witness.unwrap().cube, d));
        }
    }

    #[test]
    fn constant_class_has_dimension_one() {
        for k in 2..=4 {
            let class = gen_constant_class(k, 3).unwrap();
            assert_eq!(natarajan_dimension(&class, 3, DEFAULT_NODE_BUDGET).dim, 1);
            assert_eq!(ds_dimension(&class, 3, DEFAULT_NODE_BUDGET).dim, 1);
        }
    }

    #[test]
    fn singleton_class_has_dimension_zero() {
        let class = HypothesisClass::from_tables(3, 2, &[vec![0, 1, 0]]).unwrap();
        let nat = natarajan_dimension(&class, 3, DEFAULT_NODE_BUDGET);
        assert_eq!(nat.dim, 0);
        assert!(nat.witness.is_none());
        assert_eq!(ds_dimension(&class, 3, DEFAULT_NODE_BUDGET).dim, 0);
    }

    #[test]
    fn cycle_class_separates_the_dimensions() {
        let class = cycle6_class();
        assert_eq!(natarajan_dimension(&class, 2, DEFAULT_NODE_BUDGET).dim, 1);
        let ds = ds_dimension(&class, 2, DEFAULT_NODE_BUDGET);
        assert_eq!(ds.dim, 2);
        assert_eq!(ds.witness.unwrap().cube.len(), 6);
    }

    #[test]
    fn pseudo_cube_examples() {
        let cube: Vec<Vec<Label>> = vec![
            vec![Label(0), Label(0)],
            vec![Label(0), Label(1)],
            vec![Label(1), Label(0)],
            vec![Label(1), Label(1)],
        ];
        assert!(is_pseudo_cube(&cube, 2));
        assert!(!is_pseudo_cube(&[vec![Label(0)]], 1));
        assert!(!is_pseudo_cube(&[vec![Label(0), Label(0)]], 2));
        let cycle: Vec<Vec<Label>> = [[0, 0], [0, 1], [1, 1], [1, 2], [2, 2], [2, 0]]
            .iter()
            .map(|v| v.iter().map(|&i| Label(i)).collect())
            .collect();
        assert!(is_pseudo_cube(&cycle, 2));
        assert!(!is_pseudo_cube(&[], 1));
    }

    #[test]
    fn density_matches_known_values() {
        let class = full_cube(2);
        assert_eq!(density(&class, 2, 20).unwrap().value, Ratio::new(2, 1));
        let single = HypothesisClass::from_tables(2, 2, &[vec![0, 1]]).unwrap();
        assert_eq!(density(&single, 2, 20).unwrap().value, Ratio::new(0, 1));
        assert_eq!(density(&cycle6_class(), 2, 20).unwrap().value, Ratio::new(2, 1));
    }

    #[test]
    fn density_equals_m_exactly_up_to_ds_dimension() {
        // The density form of the DS dimension: μ(m) = m iff m ≤ d_DS.
        for class in [full_cube(2), full_cube(3), cycle6_class(), gen_constant_class(3, 3).unwrap()]
        {
            let ds = ds_dimension(&class, class.n_domain(), DEFAULT_NODE_BUDGET).dim;
            for m in 1..=class.n_domain() {
                let mu = density(&class, m, 20).unwrap().value;
                assert!(mu <= Ratio::new(m as u64, 1));
                assert_eq!(mu == Ratio::new(m as u64, 1), m <= ds, "m={m} ds={ds} mu={mu}");
            }
        }
    }

    #[test]
    fn budget_exhaustion_reports_lower_bound() {
        let class = full_cube(3);
        let nat = natarajan_dimension(&class, 3, 1);
        assert_eq!(nat.status, SearchStatus::LowerBoundOnly);
        let ds = ds_dimension(&class, 3, 1);
        assert_eq!(ds.status, SearchStatus::LowerBoundOnly);
    }

    #[test]
    fn realizable_bracket_for_singleton_is_one() {
        let class = HypothesisClass::from_tables(2, 2, &[vec![0, 1]]).unwrap();
        let est = estimate_realizable_dimension(&class, 1.0 / (9.0 * std::f64::consts::E), 10_000, 7)
            .unwrap();
        assert_eq!(est.lower, 1);
        assert_eq!(est.upper, 1);
    }

    #[test]
    fn realizable_upper_for_cube_tracks_density() {
        let class = full_cube(2);
        let r = 1.0 / (9.0 * std::f64::consts::E);
        let upper = realizable_dim_upper(&class, r, 20).unwrap();
        // Smallest n with 2/(n+1) ≤ r.
        let expected = (2.0 / r).ceil() as usize - 1;
        assert!(upper <= expected);
        let est = estimate_realizable_dimension(&class, r, 50_000, 3).unwrap();
        assert!(est.lower <= est.upper);
    }

    #[test]
    fn constant_class_upper_uses_unit_density() {
        let class = gen_constant_class(2, 3).unwrap();
        let r = 0.2;
        let upper = realizable_dim_upper(&class, r, 20).unwrap();
        // μ ≤ 1 so the bound is the smallest n with 1/(n+1) ≤ r, i.e. n = 4.
        assert_eq!(upper, 4);
    }

    // Textbook VC oracle for the binary special case.
    fn vc_dimension_binary(class: &HypothesisClass) -> usize {
        assert_eq!(class.n_labels(), 2);
        let n = class.n_domain();
        let mut best = 0;
        for d in 1..=n {
            let mut any = false;
            for combo in combinations(n, d) {
                let points: Vec<Instance> = combo.iter().map(|&i| Instance(i)).collect();
                let proj = class.projection(&points);
                if proj.len() == 1 << d {
                    any = true;
                    break;
                }
            }
            if any {
                best = d;
            } else {
                break;
            }
        }
        best
    }

    #[test]
    fn binary_classes_collapse_to_vc() {
        let mut rng = crate::rng::root(21);
        for _ in 0..40 {
            let n_domain = rng.gen_range(1..=4);
            let n_h = rng.gen_range(1..=12);
            let tables: Vec<Vec<usize>> = (0..n_h)
                .map(|_| (0..n_domain).map(|_| rng.gen_range(0..2)).collect())
                .collect();
            let class = HypothesisClass::from_tables(n_domain, 2, &tables).unwrap();
            let vc = vc_dimension_binary(&class);
            assert_eq!(natarajan_dimension(&class, 4, DEFAULT_NODE_BUDGET).dim, vc);
            assert_eq!(ds_dimension(&class, 4, DEFAULT_NODE_BUDGET).dim, vc);
        }
    }

    proptest! {
        #[test]
        fn pseudo_cube_invariant_under_symmetries(
            perm_seed in 0u64..1000,
            dims in 1usize..3,
        ) {
            // Start from a cube, permute coordinates and rename labels per
            // coordinate; the predicate must not change.
            let d = dims + 1;
            let cube: Vec<Vec<Label>> = (0..(1usize << d))
                .map(|m| (0..d).map(|i| Label((m >> i) & 1)).collect())
                .collect();
            let mut rng = crate::rng::root(perm_seed);
            let mut perm: Vec<usize> = (0..d).collect();
            for i in (1..d).rev() {
                let j = rng.gen_range(0..=i);
                perm.swap(i, j);
            }
            let renames: Vec<usize> = (0..d).map(|_| rng.gen_range(0..5)).collect();
            let transformed: Vec<Vec<Label>> = cube
                .iter()
                .map(|v| {
                    (0..d)
                        .map(|i| Label(v[perm[i]].0 ^ 0) )
                        .enumerate()
                        .map(|(i, l)| Label(l.0 + renames[i]))
                        .collect()
                })
                .collect();
            prop_assert!(is_pseudo_cube(&cube, d));
            prop_assert!(is_pseudo_cube(&transformed, d));
        }

        #[test]
        fn density_bounded_by_tuple_length(
            seed in 0u64..500,
        ) {
            let mut rng = crate::rng::root(seed);
            let n_domain = rng.gen_range(1..=3);
            let n_labels = rng.gen_range(2..=3);
            let n_h = rng.gen_range(1..=10);
            let tables: Vec<Vec<usize>> = (0..n_h)
                .map(|_| (0..n_domain).map(|_| rng.gen_range(0..n_labels)).collect())
                .collect();
            let class = HypothesisClass::from_tables(n_domain, n_labels, &tables).unwrap();
            for m in 1..=n_domain {
                let mu = density(&class, m, 16).unwrap();
                prop_assert!(mu.value <= Ratio::new(m as u64, 1));
            }
        }
    }
}
