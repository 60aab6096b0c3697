//! One-inclusion graphs, exact minimum-max-out-degree orientations, and the
//! one-inclusion predictor used as the realizable weak learner everywhere
//! downstream.
//!
//! The predictor canonicalizes each query by stable-sorting the projected
//! tuple, so permutations of the same training multiset share one
//! orientation. That keeps the predictor a deterministic function of the
//! unordered data and lets a memo cache (keyed by projected vertex set)
//! absorb the repeated orientation work inside Monte Carlo loops.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_rational::Ratio;

use crate::data::{Hypothesis, HypothesisClass, Instance, Label, Sample};
use crate::error::{Error, Result};
use crate::flow::FlowNetwork;

/// A hyperedge: the vertices agreeing on every coordinate except
/// `direction`. Singleton groups are edges too.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub direction: usize,
    /// Indices into the graph's vertex list, ascending.
    pub members: Vec<usize>,
}

/// Hypergraph on label vectors in `Y^n`; edges group vertices that agree on
/// all but one coordinate, one edge per (direction, context).
#[derive(Debug, Clone)]
pub struct OneInclusionGraph {
    n: usize,
    vertices: Vec<Vec<Label>>,
    edges: Vec<Edge>,
    /// `edge_of[direction][vertex] = edge index`; per direction the edges
    /// partition the vertex set.
    edge_of: Vec<Vec<usize>>,
}

impl OneInclusionGraph {
    /// Builds the graph of a vertex set. Vertices are deduplicated and kept
    /// in canonical (lexicographic) order.
    pub fn build(vertices: &[Vec<Label>], n: usize) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Invariant("vertex set must be nonempty".into()));
        }
        if vertices.iter().any(|v| v.len() != n) {
            return Err(Error::DimensionMismatch(format!("all vertices must have length {n}")));
        }
        let mut vs: Vec<Vec<Label>> = vertices.to_vec();
        vs.sort();
        vs.dedup();

        let mut edges = Vec::new();
        let mut edge_of = vec![vec![usize::MAX; vs.len()]; n];
        for dir in 0..n {
            // Group by context: the vertex with coordinate `dir` blanked.
            let mut groups: std::collections::BTreeMap<Vec<Label>, Vec<usize>> =
                std::collections::BTreeMap::new();
            for (vi, v) in vs.iter().enumerate() {
                let mut ctx = v.clone();
                ctx[dir] = Label(usize::MAX);
                groups.entry(ctx).or_default().push(vi);
            }
            for (_, members) in groups {
                let ei = edges.len();
                for &m in &members {
                    edge_of[dir][m] = ei;
                }
                edges.push(Edge { direction: dir, members });
            }
        }
        Ok(OneInclusionGraph { n, vertices: vs, edges, edge_of })
    }

    pub fn from_class(class: &HypothesisClass, tuple: &[Instance]) -> Result<Self> {
        Self::build(&class.projection(tuple), tuple.len())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Vec<Label>] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Edge of `direction` containing vertex `v`.
    pub fn edge_at(&self, direction: usize, v: usize) -> usize {
        self.edge_of[direction][v]
    }

    /// Degree of a vertex: incident edges of size ≥ 2.
    pub fn degree(&self, v: usize) -> usize {
        (0..self.n).filter(|&d| self.edges[self.edge_of[d][v]].members.len() >= 2).count()
    }

    /// Average degree of the whole graph: `(1/|V|) Σ_{|e| ≥ 2} |e|`.
    pub fn avg_degree(&self) -> Ratio<u64> {
        let total: u64 = self
            .edges
            .iter()
            .filter(|e| e.members.len() >= 2)
            .map(|e| e.members.len() as u64)
            .sum();
        Ratio::new(total, self.vertices.len() as u64)
    }

    /// Maximal average degree over induced subgraphs, exhaustive over vertex
    /// subsets (Gray-code incremental). Exact when `|V| ≤ subset_cap`;
    /// otherwise falls back to the full-set average degree and reports
    /// `exact = false` (a lower bound).
    pub fn max_avg_degree(&self, subset_cap: usize) -> (Ratio<u64>, bool) {
        let nv = self.vertices.len();
        if nv > subset_cap {
            return (self.avg_degree(), false);
        }
        let big_edges: Vec<&Edge> = self.edges.iter().filter(|e| e.members.len() >= 2).collect();
        if big_edges.is_empty() {
            return (Ratio::new(0, 1), true);
        }
        // incident[v] = indices into big_edges.
        let mut incident = vec![Vec::new(); nv];
        for (bi, e) in big_edges.iter().enumerate() {
            for &m in &e.members {
                incident[m].push(bi);
            }
        }
        let mut edge_count = vec![0u32; big_edges.len()];
        let mut in_set = vec![false; nv];
        let mut counted_sum: u64 = 0; // Σ_e |e∩U|·1{|e∩U| ≥ 2}
        let mut set_size: u64 = 0;
        let (mut best_num, mut best_den) = (0u64, 1u64);
        for g in 1u64..(1u64 << nv) {
            let v = g.trailing_zeros() as usize;
            if in_set[v] {
                in_set[v] = false;
                set_size -= 1;
                for &bi in &incident[v] {
                    edge_count[bi] -= 1;
                    match edge_count[bi] {
                        1 => counted_sum -= 2,
                        c if c >= 2 => counted_sum -= 1,
                        _ => {}
                    }
                }
            } else {
                in_set[v] = true;
                set_size += 1;
                for &bi in &incident[v] {
                    edge_count[bi] += 1;
                    match edge_count[bi] {
                        2 => counted_sum += 2,
                        c if c > 2 => counted_sum += 1,
                        _ => {}
                    }
                }
            }
            if set_size > 0 && counted_sum * best_den > best_num * set_size {
                best_num = counted_sum;
                best_den = set_size;
            }
        }
        (Ratio::new(best_num, best_den), true)
    }
}

/// An assignment of every edge to one of its member vertices.
#[derive(Debug, Clone)]
pub struct Orientation {
    /// `assignment[edge index] = vertex index`.
    pub assignment: Vec<usize>,
}

impl Orientation {
    /// Out-degree of `v`: incident edges not assigned to it.
    pub fn out_degree(&self, g: &OneInclusionGraph, v: usize) -> usize {
        (0..g.n())
            .filter(|&d| {
                let e = g.edge_at(d, v);
                self.assignment[e] != v
            })
            .count()
    }

    pub fn max_out_degree(&self, g: &OneInclusionGraph) -> usize {
        (0..g.vertices().len()).map(|v| self.out_degree(g, v)).max().unwrap_or(0)
    }

    pub fn is_valid(&self, g: &OneInclusionGraph) -> bool {
        self.assignment.len() == g.edges().len()
            && self
                .assignment
                .iter()
                .zip(g.edges())
                .all(|(&v, e)| e.members.binary_search(&v).is_ok())
    }
}

/// Can every vertex receive at least `deg(v) − k` of its incident size-≥2
/// edges? Tested as a unit-supply bipartite flow; returns the assignment
/// induced by an integral maximum flow when feasible.
fn feasible_orientation(g: &OneInclusionGraph, k: usize) -> Option<Vec<usize>> {
    let nv = g.vertices().len();
    let big: Vec<usize> = (0..g.edges().len())
        .filter(|&ei| g.edges()[ei].members.len() >= 2)
        .collect();
    let demand: Vec<i64> =
        (0..nv).map(|v| (g.degree(v) as i64 - k as i64).max(0)).collect();
    let total_demand: i64 = demand.iter().sum();

    // Nodes: 0 = source, 1..=E edge nodes, then vertex nodes, then sink.
    let src = 0;
    let edge_base = 1;
    let vertex_base = edge_base + big.len();
    let sink = vertex_base + nv;
    let mut net = FlowNetwork::new(sink + 1);
    let mut member_arcs: Vec<Vec<(usize, usize)>> = Vec::with_capacity(big.len());
    for (bi, &ei) in big.iter().enumerate() {
        net.add_arc(src, edge_base + bi, 1);
        let mut arcs = Vec::new();
        for &m in &g.edges()[ei].members {
            let idx = net.add_arc(edge_base + bi, vertex_base + m, 1);
            arcs.push((m, idx));
        }
        member_arcs.push(arcs);
    }
    for v in 0..nv {
        if demand[v] > 0 {
            net.add_arc(vertex_base + v, sink, demand[v]);
        }
    }
    if net.max_flow(src, sink) < total_demand {
        return None;
    }

    let mut assignment = vec![usize::MAX; g.edges().len()];
    for (ei, e) in g.edges().iter().enumerate() {
        if e.members.len() == 1 {
            assignment[ei] = e.members[0];
        }
    }
    for (bi, &ei) in big.iter().enumerate() {
        let assigned = member_arcs[bi]
            .iter()
            .find(|&&(_, idx)| net.flow_on(edge_base + bi, idx) > 0)
            .map(|&(m, _)| m);
        // Edges the flow left unassigned go to their canonically smallest
        // member; that only lowers the receiver's out-degree.
        assignment[ei] = assigned.unwrap_or(g.edges()[ei].members[0]);
    }
    Some(assignment)
}

/// Exact minimum of the maximum out-degree over all orientations, with a
/// witness orientation. Binary search on the threshold; feasibility at each
/// threshold is an integral flow problem, so the witness is always a valid
/// assignment.
pub fn min_max_outdegree_orientation(g: &OneInclusionGraph) -> (Orientation, usize) {
    let max_deg = (0..g.vertices().len()).map(|v| g.degree(v)).max().unwrap_or(0);
    let (mut lo, mut hi) = (0usize, max_deg);
    let mut best = feasible_orientation(g, hi).expect("max degree threshold is always feasible");
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match feasible_orientation(g, mid) {
            Some(a) => {
                best = a;
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    let orientation = Orientation { assignment: best };
    debug_assert!(orientation.is_valid(g));
    (orientation, lo)
}

#[derive(Debug)]
struct OrientedGraph {
    graph: OneInclusionGraph,
    orientation: Orientation,
}

/// One-inclusion predictor over a fixed class, with a memo cache keyed by
/// the projected vertex set (safe for concurrent readers).
pub struct OigPredictor<'a> {
    class: &'a HypothesisClass,
    cache: RwLock<HashMap<Vec<Vec<Label>>, Arc<OrientedGraph>>>,
}

impl<'a> OigPredictor<'a> {
    pub fn new(class: &'a HypothesisClass) -> Self {
        OigPredictor { class, cache: RwLock::new(HashMap::new()) }
    }

    pub fn class(&self) -> &HypothesisClass {
        self.class
    }

    fn oriented(&self, proj: Vec<Vec<Label>>, n: usize) -> Result<Arc<OrientedGraph>> {
        if let Some(hit) = self.cache.read().expect("cache lock").get(&proj) {
            return Ok(hit.clone());
        }
        let graph = OneInclusionGraph::build(&proj, n)?;
        let (orientation, _) = min_max_outdegree_orientation(&graph);
        let entry = Arc::new(OrientedGraph { graph, orientation });
        self.cache
            .write()
            .expect("cache lock")
            .entry(proj)
            .or_insert_with(|| entry.clone());
        Ok(entry)
    }

    /// Predicts the label at `x` from a realizable training sequence:
    /// project the class onto the training points plus `x`, orient the
    /// one-inclusion graph, and read off the oriented endpoint of the edge
    /// consistent with the training labels in the query direction.
    pub fn predict(&self, s: &Sample, x: Instance) -> Result<Label> {
        if self.class.realizer(s).is_none() {
            return Err(Error::NotRealizable(
                "one-inclusion prediction requires a class-realizable sequence".into(),
            ));
        }
        if x.0 >= self.class.n_domain() {
            return Err(Error::DimensionMismatch(format!(
                "query instance {} outside domain of size {}",
                x.0,
                self.class.n_domain()
            )));
        }
        // Canonical coordinate order: stable sort of (training points, x) by
        // instance index. Permutations of the same multiset then share one
        // orientation, and the query is tracked through the sort.
        let n = s.len();
        let mut order: Vec<usize> = (0..=n).collect();
        let pos_x = |i: usize| if i < n { s.items()[i].x } else { x };
        order.sort_by_key(|&i| (pos_x(i), usize::from(i == n)));
        let tuple: Vec<Instance> = order.iter().map(|&i| pos_x(i)).collect();
        let q = order.iter().position(|&i| i == n).expect("query present");

        let proj = self.class.projection(&tuple);
        let oriented = self.oriented(proj, tuple.len())?;

        // Training labels pin every coordinate except q; the consistent
        // vertices form a single edge in direction q.
        let matches = |v: &[Label]| {
            order.iter().enumerate().all(|(c, &i)| i == n || v[c] == s.items()[i].y)
        };
        let v0 = oriented
            .graph
            .vertices()
            .iter()
            .position(|v| matches(v))
            .expect("realizable sequence has a consistent vertex");
        let edge = oriented.graph.edge_at(q, v0);
        let chosen = oriented.orientation.assignment[edge];
        Ok(oriented.graph.vertices()[chosen][q])
    }

    /// The full classifier induced by a training sequence: one-inclusion
    /// prediction at every domain point.
    pub fn learn(&self, s: &Sample) -> Result<Hypothesis> {
        let labels: Result<Vec<Label>> =
            (0..self.class.n_domain()).map(|x| self.predict(s, Instance(x))).collect();
        Ok(Hypothesis::new(labels?))
    }
}

/// Convenience wrapper: one-shot prediction without a shared cache.
pub fn oig_predict(s: &Sample, class: &HypothesisClass, x: Instance) -> Result<Label> {
    OigPredictor::new(class).predict(s, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Example;

    fn labels(v: &[usize]) -> Vec<Label> {
        v.iter().map(|&i| Label(i)).collect()
    }

    fn cube2() -> Vec<Vec<Label>> {
        vec![labels(&[0, 0]), labels(&[0, 1]), labels(&[1, 0]), labels(&[1, 1])]
    }

    fn cycle6() -> Vec<Vec<Label>> {
        [[0, 0], [0, 1], [1, 1], [1, 2], [2, 2], [2, 0]]
            .iter()
            .map(|v| labels(v))
            .collect()
    }

    #[test]
    fn square_has_four_two_edges() {
        let g = OneInclusionGraph::build(&cube2(), 2).unwrap();
        assert_eq!(g.vertices().len(), 4);
        let big: Vec<_> = g.edges().iter().filter(|e| e.members.len() == 2).collect();
        assert_eq!(big.len(), 4);
        assert_eq!(g.edges().len(), 4);
    }

    #[test]
    fn single_vertex_has_singleton_edge_per_direction() {
        let g = OneInclusionGraph::build(&[labels(&[0, 0])], 2).unwrap();
        assert_eq!(g.edges().len(), 2);
        assert!(g.edges().iter().all(|e| e.members.len() == 1));
        let (sigma, k) = min_max_outdegree_orientation(&g);
        assert_eq!(k, 0);
        assert!(sigma.is_valid(&g));
    }

    #[test]
    fn cycle6_structure_and_density() {
        let g = OneInclusionGraph::build(&cycle6(), 2).unwrap();
        assert_eq!(g.vertices().len(), 6);
        assert_eq!(g.edges().iter().filter(|e| e.members.len() == 2).count(), 6);
        let (md, exact) = g.max_avg_degree(20);
        assert!(exact);
        assert_eq!(md, Ratio::new(2, 1));
    }

    #[test]
    fn square_orientation_needs_out_degree_one() {
        let g = OneInclusionGraph::build(&cube2(), 2).unwrap();
        let (sigma, k) = min_max_outdegree_orientation(&g);
        assert_eq!(k, 1);
        assert!(sigma.is_valid(&g));
        assert_eq!(sigma.max_out_degree(&g), 1);
    }

    #[test]
    fn lone_pair_edge_costs_one() {
        // Two vertices differing in one coordinate of one: a single size-2
        // edge (plus the other direction's singletons).
        let g = OneInclusionGraph::build(&[labels(&[0]), labels(&[1])], 1).unwrap();
        let (_, k) = min_max_outdegree_orientation(&g);
        assert_eq!(k, 1);
    }

    #[test]
    fn predictor_follows_a_singleton_class() {
        let class = HypothesisClass::from_tables(3, 2, &[vec![1, 0, 1]]).unwrap();
        let predictor = OigPredictor::new(&class);
        let s = Sample::new(vec![Example::new(0, 1)]);
        assert_eq!(predictor.predict(&s, Instance(2)).unwrap(), Label(1));
        let h = predictor.learn(&s).unwrap();
        assert_eq!(h.indices(), vec![1, 0, 1]);
    }

    #[test]
    fn predictor_returns_forced_label_when_consistent_members_agree() {
        // Members disagree on x=0 but all consistent ones agree at x=1 once
        // the training pins x=2.
        let class =
            HypothesisClass::from_tables(3, 2, &[vec![0, 1, 0], vec![1, 1, 0], vec![0, 0, 1]])
                .unwrap();
        let predictor = OigPredictor::new(&class);
        let s = Sample::new(vec![Example::new(2, 0)]);
        assert_eq!(predictor.predict(&s, Instance(1)).unwrap(), Label(1));
    }

    #[test]
    fn predictor_rejects_unrealizable_sequences() {
        let class = HypothesisClass::from_tables(2, 2, &[vec![0, 0]]).unwrap();
        let s = Sample::new(vec![Example::new(0, 1)]);
        assert!(matches!(
            OigPredictor::new(&class).predict(&s, Instance(1)),
            Err(Error::NotRealizable(_))
        ));
    }

    #[test]
    fn prediction_is_deterministic_and_permutation_invariant() {
        let class = HypothesisClass::from_tables(
            4,
            3,
            &[vec![0, 1, 2, 0], vec![1, 1, 0, 2], vec![2, 0, 1, 1], vec![0, 0, 0, 0]],
        )
        .unwrap();
        let predictor = OigPredictor::new(&class);
        let s = Sample::new(vec![Example::new(0, 0), Example::new(1, 1)]);
        let s_rev = Sample::new(vec![Example::new(1, 1), Example::new(0, 0)]);
        let a = predictor.predict(&s, Instance(3)).unwrap();
        let b = predictor.predict(&s_rev, Instance(3)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, predictor.predict(&s, Instance(3)).unwrap());
    }

    #[test]
    fn cube_density_equals_dimension() {
        for d in 1..=3usize {
            let mut vs = Vec::new();
            for mask in 0..(1usize << d) {
                vs.push((0..d).map(|i| Label((mask >> i) & 1)).collect::<Vec<_>>());
            }
            let g = OneInclusionGraph::build(&vs, d).unwrap();
            let (md, exact) = g.max_avg_degree(20);
            assert!(exact);
            assert_eq!(md, Ratio::new(d as u64, 1));
        }
    }

    #[test]
    fn max_avg_degree_finds_dense_subgraph() {
        // A square plus a pendant far vertex: the best subset is the square
        // itself, not the full graph.
        let mut vs = cube2();
        vs.push(labels(&[0, 7]));
        let g = OneInclusionGraph::build(&vs, 2).unwrap();
        let (md, exact) = g.max_avg_degree(20);
        assert!(exact);
        assert_eq!(md, Ratio::new(2, 1));
        assert!(g.avg_degree() < md);
    }
}
