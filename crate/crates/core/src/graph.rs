//! Kneser-family graphs at desk scale, breadth-first search, and the generic
//! exact distance-`d` transform.
//!
//! Vertices are colex ranks. A graph is either *implicit* (adjacency is a set of
//! allowed intersection sizes, neighbors generated on demand) or *explicit*
//! (a compressed neighbor table, sorted per vertex).

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::formulas::{exact_adjacency_interval, AdjInterval, Distance};
use crate::params::{FamilySpec, GenKneserConvention};
use crate::subset::{
    binomial, next_same_popcount, rank_bits, unrank_bits, SubMasks, Vertex, MAX_GROUND,
};
use crate::{Error, Result};

/// Cap on the number of vertices any construction or all-pairs pass may touch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(2_000_000);

    pub fn check(&self, vertices: u64) -> Result<()> {
        if vertices > self.0 {
            Err(Error::BudgetExceeded {
                vertices,
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

/// Set of intersection sizes `s` for which two `k`-subsets are adjacent.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntersectionRule(u128);

impl IntersectionRule {
    pub const NONE: IntersectionRule = IntersectionRule(0);

    pub fn single(s: u32) -> Self {
        Self::from_sizes([s])
    }

    pub fn from_sizes<I: IntoIterator<Item = u32>>(sizes: I) -> Self {
        let mut mask = 0u128;
        for s in sizes {
            assert!(s <= MAX_GROUND, "intersection size {} too large", s);
            mask |= 1 << s;
        }
        IntersectionRule(mask)
    }

    /// `lo..=hi`.
    pub fn range(lo: u32, hi: u32) -> Self {
        Self::from_sizes(lo..=hi)
    }

    pub fn from_interval(interval: AdjInterval) -> Self {
        match interval.bounds() {
            Some((lo, hi)) => Self::range(lo, hi),
            None => Self::NONE,
        }
    }

    #[inline]
    pub fn allows(&self, s: u32) -> bool {
        s <= MAX_GROUND && self.0 & (1 << s) != 0
    }

    pub fn sizes(&self) -> impl Iterator<Item = u32> + '_ {
        (0..=MAX_GROUND).filter(move |&s| self.allows(s))
    }
}

/// Adjacency rule for a built-in family.
pub fn family_rule(spec: &FamilySpec) -> Result<IntersectionRule> {
    Ok(match spec {
        FamilySpec::Kneser(_) => IntersectionRule::single(0),
        FamilySpec::Exact(p) if p.d() == 1 => IntersectionRule::single(0),
        FamilySpec::Exact(p) => IntersectionRule::from_interval(exact_adjacency_interval(p)?),
        FamilySpec::GenKneser(p, GenKneserConvention::AtMost) => IntersectionRule::range(0, p.i()),
        FamilySpec::GenKneser(p, GenKneserConvention::Below) => {
            IntersectionRule::from_sizes(0..p.i())
        }
        FamilySpec::Johnson(p) => IntersectionRule::single(p.i()),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphMode {
    Implicit,
    Explicit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct SubsetShape {
    n: u32,
    k: u32,
}

#[derive(Clone, Debug)]
enum Adjacency {
    Implicit(IntersectionRule),
    Explicit {
        offsets: Vec<usize>,
        targets: Vec<u32>,
    },
}

/// An undirected simple graph on `0..vertex_count`.
#[derive(Clone, Debug)]
pub struct Graph {
    vertex_count: u32,
    shape: Option<SubsetShape>,
    adjacency: Adjacency,
}

impl Graph {
    /// Implicit graph on the `k`-subsets of `[n]`, joined when their intersection size is allowed.
    pub fn implicit(n: u32, k: u32, rule: IntersectionRule, budget: Budget) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::GroundSetTooLarge(n));
        }
        if k > n {
            return Err(Error::InvalidParams("k exceeds n"));
        }
        let count = binomial(n, k);
        budget.check(count)?;
        if count > u64::from(u32::MAX) {
            return Err(Error::BudgetExceeded {
                vertices: count,
                budget: u64::from(u32::MAX),
            });
        }
        // s = k would be a self loop.
        let rule = IntersectionRule(rule.0 & !(1u128 << k));
        Ok(Self {
            vertex_count: count as u32,
            shape: Some(SubsetShape { n, k }),
            adjacency: Adjacency::Implicit(rule),
        })
    }

    /// Explicit graph from an edge list. Duplicate edges collapse; self loops are rejected.
    pub fn from_edges<I>(vertex_count: u32, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut lists = vec![Vec::new(); vertex_count as usize];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: u64::from(w),
                        count: u64::from(vertex_count),
                    });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u64::from(u)));
            }
            lists[u as usize].push(v);
            lists[v as usize].push(u);
        }
        Ok(Self::from_lists(vertex_count, None, lists))
    }

    fn from_lists(vertex_count: u32, shape: Option<SubsetShape>, lists: Vec<Vec<u32>>) -> Self {
        let mut offsets = Vec::with_capacity(lists.len() + 1);
        let mut targets = Vec::new();
        offsets.push(0);
        for mut list in lists {
            list.sort_unstable();
            list.dedup();
            targets.extend_from_slice(&list);
            offsets.push(targets.len());
        }
        Self {
            vertex_count,
            shape,
            adjacency: Adjacency::Explicit { offsets, targets },
        }
    }

    /// Materializes the neighbor table of this graph.
    pub fn to_explicit(&self) -> Self {
        if let Adjacency::Explicit { .. } = self.adjacency {
            return self.clone();
        }
        let lists = (0..self.vertex_count).map(|v| self.neighbors(v)).collect();
        Self::from_lists(self.vertex_count, self.shape, lists)
    }

    #[inline]
    pub fn vertex_count(&self) -> u32 {
        self.vertex_count
    }

    pub fn is_explicit(&self) -> bool {
        matches!(self.adjacency, Adjacency::Explicit { .. })
    }

    /// `(n, k)` when the vertices are `k`-subsets of `[n]`.
    pub fn subset_shape(&self) -> Option<(u32, u32)> {
        self.shape.map(|s| (s.n, s.k))
    }

    /// The subset behind a vertex, when this is a subset graph.
    pub fn vertex(&self, v: u32) -> Option<Vertex> {
        let shape = self.shape?;
        if v >= self.vertex_count {
            return None;
        }
        Vertex::from_bits(unrank_bits(u64::from(v), shape.n, shape.k), shape.n).ok()
    }

    fn check_vertex(&self, v: u32) -> Result<()> {
        if v >= self.vertex_count {
            Err(Error::VertexOutOfRange {
                vertex: u64::from(v),
                count: u64::from(self.vertex_count),
            })
        } else {
            Ok(())
        }
    }

    /// Calls `f` on every neighbor of `v`, in no particular order.
    pub fn for_each_neighbor<F: FnMut(u32)>(&self, v: u32, mut f: F) {
        match &self.adjacency {
            Adjacency::Explicit { offsets, targets } => {
                let (start, end) = (offsets[v as usize], offsets[v as usize + 1]);
                targets[start..end].iter().for_each(|&w| f(w));
            }
            Adjacency::Implicit(rule) => {
                let SubsetShape { n, k } = self.shape.expect("implicit graphs are subset graphs");
                let own = unrank_bits(u64::from(v), n, k);
                let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
                let outside = full & !own;
                let room = outside.count_ones();
                for s in rule.sizes().take_while(|&s| s < k) {
                    if k - s > room {
                        continue;
                    }
                    for kept in SubMasks::new(own, s) {
                        for added in SubMasks::new(outside, k - s) {
                            f(rank_bits(kept | added) as u32);
                        }
                    }
                }
            }
        }
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: u32) -> Vec<u32> {
        let mut out = Vec::new();
        self.for_each_neighbor(v, |w| out.push(w));
        if !self.is_explicit() {
            out.sort_unstable();
        }
        out
    }

    pub fn degree(&self, v: u32) -> usize {
        match &self.adjacency {
            Adjacency::Explicit { offsets, .. } => offsets[v as usize + 1] - offsets[v as usize],
            Adjacency::Implicit(_) => {
                let mut count = 0;
                self.for_each_neighbor(v, |_| count += 1);
                count
            }
        }
    }

    pub fn is_adjacent(&self, u: u32, v: u32) -> bool {
        if u >= self.vertex_count || v >= self.vertex_count || u == v {
            return false;
        }
        match &self.adjacency {
            Adjacency::Explicit { offsets, targets } => targets
                [offsets[u as usize]..offsets[u as usize + 1]]
                .binary_search(&v)
                .is_ok(),
            Adjacency::Implicit(rule) => {
                let SubsetShape { n, k } = self.shape.expect("implicit graphs are subset graphs");
                let a = unrank_bits(u64::from(u), n, k);
                let b = unrank_bits(u64::from(v), n, k);
                rule.allows((a & b).count_ones())
            }
        }
    }

    /// Calls `f(u, v)` for every edge with `u < v`, in lexicographic order.
    pub fn for_each_edge<F: FnMut(u32, u32)>(&self, mut f: F) {
        for u in 0..self.vertex_count {
            for v in self.neighbors(u) {
                if v > u {
                    f(u, v);
                }
            }
        }
    }

    pub fn edge_count(&self) -> u64 {
        let total: u64 = (0..self.vertex_count).map(|v| self.degree(v) as u64).sum();
        total / 2
    }
}

/// Builds a built-in family graph.
pub fn build_family_graph(spec: &FamilySpec, budget: Budget, mode: GraphMode) -> Result<Graph> {
    let rule = family_rule(spec)?;
    let graph = Graph::implicit(spec.n(), spec.k(), rule, budget)?;
    Ok(match mode {
        GraphMode::Implicit => graph,
        GraphMode::Explicit => graph.to_explicit(),
    })
}

/// Single-source hop counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceField {
    source: u32,
    dist: Vec<Distance>,
}

impl DistanceField {
    pub fn source(&self) -> u32 {
        self.source
    }

    pub fn get(&self, v: u32) -> Distance {
        self.dist[v as usize]
    }

    pub fn as_slice(&self) -> &[Distance] {
        &self.dist
    }

    /// Largest distance from the source; `Infinite` if anything is unreached.
    pub fn eccentricity(&self) -> Distance {
        self.dist
            .iter()
            .copied()
            .max()
            .unwrap_or(Distance::Finite(0))
    }
}

/// Breadth-first search from `source`.
pub fn bfs_from(graph: &Graph, source: u32) -> Result<DistanceField> {
    graph.check_vertex(source)?;
    const UNSEEN: u32 = u32::MAX;
    let mut dist = vec![UNSEEN; graph.vertex_count as usize];
    let mut queue = Vec::with_capacity(graph.vertex_count as usize);
    dist[source as usize] = 0;
    queue.push(source);
    let mut head = 0;
    // Once every vertex is queued its distance is final.
    while head < queue.len() && queue.len() < dist.len() {
        let v = queue[head];
        head += 1;
        let next = dist[v as usize] + 1;
        graph.for_each_neighbor(v, |w| {
            if dist[w as usize] == UNSEEN {
                dist[w as usize] = next;
                queue.push(w);
            }
        });
    }
    let dist = dist
        .into_iter()
        .map(|d| {
            if d == UNSEEN {
                Distance::Infinite
            } else {
                Distance::Finite(d)
            }
        })
        .collect();
    Ok(DistanceField { source, dist })
}

/// Exact diameter by BFS. With `transitive_hint` only vertex 0 (the canonical
/// subset `{1..k}` in subset graphs) is searched, which is the diameter of any
/// vertex-transitive graph; otherwise every vertex is a source.
pub fn graph_diameter_bfs(
    graph: &Graph,
    transitive_hint: bool,
    budget: Budget,
) -> Result<Distance> {
    if graph.vertex_count == 0 {
        return Ok(Distance::Finite(0));
    }
    if transitive_hint {
        return Ok(bfs_from(graph, 0)?.eccentricity());
    }
    budget.check(u64::from(graph.vertex_count))?;
    let mut best = Distance::Finite(0);
    for v in 0..graph.vertex_count {
        best = best.max(bfs_from(graph, v)?.eccentricity());
        if best == Distance::Infinite {
            break;
        }
    }
    Ok(best)
}

/// Observed BFS distances, bucketed by intersection size with the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceProfile {
    buckets: Vec<BTreeSet<Distance>>,
}

impl DistanceProfile {
    /// Distances seen at intersection size `s`.
    pub fn bucket(&self, s: u32) -> &BTreeSet<Distance> {
        &self.buckets[s as usize]
    }

    /// The distance at `s` when every vertex at that intersection size agrees.
    pub fn singleton(&self, s: u32) -> Option<Distance> {
        let bucket = self.buckets.get(s as usize)?;
        if bucket.len() == 1 {
            bucket.first().copied()
        } else {
            None
        }
    }

    /// Every non-empty bucket holds a single distance.
    pub fn all_singletons(&self) -> bool {
        self.buckets.iter().all(|b| b.len() <= 1)
    }

    /// `(s, bucket)` for every intersection size, including empty buckets.
    pub fn iter(&self) -> impl Iterator<Item = (u32, &BTreeSet<Distance>)> {
        self.buckets.iter().enumerate().map(|(s, b)| (s as u32, b))
    }

    /// Largest observed distance.
    pub fn max(&self) -> Distance {
        self.buckets
            .iter()
            .filter_map(|b| b.last().copied())
            .max()
            .unwrap_or(Distance::Finite(0))
    }
}

/// Buckets an existing search by intersection size with its source.
pub fn profile_of(graph: &Graph, field: &DistanceField) -> Result<DistanceProfile> {
    let SubsetShape { n, k } = graph.shape.ok_or(Error::InvalidParams(
        "distance profiles need a subset graph",
    ))?;
    let source = unrank_bits(u64::from(field.source), n, k);
    let mut buckets = vec![BTreeSet::new(); k as usize + 1];
    let mut bits = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    // Walk vertices in rank order without unranking each one.
    for (rank, d) in field.dist.iter().enumerate() {
        if rank > 0 {
            bits = next_same_popcount(bits);
        }
        buckets[(bits & source).count_ones() as usize].insert(*d);
    }
    Ok(DistanceProfile { buckets })
}

/// BFS from `source`, bucketed by intersection size with it.
pub fn distance_profile(graph: &Graph, source: u32) -> Result<DistanceProfile> {
    profile_of(graph, &bfs_from(graph, source)?)
}

/// `G_{=d}`: the same vertices, joined when their distance in `graph` is exactly `d`.
pub fn exact_distance_transform(graph: &Graph, d: u32, budget: Budget) -> Result<Graph> {
    if d == 0 {
        return Err(Error::InvalidParams("d must be at least 1"));
    }
    budget.check(u64::from(graph.vertex_count))?;
    let target = Distance::Finite(d);
    let mut lists = Vec::with_capacity(graph.vertex_count as usize);
    for v in 0..graph.vertex_count {
        let field = bfs_from(graph, v)?;
        lists.push(
            field
                .dist
                .iter()
                .enumerate()
                .filter(|(_, &dist)| dist == target)
                .map(|(w, _)| w as u32)
                .collect(),
        );
    }
    Ok(Graph::from_lists(graph.vertex_count, graph.shape, lists))
}
