//! Core graph representation: small simple undirected graphs with stable
//! vertex ids, plus the fill/elimination primitives everything else is built
//! on.
//!
//! Vertices are numbered `0..n` at construction time and ids never change:
//! removing a vertex (by elimination) leaves a hole in the id space instead of
//! renumbering. All vertex sets are `u64` bitsets, which caps the supported
//! order at [`MAX_VERTICES`].

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Largest supported vertex universe (bitset-backed sets).
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph order {n} exceeds the supported maximum of {MAX_VERTICES}")]
    TooManyVertices { n: usize },
    #[error("self-loop at vertex {v}")]
    SelfLoop { v: usize },
    #[error("edge endpoint {v} out of range (n = {n})")]
    EndpointOutOfRange { v: usize, n: usize },
    #[error("vertex {v} is not in the graph")]
    VertexAbsent { v: usize },
}

// ---------------------------------------------------------------------------
// VertexSet
// ---------------------------------------------------------------------------

/// A set of vertex ids below [`MAX_VERTICES`], stored as a bitset.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub fn empty() -> Self {
        VertexSet(0)
    }

    /// The set `{0, 1, ..., n-1}`.
    #[inline]
    pub fn first_n(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    #[inline]
    pub fn singleton(v: usize) -> Self {
        debug_assert!(v < MAX_VERTICES);
        VertexSet(1u64 << v)
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && (self.0 >> v) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < MAX_VERTICES);
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        debug_assert!(v < MAX_VERTICES);
        self.0 &= !(1u64 << v);
    }

    #[inline]
    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | (1u64 << v))
    }

    #[inline]
    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn minus(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest member, if any.
    #[inline]
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Members in ascending order.
    #[inline]
    pub fn iter(self) -> VertexSetIter {
        VertexSetIter(self.0)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::empty();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexSetIter;
    fn into_iter(self) -> VertexSetIter {
        self.iter()
    }
}

pub struct VertexSetIter(u64);

impl Iterator for VertexSetIter {
    type Item = usize;
    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

// ---------------------------------------------------------------------------
// Edge / EdgeSet
// ---------------------------------------------------------------------------

/// An undirected edge stored canonically with `u < v`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    u: usize,
    v: usize,
}

impl Edge {
    /// Canonicalizes the endpoint order. Panics on a self-loop, which is a
    /// caller bug everywhere this type is used.
    #[inline]
    pub fn new(a: usize, b: usize) -> Self {
        assert!(a != b, "edge endpoints must be distinct");
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    #[inline]
    pub fn endpoints(self) -> (usize, usize) {
        (self.u, self.v)
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// A set of canonical edges with deterministic (sorted) iteration order.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct EdgeSet(BTreeSet<Edge>);

impl EdgeSet {
    pub fn new() -> Self {
        EdgeSet(BTreeSet::new())
    }

    pub fn insert(&mut self, e: Edge) -> bool {
        self.0.insert(e)
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.0.contains(&e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Edge> + '_ {
        self.0.iter().copied()
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet(self.0.union(&other.0).copied().collect())
    }

    pub fn is_subset_of(&self, other: &EdgeSet) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl FromIterator<Edge> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        EdgeSet(iter.into_iter().collect())
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

// ---------------------------------------------------------------------------
// Graph
// ---------------------------------------------------------------------------

/// A simple undirected graph over a fixed id universe.
///
/// `verts` is the set of live vertices; `adj[v]` is the neighbor set of `v`
/// (always a subset of `verts`). Graphs are immutable values: every operation
/// that "changes" a graph returns a new one.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    verts: VertexSet,
    adj: Vec<VertexSet>,
    m: usize,
}

impl Graph {
    /// Builds a graph on vertices `0..n` from an edge list. Duplicate and
    /// reversed pairs are merged; self-loops and out-of-range endpoints are
    /// rejected.
    pub fn build(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices { n });
        }
        let mut adj = vec![VertexSet::empty(); n];
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::SelfLoop { v: a });
            }
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::EndpointOutOfRange { v, n });
                }
            }
            adj[a].insert(b);
            adj[b].insert(a);
        }
        let m = adj.iter().map(|s| s.len()).sum::<usize>() / 2;
        Ok(Graph {
            verts: VertexSet::first_n(n),
            adj,
            m,
        })
    }

    /// The empty graph on `n` isolated vertices.
    pub fn empty(n: usize) -> Graph {
        Graph::build(n, std::iter::empty()).expect("order within bounds")
    }

    /// Live vertices.
    #[inline]
    pub fn vertices(&self) -> VertexSet {
        self.verts
    }

    /// Number of live vertices.
    #[inline]
    pub fn order(&self) -> usize {
        self.verts.len()
    }

    /// Number of edges.
    #[inline]
    pub fn size(&self) -> usize {
        self.m
    }

    /// Size of the id universe (one past the largest id ever allocated).
    #[inline]
    pub fn universe(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn contains_vertex(&self, v: usize) -> bool {
        self.verts.contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        debug_assert!(self.contains_vertex(v));
        self.adj[v]
    }

    /// Closed neighborhood `N[v]`.
    #[inline]
    pub fn closed_neighbors(&self, v: usize) -> VertexSet {
        self.neighbors(v).with(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.verts.contains(u) && self.adj[u].contains(v)
    }

    /// All edges in canonical sorted order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.m);
        for u in self.verts.iter() {
            for v in self.adj[u].iter() {
                if v > u {
                    out.push(Edge::new(u, v));
                }
            }
        }
        out
    }

    /// Neighborhood of a set: all vertices outside `x` adjacent to `x`.
    pub fn set_neighbors(&self, x: VertexSet) -> VertexSet {
        let mut nb = VertexSet::empty();
        for v in x.iter() {
            nb = nb.union(self.adj[v]);
        }
        nb.minus(x)
    }

    /// Whether `x` induces a clique.
    pub fn is_clique(&self, x: VertexSet) -> bool {
        x.iter().all(|v| x.without(v).is_subset_of(self.adj[v]))
    }

    /// The missing edges inside `x`.
    pub fn fill_edges(&self, x: VertexSet) -> EdgeSet {
        debug_assert!(x.is_subset_of(self.verts));
        let mut fill = EdgeSet::new();
        for u in x.iter() {
            for v in x.minus(self.adj[u]).iter() {
                if v > u {
                    fill.insert(Edge::new(u, v));
                }
            }
        }
        fill
    }

    /// Some `w` in `x` such that `x \ {w}` is a clique, if one exists.
    /// A clique qualifies trivially; the smallest such `w` is returned.
    pub fn almost_clique_apex(&self, x: VertexSet) -> Option<usize> {
        x.iter().find(|&w| self.is_clique(x.without(w)))
    }

    /// The graph with the edge set `f` added. Endpoints must be live.
    pub fn add_edges(&self, f: &EdgeSet) -> Graph {
        let mut g = self.clone();
        for e in f.iter() {
            let (u, v) = e.endpoints();
            assert!(g.verts.contains(u) && g.verts.contains(v), "fill edge endpoint not in graph");
            if !g.adj[u].contains(v) {
                g.adj[u].insert(v);
                g.adj[v].insert(u);
                g.m += 1;
            }
        }
        g
    }

    /// Removes a vertex, keeping all other ids unchanged.
    pub fn remove_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        if !self.verts.contains(v) {
            return Err(GraphError::VertexAbsent { v });
        }
        let mut g = self.clone();
        g.m -= g.adj[v].len();
        for u in g.adj[v].iter() {
            g.adj[u].remove(v);
        }
        g.adj[v] = VertexSet::empty();
        g.verts.remove(v);
        Ok(g)
    }

    /// Eliminates `v`: completes its neighborhood into a clique, then removes
    /// it. Returns the resulting graph and the added fill edges.
    pub fn eliminate(&self, v: usize) -> Result<(Graph, EdgeSet), GraphError> {
        if !self.verts.contains(v) {
            return Err(GraphError::VertexAbsent { v });
        }
        let fill = self.fill_edges(self.adj[v]);
        let g = self.add_edges(&fill).remove_vertex(v)?;
        Ok((g, fill))
    }

    /// Eliminates a whole vertex set at once, independent of order: in the
    /// result, survivors `u`, `w` are adjacent iff `uw` is an edge or some
    /// `u`-`w` path runs entirely through `s`.
    pub fn eliminate_set(&self, s: VertexSet) -> Graph {
        debug_assert!(s.is_subset_of(self.verts));
        let keep = self.verts.minus(s);
        let mut adj = vec![VertexSet::empty(); self.adj.len()];
        for u in keep.iter() {
            adj[u] = self.adj[u].minus(s);
        }
        // Each connected chunk of s merges its outside neighborhood into a clique.
        for comp in components_within(&self.adj, s) {
            let nb = self.set_neighbors(comp).minus(s);
            for u in nb.iter() {
                adj[u] = adj[u].union(nb.without(u));
            }
        }
        let m = keep.iter().map(|u| adj[u].len()).sum::<usize>() / 2;
        Graph { verts: keep, adj, m }
    }

    /// The subgraph induced on `x`, ids unchanged.
    pub fn induced(&self, x: VertexSet) -> Graph {
        debug_assert!(x.is_subset_of(self.verts));
        let mut adj = vec![VertexSet::empty(); self.adj.len()];
        for v in x.iter() {
            adj[v] = self.adj[v].intersection(x);
        }
        let m = x.iter().map(|v| adj[v].len()).sum::<usize>() / 2;
        Graph { verts: x, adj, m }
    }

    /// Connected components of the whole graph, each discovered from its
    /// smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        components_within(&self.adj, self.verts)
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={}, edges={:?})", self.order(), self.size(), self.edges())
    }
}

/// Connected components of the subgraph induced on `within`, in order of their
/// smallest vertex.
pub(crate) fn components_within(adj: &[VertexSet], within: VertexSet) -> Vec<VertexSet> {
    let mut out = Vec::new();
    let mut rest = within;
    while let Some(seed) = rest.first() {
        let mut comp = VertexSet::singleton(seed);
        let mut frontier = comp;
        while !frontier.is_empty() {
            let mut next = VertexSet::empty();
            for v in frontier.iter() {
                next = next.union(adj[v]);
            }
            frontier = next.intersection(within).minus(comp);
            comp = comp.union(frontier);
        }
        out.push(comp);
        rest = rest.minus(comp);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::build(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::build(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Graph::build(n, e).unwrap()
    }

    #[test]
    fn build_merges_duplicates() {
        let g = Graph::build(3, [(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.size(), 2);
        assert_eq!(g.order(), 3);
    }

    #[test]
    fn build_four_cycle() {
        let g = cycle(4);
        assert_eq!(g.size(), 4);
        assert!(g.has_edge(3, 0));
    }

    #[test]
    fn build_rejects_self_loop() {
        assert_eq!(Graph::build(4, [(0, 0)]).unwrap_err(), GraphError::SelfLoop { v: 0 });
    }

    #[test]
    fn build_rejects_out_of_range() {
        assert!(matches!(
            Graph::build(3, [(0, 3)]),
            Err(GraphError::EndpointOutOfRange { v: 3, n: 3 })
        ));
    }

    #[test]
    fn fill_edges_of_c4_are_the_diagonals() {
        let g = cycle(4);
        let fill = g.fill_edges(g.vertices());
        assert_eq!(fill.len(), 2);
        assert!(fill.contains(Edge::new(0, 2)));
        assert!(fill.contains(Edge::new(1, 3)));
    }

    #[test]
    fn fill_edges_of_clique_is_empty() {
        let g = complete(4);
        assert!(g.fill_edges(g.vertices()).is_empty());
    }

    #[test]
    fn fill_edges_counts_complement() {
        // 2x3 grid, corner 0 has neighbors {1, 3} with one missing edge.
        let g = Graph::build(6, [(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)]).unwrap();
        let x = g.neighbors(0);
        assert_eq!(g.fill_edges(x).len(), 1);
    }

    #[test]
    fn eliminate_c4_vertex_gives_triangle() {
        let g = cycle(4);
        let (h, fill) = g.eliminate(0).unwrap();
        assert_eq!(fill.len(), 1);
        assert!(fill.contains(Edge::new(1, 3)));
        assert_eq!(h.order(), 3);
        assert!(h.is_clique(h.vertices()));
    }

    #[test]
    fn eliminate_star_center() {
        let g = Graph::build(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let (h, fill) = g.eliminate(0).unwrap();
        assert_eq!(fill.len(), 3);
        assert!(h.is_clique(h.vertices()));
    }

    #[test]
    fn eliminate_clique_vertex_adds_nothing() {
        let g = complete(4);
        let (h, fill) = g.eliminate(2).unwrap();
        assert!(fill.is_empty());
        assert_eq!(h.order(), 3);
        assert!(!h.contains_vertex(2));
        assert!(h.contains_vertex(3));
    }

    #[test]
    fn eliminate_absent_vertex_rejected() {
        let g = complete(3);
        let (h, _) = g.eliminate(1).unwrap();
        assert!(matches!(h.eliminate(1), Err(GraphError::VertexAbsent { v: 1 })));
    }

    #[test]
    fn eliminate_set_empty_is_identity() {
        let g = cycle(5);
        assert_eq!(g.eliminate_set(VertexSet::empty()), g);
    }

    #[test]
    fn eliminate_set_contracts_path() {
        let g = path(4);
        let h = g.eliminate_set(VertexSet::from_iter([1, 2]));
        assert_eq!(h.order(), 2);
        assert!(h.has_edge(0, 3));
        assert_eq!(h.size(), 1);
    }

    #[test]
    fn eliminate_preserves_symmetry_and_simplicity() {
        let g = cycle(6);
        let (h, _) = g.eliminate(2).unwrap();
        for u in h.vertices().iter() {
            assert!(!h.neighbors(u).contains(u));
            for v in h.neighbors(u).iter() {
                assert!(h.neighbors(v).contains(u));
            }
        }
        assert_eq!(h.size() * 2, h.vertices().iter().map(|v| h.degree(v)).sum::<usize>());
    }

    #[test]
    fn add_edges_counts() {
        let g = cycle(4);
        let fill = g.fill_edges(g.vertices());
        let h = g.add_edges(&fill);
        assert_eq!(h.size(), g.size() + fill.len());
    }

    #[test]
    fn almost_clique_apex_cases() {
        let tri = complete(3);
        assert_eq!(tri.almost_clique_apex(tri.vertices()), Some(0));

        let c4 = cycle(4);
        assert_eq!(c4.almost_clique_apex(c4.vertices()), None);

        // {0, 1, 2} with only the edge 1-2: removing 0 leaves a clique.
        let g = Graph::build(3, [(1, 2)]).unwrap();
        assert_eq!(g.almost_clique_apex(g.vertices()), Some(0));
    }

    #[test]
    fn components_of_disconnected_graph() {
        let g = Graph::build(5, [(0, 1), (2, 3)]).unwrap();
        let comps = g.components();
        assert_eq!(comps.len(), 3);
        assert_eq!(comps[0], VertexSet::from_iter([0, 1]));
        assert_eq!(comps[1], VertexSet::from_iter([2, 3]));
        assert_eq!(comps[2], VertexSet::singleton(4));
    }
}
