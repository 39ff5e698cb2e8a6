//! Applying elimination orderings, the per-step neighborhood record, and
//! ordering diagnostics.
//!
//! Steps are stored 0-indexed; user-facing output prints 1-indexed steps.

use thiserror::Error;

use crate::graph::{EdgeSet, Graph, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderingError {
    #[error("ordering is not a permutation of the graph's vertices")]
    NotAPermutation,
    #[error("vertex {v} is not in the graph")]
    VertexAbsent { v: usize },
}

/// A bijection from steps to vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationOrdering {
    order: Vec<usize>,
}

impl EliminationOrdering {
    /// Validates that `order` is a permutation of the live vertices of `g`.
    pub fn new(order: Vec<usize>, g: &Graph) -> Result<Self, OrderingError> {
        let seen: VertexSet = order
            .iter()
            .map(|&v| {
                if g.contains_vertex(v) {
                    Ok(v)
                } else {
                    Err(OrderingError::VertexAbsent { v })
                }
            })
            .collect::<Result<_, _>>()?;
        if seen != g.vertices() || order.len() != g.order() {
            return Err(OrderingError::NotAPermutation);
        }
        Ok(EliminationOrdering { order })
    }

    /// The vertex eliminated at 0-indexed step `i`.
    #[inline]
    pub fn vertex_at(&self, i: usize) -> usize {
        self.order[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// Everything an elimination ordering does to a graph: the fill it adds, the
/// per-step neighborhood sizes, the resulting width, and the chordal
/// supergraph it defines.
#[derive(Debug, Clone)]
pub struct TriangulationReport {
    pub order: EliminationOrdering,
    pub fill: EdgeSet,
    /// `madj_sizes[i]` is the neighborhood size of the step-`i` vertex at the
    /// moment it is eliminated.
    pub madj_sizes: Vec<usize>,
    /// Largest entry of `madj_sizes` (0 for the empty graph).
    pub width: usize,
    pub total_fill: usize,
    /// The triangulation: the input graph plus all fill edges.
    pub supergraph: Graph,
}

/// Runs `order` on `g`, eliminating one vertex per step and recording fill.
pub fn apply_ordering(g: &Graph, order: &EliminationOrdering) -> Result<TriangulationReport, OrderingError> {
    if order.len() != g.order() {
        return Err(OrderingError::NotAPermutation);
    }
    let mut cur = g.clone();
    let mut fill = EdgeSet::new();
    let mut madj_sizes = Vec::with_capacity(order.len());
    for &v in order.as_slice() {
        if !cur.contains_vertex(v) {
            return Err(OrderingError::NotAPermutation);
        }
        madj_sizes.push(cur.degree(v));
        let (next, step_fill) = cur.eliminate(v).expect("vertex checked live");
        for e in step_fill.iter() {
            fill.insert(e);
        }
        cur = next;
    }
    let width = madj_sizes.iter().copied().max().unwrap_or(0);
    let total_fill = fill.len();
    let supergraph = g.add_edges(&fill);
    Ok(TriangulationReport {
        order: order.clone(),
        fill,
        madj_sizes,
        width,
        total_fill,
        supergraph,
    })
}

/// The neighborhood a vertex would have after `eliminated` is gone, computed
/// without replaying any order: the neighbors of the connected region grown
/// from `v` through eliminated vertices.
pub fn madj_of(g: &Graph, eliminated: VertexSet, v: usize) -> VertexSet {
    debug_assert!(g.contains_vertex(v));
    debug_assert!(!eliminated.contains(v));
    let within = eliminated.with(v);
    let mut region = VertexSet::singleton(v);
    let mut frontier = region;
    let mut nbrs = VertexSet::empty();
    while !frontier.is_empty() {
        let mut reach = VertexSet::empty();
        for u in frontier.iter() {
            reach = reach.union(g.neighbors(u));
        }
        nbrs = nbrs.union(reach);
        frontier = reach.intersection(within).minus(region);
        region = region.union(frontier);
    }
    nbrs.minus(eliminated).without(v)
}

/// Vertices eliminated early with a fixed small neighborhood size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowDegreeRecord {
    pub threshold: usize,
    /// Vertices whose step (1-indexed) is at most `|V| - (threshold + 1)` and
    /// whose recorded neighborhood size is exactly `threshold`.
    pub vertices: VertexSet,
    /// 0-indexed steps of those vertices, ascending.
    pub steps: Vec<usize>,
}

pub fn low_degree_prefix(report: &TriangulationReport, threshold: usize) -> LowDegreeRecord {
    let n = report.order.len();
    let cutoff = n.saturating_sub(threshold + 1); // number of eligible steps
    let mut vertices = VertexSet::empty();
    let mut steps = Vec::new();
    for i in 0..cutoff {
        if report.madj_sizes[i] == threshold {
            vertices.insert(report.order.vertex_at(i));
            steps.push(i);
        }
    }
    LowDegreeRecord { threshold, vertices, steps }
}

/// Test-harness hook: whenever no earlier-eliminated vertex neighbors the
/// step vertex in the original graph, its recorded neighborhood must equal
/// its original one.
pub fn stability_check(g: &Graph, order: &EliminationOrdering) -> bool {
    let mut cur = g.clone();
    let mut eliminated = VertexSet::empty();
    for &v in order.as_slice() {
        if g.neighbors(v).intersection(eliminated).is_empty() && cur.neighbors(v) != g.neighbors(v) {
            return false;
        }
        let (next, _) = cur.eliminate(v).expect("order must be a permutation");
        cur = next;
        eliminated.insert(v);
    }
    true
}
