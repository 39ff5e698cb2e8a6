//! Safe-edge machinery: the per-vertex fixpoint edge set, the two safety
//! conditions under which a vertex can be eliminated without losing any
//! fill-optimal triangulation, and the reduction loop built on them.

use crate::chordality::{is_almost_simplicial, is_simplicial};
use crate::elimination::{apply_ordering, EliminationOrdering};
use crate::graph::{Edge, EdgeSet, Graph};
use crate::separators::{minimal_separators_in_neighborhood, vertex_connectivity, Separator};
use crate::solver::{exact_mfi, exact_tw, SolverConfig, SolverError};

/// Why a vertex may be eliminated up front.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SafetyRule {
    NotSafe,
    /// Simplicial in the graph or after adding its fixpoint edge set.
    Simplicial,
    /// Degree equals the graph's connectivity, and almost simplicial in the
    /// graph or after adding its fixpoint edge set.
    AlmostSimplicialMinDegree,
}

impl SafetyRule {
    pub fn is_safe(self) -> bool {
        !matches!(self, SafetyRule::NotSafe)
    }

    /// Short tag for trace output: A for simplicial, B for the degree rule.
    pub fn letter(self) -> &'static str {
        match self {
            SafetyRule::NotSafe => "-",
            SafetyRule::Simplicial => "A",
            SafetyRule::AlmostSimplicialMinDegree => "B",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SafetyTag {
    pub rule: SafetyRule,
    /// The fixpoint edge set used in the test.
    pub f_v: EdgeSet,
}

/// The fixpoint edge set of `v`: repeatedly, while some minimal separator
/// inside `N(v)` of the augmented graph misses exactly one edge, add that
/// edge. The separator scan order does not affect the result; this entry
/// point always takes the first candidate.
pub fn f_v(g: &Graph, v: usize) -> EdgeSet {
    f_v_with_selector(g, v, |_| 0)
}

/// As [`f_v`], but lets the caller pick which qualifying separator to close
/// at every iteration (the argument receives the candidates and returns an
/// index). Exists so tests can demonstrate order-independence.
pub fn f_v_with_selector(
    g: &Graph,
    v: usize,
    mut select: impl FnMut(&[Separator]) -> usize,
) -> EdgeSet {
    let mut current = g.clone();
    let mut fixpoint = EdgeSet::new();
    loop {
        let candidates: Vec<Separator> = minimal_separators_in_neighborhood(&current, v)
            .into_iter()
            .filter(|s| current.fill_edges(s.vertices).len() == 1)
            .collect();
        if candidates.is_empty() {
            return fixpoint;
        }
        let chosen = &candidates[select(&candidates)];
        let missing = current.fill_edges(chosen.vertices);
        for e in missing.iter() {
            fixpoint.insert(e);
        }
        current = current.add_edges(&missing);
    }
}

/// Classifies `v` for safe elimination, using the supplied connectivity of
/// `g` for the degree condition.
fn safety_with_connectivity(g: &Graph, v: usize, kappa: usize) -> SafetyTag {
    let fv = f_v(g, v);
    let aug = g.add_edges(&fv);
    let rule = if is_simplicial(g, v) || is_simplicial(&aug, v) {
        SafetyRule::Simplicial
    } else if g.degree(v) == kappa
        && (is_almost_simplicial(g, v).is_some() || is_almost_simplicial(&aug, v).is_some())
    {
        SafetyRule::AlmostSimplicialMinDegree
    } else {
        SafetyRule::NotSafe
    };
    SafetyTag { rule, f_v: fv }
}

/// Classifies `v` for safe elimination in the connected graph `g`.
pub fn safety(g: &Graph, v: usize) -> SafetyTag {
    safety_with_connectivity(g, v, vertex_connectivity(g))
}

/// One elimination performed by [`reduce`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub vertex: usize,
    pub rule: SafetyRule,
    /// Fill edges added when the vertex was eliminated.
    pub fill: EdgeSet,
}

/// The outcome of the safe-vertex reduction loop.
#[derive(Debug, Clone)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub residual: Graph,
    pub total_fill_added: usize,
}

impl ReductionTrace {
    /// Replays the recorded steps from `g`, confirming they reproduce the
    /// residual and the fill count.
    pub fn replays_on(&self, g: &Graph) -> bool {
        let mut cur = g.clone();
        let mut added = 0usize;
        for step in &self.steps {
            match cur.eliminate(step.vertex) {
                Ok((next, fill)) => {
                    if fill != step.fill {
                        return false;
                    }
                    added += fill.len();
                    cur = next;
                }
                Err(_) => return false,
            }
        }
        cur == self.residual && added == self.total_fill_added
    }
}

/// Greedily eliminates vertices while one qualifies under either safety rule,
/// preferring simplicial eliminations, then smaller ids. The contract: total
/// fill added plus the residual's fill-in equals the input's fill-in.
pub fn reduce(g: &Graph) -> ReductionTrace {
    let mut cur = g.clone();
    let mut steps = Vec::new();
    let mut total = 0usize;
    loop {
        let kappa = vertex_connectivity(&cur);
        let mut pick: Option<(usize, SafetyRule)> = None;
        for v in cur.vertices().iter() {
            let tag = safety_with_connectivity(&cur, v, kappa);
            match tag.rule {
                SafetyRule::Simplicial => {
                    pick = Some((v, tag.rule));
                    break;
                }
                SafetyRule::AlmostSimplicialMinDegree => {
                    if pick.is_none() {
                        pick = Some((v, tag.rule));
                    }
                }
                SafetyRule::NotSafe => {}
            }
        }
        let Some((v, rule)) = pick else {
            break;
        };
        let (next, fill) = cur.eliminate(v).expect("picked vertex is live");
        total += fill.len();
        steps.push(ReductionStep { vertex: v, rule, fill });
        cur = next;
    }
    ReductionTrace {
        steps,
        residual: cur,
        total_fill_added: total,
    }
}

/// Certifies that the two optimization objectives meet on this instance: the
/// first `k` steps of `order` must each satisfy a safety rule against the
/// evolving graph, the remaining steps must be fill-optimal on the residual,
/// and the whole ordering's width must not exceed the exact treewidth. A true
/// verdict proves the width-over-fill-optimal gap is zero.
pub fn check_tau0_certificate(
    g: &Graph,
    order: &EliminationOrdering,
    k: usize,
    config: &SolverConfig,
) -> Result<bool, SolverError> {
    assert!(k < order.len().max(1), "prefix length must be below the vertex count");
    let report = match apply_ordering(g, order) {
        Ok(r) => r,
        Err(_) => return Ok(false),
    };

    let mut cur = g.clone();
    let mut residual_at_k = g.clone();
    let mut suffix_fill = 0usize;
    for (i, &v) in order.as_slice().iter().enumerate() {
        if i < k && !safety(&cur, v).rule.is_safe() {
            return Ok(false);
        }
        let (next, fill) = cur.eliminate(v).expect("order is a permutation");
        if i >= k {
            suffix_fill += fill.len();
        }
        cur = next;
        if i + 1 == k {
            residual_at_k = cur.clone();
        }
    }
    if exact_mfi(&residual_at_k, config)?.value != suffix_fill {
        return Ok(false);
    }
    Ok(report.width <= exact_tw(g, config)?.value)
}

/// Remove the fill edges of `N(v)` conceptually: the quantity the safety
/// soundness property talks about.
pub fn neighborhood_fill(g: &Graph, v: usize) -> EdgeSet {
    g.fill_edges(g.neighbors(v))
}

/// Serializes a trace as a line-oriented log: step, vertex, rule, fill edges.
pub fn format_trace(trace: &ReductionTrace) -> String {
    let mut out = String::new();
    for (i, step) in trace.steps.iter().enumerate() {
        let fill: Vec<String> = step
            .fill
            .iter()
            .map(|e| {
                let (u, v) = e.endpoints();
                format!("{u}-{v}")
            })
            .collect();
        out.push_str(&format!(
            "step={} vertex={} rule={} fill={}\n",
            i + 1,
            step.vertex,
            step.rule.letter(),
            if fill.is_empty() { "none".to_string() } else { fill.join(",") }
        ));
    }
    out
}

/// Convenience for tests and the CLI: the edge named by its endpoints.
pub fn edge(u: usize, v: usize) -> Edge {
    Edge::new(u, v)
}
