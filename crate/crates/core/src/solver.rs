//! Exact minimum fill-in, treewidth, and the two-objective gap parameters,
//! by dynamic programming over subsets of eliminated vertices.
//!
//! Every table is indexed by the set of already-eliminated vertices and is
//! computed backward: `table[S]` answers "what is the best completion from
//! here". Values, witnesses and tie-breaks are deterministic regardless of
//! the thread count.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::elimination::EliminationOrdering;
use crate::graph::{Graph, VertexSet};

const INF: u16 = u16::MAX;

/// Masks are u32; beyond this the tables would not be addressable anyway.
const HARD_VERTEX_LIMIT: usize = 30;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("graph has {n} vertices, over the configured limit of {limit} (raise the limit to acknowledge the 2^n cost)")]
    CapacityExceeded { n: usize, limit: usize },
    #[error("graph has {n} vertices; subset tables support at most {HARD_VERTEX_LIMIT}")]
    HardLimit { n: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Solver knobs. The vertex limit guards against accidental 2^n blowups and
/// must be raised explicitly for larger graphs.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub vertex_limit: usize,
    pub threads: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            vertex_limit: 22,
            threads: 1,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SolverStats {
    /// Total table entries evaluated across all passes and components.
    pub states: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct SolverResult {
    pub value: usize,
    pub witness: EliminationOrdering,
    pub stats: SolverStats,
}

/// Exact values of both objectives and of the gap parameters between them,
/// with one witness ordering per optimum.
#[derive(Debug, Clone)]
pub struct TauPhiResult {
    pub mfi: usize,
    pub tw: usize,
    /// Smallest width over fill-optimal orderings, minus the treewidth.
    pub tau: usize,
    /// Smallest fill over width-optimal orderings, minus the fill-in.
    pub phi: usize,
    pub mfi_witness: EliminationOrdering,
    pub tw_witness: EliminationOrdering,
    /// Fill-optimal ordering of width `tw + tau`.
    pub tau_witness: EliminationOrdering,
    /// Width-`tw` ordering with fill `mfi + phi`.
    pub phi_witness: EliminationOrdering,
    pub stats: SolverStats,
}

// ---------------------------------------------------------------------------
// Compact per-component representation
// ---------------------------------------------------------------------------

/// One connected piece, relabeled to 0..n for mask indexing.
struct Compact {
    n: usize,
    adj: Vec<u32>,
    /// Original vertex id per compact index.
    ids: Vec<usize>,
}

impl Compact {
    fn new(g: &Graph, comp: VertexSet) -> Compact {
        let ids: Vec<usize> = comp.iter().collect();
        let n = ids.len();
        let mut adj = vec![0u32; n];
        for (i, &v) in ids.iter().enumerate() {
            for w in g.neighbors(v).intersection(comp).iter() {
                let j = ids.binary_search(&w).expect("neighbor in component");
                adj[i] |= 1 << j;
            }
        }
        Compact { n, adj, ids }
    }

    #[inline]
    fn full(&self) -> u32 {
        if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        }
    }

    /// Neighborhoods after eliminating the set `s`, written into `rows` for
    /// every live vertex: original edges plus a clique over the neighborhood
    /// of each connected chunk of `s`.
    fn eliminated_rows(&self, s: u32, rows: &mut [u32]) {
        let live = self.full() & !s;
        for v in Bits(live) {
            rows[v] = self.adj[v] & live;
        }
        let mut rest = s;
        while rest != 0 {
            let seed = 1u32 << rest.trailing_zeros();
            let mut comp = seed;
            let mut frontier = seed;
            let mut reach = 0u32;
            while frontier != 0 {
                for u in Bits(frontier) {
                    reach |= self.adj[u];
                }
                frontier = reach & s & !comp;
                comp |= frontier;
            }
            let nbd = reach & live;
            for u in Bits(nbd) {
                rows[u] |= nbd & !(1 << u);
            }
            rest &= !comp;
        }
    }

    /// Number of missing edges in the neighborhood `m` of the graph whose
    /// adjacency (after elimination) is `rows`.
    #[inline]
    fn fill_count(rows: &[u32], m: u32) -> u16 {
        let mut missing = 0u32;
        for u in Bits(m) {
            missing += (m & !rows[u] & !(1 << u)).count_ones();
        }
        (missing / 2) as u16
    }
}

/// Iterator over set bit positions of a u32.
struct Bits(u32);

impl Iterator for Bits {
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

// ---------------------------------------------------------------------------
// Table driver
// ---------------------------------------------------------------------------

/// Fills a backward table over all masks: `f(scratch, s, table)` must only
/// read entries for proper supersets of `s`. Sequentially this is a single
/// descending sweep; in parallel, each popcount layer is computed at once.
fn run_backward<F>(c: &Compact, threads: usize, base: u16, f: F) -> Vec<u16>
where
    F: Fn(&mut Vec<u32>, u32, &[u16]) -> u16 + Sync,
{
    let full = c.full();
    let mut table = vec![0u16; (full as usize) + 1];
    table[full as usize] = base;
    if c.n == 0 {
        return table;
    }
    if threads <= 1 {
        let mut scratch = vec![0u32; c.n];
        for s in (0..full).rev() {
            let v = f(&mut scratch, s, &table);
            table[s as usize] = v;
        }
    } else {
        for k in (0..c.n).rev() {
            let masks = layer_masks(c.n, k);
            let vals: Vec<(u32, u16)> = masks
                .par_iter()
                .map_init(
                    || vec![0u32; c.n],
                    |scratch, &s| (s, f(scratch, s, &table)),
                )
                .collect();
            for (s, v) in vals {
                table[s as usize] = v;
            }
        }
    }
    table
}

/// All n-bit masks with exactly k bits set, ascending (Gosper's hack).
fn layer_masks(n: usize, k: usize) -> Vec<u32> {
    if k == 0 {
        return vec![0];
    }
    let limit = 1u64 << n;
    let mut out = Vec::new();
    let mut m = (1u64 << k) - 1;
    while m < limit {
        out.push(m as u32);
        let c = m & m.wrapping_neg();
        let r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
    out
}

/// Least fill needed to eliminate everything outside `s`.
fn table_fill(c: &Compact, threads: usize) -> Vec<u16> {
    run_backward(c, threads, 0, |rows, s, table| {
        c.eliminated_rows(s, rows);
        let mut best = INF;
        for v in Bits(c.full() & !s) {
            let cost = Compact::fill_count(rows, rows[v]);
            best = best.min(cost + table[(s | 1 << v) as usize]);
        }
        best
    })
}

/// Least achievable maximum neighborhood size over completions from `s`.
fn table_width(c: &Compact, threads: usize) -> Vec<u16> {
    run_backward(c, threads, 0, |rows, s, table| {
        c.eliminated_rows(s, rows);
        let mut best = INF;
        for v in Bits(c.full() & !s) {
            let size = rows[v].count_ones() as u16;
            best = best.min(size.max(table[(s | 1 << v) as usize]));
        }
        best
    })
}

/// Least fill over completions whose every step keeps the neighborhood size
/// at or below `cap`; INF when no completion complies.
fn table_capped_fill(c: &Compact, threads: usize, cap: usize) -> Vec<u16> {
    run_backward(c, threads, 0, |rows, s, table| {
        c.eliminated_rows(s, rows);
        let mut best = INF;
        for v in Bits(c.full() & !s) {
            if rows[v].count_ones() as usize > cap {
                continue;
            }
            let down = table[(s | 1 << v) as usize];
            if down == INF {
                continue;
            }
            let cost = Compact::fill_count(rows, rows[v]);
            best = best.min(cost + down);
        }
        best
    })
}

/// Least achievable maximum neighborhood size over the fill-optimal
/// completions from `s` (transitions that keep `fill_table` tight).
fn table_width_over_optimal(c: &Compact, threads: usize, fill: &[u16]) -> Vec<u16> {
    run_backward(c, threads, 0, |rows, s, table| {
        c.eliminated_rows(s, rows);
        let mut best = INF;
        for v in Bits(c.full() & !s) {
            let cost = Compact::fill_count(rows, rows[v]);
            if cost + fill[(s | 1 << v) as usize] != fill[s as usize] {
                continue;
            }
            let size = rows[v].count_ones() as u16;
            best = best.min(size.max(table[(s | 1 << v) as usize]));
        }
        best
    })
}

// ---------------------------------------------------------------------------
// Witness walks
// ---------------------------------------------------------------------------

/// Acceptance predicate for taking `v` at state `s`; the walk picks the
/// smallest acceptable vertex at every step.
fn walk(c: &Compact, mut accept: impl FnMut(u32, usize, u16, u16) -> bool) -> Vec<usize> {
    let mut order = Vec::with_capacity(c.n);
    let mut s = 0u32;
    let mut rows = vec![0u32; c.n];
    while s != c.full() {
        c.eliminated_rows(s, &mut rows);
        let mut chosen = None;
        for v in Bits(c.full() & !s) {
            let size = rows[v].count_ones() as u16;
            let cost = Compact::fill_count(&rows, rows[v]);
            if accept(s, v, size, cost) {
                chosen = Some(v);
                break;
            }
        }
        let v = chosen.expect("backward table admits a continuation");
        order.push(c.ids[v]);
        s |= 1 << v;
    }
    order
}

fn walk_fill(c: &Compact, fill: &[u16]) -> Vec<usize> {
    walk(c, |s, v, _size, cost| {
        cost + fill[(s | 1 << v) as usize] == fill[s as usize]
    })
}

fn walk_width(c: &Compact, width: &[u16]) -> Vec<usize> {
    walk(c, |s, v, size, _cost| {
        size.max(width[(s | 1 << v) as usize]) == width[s as usize]
    })
}

fn walk_capped_fill(c: &Compact, capped: &[u16], cap: usize) -> Vec<usize> {
    walk(c, |s, v, size, cost| {
        size as usize <= cap
            && capped[(s | 1 << v) as usize] != INF
            && cost + capped[(s | 1 << v) as usize] == capped[s as usize]
    })
}

fn walk_width_over_optimal(c: &Compact, fill: &[u16], wopt: &[u16]) -> Vec<usize> {
    walk(c, |s, v, size, cost| {
        cost + fill[(s | 1 << v) as usize] == fill[s as usize]
            && size.max(wopt[(s | 1 << v) as usize]) == wopt[s as usize]
    })
}

// ---------------------------------------------------------------------------
// Public operations
// ---------------------------------------------------------------------------

fn check_capacity(g: &Graph, config: &SolverConfig) -> Result<(), SolverError> {
    let n = g.order();
    if n > HARD_VERTEX_LIMIT {
        return Err(SolverError::HardLimit { n });
    }
    if n > config.vertex_limit {
        return Err(SolverError::CapacityExceeded {
            n,
            limit: config.vertex_limit,
        });
    }
    Ok(())
}

fn components_compact(g: &Graph) -> Vec<Compact> {
    g.components().into_iter().map(|c| Compact::new(g, c)).collect()
}

/// Exact minimum fill-in. Disconnected inputs are solved per component and
/// summed.
pub fn exact_mfi(g: &Graph, config: &SolverConfig) -> Result<SolverResult, SolverError> {
    check_capacity(g, config)?;
    let start = Instant::now();
    let mut value = 0usize;
    let mut order = Vec::with_capacity(g.order());
    let mut states = 0u64;
    for c in components_compact(g) {
        let fill = table_fill(&c, config.threads);
        value += fill[0] as usize;
        order.extend(walk_fill(&c, &fill));
        states += fill.len() as u64;
    }
    Ok(SolverResult {
        value,
        witness: EliminationOrdering::new(order, g).expect("walk yields a permutation"),
        stats: SolverStats {
            states,
            elapsed: start.elapsed(),
        },
    })
}

/// Exact treewidth. Disconnected inputs take the maximum over components.
pub fn exact_tw(g: &Graph, config: &SolverConfig) -> Result<SolverResult, SolverError> {
    check_capacity(g, config)?;
    let start = Instant::now();
    let mut value = 0usize;
    let mut order = Vec::with_capacity(g.order());
    let mut states = 0u64;
    for c in components_compact(g) {
        let width = table_width(&c, config.threads);
        value = value.max(width[0] as usize);
        order.extend(walk_width(&c, &width));
        states += width.len() as u64;
    }
    Ok(SolverResult {
        value,
        witness: EliminationOrdering::new(order, g).expect("walk yields a permutation"),
        stats: SolverStats {
            states,
            elapsed: start.elapsed(),
        },
    })
}

/// Minimum total fill over orderings whose every neighborhood size stays at
/// or below `cap`; `None` when no ordering complies. Always present once
/// `cap` reaches the treewidth.
pub fn width_capped_min_fill(
    g: &Graph,
    cap: usize,
    config: &SolverConfig,
) -> Result<Option<usize>, SolverError> {
    Ok(capped_fill_ordering(g, cap, config)?.map(|r| r.value))
}

/// As [`width_capped_min_fill`], but also returns a witness ordering.
pub fn capped_fill_ordering(
    g: &Graph,
    cap: usize,
    config: &SolverConfig,
) -> Result<Option<SolverResult>, SolverError> {
    check_capacity(g, config)?;
    let start = Instant::now();
    let mut total = 0usize;
    let mut order = Vec::with_capacity(g.order());
    let mut states = 0u64;
    for c in components_compact(g) {
        let capped = table_capped_fill(&c, config.threads, cap);
        states += capped.len() as u64;
        if capped[0] == INF {
            return Ok(None);
        }
        total += capped[0] as usize;
        order.extend(walk_capped_fill(&c, &capped, cap));
    }
    Ok(Some(SolverResult {
        value: total,
        witness: EliminationOrdering::new(order, g).expect("walk yields a permutation"),
        stats: SolverStats {
            states,
            elapsed: start.elapsed(),
        },
    }))
}

/// Exact fill-in, treewidth, and the gaps between optimizing one objective
/// under the other. For disconnected graphs, triangulations act component by
/// component: fill-in sums, treewidth is the component maximum, the minimum
/// width over fill-optimal triangulations is `max(tw_c + tau_c)`, and the
/// extra fill for a width-optimal triangulation caps every component at the
/// global treewidth.
pub fn exact_tau_phi(g: &Graph, config: &SolverConfig) -> Result<TauPhiResult, SolverError> {
    check_capacity(g, config)?;
    let start = Instant::now();
    let comps = components_compact(g);
    let mut states = 0u64;

    struct CompTables {
        c: Compact,
        fill: Vec<u16>,
        width: Vec<u16>,
        wopt: Vec<u16>,
    }
    let mut tables = Vec::with_capacity(comps.len());
    let mut mfi = 0usize;
    let mut tw = 0usize;
    for c in comps {
        let fill = table_fill(&c, config.threads);
        let width = table_width(&c, config.threads);
        let wopt = table_width_over_optimal(&c, config.threads, &fill);
        states += 3 * fill.len() as u64;
        mfi += fill[0] as usize;
        tw = tw.max(width[0] as usize);
        tables.push(CompTables { c, fill, width, wopt });
    }

    // tau: width of the best minimum triangulation, relative to tw.
    let min_width_over_optimal = tables
        .iter()
        .map(|t| t.wopt[0] as usize)
        .max()
        .unwrap_or(0);
    let tau = min_width_over_optimal - tw;

    // phi: extra fill when every component must stay within the global tw.
    let mut capped_total = 0usize;
    let mut phi_order = Vec::with_capacity(g.order());
    for t in &tables {
        let capped = table_capped_fill(&t.c, config.threads, tw);
        states += capped.len() as u64;
        debug_assert!(capped[0] != INF, "cap at treewidth is always feasible");
        capped_total += capped[0] as usize;
        phi_order.extend(walk_capped_fill(&t.c, &capped, tw));
    }
    let phi = capped_total - mfi;

    let mut mfi_order = Vec::with_capacity(g.order());
    let mut tw_order = Vec::with_capacity(g.order());
    let mut tau_order = Vec::with_capacity(g.order());
    for t in &tables {
        mfi_order.extend(walk_fill(&t.c, &t.fill));
        tw_order.extend(walk_width(&t.c, &t.width));
        tau_order.extend(walk_width_over_optimal(&t.c, &t.fill, &t.wopt));
    }

    let witness = |order: Vec<usize>| EliminationOrdering::new(order, g).expect("walk yields a permutation");
    Ok(TauPhiResult {
        mfi,
        tw,
        tau,
        phi,
        mfi_witness: witness(mfi_order),
        tw_witness: witness(tw_order),
        tau_witness: witness(tau_order),
        phi_witness: witness(phi_order),
        stats: SolverStats {
            states,
            elapsed: start.elapsed(),
        },
    })
}

/// Can the graph be triangulated within `k` of its treewidth and `c` of its
/// fill-in simultaneously?
pub fn tfm_decide(g: &Graph, k: usize, c: usize, config: &SolverConfig) -> Result<bool, SolverError> {
    check_capacity(g, config)?;
    let tw = exact_tw(g, config)?.value;
    let mfi = exact_mfi(g, config)?.value;
    let capped = width_capped_min_fill(g, tw + k, config)?;
    Ok(matches!(capped, Some(f) if f <= mfi + c))
}

/// Diagnostic for graphs whose connectivity equals their treewidth: checks
/// that fill-optimal and width-optimal orderings coincide on this instance,
/// which pins the triangulation size at `k(n - k) + k(k - 1)/2`.
pub fn min_ordering_width_equivalence(g: &Graph, config: &SolverConfig) -> Result<bool, SolverError> {
    let k = crate::separators::vertex_connectivity(g);
    let result = exact_tau_phi(g, config)?;
    if result.tw != k {
        return Err(SolverError::Precondition(format!(
            "requires connectivity = treewidth, got {} and {}",
            k, result.tw
        )));
    }
    let n = g.order();
    let expected_edges = k * (n - k) + k * (k - 1) / 2;
    Ok(result.mfi + g.size() == expected_edges && result.tau == 0)
}
