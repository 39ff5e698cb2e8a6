//! Shared oracles and generators for the integration suites. Everything here
//! is deliberately independent of the solver path it checks: the oracles use
//! only plain sequential elimination and exhaustive search.

#![allow(dead_code)]

use chordkit::graph::{Graph, VertexSet};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

/// Minimum fill over all elimination orderings, by exhaustive recursion over
/// sequential eliminations (with a sound cut on the running total).
pub fn brute_force_mfi(g: &Graph) -> usize {
    fn rec(g: &Graph, so_far: usize, best: &mut usize) {
        if so_far >= *best {
            return;
        }
        if g.order() <= 1 {
            *best = so_far;
            return;
        }
        for v in g.vertices().iter() {
            let (h, fill) = g.eliminate(v).unwrap();
            rec(&h, so_far + fill.len(), best);
        }
    }
    let mut best = g.order() * g.order();
    rec(g, 0, &mut best);
    best
}

/// Minimum over all elimination orderings of the largest neighborhood met,
/// by exhaustive recursion.
pub fn brute_force_tw(g: &Graph) -> usize {
    fn rec(g: &Graph, cur_max: usize, best: &mut usize) {
        if cur_max >= *best {
            return;
        }
        if g.order() == 0 {
            *best = cur_max;
            return;
        }
        for v in g.vertices().iter() {
            let d = g.degree(v);
            let (h, _) = g.eliminate(v).unwrap();
            rec(&h, cur_max.max(d), best);
        }
    }
    let mut best = g.order().max(1);
    rec(g, 0, &mut best);
    best
}

/// Exact clique number by branch and bound.
pub fn brute_force_clique_number(g: &Graph) -> usize {
    fn rec(g: &Graph, size: usize, mut cands: VertexSet, best: &mut usize) {
        if size + cands.len() <= *best {
            return;
        }
        if cands.is_empty() {
            *best = (*best).max(size);
            return;
        }
        while let Some(v) = cands.first() {
            if size + cands.len() <= *best {
                return;
            }
            cands.remove(v);
            rec(g, size + 1, cands.intersection(g.neighbors(v)), best);
        }
    }
    let mut best = 0;
    rec(g, 0, g.vertices(), &mut best);
    best
}

/// Vertex connectivity by subset enumeration (complete graphs: n - 1).
pub fn brute_force_connectivity(g: &Graph) -> usize {
    let verts: Vec<usize> = g.vertices().iter().collect();
    let n = verts.len();
    if n == 0 || !g.is_connected() {
        return 0;
    }
    let mut best = n - 1;
    for mask in 0u64..(1 << n) {
        let s: VertexSet = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| verts[i]).collect();
        if s.len() >= best || g.order() - s.len() < 2 {
            continue;
        }
        if chordkit::components_after(g, s).len() >= 2 {
            best = s.len();
        }
    }
    best
}

/// Is `s` a minimal a,b-separator for some pair: it must split some pair of
/// vertices that no proper subset of it also splits.
pub fn brute_force_is_minimal_separator(g: &Graph, s: VertexSet) -> bool {
    let separates = |t: VertexSet, a: usize, b: usize| {
        chordkit::components_after(g, t)
            .iter()
            .all(|c| !(c.contains(a) && c.contains(b)))
    };
    let comps = chordkit::components_after(g, s);
    if comps.len() < 2 {
        return false;
    }
    let members: Vec<usize> = s.iter().collect();
    let proper_subsets: Vec<VertexSet> = (0..(1u64 << members.len()) - 1)
        .map(|mask| {
            (0..members.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| members[i])
                .collect()
        })
        .collect();
    for (i, ca) in comps.iter().enumerate() {
        for cb in comps.iter().skip(i + 1) {
            for a in ca.iter() {
                for b in cb.iter() {
                    if proper_subsets.iter().all(|&sub| !separates(sub, a, b)) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

/// A random graph on n vertices with independent edge probability p.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::build(n, edges).unwrap()
}

/// A connected random graph: a random recursive tree plus extra edges.
pub fn random_connected_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::build(n, edges).unwrap()
}

/// A uniformly random permutation of the live vertices.
pub fn random_ordering(rng: &mut ChaCha8Rng, g: &Graph) -> chordkit::EliminationOrdering {
    let mut order: Vec<usize> = g.vertices().iter().collect();
    order.shuffle(rng);
    chordkit::EliminationOrdering::new(order, g).unwrap()
}

/// A connected partial 2-tree: grow a 2-tree, then delete random edges while
/// keeping the graph connected.
pub fn random_partial_two_tree(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    assert!(n >= 3);
    let mut edges: Vec<(usize, usize)> = vec![(0, 1), (1, 2), (0, 2)];
    for v in 3..n {
        let &(a, b) = edges.choose(rng).unwrap();
        edges.push((a, v));
        edges.push((b, v));
    }
    // Try removing a few edges; keep connectivity.
    let attempts = edges.len() / 3;
    for _ in 0..attempts {
        let i = rng.gen_range(0..edges.len());
        let mut trial = edges.clone();
        trial.swap_remove(i);
        let g = Graph::build(n, trial.iter().copied()).unwrap();
        if g.is_connected() {
            edges = trial;
        }
    }
    Graph::build(n, edges).unwrap()
}

/// Two random connected sides joined only through a planted clique, so the
/// clique separates them.
pub fn planted_clique_separator_graph(rng: &mut ChaCha8Rng, max_side: usize) -> Graph {
    let k = rng.gen_range(1..=3);
    let n1 = rng.gen_range(3..=max_side);
    let n2 = rng.gen_range(3..=max_side);
    let n = k + n1 + n2;
    let mut edges = Vec::new();
    // Clique S on 0..k.
    for u in 0..k {
        for v in u + 1..k {
            edges.push((u, v));
        }
    }
    // Side 1 on k..k+n1, side 2 on k+n1..n, each a random connected graph.
    for (lo, size) in [(k, n1), (k + n1, n2)] {
        for v in lo + 1..lo + size {
            edges.push((rng.gen_range(lo..v), v));
        }
        for u in lo..lo + size {
            for v in u + 1..lo + size {
                if rng.gen_bool(0.3) {
                    edges.push((u, v));
                }
            }
        }
        // Attach to the clique: one guaranteed edge plus random extras.
        edges.push((rng.gen_range(0..k), rng.gen_range(lo..lo + size)));
        for s in 0..k {
            for v in lo..lo + size {
                if rng.gen_bool(0.3) {
                    edges.push((s, v));
                }
            }
        }
    }
    Graph::build(n, edges).unwrap()
}

// ---------------------------------------------------------------------------
// Fixed instances
// ---------------------------------------------------------------------------

/// v = 0 adjacent to u1 = 1, u2 = 2, u3 = 3, with pendant witnesses
/// c1 = 4 (sees u1, u2), c2 = 5 (sees u2, u3), c3 = 6 (sees all three).
pub fn pendant_witness_graph() -> Graph {
    Graph::build(
        7,
        [
            (0, 1),
            (0, 2),
            (0, 3),
            (4, 1),
            (4, 2),
            (5, 2),
            (5, 3),
            (6, 1),
            (6, 2),
            (6, 3),
        ],
    )
    .unwrap()
}

/// Brute force over all vertex subsets: does the graph contain a clique that
/// is a minimal separator?
pub fn brute_force_has_clique_minimal_separator(g: &Graph) -> bool {
    let verts: Vec<usize> = g.vertices().iter().collect();
    let n = verts.len();
    for mask in 1u64..(1 << n) {
        let s: VertexSet = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| verts[i]).collect();
        if s == g.vertices() || !g.is_clique(s) {
            continue;
        }
        if brute_force_is_minimal_separator(g, s) {
            return true;
        }
    }
    false
}
