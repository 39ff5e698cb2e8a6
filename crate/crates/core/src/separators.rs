//! Connectivity, minimal separators near a vertex, biconnected components,
//! and decomposition into atoms along clique minimal separators.

use crate::graph::{Edge, EdgeSet, Graph, VertexSet};

/// A separator together with the components it leaves behind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separator {
    pub vertices: VertexSet,
    /// Connected components of the graph minus the separator.
    pub components: Vec<VertexSet>,
}

/// Connected components of `g - s`, ordered by smallest member.
pub fn components_after(g: &Graph, s: VertexSet) -> Vec<VertexSet> {
    let keep = g.vertices().minus(s);
    let mut comps = Vec::new();
    let mut rest = keep;
    while let Some(seed) = rest.first() {
        let mut comp = VertexSet::singleton(seed);
        let mut frontier = comp;
        while !frontier.is_empty() {
            let mut next = VertexSet::empty();
            for v in frontier.iter() {
                next = next.union(g.neighbors(v));
            }
            frontier = next.intersection(keep).minus(comp);
            comp = comp.union(frontier);
        }
        comps.push(comp);
        rest = rest.minus(comp);
    }
    comps
}

/// Whether `s` is a minimal separator: its removal leaves at least two
/// components that each see all of `s`.
pub fn is_minimal_separator(g: &Graph, s: VertexSet) -> bool {
    if s.is_empty() {
        return false;
    }
    let full = components_after(g, s)
        .into_iter()
        .filter(|c| g.set_neighbors(*c) == s)
        .count();
    full >= 2
}

/// Vertex connectivity. Complete graphs (including a single vertex) follow
/// the `n - 1` convention; disconnected or empty graphs give 0.
pub fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.order();
    if n == 0 {
        return 0;
    }
    if !g.is_connected() {
        return 0;
    }
    let mut best = n - 1; // complete-graph convention; also an upper bound
    let verts: Vec<usize> = g.vertices().iter().collect();
    for (i, &s) in verts.iter().enumerate() {
        for &t in verts.iter().skip(i + 1) {
            if !g.has_edge(s, t) {
                best = best.min(min_vertex_cut(g, s, t));
            }
        }
    }
    best
}

/// Maximum number of internally vertex-disjoint s-t paths (= smallest s-t
/// vertex cut for non-adjacent s, t), by unit-capacity augmentation on the
/// split graph.
fn min_vertex_cut(g: &Graph, s: usize, t: usize) -> usize {
    // Node k is v_in and node u + k is v_out for the k-th live vertex.
    let verts: Vec<usize> = g.vertices().iter().collect();
    let u = verts.len();
    let idx = |v: usize| verts.binary_search(&v).expect("live vertex");

    let mut cap = vec![vec![0u32; 2 * u]; 2 * u];
    for (k, &v) in verts.iter().enumerate() {
        cap[k][u + k] = if v == s || v == t { u as u32 } else { 1 };
        for w in g.neighbors(v).iter() {
            cap[u + k][idx(w)] = u as u32;
        }
    }
    let (src, dst) = (u + idx(s), idx(t));

    let mut flow = 0usize;
    loop {
        let mut prev = vec![usize::MAX; 2 * u];
        prev[src] = src;
        let mut queue = std::collections::VecDeque::from([src]);
        while let Some(a) = queue.pop_front() {
            for b in 0..2 * u {
                if prev[b] == usize::MAX && cap[a][b] > 0 {
                    prev[b] = a;
                    queue.push_back(b);
                }
            }
        }
        if prev[dst] == usize::MAX {
            return flow;
        }
        let mut b = dst;
        while b != src {
            let a = prev[b];
            cap[a][b] -= 1;
            cap[b][a] += 1;
            b = a;
        }
        flow += 1;
    }
}

/// The minimal separators contained in `N(v)`: exactly the neighborhoods of
/// the components of `g - N[v]`, deduplicated in first-seen order.
pub fn minimal_separators_in_neighborhood(g: &Graph, v: usize) -> Vec<Separator> {
    let mut out: Vec<Separator> = Vec::new();
    for comp in components_after(g, g.closed_neighbors(v)) {
        let sep = g.set_neighbors(comp);
        if sep.is_empty() || out.iter().any(|s| s.vertices == sep) {
            continue;
        }
        out.push(Separator {
            vertices: sep,
            components: components_after(g, sep),
        });
    }
    out
}

/// Biconnected components (blocks): each block is an edge or 2-connected,
/// and two blocks share at most one vertex. Isolated vertices yield no block.
pub fn biconnected_components(g: &Graph) -> Vec<VertexSet> {
    let u = g.universe();
    let mut disc = vec![usize::MAX; u];
    let mut low = vec![0usize; u];
    let mut timer = 0usize;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut blocks = Vec::new();

    for root in g.vertices().iter() {
        if disc[root] != usize::MAX {
            continue;
        }
        // Iterative DFS: (vertex, parent, unexplored neighbors).
        let mut stack: Vec<(usize, usize, VertexSet)> = vec![(root, usize::MAX, g.neighbors(root))];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        while let Some(&mut (v, parent, ref mut rest)) = stack.last_mut() {
            if let Some(w) = rest.first() {
                rest.remove(w);
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, v, g.neighbors(w)));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&mut (p, _, _)) = stack.last_mut() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        // p separates the subtree of v: pop its block.
                        let mut block = VertexSet::empty();
                        loop {
                            let (a, b) = edge_stack.pop().expect("tree edge on stack");
                            block.insert(a);
                            block.insert(b);
                            if (a, b) == (p, v) {
                                break;
                            }
                        }
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks.sort_by_key(|b| b.first());
    blocks
}

// ---------------------------------------------------------------------------
// Clique minimal separator decomposition
// ---------------------------------------------------------------------------

/// The pieces a graph decomposes into along clique minimal separators.
#[derive(Debug, Clone)]
pub struct AtomDecomposition {
    /// Vertex sets of the atoms; every edge of the graph lies in some atom.
    pub atoms: Vec<VertexSet>,
    /// The clique minimal separators used for the splits.
    pub separators_used: Vec<VertexSet>,
}

/// Decomposes a graph into atoms by repeatedly splitting on clique minimal
/// separators until no piece has one. Split points are located through a
/// minimal triangulation: its separators that stay cliques in the original
/// graph are exactly the clique minimal separators. Every carve is verified
/// directly (clique + two full components) before it is applied.
pub fn atoms(g: &Graph) -> AtomDecomposition {
    let mut atoms = Vec::new();
    let mut separators = Vec::new();
    let mut work: Vec<VertexSet> = g.components();
    while let Some(piece) = work.pop() {
        let gp = g.induced(piece);
        match find_clique_separator_carve(&gp) {
            Some((sep, comp)) => {
                separators.push(sep);
                work.push(sep.union(comp));
                work.push(piece.minus(comp));
            }
            None => atoms.push(piece),
        }
    }
    atoms.sort();
    separators.sort();
    AtomDecomposition {
        atoms,
        separators_used: separators,
    }
}

/// Looks for a clique minimal separator of the (connected) graph, returning
/// it with one component of its removal.
fn find_clique_separator_carve(gp: &Graph) -> Option<(VertexSet, VertexSet)> {
    let (fill, meo) = minimal_triangulation(gp);
    let h = gp.add_edges(&fill);
    let mut later = gp.vertices();
    for &x in &meo {
        later.remove(x);
        let s = h.neighbors(x).intersection(later);
        if !s.is_empty() && gp.is_clique(s) {
            // Prefer the tightest candidate: the neighborhood of x's own
            // component, which is contained in s.
            let comps = components_after(gp, s);
            if comps.len() < 2 {
                continue;
            }
            let cx = *comps.iter().find(|c| c.contains(x)).expect("x outside s");
            let refined = gp.set_neighbors(cx);
            for cand in [refined, s] {
                if gp.is_clique(cand) && is_minimal_separator(gp, cand) {
                    let comp = *components_after(gp, cand)
                        .iter()
                        .find(|c| c.contains(x))
                        .expect("x outside candidate");
                    return Some((cand, comp));
                }
            }
        }
    }
    None
}

/// A minimal triangulation plus its elimination ordering, via maximum
/// cardinality search with path-augmented weight updates: when `v` is picked,
/// every unnumbered `u` reachable from `v` through unnumbered vertices of
/// weight strictly below `weight[u]` gets a weight bump and, if non-adjacent,
/// a fill edge to `v`.
pub(crate) fn minimal_triangulation(g: &Graph) -> (EdgeSet, Vec<usize>) {
    let u = g.universe();
    let mut weight = vec![0usize; u];
    let mut unnumbered = g.vertices();
    let mut fill = EdgeSet::new();
    let mut visit: Vec<usize> = Vec::with_capacity(g.order());

    while !unnumbered.is_empty() {
        let v = unnumbered
            .iter()
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .expect("nonempty");
        // best[y]: smallest achievable maximum weight over internal vertices
        // of an unnumbered v-y path; -1 encodes "no internal vertices".
        let mut best = vec![i64::MAX; u];
        let mut stack = vec![v];
        best[v] = -1;
        while let Some(x) = stack.pop() {
            let relay = if x == v { -1 } else { best[x].max(weight[x] as i64) };
            for y in g.neighbors(x).intersection(unnumbered).iter() {
                if y != v && relay < best[y] {
                    best[y] = relay;
                    stack.push(y);
                }
            }
        }
        for y in unnumbered.without(v).iter() {
            if best[y] < weight[y] as i64 {
                weight[y] += 1;
                if !g.has_edge(v, y) {
                    fill.insert(Edge::new(v, y));
                }
            }
        }
        visit.push(v);
        unnumbered.remove(v);
    }
    visit.reverse(); // elimination order: last visited first
    (fill, visit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chordality::check_chordal;
    use crate::graph::Graph;

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

    fn grid(m: usize, n: usize) -> Graph {
        let mut e = Vec::new();
        for r in 0..m {
            for c in 0..n {
                if c + 1 < n {
                    e.push((r * n + c, r * n + c + 1));
                }
                if r + 1 < m {
                    e.push((r * n + c, (r + 1) * n + c));
                }
            }
        }
        Graph::build(m * n, e).unwrap()
    }

    #[test]
    fn connectivity_of_k5_is_4() {
        assert_eq!(vertex_connectivity(&complete(5)), 4);
    }

    #[test]
    fn connectivity_of_c6_is_2() {
        assert_eq!(vertex_connectivity(&cycle(6)), 2);
    }

    #[test]
    fn connectivity_of_3x3_grid_is_2() {
        let g = grid(3, 3);
        assert_eq!(vertex_connectivity(&g), 2);
        // Witness 2-cut at a corner: removing {1, 3} isolates vertex 0.
        assert_eq!(components_after(&g, VertexSet::from_iter([1, 3])).len(), 2);
    }

    #[test]
    fn connectivity_of_disconnected_is_0() {
        let g = Graph::build(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(vertex_connectivity(&g), 0);
    }

    #[test]
    fn components_after_cases() {
        let p3 = Graph::build(3, [(0, 1), (1, 2)]).unwrap();
        let comps = components_after(&p3, VertexSet::singleton(1));
        assert_eq!(comps, vec![VertexSet::singleton(0), VertexSet::singleton(2)]);

        let c5 = cycle(5);
        assert_eq!(components_after(&c5, VertexSet::empty()).len(), 1);

        let c4 = cycle(4);
        let comps = components_after(&c4, VertexSet::from_iter([0, 2]));
        assert_eq!(comps.len(), 2);
    }

    /// The running example: v sees u1, u2, u3; three pendant groups witness
    /// the separators {u1, u2}, {u2, u3} and {u1, u2, u3}.
    pub(crate) fn pendant_witness_graph() -> Graph {
        Graph::build(
            7,
            [
                (0, 1),
                (0, 2),
                (0, 3), // v = 0, u1 = 1, u2 = 2, u3 = 3
                (4, 1),
                (4, 2), // c1
                (5, 2),
                (5, 3), // c2
                (6, 1),
                (6, 2),
                (6, 3), // c3
            ],
        )
        .unwrap()
    }

    #[test]
    fn separators_in_neighborhood_of_pendant_witness_graph() {
        let g = pendant_witness_graph();
        let seps = minimal_separators_in_neighborhood(&g, 0);
        let sets: Vec<VertexSet> = seps.iter().map(|s| s.vertices).collect();
        assert_eq!(
            sets,
            vec![
                VertexSet::from_iter([1, 2]),
                VertexSet::from_iter([2, 3]),
                VertexSet::from_iter([1, 2, 3]),
            ]
        );
        for s in &seps {
            assert!(s.components.len() >= 2);
            assert!(s.vertices.is_subset_of(g.neighbors(0)));
            assert!(is_minimal_separator(&g, s.vertices));
        }
    }

    #[test]
    fn separator_of_tree_leaf() {
        let tree = Graph::build(3, [(0, 1), (1, 2)]).unwrap();
        let seps = minimal_separators_in_neighborhood(&tree, 0);
        assert_eq!(seps.len(), 1);
        assert_eq!(seps[0].vertices, VertexSet::singleton(1));
    }

    #[test]
    fn universal_vertex_has_no_separators() {
        let g = complete(4);
        assert!(minimal_separators_in_neighborhood(&g, 0).is_empty());
    }

    #[test]
    fn blocks_of_two_triangles_sharing_a_vertex() {
        let g = Graph::build(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        let blocks = biconnected_components(&g);
        assert_eq!(blocks.len(), 2);
        assert!(blocks.contains(&VertexSet::from_iter([0, 1, 2])));
        assert!(blocks.contains(&VertexSet::from_iter([2, 3, 4])));
    }

    #[test]
    fn blocks_of_p4_are_edges() {
        let g = Graph::build(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let blocks = biconnected_components(&g);
        assert_eq!(blocks.len(), 3);
        for b in blocks {
            assert_eq!(b.len(), 2);
        }
    }

    #[test]
    fn c5_is_one_block() {
        assert_eq!(biconnected_components(&cycle(5)).len(), 1);
    }

    #[test]
    fn minimal_triangulation_is_chordal_and_minimal() {
        for g in [cycle(6), grid(3, 3), pendant_witness_graph()] {
            let (fill, _) = minimal_triangulation(&g);
            let h = g.add_edges(&fill);
            assert!(check_chordal(&h).chordal);
            // Minimality: dropping any single fill edge breaks chordality.
            for e in fill.iter() {
                let smaller: EdgeSet = fill.iter().filter(|&f| f != e).collect();
                assert!(
                    !check_chordal(&g.add_edges(&smaller)).chordal,
                    "fill edge {e:?} is redundant"
                );
            }
        }
    }

    #[test]
    fn atoms_of_two_triangles_sharing_an_edge() {
        let g = Graph::build(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        let decomp = atoms(&g);
        assert_eq!(decomp.atoms.len(), 2);
        assert!(decomp.atoms.contains(&VertexSet::from_iter([0, 1, 2])));
        assert!(decomp.atoms.contains(&VertexSet::from_iter([1, 2, 3])));
        assert_eq!(decomp.separators_used, vec![VertexSet::from_iter([1, 2])]);
    }

    #[test]
    fn chordless_c5_is_a_single_atom() {
        let decomp = atoms(&cycle(5));
        assert_eq!(decomp.atoms, vec![cycle(5).vertices()]);
        assert!(decomp.separators_used.is_empty());
    }

    #[test]
    fn k4_and_c4_glued_at_a_vertex() {
        // K4 on {0,1,2,3}, C4 on {3,4,5,6}.
        let g = Graph::build(
            7,
            [
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 6),
                (6, 3),
            ],
        )
        .unwrap();
        let decomp = atoms(&g);
        assert_eq!(decomp.atoms.len(), 2);
        assert!(decomp.atoms.contains(&VertexSet::from_iter([0, 1, 2, 3])));
        assert!(decomp.atoms.contains(&VertexSet::from_iter([3, 4, 5, 6])));
        for a in &decomp.atoms {
            assert!(!has_clique_minimal_separator(&g.induced(*a)));
        }
    }

    #[test]
    fn two_squares_joined_by_an_edge_split_along_it() {
        // a-b is a clique minimal separator that lies in no single closed
        // neighborhood: a=0, b=1, path 0-2-3-1 and path 0-4-5-1 plus edge 0-1.
        let g = Graph::build(6, [(0, 1), (0, 2), (2, 3), (3, 1), (0, 4), (4, 5), (5, 1)]).unwrap();
        let decomp = atoms(&g);
        assert_eq!(decomp.atoms.len(), 2);
        assert!(decomp.atoms.contains(&VertexSet::from_iter([0, 1, 2, 3])));
        assert!(decomp.atoms.contains(&VertexSet::from_iter([0, 1, 4, 5])));
    }

    #[test]
    fn every_edge_lies_in_some_atom() {
        let g = grid(3, 3);
        let decomp = atoms(&g);
        for e in g.edges() {
            let (u, v) = e.endpoints();
            assert!(
                decomp.atoms.iter().any(|a| a.contains(u) && a.contains(v)),
                "edge {u}-{v} in no atom"
            );
        }
    }

    #[test]
    fn atoms_have_no_clique_minimal_separator_small_fuzz() {
        // Deterministic fixture set, exhaustively verified by brute force.
        let graphs = vec![
            grid(3, 3),
            grid(2, 4),
            cycle(7),
            pendant_witness_graph(),
            Graph::build(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]).unwrap(),
        ];
        for g in graphs {
            let decomp = atoms(&g);
            for a in &decomp.atoms {
                assert!(
                    !has_clique_minimal_separator(&g.induced(*a)),
                    "atom {a:?} of {g:?} still splits"
                );
            }
        }
    }

    /// Brute force over all vertex subsets: a clique minimal separator is a
    /// clique whose removal leaves two components seeing all of it.
    fn has_clique_minimal_separator(g: &Graph) -> bool {
        let verts: Vec<usize> = g.vertices().iter().collect();
        let n = verts.len();
        for mask in 1u64..(1 << n) {
            let s: VertexSet = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| verts[i]).collect();
            if s == g.vertices() || !g.is_clique(s) {
                continue;
            }
            if is_minimal_separator(g, s) {
                return true;
            }
        }
        false
    }
}
