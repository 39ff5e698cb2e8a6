//! Generators for the structured graph families used as exact oracles, plus
//! hand-transcribed elimination recipes with their predicted fill and width.
//!
//! Labeling conventions (all 0-indexed):
//! - grid/rook on m rows and n columns: vertex (r, c) gets id `r * n + c`.
//! - cocktail party of order r: pair i occupies ids 2i and 2i + 1; the pairs
//!   are the only non-edges.
//! - the four-block family: blocks A, B1, B2, C laid out contiguously in that
//!   order, complete inside each block and across A-B1, B1-C, C-B2, B2-A.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::chordality::check_chordal;
use crate::elimination::{madj_of, EliminationOrdering};
use crate::graph::{Graph, GraphError, VertexSet};
use crate::solver::{capped_fill_ordering, SolverConfig, SolverError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("invalid family spec: {0}")]
    InvalidSpec(String),
    #[error("no recipe ordering for {0}")]
    NoRecipe(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// A parameterized graph family instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Path { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
    Grid { m: usize, n: usize },
    Rook { m: usize, n: usize },
    Cocktail { r: usize },
    /// A tree (with every internal vertex of degree at least 3) plus a cycle
    /// through its leaves in the given planar order.
    Halin { tree: Vec<(usize, usize)>, leaf_cycle: Vec<usize> },
    /// Four cliques a, b, b, c arranged in a square: tau equals b - a.
    TauFamily { a: usize, b: usize, c: usize },
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Path { n } => write!(f, "path:{n}"),
            FamilySpec::Cycle { n } => write!(f, "cycle:{n}"),
            FamilySpec::Complete { n } => write!(f, "complete:{n}"),
            FamilySpec::Grid { m, n } => write!(f, "grid:{m}x{n}"),
            FamilySpec::Rook { m, n } => write!(f, "rook:{m}x{n}"),
            FamilySpec::Cocktail { r } => write!(f, "cocktail:{r}"),
            FamilySpec::Halin { tree, leaf_cycle } => {
                write!(f, "halin({} tree edges, {} rim)", tree.len(), leaf_cycle.len())
            }
            FamilySpec::TauFamily { a, b, c } => write!(f, "tau:{a},{b},{c}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, FamilyError> {
        let invalid = || FamilyError::InvalidSpec(s.to_string());
        let (kind, rest) = s.split_once(':').ok_or_else(invalid)?;
        let int = |t: &str| t.trim().parse::<usize>().map_err(|_| invalid());
        match kind {
            "path" => Ok(FamilySpec::Path { n: int(rest)? }),
            "cycle" => Ok(FamilySpec::Cycle { n: int(rest)? }),
            "complete" => Ok(FamilySpec::Complete { n: int(rest)? }),
            "grid" | "rook" => {
                let (a, b) = rest.split_once('x').ok_or_else(invalid)?;
                let (m, n) = (int(a)?, int(b)?);
                if kind == "grid" {
                    Ok(FamilySpec::Grid { m, n })
                } else {
                    Ok(FamilySpec::Rook { m, n })
                }
            }
            "cocktail" => Ok(FamilySpec::Cocktail { r: int(rest)? }),
            "tau" => {
                let parts: Vec<&str> = rest.split(',').collect();
                if parts.len() != 3 {
                    return Err(invalid());
                }
                Ok(FamilySpec::TauFamily {
                    a: int(parts[0])?,
                    b: int(parts[1])?,
                    c: int(parts[2])?,
                })
            }
            _ => Err(invalid()),
        }
    }
}

/// Builds the graph described by `spec`.
pub fn generate(spec: &FamilySpec) -> Result<Graph, FamilyError> {
    match *spec {
        FamilySpec::Path { n } => {
            require(n >= 1, "path needs n >= 1")?;
            Ok(Graph::build(n, (0..n.saturating_sub(1)).map(|i| (i, i + 1)))?)
        }
        FamilySpec::Cycle { n } => {
            require(n >= 3, "cycle needs n >= 3")?;
            Ok(Graph::build(n, (0..n).map(|i| (i, (i + 1) % n)))?)
        }
        FamilySpec::Complete { n } => {
            require(n >= 1, "complete graph needs n >= 1")?;
            Ok(Graph::build(n, pairs(0..n))?)
        }
        FamilySpec::Grid { m, n } => {
            require(m >= 1 && n >= 1, "grid needs m, n >= 1")?;
            let id = |r: usize, c: usize| r * n + c;
            let mut edges = Vec::new();
            for r in 0..m {
                for c in 0..n {
                    if c + 1 < n {
                        edges.push((id(r, c), id(r, c + 1)));
                    }
                    if r + 1 < m {
                        edges.push((id(r, c), id(r + 1, c)));
                    }
                }
            }
            Ok(Graph::build(m * n, edges)?)
        }
        FamilySpec::Rook { m, n } => {
            require(m >= 1 && n >= 1, "rook needs m, n >= 1")?;
            let id = |r: usize, c: usize| r * n + c;
            let mut edges = Vec::new();
            for r in 0..m {
                for c in 0..n {
                    for c2 in c + 1..n {
                        edges.push((id(r, c), id(r, c2)));
                    }
                    for r2 in r + 1..m {
                        edges.push((id(r, c), id(r2, c)));
                    }
                }
            }
            Ok(Graph::build(m * n, edges)?)
        }
        FamilySpec::Cocktail { r } => {
            require(r >= 1, "cocktail party needs r >= 1")?;
            let n = 2 * r;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if !(u % 2 == 0 && v == u + 1) {
                        edges.push((u, v));
                    }
                }
            }
            Ok(Graph::build(n, edges)?)
        }
        FamilySpec::Halin { ref tree, ref leaf_cycle } => generate_halin(tree, leaf_cycle),
        FamilySpec::TauFamily { a, b, c } => {
            require(a >= 1, "block a must be nonempty")?;
            require(a < b, "needs a < b")?;
            require(b < c, "needs b < c")?;
            require(b * b < a * c, "needs b^2 < a*c")?;
            let blocks = [
                (0, a),             // A
                (a, a + b),         // B1
                (a + b, a + 2 * b), // B2
                (a + 2 * b, a + 2 * b + c), // C
            ];
            let n = a + 2 * b + c;
            let mut edges = Vec::new();
            for (lo, hi) in blocks {
                edges.extend(pairs(lo..hi));
            }
            // Square of blocks: A-B1, B1-C, C-B2, B2-A.
            let cross = [(0, 1), (1, 3), (3, 2), (2, 0)];
            for (x, y) in cross {
                for u in blocks[x].0..blocks[x].1 {
                    for v in blocks[y].0..blocks[y].1 {
                        edges.push((u, v));
                    }
                }
            }
            Ok(Graph::build(n, edges)?)
        }
    }
}

fn require(cond: bool, msg: &str) -> Result<(), FamilyError> {
    if cond {
        Ok(())
    } else {
        Err(FamilyError::InvalidSpec(msg.to_string()))
    }
}

fn pairs(range: std::ops::Range<usize>) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for u in range.clone() {
        for v in u + 1..range.end {
            out.push((u, v));
        }
    }
    out
}

fn generate_halin(tree: &[(usize, usize)], leaf_cycle: &[usize]) -> Result<Graph, FamilyError> {
    let n = tree
        .iter()
        .flat_map(|&(a, b)| [a, b])
        .max()
        .map(|v| v + 1)
        .unwrap_or(0);
    require(n >= 4, "halin graph needs at least 4 vertices")?;
    let skeleton = Graph::build(n, tree.iter().copied())?;
    require(skeleton.size() == n - 1 && skeleton.is_connected(), "tree part must be a tree")?;
    let leaves: VertexSet = skeleton
        .vertices()
        .iter()
        .filter(|&v| skeleton.degree(v) == 1)
        .collect();
    let listed: VertexSet = leaf_cycle.iter().copied().collect();
    require(
        listed == leaves && leaf_cycle.len() == leaves.len() && leaves.len() >= 3,
        "leaf cycle must list every tree leaf exactly once (>= 3 leaves)",
    )?;
    for v in skeleton.vertices().minus(leaves).iter() {
        require(skeleton.degree(v) >= 3, "internal tree vertices need degree >= 3")?;
    }
    let mut edges: Vec<(usize, usize)> = tree.to_vec();
    for i in 0..leaf_cycle.len() {
        edges.push((leaf_cycle[i], leaf_cycle[(i + 1) % leaf_cycle.len()]));
    }
    Ok(Graph::build(n, edges)?)
}

// ---------------------------------------------------------------------------
// Recipe orderings
// ---------------------------------------------------------------------------

/// A transcribed elimination recipe with its predicted outcome.
#[derive(Debug, Clone)]
pub struct RecipeOrdering {
    pub spec: FamilySpec,
    pub ordering: EliminationOrdering,
    pub expected_fill: usize,
    pub expected_width: usize,
}

/// The elimination recipe for the supported families. Grid recipes cover 3
/// rows (any n >= 3) and 4 rows (4 <= n <= 8, where the tail after the tagged
/// prefix is completed by the width-capped exact solver); rook recipes cover
/// 3 rows and the 4x4, 4x5 and 4xn layouts.
pub fn recipe_ordering(spec: &FamilySpec) -> Result<RecipeOrdering, FamilyError> {
    let g = generate(spec)?;
    let (order, expected_fill, expected_width) = match *spec {
        FamilySpec::Path { n } => ((0..n).collect(), 0, if n >= 2 { 1 } else { 0 }),
        FamilySpec::Cycle { n } => ((0..n).collect(), n - 3, 2),
        FamilySpec::Complete { n } => ((0..n).collect(), 0, n - 1),
        FamilySpec::Cocktail { r } => ((0..2 * r).collect(), r - 1, 2 * r - 2),
        FamilySpec::Grid { m: 3, n } if n >= 3 => grid3_recipe(n),
        FamilySpec::Grid { m: 4, n } if (4..=8).contains(&n) => grid4_recipe(&g, n)?,
        FamilySpec::Rook { m: 3, n } if n >= 3 => rook3_recipe(n),
        FamilySpec::Rook { m: 4, n: 4 } => rook44_recipe(),
        FamilySpec::Rook { m: 4, n: 5 } => rook45_recipe(),
        FamilySpec::Rook { m: 4, n } if n >= 6 => rook4n_recipe(n),
        FamilySpec::TauFamily { b, c, .. } => tau_family_recipe(&g, b, c),
        _ => return Err(FamilyError::NoRecipe(spec.to_string())),
    };
    Ok(RecipeOrdering {
        spec: spec.clone(),
        ordering: EliminationOrdering::new(order, &g).expect("recipes are permutations"),
        expected_fill,
        expected_width,
    })
}

/// Three-row grid: the four corners, then the first middle vertex, then a
/// column sweep (middle, top, bottom), leaving a final 4-clique.
fn grid3_recipe(n: usize) -> (Vec<usize>, usize, usize) {
    let id = |r: usize, c: usize| r * n + c;
    let mut order = vec![id(0, 0), id(0, n - 1), id(2, 0), id(2, n - 1), id(1, 0)];
    for c in 1..=n.saturating_sub(3) {
        order.extend([id(1, c), id(0, c), id(2, c)]);
    }
    let mut remaining: Vec<usize> = vec![id(0, n - 2), id(1, n - 2), id(2, n - 2), id(1, n - 1)];
    remaining.sort_unstable();
    order.extend(remaining);
    (order, 5 + 4 * (n - 3), 3)
}

/// Four-row grid, 4 <= n <= 8: corners, then the degree-3 belt, then any
/// width-4 fill-optimal completion of the residual (solved exactly).
fn grid4_recipe(g: &Graph, n: usize) -> Result<(Vec<usize>, usize, usize), FamilyError> {
    let id = |r: usize, c: usize| r * n + c;
    let mut order = vec![id(0, 0), id(0, n - 1), id(3, 0), id(3, n - 1)];
    if n == 4 {
        order.extend([id(1, 0), id(3, 2), id(1, 3), id(0, 2)]);
    } else {
        order.extend([
            id(1, 0),
            id(0, 1),
            id(3, 1),
            id(3, n - 2),
            id(1, n - 1),
            id(0, n - 2),
        ]);
    }
    let mut residual = g.clone();
    for &v in &order {
        residual = residual.eliminate(v).expect("prefix vertices distinct").0;
    }
    let config = SolverConfig::default();
    let tail = capped_fill_ordering(&residual, 4, &config)?
        .expect("the residual has treewidth 4");
    order.extend(tail.witness.as_slice());
    let expected_fill = if n.is_multiple_of(2) { 18 + 8 * (n - 4) } else { 25 + 8 * (n - 5) };
    Ok((order, expected_fill, 4))
}

/// Three-row rook: one vertex per column for the first n steps, rows cycling
/// so no row is used more than ceil(n/3) times; the rest is complete.
fn rook3_recipe(n: usize) -> (Vec<usize>, usize, usize) {
    let id = |r: usize, c: usize| r * n + c;
    let mut order: Vec<usize> = (0..n).map(|c| id(c % 3, c)).collect();
    let mut rest: Vec<usize> = (0..3 * n).filter(|v| !order.contains(v)).collect();
    rest.sort_unstable();
    order.extend(rest);
    let k = n / 3;
    let fill = match n % 3 {
        0 => k * (15 * k - 6),
        1 => k * (15 * k + 4),
        _ => (5 * k + 3) * (3 * k + 1),
    };
    (order, fill, 2 * n - 1)
}

/// The 4x4 rook recipe: the diagonal, then two off-diagonal vertices, then
/// the remaining 10-clique.
fn rook44_recipe() -> (Vec<usize>, usize, usize) {
    let n = 4;
    let id = |r: usize, c: usize| r * n + c;
    let mut order = vec![id(0, 0), id(1, 1), id(2, 2), id(3, 3), id(0, 1), id(1, 0)];
    let mut rest: Vec<usize> = (0..16).filter(|v| !order.contains(v)).collect();
    rest.sort_unstable();
    order.extend(rest);
    (order, 38, 9)
}

/// The 4x5 rook recipe: diagonal, two pairs off the diagonal, then the
/// remaining 12-clique.
fn rook45_recipe() -> (Vec<usize>, usize, usize) {
    let n = 5;
    let id = |r: usize, c: usize| r * n + c;
    let mut order = vec![
        id(0, 0),
        id(1, 1),
        id(2, 2),
        id(3, 3),
        id(0, 1),
        id(2, 3),
        id(1, 0),
        id(3, 2),
    ];
    let mut rest: Vec<usize> = (0..20).filter(|v| !order.contains(v)).collect();
    rest.sort_unstable();
    order.extend(rest);
    (order, 66, 11)
}

/// The 4xn rook ordering for n >= 6: a split sweep across rows one and two,
/// their leftovers, two fresh corners, then the remaining clique. Its width
/// intentionally exceeds the treewidth; the predicted totals come from the
/// arithmetic of the construction.
fn rook4n_recipe(n: usize) -> (Vec<usize>, usize, usize) {
    let id = |r: usize, c: usize| r * n + c;
    let half = n.div_ceil(2);
    let mut order = Vec::new();
    for c in 0..half - 1 {
        order.push(id(0, c));
    }
    for c in half - 1..n - 2 {
        order.push(id(1, c));
    }
    for c in 0..half - 1 {
        order.push(id(1, c));
    }
    for c in half - 1..n - 2 {
        order.push(id(0, c));
    }
    order.push(id(2, n - 2));
    order.push(id(3, n - 1));
    let mut rest: Vec<usize> = (0..4 * n).filter(|v| !order.contains(v)).collect();
    rest.sort_unstable();
    order.extend(rest);

    let madj_sum = 6 * n * n - 4 * n - if n.is_multiple_of(2) { n / 2 } else { (n - 1) / 2 } + 8;
    let edges = 2 * n * (n + 2);
    (order, madj_sum - edges, 3 * n - 3)
}

/// Four-block family: one vertex of block A first (adding the fill between
/// the two B blocks), then a perfect elimination order of the now-chordal
/// rest.
fn tau_family_recipe(g: &Graph, b: usize, c: usize) -> (Vec<usize>, usize, usize) {
    let (residual, _) = g.eliminate(0).expect("block A is nonempty");
    let verdict = check_chordal(&residual);
    let peo = verdict.peo.expect("one elimination leaves a chordal graph");
    let mut order = vec![0];
    order.extend(peo);
    (order, b * b, 2 * b + c - 1)
}

/// Checks the closed-form neighborhood size of a rook ordering at a step
/// (1-indexed) against the order-free computation.
pub fn rook_madj_check(
    spec: &FamilySpec,
    order: &EliminationOrdering,
    step: usize,
) -> Result<bool, FamilyError> {
    let FamilySpec::Rook { m, n } = *spec else {
        return Err(FamilyError::InvalidSpec(format!("{spec} is not a rook family")));
    };
    let g = generate(spec)?;
    require(step >= 1 && step <= order.len(), "step out of range")?;
    let v = order.vertex_at(step - 1);
    let prefix: VertexSet = order.as_slice()[..step - 1].iter().copied().collect();

    // Component of the eliminated prefix plus v that contains v.
    let region = g.induced(prefix.with(v));
    let comp = *region
        .components()
        .iter()
        .find(|c| c.contains(v))
        .expect("v is in its own component");
    let rows: std::collections::BTreeSet<usize> = comp.iter().map(|x| x / n).collect();
    let cols: std::collections::BTreeSet<usize> = comp.iter().map(|x| x % n).collect();
    let formula = n * m - (m - rows.len()) * (n - cols.len()) - comp.len();

    let actual = madj_of(&g, prefix, v).len();
    Ok(formula == actual)
}
