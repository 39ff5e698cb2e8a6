//! chordkit: triangulations of small graphs via elimination orderings.
//!
//! The crate computes exact minimum fill-in, treewidth, and the gap
//! parameters between the two objectives, recognizes chordal graphs with
//! witnesses, applies safe-edge reduction rules, and generates the structured
//! graph families used to validate all of it.

pub mod chordality;
pub mod codec;
pub mod elimination;
pub mod families;
pub mod graph;
pub mod safe_edges;
pub mod separators;
pub mod solver;

pub use chordality::{check_chordal, is_almost_simplicial, is_simplicial, mcs_order, ChordalityVerdict};
pub use elimination::{
    apply_ordering, low_degree_prefix, madj_of, stability_check, EliminationOrdering,
    LowDegreeRecord, TriangulationReport,
};
pub use families::{generate, recipe_ordering, rook_madj_check, FamilySpec, RecipeOrdering};
pub use graph::{Edge, EdgeSet, Graph, GraphError, VertexSet, MAX_VERTICES};
pub use safe_edges::{
    check_tau0_certificate, f_v, reduce, safety, ReductionStep, ReductionTrace, SafetyRule,
    SafetyTag,
};
pub use separators::{
    atoms, biconnected_components, components_after, minimal_separators_in_neighborhood,
    vertex_connectivity, AtomDecomposition, Separator,
};
pub use solver::{
    exact_mfi, exact_tau_phi, exact_tw, min_ordering_width_equivalence, tfm_decide,
    width_capped_min_fill, SolverConfig, SolverError, SolverResult, TauPhiResult,
};
