//! Computing with dessins d'enfants as permutation triples.
//!
//! A dessin on `n` darts is a transitive triple `(σ, α, φ)` of permutations
//! of `{1..n}` with `σαφ = 1` under left-to-right multiplication. This crate
//! validates such triples and computes their relabelling-invariant
//! fingerprints (passport, genus, monodromy order and abelianness,
//! automorphism count, self-duality), geometric and partial duals,
//! delta-matroids with their twists, and monodromy graphs with the derived
//! abstract tropical curves. Every nontrivial algorithm is cross-checked by
//! an independent brute-force oracle in the test suite.

pub mod catalogue;
pub mod delta_matroid;
pub mod dessin;
pub mod enumerate;
pub mod monodromy;
pub mod partial_dual;
pub mod perm;
pub mod text;

pub use catalogue::{catalogue_report, CatalogueEntry, DeltaSummary};
pub use delta_matroid::{
    check_symmetric_axiom, delta_isomorphic, delta_matroid_of_map, delta_self_dual,
    quasi_tree_oracle, DeltaMatroid, DeltaMatroidError,
};
pub use dessin::{
    format_partition, spanning_trees, CleanDessin, Dessin, DessinError, Multigraph, Passport,
};
pub use enumerate::{enumerate_clean_dessins, EnumerateError};
pub use monodromy::{
    build_monodromy_graph, multigraph_isomorphic, Length, MonodromyError, MonodromyGraph,
    TropicalCurve, TropicalInvariants, VertexKind,
};
pub use partial_dual::{
    hypermap_partial_dual, one_face_partial_dual, partial_dual_edge, partial_dual_set, EdgeSubset,
};
pub use perm::{
    find_simultaneous_conjugator, group_order, is_abelian, is_transitive, CycleDecomposition,
    GroupOrder, Perm, PermError, DEFAULT_ORDER_CAP,
};
pub use text::{format_dessin, format_permutation, parse_dessin, parse_permutation, ParseError};
