//! Exact pseudo-stacking of convex polytopes and the two construction
//! pipelines for elementary 2-simple 2-simplicial 4-polytopes, with face
//! lattice, flag vector, duality and isomorphism analytics.
//!
//! All geometry is exact rational arithmetic.

pub mod analysis;
pub mod catalog;
pub mod constructions;
pub mod error;
pub mod exact;
pub mod flag;
pub mod hull;
pub mod io;
pub mod iso;
pub mod lattice;
pub mod par;
pub mod polytope;
pub mod pseudostack;
pub mod vset;

pub use analysis::{analyze, AnalysisReport};
pub use catalog::{get as catalog_entry, verify_catalog, CatalogEntry};
pub use constructions::{
    build_p11_via_octahedron, construct_i1, construct_i2, generate_elementary_2s2s, pyramid,
    stack, ConstructionTrace, LabeledSimplexFacet,
};
pub use error::{Error, Result};
pub use exact::{Hyperplane, Scalar, Side, Vector};
pub use flag::{FVector, FlagVector};
pub use iso::{lattices_isomorphic, self_dual};
pub use lattice::{build_face_lattice, FaceLattice};
pub use par::Execution;
pub use polytope::{Facet, Polytope};
pub use pseudostack::{
    bounded_position, forecast_edge_count, forecast_new_edges, forecast_subridge_degree, is_nonsimple,
    normalize_bounded_position, pseudo_stack, surviving_faces, witness_point, FacetSelector,
    StepSpec, WitnessPoint,
};
pub use vset::VertexSet;
