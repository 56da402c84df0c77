//! Complexes of projectives over a finite-dimensional algebra, Hom complexes,
//! cones, minimal models, mutations and helices.

pub mod complex;
pub mod hom;
pub mod mutation;

pub use complex::{cone, ChainMap, PMap, ProjComplex};
pub use hom::{hom_complex, HomComplex, Homology};
pub use mutation::{
    check_exceptional_pair, extend_helix, helix_end_algebra, is_exceptional, isomorphic, line_bundle_helix, mutate, verify_geometric, Direction,
    HelixWindow,
};
