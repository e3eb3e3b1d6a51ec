//! Combinatorics of quasitoric manifolds over polytopes.
//!
//! - [`intlat`]: exact lattice algebra on `Z^d` and sign classes.
//! - [`polytope`]: combinatorial polytopes, edge-simplicity, constructions,
//!   vertex truncation, h-vectors and index data.
//! - [`charmap`]: characteristic, isotropy and mod-2 isotropy functions.
//! - [`boundary`]: the model of a manifold with quasitoric boundary, its
//!   relative homology ranks and Euler characteristic.
//! - [`cobord4`]: classification of 4-dimensional quasitoric manifolds up to
//!   equivariant cobordism, with witness polytopes.

pub mod boundary;
pub mod charmap;
pub mod cobord4;
pub mod intlat;
mod linalg;
pub mod polytope;

pub use intlat::{IntVec, Sign, SignVec, TriangleClass, TriangleData};
pub use polytope::CombPolytope;
