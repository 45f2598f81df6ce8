//! Construction, recognition and handle surgery for triangulated manifolds
//! whose vertex links are all stacked spheres (Walkup's class `K(d)`).
//!
//! The crate is organized around [`SimplicialComplex`], an immutable facet
//! list over string-labelled vertices. Everything else is a pure function of
//! complexes:
//!
//! * [`homology`]: ℤ₂ Betti numbers, Euler characteristic, orientability.
//! * [`stacked`]: stacked ball and sphere recognition, vertex reduction.
//! * [`walkup`]: class membership and the closed-form face-vector formulas.
//! * [`surgery`]: handle addition and deletion, connected sums, decomposition
//!   into a stacked sphere plus handles.
//! * [`constructions`]: standard spheres, random stacked spheres and the
//!   15-vertex 4-manifold built from a 30-vertex stacked sphere.
//! * [`symmetry`]: automorphism groups and isomorphism search.
//! * [`tightness`]: ℤ₂-tightness via induced subcomplexes.

pub mod bitset;
pub mod complex;
pub mod constructions;
pub mod dual;
pub mod error;
pub mod gf2;
pub mod graph;
pub mod homology;
pub mod label;
pub mod prng;
pub mod stacked;
pub mod surgery;
pub mod symmetry;
pub mod tightness;
pub mod walkup;

pub use complex::{FVector, FaceSystem, SimplicialComplex};
pub use dual::{DualGraph, PseudomanifoldStatus};
pub use error::{Error, Result};
pub use homology::{HomologyProfile, Orientability};
pub use label::VertexLabel;
