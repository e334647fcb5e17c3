//! Exact invariants of lens spaces and explicit Klein-bottle embeddings.
//!
//! The crate is split along the lines of the computation:
//!
//! * [`lens`] — lens-space arithmetic, Heegaard gluings and the
//!   embeddability decisions for Klein bottles and projective planes.
//! * [`abelian`] — Smith normal form over arbitrary-precision integers and
//!   the homology of Dehn fillings of a Klein-bottle neighbourhood.
//! * [`groups`] — words, presentations and explicit multiplication tables
//!   for the metacyclic fundamental groups of those fillings.
//! * [`geometry`] — Seifert fibration descriptors, Möbius-band and handle
//!   constructions, and the lens-model mesh of the Klein bottle in `S³`.

pub mod abelian;
pub mod error;
pub mod geometry;
pub mod groups;
pub mod lens;

pub use error::{Error, Result};
pub use lens::{
    apply_gluing, are_homeomorphic, heegaard_gluing, klein_bottle_embeds, lens_from_meridian_image,
    normalize, projective_plane_embeds, BasisTag, EmbeddabilityVerdict, GluingMatrix, LensSpace,
    Sign, TorusClass,
};

/// A point of `C²`; points of `S³` satisfy `|z₁|² + |z₂|² = 1`.
pub type C2 = [num_complex::Complex64; 2];
