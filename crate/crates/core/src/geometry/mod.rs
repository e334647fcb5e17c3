//! Explicit models: the Klein-bottle neighbourhood `νK`, its Seifert
//! fibrations, the Möbius-band and handle constructions, and the lens-model
//! embedding of the Klein bottle as a sampled mesh in `S³`.
//!
//! Class arithmetic on `∂νK` uses the basis `(a, b)`: `a` the interval
//! circle, `b` the fibre circle. The filling solid torus has meridian glued
//! to `(n, 1)` and longitude `λ ∼ (1, 0)`; every report depends on that
//! longitude choice.

pub mod complex;
pub mod constructions;
pub mod export;
pub mod fibration;
pub mod mesh;

pub use complex::IdentifiedComplex;
pub use constructions::{
    handle_boundary_class, klein_in_s1xs2, moebius_boundary_winding, moebius_in_solid_torus,
    two_moebius_construction, HandleLayout, HandleReport, S1xS2Report, TwoMoebiusReport,
};
pub use fibration::{
    fiber_through, heegaard_identification_from_fibration, seifert_over_rp2, seifert_over_s2,
    BaseOrbifold, DehnFilling, Fiber, NuKModel, NuKPoint, SeifertDescriptor,
};
pub use mesh::{
    embedded_injectivity_check, klein_lens_embedding, lens_fundamental_domain_canonicalize,
    stereographic_export, verify_seams, InjectivityReport, QuotientMesh, SeamCheck, SeamPair,
    StereoMesh,
};
