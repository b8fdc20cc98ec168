//! Higher cluster categories `C_H^m = D^b(H) / τ⁻¹[m]` for representation-finite
//! hereditary algebras `H = kQ`, `Q` a Dynkin quiver.
//!
//! The crate builds everything from the quiver upwards:
//!
//! * [`quiver`]: Dynkin quivers, dimension vectors, the Euler form and positive roots.
//! * [`ar`]: the knitted Auslander–Reiten quiver of `mod H` with module Hom dimensions.
//! * [`derived`]: indecomposables of `D^b(H)` as `(module, shift)`, τ, shift, `G = τ⁻¹[m]`.
//! * [`mesh`]: explicit Hom bases in the mesh category with composition.
//! * [`cluster`]: fundamental domains, cluster Ext, compatibility graphs, maximal m-rigid
//!   objects, complements, tilting modules and slice normalisation.
//! * [`localise`]: localisation at a rigid indecomposable summand.
//! * [`endo`]: endomorphism algebras of maximal m-rigid objects and their factor algebras.
//! * [`verify`]: the aggregated verification report used by the CLI.

pub mod ar;
pub mod cluster;
pub mod derived;
pub mod endo;
mod error;
pub mod linalg;
pub mod localise;
pub mod mesh;
pub mod quiver;
pub mod verify;

pub use error::{Error, Result};
