//! Exact verification of equivariant holomorphic Morse inequalities for
//! torus actions on fixed-point data.
//!
//! Given the isotropy weights and fiber characters at the fixed points of a
//! torus action (either supplied directly or extracted from a fan with a
//! piecewise linear function), the crate computes equivariant indices by
//! fixed-point localization, encloses cohomology supports between
//! region-theoretic bounds, verifies the strong and weak Morse-type
//! inequalities on finite weight windows, detects obstructions to invariant
//! Kaehler structures, and rearranges the fixed-point sum along Weyl-group
//! orbits for non-Abelian symmetry.
//!
//! All core arithmetic is arbitrary-precision rational; floating point
//! appears only in the numeric evaluation helpers of [`charring`].

pub mod builtins;
pub mod chambers;
pub mod charring;
pub mod error;
pub mod fan;
pub mod lattice;
pub mod morse;
pub mod scenario;
pub mod weyl;

pub use error::{Error, Result};
pub use lattice::{Int, LatticeVector, Rat};
pub use scenario::{FixedPointDatum, Scenario};
