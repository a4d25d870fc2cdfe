//! Fixed-point data: the inputs to every Morse-type formula.

use crate::charring::FormalCharacter;
use crate::error::{Error, Result};
use crate::lattice::LatticeVector;

/// One fixed point: its isotropy weights on the tangent space and the
/// character of the fiber over it.
#[derive(Clone, Debug)]
pub struct FixedPointDatum {
    pub label: String,
    pub isotropy_weights: Vec<LatticeVector>,
    pub fiber_character: FormalCharacter,
}

impl FixedPointDatum {
    pub fn new(
        label: impl Into<String>,
        isotropy_weights: Vec<LatticeVector>,
        fiber_character: FormalCharacter,
    ) -> Result<Self> {
        let label = label.into();
        for w in &isotropy_weights {
            if w.is_zero() {
                return Err(Error::input(format!(
                    "fixed point {label} has a zero isotropy weight"
                )));
            }
        }
        if fiber_character.is_empty() || !fiber_character.is_nonnegative() {
            return Err(Error::input(format!(
                "fixed point {label} needs a nonzero, nonnegative fiber character"
            )));
        }
        Ok(FixedPointDatum {
            label,
            isotropy_weights,
            fiber_character,
        })
    }
}

/// A complete fixed-point data set: `points.len()` isolated fixed points on
/// an n-dimensional manifold with a rank-`rank` torus action.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub rank: usize,
    pub dim: usize,
    pub points: Vec<FixedPointDatum>,
}

impl Scenario {
    pub fn new(rank: usize, dim: usize, points: Vec<FixedPointDatum>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::input("a scenario needs at least one fixed point"));
        }
        for p in &points {
            if p.isotropy_weights.len() != dim {
                return Err(Error::input(format!(
                    "fixed point {} has {} isotropy weights, expected {dim}",
                    p.label,
                    p.isotropy_weights.len()
                )));
            }
            if p.fiber_character.rank() != rank {
                return Err(Error::input(format!(
                    "fixed point {} has fiber weights of rank {}, expected {rank}",
                    p.label,
                    p.fiber_character.rank()
                )));
            }
            for w in &p.isotropy_weights {
                if w.rank() != rank {
                    return Err(Error::input(format!(
                        "fixed point {} has an isotropy weight of rank {}, expected {rank}",
                        p.label,
                        w.rank()
                    )));
                }
            }
        }
        Ok(Scenario { rank, dim, points })
    }

    /// All fiber weights of all points; these apexes bound the support of
    /// the index, so windows are built around them.
    pub fn apexes(&self) -> Vec<LatticeVector> {
        let mut out = Vec::new();
        for p in &self.points {
            for w in p.fiber_character.support() {
                out.push(w.clone());
            }
        }
        out
    }
}
