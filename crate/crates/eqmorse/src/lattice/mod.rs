//! Exact rational linear algebra, lattice vectors, and feasibility of mixed
//! strict/non-strict linear systems.
//!
//! Everything here is arbitrary-precision: lattice vectors carry `BigInt`
//! coordinates and all solvers work over `BigRational`. No floating point,
//! no epsilons.

mod linalg;
mod system;

pub use linalg::{
    det, dual_basis, int_matrix, rational_solve, unimodular_inverse, RationalMatrix,
    RationalVector,
};
pub use system::{lattice_points, Constraint, LinearSystem, Relation};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::fmt;

pub type Int = BigInt;
pub type Rat = BigRational;

/// A point of the integral lattice (or of the weight lattice, depending on
/// which side of the pairing it lives on).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector(pub Vec<Int>);

impl LatticeVector {
    pub fn zero(rank: usize) -> Self {
        LatticeVector(vec![Int::zero(); rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Integer pairing `<self, other>` (plain dot product; weight and Lie
    /// algebra coordinates are kept dual by convention).
    pub fn dot(&self, other: &LatticeVector) -> Int {
        assert_eq!(self.rank(), other.rank(), "pairing rank mismatch");
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn add(&self, other: &LatticeVector) -> LatticeVector {
        assert_eq!(self.rank(), other.rank());
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &LatticeVector) -> LatticeVector {
        assert_eq!(self.rank(), other.rank());
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, c: &Int) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| a * c).collect())
    }

    pub fn to_rational(&self) -> Vec<Rat> {
        self.0
            .iter()
            .map(|a| Rat::from_integer(a.clone()))
            .collect()
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Shorthand constructor used pervasively in tests and builtins.
pub fn lv(coords: &[i64]) -> LatticeVector {
    LatticeVector(coords.iter().map(|&c| Int::from(c)).collect())
}

/// Divides a nonzero integer vector by the gcd of its entries, preserving
/// direction. Ray generators and chamber representatives are normalized
/// through this.
pub fn primitive(v: &LatticeVector) -> Result<LatticeVector> {
    if v.is_zero() {
        return Err(Error::input("cannot normalize the zero vector"));
    }
    let mut g = Int::zero();
    for c in &v.0 {
        g = g.gcd(c);
    }
    Ok(LatticeVector(v.0.iter().map(|c| c / &g).collect()))
}

/// Clears denominators of a rational vector and normalizes to a primitive
/// integer vector pointing the same way. Positive scaling preserves strict
/// sign conditions exactly, which is what chamber representatives need.
pub fn primitive_from_rational(v: &[Rat]) -> Result<LatticeVector> {
    let mut lcm = Int::from(1);
    for r in v {
        lcm = lcm.lcm(r.denom());
    }
    let ints = LatticeVector(
        v.iter()
            .map(|r| r.numer() * (&lcm / r.denom()))
            .collect(),
    );
    primitive(&ints)
}

/// Canonical representative of `{v, -v}`: primitive, first nonzero entry
/// positive. Hyperplane normals are stored this way.
pub fn canonical_up_to_sign(v: &LatticeVector) -> Result<LatticeVector> {
    let p = primitive(v)?;
    for c in &p.0 {
        if c.is_positive() {
            return Ok(p);
        }
        if c.is_negative() {
            return Ok(p.neg());
        }
    }
    Ok(p)
}
