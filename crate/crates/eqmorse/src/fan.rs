//! Toric manifold encoding: fans, piecewise linear functions, validation,
//! convexity, and extraction of fixed-point data.
//!
//! Only simplicial fans with full-dimensional maximal cones are supported;
//! orbifold (non-unimodular) cones survive validation with `smooth = false`
//! so that the classical non-convex counterexample fan can be represented in
//! both its singular 8-cone and resolved 22-cone forms.

use crate::charring::FormalCharacter;
use crate::error::{Error, Result};
use crate::lattice::{
    det, int_matrix, lattice_points, rational_solve, Constraint, Int, LatticeVector,
    LinearSystem, Rat, RationalMatrix,
};
use crate::lattice::{dual_basis, primitive};
use crate::scenario::{FixedPointDatum, Scenario};
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// A complete description of a fan by primitive ray generators and maximal
/// cones given as lists of ray indices (each of size = rank).
#[derive(Clone, Debug)]
pub struct Fan {
    pub rank: usize,
    pub rays: Vec<LatticeVector>,
    pub max_cones: Vec<Vec<usize>>,
    pub labels: Option<Vec<String>>,
}

impl Fan {
    pub fn new(
        rank: usize,
        rays: Vec<LatticeVector>,
        max_cones: Vec<Vec<usize>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        for (i, r) in rays.iter().enumerate() {
            if r.rank() != rank {
                return Err(Error::input(format!("ray {i} has wrong dimension")));
            }
            if r.is_zero() {
                return Err(Error::input(format!("ray {i} is zero")));
            }
            if primitive(r)? != *r {
                return Err(Error::input(format!("ray {i} is not primitive")));
            }
            if rays[..i].contains(r) {
                return Err(Error::input(format!("ray {i} duplicates an earlier ray")));
            }
        }
        for (c, cone) in max_cones.iter().enumerate() {
            if cone.len() != rank {
                return Err(Error::input(format!(
                    "cone {c} has {} generators, expected {rank}",
                    cone.len()
                )));
            }
            for &i in cone {
                if i >= rays.len() {
                    return Err(Error::input(format!("cone {c} references missing ray {i}")));
                }
            }
        }
        if let Some(ls) = &labels {
            if ls.len() != rays.len() {
                return Err(Error::input("label count differs from ray count"));
            }
        }
        Ok(Fan {
            rank,
            rays,
            max_cones,
            labels,
        })
    }

    pub fn cone_matrix(&self, cone: usize) -> Vec<Vec<Int>> {
        let rows: Vec<&LatticeVector> = self.max_cones[cone]
            .iter()
            .map(|&i| &self.rays[i])
            .collect();
        int_matrix(&rows)
    }

    /// Ray indices of cone index lookup by an unordered label or index set;
    /// used by builtins and tests to name cones by their generators.
    pub fn cone_index_by_rays(&self, rays: &[usize]) -> Option<usize> {
        let mut want = rays.to_vec();
        want.sort_unstable();
        self.max_cones.iter().position(|c| {
            let mut have = c.clone();
            have.sort_unstable();
            have == want
        })
    }

    /// Exact membership of a rational direction in the cone: solve for the
    /// generator coefficients and check their signs.
    fn cone_contains(&self, cone: usize, direction: &[Rat]) -> bool {
        let m = self.cone_matrix(cone);
        let n = self.rank;
        // direction = sum c_i ray_i: transpose the generator matrix.
        let a: RationalMatrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| Rat::from_integer(m[j][i].clone()))
                    .collect()
            })
            .collect();
        match rational_solve(&a, &direction.to_vec()) {
            Ok(Some(c)) => c.iter().all(|x| !x.is_negative()),
            _ => false,
        }
    }
}

/// What the validator can certify about a fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub simplicial: bool,
    pub smooth: bool,
    pub complete: bool,
    pub failing_cones: Vec<usize>,
}

/// Checks simpliciality (nonsingular generator matrices), smoothness
/// (|det| = 1 on every maximal cone) and completeness (every facet shared by
/// exactly two maximal cones, plus a randomized coverage probe that guards
/// against mis-encoded example data).
pub fn validate(fan: &Fan) -> ValidationReport {
    let mut failing = Vec::new();
    let mut simplicial = true;
    let mut smooth = true;
    for c in 0..fan.max_cones.len() {
        let d = det(&fan.cone_matrix(c));
        if d.is_zero() {
            simplicial = false;
            smooth = false;
            failing.push(c);
        } else if !d.abs().is_one() {
            smooth = false;
            failing.push(c);
        }
    }

    let complete = if fan.rank == 1 {
        fan.max_cones.len() == 2 && {
            let a = &fan.rays[fan.max_cones[0][0]];
            let b = &fan.rays[fan.max_cones[1][0]];
            *a == b.neg()
        }
    } else {
        facets_paired(fan) && coverage_probe(fan)
    };

    ValidationReport {
        simplicial,
        smooth,
        complete,
        failing_cones: failing,
    }
}

fn facets_paired(fan: &Fan) -> bool {
    use std::collections::HashMap;
    let mut counts: HashMap<Vec<usize>, usize> = HashMap::new();
    for cone in &fan.max_cones {
        for skip in 0..cone.len() {
            let mut facet: Vec<usize> = cone
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, &r)| r)
                .collect();
            facet.sort_unstable();
            *counts.entry(facet).or_insert(0) += 1;
        }
    }
    counts.values().all(|&c| c == 2)
}

fn coverage_probe(fan: &Fan) -> bool {
    let mut rng = StdRng::seed_from_u64(0x66616e);
    for _ in 0..20 {
        let dir: Vec<Rat> = (0..fan.rank)
            .map(|_| Rat::from_integer(Int::from(rng.gen_range(-50i64..=50))))
            .collect();
        if dir.iter().all(Zero::is_zero) {
            continue;
        }
        let covered = (0..fan.max_cones.len()).any(|c| fan.cone_contains(c, &dir));
        if !covered {
            return false;
        }
    }
    true
}

/// A piecewise linear function on the fan, stored by its ray values. On each
/// maximal cone the values must extend to a single integral linear
/// functional; that functional is the fiber weight of the associated
/// equivariant line bundle at the cone's fixed point.
#[derive(Clone, Debug)]
pub struct PLFunction {
    pub ray_values: Vec<Int>,
}

impl PLFunction {
    pub fn new(fan: &Fan, ray_values: Vec<Int>) -> Result<Self> {
        if ray_values.len() != fan.rays.len() {
            return Err(Error::Dimension {
                expected: fan.rays.len(),
                got: ray_values.len(),
            });
        }
        let pl = PLFunction { ray_values };
        for c in 0..fan.max_cones.len() {
            cone_weight(fan, &pl, c)?;
        }
        Ok(pl)
    }

    pub fn from_i64(fan: &Fan, values: &[i64]) -> Result<Self> {
        PLFunction::new(fan, values.iter().map(|&v| Int::from(v)).collect())
    }

    pub fn value(&self, ray: usize) -> &Int {
        &self.ray_values[ray]
    }
}

/// The unique m with <m, v_i> = phi(v_i) on the cone's rays, as a rational
/// vector (defined whenever the cone is simplicial).
pub fn cone_weight_rational(fan: &Fan, pl: &PLFunction, cone: usize) -> Result<Vec<Rat>> {
    let m = fan.cone_matrix(cone);
    let a: RationalMatrix = m
        .iter()
        .map(|row| row.iter().map(|e| Rat::from_integer(e.clone())).collect())
        .collect();
    let b: Vec<Rat> = fan.max_cones[cone]
        .iter()
        .map(|&i| Rat::from_integer(pl.ray_values[i].clone()))
        .collect();
    rational_solve(&a, &b)?
        .ok_or_else(|| Error::input(format!("cone {cone} is not simplicial")))
}

/// The fiber weight over the fixed point of `cone`; errors when the
/// piecewise linear data does not give an integral weight there.
pub fn cone_weight(fan: &Fan, pl: &PLFunction, cone: usize) -> Result<LatticeVector> {
    let sol = cone_weight_rational(fan, pl, cone)?;
    let mut coords = Vec::with_capacity(sol.len());
    for v in sol {
        if !v.is_integer() {
            return Err(Error::NonIntegralWeight { cone });
        }
        coords.push(v.to_integer());
    }
    Ok(LatticeVector(coords))
}

/// Strict convexity: on every maximal cone sigma with functional m_sigma,
/// every ray v outside sigma satisfies <m_sigma, v> > phi(v). (On the
/// projective-space fan the standard function with r = 1 is strictly convex
/// under this orientation, which pins the sign convention.)
pub fn strictly_convex(fan: &Fan, pl: &PLFunction) -> Result<bool> {
    convexity_holds(fan, pl, true)
}

/// Non-strict variant of [`strictly_convex`].
pub fn convex(fan: &Fan, pl: &PLFunction) -> Result<bool> {
    convexity_holds(fan, pl, false)
}

fn convexity_holds(fan: &Fan, pl: &PLFunction, strict: bool) -> Result<bool> {
    for cone in 0..fan.max_cones.len() {
        let m = cone_weight_rational(fan, pl, cone)?;
        for (ray_idx, ray) in fan.rays.iter().enumerate() {
            if fan.max_cones[cone].contains(&ray_idx) {
                continue;
            }
            let lhs: Rat = m
                .iter()
                .zip(&ray.0)
                .map(|(mi, vi)| mi * Rat::from_integer(vi.clone()))
                .sum();
            let rhs = Rat::from_integer(pl.ray_values[ray_idx].clone());
            let ok = if strict { lhs > rhs } else { lhs >= rhs };
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// One linear condition on the vector of ray values that strict convexity
/// imposes: `sum_i coeffs[i] * phi(ray_i) > 0`, arising from cone `cone` and
/// the outside ray `ray`.
#[derive(Clone, Debug)]
pub struct ConvexityConstraint {
    pub cone: usize,
    pub ray: usize,
    pub coeffs: Vec<Rat>,
}

/// The strict-convexity constraint attached to (cone, outside ray), as a
/// linear functional in the ray values.
pub fn convexity_constraint(fan: &Fan, cone: usize, ray: usize) -> Result<ConvexityConstraint> {
    if fan.max_cones[cone].contains(&ray) {
        return Err(Error::input("ray belongs to the cone"));
    }
    // <m_sigma, v> is linear in the cone's ray values: v = sum_j c_j ray_j
    // with c = solve(M^T c = v), and the coefficient of phi(ray_j) is c_j.
    let m = fan.cone_matrix(cone);
    let n = fan.rank;
    let a: RationalMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Rat::from_integer(m[j][i].clone()))
                .collect()
        })
        .collect();
    let v: Vec<Rat> = fan.rays[ray].to_rational();
    let c = rational_solve(&a, &v)?
        .ok_or_else(|| Error::input(format!("cone {cone} is not simplicial")))?;
    let mut coeffs = vec![Rat::zero(); fan.rays.len()];
    for (j, &ray_j) in fan.max_cones[cone].iter().enumerate() {
        coeffs[ray_j] += c[j].clone();
    }
    coeffs[ray] -= Rat::one();
    Ok(ConvexityConstraint {
        cone,
        ray,
        coeffs,
    })
}

/// A verified refutation of strict convexity: positive combinations of
/// legitimate convexity constraints summing to the zero functional, i.e. a
/// derivation of the contradictory pair `u > 0` and `-u > 0`.
#[derive(Clone, Debug)]
pub struct ConvexityObstruction {
    pub first_aggregate: Vec<Rat>,
    pub second_aggregate: Vec<Rat>,
    pub constraints: Vec<ConvexityConstraint>,
}

/// Verifies that the two families of (cone, outside-ray) pairs each
/// aggregate (with coefficient one) to opposite nonzero functionals, so that
/// no assignment of ray values can satisfy all strict convexity constraints.
pub fn convexity_obstruction(
    fan: &Fan,
    first_family: &[(usize, usize)],
    second_family: &[(usize, usize)],
) -> Result<ConvexityObstruction> {
    let nrays = fan.rays.len();
    let mut constraints = Vec::new();
    let aggregate = |family: &[(usize, usize)],
                         constraints: &mut Vec<ConvexityConstraint>|
     -> Result<Vec<Rat>> {
        let mut agg = vec![Rat::zero(); nrays];
        for &(cone, ray) in family {
            let c = convexity_constraint(fan, cone, ray)?;
            for (slot, x) in agg.iter_mut().zip(&c.coeffs) {
                *slot += x.clone();
            }
            constraints.push(c);
        }
        Ok(agg)
    };
    let first = aggregate(first_family, &mut constraints)?;
    let second = aggregate(second_family, &mut constraints)?;
    if first.iter().all(Zero::is_zero) {
        return Err(Error::InternalConsistency(
            "first aggregate vanishes; no contradiction derived".into(),
        ));
    }
    let opposite = first
        .iter()
        .zip(&second)
        .all(|(a, b)| (a.clone() + b.clone()).is_zero());
    if !opposite {
        return Err(Error::InternalConsistency(
            "aggregates are not opposite; no contradiction derived".into(),
        ));
    }
    Ok(ConvexityObstruction {
        first_aggregate: first,
        second_aggregate: second,
        constraints,
    })
}

/// One fixed point per maximal cone: the isotropy weights are the negated
/// dual basis of the cone's generators (they span -sigma*), and the fiber
/// character is the exponential of the cone weight.
pub fn fixed_point_data(fan: &Fan, pl: &PLFunction) -> Result<Scenario> {
    let mut points = Vec::with_capacity(fan.max_cones.len());
    for c in 0..fan.max_cones.len() {
        let m = fan.cone_matrix(c);
        let duals = dual_basis(&m)?;
        let weights: Vec<LatticeVector> = duals.iter().map(|u| u.neg()).collect();
        let fiber = FormalCharacter::exponential(cone_weight(fan, pl, c)?);
        let label = match &fan.labels {
            Some(ls) => {
                let names: Vec<&str> = fan.max_cones[c]
                    .iter()
                    .map(|&i| ls[i].as_str())
                    .collect();
                format!("p[{}]", names.join(","))
            }
            None => format!("p{c}"),
        };
        points.push(FixedPointDatum::new(label, weights, fiber)?);
    }
    Scenario::new(fan.rank, fan.rank, points)
}

/// For convex phi, the moment polytope as an inequality system; its lattice
/// points are exactly the weights of H^0. (Degenerate convex data is
/// allowed: the zero function on the line yields the one-point polytope.)
pub fn moment_polytope(fan: &Fan, pl: &PLFunction) -> Result<LinearSystem> {
    if !convex(fan, pl)? {
        return Err(Error::NotConvex);
    }
    h0_system(fan, pl)
}

/// { x : <x, v> >= phi(v) for every ray v } -- the intersection of the
/// shifted dual cones over all maximal cones.
pub fn h0_system(fan: &Fan, pl: &PLFunction) -> Result<LinearSystem> {
    let mut sys = LinearSystem::new(fan.rank);
    for (i, ray) in fan.rays.iter().enumerate() {
        sys.push(Constraint::ge_int(ray, pl.ray_values[i].clone()))?;
    }
    Ok(sys)
}

/// { x : <x, v> < phi(v) for every ray v } -- the top-degree counterpart,
/// with strict facets.
pub fn hn_system(fan: &Fan, pl: &PLFunction) -> Result<LinearSystem> {
    let mut sys = LinearSystem::new(fan.rank);
    for (i, ray) in fan.rays.iter().enumerate() {
        sys.push(Constraint::gt_int(&ray.neg(), -pl.ray_values[i].clone()))?;
    }
    Ok(sys)
}

/// Lattice points of the moment polytope.
pub fn moment_polytope_points(fan: &Fan, pl: &PLFunction) -> Result<Vec<LatticeVector>> {
    lattice_points(&moment_polytope(fan, pl)?)
}
