//! Action chambers of the isotropy-weight hyperplane arrangement:
//! enumeration by sign vectors, polarization of weights, polarizing indices.

use crate::error::{Error, Result};
use crate::lattice::{
    canonical_up_to_sign, primitive_from_rational, Constraint, Int, LatticeVector, LinearSystem,
};
use crate::scenario::{FixedPointDatum, Scenario};
use num_traits::{Signed, Zero};

/// A connected component of the complement of the arrangement, described by
/// a sign per hyperplane plus a strictly interior integral representative.
#[derive(Clone, Debug)]
pub struct Chamber {
    pub id: usize,
    pub signs: Vec<i8>,
    pub representative: LatticeVector,
}

/// The arrangement together with its full chamber list. Chambers come in
/// +/- pairs and are ordered deterministically by sign vector (+ before -).
#[derive(Clone, Debug)]
pub struct ChamberSet {
    pub rank: usize,
    pub hyperplanes: Vec<LatticeVector>,
    pub chambers: Vec<Chamber>,
}

impl ChamberSet {
    /// The chamber whose open cell contains `point`; a point on a wall is
    /// rejected (mirrors picking an integral interior theta1).
    pub fn resolve(&self, point: &LatticeVector) -> Result<&Chamber> {
        let mut signs = Vec::with_capacity(self.hyperplanes.len());
        for h in &self.hyperplanes {
            let p = h.dot(point);
            if p.is_zero() {
                return Err(Error::input(format!(
                    "{point} lies on the wall {h}"
                )));
            }
            signs.push(if p.is_positive() { 1 } else { -1 });
        }
        self.chambers
            .iter()
            .find(|c| c.signs == signs)
            .ok_or_else(|| Error::InternalConsistency("chamber sign vector not enumerated".into()))
    }

    pub fn opposite(&self, chamber: &Chamber) -> &Chamber {
        let flipped: Vec<i8> = chamber.signs.iter().map(|s| -s).collect();
        self.chambers
            .iter()
            .find(|c| c.signs == flipped)
            .expect("chambers come in opposite pairs")
    }
}

/// Deduplicated hyperplane normals (up to sign) of all isotropy weights.
pub fn arrangement_normals(scenario: &Scenario) -> Result<Vec<LatticeVector>> {
    let mut normals: Vec<LatticeVector> = Vec::new();
    for p in &scenario.points {
        for w in &p.isotropy_weights {
            if w.is_zero() {
                return Err(Error::input(format!(
                    "zero isotropy weight at {}",
                    p.label
                )));
            }
            let n = canonical_up_to_sign(w)?;
            if !normals.contains(&n) {
                normals.push(n);
            }
        }
    }
    normals.sort();
    Ok(normals)
}

/// Enumerates every chamber: depth-first over sign vectors with feasibility
/// pruning, then a rational interior witness cleared to a primitive integral
/// representative and re-verified.
pub fn enumerate_chambers(scenario: &Scenario) -> Result<ChamberSet> {
    let normals = arrangement_normals(scenario)?;
    let rank = scenario.rank;
    let mut chambers = Vec::new();
    let mut signs = Vec::with_capacity(normals.len());
    dfs(rank, &normals, &mut signs, &mut chambers)?;
    Ok(ChamberSet {
        rank,
        hyperplanes: normals,
        chambers,
    })
}

fn dfs(
    rank: usize,
    normals: &[LatticeVector],
    signs: &mut Vec<i8>,
    out: &mut Vec<Chamber>,
) -> Result<()> {
    let system = sign_system(rank, normals, signs);
    let Some(witness) = system.feasible() else {
        return Ok(());
    };
    if signs.len() == normals.len() {
        let representative = primitive_from_rational(&witness)?;
        // Clearing denominators scales positively, so the strict signs are
        // preserved; verify anyway.
        for (h, s) in normals.iter().zip(signs.iter()) {
            let p = h.dot(&representative);
            if p.is_zero() || (p.is_positive() != (*s > 0)) {
                return Err(Error::InternalConsistency(format!(
                    "representative {representative} is not interior"
                )));
            }
        }
        out.push(Chamber {
            id: out.len(),
            signs: signs.clone(),
            representative,
        });
        return Ok(());
    }
    for s in [1i8, -1i8] {
        signs.push(s);
        dfs(rank, normals, signs, out)?;
        signs.pop();
    }
    Ok(())
}

fn sign_system(rank: usize, normals: &[LatticeVector], signs: &[i8]) -> LinearSystem {
    let mut sys = LinearSystem::new(rank);
    for (h, &s) in normals.iter().zip(signs) {
        let n = if s > 0 { h.clone() } else { h.neg() };
        sys.push(Constraint::gt_int(&n, Int::from(0)))
            .expect("normals share the scenario rank");
    }
    sys
}

/// lambda itself when it pairs positively with the chamber representative,
/// -lambda (flagged) when negatively; a zero pairing is a caller bug (the
/// weight's hyperplane was not in the arrangement).
pub fn polarize(
    weight: &LatticeVector,
    chamber: &Chamber,
) -> Result<(LatticeVector, bool)> {
    let p = weight.dot(&chamber.representative);
    if p.is_positive() {
        Ok((weight.clone(), false))
    } else if p.is_negative() {
        Ok((weight.neg(), true))
    } else {
        Err(Error::Polarization {
            weight: weight.to_string(),
        })
    }
}

/// The number of isotropy weights flipped by polarization; plays the role
/// of the Morse index of the fixed point.
pub fn polarizing_index(datum: &FixedPointDatum, chamber: &Chamber) -> Result<usize> {
    let mut count = 0;
    for w in &datum.isotropy_weights {
        if polarize(w, chamber)?.1 {
            count += 1;
        }
    }
    Ok(count)
}
