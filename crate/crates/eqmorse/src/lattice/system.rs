//! Mixed strict/non-strict linear systems, exact Fourier-Motzkin
//! feasibility, and lattice-point enumeration of bounded regions.
//!
//! Strict inequalities are first-class: membership in half-open regions is
//! decided with no epsilon anywhere. Elimination works on integer normal
//! vectors with rational bounds, normalizing and dominance-reducing at every
//! stage to keep the constraint count flat.

use super::{Int, LatticeVector, Rat};
use crate::error::{Error, Result};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Relation {
    /// `<normal, x> >= offset`
    Ge,
    /// `<normal, x> > offset`
    Gt,
    /// `<normal, x> = offset`
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub normal: Vec<Rat>,
    pub offset: Rat,
    pub relation: Relation,
}

impl Constraint {
    pub fn new(normal: Vec<Rat>, offset: Rat, relation: Relation) -> Self {
        Constraint {
            normal,
            offset,
            relation,
        }
    }

    pub fn ge_int(normal: &LatticeVector, offset: Int) -> Self {
        Constraint::new(normal.to_rational(), Rat::from_integer(offset), Relation::Ge)
    }

    pub fn gt_int(normal: &LatticeVector, offset: Int) -> Self {
        Constraint::new(normal.to_rational(), Rat::from_integer(offset), Relation::Gt)
    }

    pub fn eq_int(normal: &LatticeVector, offset: Int) -> Self {
        Constraint::new(normal.to_rational(), Rat::from_integer(offset), Relation::Eq)
    }

    fn holds(&self, point: &[Rat]) -> bool {
        let lhs: Rat = self
            .normal
            .iter()
            .zip(point)
            .map(|(a, b)| a * b)
            .sum();
        match self.relation {
            Relation::Ge => lhs >= self.offset,
            Relation::Gt => lhs > self.offset,
            Relation::Eq => lhs == self.offset,
        }
    }
}

/// A finite conjunction of linear constraints in a fixed dimension.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub dim: usize,
    pub constraints: Vec<Constraint>,
}

impl LinearSystem {
    pub fn new(dim: usize) -> Self {
        LinearSystem {
            dim,
            constraints: Vec::new(),
        }
    }

    pub fn push(&mut self, c: Constraint) -> Result<()> {
        if c.normal.len() != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                got: c.normal.len(),
            });
        }
        self.constraints.push(c);
        Ok(())
    }

    pub fn satisfied_by(&self, point: &[Rat]) -> bool {
        self.constraints.iter().all(|c| c.holds(point))
    }

    pub fn satisfied_by_lattice(&self, point: &LatticeVector) -> bool {
        self.satisfied_by(&point.to_rational())
    }

    /// Exact feasibility via Fourier-Motzkin with strictness tracking.
    /// Returns a rational witness or `None` when the system is infeasible.
    /// An empty system is witnessed by the zero vector.
    pub fn feasible(&self) -> Option<Vec<Rat>> {
        feasible(self)
    }
}

/// One inequality `<coeffs, x> >= bound` (or `>` when strict), with integer
/// primitive coefficient vector. Equalities are split before reaching here.
#[derive(Clone, Debug)]
struct Ineq {
    coeffs: Vec<Int>,
    bound: Rat,
    strict: bool,
}

impl Ineq {
    fn constant_contradiction(&self) -> bool {
        debug_assert!(self.coeffs.iter().all(Zero::is_zero));
        if self.strict {
            !self.bound.is_negative()
        } else {
            self.bound.is_positive()
        }
    }
}

fn normalize(mut coeffs: Vec<Int>, mut bound: Rat, strict: bool) -> Ineq {
    let mut g = Int::zero();
    for c in &coeffs {
        g = g.gcd(c);
    }
    if !g.is_zero() && !g.is_one() {
        for c in coeffs.iter_mut() {
            *c = &*c / &g;
        }
        bound /= Rat::from_integer(g);
    }
    Ineq {
        coeffs,
        bound,
        strict,
    }
}

fn to_ineqs(system: &LinearSystem) -> Vec<Ineq> {
    let mut out = Vec::new();
    for c in &system.constraints {
        // Clear denominators so coefficients are integers.
        let mut lcm = Int::one();
        for r in &c.normal {
            lcm = lcm.lcm(r.denom());
        }
        let coeffs: Vec<Int> = c
            .normal
            .iter()
            .map(|r| r.numer() * (&lcm / r.denom()))
            .collect();
        let bound = &c.offset * Rat::from_integer(lcm);
        match c.relation {
            Relation::Ge => out.push(normalize(coeffs, bound, false)),
            Relation::Gt => out.push(normalize(coeffs, bound, true)),
            Relation::Eq => {
                out.push(normalize(coeffs.clone(), bound.clone(), false));
                out.push(normalize(
                    coeffs.iter().map(|x| -x).collect(),
                    -bound,
                    false,
                ));
            }
        }
    }
    out
}

/// Keeps only the strongest bound per coefficient direction. Constant rows
/// are kept (they carry infeasibility).
fn reduce(ineqs: Vec<Ineq>) -> Vec<Ineq> {
    let mut best: BTreeMap<Vec<Int>, (Rat, bool)> = BTreeMap::new();
    let mut constants = Vec::new();
    for iq in ineqs {
        if iq.coeffs.iter().all(Zero::is_zero) {
            if iq.constant_contradiction() {
                constants.push(iq);
            }
            continue;
        }
        match best.get_mut(&iq.coeffs) {
            None => {
                best.insert(iq.coeffs, (iq.bound, iq.strict));
            }
            Some(slot) => {
                let stronger = iq.bound > slot.0 || (iq.bound == slot.0 && iq.strict && !slot.1);
                if stronger {
                    *slot = (iq.bound, iq.strict);
                }
            }
        }
    }
    let mut out: Vec<Ineq> = best
        .into_iter()
        .map(|(coeffs, (bound, strict))| Ineq {
            coeffs,
            bound,
            strict,
        })
        .collect();
    out.extend(constants);
    out
}

/// Eliminates variable `var`, combining every (lower, upper) pair.
fn eliminate(ineqs: &[Ineq], var: usize) -> Vec<Ineq> {
    let mut lowers = Vec::new();
    let mut uppers = Vec::new();
    let mut rest = Vec::new();
    for iq in ineqs {
        match iq.coeffs[var].sign() {
            num_bigint::Sign::Plus => lowers.push(iq),
            num_bigint::Sign::Minus => uppers.push(iq),
            num_bigint::Sign::NoSign => rest.push(iq.clone()),
        }
    }
    for lo in &lowers {
        for up in &uppers {
            let a = lo.coeffs[var].clone(); // > 0
            let b = -up.coeffs[var].clone(); // > 0
            let coeffs: Vec<Int> = lo
                .coeffs
                .iter()
                .zip(&up.coeffs)
                .map(|(l, u)| l * &b + u * &a)
                .collect();
            let bound = &lo.bound * Rat::from_integer(b) + &up.bound * Rat::from_integer(a);
            rest.push(normalize(coeffs, bound, lo.strict || up.strict));
        }
    }
    reduce(rest)
}

fn has_contradiction(ineqs: &[Ineq]) -> bool {
    ineqs
        .iter()
        .filter(|iq| iq.coeffs.iter().all(Zero::is_zero))
        .any(Ineq::constant_contradiction)
}

/// Bounds on variable `var` implied by constraints touching only variables
/// `0..=var`, after the chosen values of variables `0..var` are substituted.
fn bounds_after_substitution(
    ineqs: &[Ineq],
    var: usize,
    chosen: &[Rat],
) -> Option<(Option<(Rat, bool)>, Option<(Rat, bool)>)> {
    let mut lo: Option<(Rat, bool)> = None;
    let mut hi: Option<(Rat, bool)> = None;
    for iq in ineqs {
        if iq.coeffs[var].is_zero() {
            continue;
        }
        let mut rest = iq.bound.clone();
        for (i, val) in chosen.iter().enumerate() {
            rest -= Rat::from_integer(iq.coeffs[i].clone()) * val;
        }
        let c = Rat::from_integer(iq.coeffs[var].clone());
        let value = rest / c;
        if iq.coeffs[var].is_positive() {
            let better = match &lo {
                None => true,
                Some((cur, cur_strict)) => {
                    value > *cur || (value == *cur && iq.strict && !cur_strict)
                }
            };
            if better {
                lo = Some((value, iq.strict));
            }
        } else {
            let better = match &hi {
                None => true,
                Some((cur, cur_strict)) => {
                    value < *cur || (value == *cur && iq.strict && !cur_strict)
                }
            };
            if better {
                hi = Some((value, iq.strict));
            }
        }
    }
    Some((lo, hi))
}

fn pick_value(lo: &Option<(Rat, bool)>, hi: &Option<(Rat, bool)>) -> Option<Rat> {
    match (lo, hi) {
        (None, None) => Some(Rat::zero()),
        (Some((l, _)), None) => Some(l + Rat::one()),
        (None, Some((u, _))) => Some(u - Rat::one()),
        (Some((l, ls)), Some((u, us))) => {
            if l < u {
                Some((l + u) / Rat::from_integer(Int::from(2)))
            } else if l == u && !ls && !us {
                Some(l.clone())
            } else {
                None
            }
        }
    }
}

fn feasible(system: &LinearSystem) -> Option<Vec<Rat>> {
    let dim = system.dim;
    if dim == 0 {
        let ineqs = to_ineqs(system);
        return if has_contradiction(&ineqs) {
            None
        } else {
            Some(Vec::new())
        };
    }
    // stages[k] involves only variables 0..k; stages[dim] is the full system.
    let mut stages: Vec<Vec<Ineq>> = vec![Vec::new(); dim + 1];
    stages[dim] = reduce(to_ineqs(system));
    for var in (1..dim).rev() {
        stages[var] = eliminate(&stages[var + 1], var);
        if has_contradiction(&stages[var]) {
            return None;
        }
    }
    let ground = eliminate(&stages[1], 0);
    if has_contradiction(&ground) || has_contradiction(&stages[dim]) {
        return None;
    }

    let mut witness: Vec<Rat> = Vec::with_capacity(dim);
    for var in 0..dim {
        let stage = &stages[(var + 1).min(dim)];
        let (lo, hi) = bounds_after_substitution(stage, var, &witness)?;
        witness.push(pick_value(&lo, &hi)?);
    }
    debug_assert!(system.satisfied_by(&witness));
    Some(witness)
}

/// Exact rational bounds of the region's shadow on coordinate `coord`.
/// `None` on the respective side means unbounded.
fn coordinate_bounds(
    system: &LinearSystem,
    coord: usize,
) -> (Option<(Rat, bool)>, Option<(Rat, bool)>) {
    let mut ineqs = reduce(to_ineqs(system));
    for var in 0..system.dim {
        if var != coord {
            ineqs = eliminate(&ineqs, var);
        }
    }
    let mut lo: Option<(Rat, bool)> = None;
    let mut hi: Option<(Rat, bool)> = None;
    for iq in &ineqs {
        if iq.coeffs[coord].is_zero() {
            continue;
        }
        let c = Rat::from_integer(iq.coeffs[coord].clone());
        let value = &iq.bound / c;
        if iq.coeffs[coord].is_positive() {
            if lo.as_ref().map_or(true, |(cur, _)| value > *cur) {
                lo = Some((value, iq.strict));
            }
        } else if hi.as_ref().map_or(true, |(cur, _)| value < *cur) {
            hi = Some((value, iq.strict));
        }
    }
    (lo, hi)
}

fn ceil_of(bound: &Rat, strict: bool) -> Int {
    if bound.is_integer() {
        if strict {
            bound.to_integer() + 1
        } else {
            bound.to_integer()
        }
    } else {
        bound.ceil().to_integer()
    }
}

fn floor_of(bound: &Rat, strict: bool) -> Int {
    if bound.is_integer() {
        if strict {
            bound.to_integer() - 1
        } else {
            bound.to_integer()
        }
    } else {
        bound.floor().to_integer()
    }
}

/// Enumerates exactly the integer points satisfying the system, in
/// lexicographic order. The region must be bounded (checked coordinatewise
/// by exact projection); an infeasible system yields the empty list.
pub fn lattice_points(system: &LinearSystem) -> Result<Vec<LatticeVector>> {
    if system.feasible().is_none() {
        return Ok(Vec::new());
    }
    let mut ranges = Vec::with_capacity(system.dim);
    for coord in 0..system.dim {
        let (lo, hi) = coordinate_bounds(system, coord);
        let lo = lo.ok_or(Error::Unbounded { coordinate: coord })?;
        let hi = hi.ok_or(Error::Unbounded { coordinate: coord })?;
        ranges.push((ceil_of(&lo.0, lo.1), floor_of(&hi.0, hi.1)));
    }
    let mut out = Vec::new();
    let mut point = vec![Int::zero(); system.dim];
    enumerate_box(system, &ranges, 0, &mut point, &mut out);
    Ok(out)
}

fn enumerate_box(
    system: &LinearSystem,
    ranges: &[(Int, Int)],
    coord: usize,
    point: &mut Vec<Int>,
    out: &mut Vec<LatticeVector>,
) {
    if coord == ranges.len() {
        let candidate = LatticeVector(point.clone());
        if system.satisfied_by_lattice(&candidate) {
            out.push(candidate);
        }
        return;
    }
    let (lo, hi) = &ranges[coord];
    let mut v = lo.clone();
    while v <= *hi {
        point[coord] = v.clone();
        enumerate_box(system, ranges, coord + 1, point, out);
        v += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::lv;

    fn gt(normal: &[i64], offset: i64) -> Constraint {
        Constraint::gt_int(&lv(normal), Int::from(offset))
    }

    fn ge(normal: &[i64], offset: i64) -> Constraint {
        Constraint::ge_int(&lv(normal), Int::from(offset))
    }

    fn system(dim: usize, cs: Vec<Constraint>) -> LinearSystem {
        let mut s = LinearSystem::new(dim);
        for c in cs {
            s.push(c).unwrap();
        }
        s
    }

    #[test]
    fn open_interval_has_witness() {
        // { x > 0, x < 1 }
        let s = system(1, vec![gt(&[1], 0), gt(&[-1], -1)]);
        let w = s.feasible().expect("open interval is nonempty");
        assert!(s.satisfied_by(&w));
    }

    #[test]
    fn contradictory_strict_pair_is_infeasible() {
        // { x > 0, -x > 0 }
        let s = system(1, vec![gt(&[1], 0), gt(&[-1], 0)]);
        assert!(s.feasible().is_none());
    }

    #[test]
    fn boundary_point_needs_nonstrict() {
        // { x >= 1, x <= 1 } feasible at exactly 1; strict variant empty.
        let s = system(1, vec![ge(&[1], 1), ge(&[-1], -1)]);
        let w = s.feasible().unwrap();
        assert_eq!(w[0], Rat::from_integer(Int::one()));
        let s = system(1, vec![gt(&[1], 1), ge(&[-1], -1)]);
        assert!(s.feasible().is_none());
    }

    #[test]
    fn empty_system_gives_zero_witness() {
        let s = LinearSystem::new(3);
        assert_eq!(s.feasible().unwrap(), vec![Rat::zero(); 3]);
    }

    #[test]
    fn equalities_are_honored() {
        // { x + y = 2, x - y > 0, y >= 0 }
        let s = system(
            2,
            vec![
                Constraint::eq_int(&lv(&[1, 1]), Int::from(2)),
                gt(&[1, -1], 0),
                ge(&[0, 1], 0),
            ],
        );
        let w = s.feasible().unwrap();
        assert!(s.satisfied_by(&w));
    }

    #[test]
    fn simplex_lattice_points() {
        // { x1, x2 >= 0, x1 + x2 <= 2 }: six points.
        let s = system(2, vec![ge(&[1, 0], 0), ge(&[0, 1], 0), ge(&[-1, -1], -2)]);
        let pts = lattice_points(&s).unwrap();
        assert_eq!(pts.len(), 6);
        assert_eq!(
            pts,
            vec![
                lv(&[0, 0]),
                lv(&[0, 1]),
                lv(&[0, 2]),
                lv(&[1, 0]),
                lv(&[1, 1]),
                lv(&[2, 0]),
            ]
        );
    }

    #[test]
    fn degenerate_simplex_is_a_point() {
        let s = system(2, vec![ge(&[1, 0], 0), ge(&[0, 1], 0), ge(&[-1, -1], 0)]);
        assert_eq!(lattice_points(&s).unwrap(), vec![lv(&[0, 0])]);
    }

    #[test]
    fn unbounded_region_is_reported() {
        let s = system(2, vec![ge(&[1, 0], 0), ge(&[0, 1], 0)]);
        assert!(matches!(
            lattice_points(&s),
            Err(Error::Unbounded { .. })
        ));
    }

    #[test]
    fn infeasible_region_has_no_points() {
        // { x1, x2 >= 0, x1 + x2 <= -1 }
        let s = system(2, vec![ge(&[1, 0], 0), ge(&[0, 1], 0), ge(&[-1, -1], 1)]);
        assert_eq!(lattice_points(&s).unwrap(), Vec::<LatticeVector>::new());
    }

    #[test]
    fn strict_facets_drop_boundary_points() {
        // { x1 > 0, x2 > 0, x1 + x2 <= 2 }: only (1,1) remains.
        let s = system(2, vec![gt(&[1, 0], 0), gt(&[0, 1], 0), ge(&[-1, -1], -2)]);
        assert_eq!(lattice_points(&s).unwrap(), vec![lv(&[1, 1])]);
    }

    #[test]
    fn lattice_points_invariant_under_constraint_permutation() {
        let cons = vec![ge(&[1, 0], 0), ge(&[0, 1], -1), ge(&[-1, -2], -4), gt(&[1, 1], 0)];
        let base = lattice_points(&system(2, cons.clone())).unwrap();
        // All 24 permutations of four constraints.
        let idx = [0usize, 1, 2, 3];
        let mut perms = Vec::new();
        permute(&idx, &mut vec![], &mut perms);
        for p in perms {
            let shuffled: Vec<Constraint> = p.iter().map(|&i| cons[i].clone()).collect();
            assert_eq!(lattice_points(&system(2, shuffled)).unwrap(), base);
        }
    }

    fn permute(rest: &[usize], acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(acc.clone());
            return;
        }
        for (i, &x) in rest.iter().enumerate() {
            let mut next: Vec<usize> = rest.to_vec();
            next.remove(i);
            acc.push(x);
            permute(&next, acc, out);
            acc.pop();
        }
    }
}
