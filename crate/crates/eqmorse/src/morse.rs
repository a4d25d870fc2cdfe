//! Gamma-regions, support verdicts, strong/weak inequality verification,
//! the equivariant index, toric cohomology reconstruction in rank 2, and
//! obstruction detection.
//!
//! The support of every cohomology group is trapped between an intersection
//! and a union of half-open regions attached to (fixed point, chamber)
//! pairs. Scanning all chambers turns that into exact verdicts per weight
//! and degree: excluded, forced (with exact multiplicity), or unknown. A
//! weight both forced and excluded at one degree certifies that the strong
//! inequalities fail, hence that no invariant Kaehler structure exists.

use crate::chambers::{polarize, polarizing_index, Chamber, ChamberSet};
use crate::charring::{
    divide_one_plus_t, sum_coefficients, MorsePolynomial, PolarizedTerm,
};
use crate::error::{Error, Result};
use crate::fan::{h0_system, hn_system, Fan, PLFunction};
use crate::lattice::{
    det, lattice_points, Constraint, Int, LatticeVector, LinearSystem, Rat, Relation,
};
use crate::scenario::{FixedPointDatum, Scenario};
use num_traits::{Signed, Zero};

/// The shifted half-open cone of weights reachable from a fixed point's
/// fiber weights along the negated polarized directions. A generator is
/// strict exactly when its original weight was flipped by polarization.
#[derive(Clone, Debug)]
pub struct GammaRegion {
    pub apexes: Vec<LatticeVector>,
    pub generators: Vec<(LatticeVector, bool)>,
    /// (fixed point label, chamber id)
    pub owner: (String, usize),
    pub degree: usize,
    /// Adjugate and determinant of the generator-column matrix when the
    /// generators form a basis; makes membership a pure integer check.
    square: Option<(Vec<Vec<Int>>, Int)>,
}

impl GammaRegion {
    fn new(
        apexes: Vec<LatticeVector>,
        generators: Vec<(LatticeVector, bool)>,
        owner: (String, usize),
        degree: usize,
        rank: usize,
    ) -> Self {
        let square = if generators.len() == rank && rank > 0 {
            let m: Vec<Vec<Int>> = (0..rank)
                .map(|i| generators.iter().map(|(g, _)| g.0[i].clone()).collect())
                .collect();
            let d = det(&m);
            if d.is_zero() {
                None
            } else {
                Some((adjugate(&m), d))
            }
        } else {
            None
        };
        GammaRegion {
            apexes,
            generators,
            owner,
            degree,
            square,
        }
    }
}

fn adjugate(m: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let n = m.len();
    let mut adj = vec![vec![Int::zero(); n]; n];
    for r in 0..n {
        for c in 0..n {
            let minor: Vec<Vec<Int>> = (0..n)
                .filter(|&i| i != r)
                .map(|i| {
                    (0..n)
                        .filter(|&j| j != c)
                        .map(|j| m[i][j].clone())
                        .collect()
                })
                .collect();
            let cof = det(&minor);
            adj[c][r] = if (r + c) % 2 == 0 { cof } else { -cof };
        }
    }
    adj
}

/// The region Gamma^{p,C}.
pub fn gamma_region(datum: &FixedPointDatum, chamber: &Chamber) -> Result<GammaRegion> {
    let rank = datum.fiber_character.rank();
    let mut generators = Vec::with_capacity(datum.isotropy_weights.len());
    for w in &datum.isotropy_weights {
        let (pol, flipped) = polarize(w, chamber)?;
        generators.push((pol.neg(), flipped));
    }
    let apexes: Vec<LatticeVector> = datum.fiber_character.support().cloned().collect();
    let degree = generators.iter().filter(|(_, s)| *s).count();
    Ok(GammaRegion::new(
        apexes,
        generators,
        (datum.label.clone(), chamber.id),
        degree,
        rank,
    ))
}

/// Exact membership: xi = apex + sum r_k g_k with r_k >= 0 (> 0 on strict
/// generators) for some apex, solved over the reals.
pub fn gamma_contains(region: &GammaRegion, xi: &LatticeVector) -> bool {
    region.apexes.iter().any(|apex| {
        let delta = xi.sub(apex);
        if region.generators.is_empty() {
            return delta.is_zero();
        }
        if let Some((adj, d)) = &region.square {
            // Unique real coefficients r = adj * delta / det.
            return region.generators.iter().enumerate().all(|(k, (_, strict))| {
                let num: Int = adj[k].iter().zip(&delta.0).map(|(a, b)| a * b).sum();
                let signed = num * d.signum();
                if *strict {
                    signed.is_positive()
                } else {
                    !signed.is_negative()
                }
            });
        }
        // Underdetermined or degenerate generator set: exact feasibility in
        // the coefficient variables.
        let vars = region.generators.len();
        let mut sys = LinearSystem::new(vars);
        let rank = xi.rank();
        for i in 0..rank {
            let normal: Vec<Rat> = region
                .generators
                .iter()
                .map(|(g, _)| Rat::from_integer(g.0[i].clone()))
                .collect();
            sys.push(Constraint::new(
                normal,
                Rat::from_integer(delta.0[i].clone()),
                Relation::Eq,
            ))
            .expect("dimension fixed above");
        }
        for (k, (_, strict)) in region.generators.iter().enumerate() {
            let mut normal = vec![Rat::zero(); vars];
            normal[k] = Rat::from_integer(Int::from(1));
            let rel = if *strict { Relation::Gt } else { Relation::Ge };
            sys.push(Constraint::new(normal, Rat::zero(), rel))
                .expect("dimension fixed above");
        }
        sys.feasible().is_some()
    })
}

/// The signed polarized terms of the fixed-point side for one chamber
/// (all signs +1 for a torus scenario; the non-Abelian assembly passes
/// explicit signs).
pub fn polarized_terms(
    scenario: &Scenario,
    chamber: &Chamber,
) -> Result<Vec<(i8, PolarizedTerm)>> {
    let mut out = Vec::with_capacity(scenario.points.len());
    for p in &scenario.points {
        let mut denominators = Vec::with_capacity(p.isotropy_weights.len());
        let mut shift = LatticeVector::zero(scenario.rank);
        let mut flips = 0usize;
        for w in &p.isotropy_weights {
            let (pol, flipped) = polarize(w, chamber)?;
            if flipped {
                shift = shift.sub(&pol);
                flips += 1;
            }
            denominators.push(pol);
        }
        let numerator = p.fiber_character.shifted(&shift);
        let term = PolarizedTerm::new(flips, numerator, denominators, &chamber.representative)?;
        out.push((1i8, term));
    }
    Ok(out)
}

/// Per-degree coefficients of e^{xi} on the fixed-point side for one
/// chamber.
pub fn profile(
    scenario: &Scenario,
    chamber: &Chamber,
    xi: &LatticeVector,
) -> Result<Vec<Int>> {
    let terms = polarized_terms(scenario, chamber)?;
    sum_coefficients(&terms, xi, scenario.dim)
}

fn alternating_sum(profile: &[Int]) -> Int {
    let mut acc = Int::zero();
    for (k, c) in profile.iter().enumerate() {
        if k % 2 == 0 {
            acc += c;
        } else {
            acc -= c;
        }
    }
    acc
}

/// Precomputed per-chamber polarized terms, for windowed scans.
pub struct ChamberTerms {
    pub dim: usize,
    pub terms: Vec<Vec<(i8, PolarizedTerm)>>,
}

pub fn all_chamber_terms(scenario: &Scenario, chambers: &ChamberSet) -> Result<ChamberTerms> {
    let mut terms = Vec::with_capacity(chambers.chambers.len());
    for c in &chambers.chambers {
        terms.push(polarized_terms(scenario, c)?);
    }
    Ok(ChamberTerms {
        dim: scenario.dim,
        terms,
    })
}

impl ChamberTerms {
    pub fn profile(&self, chamber: usize, xi: &LatticeVector) -> Result<Vec<Int>> {
        sum_coefficients(&self.terms[chamber], xi, self.dim)
    }

    /// Alternating sum, asserted equal across every chamber.
    pub fn index_coefficient(&self, xi: &LatticeVector) -> Result<Int> {
        let mut value: Option<(Int, usize)> = None;
        for c in 0..self.terms.len() {
            let ind = alternating_sum(&self.profile(c, xi)?);
            match &value {
                None => value = Some((ind, c)),
                Some((v, first)) => {
                    if *v != ind {
                        return Err(Error::ChamberInconsistency {
                            weight: xi.to_string(),
                            first: *first,
                            second: c,
                        });
                    }
                }
            }
        }
        Ok(value.expect("at least one chamber").0)
    }
}

/// The chamber-free equivariant index coefficient of e^{xi}, computed in
/// every chamber and cross-asserted.
pub fn index_coefficient(
    scenario: &Scenario,
    chambers: &ChamberSet,
    xi: &LatticeVector,
) -> Result<Int> {
    all_chamber_terms(scenario, chambers)?.index_coefficient(xi)
}

/// Verdict for one weight at one degree after scanning all chambers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegreeVerdict {
    /// Some chamber's degree-k region union misses the weight.
    Excluded { chamber: usize },
    /// Some chamber contains the weight at degree k but not at k-1 or k+1;
    /// the multiplicity is then the exact degree-k fixed-point coefficient.
    Forced {
        multiplicity: Int,
        chamber: usize,
        point: String,
    },
    Unknown,
}

/// A weight forced into H^k by one chamber and excluded by another:
/// the strong inequalities cannot hold.
#[derive(Clone, Debug)]
pub struct ObstructionWitness {
    pub weight: LatticeVector,
    pub degree: usize,
    pub forcing_chamber: usize,
    pub excluding_chamber: usize,
    pub forcing_point: String,
    pub multiplicity: Int,
}

impl ObstructionWitness {
    /// Re-derives both membership certificates from scratch.
    pub fn verify(&self, scenario: &Scenario, chambers: &ChamberSet) -> Result<bool> {
        let forcing = &chambers.chambers[self.forcing_chamber];
        let excluding = &chambers.chambers[self.excluding_chamber];
        let mut in_forcing_k = false;
        let mut in_forcing_neighbors = false;
        let mut in_excluding_k = false;
        for p in &scenario.points {
            let n_f = polarizing_index(p, forcing)?;
            if n_f == self.degree && gamma_contains(&gamma_region(p, forcing)?, &self.weight) {
                in_forcing_k = true;
            }
            if (n_f + 1 == self.degree || n_f == self.degree + 1)
                && gamma_contains(&gamma_region(p, forcing)?, &self.weight)
            {
                in_forcing_neighbors = true;
            }
            let n_e = polarizing_index(p, excluding)?;
            if n_e == self.degree && gamma_contains(&gamma_region(p, excluding)?, &self.weight) {
                in_excluding_k = true;
            }
        }
        Ok(in_forcing_k && !in_forcing_neighbors && !in_excluding_k)
    }
}

#[derive(Clone, Debug)]
pub struct SupportVerdict {
    pub weight: LatticeVector,
    pub degrees: Vec<DegreeVerdict>,
    /// One witness per degree where forcing and exclusion collide.
    pub obstructions: Vec<ObstructionWitness>,
}

impl SupportVerdict {
    pub fn obstructed_degrees(&self) -> Vec<usize> {
        self.obstructions.iter().map(|w| w.degree).collect()
    }
}

/// Scans every chamber and applies both halves of the support bound: the
/// weight is excluded from degree k as soon as one chamber misses it there,
/// and forced into degree k (with exact multiplicity) as soon as one chamber
/// contains it at k but at neither neighbor degree. A forced/excluded
/// collision is recorded as an obstruction witness.
pub fn support_verdict(
    scenario: &Scenario,
    chambers: &ChamberSet,
    terms: &ChamberTerms,
    xi: &LatticeVector,
) -> Result<SupportVerdict> {
    let n = scenario.dim;
    let n_chambers = chambers.chambers.len();
    // membership[c][k] = Some(point label) when xi lies in Gamma^{k,C}.
    let mut membership: Vec<Vec<Option<String>>> = vec![vec![None; n + 1]; n_chambers];
    for (ci, chamber) in chambers.chambers.iter().enumerate() {
        for p in &scenario.points {
            let region = gamma_region(p, chamber)?;
            if membership[ci][region.degree].is_none() && gamma_contains(&region, xi) {
                membership[ci][region.degree] = Some(p.label.clone());
            }
        }
    }

    let mut degrees = vec![DegreeVerdict::Unknown; n + 1];
    let mut obstructions = Vec::new();
    for k in 0..=n {
        let excluded_by = (0..n_chambers).find(|&c| membership[c][k].is_none());
        let mut forced: Option<(usize, String, Int)> = None;
        for c in 0..n_chambers {
            let in_k = membership[c][k].is_some();
            let in_prev = k > 0 && membership[c][k - 1].is_some();
            let in_next = k < n && membership[c][k + 1].is_some();
            if in_k && !in_prev && !in_next {
                let mult = terms.profile(c, xi)?[k].clone();
                // Forcing needs an actual nonzero coefficient; a real-cone
                // membership with no lattice solution carries no claim.
                if !mult.is_zero() {
                    forced = Some((c, membership[c][k].clone().unwrap(), mult));
                    break;
                }
            }
        }
        match (excluded_by, forced) {
            (Some(c), None) => degrees[k] = DegreeVerdict::Excluded { chamber: c },
            (None, Some((c, point, mult))) => {
                degrees[k] = DegreeVerdict::Forced {
                    multiplicity: mult,
                    chamber: c,
                    point,
                }
            }
            (Some(ce), Some((cf, point, mult))) => {
                degrees[k] = DegreeVerdict::Forced {
                    multiplicity: mult.clone(),
                    chamber: cf,
                    point: point.clone(),
                };
                obstructions.push(ObstructionWitness {
                    weight: xi.clone(),
                    degree: k,
                    forcing_chamber: cf,
                    excluding_chamber: ce,
                    forcing_point: point,
                    multiplicity: mult,
                });
            }
            (None, None) => {}
        }
    }
    Ok(SupportVerdict {
        weight: xi.clone(),
        degrees,
        obstructions,
    })
}

#[derive(Clone, Debug)]
pub enum StrongViolation {
    NegativeQ {
        weight: LatticeVector,
        degree: usize,
        value: Int,
    },
    InexactDivision {
        weight: LatticeVector,
        remainder: Int,
    },
}

/// Outcome of checking the strong inequalities on a finite window: at every
/// window weight the per-degree difference (fixed-point side minus
/// cohomology side) must divide exactly by (1 + t) with a nonnegative
/// quotient. The quotient rows are certified on the window only.
#[derive(Clone, Debug)]
pub struct StrongReport {
    pub holds_on_window: bool,
    pub window: Vec<LatticeVector>,
    /// Nonzero quotient profiles per weight.
    pub q_rows: Vec<(LatticeVector, Vec<Int>)>,
    pub violations: Vec<StrongViolation>,
}

/// Checks the strong inequalities for one chamber against a claimed
/// cohomology, weight by weight over the window.
pub fn verify_strong(
    scenario: &Scenario,
    chamber: &Chamber,
    cohomology: &MorsePolynomial,
    window: &[LatticeVector],
) -> Result<StrongReport> {
    if cohomology.degree_bound() > scenario.dim {
        return Err(Error::input(
            "cohomology polynomial degree exceeds the complex dimension",
        ));
    }
    let terms = polarized_terms(scenario, chamber)?;
    let mut q_rows = Vec::new();
    let mut violations = Vec::new();
    for xi in window {
        let lhs = sum_coefficients(&terms, xi, scenario.dim)?;
        let mut p = lhs;
        for k in 0..=cohomology.degree_bound() {
            p[k] -= cohomology.coeff(k).coefficient(xi);
        }
        let (q, exact) = divide_one_plus_t(&p);
        if !exact {
            let rem = &p[p.len() - 1] - q.last().cloned().unwrap_or_else(Int::zero);
            violations.push(StrongViolation::InexactDivision {
                weight: xi.clone(),
                remainder: rem,
            });
        }
        for (k, qk) in q.iter().enumerate() {
            if qk.is_negative() {
                violations.push(StrongViolation::NegativeQ {
                    weight: xi.clone(),
                    degree: k,
                    value: qk.clone(),
                });
            }
        }
        if q.iter().any(|x| !x.is_zero()) {
            q_rows.push((xi.clone(), q));
        }
    }
    Ok(StrongReport {
        holds_on_window: violations.is_empty(),
        window: window.to_vec(),
        q_rows,
        violations,
    })
}

#[derive(Clone, Debug)]
pub struct WeakViolation {
    pub weight: LatticeVector,
    pub degree: usize,
    pub bound: Int,
    pub claimed: Int,
}

#[derive(Clone, Debug)]
pub struct WeakReport {
    pub holds_on_window: bool,
    pub violations: Vec<WeakViolation>,
}

/// Degreewise bounds: char(H^k) <= the degree-k fixed-point coefficient,
/// per weight over the window.
pub fn weak_check(
    scenario: &Scenario,
    chamber: &Chamber,
    cohomology: &MorsePolynomial,
    window: &[LatticeVector],
) -> Result<WeakReport> {
    if cohomology.degree_bound() > scenario.dim {
        return Err(Error::input(
            "cohomology polynomial degree exceeds the complex dimension",
        ));
    }
    let terms = polarized_terms(scenario, chamber)?;
    let mut violations = Vec::new();
    for xi in window {
        let lhs = sum_coefficients(&terms, xi, scenario.dim)?;
        for k in 0..=cohomology.degree_bound() {
            let claimed = cohomology.coeff(k).coefficient(xi);
            if claimed > lhs[k] {
                violations.push(WeakViolation {
                    weight: xi.clone(),
                    degree: k,
                    bound: lhs[k].clone(),
                    claimed,
                });
            }
        }
    }
    Ok(WeakReport {
        holds_on_window: violations.is_empty(),
        violations,
    })
}

/// Axis-aligned box around a set of weights, grown by `margin`, enumerated
/// in lexicographic order.
pub fn window_box(points: &[LatticeVector], margin: i64) -> Vec<LatticeVector> {
    if points.is_empty() {
        return Vec::new();
    }
    let rank = points[0].rank();
    let mut lo = points[0].0.clone();
    let mut hi = points[0].0.clone();
    for p in points {
        for i in 0..rank {
            if p.0[i] < lo[i] {
                lo[i] = p.0[i].clone();
            }
            if p.0[i] > hi[i] {
                hi[i] = p.0[i].clone();
            }
        }
    }
    let m = Int::from(margin);
    let lo: Vec<Int> = lo.into_iter().map(|x| x - &m).collect();
    let hi: Vec<Int> = hi.into_iter().map(|x| x + &m).collect();
    let mut out = Vec::new();
    let mut cur = vec![Int::zero(); rank];
    box_rec(&lo, &hi, 0, &mut cur, &mut out);
    out
}

fn box_rec(
    lo: &[Int],
    hi: &[Int],
    coord: usize,
    cur: &mut Vec<Int>,
    out: &mut Vec<LatticeVector>,
) {
    if coord == lo.len() {
        out.push(LatticeVector(cur.clone()));
        return;
    }
    let mut v = lo[coord].clone();
    while v <= hi[coord] {
        cur[coord] = v.clone();
        box_rec(lo, hi, coord + 1, cur, out);
        v += 1;
    }
}

/// Candidates ordered by sup-norm, ties broken lexicographically: the
/// "smallest" witness is found first, deterministically.
pub fn sort_candidates(mut candidates: Vec<LatticeVector>) -> Vec<LatticeVector> {
    candidates.sort_by(|a, b| {
        let na = a.0.iter().map(|x| x.abs()).max().unwrap_or_else(Int::zero);
        let nb = b.0.iter().map(|x| x.abs()).max().unwrap_or_else(Int::zero);
        na.cmp(&nb).then_with(|| a.cmp(b))
    });
    candidates
}

/// Scans candidate weights (default: the apex bounding box grown by 3) for
/// a forced/excluded collision; returns the first witness in sup-norm-then-
/// lex order.
pub fn detect_obstruction(
    scenario: &Scenario,
    chambers: &ChamberSet,
    candidates: Option<Vec<LatticeVector>>,
) -> Result<Option<ObstructionWitness>> {
    let candidates =
        candidates.unwrap_or_else(|| window_box(&scenario.apexes(), 3));
    let candidates = sort_candidates(candidates);
    let terms = all_chamber_terms(scenario, chambers)?;
    for xi in &candidates {
        let verdict = support_verdict(scenario, chambers, &terms, xi)?;
        if let Some(w) = verdict.obstructions.into_iter().next() {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Numeric value of the rational fixed-point sum (the index as a rational
/// character function) at a nonsingular evaluation point.
pub fn evaluate_index_rational(
    scenario: &Scenario,
    at: &crate::charring::EvaluationPoint,
) -> Result<num_complex::Complex64> {
    let mut acc = num_complex::Complex64::new(0.0, 0.0);
    for p in &scenario.points {
        acc += crate::charring::evaluate_rational_term(
            &p.fiber_character,
            &p.isotropy_weights,
            at,
        )?;
    }
    Ok(acc)
}

/// The finite index character on a window, by per-weight extraction.
pub fn index_character(
    terms: &ChamberTerms,
    window: &[LatticeVector],
) -> Result<crate::charring::FormalCharacter>
{
    let rank = window.first().map(|w| w.rank()).unwrap_or(0);
    let mut ch = crate::charring::FormalCharacter::zero(rank);
    for xi in window {
        ch.add_term(xi.clone(), terms.index_coefficient(xi)?);
    }
    Ok(ch)
}

/// Supports of H^0 and H^n of a toric line bundle, as lattice points of the
/// closed and open intersections of shifted dual cones. Each listed weight
/// has multiplicity one.
pub fn toric_h0_hn(
    fan: &Fan,
    pl: &PLFunction,
) -> Result<(Vec<LatticeVector>, Vec<LatticeVector>)> {
    let h0 = lattice_points(&h0_system(fan, pl)?)?;
    let hn = lattice_points(&hn_system(fan, pl)?)?;
    Ok((h0, hn))
}

/// Full cohomology of a line bundle on a toric surface: the supports of
/// H^0, H^1, H^2 partition the index support, so every weight with nonzero
/// index coefficient is assigned to its unique non-excluded degree.
pub fn toric_cohomology_2d(fan: &Fan, pl: &PLFunction) -> Result<MorsePolynomial> {
    if fan.rank != 2 {
        return Err(Error::input("toric cohomology reconstruction needs rank 2"));
    }
    let scenario = crate::fan::fixed_point_data(fan, pl)?;
    let chambers = crate::chambers::enumerate_chambers(&scenario)?;
    let terms = all_chamber_terms(&scenario, &chambers)?;
    let window = window_box(&scenario.apexes(), 1);
    let mut out = MorsePolynomial::zero(2, 2);
    for xi in &window {
        let ind = terms.index_coefficient(xi)?;
        if ind.is_zero() {
            continue;
        }
        let verdict = support_verdict(&scenario, &chambers, &terms, xi)?;
        let open: Vec<usize> = (0..=2)
            .filter(|&k| !matches!(verdict.degrees[k], DegreeVerdict::Excluded { .. }))
            .collect();
        if open.len() != 1 {
            return Err(Error::AssignmentAmbiguous {
                weight: xi.to_string(),
                degrees: open,
            });
        }
        let k = open[0];
        let signed_ok = if k % 2 == 0 {
            ind.is_positive()
        } else {
            ind.is_negative()
        };
        if !signed_ok {
            return Err(Error::InternalConsistency(format!(
                "index sign at {xi} disagrees with degree {k}"
            )));
        }
        out.coeff_mut(k).add_term(xi.clone(), ind.abs());
    }
    Ok(out)
}
