//! The formal character ring Z[L*], Morse polynomials in t over it,
//! polarized geometric-series terms, and exact per-weight coefficient
//! extraction.
//!
//! The expansion of a product of geometric series 1/(1-e^{-lambda}) has
//! infinite support, so no character here ever materializes a whole series.
//! Instead, every query asks for the coefficient of a single weight: pairing
//! exponents against an interior chamber point theta1 makes the enumeration
//! finite, hence exact with no truncation error. Finite characters (fibers,
//! cohomology, windowed indices) are ordinary sparse maps.

use crate::error::{Error, Result};
use crate::lattice::{det, LatticeVector, Int, Rat};
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A finitely supported integer-valued function on the weight lattice.
/// Zero multiplicities are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct FormalCharacter {
    rank: usize,
    terms: BTreeMap<LatticeVector, Int>,
}

impl FormalCharacter {
    pub fn zero(rank: usize) -> Self {
        FormalCharacter {
            rank,
            terms: BTreeMap::new(),
        }
    }

    /// The single exponential e^{weight}.
    pub fn exponential(weight: LatticeVector) -> Self {
        let mut ch = FormalCharacter::zero(weight.rank());
        ch.add_term(weight, Int::one());
        ch
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, weight: LatticeVector, mult: Int) {
        assert_eq!(weight.rank(), self.rank, "weight rank mismatch");
        if mult.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(weight) {
            Entry::Vacant(slot) => {
                slot.insert(mult);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += mult;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn coefficient(&self, weight: &LatticeVector) -> Int {
        self.terms.get(weight).cloned().unwrap_or_else(Int::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &LatticeVector> {
        self.terms.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LatticeVector, &Int)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|m| !m.is_negative())
    }

    /// Sum of all multiplicities; the dimension when this is the character
    /// of a representation.
    pub fn total(&self) -> Int {
        self.terms.values().sum()
    }

    pub fn add(&self, other: &FormalCharacter) -> Result<FormalCharacter> {
        if self.rank != other.rank {
            return Err(Error::Dimension {
                expected: self.rank,
                got: other.rank,
            });
        }
        let mut out = self.clone();
        for (w, m) in &other.terms {
            out.add_term(w.clone(), m.clone());
        }
        Ok(out)
    }

    /// Convolution product; both supports are finite.
    pub fn mul(&self, other: &FormalCharacter) -> Result<FormalCharacter> {
        if self.rank != other.rank {
            return Err(Error::Dimension {
                expected: self.rank,
                got: other.rank,
            });
        }
        let mut out = FormalCharacter::zero(self.rank);
        for (w1, m1) in &self.terms {
            for (w2, m2) in &other.terms {
                out.add_term(w1.add(w2), m1 * m2);
            }
        }
        Ok(out)
    }

    pub fn negated(&self) -> FormalCharacter {
        let mut out = FormalCharacter::zero(self.rank);
        for (w, m) in &self.terms {
            out.add_term(w.clone(), -m.clone());
        }
        out
    }

    /// Multiplication by e^{shift}.
    pub fn shifted(&self, shift: &LatticeVector) -> FormalCharacter {
        let mut out = FormalCharacter::zero(self.rank);
        for (w, m) in &self.terms {
            out.add_term(w.add(shift), m.clone());
        }
        out
    }

    /// Image under an integer matrix acting on weight coordinates.
    pub fn mapped(&self, matrix: &[Vec<Int>]) -> FormalCharacter {
        let mut out = FormalCharacter::zero(self.rank);
        for (w, m) in &self.terms {
            let img = LatticeVector(
                matrix
                    .iter()
                    .map(|row| row.iter().zip(&w.0).map(|(a, b)| a * b).sum())
                    .collect(),
            );
            out.add_term(img, m.clone());
        }
        out
    }
}

impl fmt::Debug for FormalCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, m)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{m}*e^{w}")?;
        }
        Ok(())
    }
}

impl fmt::Display for FormalCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A polynomial of degree n in t with coefficients in Z[L*]; the container
/// for cohomology data sum_k t^k char(H^k) and for Morse-side profiles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorsePolynomial {
    coeffs: Vec<FormalCharacter>,
}

impl MorsePolynomial {
    /// Zero polynomial of degree `dim` (dim + 1 coefficients).
    pub fn zero(rank: usize, dim: usize) -> Self {
        MorsePolynomial {
            coeffs: vec![FormalCharacter::zero(rank); dim + 1],
        }
    }

    pub fn from_coeffs(coeffs: Vec<FormalCharacter>) -> Self {
        assert!(!coeffs.is_empty());
        MorsePolynomial { coeffs }
    }

    pub fn degree_bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &FormalCharacter {
        &self.coeffs[k]
    }

    pub fn coeff_mut(&mut self, k: usize) -> &mut FormalCharacter {
        &mut self.coeffs[k]
    }

    /// Per-degree multiplicities of one weight.
    pub fn profile(&self, weight: &LatticeVector) -> Vec<Int> {
        self.coeffs.iter().map(|c| c.coefficient(weight)).collect()
    }
}

/// One summand of the fixed-point side: t^{t_degree} * numerator *
/// prod_k 1/(1 - e^{-denominators[k]}), where the numerator already carries
/// the e^{-lambda} shifts of the flipped weights and every denominator pairs
/// strictly positively with the owning chamber's representative theta1.
#[derive(Clone, Debug)]
pub struct PolarizedTerm {
    pub t_degree: usize,
    numerator: FormalCharacter,
    denominators: Vec<LatticeVector>,
    theta1: LatticeVector,
    pairings: Vec<Int>,
    /// Adjugate and determinant of the denominator-column matrix when the
    /// denominators form a basis; enables O(1) coefficient extraction.
    square: Option<(Vec<Vec<Int>>, Int)>,
}

impl PolarizedTerm {
    pub fn new(
        t_degree: usize,
        numerator: FormalCharacter,
        denominators: Vec<LatticeVector>,
        theta1: &LatticeVector,
    ) -> Result<Self> {
        let mut pairings = Vec::with_capacity(denominators.len());
        for lam in &denominators {
            let p = lam.dot(theta1);
            if !p.is_positive() {
                return Err(Error::Polarization {
                    weight: lam.to_string(),
                });
            }
            pairings.push(p);
        }
        let rank = numerator.rank();
        let square = if denominators.len() == rank && rank > 0 {
            // Columns are the denominator weights.
            let m: Vec<Vec<Int>> = (0..rank)
                .map(|i| denominators.iter().map(|d| d.0[i].clone()).collect())
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
        Ok(PolarizedTerm {
            t_degree,
            numerator,
            denominators,
            theta1: theta1.clone(),
            pairings,
            square,
        })
    }

    pub fn numerator(&self) -> &FormalCharacter {
        &self.numerator
    }

    pub fn denominators(&self) -> &[LatticeVector] {
        &self.denominators
    }

    /// Exact coefficient of e^{target} in the expanded series: for each
    /// numerator term e^{shift} this counts lattice solutions of
    /// sum m_k * lambda_k = shift - target with all m_k >= 0. The count is
    /// finite because every lambda_k pairs positively with theta1.
    pub fn coefficient(&self, target: &LatticeVector) -> Int {
        let mut acc = Int::zero();
        for (shift, mult) in self.numerator.iter() {
            let delta = shift.sub(target);
            acc += mult * self.count_solutions(&delta);
        }
        acc
    }

    fn count_solutions(&self, delta: &LatticeVector) -> Int {
        let budget = delta.dot(&self.theta1);
        if budget.is_negative() {
            return Int::zero();
        }
        if self.denominators.is_empty() {
            return if delta.is_zero() { Int::one() } else { Int::zero() };
        }
        if let Some((adj, d)) = &self.square {
            // Unique real solution m = adj * delta / det; it must be a
            // nonnegative integer vector.
            for row in adj {
                let num: Int = row.iter().zip(&delta.0).map(|(a, b)| a * b).sum();
                if (&num % d) != Int::zero() {
                    return Int::zero();
                }
                if (num * d.signum()).is_negative() {
                    return Int::zero();
                }
            }
            return Int::one();
        }
        self.count_rec(0, delta.clone(), budget)
    }

    fn count_rec(&self, k: usize, delta: LatticeVector, budget: Int) -> Int {
        if budget.is_negative() {
            return Int::zero();
        }
        if k == self.denominators.len() {
            return if delta.is_zero() { Int::one() } else { Int::zero() };
        }
        if k == self.denominators.len() - 1 {
            // delta must be a nonnegative multiple of the last denominator.
            let lam = &self.denominators[k];
            let m = &budget / &self.pairings[k];
            return if !m.is_negative() && lam.scale(&m) == delta {
                Int::one()
            } else {
                Int::zero()
            };
        }
        let lam = &self.denominators[k];
        let max = &budget / &self.pairings[k];
        let mut acc = Int::zero();
        let mut m = Int::zero();
        let mut rem = delta;
        let mut b = budget;
        while m <= max {
            acc += self.count_rec(k + 1, rem.clone(), b.clone());
            rem = rem.sub(lam);
            b -= &self.pairings[k];
            m += 1;
        }
        acc
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

/// Per-degree coefficients of e^{target} in a signed sum of polarized terms.
/// All terms must share one chamber representative.
pub fn sum_coefficients(
    terms: &[(i8, PolarizedTerm)],
    target: &LatticeVector,
    degree_bound: usize,
) -> Result<Vec<Int>> {
    let mut out = vec![Int::zero(); degree_bound + 1];
    for (sign, term) in terms {
        if let Some((_, first)) = terms.first() {
            if term.theta1 != first.theta1 {
                return Err(Error::input(
                    "polarized terms with different chamber representatives",
                ));
            }
        }
        if term.t_degree > degree_bound {
            return Err(Error::input("term degree exceeds bound"));
        }
        let c = term.coefficient(target);
        if *sign >= 0 {
            out[term.t_degree] += c;
        } else {
            out[term.t_degree] -= c;
        }
    }
    Ok(out)
}

/// Divides a per-degree integer profile by (1 + t): returns q with
/// (1+t) q = p up to the remainder, and whether the division was exact
/// (equivalently, the alternating sum of p vanishes).
pub fn divide_one_plus_t(p: &[Int]) -> (Vec<Int>, bool) {
    if p.is_empty() {
        return (Vec::new(), true);
    }
    if p.len() == 1 {
        return (Vec::new(), p[0].is_zero());
    }
    let mut q = Vec::with_capacity(p.len() - 1);
    let mut prev = Int::zero();
    for coeff in &p[..p.len() - 1] {
        let qk = coeff - &prev;
        prev = qk.clone();
        q.push(qk);
    }
    let exact = prev == p[p.len() - 1];
    (q, exact)
}

/// A point theta of the (complexified) Lie algebra for numeric evaluation
/// e^{xi} -> e^{i <xi, theta>}.
#[derive(Clone, Debug)]
pub struct EvaluationPoint {
    pub theta: Vec<f64>,
    pub theta_im: Option<Vec<f64>>,
}

impl EvaluationPoint {
    pub fn real(theta: Vec<f64>) -> Self {
        EvaluationPoint {
            theta,
            theta_im: None,
        }
    }

    fn pairing(&self, weight: &LatticeVector) -> Complex64 {
        let re: f64 = weight
            .0
            .iter()
            .zip(&self.theta)
            .map(|(w, t)| w.to_f64().expect("weight fits in f64") * t)
            .sum();
        let im: f64 = match &self.theta_im {
            None => 0.0,
            Some(ti) => weight
                .0
                .iter()
                .zip(ti)
                .map(|(w, t)| w.to_f64().expect("weight fits in f64") * t)
                .sum(),
        };
        Complex64::new(re, im)
    }

    /// e^{i <weight, theta>}
    pub fn exponential(&self, weight: &LatticeVector) -> Complex64 {
        (Complex64::i() * self.pairing(weight)).exp()
    }
}

const SINGULAR_TOLERANCE: f64 = 1e-12;

/// Numeric value of a finite character at theta.
pub fn evaluate_character(ch: &FormalCharacter, at: &EvaluationPoint) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (w, m) in ch.iter() {
        acc += at.exponential(w) * m.to_f64().expect("multiplicity fits in f64");
    }
    acc
}

/// Numeric value of numerator / prod (1 - e^{-lambda}) at theta; rejects
/// theta too close to one of the singular hyperplanes.
pub fn evaluate_rational_term(
    numerator: &FormalCharacter,
    denominators: &[LatticeVector],
    at: &EvaluationPoint,
) -> Result<Complex64> {
    let mut value = evaluate_character(numerator, at);
    for lam in denominators {
        let d = Complex64::new(1.0, 0.0) - at.exponential(&lam.neg());
        if d.norm() <= SINGULAR_TOLERANCE {
            return Err(Error::SingularEvaluation);
        }
        value /= d;
    }
    Ok(value)
}

/// Multiplicities embed into the rationals for the non-Abelian assembly;
/// this helper keeps that arithmetic exact.
pub fn rat_from_int(i: &Int) -> Rat {
    Rat::from_integer(i.clone())
}
