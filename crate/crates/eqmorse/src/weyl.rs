//! Root systems, Weyl groups, relative lengths, flag-manifold fixed-point
//! scenarios, and the non-Abelian rearrangement of the fixed-point sum.
//!
//! Coordinates: weights live in the fundamental-weight basis, so a weight is
//! dominant exactly when its coordinates are nonnegative and rho = (1,..,1).
//! Simple roots are the columns of the Cartan matrix in this basis. The
//! invariant inner product is stored explicitly as the rational Gram matrix
//! of the fundamental weights, normalized so short roots have length^2 = 2.
//! Lie-algebra vectors (chamber representatives) pair with weights by the
//! plain dot product.

use crate::chambers::{enumerate_chambers, polarize, Chamber, ChamberSet};
use crate::charring::{FormalCharacter, MorsePolynomial, PolarizedTerm};
use crate::error::{Error, Result};
use crate::lattice::{
    det, rational_solve, Constraint, Int, LatticeVector, LinearSystem, Rat,
};
use crate::morse::{self, window_box, StrongReport};
use crate::scenario::{FixedPointDatum, Scenario};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootSystemKind {
    A1,
    A1xA1,
    A2,
    B2,
    G2,
    A3,
}

impl RootSystemKind {
    pub fn from_name(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "a1" => Ok(RootSystemKind::A1),
            "a1xa1" | "a1a1" => Ok(RootSystemKind::A1xA1),
            "a2" => Ok(RootSystemKind::A2),
            "b2" => Ok(RootSystemKind::B2),
            "g2" => Ok(RootSystemKind::G2),
            "a3" => Ok(RootSystemKind::A3),
            other => Err(Error::input(format!("unsupported root system {other}"))),
        }
    }

    fn cartan(&self) -> Vec<Vec<i64>> {
        match self {
            RootSystemKind::A1 => vec![vec![2]],
            RootSystemKind::A1xA1 => vec![vec![2, 0], vec![0, 2]],
            RootSystemKind::A2 => vec![vec![2, -1], vec![-1, 2]],
            RootSystemKind::B2 => vec![vec![2, -1], vec![-2, 2]],
            RootSystemKind::G2 => vec![vec![2, -1], vec![-3, 2]],
            RootSystemKind::A3 => vec![
                vec![2, -1, 0],
                vec![-1, 2, -1],
                vec![0, -1, 2],
            ],
        }
    }

    /// Half the squared length of each simple root (short roots normalized
    /// to length^2 = 2).
    fn root_norms(&self) -> Vec<i64> {
        match self {
            RootSystemKind::B2 => vec![2, 1],
            RootSystemKind::G2 => vec![3, 1],
            _ => vec![1; self.cartan().len()],
        }
    }

    pub fn order_of_weyl_group(&self) -> usize {
        match self {
            RootSystemKind::A1 => 2,
            RootSystemKind::A1xA1 => 4,
            RootSystemKind::A2 => 6,
            RootSystemKind::B2 => 8,
            RootSystemKind::G2 => 12,
            RootSystemKind::A3 => 24,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub kind: RootSystemKind,
    pub rank: usize,
    /// cartan[i][j] = <alpha_j, alpha_i^vee>; column j holds the weight
    /// coordinates of alpha_j.
    pub cartan: Vec<Vec<Int>>,
    pub simple_roots: Vec<LatticeVector>,
    pub positive_roots: Vec<LatticeVector>,
    pub rho: LatticeVector,
    /// Gram matrix of the fundamental weights.
    pub form: Vec<Vec<Rat>>,
}

impl RootSystem {
    pub fn new(kind: RootSystemKind) -> Result<Self> {
        let cartan_i64 = kind.cartan();
        let rank = cartan_i64.len();
        let cartan: Vec<Vec<Int>> = cartan_i64
            .iter()
            .map(|row| row.iter().map(|&x| Int::from(x)).collect())
            .collect();
        let simple_roots: Vec<LatticeVector> = (0..rank)
            .map(|j| LatticeVector((0..rank).map(|i| cartan[i][j].clone()).collect()))
            .collect();
        // form = D * C^{-1} entrywise: form[i][j] = (C^{-1})[i][j] * d_i.
        let c_rat: Vec<Vec<Rat>> = cartan
            .iter()
            .map(|row| row.iter().map(|e| Rat::from_integer(e.clone())).collect())
            .collect();
        let norms = kind.root_norms();
        let mut form = vec![vec![Rat::zero(); rank]; rank];
        for j in 0..rank {
            let mut e = vec![Rat::zero(); rank];
            e[j] = Rat::one();
            let col = rational_solve(&c_rat, &e)?
                .ok_or_else(|| Error::InternalConsistency("singular Cartan matrix".into()))?;
            for i in 0..rank {
                form[i][j] = &col[i] * Rat::from_integer(Int::from(norms[i]));
            }
        }
        let rho = LatticeVector(vec![Int::one(); rank]);
        let mut rs = RootSystem {
            kind,
            rank,
            cartan,
            simple_roots,
            positive_roots: Vec::new(),
            rho,
            form,
        };
        rs.positive_roots = rs.compute_positive_roots()?;
        Ok(rs)
    }

    /// The invariant inner product of two weight-coordinate vectors.
    pub fn pairing(&self, a: &[Rat], b: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                acc += &a[i] * &self.form[i][j] * &b[j];
            }
        }
        acc
    }

    pub fn pairing_int(&self, a: &LatticeVector, b: &LatticeVector) -> Rat {
        self.pairing(&a.to_rational(), &b.to_rational())
    }

    /// <lambda, alpha^vee> = 2 (lambda, alpha) / (alpha, alpha); integral
    /// for integral weights and roots.
    pub fn coroot_pairing(&self, lambda: &LatticeVector, alpha: &LatticeVector) -> Int {
        let two = Rat::from_integer(Int::from(2));
        let v = two * self.pairing_int(lambda, alpha) / self.pairing_int(alpha, alpha);
        debug_assert!(v.is_integer());
        v.to_integer()
    }

    /// Reflection in the root alpha, as an integer matrix on weight
    /// coordinates.
    pub fn reflection(&self, alpha: &LatticeVector) -> Vec<Vec<Int>> {
        let n = self.rank;
        let mut m = vec![vec![Int::zero(); n]; n];
        for k in 0..n {
            let mut basis = LatticeVector::zero(n);
            basis.0[k] = Int::one();
            let c = self.coroot_pairing(&basis, alpha);
            for j in 0..n {
                m[j][k] = Int::from((j == k) as i64) - &c * &alpha.0[j];
            }
        }
        m
    }

    fn compute_positive_roots(&self) -> Result<Vec<LatticeVector>> {
        // Orbit closure of the simple roots under simple reflections, then
        // select the roots with nonnegative simple-root coordinates.
        let reflections: Vec<Vec<Vec<Int>>> =
            self.simple_roots.iter().map(|a| self.reflection(a)).collect();
        let mut roots: Vec<LatticeVector> = self.simple_roots.clone();
        let mut frontier = roots.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for r in &frontier {
                for s in &reflections {
                    let img = apply_matrix(s, r);
                    if !roots.contains(&img) {
                        roots.push(img.clone());
                        next.push(img);
                    }
                }
            }
            frontier = next;
        }
        let c_rat: Vec<Vec<Rat>> = self
            .cartan
            .iter()
            .map(|row| row.iter().map(|e| Rat::from_integer(e.clone())).collect())
            .collect();
        let mut positives = Vec::new();
        for r in roots {
            let coords = rational_solve(&c_rat, &r.to_rational())?
                .ok_or_else(|| Error::InternalConsistency("singular Cartan matrix".into()))?;
            if coords.iter().all(|c| !c.is_negative()) {
                positives.push(r);
            }
        }
        positives.sort();
        Ok(positives)
    }

    pub fn is_positive_root(&self, v: &LatticeVector) -> bool {
        self.positive_roots.contains(v)
    }

    pub fn is_negative_root(&self, v: &LatticeVector) -> bool {
        self.positive_roots.contains(&v.neg())
    }

    pub fn is_root(&self, v: &LatticeVector) -> bool {
        self.is_positive_root(v) || self.is_negative_root(v)
    }

    pub fn is_dominant(&self, lambda: &LatticeVector) -> bool {
        lambda.0.iter().all(|c| !c.is_negative())
    }
}

pub fn apply_matrix(m: &[Vec<Int>], v: &LatticeVector) -> LatticeVector {
    LatticeVector(
        m.iter()
            .map(|row| row.iter().zip(&v.0).map(|(a, b)| a * b).sum())
            .collect(),
    )
}

fn matrix_mul(a: &[Vec<Int>], b: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let n = a.len();
    let mut out = vec![vec![Int::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = (0..n).map(|k| &a[i][k] * &b[k][j]).sum();
        }
    }
    out
}

fn identity(n: usize) -> Vec<Vec<Int>> {
    let mut m = vec![vec![Int::zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Int::one();
    }
    m
}

#[derive(Clone, Debug)]
pub struct WeylElement {
    pub matrix: Vec<Vec<Int>>,
    pub word: Vec<usize>,
}

impl WeylElement {
    pub fn apply(&self, v: &LatticeVector) -> LatticeVector {
        apply_matrix(&self.matrix, v)
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn determinant(&self) -> Int {
        det(&self.matrix)
    }

    pub fn word_string(&self) -> String {
        if self.word.is_empty() {
            "e".to_string()
        } else {
            self.word
                .iter()
                .map(|i| (i + 1).to_string())
                .collect::<Vec<_>>()
                .join("")
        }
    }
}

/// Breadth-first closure over the simple reflections; each element carries a
/// reduced word, and the group order is checked against the classical count.
pub fn generate_weyl(rs: &RootSystem) -> Result<Vec<WeylElement>> {
    let gens: Vec<Vec<Vec<Int>>> = rs
        .simple_roots
        .iter()
        .map(|a| rs.reflection(a))
        .collect();
    let mut elements = vec![WeylElement {
        matrix: identity(rs.rank),
        word: Vec::new(),
    }];
    let mut seen: Vec<Vec<Vec<Int>>> = vec![elements[0].matrix.clone()];
    let mut frontier = elements.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for (i, g) in gens.iter().enumerate() {
                let m = matrix_mul(&w.matrix, g);
                if !seen.contains(&m) {
                    let mut word = w.word.clone();
                    word.push(i);
                    let elt = WeylElement {
                        matrix: m.clone(),
                        word,
                    };
                    seen.push(m);
                    elements.push(elt.clone());
                    next.push(elt);
                }
            }
        }
        frontier = next;
    }
    if elements.len() != rs.kind.order_of_weyl_group() {
        return Err(Error::InternalConsistency(format!(
            "generated {} Weyl elements, expected {}",
            elements.len(),
            rs.kind.order_of_weyl_group()
        )));
    }
    Ok(elements)
}

/// l(w) computed from the root action: the number of positive roots sent
/// negative.
pub fn root_length(rs: &RootSystem, w: &WeylElement) -> usize {
    rs.positive_roots
        .iter()
        .filter(|a| rs.is_negative_root(&w.apply(a)))
        .count()
}

/// A symmetric, additively closed subset of the roots (the root system of an
/// isotropy subgroup).
#[derive(Clone, Debug, Default)]
pub struct RootSubset {
    pub roots: Vec<LatticeVector>,
}

impl RootSubset {
    pub fn empty() -> Self {
        RootSubset { roots: Vec::new() }
    }

    pub fn validate(&self, rs: &RootSystem) -> Result<()> {
        for r in &self.roots {
            if !rs.is_root(r) {
                return Err(Error::input(format!("{r} is not a root")));
            }
            if !self.roots.contains(&r.neg()) {
                return Err(Error::input("root subset is not symmetric"));
            }
        }
        for a in &self.roots {
            for b in &self.roots {
                let sum = a.add(b);
                if rs.is_root(&sum) && !self.roots.contains(&sum) {
                    return Err(Error::input("root subset is not additively closed"));
                }
            }
        }
        Ok(())
    }

    pub fn positive_part(&self, rs: &RootSystem) -> Vec<LatticeVector> {
        self.roots
            .iter()
            .filter(|r| rs.is_positive_root(r))
            .cloned()
            .collect()
    }
}

/// l_S(w) = |w(positive roots outside the subset) meet negatives|.
pub fn relative_length(rs: &RootSystem, w: &WeylElement, subset: &RootSubset) -> usize {
    rs.positive_roots
        .iter()
        .filter(|a| !subset.roots.contains(*a))
        .filter(|a| rs.is_negative_root(&w.apply(a)))
        .count()
}

/// det_S(w) = (-1)^{l_S(w)} det(w); +1 for every w when the subset is empty.
pub fn det_s(rs: &RootSystem, w: &WeylElement, subset: &RootSubset) -> Int {
    let sign = if relative_length(rs, w, subset) % 2 == 0 {
        Int::one()
    } else {
        -Int::one()
    };
    sign * w.determinant()
}

/// The full-flag fixed-point scenario of a dominant weight: one fixed point
/// per Weyl element, isotropy weights w(positive roots), fiber e^{w lambda}.
pub fn flag_fixed_data(rs: &RootSystem, lambda: &LatticeVector) -> Result<Scenario> {
    if !rs.is_dominant(lambda) {
        return Err(Error::input(format!("{lambda} is not dominant")));
    }
    let elements = generate_weyl(rs)?;
    let mut points = Vec::with_capacity(elements.len());
    for w in &elements {
        let weights: Vec<LatticeVector> =
            rs.positive_roots.iter().map(|a| w.apply(a)).collect();
        let fiber = FormalCharacter::exponential(w.apply(lambda));
        points.push(FixedPointDatum::new(
            format!("w{}", w.word_string()),
            weights,
            fiber,
        )?);
    }
    Scenario::new(rs.rank, rs.positive_roots.len(), points)
}

/// Freudenthal's recursion: the full weight multiset of the irreducible
/// representation with highest weight lambda. Exact rational arithmetic,
/// integer multiplicities. Serves as the independent oracle for the
/// fixed-point route.
pub fn freudenthal(rs: &RootSystem, lambda: &LatticeVector) -> Result<FormalCharacter> {
    if !rs.is_dominant(lambda) {
        return Err(Error::input(format!("{lambda} is not dominant")));
    }
    let elements = generate_weyl(rs)?;
    let longest = elements
        .iter()
        .max_by_key(|w| w.length())
        .expect("group is nonempty");
    let lowest = longest.apply(lambda);
    let c_rat: Vec<Vec<Rat>> = rs
        .cartan
        .iter()
        .map(|row| row.iter().map(|e| Rat::from_integer(e.clone())).collect())
        .collect();
    let simple_coords = |v: &LatticeVector| -> Result<Vec<Int>> {
        let sol = rational_solve(&c_rat, &v.to_rational())?
            .ok_or_else(|| Error::InternalConsistency("singular Cartan matrix".into()))?;
        Ok(sol
            .iter()
            .map(|x| {
                debug_assert!(x.is_integer());
                x.to_integer()
            })
            .collect())
    };
    // lambda - lowest = sum h_i alpha_i bounds the simple-root coordinates
    // of lambda - mu for every weight mu of the representation.
    let bounds: Vec<Int> = simple_coords(&lambda.sub(&lowest))?;
    let root_coords: Vec<Vec<Int>> = rs
        .positive_roots
        .iter()
        .map(|a| simple_coords(a))
        .collect::<Result<_>>()?;

    // Candidates lambda - sum c_i alpha_i over the whole box, grouped by
    // height sum c_i; each candidate keeps its gap coordinates c.
    let mut by_height: BTreeMap<usize, Vec<(Vec<Int>, LatticeVector)>> = BTreeMap::new();
    let mut counters = vec![Int::zero(); rs.rank];
    loop {
        let mut mu = lambda.clone();
        let mut height = 0usize;
        for (i, c) in counters.iter().enumerate() {
            height += usize::try_from(c.clone()).unwrap_or(usize::MAX);
            mu = mu.sub(&rs.simple_roots[i].scale(c));
        }
        by_height
            .entry(height)
            .or_default()
            .push((counters.clone(), mu));
        let mut i = 0;
        loop {
            if i == rs.rank {
                break;
            }
            counters[i] += 1;
            if counters[i] <= bounds[i] {
                break;
            }
            counters[i] = Int::zero();
            i += 1;
        }
        if i == rs.rank {
            break;
        }
    }

    let rho = &rs.rho;
    let lam_rho = lambda.add(rho);
    let norm_top = rs.pairing_int(&lam_rho, &lam_rho);
    let mut dominant_mult: BTreeMap<LatticeVector, Int> = BTreeMap::new();
    dominant_mult.insert(lambda.clone(), Int::one());

    let dominant_rep = |mu: &LatticeVector| -> LatticeVector {
        for w in &elements {
            let img = w.apply(mu);
            if rs.is_dominant(&img) {
                return img;
            }
        }
        unreachable!("every weight has a dominant representative")
    };
    let lookup = |map: &BTreeMap<LatticeVector, Int>, mu: &LatticeVector| -> Int {
        map.get(&dominant_rep(mu)).cloned().unwrap_or_else(Int::zero)
    };

    for (height, mus) in &by_height {
        if *height == 0 {
            continue;
        }
        for (gap, mu) in mus {
            if !rs.is_dominant(mu) {
                continue;
            }
            let mu_rho = mu.add(rho);
            let denom = &norm_top - rs.pairing_int(&mu_rho, &mu_rho);
            if denom.is_zero() {
                continue;
            }
            let mut numer = Rat::zero();
            for (alpha, acoords) in rs.positive_roots.iter().zip(&root_coords) {
                // Walk mu + j*alpha while it stays under the highest weight;
                // the gap coordinates decrease monotonically, so this is the
                // exact exit condition.
                let mut j = Int::one();
                loop {
                    let inside = gap
                        .iter()
                        .zip(acoords)
                        .all(|(g, a)| !(g - a * &j).is_negative());
                    if !inside {
                        break;
                    }
                    let shifted = mu.add(&alpha.scale(&j));
                    let m = lookup(&dominant_mult, &shifted);
                    if !m.is_zero() {
                        numer += rs.pairing_int(&shifted, alpha) * Rat::from_integer(m);
                    }
                    j += 1;
                }
            }
            let mult = Rat::from_integer(Int::from(2)) * numer / denom;
            debug_assert!(mult.is_integer() && !mult.numer().is_negative());
            let mult = mult.to_integer();
            if !mult.is_zero() {
                dominant_mult.insert(mu.clone(), mult);
            }
        }
    }

    let mut ch = FormalCharacter::zero(rs.rank);
    for mus in by_height.values() {
        for (_, mu) in mus {
            let m = lookup(&dominant_mult, mu);
            ch.add_term(mu.clone(), m);
        }
    }
    Ok(ch)
}

/// Weyl dimension formula; cross-check for the recursion.
pub fn weyl_dimension(rs: &RootSystem, lambda: &LatticeVector) -> Result<Int> {
    let mut num = Rat::one();
    let lam_rho = lambda.add(&rs.rho);
    for alpha in &rs.positive_roots {
        num *= rs.pairing_int(&lam_rho, alpha) / rs.pairing_int(&rs.rho, alpha);
    }
    if !num.is_integer() {
        return Err(Error::InternalConsistency(
            "Weyl dimension is not an integer".into(),
        ));
    }
    Ok(num.to_integer())
}

/// The character of the irreducible with highest weight lambda, computed by
/// per-weight index extraction over the flag scenario and cross-checked
/// against the Freudenthal oracle on the window; the routes must agree
/// exactly.
pub fn weyl_character(
    rs: &RootSystem,
    lambda: &LatticeVector,
    window: &[LatticeVector],
) -> Result<FormalCharacter> {
    let oracle = freudenthal(rs, lambda)?;
    for w in oracle.support() {
        if !window.contains(w) {
            return Err(Error::input(format!(
                "window misses the weight {w} of the representation"
            )));
        }
    }
    let scenario = flag_fixed_data(rs, lambda)?;
    let chambers = enumerate_chambers(&scenario)?;
    let terms = morse::all_chamber_terms(&scenario, &chambers)?;
    for xi in window {
        let extracted = terms.index_coefficient(xi)?;
        if extracted != oracle.coefficient(xi) {
            return Err(Error::InternalConsistency(format!(
                "fixed-point extraction and Freudenthal disagree at {xi}: {extracted} vs {}",
                oracle.coefficient(xi)
            )));
        }
    }
    Ok(oracle)
}

/// Data of one Weyl orbit of fixed points: the isotropy root subset, the
/// (possibly rational) highest-weight multiplicities of the fiber, and the
/// non-root isotropy weights.
#[derive(Clone, Debug)]
pub struct OrbitDatum {
    pub label: String,
    pub isotropy_roots: RootSubset,
    pub multiplicities: Vec<(LatticeVector, Rat)>,
    pub extra_weights: Vec<LatticeVector>,
}

impl OrbitDatum {
    /// The full-flag orbit: torus isotropy, single highest weight.
    pub fn flag(lambda: &LatticeVector) -> Self {
        OrbitDatum {
            label: "flag".into(),
            isotropy_roots: RootSubset::empty(),
            multiplicities: vec![(lambda.clone(), Rat::one())],
            extra_weights: Vec::new(),
        }
    }
}

/// The reflection subgroup generated by the subset's roots (the Weyl group
/// of the connected isotropy group), as matrices.
fn reflection_subgroup(rs: &RootSystem, subset: &RootSubset) -> Vec<Vec<Vec<Int>>> {
    let gens: Vec<Vec<Vec<Int>>> = subset
        .positive_part(rs)
        .iter()
        .map(|a| rs.reflection(a))
        .collect();
    let mut elems = vec![identity(rs.rank)];
    let mut frontier = elems.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for m in &frontier {
            for g in &gens {
                let prod = matrix_mul(m, g);
                if !elems.contains(&prod) {
                    elems.push(prod.clone());
                    next.push(prod);
                }
            }
        }
        frontier = next;
    }
    elems
}

/// Character of the isotropy-subgroup irreducible with highest weight
/// lambda, via the fixed-point sum over its own flag: exact per-weight
/// extraction, no oracle needed for the empty subset (the character is a
/// single exponential).
fn subgroup_character(
    rs: &RootSystem,
    subset: &RootSubset,
    lambda: &LatticeVector,
) -> Result<FormalCharacter> {
    let positives = subset.positive_part(rs);
    if positives.is_empty() {
        return Ok(FormalCharacter::exponential(lambda.clone()));
    }
    // theta regular for the subset and positive on its positive part.
    let mut sys = LinearSystem::new(rs.rank);
    for a in &positives {
        sys.push(Constraint::gt_int(a, Int::zero()))?;
    }
    let witness = sys
        .feasible()
        .ok_or_else(|| Error::input("no regular direction for the root subset"))?;
    let theta = crate::lattice::primitive_from_rational(&witness)?;

    let subgroup = reflection_subgroup(rs, subset);
    let mut orbit = Vec::new();
    for m in &subgroup {
        orbit.push(apply_matrix(m, lambda));
    }
    let window = window_box(&orbit, 0);
    let mut ch = FormalCharacter::zero(rs.rank);
    for xi in &window {
        let mut acc = Int::zero();
        for m in &subgroup {
            let mut denominators = Vec::new();
            let mut shift = LatticeVector::zero(rs.rank);
            let mut flips = 0usize;
            for a in &positives {
                let img = apply_matrix(m, a);
                let p = img.dot(&theta);
                if p.is_positive() {
                    denominators.push(img);
                } else {
                    let pol = img.neg();
                    shift = shift.sub(&pol);
                    flips += 1;
                    denominators.push(pol);
                }
            }
            let numerator =
                FormalCharacter::exponential(apply_matrix(m, lambda)).shifted(&shift);
            let term = PolarizedTerm::new(flips, numerator, denominators, &theta)?;
            let c = term.coefficient(xi);
            if flips % 2 == 0 {
                acc += c;
            } else {
                acc -= c;
            }
        }
        ch.add_term(xi.clone(), acc);
    }
    Ok(ch)
}

/// Expands orbit data into a plain torus fixed-point scenario: one fixed
/// point per coset of the isotropy reflection subgroup, with isotropy
/// weights w(positive roots outside the subset) + w(extra weights) and
/// fiber character w(sum of subgroup irreducibles). Rational multiplicities
/// must combine to an integral nonnegative character.
pub fn expand_orbits(rs: &RootSystem, orbits: &[OrbitDatum]) -> Result<Scenario> {
    if orbits.is_empty() {
        return Err(Error::input("no orbit data supplied"));
    }
    let elements = generate_weyl(rs)?;
    let mut points = Vec::new();
    let mut dim: Option<usize> = None;
    for orbit in orbits {
        orbit.isotropy_roots.validate(rs)?;
        let subgroup = reflection_subgroup(rs, &orbit.isotropy_roots);
        let root_part: Vec<LatticeVector> = rs
            .positive_roots
            .iter()
            .filter(|a| !orbit.isotropy_roots.roots.contains(*a))
            .cloned()
            .collect();
        let n = root_part.len() + orbit.extra_weights.len();
        match dim {
            None => dim = Some(n),
            Some(d) if d == n => {}
            Some(d) => {
                return Err(Error::input(format!(
                    "orbit {} has dimension {n}, expected {d}",
                    orbit.label
                )))
            }
        }
        // Base fiber: rational combination of subgroup characters.
        let mut rational_fiber: BTreeMap<LatticeVector, Rat> = BTreeMap::new();
        for (lam, mult) in &orbit.multiplicities {
            let ch = subgroup_character(rs, &orbit.isotropy_roots, lam)?;
            for (w, m) in ch.iter() {
                let entry = rational_fiber.entry(w.clone()).or_insert_with(Rat::zero);
                *entry += mult * Rat::from_integer(m.clone());
            }
        }
        let mut fiber_base = FormalCharacter::zero(rs.rank);
        for (w, m) in rational_fiber {
            if m.is_zero() {
                continue;
            }
            if !m.is_integer() {
                return Err(Error::input(format!(
                    "orbit {}: rational multiplicities leave a non-integral fiber character at {w}",
                    orbit.label
                )));
            }
            fiber_base.add_term(w, m.to_integer());
        }

        // Coset representatives: minimal word length first.
        let mut reps: Vec<&WeylElement> = Vec::new();
        'outer: for w in &elements {
            for r in &reps {
                // w ~ r iff r^{-1} w lies in the subgroup; as matrices,
                // w = r * u for some subgroup element u.
                for u in &subgroup {
                    if matrix_mul(&r.matrix, u) == w.matrix {
                        continue 'outer;
                    }
                }
            }
            reps.push(w);
        }

        for rep in reps {
            let mut weights: Vec<LatticeVector> =
                root_part.iter().map(|a| rep.apply(a)).collect();
            weights.extend(orbit.extra_weights.iter().map(|l| rep.apply(l)));
            let fiber = fiber_base.mapped(&rep.matrix);
            points.push(FixedPointDatum::new(
                format!("{}:{}", orbit.label, rep.word_string()),
                weights,
                fiber,
            )?);
        }
    }
    Scenario::new(rs.rank, dim.expect("at least one orbit"), points)
}

/// Per-weight, per-degree coefficients of the Weyl-numerator cohomology side
/// sum_k t^k sum_w det(w) sum_L m^k_L e^{w(L+rho)-rho}.
fn numerator_side_profile(
    rs: &RootSystem,
    elements: &[WeylElement],
    cohomology: &[Vec<(LatticeVector, Int)>],
    xi: &LatticeVector,
    dim: usize,
) -> Vec<Int> {
    let mut out = vec![Int::zero(); dim + 1];
    for (k, row) in cohomology.iter().enumerate() {
        for w in elements {
            let sign = w.determinant();
            for (lam, mult) in row {
                let shifted = w.apply(&lam.add(&rs.rho)).sub(&rs.rho);
                if shifted == *xi {
                    out[k] += &sign * mult;
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct AssemblyMismatch {
    pub weight: LatticeVector,
    pub degree: usize,
    pub rearranged: Rat,
    pub torus_times_denominator: Int,
}

/// Report of the non-Abelian assembly: the rearranged fixed-point sum and
/// the torus-level sum multiplied by the Weyl denominator must agree
/// per weight and degree; positivity of the remainder is certified at the
/// torus level by the delegated strong check; and at t = -1 the two sides
/// collapse to the fixed-point formula for the given cohomology.
#[derive(Debug)]
pub struct NonabelianReport {
    pub window: Vec<LatticeVector>,
    pub torus: StrongReport,
    pub assemblies_agree: bool,
    pub mismatches: Vec<AssemblyMismatch>,
    pub fixed_point_formula_consistent: bool,
}

/// Builds both sides of the rearranged strong inequalities over the window.
///
/// `theta1` selects the action chamber of the expanded torus scenario; it
/// must lie off every isotropy hyperplane and its chamber must meet the
/// positive Weyl chamber in an open cone.
/// `cohomology[k]` lists (highest weight, multiplicity) of H^k as a
/// G-representation.
pub fn assemble_nonabelian(
    rs: &RootSystem,
    orbits: &[OrbitDatum],
    theta1: &LatticeVector,
    cohomology: &[Vec<(LatticeVector, Int)>],
    window: &[LatticeVector],
) -> Result<NonabelianReport> {
    if orbits.is_empty() {
        // No fixed points and no cohomology: both sides vanish identically.
        if cohomology.iter().any(|row| !row.is_empty()) {
            return Err(Error::input(
                "nonzero cohomology with no orbit data cannot balance",
            ));
        }
        return Ok(NonabelianReport {
            window: window.to_vec(),
            torus: StrongReport {
                holds_on_window: true,
                window: window.to_vec(),
                q_rows: Vec::new(),
                violations: Vec::new(),
            },
            assemblies_agree: true,
            mismatches: Vec::new(),
            fixed_point_formula_consistent: true,
        });
    }
    let scenario = expand_orbits(rs, orbits)?;
    if cohomology.len() > scenario.dim + 1 {
        return Err(Error::input(
            "cohomology polynomial degree exceeds the complex dimension",
        ));
    }
    let chambers = enumerate_chambers(&scenario)?;
    let chamber = chambers.resolve(theta1)?.clone();
    ensure_meets_positive_chamber(rs, &chambers, &chamber)?;
    let elements = generate_weyl(rs)?;

    // Torus-level cohomology characters via the Weyl character oracle.
    let mut torus_coh = MorsePolynomial::zero(rs.rank, scenario.dim);
    for (k, row) in cohomology.iter().enumerate() {
        for (lam, mult) in row {
            let ch = freudenthal(rs, lam)?;
            for (w, m) in ch.iter() {
                torus_coh.coeff_mut(k).add_term(w.clone(), m * mult);
            }
        }
    }
    let torus = morse::verify_strong(&scenario, &chamber, &torus_coh, window)?;

    // Subsets of the positive roots expand the Weyl denominator
    // prod (1 - e^{-alpha}).
    let denom_terms: Vec<(i64, LatticeVector)> = subset_shifts(&rs.positive_roots, rs.rank);
    let torus_terms = morse::polarized_terms(&scenario, &chamber)?;

    let mut mismatches = Vec::new();
    let mut fixed_point_ok = true;
    for xi in window {
        // Left side of the rearrangement.
        let lhs = rearranged_profile(rs, orbits, &elements, &chamber, xi, scenario.dim)?;
        // Torus left side times the Weyl denominator.
        let mut tl = vec![Int::zero(); scenario.dim + 1];
        for (sign, shift) in &denom_terms {
            let shifted = xi.add(shift);
            let prof = crate::charring::sum_coefficients(&torus_terms, &shifted, scenario.dim)?;
            for (slot, v) in tl.iter_mut().zip(prof) {
                if *sign >= 0 {
                    *slot += v;
                } else {
                    *slot -= v;
                }
            }
        }
        for k in 0..=scenario.dim {
            if lhs[k] != Rat::from_integer(tl[k].clone()) {
                mismatches.push(AssemblyMismatch {
                    weight: xi.clone(),
                    degree: k,
                    rearranged: lhs[k].clone(),
                    torus_times_denominator: tl[k].clone(),
                });
            }
        }
        // Right side: Weyl-numerator form against torus characters times
        // the denominator.
        let rhs = numerator_side_profile(rs, &elements, cohomology, xi, scenario.dim);
        let mut tr = vec![Int::zero(); scenario.dim + 1];
        for (sign, shift) in &denom_terms {
            let shifted = xi.add(shift);
            for k in 0..=scenario.dim {
                let v = torus_coh.coeff(k).coefficient(&shifted);
                if *sign >= 0 {
                    tr[k] += v;
                } else {
                    tr[k] -= v;
                }
            }
        }
        for k in 0..=scenario.dim {
            if rhs[k] != tr[k] {
                mismatches.push(AssemblyMismatch {
                    weight: xi.clone(),
                    degree: k,
                    rearranged: Rat::from_integer(rhs[k].clone()),
                    torus_times_denominator: tr[k].clone(),
                });
            }
        }
        // t = -1: the fixed-point formula.
        let alt_l: Rat = lhs
            .iter()
            .enumerate()
            .map(|(k, v)| {
                if k % 2 == 0 {
                    v.clone()
                } else {
                    -v.clone()
                }
            })
            .sum();
        let alt_r: Int = rhs
            .iter()
            .enumerate()
            .map(|(k, v)| {
                if k % 2 == 0 {
                    v.clone()
                } else {
                    -v.clone()
                }
            })
            .sum();
        if alt_l != Rat::from_integer(alt_r) {
            fixed_point_ok = false;
        }
    }

    Ok(NonabelianReport {
        window: window.to_vec(),
        torus,
        assemblies_agree: mismatches.is_empty(),
        mismatches,
        fixed_point_formula_consistent: fixed_point_ok,
    })
}

/// Per-weight, per-degree rational coefficients of the rearranged left side:
/// sum over orbits S and w in W of det_S(w) t^{l_S(w) + n^C(w extras)}
/// (sum_L m^S_L e^{w(L+rho)-rho}) prod over polarized w(extras).
fn rearranged_profile(
    rs: &RootSystem,
    orbits: &[OrbitDatum],
    elements: &[WeylElement],
    chamber: &Chamber,
    xi: &LatticeVector,
    dim: usize,
) -> Result<Vec<Rat>> {
    let mut out = vec![Rat::zero(); dim + 1];
    for orbit in orbits {
        for w in elements {
            let ls = relative_length(rs, w, &orbit.isotropy_roots);
            let sign = det_s(rs, w, &orbit.isotropy_roots);
            let mut denominators = Vec::new();
            let mut shift = LatticeVector::zero(rs.rank);
            let mut flips = 0usize;
            for extra in &orbit.extra_weights {
                let img = w.apply(extra);
                let (pol, flipped) = polarize(&img, chamber)?;
                if flipped {
                    shift = shift.sub(&pol);
                    flips += 1;
                }
                denominators.push(pol);
            }
            let degree = ls + flips;
            if degree > dim {
                return Err(Error::InternalConsistency(
                    "rearranged degree exceeds the complex dimension".into(),
                ));
            }
            for (lam, mult) in &orbit.multiplicities {
                let exponent = w.apply(&lam.add(&rs.rho)).sub(&rs.rho);
                let numerator = FormalCharacter::exponential(exponent).shifted(&shift);
                let term = PolarizedTerm::new(
                    degree,
                    numerator,
                    denominators.clone(),
                    &chamber.representative,
                )?;
                let c = term.coefficient(xi);
                out[degree] += mult * Rat::from_integer(&sign * c);
            }
        }
    }
    Ok(out)
}

/// Expansion of prod over roots of (1 - e^{-alpha}): multiplying a series by
/// e^{-sum_T alpha} reads its coefficient at xi + sum_T alpha, so each subset
/// contributes (sign, positive shift).
fn subset_shifts(roots: &[LatticeVector], rank: usize) -> Vec<(i64, LatticeVector)> {
    let mut out = Vec::with_capacity(1 << roots.len());
    for mask in 0u32..(1u32 << roots.len()) {
        let mut shift = LatticeVector::zero(rank);
        let mut sign = 1i64;
        for (i, r) in roots.iter().enumerate() {
            if mask & (1 << i) != 0 {
                shift = shift.add(r);
                sign = -sign;
            }
        }
        out.push((sign, shift));
    }
    out
}

fn ensure_meets_positive_chamber(
    rs: &RootSystem,
    chambers: &ChamberSet,
    chamber: &Chamber,
) -> Result<()> {
    let mut sys = LinearSystem::new(rs.rank);
    for (h, &s) in chambers.hyperplanes.iter().zip(&chamber.signs) {
        let n = if s > 0 { h.clone() } else { h.neg() };
        sys.push(Constraint::gt_int(&n, Int::zero()))?;
    }
    for alpha in &rs.positive_roots {
        sys.push(Constraint::gt_int(alpha, Int::zero()))?;
    }
    if sys.feasible().is_none() {
        return Err(Error::input(
            "the chamber does not meet the positive Weyl chamber in an open cone",
        ));
    }
    Ok(())
}

/// Partitions fixed points into Weyl orbits, given the permutation action
/// of each group element as a table `action[w][p]`.
pub fn orbit_partition(n_points: usize, action: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
    for row in action {
        if row.len() != n_points {
            return Err(Error::input("action table has wrong width"));
        }
        let mut seen = vec![false; n_points];
        for &img in row {
            if img >= n_points || seen[img] {
                return Err(Error::input("action does not permute the point set"));
            }
            seen[img] = true;
        }
    }
    let mut parent: Vec<usize> = (0..n_points).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for row in action {
        for (p, &img) in row.iter().enumerate() {
            let a = find(&mut parent, p);
            let b = find(&mut parent, img);
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for p in 0..n_points {
        let root = find(&mut parent, p);
        groups.entry(root).or_default().push(p);
    }
    Ok(groups.into_values().collect())
}
