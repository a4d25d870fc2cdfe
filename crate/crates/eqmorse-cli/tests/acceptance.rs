//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (run with `--nocapture` to see the lines for passing tests too). All
//! checks are exact unless a numeric tolerance is stated inline.

use eqmorse::builtins;
use eqmorse::chambers::{enumerate_chambers, polarizing_index, Chamber, ChamberSet};
use eqmorse::charring::{evaluate_character, EvaluationPoint, FormalCharacter, MorsePolynomial, PolarizedTerm};
use eqmorse::fan::{
    convexity_obstruction, fixed_point_data, moment_polytope_points, strictly_convex, validate,
};
use eqmorse::lattice::{lattice_points, lv, Constraint, Int, LatticeVector, LinearSystem, Rat, Relation};
use eqmorse::morse::{
    all_chamber_terms, detect_obstruction, evaluate_index_rational, gamma_contains, gamma_region,
    index_character, support_verdict, toric_cohomology_2d, verify_strong, weak_check, window_box,
    DegreeVerdict,
};
use eqmorse::scenario::Scenario;
use eqmorse::weyl::{
    assemble_nonabelian, flag_fixed_data, freudenthal, generate_weyl, root_length, weyl_character,
    OrbitDatum, RootSystem, RootSystemKind,
};
use num_traits::{Signed, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

struct Criterion {
    name: &'static str,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Criterion {
    fn new(name: &'static str) -> Self {
        Criterion {
            name,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, label: &str, ok: bool) {
        if !ok {
            self.failures.push(label.to_string());
        }
    }

    fn note(&mut self, text: String) {
        self.notes.push(text);
    }

    fn finish(self) {
        for n in &self.notes {
            println!("[{}] note: {n}", self.name);
        }
        if self.failures.is_empty() {
            println!("[{}] PASS", self.name);
        } else {
            println!("[{}] FAIL: {}", self.name, self.failures.join("; "));
            panic!("{} failed: {}", self.name, self.failures.join("; "));
        }
    }
}

fn int(v: i64) -> Int {
    Int::from(v)
}

#[test]
fn criterion_01_projective_line() {
    let mut c = Criterion::new("criterion 1: projective line");
    for r in [0i64, 1, 2, 5] {
        let (fan, pl) = builtins::cp1(r).unwrap();
        let scenario = fixed_point_data(&fan, &pl).unwrap();
        let chambers = enumerate_chambers(&scenario).unwrap();
        let terms = all_chamber_terms(&scenario, &chambers).unwrap();
        let window = window_box(&scenario.apexes(), 3);
        let mut ones = 0usize;
        let mut others = 0usize;
        for xi in &window {
            let v = terms.index_coefficient(xi).unwrap();
            if v == int(1) {
                ones += 1;
            } else if !v.is_zero() {
                others += 1;
            }
            // H^1 forced empty: degree 1 excluded at every window weight.
            let verdict = support_verdict(&scenario, &chambers, &terms, xi).unwrap();
            c.check(
                &format!("r={r}: degree 1 excluded at {xi}"),
                matches!(verdict.degrees[1], DegreeVerdict::Excluded { .. }),
            );
        }
        c.check(
            &format!("r={r}: index has exactly r+1 coefficient-one weights"),
            ones == (r + 1) as usize && others == 0,
        );
    }
    for r in [-1i64, -3] {
        let (fan, pl) = builtins::cp1(r).unwrap();
        let scenario = fixed_point_data(&fan, &pl).unwrap();
        let chambers = enumerate_chambers(&scenario).unwrap();
        let terms = all_chamber_terms(&scenario, &chambers).unwrap();
        let window = window_box(&scenario.apexes(), 3);
        let mut forced_h1 = 0usize;
        for xi in &window {
            let verdict = support_verdict(&scenario, &chambers, &terms, xi).unwrap();
            c.check(
                &format!("r={r}: degree 0 excluded at {xi}"),
                matches!(verdict.degrees[0], DegreeVerdict::Excluded { .. }),
            );
            if let DegreeVerdict::Forced { multiplicity, .. } = &verdict.degrees[1] {
                c.check(
                    &format!("r={r}: multiplicity one at {xi}"),
                    *multiplicity == int(1),
                );
                forced_h1 += 1;
            }
        }
        c.check(
            &format!("r={r}: exactly |r|-1 weights forced into degree 1"),
            forced_h1 == (-r - 1) as usize,
        );
    }
    c.finish();
}

#[test]
fn criterion_02_projective_plane() {
    let mut c = Criterion::new("criterion 2: projective plane");
    let (fan, pl) = builtins::cp2(3).unwrap();
    let scenario = fixed_point_data(&fan, &pl).unwrap();
    let chambers = enumerate_chambers(&scenario).unwrap();
    c.check("exactly 6 chambers", chambers.chambers.len() == 6);

    // Polarizing indices (0, 1, 2) for the chamber spanned by {e1, e1+e2}.
    let chamber = chambers.resolve(&lv(&[2, 1])).unwrap();
    let order = [
        fan.cone_index_by_rays(&[1, 2]).unwrap(),
        fan.cone_index_by_rays(&[0, 2]).unwrap(),
        fan.cone_index_by_rays(&[0, 1]).unwrap(),
    ];
    let indices: Vec<usize> = order
        .iter()
        .map(|&i| polarizing_index(&scenario.points[i], chamber).unwrap())
        .collect();
    c.check("polarizing indices (0,1,2)", indices == vec![0, 1, 2]);

    // r = 3: the ten simplex points are forced at degree 0 with
    // multiplicity 1; degrees 1 and 2 are excluded everywhere.
    let terms = all_chamber_terms(&scenario, &chambers).unwrap();
    let window = window_box(&scenario.apexes(), 3);
    let simplex = moment_polytope_points(&fan, &pl).unwrap();
    c.check("ten simplex points", simplex.len() == 10);
    let mut forced = 0usize;
    for xi in &window {
        let verdict = support_verdict(&scenario, &chambers, &terms, xi).unwrap();
        for k in [1usize, 2] {
            c.check(
                &format!("degree {k} excluded at {xi}"),
                matches!(verdict.degrees[k], DegreeVerdict::Excluded { .. }),
            );
        }
        if simplex.contains(xi) {
            c.check(
                &format!("degree 0 forced with multiplicity 1 at {xi}"),
                matches!(
                    &verdict.degrees[0],
                    DegreeVerdict::Forced { multiplicity, .. } if *multiplicity == int(1)
                ),
            );
            forced += 1;
        }
    }
    c.check("all ten simplex points scanned", forced == 10);

    // verify_strong with the claimed cohomology H^0 = simplex character.
    let mut coh = MorsePolynomial::zero(2, 2);
    for w in &simplex {
        coh.coeff_mut(0).add_term(w.clone(), int(1));
    }
    let mut q_nonzero: Vec<(LatticeVector, Vec<Int>)> = Vec::new();
    for ch in &chambers.chambers {
        let report = verify_strong(&scenario, ch, &coh, &window).unwrap();
        c.check(
            &format!("verify_strong holds in chamber {}", ch.id),
            report.holds_on_window,
        );
        if ch.id == chamber.id {
            q_nonzero = report.q_rows.clone();
        }
    }
    // The criterion additionally asserts Q == 0 across the whole margin-3
    // window. The inequalities guarantee only Q >= 0 there, and regions of
    // consecutive polarizing index overlap off the simplex (the degree-0
    // region {x2 >= 0, x1+x2 <= 3} and the degree-1 region {x1 < 0,
    // x1+x2 <= 3} share (-1,0), for example), which forces a nonzero
    // quotient at such weights. Q does vanish on the simplex itself. The
    // assertion is kept as stated and fails with the witness below.
    for w in &simplex {
        c.check(
            &format!("Q vanishes at simplex weight {w}"),
            !q_nonzero.iter().any(|(xi, _)| xi == w),
        );
    }
    if let Some((xi, q)) = q_nonzero.first() {
        c.note(format!(
            "Q is not identically zero on the margin-3 window: Q({xi}) = {q:?} \
             ({} window weights carry a nonzero quotient; all of them lie off the simplex)",
            q_nonzero.len()
        ));
    }
    c.check("Q == 0 on the whole margin-3 window", q_nonzero.is_empty());
    c.finish();
}

#[test]
fn criterion_03_hirzebruch_surface() {
    let mut c = Criterion::new("criterion 3: Hirzebruch surface");
    let (fan, pl) = builtins::hirzebruch(1, 2, 1).unwrap();
    let coh = toric_cohomology_2d(&fan, &pl).unwrap();

    // Supports are disjoint (vacuously where empty) and H^2 is empty.
    let supports: Vec<Vec<LatticeVector>> = (0..=2)
        .map(|k| coh.coeff(k).support().cloned().collect())
        .collect();
    for i in 0..3 {
        for j in (i + 1)..3 {
            for w in &supports[i] {
                c.check(
                    &format!("supports of H^{i} and H^{j} disjoint at {w}"),
                    !supports[j].contains(w),
                );
            }
        }
    }
    c.check("H^2 is empty", supports[2].is_empty());

    // Oracle: per-weight index with support-verdict degree assignment. The
    // reconstruction must match it weight for weight.
    let scenario = fixed_point_data(&fan, &pl).unwrap();
    let chambers = enumerate_chambers(&scenario).unwrap();
    let terms = all_chamber_terms(&scenario, &chambers).unwrap();
    let window = window_box(&scenario.apexes(), 2);
    for xi in &window {
        let ind = terms.index_coefficient(xi).unwrap();
        let claimed: Vec<Int> = (0..=2).map(|k| coh.coeff(k).coefficient(xi)).collect();
        if ind.is_zero() {
            c.check(
                &format!("no assignment at index-zero weight {xi}"),
                claimed.iter().all(Zero::is_zero),
            );
            continue;
        }
        let verdict = support_verdict(&scenario, &chambers, &terms, xi).unwrap();
        let open: Vec<usize> = (0..=2)
            .filter(|&k| !matches!(verdict.degrees[k], DegreeVerdict::Excluded { .. }))
            .collect();
        c.check(&format!("unique degree at {xi}"), open.len() == 1);
        let k = open[0];
        c.check(
            &format!("multiplicity matches the index at {xi}"),
            claimed[k] == ind.abs() && (k % 2 == 0) == ind.is_positive(),
        );
    }

    // Resolution of the closed-form region: the degree-0 region computed
    // from the fixed-point data is {x1, x2 >= 0, x1 <= r, a x1 + x2 <= s};
    // at (a, r, s) = (1, 2, 1) its three lattice points match the oracle.
    let h0: Vec<LatticeVector> = supports[0].clone();
    c.note(format!(
        "degree-0 support resolved by the per-weight index oracle: {:?} \
         (the region is cut by x1 <= r and a*x1 + x2 <= s, not by a*x1 + x2 <= r)",
        h0
    ));
    c.check(
        "H^0 = {(0,0), (0,1), (1,0)}",
        h0 == vec![lv(&[0, 0]), lv(&[0, 1]), lv(&[1, 0])],
    );
    c.finish();
}

#[test]
fn criterion_04_nonconvex_toric_threefold() {
    let mut c = Criterion::new("criterion 4: non-convex toric 3-fold");
    let (fan, pl) = builtins::jurkiewicz().unwrap();
    let report = validate(&fan);
    c.check(
        "smooth and complete with exactly 22 maximal cones",
        report.smooth && report.complete && fan.max_cones.len() == 22,
    );
    c.check(
        "the interpolated function is not strictly convex",
        !strictly_convex(&fan, &pl).unwrap(),
    );
    // Farkas-style replay: two aggregate wall-crossing inequalities are
    // derivable and contradictory, so no strictly convex function exists.
    let (first, second) = builtins::jurkiewicz_obstruction_families(&fan);
    match convexity_obstruction(&fan, &first, &second) {
        Err(e) => c.check(&format!("contradiction certificate ({e})"), false),
        Ok(obstruction) => {
            let expected: Vec<Rat> = [3i64, 3, 3, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0]
                .iter()
                .map(|&x| Rat::from_integer(int(x)))
                .collect();
            c.check(
                "first aggregate is 3(a+b+c)+(d+e+f) > 0",
                obstruction.first_aggregate == expected,
            );
            c.check(
                "second aggregate is its negation",
                obstruction
                    .second_aggregate
                    .iter()
                    .zip(&expected)
                    .all(|(got, want)| (got.clone() + want.clone()).is_zero()),
            );
        }
    }

    let scenario = fixed_point_data(&fan, &pl).unwrap();
    let chambers = enumerate_chambers(&scenario).unwrap();
    let terms = all_chamber_terms(&scenario, &chambers).unwrap();
    let zero = lv(&[0, 0, 0]);

    // Obstruction witness at 0 with colliding degrees {0, 3}.
    let candidates = window_box(&[lv(&[-2, -2, -2]), lv(&[2, 2, 2])], 0);
    let witness = detect_obstruction(&scenario, &chambers, Some(candidates))
        .unwrap()
        .expect("witness");
    c.check("witness weight is 0", witness.weight == zero);
    let verdict = support_verdict(&scenario, &chambers, &terms, &zero).unwrap();
    c.check(
        "colliding degrees at 0 are {0, 3}",
        verdict.obstructed_degrees() == vec![0, 3],
    );
    c.check(
        "index coefficient at 0 vanishes",
        terms.index_coefficient(&zero).unwrap().is_zero(),
    );

    // Weak inequalities hold on the window for the cohomology claim putting
    // the zero weight in degrees 0 and 3, at the counterexample chamber.
    let chamber = chambers
        .resolve(&builtins::jurkiewicz_chamber_representative())
        .unwrap();
    let mut coh = MorsePolynomial::zero(3, 3);
    coh.coeff_mut(0).add_term(zero.clone(), int(1));
    coh.coeff_mut(3).add_term(zero.clone(), int(1));
    let window = window_box(&scenario.apexes(), 3);
    let weak = weak_check(&scenario, chamber, &coh, &window).unwrap();
    c.check(
        "weak inequalities hold with 0 in H^0 and H^3",
        weak.holds_on_window,
    );
    c.finish();
}

#[test]
fn criterion_05_tolman_scenario() {
    let mut c = Criterion::new("criterion 5: Tolman scenario");
    let scenario = builtins::tolman().unwrap();
    let chambers = enumerate_chambers(&scenario).unwrap();
    let chamber = chambers
        .resolve(&builtins::tolman_chamber_representative())
        .unwrap();
    let minus = chambers.opposite(chamber);
    let xi = builtins::tolman_obstruction_weight();

    let members = |ch: &Chamber| -> Vec<(String, usize)> {
        scenario
            .points
            .iter()
            .filter_map(|p| {
                let region = gamma_region(p, ch).unwrap();
                gamma_contains(&region, &xi).then(|| (p.label.clone(), region.degree))
            })
            .collect()
    };
    c.check(
        "(1,2) lies in the regions of p1 (degree 1) and p5 (degree 0) only",
        members(chamber) == vec![("p1".to_string(), 1), ("p5".to_string(), 0)],
    );
    c.check(
        "against the opposite chamber: p3 (degree 0) and p6 (degree 2) only",
        members(minus) == vec![("p3".to_string(), 0), ("p6".to_string(), 2)],
    );

    let witness = detect_obstruction(&scenario, &chambers, None)
        .unwrap()
        .expect("witness");
    c.check("detect_obstruction returns (1,2)", witness.weight == xi);
    c.check("collision at degree 2", witness.degree == 2);

    // CLI exit code 1 on the obstruction.
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_eqmorse"))
        .args(["example", "tolman", "obstruction"])
        .output()
        .expect("run eqmorse");
    c.check("CLI exits with code 1", out.status.code() == Some(1));
    c.finish();
}

fn builtin_scenarios() -> Vec<(String, Scenario)> {
    let toric: Vec<(String, _)> = vec![
        ("cp1 r=2".into(), builtins::cp1(2).unwrap()),
        ("cp2 r=3".into(), builtins::cp2(3).unwrap()),
        ("cp3 r=1".into(), builtins::cpn(3, 1).unwrap()),
        ("hirzebruch".into(), builtins::hirzebruch(1, 2, 1).unwrap()),
        ("jurkiewicz".into(), builtins::jurkiewicz().unwrap()),
    ];
    let mut out: Vec<(String, Scenario)> = toric
        .into_iter()
        .map(|(name, (fan, pl))| (name, fixed_point_data(&fan, &pl).unwrap()))
        .collect();
    out.push(("tolman".into(), builtins::tolman().unwrap()));
    let (rs, lam) = builtins::flag_a1(2).unwrap();
    out.push(("flag-a1".into(), flag_fixed_data(&rs, &lam).unwrap()));
    let (rs, lam) = builtins::flag_a2((1, 1)).unwrap();
    out.push(("flag-a2".into(), flag_fixed_data(&rs, &lam).unwrap()));
    out
}

/// At least 50 deterministic window weights for a scenario.
fn sample_window(scenario: &Scenario) -> Vec<LatticeVector> {
    let mut margin = 3i64;
    let mut window = window_box(&scenario.apexes(), margin);
    while window.len() < 50 {
        margin += 5;
        window = window_box(&scenario.apexes(), margin);
    }
    if window.len() > 60 {
        let stride = window.len() / 60;
        window = window.into_iter().step_by(stride.max(1)).take(60).collect();
    }
    window
}

#[test]
fn criterion_06_chamber_independence() {
    let mut c = Criterion::new("criterion 6: chamber independence");
    for (name, scenario) in builtin_scenarios() {
        let chambers = enumerate_chambers(&scenario).unwrap();
        let terms = all_chamber_terms(&scenario, &chambers).unwrap();
        let window = sample_window(&scenario);
        assert!(window.len() >= 50);
        for xi in &window {
            let mut values = Vec::new();
            for id in 0..chambers.chambers.len() {
                let prof = terms.profile(id, xi).unwrap();
                let alt: Int = prof
                    .iter()
                    .enumerate()
                    .map(|(k, v)| if k % 2 == 0 { v.clone() } else { -v.clone() })
                    .sum();
                values.push(alt);
            }
            c.check(
                &format!("{name}: index at {xi} equal across all {} chambers", values.len()),
                values.windows(2).all(|w| w[0] == w[1]),
            );
        }
    }
    c.finish();
}

#[test]
fn criterion_07_alternating_sum_consistency() {
    let mut c = Criterion::new("criterion 7: t = -1 consistency");
    for (name, scenario) in builtin_scenarios() {
        let chambers = enumerate_chambers(&scenario).unwrap();
        let terms = all_chamber_terms(&scenario, &chambers).unwrap();
        let window = sample_window(&scenario);
        for xi in &window {
            let index = terms.index_coefficient(xi).unwrap();
            for id in 0..chambers.chambers.len() {
                let prof = terms.profile(id, xi).unwrap();
                let alt: Int = prof
                    .iter()
                    .enumerate()
                    .map(|(k, v)| if k % 2 == 0 { v.clone() } else { -v.clone() })
                    .sum();
                if alt != index {
                    c.check(
                        &format!("{name}: chamber {id} alternating sum at {xi}"),
                        false,
                    );
                }
            }
        }
    }
    c.finish();
}

#[test]
fn criterion_08_weyl_module() {
    let mut c = Criterion::new("criterion 8: Weyl module");
    for (kind, order) in [
        (RootSystemKind::A1, 2usize),
        (RootSystemKind::A2, 6),
        (RootSystemKind::B2, 8),
    ] {
        let rs = RootSystem::new(kind).unwrap();
        let elements = generate_weyl(&rs).unwrap();
        c.check(&format!("{kind:?}: |W| = {order}"), elements.len() == order);
        for w in &elements {
            let expected = if root_length(&rs, w) % 2 == 0 { 1 } else { -1 };
            c.check(
                &format!("{kind:?}: det({}) = (-1)^length", w.word_string()),
                w.determinant() == int(expected) && w.length() == root_length(&rs, w),
            );
        }
    }

    // The adjoint character of A2, via both routes.
    let rs = RootSystem::new(RootSystemKind::A2).unwrap();
    let rho = rs.rho.clone();
    let mut pts: Vec<LatticeVector> = vec![rho.clone()];
    for w in generate_weyl(&rs).unwrap() {
        pts.push(w.apply(&rho));
    }
    let window = window_box(&pts, 1);
    // weyl_character cross-checks extraction against Freudenthal internally
    // and errors on any mismatch.
    let ch = weyl_character(&rs, &rho, &window).unwrap();
    c.check("A2 adjoint has total dimension 8", ch.total() == int(8));
    c.check(
        "weight zero has multiplicity 2",
        ch.coefficient(&lv(&[0, 0])) == int(2),
    );
    let oracle = freudenthal(&rs, &rho).unwrap();
    c.check("extraction equals the Freudenthal oracle", ch == oracle);

    // Flag A1 assembly agrees per weight with the toric line computation
    // under the weight identification eta = 2 xi - r.
    let r = 2i64;
    let (fan, pl) = builtins::cp1(r).unwrap();
    let cp1 = fixed_point_data(&fan, &pl).unwrap();
    let cp1_chambers = enumerate_chambers(&cp1).unwrap();
    let cp1_terms = all_chamber_terms(&cp1, &cp1_chambers).unwrap();
    let cp1_plus = cp1_chambers.resolve(&lv(&[1])).unwrap();

    let (rs1, lambda) = builtins::flag_a1(r).unwrap();
    let flag = flag_fixed_data(&rs1, &lambda).unwrap();
    let flag_chambers = enumerate_chambers(&flag).unwrap();
    let flag_terms = all_chamber_terms(&flag, &flag_chambers).unwrap();
    let flag_plus = flag_chambers.resolve(&lv(&[1])).unwrap();
    for x in -6i64..=6 {
        let cp1_prof = cp1_terms.profile(cp1_plus.id, &lv(&[x])).unwrap();
        let flag_prof = flag_terms.profile(flag_plus.id, &lv(&[2 * x - r])).unwrap();
        c.check(
            &format!("flag-A1 profile at 2*{x}-{r} matches the line at {x}"),
            cp1_prof == flag_prof,
        );
    }

    // The rearranged assembly at t = -1 reproduces the Weyl numerator
    // identity for H^0 = R_lambda on the window.
    let orbits = vec![OrbitDatum::flag(&lambda)];
    let mut cohomology = vec![Vec::new(); 2];
    cohomology[0] = vec![(lambda.clone(), int(1))];
    let window = window_box(&[lv(&[-r - 2]), lv(&[r + 2])], 2);
    let report = assemble_nonabelian(&rs1, &orbits, &lv(&[1]), &cohomology, &window).unwrap();
    c.check("assemblies agree per weight", report.assemblies_agree);
    c.check(
        "fixed-point formula holds at t = -1",
        report.fixed_point_formula_consistent,
    );
    c.check("strong check holds at the torus level", report.torus.holds_on_window);
    c.finish();
}

#[test]
fn criterion_09_numeric_cross_check() {
    let mut c = Criterion::new("criterion 9: numeric cross-check");
    let mut rng = StdRng::seed_from_u64(0x657176);
    for (name, (fan, pl)) in [
        ("cp2 r=2", builtins::cp2(2).unwrap()),
        ("hirzebruch", builtins::hirzebruch(1, 2, 1).unwrap()),
    ] {
        let scenario = fixed_point_data(&fan, &pl).unwrap();
        let chambers = enumerate_chambers(&scenario).unwrap();
        let terms = all_chamber_terms(&scenario, &chambers).unwrap();
        let window = window_box(&scenario.apexes(), 3);
        let ch = index_character(&terms, &window).unwrap();
        let mut tested = 0usize;
        let mut worst: f64 = 0.0;
        while tested < 100 {
            let theta: Vec<f64> = (0..scenario.rank)
                .map(|_| rng.gen_range(-3.0..3.0))
                .collect();
            let at = EvaluationPoint::real(theta);
            // Keep clear of the singular hyperplanes so the 1e-9 tolerance
            // is meaningful for f64 arithmetic.
            let near_singular = scenario.points.iter().any(|p| {
                p.isotropy_weights.iter().any(|lam| {
                    let d = num_complex::Complex64::new(1.0, 0.0)
                        - at.exponential(&lam.neg());
                    d.norm() < 1e-2
                })
            });
            if near_singular {
                continue;
            }
            tested += 1;
            let rational = evaluate_index_rational(&scenario, &at).unwrap();
            let finite = evaluate_character(&ch, &at);
            worst = worst.max((rational - finite).norm());
        }
        c.note(format!("{name}: max |difference| over 100 points = {worst:.3e}"));
        c.check(&format!("{name}: |difference| < 1e-9"), worst < 1e-9);
    }
    c.finish();
}

#[test]
fn criterion_10_oracle_property_suite() {
    let mut c = Criterion::new("criterion 10: oracle property suite");
    let mut rng = StdRng::seed_from_u64(0x6f7261);

    // (a) Per-weight extraction against brute-force bounded convolution.
    let theta1 = lv(&[2, 1]);
    for case in 0..30 {
        let d = rng.gen_range(1..=3);
        let mut denominators = Vec::new();
        while denominators.len() < d {
            let cand = lv(&[rng.gen_range(-3i64..=3), rng.gen_range(-3i64..=3)]);
            if cand.dot(&theta1).is_positive() {
                denominators.push(cand);
            }
        }
        let shift = lv(&[rng.gen_range(-3i64..=3), rng.gen_range(-3i64..=3)]);
        let bound = int(20);
        let term = PolarizedTerm::new(
            0,
            FormalCharacter::exponential(shift.clone()),
            denominators.clone(),
            &theta1,
        )
        .unwrap();
        // Brute-force expansion: every geometric factor truncated at the
        // pairing bound, convolved exactly. Coefficients of the product are
        // exact for weights within the bound of the shift.
        let mut product = FormalCharacter::exponential(shift.clone());
        for lam in &denominators {
            let mut factor = FormalCharacter::zero(2);
            let pair = lam.dot(&theta1);
            let mut m = Int::zero();
            while &m * &pair <= bound {
                factor.add_term(lam.scale(&m).neg(), int(1));
                m += 1;
            }
            product = product.mul(&factor).unwrap();
        }
        let mut compared = 0usize;
        for (w, mult) in product.iter() {
            if shift.sub(w).dot(&theta1) <= bound {
                compared += 1;
                if term.coefficient(w) != *mult {
                    c.check(&format!("case {case}: coefficient at {w}"), false);
                }
            }
        }
        // A few off-support probes on the valid side of the bound.
        for _ in 0..5 {
            let probe = lv(&[rng.gen_range(-8i64..=8), rng.gen_range(-8i64..=8)]);
            let gap = shift.sub(&probe).dot(&theta1);
            if !gap.is_negative() && gap <= bound && product.coefficient(&probe).is_zero() {
                compared += 1;
                if !term.coefficient(&probe).is_zero() {
                    c.check(&format!("case {case}: zero coefficient at {probe}"), false);
                }
            }
        }
        c.check(&format!("case {case}: compared some weights"), compared > 0);
    }

    // (b) Feasibility against rational grid search (step 1/2 on [-4, 4]).
    let mut grid_confirms = 0usize;
    for dim in [2usize, 3] {
        let cases = if dim == 2 { 60 } else { 40 };
        for case in 0..cases {
            let n_constraints = rng.gen_range(1..=8);
            let mut sys = LinearSystem::new(dim);
            for _ in 0..n_constraints {
                let normal: Vec<Rat> = (0..dim)
                    .map(|_| Rat::from_integer(int(rng.gen_range(-3i64..=3))))
                    .collect();
                let offset = Rat::from_integer(int(rng.gen_range(-4i64..=4)));
                let relation = match rng.gen_range(0..10) {
                    0 => Relation::Eq,
                    x if x < 6 => Relation::Ge,
                    _ => Relation::Gt,
                };
                sys.push(Constraint::new(normal, offset, relation)).unwrap();
            }
            let verdict = sys.feasible();
            if let Some(witness) = &verdict {
                c.check(
                    &format!("dim {dim} case {case}: witness satisfies the system"),
                    sys.satisfied_by(witness),
                );
            }
            // Exhaustive half-integer grid.
            let range: Vec<Rat> = (-8..=8)
                .map(|k| Rat::new(int(k), int(2)))
                .collect();
            let mut grid_point_found = false;
            let mut point = vec![Rat::zero(); dim];
            grid_search(&sys, &range, 0, &mut point, &mut grid_point_found);
            if grid_point_found {
                grid_confirms += 1;
                c.check(
                    &format!("dim {dim} case {case}: grid point implies feasible"),
                    verdict.is_some(),
                );
            }
        }
    }
    c.check("grid search confirmed a healthy share of systems", grid_confirms > 20);

    // (c) Lattice point enumeration is invariant under constraint order.
    for case in 0..20 {
        let dim = 2;
        let mut constraints = vec![
            Constraint::ge_int(&lv(&[1, 0]), int(-5)),
            Constraint::ge_int(&lv(&[-1, 0]), int(-5)),
            Constraint::ge_int(&lv(&[0, 1]), int(-5)),
            Constraint::ge_int(&lv(&[0, -1]), int(-5)),
        ];
        for _ in 0..rng.gen_range(1..=4) {
            let normal = lv(&[rng.gen_range(-2i64..=2), rng.gen_range(-2i64..=2)]);
            if normal.is_zero() {
                continue;
            }
            let offset = int(rng.gen_range(-4i64..=4));
            constraints.push(if rng.gen_bool(0.3) {
                Constraint::gt_int(&normal, offset)
            } else {
                Constraint::ge_int(&normal, offset)
            });
        }
        let mut base_sys = LinearSystem::new(dim);
        for ct in &constraints {
            base_sys.push(ct.clone()).unwrap();
        }
        let base = lattice_points(&base_sys).unwrap();
        for _ in 0..4 {
            let mut shuffled = constraints.clone();
            for i in (1..shuffled.len()).rev() {
                let j = rng.gen_range(0..=i);
                shuffled.swap(i, j);
            }
            let mut sys = LinearSystem::new(dim);
            for ct in shuffled {
                sys.push(ct).unwrap();
            }
            c.check(
                &format!("case {case}: permutation-invariant enumeration"),
                lattice_points(&sys).unwrap() == base,
            );
        }
    }
    c.finish();
}

fn grid_search(
    sys: &LinearSystem,
    range: &[Rat],
    coord: usize,
    point: &mut Vec<Rat>,
    found: &mut bool,
) {
    if *found {
        return;
    }
    if coord == sys.dim {
        if sys.satisfied_by(point) {
            *found = true;
        }
        return;
    }
    for v in range {
        point[coord] = v.clone();
        grid_search(sys, range, coord + 1, point, found);
        if *found {
            return;
        }
    }
}

#[allow(dead_code)]
fn chamber_by_rep<'a>(set: &'a ChamberSet, rep: &LatticeVector) -> &'a Chamber {
    set.resolve(rep).unwrap()
}
