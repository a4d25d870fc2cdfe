// Temporary exploration harness; will be replaced by real integration tests.

use eqmorse::builtins;
use eqmorse::chambers::{enumerate_chambers, polarizing_index};
use eqmorse::fan::fixed_point_data;
use eqmorse::lattice::lv;
use eqmorse::morse::{
    all_chamber_terms, detect_obstruction, gamma_contains, gamma_region, sort_candidates,
    support_verdict, window_box,
};

#[test]
#[ignore]
fn probe_jurkiewicz() {
    let t0 = std::time::Instant::now();
    let (fan, pl) = builtins::jurkiewicz().unwrap();
    let scenario = fixed_point_data(&fan, &pl).unwrap();
    let chambers = enumerate_chambers(&scenario).unwrap();
    println!(
        "jurkiewicz: {} hyperplanes, {} chambers, enumeration {:?}",
        chambers.hyperplanes.len(),
        chambers.chambers.len(),
        t0.elapsed()
    );

    // Chambers inside the cone spanned by {g, l, m}: the cone is cut by
    // arrangement walls, so find every chamber whose representative lies in
    // its interior-closure.
    let g = lv(&[-1, -2, -1]);
    let l = lv(&[-2, -2, -1]);
    let m = lv(&[-1, -1, -1]);
    let inside: Vec<usize> = chambers
        .chambers
        .iter()
        .filter(|c| {
            // rep = x g + y l + z m with x,y,z >= 0?
            use eqmorse::lattice::{rational_solve, Rat};
            use num_traits::Signed;
            let a: Vec<Vec<Rat>> = (0..3)
                .map(|i| {
                    [&g, &l, &m]
                        .iter()
                        .map(|v| Rat::from_integer(v.0[i].clone()))
                        .collect()
                })
                .collect();
            let b: Vec<Rat> = c.representative.to_rational();
            matches!(rational_solve(&a, &b), Ok(Some(sol)) if sol.iter().all(|x| !x.is_negative()))
        })
        .map(|c| c.id)
        .collect();
    println!("chambers inside cone(g,l,m): {inside:?}");
    let zero = lv(&[0, 0, 0]);
    let terms = all_chamber_terms(&scenario, &chambers).unwrap();
    for &cid in &inside {
        let c = &chambers.chambers[cid];
        println!("-- chamber {cid} rep {}", c.representative);
        for p in &scenario.points {
            let region = gamma_region(p, c).unwrap();
            if gamma_contains(&region, &zero) {
                println!("   0 in Gamma^(p={}, C) degree {}", p.label, region.degree);
            }
        }
        let minus = chambers.opposite(c);
        for p in &scenario.points {
            let region = gamma_region(p, minus).unwrap();
            if gamma_contains(&region, &zero) {
                println!("   0 in Gamma^(p={}, -C) degree {}", p.label, region.degree);
            }
        }
        let prof = terms.profile(c.id, &zero).unwrap();
        println!("   profile at 0: {prof:?}");
    }
    let t1 = std::time::Instant::now();
    let ind = terms.index_coefficient(&zero).unwrap();
    println!("index(0) = {ind}, time {:?}", t1.elapsed());

    let t2 = std::time::Instant::now();
    let candidates = sort_candidates(window_box(&[lv(&[-2, -2, -2]), lv(&[2, 2, 2])], 0));
    let witness = detect_obstruction(&scenario, &chambers, Some(candidates)).unwrap();
    println!("witness: {witness:?}, time {:?}", t2.elapsed());

    // Index over a window: how long do 50 weights take across all chambers?
    let t3 = std::time::Instant::now();
    let window = window_box(&scenario.apexes(), 1);
    let mut n = 0;
    for xi in window.iter().take(50) {
        let _ = terms.index_coefficient(xi).unwrap();
        n += 1;
    }
    println!("{n} windowed index coefficients across all chambers: {:?}", t3.elapsed());
}

#[test]
#[ignore]
fn probe_tolman() {
    let scenario = builtins::tolman().unwrap();
    let chambers = enumerate_chambers(&scenario).unwrap();
    println!(
        "tolman: {} hyperplanes, {} chambers",
        chambers.hyperplanes.len(),
        chambers.chambers.len()
    );
    let c = chambers
        .resolve(&builtins::tolman_chamber_representative())
        .unwrap();
    let minus = chambers.opposite(c);
    let xi = builtins::tolman_obstruction_weight();
    for (name, ch) in [("C", c), ("-C", minus)] {
        for p in &scenario.points {
            let region = gamma_region(p, ch).unwrap();
            if gamma_contains(&region, &xi) {
                println!(
                    "(1,2) in Gamma^(p={}, {name}) degree {} (n^p = {})",
                    p.label,
                    region.degree,
                    polarizing_index(p, ch).unwrap()
                );
            }
        }
    }
    // All witnesses in the default box, in scan order.
    let terms = all_chamber_terms(&scenario, &chambers).unwrap();
    let candidates = sort_candidates(window_box(&scenario.apexes(), 3));
    let mut witnesses = Vec::new();
    for cand in &candidates {
        let v = support_verdict(&scenario, &chambers, &terms, cand).unwrap();
        if let Some(w) = v.obstructions.into_iter().next() {
            witnesses.push((cand.clone(), w.degree));
        }
    }
    println!("tolman witnesses in scan order: {witnesses:?}");
}

#[test]
#[ignore]
fn probe_hirzebruch() {
    let (fan, pl) = builtins::hirzebruch(1, 2, 1).unwrap();
    let coh = eqmorse::morse::toric_cohomology_2d(&fan, &pl).unwrap();
    println!("H0: {:?}", coh.coeff(0));
    println!("H1: {:?}", coh.coeff(1));
    println!("H2: {:?}", coh.coeff(2));
    let (h0, hn) = eqmorse::morse::toric_h0_hn(&fan, &pl).unwrap();
    println!("h0 pts: {h0:?}\nh2 pts: {hn:?}");
}

#[test]
#[ignore]
fn probe_flag_a2() {
    let t0 = std::time::Instant::now();
    let (rs, lambda) = builtins::flag_a2((1, 1)).unwrap();
    let scenario = eqmorse::weyl::flag_fixed_data(&rs, &lambda).unwrap();
    let chambers = enumerate_chambers(&scenario).unwrap();
    println!(
        "flag-a2: {} hyperplanes, {} chambers, {:?}",
        chambers.hyperplanes.len(),
        chambers.chambers.len(),
        t0.elapsed()
    );
    let window = window_box(&[lv(&[2, 2]), lv(&[-2, -2])], 2);
    let ch = eqmorse::weyl::weyl_character(&rs, &lambda, &window).unwrap();
    println!("char total {} weight0 {}", ch.total(), ch.coefficient(&lv(&[0, 0])));
}

#[test]
#[ignore]
fn probe_cpn() {
    let t0 = std::time::Instant::now();
    let (fan, pl) = builtins::cpn(3, 1).unwrap();
    let scenario = fixed_point_data(&fan, &pl).unwrap();
    let chambers = enumerate_chambers(&scenario).unwrap();
    println!(
        "cp3: {} hyperplanes, {} chambers, {:?}",
        chambers.hyperplanes.len(),
        chambers.chambers.len(),
        t0.elapsed()
    );
}
