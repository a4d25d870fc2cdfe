//! Built-in example inputs: projective spaces, Hirzebruch surfaces, the
//! non-convex smooth toric 3-fold with 22 fixed points, the rank-2
//! six-fixed-point scenario with no invariant Kaehler structure, and flag
//! scenarios for the supported root systems.

use crate::charring::FormalCharacter;
use crate::error::{Error, Result};
use crate::fan::{Fan, PLFunction};
use crate::lattice::{lv, LatticeVector};
use crate::scenario::{FixedPointDatum, Scenario};
use crate::weyl::{RootSystem, RootSystemKind};

/// The projective line: rays +-e1, cones {0}, {1}; phi = (0, -r).
pub fn cp1(r: i64) -> Result<(Fan, PLFunction)> {
    let fan = Fan::new(
        1,
        vec![lv(&[1]), lv(&[-1])],
        vec![vec![0], vec![1]],
        Some(vec!["v1".into(), "v0".into()]),
    )?;
    let pl = PLFunction::from_i64(&fan, &[0, -r])?;
    Ok((fan, pl))
}

/// The projective plane: rays e1, e2, -e1-e2; phi = (0, 0, -r).
pub fn cp2(r: i64) -> Result<(Fan, PLFunction)> {
    cpn(2, r)
}

/// Projective n-space: rays e1..en and v0 = -(e1+..+en); every n-subset
/// spans a maximal cone; phi(v0) = -r, phi(e_i) = 0.
pub fn cpn(n: usize, r: i64) -> Result<(Fan, PLFunction)> {
    if n == 0 || n > 4 {
        return Err(Error::input("projective space rank must be 1..=4"));
    }
    let mut rays = Vec::with_capacity(n + 1);
    let mut labels = Vec::with_capacity(n + 1);
    for i in 0..n {
        let mut coords = vec![0i64; n];
        coords[i] = 1;
        rays.push(lv(&coords));
        labels.push(format!("v{}", i + 1));
    }
    rays.push(lv(&vec![-1i64; n]));
    labels.push("v0".into());
    let mut cones = Vec::with_capacity(n + 1);
    for skip in 0..=n {
        let cone: Vec<usize> = (0..=n).filter(|&i| i != skip).collect();
        cones.push(cone);
    }
    let fan = Fan::new(n, rays, cones, Some(labels))?;
    let mut values = vec![0i64; n];
    values.push(-r);
    let pl = PLFunction::from_i64(&fan, &values)?;
    Ok((fan, pl))
}

/// The Hirzebruch surface: rays v1 = e1, v2 = e2, v3 = -e1, v4 = -a e1 - e2,
/// cones {v1,v2}, {v2,v3}, {v3,v4}, {v4,v1}; phi = (0, 0, -r, -s).
pub fn hirzebruch(a: i64, r: i64, s: i64) -> Result<(Fan, PLFunction)> {
    if a < 0 {
        return Err(Error::input("the Hirzebruch parameter a must be >= 0"));
    }
    let fan = Fan::new(
        2,
        vec![lv(&[1, 0]), lv(&[0, 1]), lv(&[-1, 0]), lv(&[-a, -1])],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        Some(vec!["v1".into(), "v2".into(), "v3".into(), "v4".into()]),
    )?;
    let pl = PLFunction::from_i64(&fan, &[0, 0, -r, -s])?;
    Ok((fan, pl))
}

/// Ray generators of the non-convex triangulated fan: the outer generators
/// a..f and the subdivision generators g..m.
pub const JURKIEWICZ_RAYS: [(&str, [i64; 3]); 13] = [
    ("a", [1, 0, 0]),
    ("b", [0, 1, 0]),
    ("c", [0, 0, 1]),
    ("d", [0, -2, -1]),
    ("e", [-1, 0, -2]),
    ("f", [-2, -1, 0]),
    ("g", [-1, -2, -1]),
    ("h", [-1, -1, -2]),
    ("i", [-2, -1, -1]),
    ("j", [-1, -2, -2]),
    ("k", [-2, -1, -2]),
    ("l", [-2, -2, -1]),
    ("m", [-1, -1, -1]),
];

/// The 22 maximal cones: 7 outside the subdivided cone {d,e,f} and 15
/// triangulating it (the center ray m is joined to every boundary cell).
pub const JURKIEWICZ_CONES: [[&str; 3]; 22] = [
    // outer cones
    ["a", "b", "c"],
    ["a", "c", "f"],
    ["a", "b", "d"],
    ["b", "c", "e"],
    ["a", "d", "f"],
    ["b", "d", "e"],
    ["c", "e", "f"],
    // triangulation of {d, e, f}
    ["d", "f", "g"],
    ["d", "g", "m"],
    ["d", "m", "j"],
    ["d", "j", "h"],
    ["d", "h", "e"],
    ["f", "g", "l"],
    ["f", "l", "m"],
    ["f", "m", "i"],
    ["f", "i", "e"],
    ["e", "i", "k"],
    ["e", "k", "m"],
    ["e", "m", "h"],
    ["m", "i", "k"],
    ["m", "h", "j"],
    ["g", "l", "m"],
];

fn jurkiewicz_ray_index(name: &str) -> usize {
    JURKIEWICZ_RAYS
        .iter()
        .position(|(n, _)| *n == name)
        .expect("known ray name")
}

/// The smooth complete non-convex fan with 22 maximal cones.
pub fn jurkiewicz_fan() -> Result<Fan> {
    let rays: Vec<LatticeVector> = JURKIEWICZ_RAYS.iter().map(|(_, c)| lv(c)).collect();
    let labels: Vec<String> = JURKIEWICZ_RAYS.iter().map(|(n, _)| n.to_string()).collect();
    let cones: Vec<Vec<usize>> = JURKIEWICZ_CONES
        .iter()
        .map(|cone| cone.iter().map(|n| jurkiewicz_ray_index(n)).collect())
        .collect();
    Fan::new(3, rays, cones, Some(labels))
}

/// The line bundle violating the strong inequalities: zero on the cone
/// {a,b,c}, the functional -(e1*+e2*+e3*) on the subdivided region, linear
/// interpolation between. In ray values: a,b,c -> 0; d,e,f -> 3;
/// g,h,i -> 4; j,k,l -> 5; m -> 3.
pub fn jurkiewicz() -> Result<(Fan, PLFunction)> {
    let fan = jurkiewicz_fan()?;
    let pl = PLFunction::from_i64(&fan, &[0, 0, 0, 3, 3, 3, 4, 4, 4, 5, 5, 5, 3])?;
    Ok((fan, pl))
}

/// The 8-cone variant before subdivision, with the non-smooth cone {d,e,f}.
pub fn jurkiewicz_coarse_fan() -> Result<Fan> {
    let rays: Vec<LatticeVector> = JURKIEWICZ_RAYS[..6].iter().map(|(_, c)| lv(c)).collect();
    let labels: Vec<String> = JURKIEWICZ_RAYS[..6]
        .iter()
        .map(|(n, _)| n.to_string())
        .collect();
    let mut cones: Vec<Vec<usize>> = JURKIEWICZ_CONES[..7]
        .iter()
        .map(|cone| cone.iter().map(|n| jurkiewicz_ray_index(n)).collect())
        .collect();
    cones.push(vec![
        jurkiewicz_ray_index("d"),
        jurkiewicz_ray_index("e"),
        jurkiewicz_ray_index("f"),
    ]);
    Fan::new(3, rays, cones, Some(labels))
}

/// The two families of wall-crossing convexity constraints whose sums
/// contradict each other, as (cone, outside ray) index pairs: the first
/// family aggregates to 3(phi_a+phi_b+phi_c) + (phi_d+phi_e+phi_f) > 0 and
/// the second to its negation.
pub fn jurkiewicz_obstruction_families(fan: &Fan) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
    let cone = |names: [&str; 3]| -> usize {
        let idx: Vec<usize> = names.iter().map(|n| jurkiewicz_ray_index(n)).collect();
        fan.cone_index_by_rays(&idx).expect("cone present")
    };
    let ray = jurkiewicz_ray_index;
    let first = vec![
        (cone(["a", "d", "f"]), ray("c")),
        (cone(["b", "d", "e"]), ray("a")),
        (cone(["c", "e", "f"]), ray("b")),
    ];
    let second = vec![
        (cone(["a", "b", "d"]), ray("f")),
        (cone(["b", "c", "e"]), ray("d")),
        (cone(["a", "c", "f"]), ray("e")),
    ];
    (first, second)
}

/// Isotropy and fiber data of the six-fixed-point Hamiltonian T^2-manifold
/// with no invariant Kaehler structure. The isotropy weights are the
/// negatives of the listed generator sets; the fiber weights are read off
/// the invariant line bundle.
pub fn tolman() -> Result<Scenario> {
    let raw: [(&str, [[i64; 2]; 3], [i64; 2]); 6] = [
        ("p1", [[1, 0], [0, 1], [1, 1]], [0, 0]),
        ("p2", [[1, 0], [0, 1], [-1, -1]], [3, 3]),
        ("p3", [[1, 0], [0, -1], [1, -1]], [0, 2]),
        ("p4", [[-1, 0], [0, -1], [1, -1]], [3, 2]),
        ("p5", [[-1, 0], [-1, 1], [-2, 1]], [5, 0]),
        ("p6", [[-1, 0], [-1, 1], [2, -1]], [-1, 3]),
    ];
    let mut points = Vec::with_capacity(6);
    for (label, weights, fiber) in raw {
        let isotropy: Vec<LatticeVector> = weights.iter().map(|w| lv(w).neg()).collect();
        points.push(FixedPointDatum::new(
            label,
            isotropy,
            FormalCharacter::exponential(lv(&fiber)),
        )?);
    }
    Scenario::new(2, 3, points)
}

/// The weight certifying the Tolman obstruction, e1* + 2 e2*.
pub fn tolman_obstruction_weight() -> LatticeVector {
    lv(&[1, 2])
}

/// Interior representative of the chamber spanned by {e1 - e2, -e2}.
pub fn tolman_chamber_representative() -> LatticeVector {
    lv(&[1, -2])
}

/// Interior representative of the chamber used for the 22-cone
/// counterexample. Arrangement walls subdivide the cone spanned by
/// {g, l, m}, so a representative of one of its sub-chambers is chosen:
/// 2g + l + 4m, which lies off every wall.
pub fn jurkiewicz_chamber_representative() -> LatticeVector {
    lv(&[-8, -10, -7])
}

/// Flag scenario of the rank-1 group, highest weight lambda (in the
/// fundamental-weight coordinate).
pub fn flag_a1(lambda: i64) -> Result<(RootSystem, LatticeVector)> {
    if lambda < 0 {
        return Err(Error::input("lambda must be dominant"));
    }
    Ok((RootSystem::new(RootSystemKind::A1)?, lv(&[lambda])))
}

/// Flag scenario of the rank-2 special unitary group.
pub fn flag_a2(lambda: (i64, i64)) -> Result<(RootSystem, LatticeVector)> {
    if lambda.0 < 0 || lambda.1 < 0 {
        return Err(Error::input("lambda must be dominant"));
    }
    Ok((
        RootSystem::new(RootSystemKind::A2)?,
        lv(&[lambda.0, lambda.1]),
    ))
}

/// Kinds of builtin inputs the front end can hand out.
pub enum BuiltinData {
    Toric(Fan, PLFunction),
    FixedPoints(Scenario),
    Flag(RootSystem, LatticeVector),
}

/// Parameters accepted by [`builtin`].
#[derive(Clone, Copy, Debug, Default)]
pub struct BuiltinParams {
    pub r: Option<i64>,
    pub s: Option<i64>,
    pub a: Option<i64>,
    pub n: Option<usize>,
    pub lambda: Option<(i64, i64)>,
}

pub fn builtin(name: &str, params: &BuiltinParams) -> Result<BuiltinData> {
    let r = params.r.unwrap_or(1);
    match name {
        "cp1" => cp1(r).map(|(f, p)| BuiltinData::Toric(f, p)),
        "cp2" => cp2(r).map(|(f, p)| BuiltinData::Toric(f, p)),
        "cpn" => {
            let n = params.n.unwrap_or(3);
            cpn(n, r).map(|(f, p)| BuiltinData::Toric(f, p))
        }
        "hirzebruch" => {
            let a = params.a.unwrap_or(1);
            let s = params.s.unwrap_or(1);
            hirzebruch(a, params.r.unwrap_or(2), s).map(|(f, p)| BuiltinData::Toric(f, p))
        }
        "jurkiewicz" => jurkiewicz().map(|(f, p)| BuiltinData::Toric(f, p)),
        "tolman" => tolman().map(BuiltinData::FixedPoints),
        "flag-a1" => {
            let l = params.lambda.map(|l| l.0).or(params.r).unwrap_or(1);
            flag_a1(l).map(|(rs, lam)| BuiltinData::Flag(rs, lam))
        }
        "flag-a2" => {
            let l = params.lambda.unwrap_or((1, 1));
            flag_a2(l).map(|(rs, lam)| BuiltinData::Flag(rs, lam))
        }
        other => Err(Error::input(format!("unknown builtin example {other}"))),
    }
}

pub fn builtin_names() -> &'static [&'static str] {
    &[
        "cp1",
        "cp2",
        "cpn",
        "hirzebruch",
        "jurkiewicz",
        "tolman",
        "flag-a1",
        "flag-a2",
    ]
}
