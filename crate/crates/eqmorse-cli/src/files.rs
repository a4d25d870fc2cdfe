//! On-disk formats: TOML documents for fans, raw fixed-point scenarios, and
//! cohomology claims.
//!
//! A fan file:
//!
//! ```toml
//! rank = 2
//! rays = [[1, 0], [0, 1], [-1, -1]]
//! max_cones = [[0, 1], [0, 2], [1, 2]]   # 0-based ray indices
//! pl = [0, 0, -2]                        # optional, one value per ray
//! labels = ["v1", "v2", "v0"]            # optional
//! ```
//!
//! A scenario file for non-toric fixed-point data:
//!
//! ```toml
//! rank = 2
//! dim = 3
//! [[fixed_points]]
//! label = "p1"
//! weights = [[-1, 0], [0, -1], [-1, -1]]
//! fiber = [{ weight = [0, 0], mult = 1 }]
//! ```
//!
//! A cohomology file lists (degree, weight, multiplicity) triples:
//!
//! ```toml
//! entries = [{ degree = 0, weight = [0, 0], mult = 1 }]
//! ```

use eqmorse::charring::{FormalCharacter, MorsePolynomial};
use eqmorse::fan::{Fan, PLFunction};
use eqmorse::lattice::{Int, LatticeVector};
use eqmorse::scenario::{FixedPointDatum, Scenario};
use serde::{Deserialize, Serialize};
use std::path::Path;

use crate::CliError;

#[derive(Serialize, Deserialize, Debug, Default)]
pub struct InputFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rays: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_cones: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pl: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixed_points: Option<Vec<FixedPointFile>>,
}

#[derive(Serialize, Deserialize, Debug)]
pub struct FixedPointFile {
    pub label: String,
    pub weights: Vec<Vec<i64>>,
    pub fiber: Vec<FiberTerm>,
}

#[derive(Serialize, Deserialize, Debug)]
pub struct FiberTerm {
    pub weight: Vec<i64>,
    pub mult: i64,
}

#[derive(Serialize, Deserialize, Debug)]
pub struct CohomologyFile {
    pub entries: Vec<CohomologyEntry>,
}

#[derive(Serialize, Deserialize, Debug)]
pub struct CohomologyEntry {
    pub degree: usize,
    pub weight: Vec<i64>,
    pub mult: i64,
}

pub enum LoadedInput {
    Toric(Fan, Option<PLFunction>),
    FixedPoints(Scenario),
}

fn to_lv(coords: &[i64]) -> LatticeVector {
    LatticeVector(coords.iter().map(|&c| Int::from(c)).collect())
}

pub fn load_input(path: &Path) -> Result<LoadedInput, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    let file: InputFile = toml::from_str(&text)
        .map_err(|e| CliError::input(format!("cannot parse {}: {e}", path.display())))?;
    input_from_file(file)
}

pub fn input_from_file(file: InputFile) -> Result<LoadedInput, CliError> {
    if let Some(points) = file.fixed_points {
        let rank = file
            .rank
            .ok_or_else(|| CliError::input("scenario file needs a rank"))?;
        let dim = file
            .dim
            .ok_or_else(|| CliError::input("scenario file needs a dim"))?;
        let mut data = Vec::new();
        for p in points {
            let weights: Vec<LatticeVector> = p.weights.iter().map(|w| to_lv(w)).collect();
            let mut fiber = FormalCharacter::zero(rank);
            for t in &p.fiber {
                fiber.add_term(to_lv(&t.weight), Int::from(t.mult));
            }
            data.push(FixedPointDatum::new(p.label, weights, fiber).map_err(CliError::from)?);
        }
        let scenario = Scenario::new(rank, dim, data).map_err(CliError::from)?;
        return Ok(LoadedInput::FixedPoints(scenario));
    }
    let rank = file.rank.ok_or_else(|| CliError::input("fan file needs a rank"))?;
    let rays: Vec<LatticeVector> = file
        .rays
        .ok_or_else(|| CliError::input("fan file needs rays"))?
        .iter()
        .map(|r| to_lv(r))
        .collect();
    let cones = file
        .max_cones
        .ok_or_else(|| CliError::input("fan file needs max_cones"))?;
    let fan = Fan::new(rank, rays, cones, file.labels).map_err(CliError::from)?;
    let pl = match file.pl {
        None => None,
        Some(values) => Some(PLFunction::from_i64(&fan, &values).map_err(CliError::from)?),
    };
    Ok(LoadedInput::Toric(fan, pl))
}

fn int_to_i64(v: &Int) -> i64 {
    use num_traits::ToPrimitive;
    v.to_i64().expect("value fits in i64 for serialization")
}

pub fn fan_to_file(fan: &Fan, pl: Option<&PLFunction>) -> InputFile {
    InputFile {
        rank: Some(fan.rank),
        rays: Some(
            fan.rays
                .iter()
                .map(|r| r.0.iter().map(int_to_i64).collect())
                .collect(),
        ),
        max_cones: Some(fan.max_cones.clone()),
        pl: pl.map(|p| p.ray_values.iter().map(int_to_i64).collect()),
        labels: fan.labels.clone(),
        ..Default::default()
    }
}

pub fn scenario_to_file(scenario: &Scenario) -> InputFile {
    InputFile {
        rank: Some(scenario.rank),
        dim: Some(scenario.dim),
        fixed_points: Some(
            scenario
                .points
                .iter()
                .map(|p| FixedPointFile {
                    label: p.label.clone(),
                    weights: p
                        .isotropy_weights
                        .iter()
                        .map(|w| w.0.iter().map(int_to_i64).collect())
                        .collect(),
                    fiber: p
                        .fiber_character
                        .iter()
                        .map(|(w, m)| FiberTerm {
                            weight: w.0.iter().map(int_to_i64).collect(),
                            mult: int_to_i64(m),
                        })
                        .collect(),
                })
                .collect(),
        ),
        ..Default::default()
    }
}

pub fn write_input(path: &Path, file: &InputFile) -> Result<(), CliError> {
    let text = toml::to_string(file)
        .map_err(|e| CliError::input(format!("cannot serialize input: {e}")))?;
    std::fs::write(path, text)
        .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))
}

/// Reads a cohomology claim into a Morse polynomial; degrees are validated
/// against `dim` and multiplicities must be nonnegative.
pub fn load_cohomology(
    path: &Path,
    rank: usize,
    dim: usize,
) -> Result<MorsePolynomial, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    let file: CohomologyFile = toml::from_str(&text)
        .map_err(|e| CliError::input(format!("cannot parse {}: {e}", path.display())))?;
    let mut coh = MorsePolynomial::zero(rank, dim);
    for entry in &file.entries {
        if entry.degree > dim {
            return Err(CliError::input(format!(
                "cohomology degree {} exceeds the complex dimension {dim}",
                entry.degree
            )));
        }
        if entry.mult < 0 {
            return Err(CliError::input("cohomology multiplicities must be >= 0"));
        }
        if entry.weight.len() != rank {
            return Err(CliError::input("cohomology weight has the wrong rank"));
        }
        coh.coeff_mut(entry.degree)
            .add_term(to_lv(&entry.weight), Int::from(entry.mult));
    }
    Ok(coh)
}
