//! Command-line front end: scenario I/O, built-in examples, reports, and
//! figure-style SVG/CSV emitters.
//!
//! Exit codes: 0 = consistent, 1 = violation or obstruction found,
//! 2 = input error.

mod files;
mod svg;

use clap::{Args, Parser, Subcommand, ValueEnum};
use eqmorse::builtins::{self, BuiltinData, BuiltinParams};
use eqmorse::chambers::{enumerate_chambers, ChamberSet};
use eqmorse::fan::{fixed_point_data, validate, Fan, PLFunction};
use eqmorse::lattice::{Int, LatticeVector};
use eqmorse::morse::{
    all_chamber_terms, detect_obstruction, gamma_contains, gamma_region, support_verdict,
    toric_cohomology_2d, toric_h0_hn, verify_strong, weak_check, window_box, DegreeVerdict,
};
use eqmorse::scenario::Scenario;
use eqmorse::weyl::{
    assemble_nonabelian, flag_fixed_data, generate_weyl, weyl_character, OrbitDatum, RootSystem,
    RootSystemKind,
};
use num_traits::{ToPrimitive, Zero};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug)]
pub struct CliError {
    message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
        }
    }
}

impl From<eqmorse::Error> for CliError {
    fn from(e: eqmorse::Error) -> Self {
        CliError {
            message: e.to_string(),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "eqmorse",
    about = "Exact equivariant holomorphic Morse inequality checks on fixed-point data",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Top,
}

#[derive(Subcommand)]
enum Top {
    /// Run a command on a built-in example
    Example(ExampleCmd),
    /// Fan sanity checks: simplicial, smooth, complete
    Validate(WithInput),
    /// Isotropy weights and fiber characters at the fixed points
    FixedPoints(WithInput),
    /// Enumerate the action chambers of the isotropy arrangement
    Chambers(WithInput),
    /// Equivariant index coefficients (one weight or a window)
    Index(WithInput),
    /// Gamma-regions for one chamber, with optional membership queries
    Gamma(WithInput),
    /// Support verdicts (forced / excluded) over a window
    Verdict(WithInput),
    /// Strong and weak inequality checks against a cohomology file
    MorseCheck(WithInput),
    /// Scan for a forced/excluded collision
    Obstruction(WithInput),
    /// Reconstruct the cohomology of a line bundle on a toric surface
    ToricCohomology(WithInput),
    /// Root system, Weyl group, characters, and the non-Abelian assembly
    Flag(FlagCmd),
}

#[derive(Args)]
struct ExampleCmd {
    /// One of: cp1, cp2, cpn, hirzebruch, jurkiewicz, tolman, flag-a1, flag-a2
    name: String,
    /// First Chern parameter (cp1/cp2/cpn/hirzebruch/flag-a1)
    #[arg(long, allow_hyphen_values = true)]
    r: Option<i64>,
    /// Second line-bundle parameter (hirzebruch)
    #[arg(long, allow_hyphen_values = true)]
    s: Option<i64>,
    /// Surface parameter (hirzebruch)
    #[arg(long)]
    a: Option<i64>,
    /// Ambient dimension (cpn)
    #[arg(long)]
    n: Option<usize>,
    /// Highest weight, e.g. "2" or "1,1" (flag examples)
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[command(subcommand)]
    action: Action,
}

#[derive(Subcommand, Clone)]
enum Action {
    Validate(CommonOpts),
    FixedPoints(CommonOpts),
    Chambers(CommonOpts),
    Index(CommonOpts),
    Gamma(CommonOpts),
    Verdict(CommonOpts),
    MorseCheck(CommonOpts),
    Obstruction(CommonOpts),
    ToricCohomology(CommonOpts),
    Flag(FlagOpts),
    /// Write the example's input file
    Export(ExportOpts),
}

#[derive(Args, Clone, Default)]
struct CommonOpts {
    /// Integral interior point selecting an action chamber, e.g. "2,1"
    #[arg(long, allow_hyphen_values = true)]
    chamber: Option<String>,
    /// Query a single weight, e.g. "1,2"
    #[arg(long, allow_hyphen_values = true)]
    weight: Option<String>,
    /// Window margin around the fiber-weight bounding box
    #[arg(long, default_value_t = 3)]
    margin: i64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write a rank-2 picture here
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Cohomology claim file (morse-check)
    #[arg(long)]
    cohomology: Option<PathBuf>,
}

#[derive(Args)]
struct WithInput {
    /// Fan or scenario file (TOML)
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    opts: CommonOpts,
}

#[derive(Args, Clone)]
struct FlagCmd {
    /// Root system: a1, a1xa1, a2, b2, g2, a3
    #[arg(long = "type")]
    kind: Option<String>,
    /// Highest weight, e.g. "1,1"
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long, default_value_t = 3)]
    margin: i64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Clone)]
struct FlagOpts {
    #[arg(long, default_value_t = 3)]
    margin: i64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Clone)]
struct ExportOpts {
    /// Destination path
    #[arg(long)]
    out: PathBuf,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq, Default)]
enum Format {
    #[default]
    Text,
    Structured,
    Csv,
}

enum Input {
    Toric(Fan, Option<PLFunction>),
    FixedPoints(Scenario),
    Flag(RootSystem, LatticeVector),
}

fn parse_vector(text: &str, rank: usize) -> Result<LatticeVector, CliError> {
    let coords: Result<Vec<Int>, _> = text
        .split(',')
        .map(|t| t.trim().parse::<i64>().map(Int::from))
        .collect();
    let coords = coords.map_err(|_| CliError::input(format!("cannot parse vector '{text}'")))?;
    if coords.len() != rank {
        return Err(CliError::input(format!(
            "vector '{text}' has {} coordinates, expected {rank}",
            coords.len()
        )));
    }
    Ok(LatticeVector(coords))
}

fn builtin_input(cmd: &ExampleCmd) -> Result<Input, CliError> {
    let lambda = match &cmd.lambda {
        None => None,
        Some(text) => {
            let parts: Result<Vec<i64>, _> =
                text.split(',').map(|t| t.trim().parse::<i64>()).collect();
            let parts =
                parts.map_err(|_| CliError::input(format!("cannot parse lambda '{text}'")))?;
            match parts.as_slice() {
                [x] => Some((*x, 0)),
                [x, y] => Some((*x, *y)),
                _ => return Err(CliError::input("lambda takes one or two coordinates")),
            }
        }
    };
    let params = BuiltinParams {
        r: cmd.r,
        s: cmd.s,
        a: cmd.a,
        n: cmd.n,
        lambda,
    };
    match builtins::builtin(&cmd.name, &params)? {
        BuiltinData::Toric(fan, pl) => Ok(Input::Toric(fan, Some(pl))),
        BuiltinData::FixedPoints(s) => Ok(Input::FixedPoints(s)),
        BuiltinData::Flag(rs, lam) => Ok(Input::Flag(rs, lam)),
    }
}

impl Input {
    fn scenario(&self) -> Result<Scenario, CliError> {
        match self {
            Input::Toric(fan, Some(pl)) => Ok(fixed_point_data(fan, pl)?),
            Input::Toric(_, None) => Err(CliError::input(
                "this command needs fixed-point data; add a pl field to the fan file",
            )),
            Input::FixedPoints(s) => Ok(s.clone()),
            Input::Flag(rs, lambda) => Ok(flag_fixed_data(rs, lambda)?),
        }
    }
}

fn resolve_chamber<'a>(
    chambers: &'a ChamberSet,
    opts: &CommonOpts,
) -> Result<Option<&'a eqmorse::chambers::Chamber>, CliError> {
    match &opts.chamber {
        None => Ok(None),
        Some(text) => {
            let theta = parse_vector(text, chambers.rank)?;
            Ok(Some(chambers.resolve(&theta)?))
        }
    }
}

fn int_i64(v: &Int) -> i64 {
    v.to_i64().unwrap_or(i64::MAX)
}

fn vector_json(v: &LatticeVector) -> serde_json::Value {
    serde_json::Value::Array(v.0.iter().map(|c| serde_json::json!(int_i64(c))).collect())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Top::Example(cmd) => {
            let input = builtin_input(&cmd)?;
            match &cmd.action {
                Action::Validate(o) => cmd_validate(&input, o),
                Action::FixedPoints(o) => cmd_fixed_points(&input, o),
                Action::Chambers(o) => cmd_chambers(&input, o),
                Action::Index(o) => cmd_index(&input, o),
                Action::Gamma(o) => cmd_gamma(&input, o),
                Action::Verdict(o) => cmd_verdict(&input, o),
                Action::MorseCheck(o) => cmd_morse_check(&input, o),
                Action::Obstruction(o) => cmd_obstruction(&input, o),
                Action::ToricCohomology(o) => cmd_toric_cohomology(&input, o),
                Action::Flag(o) => match &input {
                    Input::Flag(rs, lambda) => {
                        cmd_flag(rs, Some(lambda.clone()), o.margin, o.format)
                    }
                    _ => Err(CliError::input("flag reports need a flag example")),
                },
                Action::Export(o) => cmd_export(&input, o),
            }
        }
        Top::Validate(w) => with_file(&w, cmd_validate),
        Top::FixedPoints(w) => with_file(&w, cmd_fixed_points),
        Top::Chambers(w) => with_file(&w, cmd_chambers),
        Top::Index(w) => with_file(&w, cmd_index),
        Top::Gamma(w) => with_file(&w, cmd_gamma),
        Top::Verdict(w) => with_file(&w, cmd_verdict),
        Top::MorseCheck(w) => with_file(&w, cmd_morse_check),
        Top::Obstruction(w) => with_file(&w, cmd_obstruction),
        Top::ToricCohomology(w) => with_file(&w, cmd_toric_cohomology),
        Top::Flag(cmd) => {
            let kind = cmd
                .kind
                .as_deref()
                .ok_or_else(|| CliError::input("flag needs --type (a1, a1xa1, a2, b2, g2, a3)"))?;
            let rs = RootSystem::new(RootSystemKind::from_name(kind)?)?;
            let lambda = match &cmd.lambda {
                None => None,
                Some(text) => Some(parse_vector(text, rs.rank)?),
            };
            cmd_flag(&rs, lambda, cmd.margin, cmd.format)
        }
    }
}

fn with_file(
    w: &WithInput,
    f: impl Fn(&Input, &CommonOpts) -> Result<u8, CliError>,
) -> Result<u8, CliError> {
    let input = match files::load_input(&w.input)? {
        files::LoadedInput::Toric(fan, pl) => Input::Toric(fan, pl),
        files::LoadedInput::FixedPoints(s) => Input::FixedPoints(s),
    };
    f(&input, &w.opts)
}

fn no_csv(format: Format) -> Result<(), CliError> {
    if format == Format::Csv {
        return Err(CliError::input("csv output is not available for this command"));
    }
    Ok(())
}

fn cmd_validate(input: &Input, opts: &CommonOpts) -> Result<u8, CliError> {
    no_csv(opts.format)?;
    let Input::Toric(fan, _) = input else {
        return Err(CliError::input("validate needs a fan input"));
    };
    let report = validate(fan);
    match opts.format {
        Format::Structured => println!(
            "{}",
            serde_json::json!({
                "rays": fan.rays.len(),
                "max_cones": fan.max_cones.len(),
                "simplicial": report.simplicial,
                "smooth": report.smooth,
                "complete": report.complete,
                "failing_cones": report.failing_cones,
            })
        ),
        _ => {
            println!(
                "fan: {} rays, {} maximal cones",
                fan.rays.len(),
                fan.max_cones.len()
            );
            println!("simplicial: {}", report.simplicial);
            println!("smooth:     {}", report.smooth);
            println!("complete:   {}", report.complete);
            if !report.failing_cones.is_empty() {
                println!("failing cones: {:?}", report.failing_cones);
            }
        }
    }
    Ok(0)
}

fn cmd_fixed_points(input: &Input, opts: &CommonOpts) -> Result<u8, CliError> {
    no_csv(opts.format)?;
    let scenario = input.scenario()?;
    match opts.format {
        Format::Structured => {
            let points: Vec<_> = scenario
                .points
                .iter()
                .map(|p| {
                    serde_json::json!({
                        "label": p.label,
                        "isotropy_weights": p.isotropy_weights.iter().map(vector_json).collect::<Vec<_>>(),
                        "fiber": p.fiber_character.iter().map(|(w, m)| {
                            serde_json::json!({"weight": vector_json(w), "mult": int_i64(m)})
                        }).collect::<Vec<_>>(),
                    })
                })
                .collect();
            println!(
                "{}",
                serde_json::json!({
                    "rank": scenario.rank,
                    "dim": scenario.dim,
                    "fixed_points": points,
                })
            );
        }
        _ => {
            println!(
                "{} fixed points, rank {}, complex dimension {}",
                scenario.points.len(),
                scenario.rank,
                scenario.dim
            );
            for p in &scenario.points {
                let ws: Vec<String> = p.isotropy_weights.iter().map(|w| w.to_string()).collect();
                println!("{}: weights {}, fiber {}", p.label, ws.join(" "), p.fiber_character);
            }
        }
    }
    Ok(0)
}

fn cmd_chambers(input: &Input, opts: &CommonOpts) -> Result<u8, CliError> {
    no_csv(opts.format)?;
    let scenario = input.scenario()?;
    let chambers = enumerate_chambers(&scenario)?;
    match opts.format {
        Format::Structured => {
            println!(
                "{}",
                serde_json::json!({
                    "hyperplanes": chambers.hyperplanes.iter().map(vector_json).collect::<Vec<_>>(),
                    "chambers": chambers.chambers.iter().map(|c| serde_json::json!({
                        "id": c.id,
                        "representative": vector_json(&c.representative),
                        "signs": c.signs.iter().map(|s| *s as i64).collect::<Vec<_>>(),
                    })).collect::<Vec<_>>(),
                })
            );
        }
        _ => {
            println!(
                "{} hyperplanes, {} chambers",
                chambers.hyperplanes.len(),
                chambers.chambers.len()
            );
            for c in &chambers.chambers {
                println!("chamber {:>3}: representative {}", c.id, c.representative);
            }
        }
    }
    Ok(0)
}

fn cmd_index(input: &Input, opts: &CommonOpts) -> Result<u8, CliError> {
    let scenario = input.scenario()?;
    let chambers = enumerate_chambers(&scenario)?;
    let terms = all_chamber_terms(&scenario, &chambers)?;
    let window = match &opts.weight {
        Some(text) => vec![parse_vector(text, scenario.rank)?],
        None => window_box(&scenario.apexes(), opts.margin),
    };
    let mut rows: Vec<(LatticeVector, Int)> = Vec::new();
    for xi in &window {
        let c = terms.index_coefficient(xi)?;
        if !c.is_zero() || opts.weight.is_some() {
            rows.push((xi.clone(), c));
        }
    }
    match opts.format {
        Format::Csv => {
            let header: Vec<String> = (1..=scenario.rank).map(|i| format!("x{i}")).collect();
            println!("{},coeff", header.join(","));
            for (w, c) in &rows {
                let coords: Vec<String> = w.0.iter().map(|x| x.to_string()).collect();
                println!("{},{c}", coords.join(","));
            }
        }
        Format::Structured => {
            println!(
                "{}",
                serde_json::json!({
                    "window_size": window.len(),
                    "coefficients": rows.iter().map(|(w, c)| serde_json::json!({
                        "weight": vector_json(w), "coeff": int_i64(c),
                    })).collect::<Vec<_>>(),
                })
            );
        }
        Format::Text => {
            println!("nonzero index coefficients ({} window weights):", window.len());
            for (w, c) in &rows {
                println!("{w}: {c}");
            }
            let total: Int = rows.iter().map(|(_, c)| c.clone()).sum();
            println!("total: {total}");
        }
    }
    if let Some(path) = &opts.svg {
        require_rank2(&scenario)?;
        let data: Vec<(LatticeVector, i64, String)> = rows
            .iter()
            .map(|(w, c)| (w.clone(), int_i64(c), c.to_string()))
            .collect();
        std::fs::write(path, svg::render_weights(&data))
            .map_err(|e| CliError::input(format!("cannot write svg: {e}")))?;
    }
    Ok(0)
}

fn require_rank2(scenario: &Scenario) -> Result<(), CliError> {
    if scenario.rank != 2 {
        return Err(CliError::input("pictures are only supported in rank 2"));
    }
    Ok(())
}

fn cmd_gamma(input: &Input, opts: &CommonOpts) -> Result<u8, CliError> {
    no_csv(opts.format)?;
    let scenario = input.scenario()?;
    let chambers = enumerate_chambers(&scenario)?;
    let chamber = resolve_chamber(&chambers, opts)?
        .ok_or_else(|| CliError::input("gamma needs --chamber"))?;
    let query = match &opts.weight {
        Some(text) => Some(parse_vector(text, scenario.rank)?),
        None => None,
    };
    let mut regions = Vec::new();
    for p in &scenario.points {
        regions.push(gamma_region(p, chamber)?);
    }
    match opts.format {
        Format::Structured => {
            println!(
                "{}",
                serde_json::json!({
                    "chamber": chamber.id,
                    "representative": vector_json(&chamber.representative),
                    "regions": regions.iter().map(|r| serde_json::json!({
                        "point": r.owner.0,
                        "degree": r.degree,
                        "apexes": r.apexes.iter().map(vector_json).collect::<Vec<_>>(),
                        "generators": r.generators.iter().map(|(d, strict)| serde_json::json!({
                            "direction": vector_json(d), "strict": strict,
                        })).collect::<Vec<_>>(),
                        "contains": query.as_ref().map(|q| gamma_contains(r, q)),
                    })).collect::<Vec<_>>(),
                })
            );
        }
        _ => {
            println!(
                "chamber {} (representative {})",
                chamber.id, chamber.representative
            );
            for r in &regions {
                let gens: Vec<String> = r
                    .generators
                    .iter()
                    .map(|(d, s)| format!("{d}{}", if *s { " (strict)" } else { "" }))
                    .collect();
                let apexes: Vec<String> = r.apexes.iter().map(|a| a.to_string()).collect();
                print!(
                    "{}: degree {}, apexes {}, directions {}",
                    r.owner.0,
                    r.degree,
                    apexes.join(" "),
                    gens.join(" ")
                );
                if let Some(q) = &query {
                    print!(" | contains {q}: {}", gamma_contains(r, q));
                }
                println!();
            }
        }
    }
    if let Some(path) = &opts.svg {
        require_rank2(&scenario)?;
        let marked: Vec<(LatticeVector, String)> = query
            .iter()
            .map(|q| (q.clone(), q.to_string()))
            .collect();
        std::fs::write(path, svg::render_regions(&regions, &marked))
            .map_err(|e| CliError::input(format!("cannot write svg: {e}")))?;
    }
    Ok(0)
}

fn cmd_verdict(input: &Input, opts: &CommonOpts) -> Result<u8, CliError> {
    let scenario = input.scenario()?;
    let chambers = enumerate_chambers(&scenario)?;
    let terms = all_chamber_terms(&scenario, &chambers)?;
    let window = match &opts.weight {
        Some(text) => vec![parse_vector(text, scenario.rank)?],
        None => window_box(&scenario.apexes(), opts.margin),
    };
    let mut obstructed = false;
    let mut rows: Vec<(LatticeVector, usize, String)> = Vec::new();
    for xi in &window {
        let v = support_verdict(&scenario, &chambers, &terms, xi)?;
        if !v.obstructions.is_empty() {
            obstructed = true;
        }
        for (k, d) in v.degrees.iter().enumerate() {
            let collided = v.obstructions.iter().any(|o| o.degree == k);
            match d {
                DegreeVerdict::Forced { multiplicity, .. } if collided => {
                    rows.push((xi.clone(), k, format!("obstructed (forced x{multiplicity} and excluded)")));
                }
                DegreeVerdict::Forced { multiplicity, .. } => {
                    rows.push((xi.clone(), k, format!("forced x{multiplicity}")));
                }
                DegreeVerdict::Unknown => rows.push((xi.clone(), k, "unknown".into())),
                DegreeVerdict::Excluded { .. } => {}
            }
        }
    }
    match opts.format {
        Format::Csv => {
            let header: Vec<String> = (1..=scenario.rank).map(|i| format!("x{i}")).collect();
            println!("{},degree,verdict", header.join(","));
            for (w, k, verdict) in &rows {
                let coords: Vec<String> = w.0.iter().map(|x| x.to_string()).collect();
                println!("{},{k},{verdict}", coords.join(","));
            }
        }
        Format::Structured => {
            println!(
                "{}",
                serde_json::json!({
                    "window_size": window.len(),
                    "obstructed": obstructed,
                    "rows": rows.iter().map(|(w, k, verdict)| serde_json::json!({
                        "weight": vector_json(w), "degree": k, "verdict": verdict,
                    })).collect::<Vec<_>>(),
                })
            );
        }
        Format::Text => {
            println!(
                "support verdicts over {} window weights (excluded rows suppressed):",
                window.len()
            );
            for (w, k, verdict) in &rows {
                println!("{w} degree {k}: {verdict}");
            }
        }
    }
    if let Some(path) = &opts.svg {
        require_rank2(&scenario)?;
        let data: Vec<(LatticeVector, i64, String)> = rows
            .iter()
            .map(|(w, k, v)| {
                let class = if v.starts_with("obstructed") { -1 } else { *k as i64 };
                (w.clone(), class, format!("H{k}"))
            })
            .collect();
        std::fs::write(path, svg::render_weights(&data))
            .map_err(|e| CliError::input(format!("cannot write svg: {e}")))?;
    }
    Ok(if obstructed { 1 } else { 0 })
}

fn cmd_morse_check(input: &Input, opts: &CommonOpts) -> Result<u8, CliError> {
    no_csv(opts.format)?;
    let scenario = input.scenario()?;
    let path = opts
        .cohomology
        .as_ref()
        .ok_or_else(|| CliError::input("morse-check needs --cohomology FILE"))?;
    let cohomology = files::load_cohomology(path, scenario.rank, scenario.dim)?;
    let chambers = enumerate_chambers(&scenario)?;
    let window = window_box(&scenario.apexes(), opts.margin);
    let selected: Vec<&eqmorse::chambers::Chamber> = match resolve_chamber(&chambers, opts)? {
        Some(c) => vec![c],
        None => chambers.chambers.iter().collect(),
    };
    let mut clean = true;
    let mut out = Vec::new();
    for chamber in selected {
        let strong = verify_strong(&scenario, chamber, &cohomology, &window)?;
        let weak = weak_check(&scenario, chamber, &cohomology, &window)?;
        if !strong.holds_on_window || !weak.holds_on_window {
            clean = false;
        }
        out.push((chamber.id, strong, weak));
    }
    match opts.format {
        Format::Structured => {
            println!(
                "{}",
                serde_json::json!({
                    "window_size": window.len(),
                    "holds": clean,
                    "chambers": out.iter().map(|(id, strong, weak)| serde_json::json!({
                        "chamber": id,
                        "strong_holds": strong.holds_on_window,
                        "weak_holds": weak.holds_on_window,
                        "strong_violations": strong.violations.len(),
                        "weak_violations": weak.violations.len(),
                    })).collect::<Vec<_>>(),
                })
            );
        }
        _ => {
            for (id, strong, weak) in &out {
                println!(
                    "chamber {id}: strong {} ({} violations), weak {} ({} violations)",
                    if strong.holds_on_window { "holds" } else { "FAILS" },
                    strong.violations.len(),
                    if weak.holds_on_window { "holds" } else { "FAILS" },
                    weak.violations.len()
                );
                for v in strong.violations.iter().take(5) {
                    println!("  strong: {v:?}");
                }
                for v in weak.violations.iter().take(5) {
                    println!("  weak:   weight {} degree {} bound {} claimed {}", v.weight, v.degree, v.bound, v.claimed);
                }
            }
            println!(
                "morse-check: {} on the margin-{} window",
                if clean { "consistent" } else { "violated" },
                opts.margin
            );
        }
    }
    Ok(if clean { 0 } else { 1 })
}

fn cmd_obstruction(input: &Input, opts: &CommonOpts) -> Result<u8, CliError> {
    no_csv(opts.format)?;
    let scenario = input.scenario()?;
    let chambers = enumerate_chambers(&scenario)?;
    let witness = detect_obstruction(&scenario, &chambers, None)?;
    match opts.format {
        Format::Structured => {
            println!(
                "{}",
                serde_json::json!({
                    "obstructed": witness.is_some(),
                    "witness": witness.as_ref().map(|w| serde_json::json!({
                        "weight": vector_json(&w.weight),
                        "degree": w.degree,
                        "forcing_chamber": w.forcing_chamber,
                        "excluding_chamber": w.excluding_chamber,
                        "forcing_point": w.forcing_point,
                        "multiplicity": int_i64(&w.multiplicity),
                    })),
                })
            );
        }
        _ => match &witness {
            None => println!("no obstruction found; data is consistent with an invariant Kaehler structure"),
            Some(w) => {
                println!("obstruction witness found: no invariant Kaehler structure");
                println!(
                    "weight {} forced into degree {} (chamber {}, via {}) and excluded (chamber {})",
                    w.weight, w.degree, w.forcing_chamber, w.forcing_point, w.excluding_chamber
                );
            }
        },
    }
    Ok(if witness.is_some() { 1 } else { 0 })
}

fn cmd_toric_cohomology(input: &Input, opts: &CommonOpts) -> Result<u8, CliError> {
    no_csv(opts.format)?;
    let Input::Toric(fan, Some(pl)) = input else {
        return Err(CliError::input("toric-cohomology needs a fan with a pl field"));
    };
    let coh = toric_cohomology_2d(fan, pl)?;
    let (h0, hn) = toric_h0_hn(fan, pl)?;
    match opts.format {
        Format::Structured => {
            let per_degree: Vec<_> = (0..=2)
                .map(|k| {
                    coh.coeff(k)
                        .iter()
                        .map(|(w, m)| serde_json::json!({"weight": vector_json(w), "mult": int_i64(m)}))
                        .collect::<Vec<_>>()
                })
                .collect();
            println!(
                "{}",
                serde_json::json!({
                    "cohomology": per_degree,
                    "h0_region_points": h0.iter().map(vector_json).collect::<Vec<_>>(),
                    "h2_region_points": hn.iter().map(vector_json).collect::<Vec<_>>(),
                })
            );
        }
        _ => {
            for k in 0..=2 {
                let mut entries: Vec<String> = Vec::new();
                for (w, m) in coh.coeff(k).iter() {
                    entries.push(if *m == Int::from(1) {
                        w.to_string()
                    } else {
                        format!("{w} x{m}")
                    });
                }
                println!(
                    "H^{k}: {}",
                    if entries.is_empty() {
                        "0".to_string()
                    } else {
                        entries.join(" ")
                    }
                );
            }
            println!("region check: |H^0| = {}, |H^2| = {}", h0.len(), hn.len());
        }
    }
    Ok(0)
}

fn cmd_flag(
    rs: &RootSystem,
    lambda: Option<LatticeVector>,
    margin: i64,
    format: Format,
) -> Result<u8, CliError> {
    let elements = generate_weyl(rs)?;
    let mut report_lines = String::new();
    let _ = writeln!(
        report_lines,
        "root system {:?}: |W| = {}, positive roots {}",
        rs.kind,
        elements.len(),
        rs.positive_roots.len()
    );
    for w in &elements {
        let _ = writeln!(
            report_lines,
            "w = {:<8} length {} det {}",
            w.word_string(),
            w.length(),
            w.determinant()
        );
    }
    let mut consistent = true;
    let mut character_json = serde_json::Value::Null;
    if let Some(lambda) = &lambda {
        let mut pts: Vec<LatticeVector> = vec![lambda.clone()];
        for w in &elements {
            pts.push(w.apply(lambda));
            pts.push(w.apply(&lambda.add(&rs.rho)).sub(&rs.rho));
        }
        let window = window_box(&pts, margin);
        let ch = weyl_character(rs, lambda, &window)?;
        let _ = writeln!(
            report_lines,
            "character of R_{lambda}: dimension {}, {} distinct weights",
            ch.total(),
            ch.len()
        );
        for (w, m) in ch.iter() {
            let _ = writeln!(report_lines, "  {w}: {m}");
        }
        let orbits = vec![OrbitDatum::flag(lambda)];
        let mut cohomology = vec![Vec::new(); rs.positive_roots.len() + 1];
        cohomology[0] = vec![(lambda.clone(), Int::from(1))];
        // theta1 in the dominant chamber of the expanded arrangement.
        let theta = dominant_theta(rs)?;
        let report = assemble_nonabelian(rs, &orbits, &theta, &cohomology, &window)?;
        consistent = report.assemblies_agree
            && report.torus.holds_on_window
            && report.fixed_point_formula_consistent;
        let _ = writeln!(
            report_lines,
            "non-Abelian assembly: rearranged == torus x Weyl denominator: {}",
            report.assemblies_agree
        );
        let _ = writeln!(
            report_lines,
            "strong inequalities with H^0 = R_lambda on the window: {}",
            report.torus.holds_on_window
        );
        let _ = writeln!(
            report_lines,
            "fixed-point formula at t = -1: {}",
            report.fixed_point_formula_consistent
        );
        character_json = serde_json::json!({
            "dimension": int_i64(&ch.total()),
            "weights": ch.iter().map(|(w, m)| serde_json::json!({
                "weight": vector_json(w), "mult": int_i64(m),
            })).collect::<Vec<_>>(),
            "assemblies_agree": report.assemblies_agree,
            "strong_holds": report.torus.holds_on_window,
            "fixed_point_formula": report.fixed_point_formula_consistent,
        });
    }
    match format {
        Format::Structured => {
            println!(
                "{}",
                serde_json::json!({
                    "kind": format!("{:?}", rs.kind),
                    "order": elements.len(),
                    "positive_roots": rs.positive_roots.iter().map(vector_json).collect::<Vec<_>>(),
                    "character": character_json,
                    "consistent": consistent,
                })
            );
        }
        Format::Csv => return Err(CliError::input("csv output is not available for this command")),
        Format::Text => print!("{report_lines}"),
    }
    Ok(if consistent { 0 } else { 1 })
}

fn dominant_theta(rs: &RootSystem) -> Result<LatticeVector, CliError> {
    use eqmorse::lattice::{Constraint, LinearSystem};
    let mut sys = LinearSystem::new(rs.rank);
    for alpha in &rs.positive_roots {
        sys.push(Constraint::gt_int(alpha, Int::from(0)))
            .map_err(CliError::from)?;
    }
    let w = sys
        .feasible()
        .ok_or_else(|| CliError::input("no dominant direction"))?;
    Ok(eqmorse::lattice::primitive_from_rational(&w).map_err(CliError::from)?)
}

fn cmd_export(input: &Input, opts: &ExportOpts) -> Result<u8, CliError> {
    let file = match input {
        Input::Toric(fan, pl) => files::fan_to_file(fan, pl.as_ref()),
        Input::FixedPoints(s) => files::scenario_to_file(s),
        Input::Flag(rs, lambda) => {
            let scenario = flag_fixed_data(rs, lambda)?;
            files::scenario_to_file(&scenario)
        }
    };
    files::write_input(&opts.out, &file)?;
    println!("wrote {}", opts.out.display());
    Ok(0)
}
