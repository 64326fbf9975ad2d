//! The `incidence-lab` command-line harness.
//!
//! All randomness flows from `--seed` through `Pcg64::seed_from_u64`, so a
//! command with fixed flags prints the same bytes on every run regardless of
//! thread count. Exit codes: 0 success, 1 usage, 2 input parsing,
//! 3 violated precondition, 4 no generic position found, 5 internal
//! consistency failure.

pub mod format;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, RngCore};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::constructions::{regulus_instance, rich_line_instance, seeded_rng, ConstructionKind, ConstructionSpec, Construction};
use crate::counting::{best_thresholds, count_incidences, count_line_intersections, max_collinear, report, rich_line_stats, round_sig, size_warnings, IncidenceReport, Sizes};
use crate::error::Error;
use crate::ff::PrimeField;
use crate::geom::{line_line_intersection, point_on_plane, Plane3, Point3};
use crate::transform::{genericize, phi, psi, DEFAULT_MAX_RETRIES};

pub use format::{parse_instance_file, parse_instance_str, read_instance_file, write_instance, InstanceFile};

pub const THREADS_ENV: &str = "INCIDENCE_LAB_THREADS";

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INTERNAL: i32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    RichLine,
    Regulus,
    Random,
    RandomNoRichLines,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "incidence-lab", version, about = "Point-plane incidences as line-line intersections over F_p")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Check `p in q <=> phi(p) meets psi(q)` on random pairs.
    VerifyLemma {
        #[arg(long = "field", default_value_t = 101)]
        field_char: u64,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
    },
    /// Move an instance into generic position and print its phi/psi images.
    Transform {
        #[arg(long = "input")]
        input_path: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_RETRIES)]
        max_retries: usize,
    },
    /// Generate instances and report both sides of the incidence bound.
    Experiment {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long = "field", default_value_t = 101)]
        field_char: u64,
        #[command(flatten)]
        sizes: SizeArgs,
        /// Number of independent instances.
        #[arg(long, default_value_t = 1)]
        instances: usize,
    },
    /// Build an extremal configuration and check its exact count.
    Extremal {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long = "field", default_value_t = 101)]
        field_char: u64,
        #[command(flatten)]
        sizes: SizeArgs,
    },
    /// Incidences, best rich-line thresholds and bound ratio of an instance file.
    Bound {
        #[arg(long = "input")]
        input_path: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, clap::Args)]
pub struct SizeArgs {
    /// Collinearity parameter: rich-line builds k - 1 points on one line.
    #[arg(long, default_value_t = 5)]
    pub k: usize,
    /// Number of planes.
    #[arg(long, default_value_t = 6)]
    pub n: usize,
    /// Number of points for random kinds.
    #[arg(long, default_value_t = 20)]
    pub m: usize,
    /// Lines taken from the first ruling (regulus).
    #[arg(long, default_value_t = 3)]
    pub a: usize,
    /// Lines taken from the second ruling (regulus).
    #[arg(long, default_value_t = 4)]
    pub b: usize,
}

/// What a run prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: i32, message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        stderr.push('\n');
        Outcome { code, stdout: String::new(), stderr }
    }
}

impl From<Error> for Outcome {
    fn from(err: Error) -> Self {
        Outcome::fail(err.exit_code(), format!("error: {err}"))
    }
}

fn usage_field(modulus: u64) -> Result<PrimeField, Outcome> {
    PrimeField::new(modulus).map_err(|e| Outcome::fail(EXIT_USAGE, format!("error: --field: {e}")))
}

fn flatten_into(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten_into(&key, v, out);
            }
        }
        Value::Array(items) => {
            let joined = items
                .iter()
                .map(|v| match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                })
                .collect::<Vec<_>>()
                .join(";");
            out.push((prefix.to_string(), joined));
        }
        Value::Null => out.push((prefix.to_string(), String::new())),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

/// JSON (an object, or an array for several records) or CSV with one
/// header row and nested keys joined by `.`.
fn render<T: Serialize>(records: &[T], format: OutputFormat) -> String {
    let values: Vec<Value> = records.iter().map(|r| serde_json::to_value(r).expect("serializable")).collect();
    match format {
        OutputFormat::Json => {
            let mut s = match &values[..] {
                [single] => serde_json::to_string(single),
                many => serde_json::to_string(many),
            }
            .expect("serializable");
            s.push('\n');
            s
        }
        OutputFormat::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            for (i, v) in values.iter().enumerate() {
                let mut cells = Vec::new();
                flatten_into("", v, &mut cells);
                if i == 0 {
                    writer.write_record(cells.iter().map(|(k, _)| k)).expect("in-memory write");
                }
                writer.write_record(cells.iter().map(|(_, v)| v)).expect("in-memory write");
            }
            String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8")
        }
    }
}

#[derive(Debug, Serialize)]
struct LemmaSummary {
    trials: usize,
    failures: usize,
}

/// A random point off the yz-plane and a random plane with `c != 0`; half
/// of the pairs are made incident by solving for `d`.
fn lemma_pair<R: Rng + ?Sized>(field: PrimeField, rng: &mut R) -> (Point3, Plane3) {
    let p = Point3 { x: field.random_nonzero(rng), y: field.random(rng), z: field.random(rng) };
    let (a, b, c) = (field.random(rng), field.random(rng), field.random_nonzero(rng));
    let d = if rng.gen_bool(0.5) { -(a * p.x + b * p.y + c * p.z) } else { field.random(rng) };
    (p, Plane3::new(a, b, c, d).expect("c != 0"))
}

/// Returns the number of pairs where incidence and intersection disagree.
pub fn lemma_failures(field: PrimeField, trials: usize, seed: u64) -> usize {
    let mut rng = seeded_rng(seed);
    let pairs: Vec<_> = (0..trials).map(|_| lemma_pair(field, &mut rng)).collect();
    pairs
        .par_iter()
        .filter(|(p, q)| {
            let incident = point_on_plane(p, q).expect("same field");
            let meets = line_line_intersection(&phi(p).expect("x != 0"), &psi(q).expect("c != 0"))
                .expect("phi and psi images differ")
                .is_some();
            incident != meets
        })
        .count()
}

fn verify_lemma(cfg: &RunConfig, field_char: u64, trials: usize) -> Result<Outcome, Outcome> {
    let field = usage_field(field_char)?;
    let failures = lemma_failures(field, trials, cfg.seed);
    let out = render(&[LemmaSummary { trials, failures }], cfg.format);
    Ok(Outcome { code: if failures == 0 { EXIT_OK } else { EXIT_INTERNAL }, ..Outcome::ok(out) })
}

fn transform(cfg: &RunConfig, input: &std::path::Path, max_retries: usize) -> Result<Outcome, Outcome> {
    use std::fmt::Write as _;
    let inst = parse_instance_file(input)?;
    let mut rng = seeded_rng(cfg.seed);
    let generic = genericize(inst.points(), inst.planes(), &mut rng, max_retries)?;
    let map = generic.map_used;
    let m = map.linear();
    let s = map.shift();
    let mut out = String::new();
    let _ = writeln!(out, "# affine map: rows [{} {} {}] [{} {} {}] [{} {} {}], shift [{} {} {}]",
        m[0][0], m[0][1], m[0][2], m[1][0], m[1][1], m[1][2], m[2][0], m[2][1], m[2][2], s[0], s[1], s[2]);
    let moved = crate::counting::Instance::new(inst.field(), generic.points.clone(), generic.planes.clone())?;
    out.push_str(&write_instance(&moved));
    out.push_str("# phi images\n");
    for l in generic.phi_lines() {
        let _ = writeln!(out, "{}", format::line_record(&l));
    }
    out.push_str("# psi images\n");
    for l in generic.psi_lines() {
        let _ = writeln!(out, "{}", format::line_record(&l));
    }
    Ok(Outcome::ok(out))
}

/// One experiment row: the report plus the seed that produced it.
#[derive(Debug, Serialize)]
pub struct ExperimentRecord {
    pub seed: u64,
    #[serde(flatten)]
    pub report: IncidenceReport,
}

/// Mixes the instance seed into an independent stream for genericize.
const REPORT_STREAM: u64 = 0x9E37_79B9_7F4A_7C15;

fn construction_kind(kind: Kind, sizes: &SizeArgs) -> ConstructionKind {
    match kind {
        Kind::RichLine => ConstructionKind::RichLine { k: sizes.k, n: sizes.n },
        Kind::Regulus => ConstructionKind::Regulus { a_count: sizes.a, b_count: sizes.b },
        Kind::Random => ConstructionKind::Random { m: sizes.m, n: sizes.n },
        Kind::RandomNoRichLines => ConstructionKind::RandomNoRichLines { m: sizes.m, n: sizes.n },
    }
}

/// Builds and reports one instance per derived seed, in seed order.
pub fn run_experiment(
    kind: Kind,
    field: PrimeField,
    sizes: &SizeArgs,
    instances: usize,
    seed: u64,
) -> crate::error::Result<Vec<ExperimentRecord>> {
    let mut master = seeded_rng(seed);
    let seeds: Vec<u64> = (0..instances).map(|_| master.next_u64()).collect();
    let kind = construction_kind(kind, sizes);
    seeds
        .par_iter()
        .map(|&s| {
            let spec = ConstructionSpec { kind, seed: s, field };
            let Construction::Instance(inst) = spec.build()? else {
                unreachable!("regulus is rejected before running");
            };
            let report = report(&inst, &mut seeded_rng(s ^ REPORT_STREAM))?;
            Ok(ExperimentRecord { seed: s, report })
        })
        .collect()
}

fn experiment(cfg: &RunConfig, kind: Kind, field_char: u64, sizes: &SizeArgs, instances: usize) -> Result<Outcome, Outcome> {
    let field = usage_field(field_char)?;
    if kind == Kind::Regulus {
        return Err(Outcome::fail(EXIT_USAGE, "error: regulus builds two line families, not points and planes; use `extremal --kind regulus`"));
    }
    if instances == 0 {
        return Err(Outcome::fail(EXIT_USAGE, "error: --instances must be at least 1"));
    }
    let records = run_experiment(kind, field, sizes, instances, cfg.seed)?;
    let mut outcome = Outcome::ok(render(&records, cfg.format));
    for r in &records {
        for w in &r.report.warnings {
            outcome.stderr.push_str(&format!("warning: {w}\n"));
        }
    }
    Ok(outcome)
}

#[derive(Debug, Serialize)]
struct ExtremalIncidences {
    incidences: usize,
    expected: usize,
    ok: bool,
}

#[derive(Debug, Serialize)]
struct ExtremalIntersections {
    intersections: usize,
    expected: usize,
    ok: bool,
}

fn extremal(cfg: &RunConfig, kind: Kind, field_char: u64, sizes: &SizeArgs) -> Result<Outcome, Outcome> {
    let field = usage_field(field_char)?;
    let (ok, out) = match kind {
        Kind::RichLine => {
            let inst = rich_line_instance(sizes.k, sizes.n, field, cfg.seed)?;
            let incidences = count_incidences(&inst);
            let expected = (sizes.k - 1) * sizes.n;
            let ok = incidences == expected;
            (ok, render(&[ExtremalIncidences { incidences, expected, ok }], cfg.format))
        }
        Kind::Regulus => {
            let (l, m) = regulus_instance(sizes.a, sizes.b, field, cfg.seed)?;
            let intersections = count_line_intersections(&l, &m);
            let expected = sizes.a * sizes.b;
            let ok = intersections == expected;
            (ok, render(&[ExtremalIntersections { intersections, expected, ok }], cfg.format))
        }
        _ => return Err(Outcome::fail(EXIT_USAGE, "error: extremal supports --kind rich-line or regulus")),
    };
    Ok(Outcome { code: if ok { EXIT_OK } else { EXIT_INTERNAL }, ..Outcome::ok(out) })
}

#[derive(Debug, Serialize)]
struct BoundSummary {
    field: u64,
    sizes: Sizes,
    incidences: usize,
    max_collinear: usize,
    best_s: usize,
    best_t: usize,
    rhs: f64,
    ratio: f64,
    warnings: Vec<String>,
}

fn bound(cfg: &RunConfig, input: &std::path::Path) -> Result<Outcome, Outcome> {
    let inst = parse_instance_file(input)?;
    let (np, nq) = (inst.points().len(), inst.planes().len());
    let th = best_thresholds(&rich_line_stats(&inst), np, nq)?;
    let incidences = count_incidences(&inst);
    let ratio = if th.rhs > 0.0 { incidences as f64 / th.rhs } else { 0.0 };
    let summary = BoundSummary {
        field: inst.field().modulus(),
        sizes: Sizes { points: np, planes: nq },
        incidences,
        max_collinear: max_collinear(&inst),
        best_s: th.s,
        best_t: th.t,
        rhs: round_sig(th.rhs, 6),
        ratio: round_sig(ratio, 6),
        warnings: size_warnings(&inst),
    };
    Ok(Outcome::ok(render(&[summary], cfg.format)))
}

/// Executes a parsed command.
pub fn run(cfg: &RunConfig) -> Outcome {
    let result = match &cfg.command {
        Command::VerifyLemma { field_char, trials } => verify_lemma(cfg, *field_char, *trials),
        Command::Transform { input_path, max_retries } => transform(cfg, input_path, *max_retries),
        Command::Experiment { kind, field_char, sizes, instances } => experiment(cfg, *kind, *field_char, sizes, *instances),
        Command::Extremal { kind, field_char, sizes } => extremal(cfg, *kind, *field_char, sizes),
        Command::Bound { input_path } => bound(cfg, input_path),
    };
    result.unwrap_or_else(|outcome| outcome)
}

/// Parses arguments and runs. Help and version requests exit 0 on stdout;
/// any other argument error exits 1.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(cfg) => run(&cfg),
        Err(e) => {
            let text = e.to_string();
            if e.use_stderr() {
                Outcome::fail(EXIT_USAGE, text.trim_end())
            } else {
                Outcome::ok(text)
            }
        }
    }
}

/// Sizes the global thread pool from `INCIDENCE_LAB_THREADS`, if set.
pub fn configure_threads() -> Result<(), Outcome> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Outcome::fail(EXIT_USAGE, format!("error: {THREADS_ENV} must be an integer >= 1, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Outcome::fail(EXIT_USAGE, format!("error: {e}")))
}
