//! End-to-end acceptance checks. Runs as a plain binary and prints one
//! PASS/FAIL line per criterion; exits non-zero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use incidence_lab::cli::{lemma_failures, run_args};
use incidence_lab::constructions::{random_instance, random_line, regulus_instance, rich_line_instance, seeded_rng};
use incidence_lab::counting::{count_incidences, count_line_intersections};
use incidence_lab::ff::PrimeField;
use incidence_lab::surfaces::{interpolation_degree_bound, line_in_surface, min_degree_surface, quadric_through_lines};
use incidence_lab::transform::{genericize, DEFAULT_MAX_RETRIES};
use incidence_lab::surfaces::Polynomial3;
use rand::Rng;

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict { ok, detail: detail.into() }
}

fn field(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn timed(limit: Option<Duration>, body: impl FnOnce() -> Verdict) -> Verdict {
    let start = Instant::now();
    let v = body();
    let elapsed = start.elapsed();
    match limit {
        Some(limit) if elapsed > limit => verdict(false, format!("{}; took {elapsed:.2?} > {limit:?}", v.detail)),
        _ => verdict(v.ok, format!("{}; {elapsed:.2?}", v.detail)),
    }
}

fn lemma_equivalence() -> Verdict {
    let failures = lemma_failures(field(101), 10_000, 2024);
    verdict(failures == 0, format!("10000 pairs over F_101, {failures} failures"))
}

fn transfer_identity() -> Verdict {
    let mut rng = seeded_rng(17);
    let mut failures = 0;
    for i in 0..200u64 {
        let f = field(if i % 2 == 0 { 101 } else { 1009 });
        let np = rng.gen_range(1..=40);
        let nq = rng.gen_range(1..=60);
        let inst = random_instance(np, nq, f, i).unwrap();
        let generic = genericize(inst.points(), inst.planes(), &mut rng, DEFAULT_MAX_RETRIES).unwrap();
        if count_incidences(&inst) != count_line_intersections(&generic.phi_lines(), &generic.psi_lines()) {
            failures += 1;
        }
    }
    verdict(failures == 0, format!("200 instances, {failures} failures"))
}

fn extremal_exactness() -> Verdict {
    let f = field(101);
    let mut bad = Vec::new();
    for k in 3..=10 {
        for n in 1..=10 {
            let inst = rich_line_instance(k, n, f, (k * 100 + n) as u64).unwrap();
            let expected = (k - 1) * n;
            let incidences = count_incidences(&inst);
            let g = genericize(inst.points(), inst.planes(), &mut seeded_rng(n as u64), DEFAULT_MAX_RETRIES).unwrap();
            let intersections = count_line_intersections(&g.phi_lines(), &g.psi_lines());
            if incidences != expected || intersections != expected {
                bad.push((k, n));
            }
        }
    }
    verdict(bad.is_empty(), format!("80 (k, n) cells, mismatches {bad:?}"))
}

fn regulus_exactness() -> Verdict {
    let f = field(101);
    let mut bad = Vec::new();
    for a in 1..=5 {
        for b in 1..=5 {
            let (l, m) = regulus_instance(a, b, f, (a * 10 + b) as u64).unwrap();
            if count_line_intersections(&l, &m) != a * b {
                bad.push((a, b));
            }
        }
    }
    verdict(bad.is_empty(), format!("25 (a, b) cells, mismatches {bad:?}"))
}

fn three_lines_on_quadric() -> Verdict {
    let f = field(101);
    let mut rng = seeded_rng(3);
    let mut failures = 0;
    for _ in 0..1000 {
        let lines = [random_line(f, &mut rng), random_line(f, &mut rng), random_line(f, &mut rng)];
        let q = quadric_through_lines(&lines[0], &lines[1], &lines[2]);
        if !lines.iter().all(|l| line_in_surface(l, &q).unwrap()) {
            failures += 1;
        }
    }
    verdict(failures == 0, format!("1000 triples over F_101, {failures} failures"))
}

fn common_quadric() -> Verdict {
    let f = field(101);
    let mut failures = 0;
    let mut checked = 0;
    for m in 3..=5 {
        for n in 3..=5 {
            for seed in 0..5u64 {
                // m collinear points and n planes through their line.
                let inst = rich_line_instance(m + 1, n, f, seed * 31 + (m * 7 + n) as u64).unwrap();
                let g = genericize(inst.points(), inst.planes(), &mut seeded_rng(seed), DEFAULT_MAX_RETRIES).unwrap();
                let (phis, psis) = (g.phi_lines(), g.psi_lines());
                let q = quadric_through_lines(&phis[0], &phis[1], &phis[2]);
                let all_on = phis.iter().chain(&psis).all(|l| line_in_surface(l, &q).unwrap());
                checked += 1;
                if !all_on || count_line_intersections(&phis, &psis) != m * n {
                    failures += 1;
                }
            }
        }
    }
    verdict(failures == 0, format!("{checked} configurations, {failures} failures"))
}

fn interpolation_degree() -> Verdict {
    let f = field(32003);
    let mut rng = seeded_rng(5);
    let mut bad = Vec::new();
    for n in 1..=20 {
        let lines: Vec<_> = (0..n).map(|_| random_line(f, &mut rng)).collect();
        let s = min_degree_surface(&lines).unwrap();
        let contained = lines.iter().all(|l| line_in_surface(l, &s).unwrap());
        if s.degree() > interpolation_degree_bound(n) || !contained {
            bad.push(n);
        }
    }
    verdict(bad.is_empty(), format!("|L| = 1..20 over F_32003, violations at {bad:?}"))
}

fn bound_ratio() -> Verdict {
    let out = run_args([
        "incidence-lab", "experiment", "--kind", "random", "--m", "30", "--n", "50", "--field", "1009",
        "--instances", "100", "--seed", "8", "--format", "csv",
    ]);
    if out.code != 0 {
        return verdict(false, format!("experiment exited {}: {}", out.code, out.stderr.trim()));
    }
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("bound_ratio.csv");
    std::fs::write(&path, &out.stdout).unwrap();
    let mut reader = csv::Reader::from_reader(out.stdout.as_bytes());
    let col = reader.headers().unwrap().iter().position(|h| h == "ratio").unwrap();
    let ratios: Vec<f64> = reader.records().map(|r| r.unwrap()[col].parse().unwrap()).collect();
    let max = ratios.iter().cloned().fold(0.0, f64::max);
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    verdict(
        ratios.len() == 100 && max <= 10.0,
        format!("{} instances, max ratio {max:.4}, mean {mean:.4}, csv at {}", ratios.len(), path.display()),
    )
}

fn binary(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_incidence-lab")).args(args).output().unwrap()
}

fn determinism() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let inst = random_instance(12, 20, field(101), 4).unwrap();
    let path = dir.path().join("inst.txt");
    std::fs::write(&path, incidence_lab::cli::write_instance(&inst)).unwrap();
    let path = path.to_str().unwrap();
    let commands: [&[&str]; 5] = [
        &["verify-lemma", "--field", "101", "--trials", "3000", "--seed", "6"],
        &["transform", "--input", path, "--seed", "6"],
        &["experiment", "--kind", "random-no-rich-lines", "--m", "10", "--n", "20", "--instances", "5", "--seed", "6"],
        &["extremal", "--kind", "rich-line", "--k", "7", "--n", "9", "--seed", "6", "--format", "csv"],
        &["bound", "--input", path],
    ];
    let differing: Vec<&str> = commands
        .iter()
        .filter(|args| {
            let (a, b) = (binary(args), binary(args));
            a.stdout != b.stdout || a.status.code() != Some(0) || b.status.code() != Some(0)
        })
        .map(|args| args[0])
        .collect();
    verdict(differing.is_empty(), format!("5 commands run twice, differing {differing:?}"))
}

fn generic_failure() -> Verdict {
    let out = binary(&["experiment", "--kind", "random", "--m", "90", "--n", "90", "--field", "5", "--seed", "1"]);
    let code = out.status.code();
    verdict(code == Some(4) && out.stdout.is_empty(), format!("|P| = 90 over F_5 exited {code:?}"))
}

fn main() {
    let criteria: [(&str, Option<Duration>, fn() -> Verdict); 10] = [
        ("lemma equivalence", Some(Duration::from_secs(5)), lemma_equivalence),
        ("transfer identity", Some(Duration::from_secs(30)), transfer_identity),
        ("rich-line exactness", None, extremal_exactness),
        ("regulus exactness", None, regulus_exactness),
        ("three lines on a quadric", None, three_lines_on_quadric),
        ("common quadric", None, common_quadric),
        ("interpolation degree", None, interpolation_degree),
        ("bound ratio envelope", None, bound_ratio),
        ("cli determinism", None, determinism),
        ("genericize failure", None, generic_failure),
    ];
    let mut failed = 0;
    for (i, (name, limit, body)) in criteria.into_iter().enumerate() {
        let v = timed(limit, body);
        failed += usize::from(!v.ok);
        println!("{} criterion {:>2} {name}: {}", if v.ok { "PASS" } else { "FAIL" }, i + 1, v.detail);
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
