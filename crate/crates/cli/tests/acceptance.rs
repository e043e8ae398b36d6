//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero on any failure.

#[path = "../../core/tests/catalog/mod.rs"]
mod catalog;
#[path = "../../core/tests/oracles/mod.rs"]
mod oracles;

use std::collections::BTreeSet;
use std::fs;
use std::panic;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode, Output};
use std::time::{Duration, Instant};

use reqforge_core::analysis::{gap_analysis, trace_closure, Strictness};
use reqforge_core::diagram::check_dot;
use reqforge_core::dsl::{export_requirements_csv, import_requirements_csv, parse, serialize};
use reqforge_core::synth::{random_model, synthesize, RandomModelConfig, SynthConfig};
use reqforge_core::ValidationOptions;
use serde_json::Value;
use tempfile::TempDir;

type Outcome = Result<String, String>;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn reqforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reqforge"))
        .args(args)
        .env("REQFORGE_NO_COLOR", "1")
        .output()
        .expect("reqforge runs")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().unwrap_or(-1)
}

/// Relative path and contents of every file under `dir`, sorted.
fn tree(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in fs::read_dir(&d).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                let rel = p.strip_prefix(dir).unwrap().to_string_lossy().into_owned();
                out.push((rel, fs::read(&p).unwrap()));
            }
        }
    }
    out.sort();
    out
}

fn fig3() -> Outcome {
    let start = Instant::now();
    let path = fixtures().join("fig3.req");
    let check = reqforge(&["check", s(&path)]);
    ensure(exit_code(&check) == 0, || format!("check exited {}", exit_code(&check)))?;
    ensure(stdout(&check).contains("NOK-02 covered"), || stdout(&check))?;

    let out = TempDir::new().unwrap();
    let gen = reqforge(&["gen", s(&path), "--out", s(out.path()), "--target", "diagrams"]);
    ensure(exit_code(&gen) == 0, || format!("gen exited {}", exit_code(&gen)))?;
    let dot = fs::read_to_string(out.path().join("diagrams/requirements_MODELIO-SOFT.dot"))
        .map_err(|e| e.to_string())?;
    let summary = check_dot(&dot)?;
    ensure(summary.nodes.len() == 4 && summary.edges.len() == 3, || {
        format!("{} nodes, {} edges", summary.nodes.len(), summary.edges.len())
    })?;

    let dir = TempDir::new().unwrap();
    let text = fs::read_to_string(&path).unwrap();
    let mutant = dir.path().join("fig3.req");
    fs::write(&mutant, text.replace("satisfy MODELIO-SOFT -> MODELIO-030\n", "")).unwrap();
    let check = reqforge(&["check", s(&mutant)]);
    ensure(exit_code(&check) == 1, || format!("mutant check exited {}", exit_code(&check)))?;
    ensure(
        stdout(&check).contains("NOK-02 uncovered traced_but_unsatisfied"),
        || stdout(&check),
    )?;

    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("covered, 4 nodes / 3 edges, unsatisfied when unlinked, {elapsed:.2?}"))
}

/// Printed-page estimate: lines wrap at 100 columns, 50 lines per page.
fn page_estimate(text: &str) -> f64 {
    let lines: usize = text
        .lines()
        .map(|l| l.chars().count().div_ceil(100).max(1))
        .sum();
    lines as f64 / 50.0
}

const SYNTH_SRS_CHARS: usize = 300_028;
const TARGET_PAGES: f64 = 125.0;

fn synthetic_scale() -> Outcome {
    let dir = TempDir::new().unwrap();
    let model = dir.path().join("synth.req");
    fs::write(&model, serialize(&synthesize(&SynthConfig::megamart()))).unwrap();

    let stats = reqforge(&["--format", "json", "stats", s(&model)]);
    let v: Value = serde_json::from_slice(&stats.stdout).map_err(|e| e.to_string())?;
    let counts = (
        v["requirement_count"].as_u64(),
        v["architecture_element_count"].as_u64(),
        v["total_element_count"].as_u64(),
    );
    ensure(counts == (Some(458), Some(3444), Some(3902)), || format!("{counts:?}"))?;

    let out = dir.path().join("out");
    let start = Instant::now();
    let validate = reqforge(&["validate", s(&model)]);
    let gen = reqforge(&["gen", s(&model), "--out", s(&out)]);
    let elapsed = start.elapsed();
    ensure(exit_code(&validate) == 0 && exit_code(&gen) == 0, || {
        format!("validate {}, gen {}", exit_code(&validate), exit_code(&gen))
    })?;
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;

    let srs = fs::read_to_string(out.join("srs.md")).map_err(|e| e.to_string())?;
    let pages = page_estimate(&srs);
    ensure((pages - TARGET_PAGES).abs() <= 0.2 * TARGET_PAGES, || format!("{pages:.1} pages"))?;
    let drift = (srs.len() as f64 - SYNTH_SRS_CHARS as f64).abs() / SYNTH_SRS_CHARS as f64;
    ensure(drift <= 0.2, || format!("{} characters", srs.len()))?;
    Ok(format!(
        "3902 elements, validate+gen {elapsed:.2?}, {} chars, {pages:.1} pages",
        srs.len()
    ))
}

/// The 200 random models shared by the closure and gap criteria, with trace
/// density swept over [0, 0.3].
fn random_models() -> impl Iterator<Item = reqforge_core::Model> {
    (0..200u64).map(|seed| {
        let config = RandomModelConfig {
            max_requirements: 50,
            trace_density: 0.3 * seed as f64 / 199.0,
            satisfy_density: 0.3,
            ..Default::default()
        };
        random_model(seed, &config)
    })
}

fn closure_oracle() -> Outcome {
    let mut pairs = 0;
    for (seed, m) in random_models().enumerate() {
        let got: BTreeSet<(String, String)> = trace_closure(&m)
            .pairs()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        let expected = oracles::closure_by_matrix_powers(&m);
        ensure(got == expected, || format!("seed {seed}: closure differs"))?;
        pairs += got.len();
    }
    Ok(format!("200 models, {pairs} reachable pairs"))
}

fn gap_oracle() -> Outcome {
    let mut uncovered = 0;
    for (seed, m) in random_models().enumerate() {
        let closure = trace_closure(&m);
        let mut covered = Vec::new();
        for (strictness, strict) in [(Strictness::Lenient, false), (Strictness::Strict, true)] {
            let report = gap_analysis(&m, &closure, strictness);
            let entries: Vec<_> = report
                .entries
                .iter()
                .map(|e| (e.case_study_req.to_string(), e.reason.as_str()))
                .collect();
            let got: Vec<String> = report.covered.iter().map(|c| c.to_string()).collect();
            let (expected_entries, expected_covered) = oracles::gap_by_enumeration(&m, strict);
            ensure(entries == expected_entries && got == expected_covered, || {
                format!("seed {seed}: {strictness:?} report differs")
            })?;
            uncovered += entries.len();
            covered.push(got.into_iter().collect::<BTreeSet<_>>());
        }
        ensure(covered[1].is_subset(&covered[0]), || {
            format!("seed {seed}: strict coverage exceeds lenient")
        })?;
    }
    Ok(format!("200 models x 2 modes, {uncovered} uncovered entries"))
}

fn corpus() -> Vec<PathBuf> {
    fn walk(dir: &Path, out: &mut Vec<PathBuf>) {
        let mut entries: Vec<_> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
        entries.sort();
        for p in entries {
            if p.is_dir() {
                walk(&p, out);
            } else if p.extension().is_some_and(|e| e == "req") {
                out.push(p);
            }
        }
    }
    let mut out = Vec::new();
    walk(&fixtures(), &mut out);
    out
}

fn round_trip() -> Outcome {
    let mut tables = 0;
    let files = corpus();
    for path in &files {
        let name = path.display().to_string();
        let text = fs::read_to_string(path).unwrap();
        let first = parse(&text, &name).model.ok_or_else(|| format!("{name}: parse failed"))?;
        let canonical = serialize(&first);
        let second = parse(&canonical, &name)
            .model
            .ok_or_else(|| format!("{name}: reparse failed"))?;
        ensure(first.structurally_eq(&second), || format!("{name}: model changed"))?;
        ensure(serialize(&second) == canonical, || format!("{name}: not idempotent"))?;
        for container in &first.containers {
            let id = container.id.as_str();
            let csv = export_requirements_csv(&first, id).map_err(|d| d.to_string())?;
            let imported =
                import_requirements_csv(&csv, "table.csv", id, &first, ValidationOptions::default());
            let back = imported.model.ok_or_else(|| format!("{name}/{id}: import failed"))?;
            ensure(back.structurally_eq(&first), || format!("{name}/{id}: model changed"))?;
            let again = export_requirements_csv(&back, id).map_err(|d| d.to_string())?;
            ensure(again == csv, || format!("{name}/{id}: CSV not a fixed point"))?;
            tables += 1;
        }
    }
    Ok(format!("{} files, {tables} CSV tables", files.len()))
}

fn mutation_catalog() -> Outcome {
    let dir = TempDir::new().unwrap();
    for mutation in catalog::CATALOG {
        let text = fs::read_to_string(fixtures().join(mutation.fixture)).unwrap();
        let path = dir.path().join(mutation.fixture);
        fs::write(&path, mutation.apply(&text)).unwrap();
        let mut args = vec!["--format", "json", "validate", s(&path)];
        if mutation.relaxed_levels {
            args.insert(0, "--relaxed-levels");
        }
        let out = reqforge(&args);
        let v: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
        let codes: BTreeSet<&str> = v["diagnostics"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|d| d["severity"] == "error")
            .filter_map(|d| d["code"].as_str())
            .collect();
        ensure(exit_code(&out) == 1 && codes == BTreeSet::from([mutation.code]), || {
            format!("{}: exit {}, codes {codes:?}", mutation.name, exit_code(&out))
        })?;
    }
    Ok(format!("{} mutations", catalog::CATALOG.len()))
}

fn determinism() -> Outcome {
    let mut inputs: Vec<PathBuf> = fs::read_dir(fixtures())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.is_dir() || p.extension().is_some_and(|e| e == "req"))
        .collect();
    inputs.sort();
    let mut files = 0;
    for input in &inputs {
        let runs: Vec<TempDir> = (0..2).map(|_| TempDir::new().unwrap()).collect();
        for run in &runs {
            let out = reqforge(&["gen", s(input), "--out", s(run.path())]);
            ensure(exit_code(&out) == 0, || format!("{}: gen exited {}", input.display(), exit_code(&out)))?;
        }
        let (a, b) = (tree(runs[0].path()), tree(runs[1].path()));
        ensure(a == b, || format!("{}: outputs differ", input.display()))?;
        files += a.len();
    }
    Ok(format!("{} inputs, {files} files identical", inputs.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("fig3 coverage and requirement diagram", fig3),
        ("synthetic model scale and SRS size", synthetic_scale),
        ("trace closure equals matrix-power oracle", closure_oracle),
        ("gap analysis equals enumeration", gap_oracle),
        ("DSL and CSV round trip over corpus", round_trip),
        ("mutation catalog yields paired codes", mutation_catalog),
        ("generation is deterministic", determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(run).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("PASS {}: {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}: {name} ({why})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
