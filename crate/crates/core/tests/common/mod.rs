#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};

use reqforge_core::dsl::parse;
use reqforge_core::{validate, Model, ValidationOptions};

pub fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

/// Every `.req` file under the fixtures directory, sorted.
pub fn corpus() -> Vec<PathBuf> {
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
    walk(&fixtures_dir(), &mut out);
    out
}

pub fn load(name: &str) -> Model {
    let path = fixtures_dir().join(name);
    let text = fs::read_to_string(&path).unwrap();
    let result = parse(&text, name);
    assert!(result.is_ok(), "{name}: {:?}", result.diagnostics);
    let model = result.model.unwrap();
    let errors: Vec<_> = validate(&model, ValidationOptions::default())
        .into_iter()
        .filter(|d| d.is_error())
        .collect();
    assert!(errors.is_empty(), "{name}: {errors:?}");
    model
}

pub fn random_model(seed: u64, max_requirements: usize, trace: f64, satisfy: f64) -> Model {
    let config = reqforge_core::synth::RandomModelConfig {
        max_requirements,
        trace_density: trace,
        satisfy_density: satisfy,
        ..Default::default()
    };
    reqforge_core::synth::random_model(seed, &config)
}

/// Whether a non-empty trace path leads from `from` to `to` (depth-first).
pub fn reaches(model: &Model, from: &str, to: &str) -> bool {
    let mut stack = vec![from];
    let mut seen = std::collections::HashSet::new();
    while let Some(at) = stack.pop() {
        for t in model.traces.iter().filter(|t| t.source.as_str() == at) {
            if t.target.as_str() == to {
                return true;
            }
            if seen.insert(t.target.as_str()) {
                stack.push(t.target.as_str());
            }
        }
    }
    false
}
