//! Brute-force reference implementations of the analyses.
#![allow(dead_code)]

use std::collections::BTreeSet;

use reqforge_core::{Level, Model, Status};

fn requirement_ids(model: &Model) -> Vec<String> {
    let mut ids: Vec<String> = model.requirements().map(|(r, _)| r.id.to_string()).collect();
    ids.sort();
    ids.dedup();
    ids
}

fn multiply(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = a.len();
    let mut out = vec![vec![false; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] {
                for j in 0..n {
                    out[i][j] |= b[k][j];
                }
            }
        }
    }
    out
}

/// Transitive closure as the union of the powers `A^1 .. A^n` of the trace
/// adjacency matrix.
pub fn closure_by_matrix_powers(model: &Model) -> BTreeSet<(String, String)> {
    let ids = requirement_ids(model);
    let n = ids.len();
    let pos = |id: &str| ids.iter().position(|x| x == id);
    let mut a = vec![vec![false; n]; n];
    for t in &model.traces {
        if let (Some(i), Some(j)) = (pos(t.source.as_str()), pos(t.target.as_str())) {
            a[i][j] = true;
        }
    }
    let mut power = a.clone();
    let mut reach = a.clone();
    for _ in 1..n {
        power = multiply(&power, &a);
        for i in 0..n {
            for j in 0..n {
                reach[i][j] |= power[i][j];
            }
        }
    }
    let mut out = BTreeSet::new();
    for i in 0..n {
        for j in 0..n {
            if reach[i][j] {
                out.insert((ids[i].clone(), ids[j].clone()));
            }
        }
    }
    out
}

/// Uncovered case-study requirements with their reason, and the covered
/// ones, by enumerating every (tool requirement, case-study requirement)
/// pair.
pub fn gap_by_enumeration(model: &Model, strict: bool) -> (Vec<(String, &'static str)>, Vec<String>) {
    let closure = closure_by_matrix_powers(model);
    let components: BTreeSet<&str> = model.components().map(|(c, _)| c.id.as_str()).collect();
    let satisfied = |id: &str| {
        model
            .satisfies
            .iter()
            .any(|s| s.target.as_str() == id && components.contains(s.source.as_str()))
    };
    let counts = |status: Status| {
        if strict {
            status == Status::Done
        } else {
            status != Status::Cancelled
        }
    };
    let mut case_studies: Vec<String> = model
        .requirements()
        .filter(|(_, c)| c.kind == Level::CaseStudy)
        .map(|(r, _)| r.id.to_string())
        .collect();
    case_studies.sort();
    case_studies.dedup();

    let mut entries = Vec::new();
    let mut covered = Vec::new();
    for cs in case_studies {
        let mut reached = false;
        let mut is_covered = false;
        for (t, c) in model.requirements() {
            if c.kind != Level::Tool || !closure.contains(&(t.id.to_string(), cs.clone())) {
                continue;
            }
            reached = true;
            if satisfied(t.id.as_str()) && counts(t.status) {
                is_covered = true;
            }
        }
        if is_covered {
            covered.push(cs);
        } else if reached {
            entries.push((cs, "traced_but_unsatisfied"));
        } else {
            entries.push((cs, "no_incoming_trace"));
        }
    }
    (entries, covered)
}
