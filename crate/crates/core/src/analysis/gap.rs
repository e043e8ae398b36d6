//! Coverage of case-study requirements by implemented tool requirements.
//!
//! A case-study requirement is covered when some tool-level requirement
//! reaches it through traces and is satisfied by at least one component.
//! Framework requirements only matter as intermediate path nodes.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::Serialize;

use crate::analysis::closure::TraceClosure;
use crate::model::{Identifier, Level, Model, Requirement, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strictness {
    /// Satisfied tool requirements count unless cancelled.
    Lenient,
    /// Satisfied tool requirements count only once done.
    Strict,
}

impl Strictness {
    pub fn counts(self, status: Status) -> bool {
        match self {
            Strictness::Lenient => status != Status::Cancelled,
            Strictness::Strict => status == Status::Done,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GapReason {
    NoIncomingTrace,
    TracedButUnsatisfied,
}

impl GapReason {
    pub fn as_str(self) -> &'static str {
        match self {
            GapReason::NoIncomingTrace => "no_incoming_trace",
            GapReason::TracedButUnsatisfied => "traced_but_unsatisfied",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapEntry {
    pub case_study_req: Identifier,
    pub reason: GapReason,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapReport {
    pub strictness: Strictness,
    /// Uncovered case-study requirements, by identifier.
    pub entries: Vec<GapEntry>,
    /// Covered case-study requirements, by identifier.
    pub covered: Vec<Identifier>,
    pub covered_count: usize,
    pub uncovered_count: usize,
}

impl GapReport {
    pub fn is_fully_covered(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Tool requirements that are the source of at least one satisfy link.
pub(crate) fn satisfied_requirements(model: &Model) -> HashSet<&str> {
    let components: HashSet<&str> = model.components().map(|(c, _)| c.id.as_str()).collect();
    model
        .satisfies
        .iter()
        .filter(|s| components.contains(s.source.as_str()))
        .map(|s| s.target.as_str())
        .collect()
}

/// For every case-study requirement, the tool requirements reaching it.
pub(crate) fn tool_predecessors<'m>(
    model: &'m Model,
    closure: &TraceClosure,
) -> BTreeMap<&'m Identifier, Vec<&'m Requirement>> {
    let case_studies: BTreeSet<&Identifier> = model
        .requirements()
        .filter(|(_, c)| c.kind == Level::CaseStudy)
        .map(|(r, _)| &r.id)
        .collect();
    let mut preds: BTreeMap<&Identifier, Vec<&Requirement>> =
        case_studies.iter().map(|id| (*id, Vec::new())).collect();
    for (tool, _) in model.requirements().filter(|(_, c)| c.kind == Level::Tool) {
        for reached in closure.reachable(tool.id.as_str()) {
            if let Some(list) = preds.get_mut(reached) {
                list.push(tool);
            }
        }
    }
    for list in preds.values_mut() {
        list.sort_by(|a, b| a.id.cmp(&b.id));
        list.dedup_by(|a, b| a.id == b.id);
    }
    preds
}

pub fn gap_analysis(model: &Model, closure: &TraceClosure, strictness: Strictness) -> GapReport {
    let satisfied = satisfied_requirements(model);
    let mut entries = Vec::new();
    let mut covered = Vec::new();
    for (case_study, tools) in tool_predecessors(model, closure) {
        let is_covered = tools
            .iter()
            .any(|t| satisfied.contains(t.id.as_str()) && strictness.counts(t.status));
        if is_covered {
            covered.push(case_study.clone());
        } else {
            let reason = if tools.is_empty() {
                GapReason::NoIncomingTrace
            } else {
                GapReason::TracedButUnsatisfied
            };
            entries.push(GapEntry {
                case_study_req: case_study.clone(),
                reason,
            });
        }
    }
    GapReport {
        strictness,
        covered_count: covered.len(),
        uncovered_count: entries.len(),
        entries,
        covered,
    }
}
