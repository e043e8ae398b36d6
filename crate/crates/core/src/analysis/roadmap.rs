use serde::Serialize;

use crate::analysis::closure::TraceClosure;
use crate::analysis::gap::{satisfied_requirements, tool_predecessors, Strictness};
use crate::model::{Identifier, Model, Release, Status};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoveringRequirement {
    pub id: Identifier,
    pub release: Release,
    pub status: Status,
    /// Some component satisfies this tool requirement.
    pub satisfied: bool,
}

impl CoveringRequirement {
    /// Contributes to the milestones: satisfied and not cancelled.
    pub fn counts(&self) -> bool {
        self.satisfied && Strictness::Lenient.counts(self.status)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoadmapEntry {
    pub case_study_req: Identifier,
    /// Every tool requirement reaching the case-study requirement, by id.
    pub covering_tool_reqs: Vec<CoveringRequirement>,
    /// Earliest release among counted covering requirements.
    pub first_available: Option<Release>,
    /// Latest release among counted covering requirements.
    pub fully_available: Option<Release>,
}

/// One entry per case-study requirement, sorted by identifier.
pub fn roadmap(model: &Model, closure: &TraceClosure) -> Vec<RoadmapEntry> {
    let satisfied = satisfied_requirements(model);
    tool_predecessors(model, closure)
        .into_iter()
        .map(|(case_study, tools)| {
            let covering_tool_reqs: Vec<_> = tools
                .into_iter()
                .map(|t| CoveringRequirement {
                    id: t.id.clone(),
                    release: t.release,
                    status: t.status,
                    satisfied: satisfied.contains(t.id.as_str()),
                })
                .collect();
            let releases = || {
                covering_tool_reqs
                    .iter()
                    .filter(|c| c.counts())
                    .map(|c| c.release)
            };
            RoadmapEntry {
                case_study_req: case_study.clone(),
                first_available: releases().min(),
                fully_available: releases().max(),
                covering_tool_reqs,
            }
        })
        .collect()
}
