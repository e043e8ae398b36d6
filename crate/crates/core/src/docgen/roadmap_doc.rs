use crate::analysis::{gap_analysis, roadmap, trace_closure, Strictness};
use crate::docgen::document::{Block, Document, Section, Table};
use crate::model::{Model, Release};

pub const ROADMAP_TITLE: &str = "Development Roadmap";
pub const NOT_YET_COVERED: &str = "Not yet covered";

/// Heading of the milestone chapter for a release.
pub fn milestone_heading(release: Release) -> String {
    format!("Milestone: {release}")
}

/// One chapter per release milestone listing the case-study requirements
/// that first become available there, then the lenient gap report.
pub fn generate_roadmap_doc(model: &Model) -> Document {
    let closure = trace_closure(model);
    let entries = roadmap(model, &closure);
    let gaps = gap_analysis(model, &closure, Strictness::Lenient);
    let index = model.index();
    let definition = |id: &str| {
        index
            .requirement(id)
            .map(|(r, _)| r.definition.clone())
            .unwrap_or_default()
    };

    let title = if model.name.is_empty() {
        ROADMAP_TITLE.to_string()
    } else {
        format!("{ROADMAP_TITLE}: {}", model.name)
    };
    let mut sections = Vec::new();
    for &release in Release::ALL {
        let mut table = Table::new([
            "Case-study requirement",
            "Definition",
            "Covering tool requirements",
            "Fully available",
        ]);
        for entry in entries.iter().filter(|e| e.first_available == Some(release)) {
            let covering: Vec<String> = entry
                .covering_tool_reqs
                .iter()
                .filter(|c| c.counts())
                .map(|c| format!("{} ({}, {})", c.id, c.release, c.status))
                .collect();
            table.row([
                entry.case_study_req.to_string(),
                definition(entry.case_study_req.as_str()),
                covering.join(", "),
                entry
                    .fully_available
                    .map(|r| r.to_string())
                    .unwrap_or_default(),
            ]);
        }
        let summary = format!(
            "Case-study requirements first covered at the {release} release: {}.",
            table.rows.len()
        );
        sections.push(
            Section::new(1, milestone_heading(release))
                .with_block(Block::Paragraph(summary))
                .with_block(Block::Table(table)),
        );
    }

    let mut table = Table::new(["Case-study requirement", "Definition", "Reason"]);
    for entry in &gaps.entries {
        table.row([
            entry.case_study_req.to_string(),
            definition(entry.case_study_req.as_str()),
            entry.reason.as_str().to_string(),
        ]);
    }
    sections.push(
        Section::new(1, NOT_YET_COVERED)
            .with_block(Block::Paragraph(format!(
                "Case-study requirements without a satisfied covering tool requirement: {} of {}.",
                gaps.uncovered_count,
                gaps.uncovered_count + gaps.covered_count
            )))
            .with_block(Block::Table(table)),
    );
    Document { title, sections }
}
