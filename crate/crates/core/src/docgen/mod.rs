//! Document generation: the software requirements specification and the
//! development roadmap, as a section tree rendered to Markdown.

mod document;
mod markdown;
mod roadmap_doc;
mod srs;

pub use document::{Block, Document, Section, Table};
pub use markdown::render_markdown;
pub use roadmap_doc::{generate_roadmap_doc, milestone_heading, NOT_YET_COVERED, ROADMAP_TITLE};
pub use srs::{
    generate_srs, COMMON_INTERFACES, COMPONENT_SUBSECTIONS, OVERVIEW, SRS_TITLE, UNALLOCATED,
};
