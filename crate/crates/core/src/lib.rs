//! Model-based requirements engineering toolkit.
//!
//! Requirements (tool, framework and case-study levels) and architecture
//! elements (packages, components, interfaces, nodes) are written in a small
//! block language, validated, analysed for traceability and coverage, and
//! turned into Markdown documents and Graphviz diagrams.

pub mod analysis;
pub mod diagnostic;
pub mod diagram;
pub mod docgen;
pub mod dsl;
mod graph;
pub mod model;
pub mod stats;
pub mod synth;
pub mod validate;

pub use diagnostic::{Code, Diagnostic, Severity};
pub use model::{
    Component, Criticality, ElementKind, ElementRef, Identifier, Interface, Level, Model, Node,
    Package, Release, Requirement, RequirementsContainer, SatisfyLink, SourceSpan, Status,
    TraceLink,
};
pub use stats::{stats, ModelStats};
pub use validate::{validate, ValidationOptions};
