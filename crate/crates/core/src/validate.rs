//! Structural validation of a loaded model.
//!
//! Violations are returned as data. The result is empty iff every invariant
//! holds; empty containers and packages only produce warnings.

use std::collections::{HashMap, HashSet};

use crate::diagnostic::{sort_diagnostics, Code, Diagnostic};
use crate::graph::cyclic_components;
use crate::model::{ElementKind, ElementRef, Identifier, Model, ModelIndex, SourceSpan};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ValidationOptions {
    /// Allow traces between requirements of the same level. The trace graph
    /// must then be acyclic.
    pub relaxed_levels: bool,
}

pub fn validate(model: &Model, options: ValidationOptions) -> Vec<Diagnostic> {
    let index = model.index();
    let mut out = Vec::new();

    check_identifiers(model, &mut out);
    check_requirements(model, &mut out);
    check_traces(model, &index, options, &mut out);
    check_satisfies(model, &index, &mut out);
    check_components(model, &index, &mut out);

    sort_diagnostics(&mut out);
    out
}

fn check_identifiers(model: &Model, out: &mut Vec<Diagnostic>) {
    let mut first_seen: HashMap<&str, ElementRef<'_>> = HashMap::new();
    for element in model.elements() {
        let id = element.id();
        if !id.is_well_formed() {
            out.push(
                Diagnostic::new(
                    Code::InvalidIdentifier,
                    format!("invalid identifier `{id}` on {}", element.kind()),
                )
                .with_subject(id.clone())
                .at(element.span().cloned()),
            );
        }
        match first_seen.get(id.as_str()) {
            Some(first) => {
                let previous = first
                    .span()
                    .map(|s| format!(" (first declared at {s})"))
                    .unwrap_or_default();
                out.push(
                    Diagnostic::new(
                        Code::DuplicateIdentifier,
                        format!("duplicate identifier `{id}`{previous}"),
                    )
                    .with_subject(id.clone())
                    .at(element.span().cloned()),
                );
            }
            None => {
                first_seen.insert(id.as_str(), element);
            }
        }
    }

    for container in &model.containers {
        if container.requirements.is_empty() {
            out.push(
                Diagnostic::new(
                    Code::EmptyGroup,
                    format!("requirements container `{}` is empty", container.id),
                )
                .with_subject(container.id.clone())
                .at(container.span.clone()),
            );
        }
    }
    for package in &model.packages {
        if package.is_empty() {
            out.push(
                Diagnostic::new(Code::EmptyGroup, format!("package `{}` is empty", package.id))
                    .with_subject(package.id.clone())
                    .at(package.span.clone()),
            );
        }
    }
}

fn check_requirements(model: &Model, out: &mut Vec<Diagnostic>) {
    for (requirement, _) in model.requirements() {
        if requirement.definition.trim().is_empty() {
            out.push(
                Diagnostic::new(
                    Code::EmptyDefinition,
                    format!("requirement `{}` has an empty definition", requirement.id),
                )
                .with_subject(requirement.id.clone())
                .at(requirement.span.clone()),
            );
        }
    }
}

/// Checks that `target` resolves to an element of `expected` kind.
fn check_reference(
    index: &ModelIndex<'_>,
    target: &Identifier,
    expected: ElementKind,
    role: &str,
    span: Option<&SourceSpan>,
    out: &mut Vec<Diagnostic>,
) -> bool {
    match index.get(target.as_str()) {
        None => {
            out.push(
                Diagnostic::new(
                    Code::UnresolvedReference,
                    format!("{role} `{target}` does not resolve to any element"),
                )
                .with_subject(target.clone())
                .at(span.cloned()),
            );
            false
        }
        Some(element) if element.kind() != expected => {
            out.push(
                Diagnostic::new(
                    Code::WrongReferenceKind,
                    format!(
                        "{role} `{target}` is a {}, expected a {expected}",
                        element.kind()
                    ),
                )
                .with_subject(target.clone())
                .at(span.cloned()),
            );
            false
        }
        Some(_) => true,
    }
}

fn check_traces(
    model: &Model,
    index: &ModelIndex<'_>,
    options: ValidationOptions,
    out: &mut Vec<Diagnostic>,
) {
    let mut seen = HashSet::new();
    // Requirement id -> dense vertex, for cycle detection.
    let mut vertices: HashMap<&str, usize> = HashMap::new();
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();

    for (link_no, link) in model.traces.iter().enumerate() {
        let span = link.span.as_ref();
        if !seen.insert((&link.source, &link.target)) {
            out.push(
                Diagnostic::new(
                    Code::DuplicateTrace,
                    format!("duplicate trace `{} -> {}`", link.source, link.target),
                )
                .with_subject(link.source.clone())
                .at(span.cloned()),
            );
            continue;
        }
        let source_ok = check_reference(
            index,
            &link.source,
            ElementKind::Requirement,
            "trace source",
            span,
            out,
        );
        let target_ok = check_reference(
            index,
            &link.target,
            ElementKind::Requirement,
            "trace target",
            span,
            out,
        );
        if !(source_ok && target_ok) {
            continue;
        }
        let (Some(from), Some(to)) = (
            index.level_of(link.source.as_str()),
            index.level_of(link.target.as_str()),
        ) else {
            continue;
        };
        let legal = if options.relaxed_levels {
            from <= to
        } else {
            from < to
        };
        if !legal {
            out.push(
                Diagnostic::new(
                    Code::TraceLevelOrder,
                    format!(
                        "trace `{} -> {}` goes from {from} level to {to} level",
                        link.source, link.target
                    ),
                )
                .with_subject(link.source.clone())
                .at(span.cloned()),
            );
            continue;
        }
        let next = vertices.len();
        let s = *vertices.entry(link.source.as_str()).or_insert(next);
        let next = vertices.len();
        let t = *vertices.entry(link.target.as_str()).or_insert(next);
        edges.push((s, t, link_no));
    }

    if !options.relaxed_levels {
        // Strict level order already rules out cycles.
        return;
    }
    let mut adjacency = vec![Vec::new(); vertices.len()];
    for &(s, t, _) in &edges {
        adjacency[s].push(t);
    }
    let mut names = vec![""; vertices.len()];
    for (name, &v) in &vertices {
        names[v] = name;
    }
    for component in cyclic_components(&adjacency) {
        let members: HashSet<usize> = component.iter().copied().collect();
        // Report at the first declared link inside the cycle.
        let link_no = edges
            .iter()
            .filter(|(s, t, _)| members.contains(s) && members.contains(t))
            .map(|&(_, _, no)| no)
            .min()
            .expect("cyclic component has an internal edge");
        let link = &model.traces[link_no];
        let mut ids: Vec<&str> = component.iter().map(|&v| names[v]).collect();
        ids.sort_unstable();
        out.push(
            Diagnostic::new(
                Code::TraceCycle,
                format!("trace cycle through {}", ids.join(", ")),
            )
            .with_subject(Identifier::new(ids[0]))
            .at(link.span.clone()),
        );
    }
}

fn check_satisfies(model: &Model, index: &ModelIndex<'_>, out: &mut Vec<Diagnostic>) {
    let mut seen = HashSet::new();
    for link in &model.satisfies {
        let span = link.span.as_ref();
        if !seen.insert((&link.source, &link.target)) {
            out.push(
                Diagnostic::new(
                    Code::DuplicateSatisfy,
                    format!("duplicate satisfy `{} -> {}`", link.source, link.target),
                )
                .with_subject(link.source.clone())
                .at(span.cloned()),
            );
            continue;
        }
        check_reference(
            index,
            &link.source,
            ElementKind::Component,
            "satisfy source",
            span,
            out,
        );
        check_reference(
            index,
            &link.target,
            ElementKind::Requirement,
            "satisfy target",
            span,
            out,
        );
    }
}

fn check_components(model: &Model, index: &ModelIndex<'_>, out: &mut Vec<Diagnostic>) {
    let components: Vec<_> = model.components().map(|(c, _)| c).collect();
    let position: HashMap<&str, usize> = components
        .iter()
        .enumerate()
        .rev()
        .map(|(i, c)| (c.id.as_str(), i))
        .collect();
    let mut adjacency = vec![Vec::new(); components.len()];
    let mut parents: HashMap<usize, Vec<usize>> = HashMap::new();

    for (i, component) in components.iter().enumerate() {
        let span = component.span.as_ref();
        let lists = [
            (&component.provided, ElementKind::Interface, "provided interface"),
            (&component.consumed, ElementKind::Interface, "consumed interface"),
            (&component.deployed_on, ElementKind::Node, "deployment node"),
        ];
        for (ids, kind, role) in lists {
            for id in ids {
                check_reference(index, id, kind, role, span, out);
            }
        }
        for part in &component.sub_components {
            if check_reference(index, part, ElementKind::Component, "sub-component", span, out) {
                let child = position[part.as_str()];
                if !adjacency[i].contains(&child) {
                    adjacency[i].push(child);
                    parents.entry(child).or_default().push(i);
                }
            }
        }
    }

    let mut multi: Vec<_> = parents.into_iter().filter(|(_, p)| p.len() > 1).collect();
    multi.sort_unstable();
    for (child, parent_list) in multi {
        let child = components[child];
        let names: Vec<_> = parent_list
            .iter()
            .map(|&p| components[p].id.as_str())
            .collect();
        out.push(
            Diagnostic::new(
                Code::MultipleParents,
                format!(
                    "component `{}` is a sub-component of several parents: {}",
                    child.id,
                    names.join(", ")
                ),
            )
            .with_subject(child.id.clone())
            .at(child.span.clone()),
        );
    }

    for cycle in cyclic_components(&adjacency) {
        let first = components[cycle[0]];
        let mut ids: Vec<_> = cycle.iter().map(|&v| components[v].id.as_str()).collect();
        ids.sort_unstable();
        out.push(
            Diagnostic::new(
                Code::ContainmentCycle,
                format!("component containment cycle through {}", ids.join(", ")),
            )
            .with_subject(first.id.clone())
            .at(first.span.clone()),
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::*;

    fn codes(diags: &[Diagnostic]) -> Vec<&'static str> {
        diags.iter().map(|d| d.code.as_str()).collect()
    }

    fn base() -> Model {
        let mut m = Model::new("t");
        m.containers.push(
            RequirementsContainer::new("TOOLS", "Tools", Level::Tool)
                .with_requirement(Requirement::new("T-1", "tool one"))
                .with_requirement(Requirement::new("T-2", "tool two")),
        );
        m.containers.push(
            RequirementsContainer::new("FW", "Framework", Level::Framework)
                .with_requirement(Requirement::new("F-1", "framework one")),
        );
        let mut pkg = Package::new("PKG", "Package");
        pkg.components.push(Component::new("C", "Comp"));
        m.packages.push(pkg);
        m
    }

    #[test]
    fn clean_model_has_no_diagnostics() {
        let mut m = base();
        m.traces.push(TraceLink::new("T-1", "F-1"));
        m.satisfies.push(SatisfyLink::new("C", "T-1"));
        assert!(validate(&m, ValidationOptions::default()).is_empty());
    }

    #[test]
    fn duplicate_requirement_id() {
        let mut m = base();
        m.containers[0].requirements[1].id = Identifier::new("T-1");
        assert_eq!(codes(&validate(&m, Default::default())), ["E001"]);
    }

    #[test]
    fn wrong_trace_direction() {
        let mut m = base();
        m.traces.push(TraceLink::new("F-1", "T-1"));
        assert_eq!(codes(&validate(&m, Default::default())), ["E010"]);
    }

    #[test]
    fn same_level_trace_needs_relaxed_mode() {
        let mut m = base();
        m.traces.push(TraceLink::new("T-1", "T-2"));
        assert_eq!(codes(&validate(&m, Default::default())), ["E010"]);
        let relaxed = ValidationOptions {
            relaxed_levels: true,
        };
        assert!(validate(&m, relaxed).is_empty());
    }

    #[test]
    fn relaxed_two_cycle_is_reported_once() {
        let mut m = base();
        m.traces.push(TraceLink::new("T-1", "T-2"));
        m.traces.push(TraceLink::new("T-2", "T-1"));
        let relaxed = ValidationOptions {
            relaxed_levels: true,
        };
        let diags = validate(&m, relaxed);
        assert_eq!(codes(&diags), ["E011"]);
        assert!(diags[0].message.contains("T-1, T-2"));
    }

    #[test]
    fn relaxed_self_loop_is_a_cycle() {
        let mut m = base();
        m.traces.push(TraceLink::new("T-1", "T-1"));
        let relaxed = ValidationOptions {
            relaxed_levels: true,
        };
        assert_eq!(codes(&validate(&m, relaxed)), ["E011"]);
        assert_eq!(codes(&validate(&m, Default::default())), ["E010"]);
    }

    #[test]
    fn dangling_and_wrong_kind_references() {
        let mut m = base();
        m.traces.push(TraceLink::new("T-1", "NOPE"));
        m.satisfies.push(SatisfyLink::new("T-2", "T-1"));
        assert_eq!(codes(&validate(&m, Default::default())), ["E003", "E004"]);
    }

    #[test]
    fn duplicate_links() {
        let mut m = base();
        m.traces.push(TraceLink::new("T-1", "F-1"));
        m.traces.push(TraceLink::new("T-1", "F-1"));
        m.satisfies.push(SatisfyLink::new("C", "T-1"));
        m.satisfies.push(SatisfyLink::new("C", "T-1"));
        assert_eq!(codes(&validate(&m, Default::default())), ["E006", "E007"]);
    }

    #[test]
    fn containment_cycle_and_multiple_parents() {
        let mut m = base();
        let pkg = &mut m.packages[0];
        pkg.components.push(Component::new("D", "D"));
        pkg.components[0].sub_components.push("D".into());
        pkg.components[1].sub_components.push("C".into());
        assert_eq!(codes(&validate(&m, Default::default())), ["E008"]);

        let mut m = base();
        let pkg = &mut m.packages[0];
        pkg.components.push(Component::new("D", "D"));
        pkg.components.push(Component::new("E", "E"));
        pkg.components[0].sub_components.push("E".into());
        pkg.components[1].sub_components.push("E".into());
        assert_eq!(codes(&validate(&m, Default::default())), ["E009"]);
    }

    #[test]
    fn empty_definition_and_bad_identifier() {
        let mut m = base();
        m.containers[0].requirements[0].definition = "  \n".into();
        m.containers[0].requirements[1].id = Identifier::new("2-BAD");
        assert_eq!(codes(&validate(&m, Default::default())), ["E002", "E005"]);
    }

    #[test]
    fn empty_groups_warn() {
        let mut m = Model::new("t");
        m.containers
            .push(RequirementsContainer::new("EMPTY", "Empty", Level::CaseStudy));
        m.packages.push(Package::new("P", "P"));
        let diags = validate(&m, Default::default());
        assert_eq!(codes(&diags), ["W001", "W001"]);
        assert!(diags.iter().all(|d| !d.is_error()));
    }

    #[test]
    fn interface_and_node_references() {
        let mut m = base();
        let pkg = &mut m.packages[0];
        pkg.interfaces.push(Interface::new("XMI-EXPORT", "XMI export"));
        pkg.nodes.push(Node::new("JVM", "JVM"));
        pkg.components[0].provided.push("XMI-EXPORT".into());
        pkg.components[0].deployed_on.push("JVM".into());
        assert!(validate(&m, Default::default()).is_empty());
        m.packages[0].components[0].consumed.push("JVM".into());
        assert_eq!(codes(&validate(&m, Default::default())), ["E004"]);
    }
}
