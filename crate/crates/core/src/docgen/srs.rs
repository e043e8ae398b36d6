use std::collections::{BTreeSet, HashMap, HashSet};

use crate::diagram::{diagram_file_name, DiagramKind, DEPLOYMENT_ROOT};
use crate::docgen::document::{Block, Document, Section, Table};
use crate::model::{Component, ElementRef, Identifier, Model, ModelIndex, Package, Requirement};
use crate::stats::stats;

pub const SRS_TITLE: &str = "Software Requirements Specification";
pub const OVERVIEW: &str = "Overview";
pub const COMMON_INTERFACES: &str = "Common Interfaces";
pub const UNALLOCATED: &str = "Unallocated requirements";
/// Headings of the four subsections of every component section.
pub const COMPONENT_SUBSECTIONS: [&str; 4] = ["Requirements", "Services", "Structure", "Deployment"];

const REQUIREMENT_COLUMNS: [&str; 5] = ["Requirement", "Definition", "Criticality", "Release", "Status"];

fn diagram_path(kind: DiagramKind, root: &str) -> String {
    format!("diagrams/{}", diagram_file_name(kind, root))
}

fn titled(name: &str, id: &Identifier) -> String {
    if name.is_empty() || name == id.as_str() {
        id.to_string()
    } else {
        format!("{name} ({id})")
    }
}

fn requirement_row(r: &Requirement) -> [String; 5] {
    [
        r.id.to_string(),
        r.definition.clone(),
        r.criticality.to_string(),
        r.release.to_string(),
        r.status.to_string(),
    ]
}

fn counted(n: usize, noun: &str) -> String {
    if n == 1 {
        format!("1 {noun}")
    } else {
        format!("{n} {noun}s")
    }
}

fn opt(text: &Option<String>) -> String {
    text.clone().unwrap_or_default()
}

/// Software requirements specification: an overview, one chapter per
/// package with a section per component, and an appendix of requirements
/// no component satisfies.
pub fn generate_srs(model: &Model) -> Document {
    let index = model.index();
    let mut satisfied_by: HashMap<&str, BTreeSet<&str>> = HashMap::new();
    for link in &model.satisfies {
        satisfied_by
            .entry(link.source.as_str())
            .or_default()
            .insert(link.target.as_str());
    }
    let parents: HashMap<&str, &str> = model
        .components()
        .flat_map(|(c, _)| c.sub_components.iter().map(move |s| (s.as_str(), c.id.as_str())))
        .collect();

    let mut providers: HashMap<&str, Vec<&str>> = HashMap::new();
    let mut consumers: HashMap<&str, Vec<&str>> = HashMap::new();
    for (c, _) in model.components() {
        for i in &c.provided {
            providers.entry(i.as_str()).or_default().push(c.id.as_str());
        }
        for i in &c.consumed {
            consumers.entry(i.as_str()).or_default().push(c.id.as_str());
        }
    }
    let ctx = Context {
        index,
        satisfied_by,
        parents,
        providers,
        consumers,
    };

    let title = if model.name.is_empty() {
        SRS_TITLE.to_string()
    } else {
        format!("{SRS_TITLE}: {}", model.name)
    };
    let mut sections = vec![overview(model)];
    for package in &model.packages {
        sections.push(package_chapter(package, &ctx));
    }
    let allocated: HashSet<&str> = ctx.satisfied_by.values().flatten().copied().collect();
    if let Some(appendix) = unallocated(model, &allocated) {
        sections.push(appendix);
    }
    Document { title, sections }
}

fn overview(model: &Model) -> Section {
    let s = stats(model);
    let mut section = Section::new(1, OVERVIEW);
    if !model.name.is_empty() {
        section.push(Block::Paragraph(format!(
            "This specification is generated from the model {}.",
            model.name
        )));
    }
    let mut counts = Table::new(["Metric", "Count"]);
    counts.row(["Requirements".to_string(), s.requirement_count.to_string()]);
    counts.row(["Architecture elements".to_string(), s.architecture_element_count.to_string()]);
    counts.row(["Total elements".to_string(), s.total_element_count.to_string()]);
    section.push(Block::Table(counts));

    let mut containers = Table::new(["Container", "Name", "Level", "Owner", "Requirements"]);
    for (c, cs) in model.containers.iter().zip(&s.containers) {
        containers.row([
            c.id.to_string(),
            c.name.clone(),
            c.kind.to_string(),
            opt(&c.owner),
            cs.requirements.to_string(),
        ]);
    }
    section.child("Requirements containers").push(Block::Table(containers));

    let mut packages = Table::new(["Package", "Name", "Components", "Interfaces", "Nodes"]);
    for p in &s.packages {
        packages.row([
            p.id.to_string(),
            p.name.clone(),
            p.components.to_string(),
            p.interfaces.to_string(),
            p.nodes.to_string(),
        ]);
    }
    let child = section.child("Packages");
    child.push(Block::Table(packages));
    if !model.packages.is_empty() {
        child.push(Block::Diagram {
            caption: "Deployment diagram".into(),
            path: diagram_path(DiagramKind::Deployment, DEPLOYMENT_ROOT),
        });
    }
    section
}

/// Components of the package in pre-order: each root (no parent inside the
/// package) followed by its descendants.
fn ordered_components<'m>(package: &'m Package, parents: &HashMap<&str, &str>) -> Vec<&'m Component> {
    let local: HashMap<&str, &Component> = package
        .components
        .iter()
        .map(|c| (c.id.as_str(), c))
        .collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    fn visit<'m>(
        c: &'m Component,
        local: &HashMap<&str, &'m Component>,
        seen: &mut HashSet<&'m str>,
        out: &mut Vec<&'m Component>,
    ) {
        if !seen.insert(c.id.as_str()) {
            return;
        }
        out.push(c);
        for sub in &c.sub_components {
            if let Some(child) = local.get(sub.as_str()) {
                visit(child, local, seen, out);
            }
        }
    }
    for c in &package.components {
        let is_root = parents
            .get(c.id.as_str())
            .map_or(true, |p| !local.contains_key(p));
        if is_root {
            visit(c, &local, &mut seen, &mut out);
        }
    }
    for c in &package.components {
        visit(c, &local, &mut seen, &mut out);
    }
    out
}

struct Context<'m> {
    index: ModelIndex<'m>,
    /// Component id to the requirements it satisfies.
    satisfied_by: HashMap<&'m str, BTreeSet<&'m str>>,
    /// Sub-component id to its parent.
    parents: HashMap<&'m str, &'m str>,
    providers: HashMap<&'m str, Vec<&'m str>>,
    consumers: HashMap<&'m str, Vec<&'m str>>,
}

fn package_chapter(package: &Package, ctx: &Context<'_>) -> Section {
    let mut chapter = Section::new(1, titled(&package.name, &package.id));
    chapter.push(Block::Paragraph(format!(
        "Package {} contains {}, {} and {}.",
        package.id,
        counted(package.components.len(), "component"),
        counted(package.interfaces.len(), "interface"),
        counted(package.nodes.len(), "node")
    )));
    chapter.push(Block::Diagram {
        caption: format!("Component diagram of {}", package.id),
        path: diagram_path(DiagramKind::Components, package.id.as_str()),
    });

    let common = chapter.child(COMMON_INTERFACES);
    if package.interfaces.is_empty() {
        common.push(Block::Paragraph("This package declares no interfaces.".into()));
    } else {
        let mut table = Table::new(["Interface", "Name", "Description", "Provided by", "Consumed by"]);
        for i in &package.interfaces {
            let list = |m: &HashMap<&str, Vec<&str>>| {
                m.get(i.id.as_str()).map(|v| v.join(", ")).unwrap_or_default()
            };
            table.row([
                i.id.to_string(),
                i.name.clone(),
                opt(&i.description),
                list(&ctx.providers),
                list(&ctx.consumers),
            ]);
        }
        common.push(Block::Table(table));
    }

    for component in ordered_components(package, &ctx.parents) {
        let section = chapter.child(titled(&component.name, &component.id));
        component_section(section, component, ctx);
    }
    chapter
}

fn component_section(section: &mut Section, component: &Component, ctx: &Context<'_>) {
    let index = &ctx.index;
    let mut intro = format!("Component {}", component.id);
    if let Some(owner) = &component.owner {
        intro.push_str(&format!(" is owned by {owner}"));
    }
    if let Some(parent) = ctx.parents.get(component.id.as_str()) {
        intro.push_str(if component.owner.is_some() { " and" } else { "" });
        intro.push_str(&format!(" is part of {parent}"));
    } else if component.owner.is_none() {
        intro.push_str(" is a top-level component");
    }
    intro.push('.');
    section.push(Block::Paragraph(intro));

    let [req_h, svc_h, str_h, dep_h] = COMPONENT_SUBSECTIONS;

    let requirements = section.child(req_h);
    let rows: Vec<&Requirement> = ctx
        .satisfied_by
        .get(component.id.as_str())
        .into_iter()
        .flatten()
        .filter_map(|id| index.requirement(id).map(|(r, _)| r))
        .collect();
    if rows.is_empty() {
        requirements.push(Block::Paragraph(
            "No requirements are satisfied by this component.".into(),
        ));
    } else {
        let mut table = Table::new(REQUIREMENT_COLUMNS);
        for r in rows {
            table.row(requirement_row(r));
        }
        requirements.push(Block::Table(table));
    }
    requirements.push(Block::Diagram {
        caption: format!("Requirements diagram of {}", component.id),
        path: diagram_path(DiagramKind::Requirements, component.id.as_str()),
    });

    let services = section.child(svc_h);
    if component.provided.is_empty() && component.consumed.is_empty() {
        services.push(Block::Paragraph(
            "This component provides and consumes no interfaces.".into(),
        ));
    } else {
        let mut table = Table::new(["Direction", "Interface", "Name", "Description"]);
        let lists = [("provided", &component.provided), ("consumed", &component.consumed)];
        for (direction, ids) in lists {
            for id in ids {
                let (name, description) = match index.get(id.as_str()) {
                    Some(ElementRef::Interface { interface, .. }) => {
                        (interface.name.clone(), opt(&interface.description))
                    }
                    _ => (String::new(), String::new()),
                };
                table.row([direction.to_string(), id.to_string(), name, description]);
            }
        }
        services.push(Block::Table(table));
    }

    let structure = section.child(str_h);
    if component.sub_components.is_empty() {
        structure.push(Block::Paragraph("This component has no sub-components.".into()));
    } else {
        let mut table = Table::new(["Sub-component", "Name", "Owner", "Parts"]);
        for id in &component.sub_components {
            let (name, owner, parts) = match index.component(id.as_str()) {
                Some((c, _)) => (c.name.clone(), opt(&c.owner), c.sub_components.len()),
                None => (String::new(), String::new(), 0),
            };
            table.row([id.to_string(), name, owner, parts.to_string()]);
        }
        structure.push(Block::Table(table));
    }

    let deployment = section.child(dep_h);
    if component.deployed_on.is_empty() {
        deployment.push(Block::Paragraph(
            "This component is not deployed on any node.".into(),
        ));
    } else {
        let mut table = Table::new(["Node", "Name", "Description"]);
        for id in &component.deployed_on {
            let (name, description) = match index.get(id.as_str()) {
                Some(ElementRef::Node { node, .. }) => {
                    (node.name.clone(), opt(&node.description))
                }
                _ => (String::new(), String::new()),
            };
            table.row([id.to_string(), name, description]);
        }
        deployment.push(Block::Table(table));
    }
}

fn unallocated(model: &Model, allocated: &HashSet<&str>) -> Option<Section> {
    let mut chapter = Section::new(1, UNALLOCATED);
    chapter.push(Block::Paragraph(
        "The following requirements are not satisfied by any component.".into(),
    ));
    for container in &model.containers {
        let rows: Vec<_> = container
            .requirements
            .iter()
            .filter(|r| !allocated.contains(r.id.as_str()))
            .collect();
        if rows.is_empty() {
            continue;
        }
        let mut table = Table::new(REQUIREMENT_COLUMNS);
        for r in rows {
            table.row(requirement_row(r));
        }
        let section = chapter.child(titled(&container.name, &container.id));
        section.push(Block::Paragraph(format!("Level: {}.", container.kind)));
        section.push(Block::Table(table));
    }
    (!chapter.children.is_empty()).then_some(chapter)
}
