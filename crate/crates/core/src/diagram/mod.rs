//! Graphviz diagrams: requirement trace diagrams per component, component
//! and interface diagrams per package, and the deployment diagram.

mod check;
mod dot;

use std::collections::{BTreeSet, HashMap, HashSet};

pub use check::{check_dot, DotSummary};
pub use dot::{Cluster, DotEdge, DotGraph, DotNode, EdgeStyle, Shape};

use crate::analysis::TraceClosure;
use crate::diagnostic::{Code, Diagnostic};
use crate::model::{Component, Model, Package};

/// Kind of diagram, also the file name prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagramKind {
    Requirements,
    Components,
    Deployment,
}

impl DiagramKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagramKind::Requirements => "requirements",
            DiagramKind::Components => "components",
            DiagramKind::Deployment => "deployment",
        }
    }
}

/// Root id used for the model-wide deployment diagram file.
pub const DEPLOYMENT_ROOT: &str = "model";

/// `<kind>_<root-id>.dot`
pub fn diagram_file_name(kind: DiagramKind, root_id: &str) -> String {
    format!("{}_{root_id}.dot", kind.as_str())
}

fn component_node(component: &Component) -> DotNode {
    DotNode {
        id: component.id.to_string(),
        label: component.name.clone(),
        shape: Shape::Component,
    }
}

/// The component, the requirements it satisfies, and everything reachable
/// from those through traces.
pub fn requirement_diagram(
    model: &Model,
    closure: &TraceClosure,
    component_id: &str,
) -> Result<DotGraph, Diagnostic> {
    let index = model.index();
    let (component, _) = index.component(component_id).ok_or_else(|| {
        Diagnostic::new(Code::UnknownComponent, format!("no component `{component_id}`"))
            .with_subject(component_id)
    })?;

    let mut nodes = vec![component_node(component)];
    let mut edges = Vec::new();
    let mut members: BTreeSet<&str> = BTreeSet::new();
    for link in model
        .satisfies
        .iter()
        .filter(|s| s.source.as_str() == component_id)
    {
        if index.requirement(link.target.as_str()).is_none() {
            continue;
        }
        edges.push(DotEdge {
            from: component_id.to_string(),
            to: link.target.to_string(),
            style: EdgeStyle::Satisfy,
        });
        members.insert(link.target.as_str());
        members.extend(closure.reachable(link.target.as_str()).map(|id| id.as_str()));
    }
    for id in &members {
        nodes.push(DotNode {
            id: id.to_string(),
            label: id.to_string(),
            shape: Shape::Requirement,
        });
    }
    for link in &model.traces {
        if members.contains(link.source.as_str()) && members.contains(link.target.as_str()) {
            edges.push(DotEdge {
                from: link.source.to_string(),
                to: link.target.to_string(),
                style: EdgeStyle::Trace,
            });
        }
    }
    Ok(DotGraph::new(
        diagram_name(DiagramKind::Requirements, component_id),
        nodes,
        edges,
        Vec::new(),
    ))
}

fn diagram_name(kind: DiagramKind, root: &str) -> String {
    format!("{}_{root}", kind.as_str())
}

/// Components of the package with their provided and consumed interfaces.
/// Sub-components are drawn inside their parent's cluster.
pub fn component_diagram(model: &Model, package_id: &str) -> Result<DotGraph, Diagnostic> {
    let package = model.package(package_id).ok_or_else(|| {
        Diagnostic::new(Code::UnknownPackage, format!("no package `{package_id}`"))
            .with_subject(package_id)
    })?;
    let index = model.index();

    let mut nodes: Vec<DotNode> = package.components.iter().map(component_node).collect();
    nodes.extend(package.interfaces.iter().map(|i| DotNode {
        id: i.id.to_string(),
        label: i.name.clone(),
        shape: Shape::Interface,
    }));
    let mut edges = Vec::new();
    for component in &package.components {
        let uses = component
            .provided
            .iter()
            .map(|i| (i, EdgeStyle::Provides))
            .chain(component.consumed.iter().map(|i| (i, EdgeStyle::Consumes)));
        for (interface_id, style) in uses {
            // Interfaces of other packages are drawn too, so every edge
            // has both ends.
            if let Some(crate::model::ElementRef::Interface { interface, .. }) =
                index.get(interface_id.as_str())
            {
                nodes.push(DotNode {
                    id: interface.id.to_string(),
                    label: interface.name.clone(),
                    shape: Shape::Interface,
                });
                edges.push(DotEdge {
                    from: component.id.to_string(),
                    to: interface.id.to_string(),
                    style,
                });
            }
        }
    }
    Ok(DotGraph::new(
        diagram_name(DiagramKind::Components, package_id),
        nodes,
        edges,
        containment_clusters(package),
    ))
}

fn containment_clusters(package: &Package) -> Vec<Cluster> {
    let by_id: HashMap<&str, &Component> = package
        .components
        .iter()
        .map(|c| (c.id.as_str(), c))
        .collect();
    let children: HashMap<&str, Vec<&str>> = package
        .components
        .iter()
        .map(|c| {
            let kids = c
                .sub_components
                .iter()
                .map(|id| id.as_str())
                .filter(|id| by_id.contains_key(id))
                .collect();
            (c.id.as_str(), kids)
        })
        .collect();
    let has_parent: HashSet<&str> = children.values().flatten().copied().collect();

    fn build<'p>(
        id: &'p str,
        by_id: &HashMap<&'p str, &'p Component>,
        children: &HashMap<&'p str, Vec<&'p str>>,
        placed: &mut HashSet<&'p str>,
    ) -> Cluster {
        placed.insert(id);
        let mut cluster = Cluster {
            id: id.to_string(),
            label: by_id[id].name.clone(),
            members: vec![id.to_string()],
            children: Vec::new(),
        };
        for &child in &children[id] {
            if placed.contains(child) {
                continue;
            }
            if children[child].is_empty() {
                placed.insert(child);
                cluster.members.push(child.to_string());
            } else {
                cluster.children.push(build(child, by_id, children, placed));
            }
        }
        cluster
    }

    let mut placed = HashSet::new();
    package
        .components
        .iter()
        .map(|c| c.id.as_str())
        .filter(|id| !has_parent.contains(id) && !children[id].is_empty())
        .map(|id| build(id, &by_id, &children, &mut placed))
        .collect()
}

/// Platform nodes and the components deployed on them.
pub fn deployment_diagram(model: &Model) -> DotGraph {
    let index = model.index();
    let mut nodes: Vec<DotNode> = model
        .packages
        .iter()
        .flat_map(|p| &p.nodes)
        .map(|n| DotNode {
            id: n.id.to_string(),
            label: n.name.clone(),
            shape: Shape::Platform,
        })
        .collect();
    let mut edges = Vec::new();
    for (component, _) in model.components() {
        for target in &component.deployed_on {
            if matches!(
                index.get(target.as_str()),
                Some(crate::model::ElementRef::Node { .. })
            ) {
                nodes.push(component_node(component));
                edges.push(DotEdge {
                    from: component.id.to_string(),
                    to: target.to_string(),
                    style: EdgeStyle::Deploy,
                });
            }
        }
    }
    DotGraph::new(
        diagram_name(DiagramKind::Deployment, DEPLOYMENT_ROOT),
        nodes,
        edges,
        Vec::new(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::trace_closure;
    use crate::model::*;

    fn fig3() -> Model {
        let mut m = Model::new("fig3");
        m.containers.push(
            RequirementsContainer::new("MODELIO", "Modelio (SOFT)", Level::Tool)
                .with_requirement(Requirement::new("MODELIO-030", "xmi")),
        );
        m.containers.push(
            RequirementsContainer::new("SYS", "fw", Level::Framework)
                .with_requirement(Requirement::new("SYS-020201", "fw")),
        );
        m.containers.push(
            RequirementsContainer::new("NOKIA", "Nokia", Level::CaseStudy)
                .with_requirement(Requirement::new("NOK-02", "cs")),
        );
        let mut p = Package::new("TOOLS", "tools");
        p.interfaces.push(Interface::new("XMI-EXPORT", "XMI export"));
        p.interfaces.push(Interface::new("XMI-IMPORT", "XMI import"));
        p.nodes.push(Node::new("ECLIPSE-RCP", "Eclipse RCP"));
        let mut c = Component::new("MODELIO-SOFT", "Modelio (SOFT)");
        c.provided.push("XMI-EXPORT".into());
        c.consumed.push("XMI-IMPORT".into());
        c.deployed_on.push("ECLIPSE-RCP".into());
        p.components.push(c);
        p.components.push(Component::new("IDLE", "Idle"));
        m.packages.push(p);
        m.traces.push(TraceLink::new("MODELIO-030", "SYS-020201"));
        m.traces.push(TraceLink::new("SYS-020201", "NOK-02"));
        m.satisfies.push(SatisfyLink::new("MODELIO-SOFT", "MODELIO-030"));
        m
    }

    #[test]
    fn requirement_diagram_fig3() {
        let m = fig3();
        let g = requirement_diagram(&m, &trace_closure(&m), "MODELIO-SOFT").unwrap();
        assert_eq!(
            g.node_ids(),
            ["MODELIO-030", "MODELIO-SOFT", "NOK-02", "SYS-020201"]
        );
        assert_eq!(g.node("MODELIO-SOFT").unwrap().label, "Modelio (SOFT)");
        let styles: Vec<_> = g.edges.iter().map(|e| e.style).collect();
        // Sorted by (from, to): MODELIO-030 sorts before MODELIO-SOFT.
        assert_eq!(styles, [EdgeStyle::Trace, EdgeStyle::Satisfy, EdgeStyle::Trace]);
        let summary = check_dot(&g.to_dot()).unwrap();
        assert_eq!((summary.nodes.len(), summary.edges.len()), (4, 3));
    }

    #[test]
    fn unsatisfying_component_is_alone() {
        let m = fig3();
        let g = requirement_diagram(&m, &trace_closure(&m), "IDLE").unwrap();
        assert_eq!(g.node_ids(), ["IDLE"]);
        assert!(g.edges.is_empty());
    }

    #[test]
    fn unknown_roots() {
        let m = fig3();
        let e = requirement_diagram(&m, &trace_closure(&m), "NOPE").unwrap_err();
        assert_eq!(e.code, Code::UnknownComponent);
        assert_eq!(component_diagram(&m, "NOPE").unwrap_err().code, Code::UnknownPackage);
        // A requirement id is not a component.
        let e = requirement_diagram(&m, &trace_closure(&m), "NOK-02").unwrap_err();
        assert_eq!(e.code, Code::UnknownComponent);
    }

    #[test]
    fn provides_and_consumes() {
        let mut m = fig3();
        m.packages[0].components.pop();
        let g = component_diagram(&m, "TOOLS").unwrap();
        assert_eq!(g.nodes.len(), 3);
        assert_eq!(g.edges.len(), 2);
        assert!(check_dot(&g.to_dot()).is_ok());
    }

    #[test]
    fn empty_package_empty_graph() {
        let mut m = Model::new("m");
        m.packages.push(Package::new("P", "p"));
        let g = component_diagram(&m, "P").unwrap();
        assert!(g.is_empty() && g.edges.is_empty());
        assert!(check_dot(&g.to_dot()).is_ok());
    }

    #[test]
    fn sub_component_inside_parent_cluster() {
        let mut m = Model::new("m");
        let mut p = Package::new("P", "p");
        let mut a = Component::new("A", "A");
        a.sub_components.push("B".into());
        let mut b = Component::new("B", "B");
        b.sub_components.push("C".into());
        p.components.extend([a, b, Component::new("C", "C"), Component::new("D", "D")]);
        m.packages.push(p);
        let g = component_diagram(&m, "P").unwrap();
        assert_eq!(g.clusters.len(), 1);
        assert_eq!(g.clusters[0].members, ["A"]);
        assert_eq!(g.clusters[0].children[0].members, ["B", "C"]);
        let dot = g.to_dot();
        let summary = check_dot(&dot).unwrap();
        assert_eq!(summary.nodes.len(), 4);
        assert_eq!(summary.subgraphs, 2);
        let cluster_b = dot.find("cluster_B").unwrap();
        assert!(dot[cluster_b..].contains("\"C\" [label"));
    }

    #[test]
    fn deployment_edges_follow_relation() {
        let m = fig3();
        let g = deployment_diagram(&m);
        assert_eq!(g.node_ids(), ["ECLIPSE-RCP", "MODELIO-SOFT"]);
        assert_eq!(g.edges.len(), 1);
        assert_eq!(g.node("ECLIPSE-RCP").unwrap().shape, Shape::Platform);
        assert!(deployment_diagram(&Model::default()).is_empty());
    }

    #[test]
    fn file_names() {
        assert_eq!(
            diagram_file_name(DiagramKind::Requirements, "MODELIO-SOFT"),
            "requirements_MODELIO-SOFT.dot"
        );
    }
}
