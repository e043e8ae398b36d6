use std::fmt::Write;

/// Node shape class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    Requirement,
    Component,
    Interface,
    Platform,
}

impl Shape {
    fn dot(self) -> &'static str {
        match self {
            Shape::Requirement => "note",
            Shape::Component => "component",
            Shape::Interface => "ellipse",
            Shape::Platform => "box3d",
        }
    }
}

/// Edge style class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeStyle {
    Satisfy,
    Trace,
    Provides,
    Consumes,
    Deploy,
}

impl EdgeStyle {
    fn attributes(self) -> &'static str {
        match self {
            EdgeStyle::Satisfy => "style=dashed, label=\"satisfy\"",
            EdgeStyle::Trace => "style=solid, label=\"trace\"",
            EdgeStyle::Provides => "style=solid, arrowhead=empty, label=\"provides\"",
            EdgeStyle::Consumes => "style=dashed, arrowhead=open, label=\"consumes\"",
            EdgeStyle::Deploy => "style=solid, label=\"deployed on\"",
        }
    }

    pub fn is_dashed(self) -> bool {
        matches!(self, EdgeStyle::Satisfy | EdgeStyle::Consumes)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DotNode {
    pub id: String,
    pub label: String,
    pub shape: Shape,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DotEdge {
    pub from: String,
    pub to: String,
    pub style: EdgeStyle,
}

/// Group of nodes drawn inside one box; clusters nest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cluster {
    pub id: String,
    pub label: String,
    pub members: Vec<String>,
    pub children: Vec<Cluster>,
}

impl Cluster {
    fn all_members(&self) -> Vec<&str> {
        let mut out: Vec<&str> = self.members.iter().map(String::as_str).collect();
        for child in &self.children {
            out.extend(child.all_members());
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DotGraph {
    pub name: String,
    pub nodes: Vec<DotNode>,
    pub edges: Vec<DotEdge>,
    pub clusters: Vec<Cluster>,
}

impl DotGraph {
    /// Builds a graph with nodes sorted by id and edges by `(from, to)`.
    /// Duplicate nodes and edges are dropped.
    pub(crate) fn new(
        name: impl Into<String>,
        mut nodes: Vec<DotNode>,
        mut edges: Vec<DotEdge>,
        mut clusters: Vec<Cluster>,
    ) -> Self {
        nodes.sort_by(|a, b| a.id.cmp(&b.id));
        nodes.dedup_by(|a, b| a.id == b.id);
        edges.sort();
        edges.dedup();
        sort_clusters(&mut clusters);
        DotGraph {
            name: name.into(),
            nodes,
            edges,
            clusters,
        }
    }

    pub fn node(&self, id: &str) -> Option<&DotNode> {
        self.nodes.iter().find(|n| n.id == id)
    }

    pub fn node_ids(&self) -> Vec<&str> {
        self.nodes.iter().map(|n| n.id.as_str()).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Graphviz text. Byte-stable for a given graph.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph {} {{", quote(&self.name));
        out.push_str("  graph [rankdir=LR, fontname=\"Helvetica\"];\n");
        out.push_str("  node [fontname=\"Helvetica\"];\n");
        out.push_str("  edge [fontname=\"Helvetica\"];\n");

        let clustered: std::collections::HashSet<&str> = self
            .clusters
            .iter()
            .flat_map(Cluster::all_members)
            .collect();
        for node in self.nodes.iter().filter(|n| !clustered.contains(n.id.as_str())) {
            write_node(&mut out, node, 1);
        }
        for cluster in &self.clusters {
            self.write_cluster(&mut out, cluster, 1);
        }
        for edge in &self.edges {
            let _ = writeln!(
                out,
                "  {} -> {} [{}];",
                quote(&edge.from),
                quote(&edge.to),
                edge.style.attributes()
            );
        }
        out.push_str("}\n");
        out
    }

    fn write_cluster(&self, out: &mut String, cluster: &Cluster, depth: usize) {
        let pad = "  ".repeat(depth);
        let _ = writeln!(out, "{pad}subgraph {} {{", quote(&format!("cluster_{}", cluster.id)));
        let _ = writeln!(out, "{pad}  label={};", quote(&cluster.label));
        for member in &cluster.members {
            if let Some(node) = self.node(member) {
                write_node(out, node, depth + 1);
            }
        }
        for child in &cluster.children {
            self.write_cluster(out, child, depth + 1);
        }
        let _ = writeln!(out, "{pad}}}");
    }
}

fn sort_clusters(clusters: &mut [Cluster]) {
    clusters.sort_by(|a, b| a.id.cmp(&b.id));
    for c in clusters {
        c.members.sort();
        sort_clusters(&mut c.children);
    }
}

fn write_node(out: &mut String, node: &DotNode, depth: usize) {
    let _ = writeln!(
        out,
        "{}{} [label={}, shape={}];",
        "  ".repeat(depth),
        quote(&node.id),
        quote(&node.label),
        node.shape.dot()
    );
}

/// DOT double-quoted string.
pub(crate) fn quote(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 2);
    out.push('"');
    for c in text.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => {}
            c => out.push(c),
        }
    }
    out.push('"');
    out
}
