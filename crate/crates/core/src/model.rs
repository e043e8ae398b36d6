//! In-memory representation of requirements and architecture models.
//!
//! A [`Model`] owns requirements containers (grouping requirements of one
//! level), architecture packages (components, interfaces, nodes) and the two
//! kinds of cross-links: traces between requirements and satisfactions from
//! components to requirements. Identifiers live in one global namespace.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

/// Element identifier such as `MODELIO-030` or `NOK-02`.
///
/// Construction is unchecked so that models read from loose sources can be
/// validated afterwards; [`Identifier::is_well_formed`] tells whether the
/// text follows the identifier grammar.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Identifier(String);

impl Identifier {
    pub fn new(text: impl Into<String>) -> Self {
        Identifier(text.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_well_formed(&self) -> bool {
        is_identifier(&self.0)
    }
}

/// `[A-Za-z][A-Za-z0-9_]*(-[A-Za-z0-9]+)*`
pub fn is_identifier(text: &str) -> bool {
    let mut chars = text.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    let mut after_dash = false;
    let mut in_segment = false;
    for c in chars {
        if c == '-' {
            if after_dash {
                return false;
            }
            after_dash = true;
        } else if after_dash || in_segment {
            // Underscores are only allowed before the first dash.
            if !c.is_ascii_alphanumeric() {
                return false;
            }
            after_dash = false;
            in_segment = true;
        } else if !(c.is_ascii_alphanumeric() || c == '_') {
            return false;
        }
    }
    !after_dash
}

impl fmt::Display for Identifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Identifier {
    fn from(value: &str) -> Self {
        Identifier::new(value)
    }
}

impl From<String> for Identifier {
    fn from(value: String) -> Self {
        Identifier::new(value)
    }
}

impl AsRef<str> for Identifier {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl std::borrow::Borrow<str> for Identifier {
    fn borrow(&self) -> &str {
        &self.0
    }
}

/// Error returned when a literal does not name a variant of one of the
/// model's enumerations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownLiteral {
    pub kind: &'static str,
    pub literal: String,
    pub expected: &'static [&'static str],
}

impl fmt::Display for UnknownLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "invalid {} `{}` (expected one of: {})",
            self.kind,
            self.literal,
            self.expected.join(", ")
        )
    }
}

impl std::error::Error for UnknownLiteral {}

macro_rules! literal_enum {
    (
        $(#[$meta:meta])*
        $name:ident, $kind:literal {
            $( $variant:ident => $lit:literal ),+ $(,)?
        }
    ) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
        pub enum $name {
            $(
                #[serde(rename = $lit)]
                $variant,
            )+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];
            pub const LITERALS: &'static [&'static str] = &[$($lit),+];

            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$variant => $lit,)+
                }
            }
        }

        impl FromStr for $name {
            type Err = UnknownLiteral;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $($lit => Ok($name::$variant),)+
                    _ => Err(UnknownLiteral {
                        kind: $kind,
                        literal: s.to_string(),
                        expected: Self::LITERALS,
                    }),
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }
    };
}

literal_enum! {
    /// Priority of a requirement's implementation.
    Criticality, "criticality" {
        Low => "low",
        Medium => "medium",
        High => "high",
    }
}

literal_enum! {
    /// Milestone at which a requirement is planned to be satisfied.
    /// Variants are declared in milestone order, so `Ord` follows it.
    Release, "release" {
        Baseline => "baseline",
        Initial => "initial",
        Intermediate => "intermediate",
        Final => "final",
    }
}

literal_enum! {
    /// Fulfilment state of a requirement.
    Status, "status" {
        Planned => "planned",
        InProgress => "in_progress",
        Done => "done",
        Postponed => "postponed",
        Cancelled => "cancelled",
    }
}

literal_enum! {
    /// Requirement level, carried by the requirements container.
    ///
    /// Ordered from the most concrete to the most abstract: traces must go
    /// from a lower level to a strictly higher one.
    Level, "level" {
        Tool => "tool",
        Framework => "framework",
        CaseStudy => "case_study",
    }
}

/// Position of an element in a source file, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SourceSpan {
    pub file: String,
    pub line: u32,
    pub column: u32,
}

impl SourceSpan {
    pub fn new(file: impl Into<String>, line: u32, column: u32) -> Self {
        SourceSpan {
            file: file.into(),
            line: line.max(1),
            column: column.max(1),
        }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Requirement {
    pub id: Identifier,
    pub definition: String,
    pub criticality: Criticality,
    pub release: Release,
    pub status: Status,
    /// Never `Some("")`; empty comments are normalized to `None`.
    pub comments: Option<String>,
    pub span: Option<SourceSpan>,
}

impl Requirement {
    pub fn new(id: impl Into<Identifier>, definition: impl Into<String>) -> Self {
        Requirement {
            id: id.into(),
            definition: definition.into(),
            criticality: Criticality::Medium,
            release: Release::Final,
            status: Status::Planned,
            comments: None,
            span: None,
        }
    }

    pub fn with_criticality(mut self, criticality: Criticality) -> Self {
        self.criticality = criticality;
        self
    }

    pub fn with_release(mut self, release: Release) -> Self {
        self.release = release;
        self
    }

    pub fn with_status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }

    pub fn with_comments(mut self, comments: impl Into<String>) -> Self {
        self.comments = normalize_comments(comments.into());
        self
    }
}

pub(crate) fn normalize_comments(text: String) -> Option<String> {
    if text.is_empty() {
        None
    } else {
        Some(text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RequirementsContainer {
    pub id: Identifier,
    pub name: String,
    pub kind: Level,
    pub owner: Option<String>,
    pub requirements: Vec<Requirement>,
    pub span: Option<SourceSpan>,
}

impl RequirementsContainer {
    pub fn new(id: impl Into<Identifier>, name: impl Into<String>, kind: Level) -> Self {
        RequirementsContainer {
            id: id.into(),
            name: name.into(),
            kind,
            owner: None,
            requirements: Vec::new(),
            span: None,
        }
    }

    pub fn with_requirement(mut self, requirement: Requirement) -> Self {
        self.requirements.push(requirement);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interface {
    pub id: Identifier,
    pub name: String,
    pub description: Option<String>,
    pub span: Option<SourceSpan>,
}

impl Interface {
    pub fn new(id: impl Into<Identifier>, name: impl Into<String>) -> Self {
        Interface {
            id: id.into(),
            name: name.into(),
            description: None,
            span: None,
        }
    }
}

/// Deployment platform such as an Eclipse RCP or a JVM.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub id: Identifier,
    pub name: String,
    pub description: Option<String>,
    pub span: Option<SourceSpan>,
}

impl Node {
    pub fn new(id: impl Into<Identifier>, name: impl Into<String>) -> Self {
        Node {
            id: id.into(),
            name: name.into(),
            description: None,
            span: None,
        }
    }
}

/// A tool or one of its constituent parts.
///
/// Components are stored flat inside their package; `sub_components`
/// references other components by identifier, so the containment forest is
/// a relation checked by validation rather than by the type system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub id: Identifier,
    pub name: String,
    pub owner: Option<String>,
    pub sub_components: Vec<Identifier>,
    pub provided: Vec<Identifier>,
    pub consumed: Vec<Identifier>,
    pub deployed_on: Vec<Identifier>,
    pub span: Option<SourceSpan>,
}

impl Component {
    pub fn new(id: impl Into<Identifier>, name: impl Into<String>) -> Self {
        Component {
            id: id.into(),
            name: name.into(),
            owner: None,
            sub_components: Vec::new(),
            provided: Vec::new(),
            consumed: Vec::new(),
            deployed_on: Vec::new(),
            span: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Package {
    pub id: Identifier,
    pub name: String,
    pub components: Vec<Component>,
    pub interfaces: Vec<Interface>,
    pub nodes: Vec<Node>,
    pub span: Option<SourceSpan>,
}

impl Package {
    pub fn new(id: impl Into<Identifier>, name: impl Into<String>) -> Self {
        Package {
            id: id.into(),
            name: name.into(),
            components: Vec::new(),
            interfaces: Vec::new(),
            nodes: Vec::new(),
            span: None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty() && self.interfaces.is_empty() && self.nodes.is_empty()
    }
}

/// Requirement to requirement dependency, from the lower level to the higher.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceLink {
    pub source: Identifier,
    pub target: Identifier,
    pub span: Option<SourceSpan>,
}

impl TraceLink {
    pub fn new(source: impl Into<Identifier>, target: impl Into<Identifier>) -> Self {
        TraceLink {
            source: source.into(),
            target: target.into(),
            span: None,
        }
    }
}

/// Component realizing a requirement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatisfyLink {
    pub source: Identifier,
    pub target: Identifier,
    pub span: Option<SourceSpan>,
}

impl SatisfyLink {
    pub fn new(source: impl Into<Identifier>, target: impl Into<Identifier>) -> Self {
        SatisfyLink {
            source: source.into(),
            target: target.into(),
            span: None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Model {
    /// Empty when no file declared a model name.
    pub name: String,
    pub containers: Vec<RequirementsContainer>,
    pub packages: Vec<Package>,
    pub traces: Vec<TraceLink>,
    pub satisfies: Vec<SatisfyLink>,
}

/// Borrowed reference to any named element of a model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementRef<'m> {
    Container(&'m RequirementsContainer),
    Requirement {
        requirement: &'m Requirement,
        container: &'m RequirementsContainer,
    },
    Package(&'m Package),
    Component {
        component: &'m Component,
        package: &'m Package,
    },
    Interface {
        interface: &'m Interface,
        package: &'m Package,
    },
    Node {
        node: &'m Node,
        package: &'m Package,
    },
}

/// Element category, used in diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ElementKind {
    Container,
    Requirement,
    Package,
    Component,
    Interface,
    Node,
}

impl ElementKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ElementKind::Container => "container",
            ElementKind::Requirement => "requirement",
            ElementKind::Package => "package",
            ElementKind::Component => "component",
            ElementKind::Interface => "interface",
            ElementKind::Node => "node",
        }
    }
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl<'m> ElementRef<'m> {
    pub fn id(&self) -> &'m Identifier {
        match *self {
            ElementRef::Container(c) => &c.id,
            ElementRef::Requirement { requirement, .. } => &requirement.id,
            ElementRef::Package(p) => &p.id,
            ElementRef::Component { component, .. } => &component.id,
            ElementRef::Interface { interface, .. } => &interface.id,
            ElementRef::Node { node, .. } => &node.id,
        }
    }

    pub fn kind(&self) -> ElementKind {
        match self {
            ElementRef::Container(_) => ElementKind::Container,
            ElementRef::Requirement { .. } => ElementKind::Requirement,
            ElementRef::Package(_) => ElementKind::Package,
            ElementRef::Component { .. } => ElementKind::Component,
            ElementRef::Interface { .. } => ElementKind::Interface,
            ElementRef::Node { .. } => ElementKind::Node,
        }
    }

    pub fn span(&self) -> Option<&'m SourceSpan> {
        match *self {
            ElementRef::Container(c) => c.span.as_ref(),
            ElementRef::Requirement { requirement, .. } => requirement.span.as_ref(),
            ElementRef::Package(p) => p.span.as_ref(),
            ElementRef::Component { component, .. } => component.span.as_ref(),
            ElementRef::Interface { interface, .. } => interface.span.as_ref(),
            ElementRef::Node { node, .. } => node.span.as_ref(),
        }
    }

    pub fn as_requirement(&self) -> Option<(&'m Requirement, &'m RequirementsContainer)> {
        match *self {
            ElementRef::Requirement {
                requirement,
                container,
            } => Some((requirement, container)),
            _ => None,
        }
    }

    pub fn as_component(&self) -> Option<(&'m Component, &'m Package)> {
        match *self {
            ElementRef::Component { component, package } => Some((component, package)),
            _ => None,
        }
    }
}

impl Model {
    pub fn new(name: impl Into<String>) -> Self {
        Model {
            name: name.into(),
            ..Model::default()
        }
    }

    pub fn is_empty(&self) -> bool {
        self.containers.is_empty()
            && self.packages.is_empty()
            && self.traces.is_empty()
            && self.satisfies.is_empty()
    }

    /// Every named element in declaration order: containers with their
    /// requirements, then packages with interfaces, nodes and components.
    pub fn elements(&self) -> impl Iterator<Item = ElementRef<'_>> {
        let requirements = self.containers.iter().flat_map(|container| {
            std::iter::once(ElementRef::Container(container)).chain(
                container
                    .requirements
                    .iter()
                    .map(move |requirement| ElementRef::Requirement {
                        requirement,
                        container,
                    }),
            )
        });
        let architecture = self.packages.iter().flat_map(|package| {
            std::iter::once(ElementRef::Package(package))
                .chain(
                    package
                        .interfaces
                        .iter()
                        .map(move |interface| ElementRef::Interface { interface, package }),
                )
                .chain(
                    package
                        .nodes
                        .iter()
                        .map(move |node| ElementRef::Node { node, package }),
                )
                .chain(
                    package
                        .components
                        .iter()
                        .map(move |component| ElementRef::Component { component, package }),
                )
        });
        requirements.chain(architecture)
    }

    pub fn requirements(&self) -> impl Iterator<Item = (&Requirement, &RequirementsContainer)> {
        self.containers
            .iter()
            .flat_map(|c| c.requirements.iter().map(move |r| (r, c)))
    }

    pub fn components(&self) -> impl Iterator<Item = (&Component, &Package)> {
        self.packages
            .iter()
            .flat_map(|p| p.components.iter().map(move |c| (c, p)))
    }

    pub fn container(&self, id: &str) -> Option<&RequirementsContainer> {
        self.containers.iter().find(|c| c.id.as_str() == id)
    }

    pub fn package(&self, id: &str) -> Option<&Package> {
        self.packages.iter().find(|p| p.id.as_str() == id)
    }

    /// Returns the element bearing `id`. When an identifier is (invalidly)
    /// declared more than once, the first declaration wins.
    pub fn resolve(&self, id: &str) -> Option<ElementRef<'_>> {
        self.elements().find(|e| e.id().as_str() == id)
    }

    /// Builds a lookup table; use this instead of repeated [`Model::resolve`]
    /// calls on large models.
    pub fn index(&self) -> ModelIndex<'_> {
        ModelIndex::new(self)
    }

    /// Appends the content of `other`. The name of `self` is kept unless it
    /// is empty.
    pub fn merge(&mut self, other: Model) {
        if self.name.is_empty() {
            self.name = other.name;
        }
        self.containers.extend(other.containers);
        self.packages.extend(other.packages);
        self.traces.extend(other.traces);
        self.satisfies.extend(other.satisfies);
    }

    /// Copy of the model with all source spans removed, for structural
    /// comparison between models read from different texts.
    pub fn without_spans(&self) -> Model {
        let mut model = self.clone();
        for container in &mut model.containers {
            container.span = None;
            for requirement in &mut container.requirements {
                requirement.span = None;
            }
        }
        for package in &mut model.packages {
            package.span = None;
            package.components.iter_mut().for_each(|c| c.span = None);
            package.interfaces.iter_mut().for_each(|i| i.span = None);
            package.nodes.iter_mut().for_each(|n| n.span = None);
        }
        model.traces.iter_mut().for_each(|t| t.span = None);
        model.satisfies.iter_mut().for_each(|s| s.span = None);
        model
    }

    /// Equality ignoring source spans and the order of links.
    pub fn structurally_eq(&self, other: &Model) -> bool {
        let normalized = |m: &Model| {
            let mut m = m.without_spans();
            m.traces.sort_by(|a, b| (&a.source, &a.target).cmp(&(&b.source, &b.target)));
            m.satisfies.sort_by(|a, b| (&a.source, &a.target).cmp(&(&b.source, &b.target)));
            m
        };
        normalized(self) == normalized(other)
    }
}

/// Identifier lookup over a borrowed model.
#[derive(Debug)]
pub struct ModelIndex<'m> {
    by_id: HashMap<&'m str, ElementRef<'m>>,
}

impl<'m> ModelIndex<'m> {
    pub fn new(model: &'m Model) -> Self {
        let mut by_id = HashMap::new();
        for element in model.elements() {
            by_id.entry(element.id().as_str()).or_insert(element);
        }
        ModelIndex { by_id }
    }

    pub fn get(&self, id: &str) -> Option<ElementRef<'m>> {
        self.by_id.get(id).copied()
    }

    pub fn requirement(&self, id: &str) -> Option<(&'m Requirement, &'m RequirementsContainer)> {
        self.get(id).and_then(|e| e.as_requirement())
    }

    pub fn component(&self, id: &str) -> Option<(&'m Component, &'m Package)> {
        self.get(id).and_then(|e| e.as_component())
    }

    pub fn level_of(&self, id: &str) -> Option<Level> {
        self.requirement(id).map(|(_, c)| c.kind)
    }
}
