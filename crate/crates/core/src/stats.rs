//! Element counts of a model.

use serde::Serialize;

use crate::model::{Identifier, Level, Model};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContainerStats {
    pub id: Identifier,
    pub name: String,
    pub level: Level,
    pub requirements: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PackageStats {
    pub id: Identifier,
    pub name: String,
    /// Includes sub-components.
    pub components: usize,
    pub interfaces: usize,
    pub nodes: usize,
    /// The package itself plus its components, interfaces and nodes.
    pub elements: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelStats {
    pub requirement_count: usize,
    pub architecture_element_count: usize,
    pub total_element_count: usize,
    pub containers: Vec<ContainerStats>,
    pub packages: Vec<PackageStats>,
}

/// Requirements are counted once each; architecture elements are packages,
/// components (including sub-components), interfaces and nodes. Containers
/// and links are not counted.
pub fn stats(model: &Model) -> ModelStats {
    let containers: Vec<_> = model
        .containers
        .iter()
        .map(|c| ContainerStats {
            id: c.id.clone(),
            name: c.name.clone(),
            level: c.kind,
            requirements: c.requirements.len(),
        })
        .collect();
    let packages: Vec<_> = model
        .packages
        .iter()
        .map(|p| PackageStats {
            id: p.id.clone(),
            name: p.name.clone(),
            components: p.components.len(),
            interfaces: p.interfaces.len(),
            nodes: p.nodes.len(),
            elements: 1 + p.components.len() + p.interfaces.len() + p.nodes.len(),
        })
        .collect();
    let requirement_count = containers.iter().map(|c| c.requirements).sum();
    let architecture_element_count = packages.iter().map(|p| p.elements).sum();
    ModelStats {
        requirement_count,
        architecture_element_count,
        total_element_count: requirement_count + architecture_element_count,
        containers,
        packages,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::*;

    #[test]
    fn empty_model_counts_zero() {
        let s = stats(&Model::default());
        assert_eq!(
            (
                s.requirement_count,
                s.architecture_element_count,
                s.total_element_count
            ),
            (0, 0, 0)
        );
    }

    #[test]
    fn one_container_one_package() {
        let mut m = Model::new("m");
        m.containers.push(
            RequirementsContainer::new("C", "c", Level::Tool)
                .with_requirement(Requirement::new("R-1", "a"))
                .with_requirement(Requirement::new("R-2", "b")),
        );
        let mut p = Package::new("P", "p");
        p.components.push(Component::new("K", "k"));
        m.packages.push(p);
        let s = stats(&m);
        assert_eq!(
            (
                s.requirement_count,
                s.architecture_element_count,
                s.total_element_count
            ),
            (2, 2, 4)
        );
        assert_eq!(s.packages[0].elements, 2);
        assert_eq!(s.containers[0].requirements, 2);
    }
}
