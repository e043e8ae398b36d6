//! Deterministic synthetic models for scale testing.
//!
//! [`SynthConfig::megamart`] reproduces the size of the MegaM@Rt2 model: 458
//! requirements and 3444 architecture elements. Tool containers map one to
//! one onto packages; each package holds one top-level tool component with a
//! random tree of sub-components below it.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{
    Component, Criticality, Interface, Level, Model, Node, Package, Release, Requirement,
    RequirementsContainer, SatisfyLink, Status, TraceLink,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthConfig {
    pub seed: u64,
    pub case_studies: usize,
    pub case_study_requirements: usize,
    pub framework_requirements: usize,
    /// Number of tools; each gets a tool container and a package.
    pub tools: usize,
    pub tool_requirements: usize,
    /// Components across all packages, including the tool roots.
    pub components: usize,
    pub interfaces: usize,
    pub nodes: usize,
    /// Percentage of tool requirements satisfied by some component.
    pub satisfied_percent: u32,
}

impl SynthConfig {
    /// 458 requirements and 3444 architecture elements.
    pub fn megamart() -> Self {
        SynthConfig {
            seed: 2019,
            case_studies: 9,
            case_study_requirements: 90,
            framework_requirements: 68,
            tools: 20,
            tool_requirements: 300,
            components: 120,
            interfaces: 1800,
            nodes: 1504,
            satisfied_percent: 90,
        }
    }

    pub fn requirement_count(&self) -> usize {
        self.case_study_requirements + self.framework_requirements + self.tool_requirements
    }

    /// Packages, components, interfaces and nodes.
    pub fn architecture_element_count(&self) -> usize {
        self.tools + self.components + self.interfaces + self.nodes
    }
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig::megamart()
    }
}

const VERBS: &[&str] = &[
    "import", "export", "validate", "transform", "monitor", "trace", "simulate", "verify",
    "visualize", "store", "compare", "generate", "analyse", "synchronize", "query",
];
const OBJECTS: &[&str] = &[
    "SysML models", "UML state machines", "execution traces", "timing constraints",
    "deployment descriptors", "requirement tables", "XMI documents", "test verdicts",
    "runtime logs", "architecture views", "design space candidates", "model fragments",
];
const QUALIFIERS: &[&str] = &[
    "at design time",
    "at runtime without stopping the system",
    "for the selected case study",
    "with bounded memory use",
    "through the common framework interfaces",
    "in the format agreed by the partners",
    "for models of industrial size",
    "under the user's control",
];

fn sentence(rng: &mut ChaCha8Rng, subject: &str) -> String {
    format!(
        "{subject} shall {} {} {}",
        VERBS.choose(rng).unwrap(),
        OBJECTS.choose(rng).unwrap(),
        QUALIFIERS.choose(rng).unwrap()
    )
}

fn requirement(rng: &mut ChaCha8Rng, id: String, subject: &str) -> Requirement {
    let mut r = Requirement::new(id, sentence(rng, subject))
        .with_criticality(*Criticality::ALL.choose(rng).unwrap())
        .with_release(*Release::ALL.choose(rng).unwrap())
        .with_status(*Status::ALL.choose(rng).unwrap());
    if rng.gen_ratio(1, 4) {
        r = r.with_comments(format!("Reviewed in iteration {}", rng.gen_range(1..=6)));
    }
    r
}

/// `total` split into `parts` near-equal shares, larger shares first.
fn split(total: usize, parts: usize) -> Vec<usize> {
    (0..parts)
        .map(|i| total / parts + usize::from(i < total % parts))
        .collect()
}

/// A valid model of the configured size; equal configs give equal models.
pub fn synthesize(config: &SynthConfig) -> Model {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut model = Model::new(format!("Synthetic model {}", config.seed));

    let mut case_ids = Vec::new();
    for (cs, n) in split(config.case_study_requirements, config.case_studies.max(1))
        .into_iter()
        .enumerate()
    {
        let mut c = RequirementsContainer::new(
            format!("CS{:02}", cs + 1),
            format!("Case study {}", cs + 1),
            Level::CaseStudy,
        );
        c.owner = Some(format!("Partner {}", cs + 1));
        for i in 0..n {
            let id = format!("CS{:02}-{:03}", cs + 1, i + 1);
            case_ids.push(id.clone());
            c.requirements.push(requirement(&mut rng, id, "The case study"));
        }
        model.containers.push(c);
    }

    let mut fw = RequirementsContainer::new("FW", "Framework", Level::Framework);
    fw.owner = Some("Coordinator".into());
    let mut fw_ids = Vec::new();
    for i in 0..config.framework_requirements {
        let id = format!("FW-{:03}", i + 1);
        fw_ids.push(id.clone());
        fw.requirements.push(requirement(&mut rng, id, "The framework"));
    }
    model.containers.push(fw);

    let tools = config.tools.max(1);
    let req_shares = split(config.tool_requirements, tools);
    let comp_shares = split(config.components, tools);
    let iface_shares = split(config.interfaces, tools);
    let node_shares = split(config.nodes, tools);
    let mut all_interfaces: Vec<String> = Vec::new();
    let mut tool_reqs: Vec<Vec<String>> = Vec::new();
    for t in 0..tools {
        let tag = format!("T{:02}", t + 1);
        let mut c = RequirementsContainer::new(tag.clone(), format!("Tool {}", t + 1), Level::Tool);
        c.owner = Some(format!("Tool provider {}", t + 1));
        let mut ids = Vec::new();
        for i in 0..req_shares[t] {
            let id = format!("{tag}-{:03}", i + 1);
            ids.push(id.clone());
            c.requirements.push(requirement(&mut rng, id, "The tool"));
        }
        model.containers.push(c);
        tool_reqs.push(ids);

        let mut package = Package::new(format!("{tag}-PKG"), format!("Tool {} package", t + 1));
        for i in 0..iface_shares[t] {
            let id = format!("{tag}-IF{:03}", i + 1);
            let mut iface = Interface::new(id.clone(), format!("Tool {} service {}", t + 1, i + 1));
            iface.description = Some(format!(
                "Service to {} {}",
                VERBS.choose(&mut rng).unwrap(),
                OBJECTS.choose(&mut rng).unwrap()
            ));
            package.interfaces.push(iface);
            all_interfaces.push(id);
        }
        for i in 0..node_shares[t] {
            let mut node = Node::new(format!("{tag}-N{:03}", i + 1), format!("Platform {}.{}", t + 1, i + 1));
            node.description = Some(format!("Execution platform {} of tool {}", i + 1, t + 1));
            package.nodes.push(node);
        }
        model.packages.push(package);
    }

    for (t, package) in model.packages.iter_mut().enumerate() {
        let tag = format!("T{:02}", t + 1);
        let n = comp_shares[t];
        let local_ifaces: Vec<_> = package.interfaces.iter().map(|i| i.id.clone()).collect();
        let local_nodes: Vec<_> = package.nodes.iter().map(|n| n.id.clone()).collect();
        let mut components: Vec<Component> = (0..n)
            .map(|i| {
                let (id, name) = if i == 0 {
                    (format!("{tag}-TOOL"), format!("Tool {}", t + 1))
                } else {
                    (format!("{tag}-C{:03}", i), format!("Tool {} module {}", t + 1, i))
                };
                let mut c = Component::new(id, name);
                if i == 0 {
                    c.owner = Some(format!("Tool provider {}", t + 1));
                }
                c
            })
            .collect();
        for i in 1..n {
            let parent = rng.gen_range(0..i);
            let child = components[i].id.clone();
            components[parent].sub_components.push(child);
        }
        for c in &mut components {
            for _ in 0..rng.gen_range(0..=2) {
                if let Some(i) = local_ifaces.choose(&mut rng) {
                    if !c.provided.contains(i) {
                        c.provided.push(i.clone());
                    }
                }
            }
            for _ in 0..rng.gen_range(0..=2) {
                let i = all_interfaces.choose(&mut rng).unwrap();
                if !c.consumed.iter().any(|x| x.as_str() == i) {
                    c.consumed.push(i.as_str().into());
                }
            }
            if let Some(node) = local_nodes.choose(&mut rng) {
                c.deployed_on.push(node.clone());
            }
        }
        package.components = components;
    }

    for (fi, fw_id) in fw_ids.iter().enumerate() {
        let k = rng.gen_range(1..=2);
        let mut targets: Vec<_> = case_ids.choose_multiple(&mut rng, k).cloned().collect();
        if fi < case_ids.len() {
            targets.push(case_ids[fi].clone());
        }
        targets.sort();
        targets.dedup();
        for cs in targets {
            model.traces.push(TraceLink::new(fw_id.clone(), cs));
        }
    }
    for (t, ids) in tool_reqs.iter().enumerate() {
        let package = &model.packages[t];
        for id in ids {
            let k = rng.gen_range(1..=2);
            let mut targets: Vec<_> = fw_ids.choose_multiple(&mut rng, k).cloned().collect();
            targets.sort();
            for fw_id in targets {
                model.traces.push(TraceLink::new(id.clone(), fw_id));
            }
            if rng.gen_range(0..100) < config.satisfied_percent {
                let c = package.components.choose(&mut rng).unwrap();
                model.satisfies.push(SatisfyLink::new(c.id.clone(), id.clone()));
            }
        }
    }
    model
}

/// Shape of a [`random_model`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomModelConfig {
    pub max_requirements: usize,
    /// Probability of a trace between two requirements of increasing level.
    pub trace_density: f64,
    /// Probability of a satisfy link between a component and a tool requirement.
    pub satisfy_density: f64,
    pub max_components: usize,
}

impl Default for RandomModelConfig {
    fn default() -> Self {
        RandomModelConfig {
            max_requirements: 50,
            trace_density: 0.3,
            satisfy_density: 0.3,
            max_components: 6,
        }
    }
}

/// A small valid model with random levels, releases, statuses, traces
/// (always from a lower to a strictly higher level), a component tree and
/// satisfy links to tool requirements.
pub fn random_model(seed: u64, config: &RandomModelConfig) -> Model {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut model = Model::new(format!("Random model {seed}"));
    let n = rng.gen_range(1..=config.max_requirements.max(1));
    let mut containers: Vec<RequirementsContainer> = Level::ALL
        .iter()
        .map(|&l| RequirementsContainer::new(format!("L-{l}").replace('_', ""), l.to_string(), l))
        .collect();
    for i in 0..n {
        let level = rng.gen_range(0..3);
        let r = requirement(&mut rng, format!("R-{i:03}"), "The system");
        containers[level].requirements.push(r);
    }
    let reqs: Vec<(String, Level)> = containers
        .iter()
        .flat_map(|c| c.requirements.iter().map(|r| (r.id.to_string(), c.kind)))
        .collect();
    model.containers = containers
        .into_iter()
        .filter(|c| !c.requirements.is_empty())
        .collect();

    for (a, la) in &reqs {
        for (b, lb) in &reqs {
            if la < lb && rng.gen_bool(config.trace_density) {
                model.traces.push(TraceLink::new(a.clone(), b.clone()));
            }
        }
    }

    let k = rng.gen_range(1..=config.max_components.max(1));
    let mut package = Package::new("PKG", "Package");
    package.interfaces.push(Interface::new("API", "API"));
    package.nodes.push(Node::new("HOST", "Host"));
    for i in 0..k {
        let mut c = Component::new(format!("C-{i}"), format!("Component {i}"));
        if rng.gen_bool(0.5) {
            c.provided.push("API".into());
        } else {
            c.consumed.push("API".into());
        }
        c.deployed_on.push("HOST".into());
        package.components.push(c);
    }
    for i in 1..k {
        if rng.gen_bool(0.5) {
            let parent = rng.gen_range(0..i);
            let child = package.components[i].id.clone();
            package.components[parent].sub_components.push(child);
        }
    }
    for (id, level) in &reqs {
        if *level != Level::Tool {
            continue;
        }
        for c in &package.components {
            if rng.gen_bool(config.satisfy_density) {
                model.satisfies.push(SatisfyLink::new(c.id.clone(), id.clone()));
            }
        }
    }
    model.packages.push(package);
    model
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{stats, validate, ValidationOptions};

    #[test]
    fn megamart_scale_counts() {
        let config = SynthConfig::megamart();
        assert_eq!(config.requirement_count(), 458);
        assert_eq!(config.architecture_element_count(), 3444);
        let s = stats(&synthesize(&config));
        assert_eq!(s.requirement_count, 458);
        assert_eq!(s.architecture_element_count, 3444);
        assert_eq!(s.total_element_count, 3902);
    }

    #[test]
    fn synthetic_model_is_valid_and_deterministic() {
        let config = SynthConfig::megamart();
        let a = synthesize(&config);
        assert_eq!(validate(&a, ValidationOptions::default()), []);
        assert_eq!(a, synthesize(&config));
    }

    #[test]
    fn random_models_are_valid() {
        for seed in 0..50 {
            let m = random_model(seed, &RandomModelConfig::default());
            assert_eq!(validate(&m, ValidationOptions::default()), [], "seed {seed}");
            assert!(m.requirements().count() <= 50);
        }
    }

    #[test]
    fn split_is_exact() {
        assert_eq!(split(10, 3), [4, 3, 3]);
        assert_eq!(split(924, 20).iter().sum::<usize>(), 924);
    }
}
