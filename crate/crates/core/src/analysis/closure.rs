use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::graph::reachable_from;
use crate::model::{Identifier, Model};

/// Reachability over trace links: `(from, to)` is present when `to` can be
/// reached from `from` through one or more traces.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TraceClosure {
    reach: BTreeMap<Identifier, BTreeSet<Identifier>>,
}

impl TraceClosure {
    pub fn contains(&self, from: &str, to: &str) -> bool {
        self.reach.get(from).is_some_and(|set| set.contains(to))
    }

    /// Requirements reachable from `from`, in identifier order.
    pub fn reachable(&self, from: &str) -> impl Iterator<Item = &Identifier> {
        self.reach.get(from).into_iter().flatten()
    }

    /// All pairs in `(from, to)` order.
    pub fn pairs(&self) -> impl Iterator<Item = (&Identifier, &Identifier)> {
        self.reach
            .iter()
            .flat_map(|(from, set)| set.iter().map(move |to| (from, to)))
    }

    pub fn len(&self) -> usize {
        self.reach.values().map(BTreeSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.reach.is_empty()
    }
}

impl Serialize for TraceClosure {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Pair<'a> {
            from: &'a Identifier,
            to: &'a Identifier,
        }
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for (from, to) in self.pairs() {
            seq.serialize_element(&Pair { from, to })?;
        }
        seq.end()
    }
}

/// Dense adjacency over the requirements that take part in trace links.
pub(crate) struct TraceGraph<'m> {
    pub ids: Vec<&'m Identifier>,
    pub index: HashMap<&'m str, usize>,
    pub adjacency: Vec<Vec<usize>>,
}

impl<'m> TraceGraph<'m> {
    /// Only links whose endpoints are both requirements are kept.
    pub fn new(model: &'m Model) -> Self {
        let is_requirement: std::collections::HashSet<&str> =
            model.requirements().map(|(r, _)| r.id.as_str()).collect();
        let mut graph = TraceGraph {
            ids: Vec::new(),
            index: HashMap::new(),
            adjacency: Vec::new(),
        };
        for link in &model.traces {
            if !(is_requirement.contains(link.source.as_str())
                && is_requirement.contains(link.target.as_str()))
            {
                continue;
            }
            let s = graph.vertex(&link.source);
            let t = graph.vertex(&link.target);
            if !graph.adjacency[s].contains(&t) {
                graph.adjacency[s].push(t);
            }
        }
        // Visit successors in identifier order so paths are deterministic.
        let ids = graph.ids.clone();
        for successors in &mut graph.adjacency {
            successors.sort_by_key(|&v| ids[v]);
        }
        graph
    }

    fn vertex(&mut self, id: &'m Identifier) -> usize {
        if let Some(&v) = self.index.get(id.as_str()) {
            return v;
        }
        let v = self.ids.len();
        self.ids.push(id);
        self.index.insert(id.as_str(), v);
        self.adjacency.push(Vec::new());
        v
    }

    /// Shortest trace path from `from` to `to`, both included. Ties are
    /// broken by identifier order.
    pub fn path(&self, from: &str, to: &str) -> Option<Vec<Identifier>> {
        let start = *self.index.get(from)?;
        let goal = *self.index.get(to)?;
        let mut parent = vec![usize::MAX; self.ids.len()];
        let mut queue = VecDeque::from([start]);
        let mut seen = vec![false; self.ids.len()];
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if w == goal {
                    parent[w] = v;
                    let mut path = vec![self.ids[goal].clone()];
                    let mut cur = v;
                    loop {
                        path.push(self.ids[cur].clone());
                        if cur == start {
                            break;
                        }
                        cur = parent[cur];
                    }
                    path.reverse();
                    return Some(path);
                }
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        None
    }
}

pub fn trace_closure(model: &Model) -> TraceClosure {
    let graph = TraceGraph::new(model);
    let mut reach = BTreeMap::new();
    for (v, id) in graph.ids.iter().enumerate() {
        let seen = reachable_from(&graph.adjacency, v);
        let set: BTreeSet<Identifier> = seen
            .iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(w, _)| graph.ids[w].clone())
            .collect();
        if !set.is_empty() {
            reach.insert((*id).clone(), set);
        }
    }
    TraceClosure { reach }
}

/// A trace chain `from -> ... -> to`, verifiable link by link, or `None`
/// when `to` is not reachable.
pub fn witness_chain(model: &Model, from: &str, to: &str) -> Option<Vec<Identifier>> {
    TraceGraph::new(model).path(from, to)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::*;

    fn chain_model() -> Model {
        let mut m = Model::new("fig3");
        m.containers.push(
            RequirementsContainer::new("MODELIO", "Modelio (SOFT)", Level::Tool)
                .with_requirement(Requirement::new("MODELIO-030", "xmi")),
        );
        m.containers.push(
            RequirementsContainer::new("SYS", "Framework", Level::Framework)
                .with_requirement(Requirement::new("SYS-020201", "fw")),
        );
        m.containers.push(
            RequirementsContainer::new("NOKIA", "Nokia", Level::CaseStudy)
                .with_requirement(Requirement::new("NOK-02", "cs")),
        );
        m.traces.push(TraceLink::new("MODELIO-030", "SYS-020201"));
        m.traces.push(TraceLink::new("SYS-020201", "NOK-02"));
        m
    }

    #[test]
    fn transitive_pair_present() {
        let c = trace_closure(&chain_model());
        assert!(c.contains("MODELIO-030", "NOK-02"));
        assert!(c.contains("MODELIO-030", "SYS-020201"));
        assert!(c.contains("SYS-020201", "NOK-02"));
        assert_eq!(c.len(), 3);
        assert!(!c.contains("NOK-02", "MODELIO-030"));
    }

    #[test]
    fn no_traces_empty_closure() {
        let mut m = chain_model();
        m.traces.clear();
        assert!(trace_closure(&m).is_empty());
    }

    #[test]
    fn witness_is_a_chain_of_links() {
        let m = chain_model();
        let chain = witness_chain(&m, "MODELIO-030", "NOK-02").unwrap();
        assert_eq!(chain, vec!["MODELIO-030".into(), "SYS-020201".into(), Identifier::from("NOK-02")]);
        assert!(witness_chain(&m, "NOK-02", "MODELIO-030").is_none());
    }

    #[test]
    fn serializes_as_sorted_pairs() {
        let json = serde_json::to_string(&trace_closure(&chain_model())).unwrap();
        assert_eq!(
            json,
            r#"[{"from":"MODELIO-030","to":"NOK-02"},{"from":"MODELIO-030","to":"SYS-020201"},{"from":"SYS-020201","to":"NOK-02"}]"#
        );
    }
}
