use serde::Serialize;

use crate::builder::{Cpn, NodeId};

/// Weakly connected components, largest first; equal sizes ordered by their
/// smallest member. Members within a component are ascending.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ComponentSet {
    pub components: Vec<Vec<NodeId>>,
}

impl ComponentSet {
    pub fn largest(&self) -> Option<&[NodeId]> {
        self.components.first().map(Vec::as_slice)
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.components.iter().map(Vec::len).collect()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

/// Depth-first search ignoring arc direction.
pub fn weakly_connected_components(cpn: &Cpn) -> ComponentSet {
    let n = cpn.node_count();
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for root in cpn.node_ids() {
        if seen[root.0] {
            continue;
        }
        seen[root.0] = true;
        let mut stack = vec![root];
        let mut members = Vec::new();
        while let Some(v) = stack.pop() {
            members.push(v);
            for &w in cpn.successors(v).iter().chain(cpn.predecessors(v)) {
                if !seen[w.0] {
                    seen[w.0] = true;
                    stack.push(w);
                }
            }
        }
        members.sort();
        components.push(members);
    }
    components.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    ComponentSet { components }
}
