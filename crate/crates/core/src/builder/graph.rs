use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::catalog::CourseCode;
use crate::error::GraphError;

/// Dense node index, assigned in first-appearance catalogue order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct NodeId(pub usize);

impl NodeId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Prerequisite,
    Corequisite,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Prerequisite => "prerequisite",
            Provenance::Corequisite => "corequisite",
        }
    }
}

/// A course, or a composite of cross-listed courses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CpnNode {
    pub id: NodeId,
    /// Sorted, duplicate-free, nonempty.
    pub member_codes: Vec<CourseCode>,
    /// Member codes joined by `/`, e.g. `BIOL 310/CHEM 310`.
    pub label: String,
    pub title: String,
    /// Placeholder created for a referenced code that has no record.
    pub stub: bool,
}

impl CpnNode {
    pub fn new(id: NodeId, mut member_codes: Vec<CourseCode>, title: impl Into<String>) -> Self {
        member_codes.sort();
        member_codes.dedup();
        let label = member_codes
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join("/");
        Self {
            id,
            member_codes,
            label,
            title: title.into(),
            stub: false,
        }
    }
}

/// Arc from prerequisite to dependent course.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CpnArc {
    pub source: NodeId,
    pub target: NodeId,
    /// In (0, 1].
    pub weight: f64,
    pub provenance: Provenance,
}

/// Curriculum prerequisite network. Immutable once built; arcs are kept sorted
/// by `(source, target)`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Cpn {
    nodes: Vec<CpnNode>,
    arcs: Vec<CpnArc>,
    code_index: BTreeMap<CourseCode, NodeId>,
    successors: Vec<Vec<NodeId>>,
    predecessors: Vec<Vec<NodeId>>,
}

impl Cpn {
    pub fn new(nodes: Vec<CpnNode>, mut arcs: Vec<CpnArc>) -> Result<Self, GraphError> {
        let mut code_index = BTreeMap::new();
        for (index, node) in nodes.iter().enumerate() {
            if node.id != NodeId(index) || node.member_codes.is_empty() {
                return Err(GraphError::NodeIdOrder);
            }
            for code in &node.member_codes {
                if code_index.insert(code.clone(), node.id).is_some() {
                    return Err(GraphError::SharedCode(code.clone()));
                }
            }
        }

        arcs.sort_by_key(|a| (a.source, a.target));
        let n = nodes.len();
        let mut successors = vec![Vec::new(); n];
        let mut predecessors = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        for arc in &arcs {
            for end in [arc.source, arc.target] {
                if end.0 >= n {
                    return Err(GraphError::UnknownNode(end));
                }
            }
            if arc.source == arc.target {
                return Err(GraphError::SelfLoop(arc.source));
            }
            if !seen.insert((arc.source, arc.target)) {
                return Err(GraphError::DuplicateArc(arc.source, arc.target));
            }
            if !(arc.weight > 0.0 && arc.weight <= 1.0) {
                return Err(GraphError::BadWeight(arc.weight));
            }
            successors[arc.source.0].push(arc.target);
            predecessors[arc.target.0].push(arc.source);
        }
        for list in &mut predecessors {
            list.sort();
        }

        Ok(Self {
            nodes,
            arcs,
            code_index,
            successors,
            predecessors,
        })
    }

    /// Builds a graph of `n` placeholder courses `N 0 .. N n-1` joined by
    /// unit-weight prerequisite arcs. Handy for synthetic inputs.
    pub fn synthetic(n: usize, arcs: &[(usize, usize)]) -> Result<Self, GraphError> {
        let nodes = (0..n)
            .map(|i| {
                let code = CourseCode::new("N", &i.to_string()).expect("valid synthetic code");
                CpnNode::new(NodeId(i), vec![code], "")
            })
            .collect();
        let arcs = arcs
            .iter()
            .map(|&(s, t)| CpnArc {
                source: NodeId(s),
                target: NodeId(t),
                weight: 1.0,
                provenance: Provenance::Prerequisite,
            })
            .collect();
        Self::new(nodes, arcs)
    }

    pub fn nodes(&self) -> &[CpnNode] {
        &self.nodes
    }

    pub fn arcs(&self) -> &[CpnArc] {
        &self.arcs
    }

    pub fn node(&self, id: NodeId) -> &CpnNode {
        &self.nodes[id.0]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len()).map(NodeId)
    }

    /// Targets of arcs leaving `id`, ascending.
    pub fn successors(&self, id: NodeId) -> &[NodeId] {
        &self.successors[id.0]
    }

    /// Sources of arcs entering `id`, ascending.
    pub fn predecessors(&self, id: NodeId) -> &[NodeId] {
        &self.predecessors[id.0]
    }

    pub fn lookup(&self, code: &CourseCode) -> Option<NodeId> {
        self.code_index.get(code).copied()
    }

    pub fn lookup_label(&self, label: &str) -> Option<NodeId> {
        self.nodes.iter().find(|n| n.label == label).map(|n| n.id)
    }

    pub fn arc(&self, source: NodeId, target: NodeId) -> Option<&CpnArc> {
        self.arcs
            .binary_search_by_key(&(source, target), |a| (a.source, a.target))
            .ok()
            .map(|i| &self.arcs[i])
    }

    pub fn label(&self, id: NodeId) -> &str {
        &self.nodes[id.0].label
    }

    /// Same nodes, only the arcs for which `keep` returns true.
    pub fn retain_arcs(&self, mut keep: impl FnMut(&CpnArc) -> bool) -> Self {
        let arcs = self.arcs.iter().filter(|a| keep(a)).copied().collect();
        Self::new(self.nodes.clone(), arcs).expect("subset of a valid graph is valid")
    }

    /// Same nodes plus extra arcs.
    pub fn with_arcs(&self, extra: impl IntoIterator<Item = CpnArc>) -> Result<Self, GraphError> {
        let mut arcs = self.arcs.clone();
        arcs.extend(extra);
        Self::new(self.nodes.clone(), arcs)
    }
}
