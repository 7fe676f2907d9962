//! Catalogue → curriculum prerequisite network.
//!
//! Arcs point from prerequisite to dependent course. An OR-group of `m`
//! alternatives contributes `1/m` along each alternative's arc; contributions
//! that land on the same ordered pair are summed and clamped to 1.0.

mod crosslist;
mod cycles;
mod enforce;
mod graph;

pub use crosslist::{resolve_cross_listings, MergedCatalog};
pub use cycles::{
    detect_cycles, detect_cycles_with_cap, is_dag, topological_order, DEFAULT_CYCLE_CAP,
};
pub use enforce::enforce_dag;
pub use graph::{Cpn, CpnArc, CpnNode, NodeId, Provenance};

use std::collections::BTreeMap;

use crate::catalog::{Catalog, CoreqMode, CourseCode};
use crate::error::BuildError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoreqPolicy {
    /// Hard corequisites become a pair of opposing unit arcs.
    Bidirectional,
    /// Every corequisite pair becomes one lecture → lab arc.
    #[default]
    Directed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DanglingMode {
    #[default]
    CreateStub,
    Drop,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildPolicy {
    pub coreq_mode: CoreqPolicy,
    pub dangling_mode: DanglingMode,
    /// Case-insensitive title substrings that mark a laboratory course.
    pub lab_title_markers: Vec<String>,
}

impl Default for BuildPolicy {
    fn default() -> Self {
        Self {
            coreq_mode: CoreqPolicy::Directed,
            dangling_mode: DanglingMode::CreateStub,
            lab_title_markers: vec!["lab".to_string(), "laboratory".to_string()],
        }
    }
}

impl BuildPolicy {
    pub fn bidirectional() -> Self {
        Self {
            coreq_mode: CoreqPolicy::Bidirectional,
            ..Self::default()
        }
    }

    pub fn is_lab(&self, title: &str) -> bool {
        let title = title.to_lowercase();
        self.lab_title_markers
            .iter()
            .any(|m| !m.is_empty() && title.contains(&m.to_lowercase()))
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BuildDiagnostics {
    /// Cross-listing groups with more than one member.
    pub merged_groups: Vec<Vec<CourseCode>>,
    pub dangling_codes: Vec<CourseCode>,
    pub stub_nodes: Vec<NodeId>,
    /// Bindings that would have joined a node to itself, as (referring course, referenced code).
    pub self_loops: Vec<(CourseCode, CourseCode)>,
    /// Arcs deleted by DAG enforcement.
    pub removed_arcs: Vec<CpnArc>,
    pub unresolved_cycles: Vec<Vec<NodeId>>,
    /// Set when cycle enumeration stopped at its cap; `unresolved_cycles` is then partial.
    pub cycle_limit_hit: bool,
}

struct Builder<'a> {
    policy: &'a BuildPolicy,
    nodes: Vec<CpnNode>,
    index: BTreeMap<CourseCode, NodeId>,
    contributions: BTreeMap<(NodeId, NodeId), (f64, Provenance)>,
    diagnostics: BuildDiagnostics,
}

impl Builder<'_> {
    fn resolve(
        &mut self,
        from: &CourseCode,
        code: &CourseCode,
    ) -> Result<Option<NodeId>, BuildError> {
        if let Some(&id) = self.index.get(code) {
            return Ok(Some(id));
        }
        match self.policy.dangling_mode {
            DanglingMode::Error => Err(BuildError::Dangling {
                from: from.clone(),
                code: code.clone(),
            }),
            DanglingMode::Drop => {
                if !self.diagnostics.dangling_codes.contains(code) {
                    self.diagnostics.dangling_codes.push(code.clone());
                }
                Ok(None)
            }
            DanglingMode::CreateStub => {
                let id = NodeId(self.nodes.len());
                let mut node = CpnNode::new(id, vec![code.clone()], "");
                node.stub = true;
                self.nodes.push(node);
                self.index.insert(code.clone(), id);
                self.diagnostics.dangling_codes.push(code.clone());
                self.diagnostics.stub_nodes.push(id);
                Ok(Some(id))
            }
        }
    }

    fn contribute(
        &mut self,
        source: NodeId,
        target: NodeId,
        weight: f64,
        provenance: Provenance,
        binding: (&CourseCode, &CourseCode),
    ) {
        if source == target {
            let pair = (binding.0.clone(), binding.1.clone());
            if !self.diagnostics.self_loops.contains(&pair) {
                self.diagnostics.self_loops.push(pair);
            }
            return;
        }
        let entry = self
            .contributions
            .entry((source, target))
            .or_insert((0.0, provenance));
        entry.0 += weight;
        entry.1 = entry.1.min(provenance);
    }
}

/// Builds the network for `catalog` under `policy`.
///
/// Cross-listed records are merged first. Node ids follow first appearance in
/// the catalogue; stubs for dangling codes are appended as they are met.
pub fn build_cpn(
    catalog: &Catalog,
    policy: &BuildPolicy,
) -> Result<(Cpn, BuildDiagnostics), BuildError> {
    if policy.coreq_mode == CoreqPolicy::Directed
        && policy.lab_title_markers.iter().all(String::is_empty)
    {
        return Err(BuildError::NoLabMarkers);
    }
    let merged = resolve_cross_listings(catalog);

    let mut builder = Builder {
        policy,
        nodes: Vec::new(),
        index: BTreeMap::new(),
        contributions: BTreeMap::new(),
        diagnostics: BuildDiagnostics::default(),
    };

    for record in &merged.catalog.records {
        let id = NodeId(builder.nodes.len());
        let group = merged
            .group_of(&record.code)
            .expect("every record code is grouped")
            .to_vec();
        for code in &group {
            builder.index.insert(code.clone(), id);
        }
        if group.len() > 1 {
            builder.diagnostics.merged_groups.push(group.clone());
        }
        builder
            .nodes
            .push(CpnNode::new(id, group, record.title.clone()));
    }

    for (position, record) in merged.catalog.records.iter().enumerate() {
        let course = NodeId(position);
        for group in &record.prerequisites.conjuncts {
            let share = 1.0 / group.len() as f64;
            for alternative in group.alternatives() {
                if let Some(source) = builder.resolve(&record.code, alternative)? {
                    builder.contribute(
                        source,
                        course,
                        share,
                        Provenance::Prerequisite,
                        (&record.code, alternative),
                    );
                }
            }
        }

        for decl in &record.corequisites {
            let Some(other) = builder.resolve(&record.code, &decl.target)? else {
                continue;
            };
            let binding = (&record.code, &decl.target);
            match policy.coreq_mode {
                CoreqPolicy::Bidirectional => match decl.mode {
                    CoreqMode::Hard => {
                        builder.contribute(course, other, 1.0, Provenance::Corequisite, binding);
                        builder.contribute(other, course, 1.0, Provenance::Corequisite, binding);
                    }
                    // "credit or coregistration": the named course may come first
                    CoreqMode::Soft => {
                        builder.contribute(other, course, 1.0, Provenance::Corequisite, binding);
                    }
                },
                CoreqPolicy::Directed => {
                    if other == course {
                        builder.contribute(course, other, 1.0, Provenance::Corequisite, binding);
                        continue;
                    }
                    let course_is_lab = policy.is_lab(&builder.nodes[course.0].title);
                    let other_is_lab = policy.is_lab(&builder.nodes[other.0].title);
                    let (lecture, lab) = match (course_is_lab, other_is_lab) {
                        (true, false) => (other, course),
                        (false, true) => (course, other),
                        (both, _) => {
                            return Err(BuildError::UnresolvableCorequisite {
                                first: record.code.clone(),
                                second: decl.target.clone(),
                                reason: if both {
                                    "both titles mark a lab"
                                } else {
                                    "neither title marks a lab"
                                },
                            })
                        }
                    };
                    builder.contribute(lecture, lab, 1.0, Provenance::Corequisite, binding);
                }
            }
        }
    }

    let arcs = builder
        .contributions
        .iter()
        .map(|(&(source, target), &(weight, provenance))| CpnArc {
            source,
            target,
            weight: weight.min(1.0),
            provenance,
        })
        .collect();
    let cpn = Cpn::new(builder.nodes, arcs).expect("builder emits a valid graph");
    Ok((cpn, builder.diagnostics))
}
