use std::collections::BTreeMap;

use serde::Serialize;

use crate::builder::{Cpn, NodeId};

/// Degree family for one node. Unweighted counts count arcs; weighted sums add
/// arc weights, so with unit weights `wk == k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NodeMetrics {
    pub node: NodeId,
    pub k_in: usize,
    pub k_out: usize,
    pub k: usize,
    pub wk_in: f64,
    pub wk_out: f64,
    pub wk: f64,
    /// Normalized betweenness; `None` outside the analyzed component.
    pub betweenness: Option<f64>,
}

impl NodeMetrics {
    fn empty(node: NodeId) -> Self {
        Self {
            node,
            k_in: 0,
            k_out: 0,
            k: 0,
            wk_in: 0.0,
            wk_out: 0.0,
            wk: 0.0,
            betweenness: None,
        }
    }
}

pub type MetricsTable = BTreeMap<NodeId, NodeMetrics>;

pub fn degree_metrics(cpn: &Cpn) -> MetricsTable {
    let mut table: MetricsTable = cpn
        .node_ids()
        .map(|id| (id, NodeMetrics::empty(id)))
        .collect();
    for arc in cpn.arcs() {
        let out = table.get_mut(&arc.source).expect("arc source is a node");
        out.k_out += 1;
        out.wk_out += arc.weight;
        let inc = table.get_mut(&arc.target).expect("arc target is a node");
        inc.k_in += 1;
        inc.wk_in += arc.weight;
    }
    for m in table.values_mut() {
        m.k = m.k_in + m.k_out;
        m.wk = m.wk_in + m.wk_out;
    }
    table
}
