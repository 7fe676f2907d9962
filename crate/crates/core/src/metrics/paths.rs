use serde::Serialize;

use super::betweenness::Induced;
use crate::builder::{Cpn, NodeId};
use crate::error::MetricsError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PathMetrics {
    /// Longest finite directed shortest path.
    pub diameter: usize,
    /// Mean shortest-path length over ordered pairs joined by a directed path.
    pub characteristic_path_length: f64,
    pub reachable_pairs: usize,
}

/// Directed BFS path statistics over the subgraph induced by `nodes`.
/// Unreachable ordered pairs are left out of the mean.
pub fn path_metrics(cpn: &Cpn, nodes: &[NodeId]) -> Result<PathMetrics, MetricsError> {
    let graph = Induced::new(cpn, nodes);
    let mut diameter = 0;
    let mut total: u64 = 0;
    let mut pairs = 0usize;
    for s in 0..graph.len() {
        for (t, &d) in graph.distances(s).iter().enumerate() {
            if t != s && d != usize::MAX {
                diameter = diameter.max(d);
                total += d as u64;
                pairs += 1;
            }
        }
    }
    if pairs == 0 {
        return Err(MetricsError::NoReachablePairs);
    }
    Ok(PathMetrics {
        diameter,
        characteristic_path_length: total as f64 / pairs as f64,
        reachable_pairs: pairs,
    })
}
