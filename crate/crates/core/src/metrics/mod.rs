//! Node and graph metrics: weighted degree, density, weakly connected
//! components, betweenness, path lengths and rank correlation.

mod betweenness;
mod components;
mod degree;
mod paths;
mod spearman;

pub use betweenness::{betweenness, betweenness_raw};
pub use components::{weakly_connected_components, ComponentSet};
pub use degree::{degree_metrics, MetricsTable, NodeMetrics};
pub use paths::{path_metrics, PathMetrics};
pub use spearman::{average_ranks, spearman, spearman_rho, PermutationConfig, Spearman};

use serde::Serialize;

use crate::builder::{Cpn, NodeId};

/// `2m / (n(n-1))`, zero below two nodes.
pub fn density(nodes: usize, arcs: usize) -> f64 {
    if nodes < 2 {
        return 0.0;
    }
    2.0 * arcs as f64 / (nodes as f64 * (nodes - 1) as f64)
}

/// One column of the summary table.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ScopeSummary {
    pub nodes: usize,
    pub arcs: usize,
    pub density: f64,
    pub components: usize,
    pub mean_degree: f64,
    pub mean_in_degree: f64,
    pub mean_out_degree: f64,
    pub mean_weighted_degree: f64,
    pub mean_weighted_in_degree: f64,
    pub mean_weighted_out_degree: f64,
    pub diameter: Option<usize>,
    pub characteristic_path_length: Option<f64>,
    pub reachable_pairs: Option<usize>,
    pub mean_betweenness: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SummaryReport {
    pub full: ScopeSummary,
    pub largest_component: ScopeSummary,
}

/// Everything computed for one network: per-node metrics (betweenness filled
/// in for the largest component), components and the summary.
#[derive(Debug, Clone, PartialEq)]
pub struct Analysis {
    pub metrics: MetricsTable,
    pub components: ComponentSet,
    pub summary: SummaryReport,
}

fn degree_scope(
    metrics: &MetricsTable,
    nodes: &[NodeId],
    arcs: usize,
    components: usize,
) -> ScopeSummary {
    let n = nodes.len();
    let mut scope = ScopeSummary {
        nodes: n,
        arcs,
        density: density(n, arcs),
        components,
        ..ScopeSummary::default()
    };
    if n == 0 {
        return scope;
    }
    let mean = |f: &dyn Fn(&NodeMetrics) -> f64| {
        nodes.iter().map(|id| f(&metrics[id])).sum::<f64>() / n as f64
    };
    scope.mean_degree = mean(&|m| m.k as f64);
    scope.mean_in_degree = mean(&|m| m.k_in as f64);
    scope.mean_out_degree = mean(&|m| m.k_out as f64);
    scope.mean_weighted_degree = mean(&|m| m.wk);
    scope.mean_weighted_in_degree = mean(&|m| m.wk_in);
    scope.mean_weighted_out_degree = mean(&|m| m.wk_out);
    scope
}

pub fn analyze(cpn: &Cpn) -> Analysis {
    let mut metrics = degree_metrics(cpn);
    let components = weakly_connected_components(cpn);
    let all: Vec<NodeId> = cpn.node_ids().collect();
    let full = degree_scope(&metrics, &all, cpn.arc_count(), components.len());

    let largest_component = match components.largest() {
        None => ScopeSummary::default(),
        Some(nodes) => {
            let scores = betweenness(cpn, nodes);
            for (id, score) in &scores {
                metrics
                    .get_mut(id)
                    .expect("component node has metrics")
                    .betweenness = Some(*score);
            }
            let arcs = cpn
                .arcs()
                .iter()
                .filter(|a| scores.contains_key(&a.source))
                .count();
            let mut scope = degree_scope(&metrics, nodes, arcs, 1);
            if let Ok(paths) = path_metrics(cpn, nodes) {
                scope.diameter = Some(paths.diameter);
                scope.characteristic_path_length = Some(paths.characteristic_path_length);
                scope.reachable_pairs = Some(paths.reachable_pairs);
            }
            scope.mean_betweenness = Some(scores.values().sum::<f64>() / scores.len() as f64);
            scope
        }
    };

    Analysis {
        metrics,
        components,
        summary: SummaryReport {
            full,
            largest_component,
        },
    }
}

pub fn summarize(cpn: &Cpn) -> SummaryReport {
    analyze(cpn).summary
}
