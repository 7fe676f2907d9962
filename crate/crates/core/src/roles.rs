//! Course roles (isolated, source, sink, hub, bridge, interior) and top-N
//! league tables.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::builder::{Cpn, NodeId};
use crate::error::RoleError;
use crate::metrics::{MetricsTable, NodeMetrics};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Isolated,
    Source,
    Sink,
    Hub,
    Bridge,
    Interior,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Isolated => "isolated",
            Role::Source => "source",
            Role::Sink => "sink",
            Role::Hub => "hub",
            Role::Bridge => "bridge",
            Role::Interior => "interior",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RoleThresholds {
    pub hub_top_n: usize,
    pub bridge_top_n: usize,
}

impl Default for RoleThresholds {
    fn default() -> Self {
        Self {
            hub_top_n: 10,
            bridge_top_n: 10,
        }
    }
}

pub type RoleAssignment = BTreeMap<NodeId, BTreeSet<Role>>;

/// Value of the `n`-th largest entry; every value at or above it makes the cut.
fn cutoff(mut values: Vec<f64>, n: usize) -> Option<f64> {
    if n == 0 || values.is_empty() {
        return None;
    }
    values.sort_by(|a, b| b.total_cmp(a));
    Some(values[n.min(values.len()) - 1])
}

/// Assigns roles from degree signs and top-N ranks.
///
/// Hubs are the `hub_top_n` highest weighted out-degrees and bridges the
/// `bridge_top_n` highest betweenness scores, ties at the cutoff included.
/// Only strictly positive scores qualify. Isolated nodes carry no other role;
/// any other node with no role is `interior`.
pub fn classify_roles(
    cpn: &Cpn,
    metrics: &MetricsTable,
    thresholds: RoleThresholds,
) -> Result<RoleAssignment, RoleError> {
    let rows: Vec<&NodeMetrics> = cpn
        .node_ids()
        .map(|id| metrics.get(&id).ok_or(RoleError::MissingMetrics(id)))
        .collect::<Result<_, _>>()?;

    let hub_cut = cutoff(
        rows.iter().map(|m| m.wk_out).filter(|v| *v > 0.0).collect(),
        thresholds.hub_top_n,
    );
    let bridge_cut = cutoff(
        rows.iter()
            .filter_map(|m| m.betweenness)
            .filter(|v| *v > 0.0)
            .collect(),
        thresholds.bridge_top_n,
    );

    let mut assignment = RoleAssignment::new();
    for m in rows {
        let mut roles = BTreeSet::new();
        if m.k == 0 {
            roles.insert(Role::Isolated);
            assignment.insert(m.node, roles);
            continue;
        }
        if m.k_in == 0 {
            roles.insert(Role::Source);
        }
        if m.k_out == 0 {
            roles.insert(Role::Sink);
        }
        if hub_cut.is_some_and(|cut| m.wk_out > 0.0 && m.wk_out >= cut) {
            roles.insert(Role::Hub);
        }
        if let (Some(cut), Some(b)) = (bridge_cut, m.betweenness) {
            if b > 0.0 && b >= cut {
                roles.insert(Role::Bridge);
            }
        }
        if roles.is_empty() {
            roles.insert(Role::Interior);
        }
        assignment.insert(m.node, roles);
    }
    Ok(assignment)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKey {
    WeightedOutDegree,
    Betweenness,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub label: String,
    pub title: String,
    pub value: f64,
}

fn ranked(cpn: &Cpn, metrics: &MetricsTable, key: TableKey) -> Vec<TableRow> {
    let mut rows: Vec<TableRow> = metrics
        .values()
        .filter_map(|m| {
            let value = match key {
                TableKey::WeightedOutDegree => Some(m.wk_out),
                TableKey::Betweenness => m.betweenness,
            }?;
            let node = cpn.node(m.node);
            Some(TableRow {
                label: node.label.clone(),
                title: node.title.clone(),
                value,
            })
        })
        .collect();
    rows.sort_by(|a, b| match b.value.total_cmp(&a.value) {
        Ordering::Equal => a.label.cmp(&b.label),
        other => other,
    });
    rows
}

/// The `n` best rows by `key`, descending, ties ordered by label.
/// Betweenness tables only list nodes that carry a betweenness score.
pub fn top_table(cpn: &Cpn, metrics: &MetricsTable, key: TableKey, n: usize) -> Vec<TableRow> {
    let mut rows = ranked(cpn, metrics, key);
    rows.truncate(n);
    rows
}

/// Like [`top_table`], but keeps every row tied with the `n`-th.
pub fn top_table_with_ties(
    cpn: &Cpn,
    metrics: &MetricsTable,
    key: TableKey,
    n: usize,
) -> Vec<TableRow> {
    let mut rows = ranked(cpn, metrics, key);
    if n == 0 {
        rows.clear();
    } else if rows.len() > n {
        let cut = rows[n - 1].value;
        let keep = n + rows[n..].iter().take_while(|r| r.value == cut).count();
        rows.truncate(keep);
    }
    rows
}
