//! Directed, unweighted betweenness (Brandes dependency accumulation) over the
//! subgraph induced by a node set.

use std::collections::{BTreeMap, VecDeque};

use crate::builder::{Cpn, NodeId};

/// Adjacency of the subgraph induced by `nodes`, in local indices.
pub(crate) struct Induced {
    pub ids: Vec<NodeId>,
    pub successors: Vec<Vec<usize>>,
}

impl Induced {
    pub fn new(cpn: &Cpn, nodes: &[NodeId]) -> Self {
        let mut ids = nodes.to_vec();
        ids.sort();
        ids.dedup();
        let local: BTreeMap<NodeId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let successors = ids
            .iter()
            .map(|&v| {
                cpn.successors(v)
                    .iter()
                    .filter_map(|w| local.get(w).copied())
                    .collect()
            })
            .collect();
        Self { ids, successors }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    /// BFS distances from `source`; `usize::MAX` marks unreachable.
    pub fn distances(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.len()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.successors[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

/// Raw (unnormalized) betweenness for every node in `nodes`.
pub fn betweenness_raw(cpn: &Cpn, nodes: &[NodeId]) -> BTreeMap<NodeId, f64> {
    let graph = Induced::new(cpn, nodes);
    let n = graph.len();
    let mut centrality = vec![0.0f64; n];

    let mut order = Vec::with_capacity(n);
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![usize::MAX; n];
    let mut delta = vec![0.0f64; n];
    let mut queue = VecDeque::new();

    for s in 0..n {
        order.clear();
        for v in 0..n {
            preds[v].clear();
            sigma[v] = 0.0;
            dist[v] = usize::MAX;
            delta[v] = 0.0;
        }
        sigma[s] = 1.0;
        dist[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &graph.successors[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                    preds[w].push(v);
                }
            }
        }
        while let Some(w) = order.pop() {
            for &v in &preds[w] {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            if w != s {
                centrality[w] += delta[w];
            }
        }
    }

    graph.ids.iter().copied().zip(centrality).collect()
}

/// Betweenness normalized by `(n-1)(n-2)`, `n` being the size of the node
/// set. Sets with fewer than three nodes score zero throughout.
pub fn betweenness(cpn: &Cpn, nodes: &[NodeId]) -> BTreeMap<NodeId, f64> {
    let mut raw = betweenness_raw(cpn, nodes);
    let n = raw.len();
    if n < 3 {
        raw.values_mut().for_each(|b| *b = 0.0);
        return raw;
    }
    let scale = ((n - 1) * (n - 2)) as f64;
    raw.values_mut().for_each(|b| *b /= scale);
    raw
}
