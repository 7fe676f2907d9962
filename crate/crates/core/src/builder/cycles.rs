//! Elementary cycle enumeration (Johnson) and topological ordering.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use super::{Cpn, NodeId};
use crate::error::GraphError;

pub const DEFAULT_CYCLE_CAP: usize = 100_000;

/// Every elementary cycle, each starting at its smallest node id, sorted.
pub fn detect_cycles(cpn: &Cpn) -> Result<Vec<Vec<NodeId>>, GraphError> {
    detect_cycles_with_cap(cpn, DEFAULT_CYCLE_CAP)
}

pub fn detect_cycles_with_cap(cpn: &Cpn, cap: usize) -> Result<Vec<Vec<NodeId>>, GraphError> {
    let (cycles, complete) = enumerate_cycles(cpn, cap);
    if complete {
        Ok(cycles)
    } else {
        Err(GraphError::CycleLimitExceeded { cap })
    }
}

/// Returns at most `cap` cycles and whether the enumeration was complete.
pub(crate) fn enumerate_cycles(cpn: &Cpn, cap: usize) -> (Vec<Vec<NodeId>>, bool) {
    let n = cpn.node_count();
    let mut search = Johnson {
        cpn,
        start: 0,
        allowed: vec![false; n],
        blocked: vec![false; n],
        block_map: vec![Vec::new(); n],
        path: Vec::new(),
        cycles: Vec::new(),
        cap,
        overflow: false,
    };

    for start in 0..n {
        let component = strong_component_from(cpn, start);
        if component.len() < 2 {
            continue;
        }
        search.allowed.iter_mut().for_each(|a| *a = false);
        for &v in &component {
            search.allowed[v] = true;
            search.blocked[v] = false;
            search.block_map[v].clear();
        }
        search.start = start;
        search.circuit(start);
        if search.overflow {
            break;
        }
    }

    let complete = !search.overflow;
    let mut cycles = search.cycles;
    cycles.sort();
    (cycles, complete)
}

/// Nodes `>= start` lying on a cycle through `start` within the subgraph
/// induced by `{start, start + 1, ..}`.
fn strong_component_from(cpn: &Cpn, start: usize) -> Vec<usize> {
    let n = cpn.node_count();
    let reach = |forward: bool| {
        let mut seen = vec![false; n];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let next = if forward {
                cpn.successors(NodeId(v))
            } else {
                cpn.predecessors(NodeId(v))
            };
            for &w in next {
                if w.0 >= start && !seen[w.0] {
                    seen[w.0] = true;
                    queue.push_back(w.0);
                }
            }
        }
        seen
    };
    let forward = reach(true);
    let backward = reach(false);
    (start..n).filter(|&v| forward[v] && backward[v]).collect()
}

struct Johnson<'a> {
    cpn: &'a Cpn,
    start: usize,
    allowed: Vec<bool>,
    blocked: Vec<bool>,
    block_map: Vec<Vec<usize>>,
    path: Vec<NodeId>,
    cycles: Vec<Vec<NodeId>>,
    cap: usize,
    overflow: bool,
}

impl Johnson<'_> {
    fn unblock(&mut self, v: usize) {
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            if self.blocked[u] {
                self.blocked[u] = false;
                stack.append(&mut self.block_map[u]);
            }
        }
    }

    fn circuit(&mut self, v: usize) -> bool {
        let cpn = self.cpn;
        let mut found = false;
        self.path.push(NodeId(v));
        self.blocked[v] = true;
        for &w in cpn.successors(NodeId(v)) {
            if self.overflow {
                break;
            }
            let w = w.0;
            if !self.allowed[w] {
                continue;
            }
            if w == self.start {
                if self.cycles.len() == self.cap {
                    self.overflow = true;
                    break;
                }
                self.cycles.push(self.path.clone());
                found = true;
            } else if !self.blocked[w] && self.circuit(w) {
                found = true;
            }
        }
        if found {
            self.unblock(v);
        } else {
            for &w in cpn.successors(NodeId(v)) {
                if self.allowed[w.0] && !self.block_map[w.0].contains(&v) {
                    self.block_map[w.0].push(v);
                }
            }
        }
        self.path.pop();
        found
    }
}

/// Kahn's algorithm, smallest ready id first.
fn kahn(cpn: &Cpn) -> Vec<NodeId> {
    let mut indegree: Vec<usize> = cpn.node_ids().map(|v| cpn.predecessors(v).len()).collect();
    let mut ready: BinaryHeap<Reverse<NodeId>> = cpn
        .node_ids()
        .filter(|v| indegree[v.0] == 0)
        .map(Reverse)
        .collect();
    let mut order = Vec::with_capacity(cpn.node_count());
    while let Some(Reverse(v)) = ready.pop() {
        order.push(v);
        for &w in cpn.successors(v) {
            indegree[w.0] -= 1;
            if indegree[w.0] == 0 {
                ready.push(Reverse(w));
            }
        }
    }
    order
}

pub fn is_dag(cpn: &Cpn) -> bool {
    kahn(cpn).len() == cpn.node_count()
}

/// Topological order with ties broken by ascending node id.
pub fn topological_order(cpn: &Cpn) -> Result<Vec<NodeId>, GraphError> {
    let order = kahn(cpn);
    if order.len() == cpn.node_count() {
        return Ok(order);
    }
    // every node left over has a left-over predecessor; walk back until one repeats
    let mut placed = vec![false; cpn.node_count()];
    for v in &order {
        placed[v.0] = true;
    }
    let first = cpn
        .node_ids()
        .find(|v| !placed[v.0])
        .expect("cyclic remainder");
    let mut visited_at = vec![usize::MAX; cpn.node_count()];
    let mut walk = Vec::new();
    let mut v = first;
    while visited_at[v.0] == usize::MAX {
        visited_at[v.0] = walk.len();
        walk.push(v);
        v = *cpn
            .predecessors(v)
            .iter()
            .find(|p| !placed[p.0])
            .expect("left-over node has a left-over predecessor");
    }
    let mut cycle: Vec<NodeId> = walk[visited_at[v.0]..].iter().rev().copied().collect();
    let smallest = (0..cycle.len()).min_by_key(|&i| cycle[i]).unwrap_or(0);
    cycle.rotate_left(smallest);
    Err(GraphError::NotADag { cycle })
}
