//! Brute-force oracles. None of these share code paths with the library's
//! algorithms: shortest paths come from exhaustive simple-path enumeration.
#![allow(dead_code)]

use std::collections::BTreeMap;

use cpn_core::builder::{Cpn, NodeId};
use cpn_core::catalog::{Catalog, CoreqDecl, CoreqMode, CourseCode, CourseRecord, OrGroup};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Plain adjacency lists restricted to `nodes`.
fn adjacency(cpn: &Cpn, nodes: &[NodeId]) -> BTreeMap<NodeId, Vec<NodeId>> {
    nodes
        .iter()
        .map(|&v| {
            let out = cpn
                .arcs()
                .iter()
                .filter(|a| a.source == v && nodes.contains(&a.target))
                .map(|a| a.target)
                .collect();
            (v, out)
        })
        .collect()
}

fn simple_paths(
    adj: &BTreeMap<NodeId, Vec<NodeId>>,
    current: NodeId,
    target: NodeId,
    path: &mut Vec<NodeId>,
    out: &mut Vec<Vec<NodeId>>,
) {
    if current == target {
        out.push(path.clone());
        return;
    }
    for &next in &adj[&current] {
        if !path.contains(&next) {
            path.push(next);
            simple_paths(adj, next, target, path, out);
            path.pop();
        }
    }
}

/// All shortest directed paths from `s` to `t`, as node sequences.
pub fn all_shortest_paths(cpn: &Cpn, nodes: &[NodeId], s: NodeId, t: NodeId) -> Vec<Vec<NodeId>> {
    let adj = adjacency(cpn, nodes);
    let mut paths = Vec::new();
    simple_paths(&adj, s, t, &mut vec![s], &mut paths);
    let Some(best) = paths.iter().map(Vec::len).min() else {
        return Vec::new();
    };
    paths.retain(|p| p.len() == best);
    paths
}

/// Raw betweenness by counting, for every ordered pair, the share of shortest
/// paths passing through each interior node.
pub fn brute_betweenness_raw(cpn: &Cpn, nodes: &[NodeId]) -> BTreeMap<NodeId, f64> {
    let mut score: BTreeMap<NodeId, f64> = nodes.iter().map(|&v| (v, 0.0)).collect();
    for &s in nodes {
        for &t in nodes {
            if s == t {
                continue;
            }
            let paths = all_shortest_paths(cpn, nodes, s, t);
            if paths.is_empty() {
                continue;
            }
            let share = 1.0 / paths.len() as f64;
            for p in &paths {
                for v in &p[1..p.len() - 1] {
                    *score.get_mut(v).unwrap() += share;
                }
            }
        }
    }
    score
}

/// (diameter, mean length, reachable pairs) from exhaustive enumeration.
pub fn brute_paths(cpn: &Cpn, nodes: &[NodeId]) -> Option<(usize, f64, usize)> {
    let mut lengths = Vec::new();
    for &s in nodes {
        for &t in nodes {
            if s != t {
                if let Some(p) = all_shortest_paths(cpn, nodes, s, t).first() {
                    lengths.push(p.len() - 1);
                }
            }
        }
    }
    if lengths.is_empty() {
        return None;
    }
    let total: usize = lengths.iter().sum();
    Some((
        *lengths.iter().max().unwrap(),
        total as f64 / lengths.len() as f64,
        lengths.len(),
    ))
}

/// Random DAG on `n` nodes: arcs only go forward in a random hidden order, so
/// node ids are not topologically sorted.
pub fn random_dag(seed: u64, max_nodes: usize) -> Cpn {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_nodes);
    let density: f64 = rng.gen_range(0.05..0.9);
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                arcs.push((order[i], order[j]));
            }
        }
    }
    Cpn::synthetic(n, &arcs).unwrap()
}

pub fn ids(cpn: &Cpn, labels: &[&str]) -> Vec<NodeId> {
    labels
        .iter()
        .map(|l| {
            cpn.lookup(&l.parse().unwrap())
                .unwrap_or_else(|| panic!("no node {l}"))
        })
        .collect()
}

/// Knobs for [`random_catalog`].
#[derive(Debug, Clone, Copy)]
pub struct CatalogShape {
    pub max_records: usize,
    pub max_group: usize,
    pub corequisites: bool,
    pub cross_listings: bool,
    pub dangling: bool,
}

impl Default for CatalogShape {
    fn default() -> Self {
        Self {
            max_records: 15,
            max_group: 4,
            corequisites: false,
            cross_listings: false,
            dangling: false,
        }
    }
}

const SUBJECTS: [&str; 4] = ["BIOL", "CHEM", "MATH", "PHYS"];
const WORDS: [&str; 8] = [
    "Intro",
    "Advanced",
    "Lab",
    "Theory",
    "Methods",
    "Cell",
    "Laboratory",
    "Études",
];

/// Random catalogue. Within one record every referenced code appears at most
/// once and never names the record itself, so each conjunct contributes
/// exactly 1.0 of incoming weight when cross-listings are off.
pub fn random_catalog(seed: u64, shape: CatalogShape) -> Catalog {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=shape.max_records);
    let mut codes: Vec<CourseCode> = Vec::new();
    while codes.len() < n {
        let subject = SUBJECTS[rng.gen_range(0..SUBJECTS.len())];
        let number = format!("{}", rng.gen_range(100..500));
        let code = CourseCode::new(subject, &number).unwrap();
        if !codes.contains(&code) {
            codes.push(code);
        }
    }
    let ghosts: Vec<CourseCode> = (0..3)
        .map(|i| CourseCode::new("GHST", &format!("{}", 900 + i)).unwrap())
        .collect();

    let mut records = Vec::new();
    for (i, code) in codes.iter().enumerate() {
        let title_len = rng.gen_range(1..4);
        let title: Vec<&str> = (0..title_len)
            .map(|_| WORDS[rng.gen_range(0..WORDS.len())])
            .collect();
        let mut record = CourseRecord::new(code.clone(), title.join(" "));

        let mut pool: Vec<CourseCode> = codes.iter().filter(|c| *c != code).cloned().collect();
        if shape.dangling {
            pool.extend(ghosts.iter().cloned());
        }
        for k in (1..pool.len()).rev() {
            pool.swap(k, rng.gen_range(0..=k));
        }
        let conjuncts = rng.gen_range(0..=3);
        for _ in 0..conjuncts {
            let size = rng.gen_range(1..=shape.max_group).min(pool.len());
            if size == 0 {
                break;
            }
            let alternatives: Vec<CourseCode> = pool.drain(..size).collect();
            record
                .prerequisites
                .conjuncts
                .push(OrGroup::new(alternatives).unwrap());
        }
        if shape.corequisites && !pool.is_empty() && rng.gen_bool(0.3) {
            let mode = if rng.gen_bool(0.5) {
                CoreqMode::Hard
            } else {
                CoreqMode::Soft
            };
            record.corequisites.push(CoreqDecl {
                target: pool.remove(0),
                mode,
            });
        }
        if shape.cross_listings && i > 0 && rng.gen_bool(0.15) {
            let other = codes[rng.gen_range(0..i)].clone();
            record.cross_listings.push(other);
        }
        if rng.gen_bool(0.2) {
            record
                .soft_rules
                .push(format!("consent of instructor #{}", rng.gen_range(0..10)));
        }
        records.push(record);
    }
    Catalog::new(records, format!("random-{seed}"))
}
