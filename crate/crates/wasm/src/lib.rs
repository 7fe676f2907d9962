//! Browser bindings. The exported functions take catalogue text (plain or
//! structured JSON) and return JSON or DOT strings; the page in `www/`
//! renders them.

use cpn_core::builder::{
    build_cpn, detect_cycles_with_cap, enforce_dag, BuildPolicy, CoreqPolicy, Cpn, NodeId,
    DEFAULT_CYCLE_CAP,
};
use cpn_core::catalog::Catalog;
use cpn_core::export::{export_dot, ExportOptions, Report, ReportInput, SizeBy};
use cpn_core::metrics::{analyze, spearman, PermutationConfig};
use cpn_core::parser::{parse_catalog_structured, parse_catalog_text};
use cpn_core::roles::{classify_roles, top_table_with_ties, Role, RoleThresholds, TableKey};
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DemoOptions {
    pub coreq: CoreqPolicy,
    pub enforce: bool,
    pub top: usize,
}

impl Default for DemoOptions {
    fn default() -> Self {
        Self {
            coreq: CoreqPolicy::Directed,
            enforce: true,
            top: 10,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct NodeView {
    pub id: usize,
    pub label: String,
    pub title: String,
    pub stub: bool,
    /// Drawing column: longest prerequisite chain ending here.
    pub layer: usize,
    pub roles: Vec<Role>,
    pub wk_out: f64,
    pub betweenness: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct ArcView {
    pub source: usize,
    pub target: usize,
    pub weight: f64,
    pub provenance: &'static str,
}

#[derive(Debug, Serialize)]
pub struct AnalysisView {
    pub nodes: Vec<NodeView>,
    pub arcs: Vec<ArcView>,
    pub removed: Vec<ArcView>,
    pub summary_text: String,
    pub report: Report,
}

fn parse(input: &str) -> Result<Catalog, String> {
    if let Ok(parsed) = parse_catalog_structured(input.as_bytes()) {
        return Ok(parsed.catalog);
    }
    let parsed = parse_catalog_text(input).map_err(|e| e.to_string())?;
    if let Some(d) = parsed
        .diagnostics
        .iter()
        .find(|d| d.severity == cpn_core::catalog::Severity::Error)
    {
        return Err(d.to_string());
    }
    Ok(parsed.catalog)
}

fn policy(coreq: CoreqPolicy) -> BuildPolicy {
    BuildPolicy {
        coreq_mode: coreq,
        ..BuildPolicy::default()
    }
}

fn arc_views<'a>(arcs: impl IntoIterator<Item = &'a cpn_core::builder::CpnArc>) -> Vec<ArcView> {
    arcs.into_iter()
        .map(|a| ArcView {
            source: a.source.0,
            target: a.target.0,
            weight: a.weight,
            provenance: a.provenance.as_str(),
        })
        .collect()
}

/// Longest-path layering. Nodes on cycles never become ready; they go one
/// column past the deepest placed node.
pub fn layers(cpn: &Cpn) -> Vec<usize> {
    let n = cpn.node_count();
    let mut indegree: Vec<usize> = cpn.node_ids().map(|v| cpn.predecessors(v).len()).collect();
    let mut layer = vec![0; n];
    let mut placed = vec![false; n];
    let mut ready: Vec<NodeId> = cpn.node_ids().filter(|v| indegree[v.0] == 0).collect();
    while let Some(v) = ready.pop() {
        placed[v.0] = true;
        for &w in cpn.successors(v) {
            layer[w.0] = layer[w.0].max(layer[v.0] + 1);
            indegree[w.0] -= 1;
            if indegree[w.0] == 0 {
                ready.push(w);
            }
        }
    }
    let deepest = (0..n)
        .filter(|&v| placed[v])
        .map(|v| layer[v])
        .max()
        .unwrap_or(0);
    for v in 0..n {
        if !placed[v] {
            layer[v] = deepest + 1;
        }
    }
    layer
}

fn prepare(
    input: &str,
    options: DemoOptions,
) -> Result<(Cpn, cpn_core::builder::BuildDiagnostics), String> {
    let catalog = parse(input)?;
    let policy = policy(options.coreq);
    let (built, mut diagnostics) = build_cpn(&catalog, &policy).map_err(|e| e.to_string())?;
    if !options.enforce {
        return Ok((built, diagnostics));
    }
    let (cpn, enforced) = enforce_dag(&built, &policy);
    diagnostics.removed_arcs = enforced.removed_arcs;
    diagnostics.unresolved_cycles = enforced.unresolved_cycles;
    diagnostics.cycle_limit_hit = enforced.cycle_limit_hit;
    Ok((cpn, diagnostics))
}

pub fn analyze_catalog(input: &str, options: DemoOptions) -> Result<AnalysisView, String> {
    let (cpn, diagnostics) = prepare(input, options)?;
    let analysis = analyze(&cpn);
    let thresholds = RoleThresholds {
        hub_top_n: options.top,
        bridge_top_n: options.top,
    };
    let roles = classify_roles(&cpn, &analysis.metrics, thresholds).map_err(|e| e.to_string())?;
    let top_out = top_table_with_ties(
        &cpn,
        &analysis.metrics,
        TableKey::WeightedOutDegree,
        options.top,
    );
    let top_between =
        top_table_with_ties(&cpn, &analysis.metrics, TableKey::Betweenness, options.top);
    let correlation = analysis.components.largest().and_then(|nodes| {
        let (wk, b): (Vec<f64>, Vec<f64>) = nodes
            .iter()
            .map(|id| {
                (
                    analysis.metrics[id].wk,
                    analysis.metrics[id].betweenness.unwrap_or(0.0),
                )
            })
            .unzip();
        spearman(
            &wk,
            &b,
            PermutationConfig {
                iterations: 1_000,
                ..PermutationConfig::default()
            },
        )
        .ok()
    });
    let report = Report::new(&ReportInput {
        cpn: &cpn,
        summary: &analysis.summary,
        components: &analysis.components,
        top_out_degree: &top_out,
        top_betweenness: &top_between,
        diagnostics: &diagnostics,
        correlation: correlation.as_ref(),
    });

    let layer = layers(&cpn);
    let nodes = cpn
        .nodes()
        .iter()
        .map(|node| {
            let m = &analysis.metrics[&node.id];
            NodeView {
                id: node.id.0,
                label: node.label.clone(),
                title: node.title.clone(),
                stub: node.stub,
                layer: layer[node.id.0],
                roles: roles[&node.id].iter().copied().collect(),
                wk_out: m.wk_out,
                betweenness: m.betweenness,
            }
        })
        .collect();
    Ok(AnalysisView {
        nodes,
        arcs: arc_views(cpn.arcs()),
        removed: arc_views(&diagnostics.removed_arcs),
        summary_text: report.to_text(),
        report,
    })
}

/// Elementary cycles as label lists.
pub fn list_cycles(input: &str, coreq: CoreqPolicy) -> Result<Vec<Vec<String>>, String> {
    let catalog = parse(input)?;
    let (cpn, _) = build_cpn(&catalog, &policy(coreq)).map_err(|e| e.to_string())?;
    let cycles = detect_cycles_with_cap(&cpn, DEFAULT_CYCLE_CAP).map_err(|e| e.to_string())?;
    Ok(cycles
        .iter()
        .map(|c| c.iter().map(|&v| cpn.label(v).to_string()).collect())
        .collect())
}

pub fn dot_for(input: &str, options: DemoOptions) -> Result<String, String> {
    let (cpn, _) = prepare(input, options)?;
    let analysis = analyze(&cpn);
    let roles = classify_roles(
        &cpn,
        &analysis.metrics,
        RoleThresholds {
            hub_top_n: options.top,
            bridge_top_n: options.top,
        },
    )
    .map_err(|e| e.to_string())?;
    let export = ExportOptions {
        include_roles: true,
        size_by: SizeBy::OutDegree,
        ..ExportOptions::default()
    };
    export_dot(&cpn, Some(&analysis.metrics), Some(&roles), &export).map_err(|e| e.to_string())
}

fn coreq_mode(name: &str) -> Result<CoreqPolicy, JsError> {
    match name {
        "directed" => Ok(CoreqPolicy::Directed),
        "bidirectional" => Ok(CoreqPolicy::Bidirectional),
        other => Err(JsError::new(&format!("unknown corequisite mode `{other}`"))),
    }
}

/// Analysis of `input` as a JSON string (nodes with layers and roles, arcs, report).
#[wasm_bindgen]
pub fn analyze_json(
    input: &str,
    coreq: &str,
    enforce: bool,
    top: usize,
) -> Result<String, JsError> {
    let options = DemoOptions {
        coreq: coreq_mode(coreq)?,
        enforce,
        top,
    };
    let view = analyze_catalog(input, options).map_err(|e| JsError::new(&e))?;
    serde_json::to_string(&view).map_err(|e| JsError::new(&e.to_string()))
}

/// Elementary cycles of the unrepaired network as a JSON array of label arrays.
#[wasm_bindgen]
pub fn cycles_json(input: &str, coreq: &str) -> Result<String, JsError> {
    let cycles = list_cycles(input, coreq_mode(coreq)?).map_err(|e| JsError::new(&e))?;
    serde_json::to_string(&cycles).map_err(|e| JsError::new(&e.to_string()))
}

/// Graphviz source with roles and out-degree node sizing.
#[wasm_bindgen]
pub fn dot(input: &str, coreq: &str, enforce: bool, top: usize) -> Result<String, JsError> {
    let options = DemoOptions {
        coreq: coreq_mode(coreq)?,
        enforce,
        top,
    };
    dot_for(input, options).map_err(|e| JsError::new(&e))
}

/// The bundled two-department sample catalogue.
#[wasm_bindgen]
pub fn sample_catalog() -> String {
    cpn_core::fixtures::TWO_DEPARTMENTS.to_string()
}
