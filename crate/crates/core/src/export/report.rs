use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use crate::builder::{BuildDiagnostics, Cpn, NodeId};
use crate::metrics::{ComponentSet, ScopeSummary, Spearman, SummaryReport};
use crate::roles::TableRow;

/// Inputs for one report, all from the same analysis run.
pub struct ReportInput<'a> {
    pub cpn: &'a Cpn,
    pub summary: &'a SummaryReport,
    pub components: &'a ComponentSet,
    pub top_out_degree: &'a [TableRow],
    pub top_betweenness: &'a [TableRow],
    pub diagnostics: &'a BuildDiagnostics,
    /// Weighted degree vs. betweenness over the largest component.
    pub correlation: Option<&'a Spearman>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HistogramBin {
    pub size: usize,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RemovedArc {
    pub source: String,
    pub target: String,
    pub weight: f64,
    pub provenance: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDiagnostics {
    pub merged_groups: Vec<String>,
    pub dangling_codes: Vec<String>,
    pub stub_nodes: Vec<String>,
    pub self_loops: Vec<[String; 2]>,
    pub removed_arcs: Vec<RemovedArc>,
    pub unresolved_cycles: Vec<Vec<String>>,
    pub cycle_limit_hit: bool,
}

/// Structured report. Field names are part of the output format.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub summary: SummaryReport,
    pub components: Vec<usize>,
    pub component_histogram: Vec<HistogramBin>,
    pub top_out_degree: Vec<TableRow>,
    pub top_betweenness: Vec<TableRow>,
    pub correlation: Option<Spearman>,
    pub diagnostics: ReportDiagnostics,
}

impl Report {
    pub fn new(input: &ReportInput<'_>) -> Self {
        let cpn = input.cpn;
        let labels = |ids: &[NodeId]| -> Vec<String> {
            ids.iter().map(|&v| cpn.label(v).to_string()).collect()
        };
        let diag = input.diagnostics;

        let sizes = input.components.sizes();
        let mut bins: BTreeMap<usize, usize> = BTreeMap::new();
        for &size in &sizes {
            *bins.entry(size).or_default() += 1;
        }

        Self {
            summary: input.summary.clone(),
            components: sizes,
            component_histogram: bins
                .into_iter()
                .rev()
                .map(|(size, count)| HistogramBin { size, count })
                .collect(),
            top_out_degree: input.top_out_degree.to_vec(),
            top_betweenness: input.top_betweenness.to_vec(),
            correlation: input.correlation.copied(),
            diagnostics: ReportDiagnostics {
                merged_groups: diag
                    .merged_groups
                    .iter()
                    .map(|g| {
                        g.iter()
                            .map(ToString::to_string)
                            .collect::<Vec<_>>()
                            .join("/")
                    })
                    .collect(),
                dangling_codes: diag
                    .dangling_codes
                    .iter()
                    .map(ToString::to_string)
                    .collect(),
                stub_nodes: labels(&diag.stub_nodes),
                self_loops: diag
                    .self_loops
                    .iter()
                    .map(|(a, b)| [a.to_string(), b.to_string()])
                    .collect(),
                removed_arcs: diag
                    .removed_arcs
                    .iter()
                    .map(|a| RemovedArc {
                        source: cpn.label(a.source).to_string(),
                        target: cpn.label(a.target).to_string(),
                        weight: a.weight,
                        provenance: a.provenance.as_str(),
                    })
                    .collect(),
                unresolved_cycles: diag.unresolved_cycles.iter().map(|c| labels(c)).collect(),
                cycle_limit_hit: diag.cycle_limit_hit,
            },
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    /// Plain-text rendering: the two-column metrics table, then components,
    /// league tables and diagnostics.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let full = &self.summary.full;
        let lcc = &self.summary.largest_component;
        writeln!(
            out,
            "{:<30} {:>12} {:>30}",
            "Metrics", "Full CPN", "Largest connected component"
        )
        .unwrap();
        let mut row =
            |name: &str, f: &dyn Fn(&ScopeSummary) -> Option<String>, full_scope: bool| {
                let left = if full_scope { f(full) } else { None };
                writeln!(
                    out,
                    "{:<30} {:>12} {:>30}",
                    name,
                    left.unwrap_or_else(|| "--".into()),
                    f(lcc).unwrap_or_else(|| "--".into())
                )
                .unwrap();
            };
        row("nodes", &|s| Some(s.nodes.to_string()), true);
        row("arcs", &|s| Some(s.arcs.to_string()), true);
        row("density", &|s| Some(format!("{:.5}", s.density)), true);
        row("components", &|s| Some(s.components.to_string()), true);
        row("degree", &|s| Some(format!("{:.2}", s.mean_degree)), true);
        row(
            "in-degree",
            &|s| Some(format!("{:.2}", s.mean_in_degree)),
            true,
        );
        row(
            "out-degree",
            &|s| Some(format!("{:.2}", s.mean_out_degree)),
            true,
        );
        row(
            "weighted degree",
            &|s| Some(format!("{:.2}", s.mean_weighted_degree)),
            true,
        );
        row(
            "weighted in-degree",
            &|s| Some(format!("{:.2}", s.mean_weighted_in_degree)),
            true,
        );
        row(
            "weighted out-degree",
            &|s| Some(format!("{:.2}", s.mean_weighted_out_degree)),
            true,
        );
        row("diameter", &|s| s.diameter.map(|d| d.to_string()), false);
        row(
            "characteristic path length",
            &|s| s.characteristic_path_length.map(|c| format!("{c:.2}")),
            false,
        );
        row(
            "betweenness centrality",
            &|s| s.mean_betweenness.map(|b| format!("{b:.6}")),
            false,
        );

        let sizes: Vec<String> = self.components.iter().map(ToString::to_string).collect();
        writeln!(out, "\ncomponents: [{}]", sizes.join(", ")).unwrap();

        let mut table = |title: &str, rows: &[TableRow], precision: usize| {
            writeln!(out, "\n{title}").unwrap();
            if rows.is_empty() {
                writeln!(out, "  (none)").unwrap();
            }
            for (rank, r) in rows.iter().enumerate() {
                writeln!(
                    out,
                    "  {:>3}. {:<24} {:<36} {:.*}",
                    rank + 1,
                    r.label,
                    r.title,
                    precision,
                    r.value
                )
                .unwrap();
            }
        };
        table(
            "top weighted out-degree (entire graph)",
            &self.top_out_degree,
            1,
        );
        table(
            "top betweenness (largest component)",
            &self.top_betweenness,
            6,
        );

        if let Some(c) = &self.correlation {
            writeln!(
                out,
                "\nweighted degree vs betweenness (largest component): rho = {:.2}, p = {:.4}, n = {}",
                c.rho, c.p, c.n
            )
            .unwrap();
        }

        let d = &self.diagnostics;
        writeln!(out, "\ndiagnostics").unwrap();
        writeln!(out, "  merged cross-listings: {}", d.merged_groups.len()).unwrap();
        for g in &d.merged_groups {
            writeln!(out, "    {g}").unwrap();
        }
        writeln!(out, "  dangling codes: {}", d.dangling_codes.join(", ")).unwrap();
        writeln!(out, "  removed arcs: {}", d.removed_arcs.len()).unwrap();
        for a in &d.removed_arcs {
            writeln!(out, "    {} -> {} ({})", a.source, a.target, a.provenance).unwrap();
        }
        writeln!(out, "  unresolved cycles: {}", d.unresolved_cycles.len()).unwrap();
        for c in &d.unresolved_cycles {
            writeln!(out, "    ({})", c.join(", ")).unwrap();
        }
        if d.cycle_limit_hit {
            writeln!(out, "    (cycle enumeration stopped at its cap)").unwrap();
        }
        out
    }
}

/// Structured (JSON) and plain-text renderings of one report.
pub fn export_report(input: &ReportInput<'_>) -> (String, String) {
    let report = Report::new(input);
    (report.to_json(), report.to_text())
}
