use std::fmt::Write;

use super::{format_sig6, roles_text, size_value, ExportOptions, SizeBy};
use crate::builder::Cpn;
use crate::error::ExportError;
use crate::metrics::MetricsTable;
use crate::roles::RoleAssignment;

fn quote(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 2);
    out.push('"');
    for c in text.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Graphviz `digraph`; nodes are identified by their quoted labels.
pub fn export_dot(
    cpn: &Cpn,
    metrics: Option<&MetricsTable>,
    roles: Option<&RoleAssignment>,
    options: &ExportOptions,
) -> Result<String, ExportError> {
    options.check(metrics, roles)?;
    let max_size = match (metrics, options.size_by) {
        (Some(metrics), size_by) if size_by != SizeBy::None => cpn
            .node_ids()
            .map(|id| size_value(metrics, id, size_by))
            .fold(0.0f64, f64::max),
        _ => 0.0,
    };

    let mut out = String::from("digraph cpn {\n");
    for node in cpn.nodes() {
        let mut attrs = vec![format!("label={}", quote(&node.label))];
        if !node.title.is_empty() {
            attrs.push(format!("tooltip={}", quote(&node.title)));
        }
        if node.stub {
            attrs.push("style=dashed".to_string());
        }
        if let Some(roles) = roles.filter(|_| options.include_roles) {
            attrs.push(format!("roles={}", quote(&roles_text(roles, node.id))));
        }
        if let Some(metrics) = metrics.filter(|_| options.size_by != SizeBy::None) {
            let value = size_value(metrics, node.id, options.size_by);
            let scaled = if max_size > 0.0 {
                value / max_size
            } else {
                0.0
            };
            attrs.push(format!("width={}", format_sig6(0.75 + 1.5 * scaled)));
        }
        writeln!(out, "  {} [{}];", quote(&node.label), attrs.join(", ")).unwrap();
    }
    for arc in cpn.arcs() {
        let source = quote(cpn.label(arc.source));
        let target = quote(cpn.label(arc.target));
        if options.include_weights {
            let w = format_sig6(arc.weight);
            writeln!(out, "  {source} -> {target} [label=\"{w}\"];").unwrap();
        } else {
            writeln!(out, "  {source} -> {target};").unwrap();
        }
    }
    out.push_str("}\n");
    Ok(out)
}
