use std::fmt::Write;

use super::{format_sig6, roles_text, size_value, ExportOptions, SizeBy};
use crate::builder::Cpn;
use crate::error::ExportError;
use crate::metrics::MetricsTable;
use crate::roles::RoleAssignment;

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn key(out: &mut String, id: &str, target: &str, kind: &str) {
    writeln!(
        out,
        r#"  <key id="{id}" for="{target}" attr.name="{id}" attr.type="{kind}"/>"#
    )
    .unwrap();
}

fn data(out: &mut String, key: &str, value: &str) {
    writeln!(out, r#"      <data key="{key}">{}</data>"#, escape(value)).unwrap();
}

/// GraphML document with one `node` per course and one directed `edge` per arc.
/// Metric attributes are written when `metrics` is given.
pub fn export_graphml(
    cpn: &Cpn,
    metrics: Option<&MetricsTable>,
    roles: Option<&RoleAssignment>,
    options: &ExportOptions,
) -> Result<String, ExportError> {
    options.check(metrics, roles)?;
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str("<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n");

    key(&mut out, "label", "node", "string");
    key(&mut out, "members", "node", "string");
    key(&mut out, "title", "node", "string");
    key(&mut out, "stub", "node", "boolean");
    if metrics.is_some() {
        for name in ["k_in", "k_out"] {
            key(&mut out, name, "node", "int");
        }
        for name in ["wk_in", "wk_out", "betweenness"] {
            key(&mut out, name, "node", "double");
        }
    }
    if options.include_roles {
        key(&mut out, "roles", "node", "string");
    }
    if options.size_by != SizeBy::None {
        key(&mut out, "size", "node", "double");
    }
    if options.include_weights {
        key(&mut out, "weight", "edge", "double");
    }
    key(&mut out, "provenance", "edge", "string");

    out.push_str("  <graph id=\"cpn\" edgedefault=\"directed\">\n");
    for node in cpn.nodes() {
        writeln!(out, r#"    <node id="n{}">"#, node.id).unwrap();
        data(&mut out, "label", &node.label);
        let members: Vec<String> = node.member_codes.iter().map(ToString::to_string).collect();
        data(&mut out, "members", &members.join(";"));
        data(&mut out, "title", &node.title);
        data(&mut out, "stub", if node.stub { "true" } else { "false" });
        if let Some(metrics) = metrics {
            let m = &metrics[&node.id];
            data(&mut out, "k_in", &m.k_in.to_string());
            data(&mut out, "k_out", &m.k_out.to_string());
            data(&mut out, "wk_in", &format_sig6(m.wk_in));
            data(&mut out, "wk_out", &format_sig6(m.wk_out));
            if let Some(b) = m.betweenness {
                data(&mut out, "betweenness", &format_sig6(b));
            }
            if options.size_by != SizeBy::None {
                data(
                    &mut out,
                    "size",
                    &format_sig6(size_value(metrics, node.id, options.size_by)),
                );
            }
        }
        if let Some(roles) = roles.filter(|_| options.include_roles) {
            data(&mut out, "roles", &roles_text(roles, node.id));
        }
        out.push_str("    </node>\n");
    }
    for (index, arc) in cpn.arcs().iter().enumerate() {
        writeln!(
            out,
            r#"    <edge id="e{index}" source="n{}" target="n{}">"#,
            arc.source, arc.target
        )
        .unwrap();
        if options.include_weights {
            data(&mut out, "weight", &format_sig6(arc.weight));
        }
        data(&mut out, "provenance", arc.provenance.as_str());
        out.push_str("    </edge>\n");
    }
    out.push_str("  </graph>\n</graphml>\n");
    Ok(out)
}
