//! GraphML, DOT and report writers. All output is deterministic: nodes by
//! ascending id, arcs by `(source, target)`, weights with six significant
//! digits.

mod dot;
mod graphml;
mod report;

pub use dot::export_dot;
pub use graphml::export_graphml;
pub use report::{export_report, Report, ReportInput};

use crate::error::ExportError;
use crate::metrics::MetricsTable;
use crate::roles::RoleAssignment;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SizeBy {
    #[default]
    None,
    OutDegree,
    Betweenness,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExportOptions {
    pub include_weights: bool,
    pub include_roles: bool,
    pub size_by: SizeBy,
}

impl Default for ExportOptions {
    fn default() -> Self {
        Self {
            include_weights: true,
            include_roles: false,
            size_by: SizeBy::None,
        }
    }
}

impl ExportOptions {
    pub(crate) fn check(
        &self,
        metrics: Option<&MetricsTable>,
        roles: Option<&RoleAssignment>,
    ) -> Result<(), ExportError> {
        if self.size_by != SizeBy::None && metrics.is_none() {
            return Err(ExportError::MissingData("node metrics"));
        }
        if self.include_roles && roles.is_none() {
            return Err(ExportError::MissingData("role assignment"));
        }
        Ok(())
    }
}

/// Renders `x` with exactly six significant digits (`0.5` → `0.500000`,
/// `1.0` → `1.00000`).
pub fn format_sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 {
            "0.00000".to_string()
        } else {
            x.to_string()
        };
    }
    let decimals = |v: f64| (5 - v.abs().log10().floor() as i32).max(0) as usize;
    let mut out = format!("{:.*}", decimals(x), x);
    // rounding may carry into a new leading digit (0.9999996 -> 1.000000)
    let rounded: f64 = out.parse().unwrap_or(x);
    if decimals(rounded) != decimals(x) {
        out = format!("{:.*}", decimals(rounded), rounded);
    }
    out
}

fn size_value(metrics: &MetricsTable, id: crate::builder::NodeId, size_by: SizeBy) -> f64 {
    let m = &metrics[&id];
    match size_by {
        SizeBy::None => 0.0,
        SizeBy::OutDegree => m.wk_out,
        SizeBy::Betweenness => m.betweenness.unwrap_or(0.0),
    }
}

fn roles_text(roles: &RoleAssignment, id: crate::builder::NodeId) -> String {
    roles
        .get(&id)
        .map(|set| set.iter().map(|r| r.as_str()).collect::<Vec<_>>().join(" "))
        .unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(format_sig6(0.5), "0.500000");
        assert_eq!(format_sig6(1.0), "1.00000");
        assert_eq!(format_sig6(1.0 / 3.0), "0.333333");
        assert_eq!(format_sig6(0.0625), "0.0625000");
        assert_eq!(format_sig6(29.0), "29.0000");
        assert_eq!(format_sig6(0.9999996), "1.00000");
        assert_eq!(format_sig6(0.0), "0.00000");
    }
}
