//! Catalogue readers and writers: a plain-text format and a JSON interchange
//! document.

mod clause;
mod structured;
mod text;

pub use clause::parse_clause;
pub use structured::{parse_catalog_structured, serialize_catalog_structured};
pub use text::parse_catalog_text;

use crate::catalog::{Catalog, Severity};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDiagnostic {
    /// 1-based line number in the input.
    pub line: usize,
    pub severity: Severity,
    pub message: String,
}

impl std::fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}: {}", self.line, self.severity, self.message)
    }
}

/// Department or section heading seen in a text catalogue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionLabel {
    pub line: usize,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedCatalog {
    pub catalog: Catalog,
    pub diagnostics: Vec<ParseDiagnostic>,
    pub sections: Vec<SectionLabel>,
}

impl ParsedCatalog {
    pub fn has_errors(&self) -> bool {
        self.diagnostics
            .iter()
            .any(|d| d.severity == Severity::Error)
    }
}
