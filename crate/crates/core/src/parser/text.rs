//! Line-oriented plain-text catalogue format.
//!
//! ```text
//! Biology                              <- section label
//! BIOL 320 Cell Biology                <- course heading: CODE Title
//!   Prerequisites: BIOL 200 and either <- attribute line
//!   BIOL 310 or CHEM 310               <- continuation (previous line ended on a connective)
//!   Corequisites: coregistration in BIOL 321
//!   Cross-listings: CHEM 320
//! # comment
//! ```

use std::collections::BTreeSet;

use super::clause::{code_at, ends_with_connective, parse_clause, scan_codes, words};
use super::{ParseDiagnostic, ParsedCatalog, SectionLabel};
use crate::catalog::{Catalog, CoreqDecl, CoreqMode, CourseCode, CourseRecord, Severity};
use crate::error::{ClauseError, ParseError, ParseErrorKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Attribute {
    Prerequisites,
    Corequisites,
    CrossListings,
}

impl Attribute {
    fn name(self) -> &'static str {
        match self {
            Attribute::Prerequisites => "Prerequisites:",
            Attribute::Corequisites => "Corequisites:",
            Attribute::CrossListings => "Cross-listings:",
        }
    }
}

const ATTRIBUTE_PREFIXES: &[(&str, Attribute)] = &[
    ("prerequisites:", Attribute::Prerequisites),
    ("prerequisite:", Attribute::Prerequisites),
    ("corequisites:", Attribute::Corequisites),
    ("corequisite:", Attribute::Corequisites),
    ("cross-listings:", Attribute::CrossListings),
    ("cross-listing:", Attribute::CrossListings),
];

fn split_attribute(line: &str) -> Option<(Attribute, &str)> {
    let lower = line.to_ascii_lowercase();
    ATTRIBUTE_PREFIXES
        .iter()
        .find(|(prefix, _)| lower.starts_with(prefix))
        .map(|(prefix, attr)| (*attr, line[prefix.len()..].trim()))
}

fn is_section_label(line: &str) -> bool {
    line.chars()
        .all(|c| c.is_alphabetic() || c == ' ' || c == '&' || c == '-' || c == '\'')
        && line.chars().any(char::is_alphabetic)
}

struct PendingAttribute {
    attribute: Attribute,
    line: usize,
    text: String,
}

#[derive(Default)]
struct TextParser {
    records: Vec<CourseRecord>,
    seen: BTreeSet<CourseCode>,
    diagnostics: Vec<ParseDiagnostic>,
    sections: Vec<SectionLabel>,
    pending: Option<PendingAttribute>,
}

impl TextParser {
    fn diag(&mut self, line: usize, severity: Severity, message: String) {
        self.diagnostics.push(ParseDiagnostic {
            line,
            severity,
            message,
        });
    }

    fn flush(&mut self) {
        let Some(pending) = self.pending.take() else {
            return;
        };
        let PendingAttribute {
            attribute,
            line,
            text,
        } = pending;
        match attribute {
            Attribute::Prerequisites => self.apply_prerequisites(line, &text),
            Attribute::Corequisites => self.apply_corequisites(line, &text),
            Attribute::CrossListings => self.apply_cross_listings(line, &text),
        }
    }

    fn current(&mut self) -> &mut CourseRecord {
        self.records
            .last_mut()
            .expect("attribute lines follow a heading")
    }

    fn apply_prerequisites(&mut self, line: usize, text: &str) {
        for segment in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let segment = segment.trim_end_matches('.').trim();
            match parse_clause(segment) {
                Ok(clause) => self
                    .current()
                    .prerequisites
                    .conjuncts
                    .extend(clause.conjuncts),
                Err(ClauseError::NoCodes) => {
                    self.current().soft_rules.push(segment.to_string());
                    self.diag(
                        line,
                        Severity::Warning,
                        format!("`{segment}` names no course; recorded as a soft-wired rule"),
                    );
                }
                Err(err) => {
                    self.current().soft_rules.push(segment.to_string());
                    self.diag(
                        line,
                        Severity::Error,
                        format!("cannot parse prerequisite `{segment}`: {err}; kept as text"),
                    );
                }
            }
        }
    }

    fn apply_corequisites(&mut self, line: usize, text: &str) {
        for segment in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let lower = segment.to_ascii_lowercase();
            let mode = if lower.contains("credit or") {
                CoreqMode::Soft
            } else {
                CoreqMode::Hard
            };
            let codes = scan_codes(segment);
            if codes.is_empty() {
                let segment = segment.trim_end_matches('.').to_string();
                self.diag(
                    line,
                    Severity::Warning,
                    format!(
                        "corequisite `{segment}` names no course; recorded as a soft-wired rule"
                    ),
                );
                self.current().soft_rules.push(segment);
                continue;
            }
            for target in codes {
                let record = self.current();
                if record.corequisites.iter().any(|c| c.target == target) {
                    continue;
                }
                record.corequisites.push(CoreqDecl { target, mode });
            }
        }
    }

    fn apply_cross_listings(&mut self, line: usize, text: &str) {
        let codes = scan_codes(text);
        if codes.is_empty() {
            self.diag(
                line,
                Severity::Warning,
                format!("cross-listing `{text}` names no course"),
            );
        }
        for code in codes {
            let record = self.current();
            if !record.cross_listings.contains(&code) {
                record.cross_listings.push(code);
            }
        }
    }

    fn line(&mut self, number: usize, raw: &str) -> Result<(), ParseError> {
        let line = raw.trim();
        if line.is_empty() {
            self.flush();
            return Ok(());
        }
        if line.starts_with('#') {
            return Ok(());
        }

        let attribute = split_attribute(line);
        if let (Some(pending), None) = (&mut self.pending, attribute) {
            if ends_with_connective(&pending.text) {
                pending.text.push(' ');
                pending.text.push_str(line);
                return Ok(());
            }
        }
        self.flush();

        if let Some((attribute, rest)) = attribute {
            if self.records.is_empty() {
                return Err(ParseError {
                    line: number,
                    kind: ParseErrorKind::AttributeBeforeHeading(attribute.name().to_string()),
                });
            }
            self.pending = Some(PendingAttribute {
                attribute,
                line: number,
                text: rest.to_string(),
            });
            return Ok(());
        }

        let tokens = words(line);
        if let Some(code) = code_at(&tokens, 0) {
            if !self.seen.insert(code.clone()) {
                return Err(ParseError {
                    line: number,
                    kind: ParseErrorKind::DuplicateCode(code),
                });
            }
            let title = line
                .split_whitespace()
                .skip(2)
                .collect::<Vec<_>>()
                .join(" ");
            if title.is_empty() {
                self.diag(number, Severity::Warning, format!("{code} has no title"));
            }
            self.records.push(CourseRecord::new(code, title));
            return Ok(());
        }

        if is_section_label(line) {
            self.sections.push(SectionLabel {
                line: number,
                label: line.to_string(),
            });
        } else {
            self.diag(
                number,
                Severity::Warning,
                format!("unrecognized line skipped: `{line}`"),
            );
        }
        Ok(())
    }
}

/// Parses the plain-text catalogue format.
///
/// Fails only when an attribute line precedes every course heading or a course
/// code is declared twice; everything else is reported as a diagnostic.
pub fn parse_catalog_text(text: &str) -> Result<ParsedCatalog, ParseError> {
    let mut parser = TextParser::default();
    for (index, raw) in text.lines().enumerate() {
        parser.line(index + 1, raw)?;
    }
    parser.flush();
    Ok(ParsedCatalog {
        catalog: Catalog::new(parser.records, ""),
        diagnostics: parser.diagnostics,
        sections: parser.sections,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::ParseErrorKind;

    #[test]
    fn empty_input() {
        let parsed = parse_catalog_text("").unwrap();
        assert!(parsed.catalog.is_empty());
        assert!(parsed.diagnostics.is_empty());
    }

    #[test]
    fn single_heading() {
        let parsed = parse_catalog_text("BIOL 100 Non-majors Biology").unwrap();
        assert_eq!(parsed.catalog.len(), 1);
        let record = &parsed.catalog.records[0];
        assert_eq!(record.title, "Non-majors Biology");
        assert!(record.prerequisites.is_empty());
        assert!(record.corequisites.is_empty());
        assert!(parsed.diagnostics.is_empty());
    }

    #[test]
    fn attribute_before_heading_is_fatal() {
        let err = parse_catalog_text("Biology\n  Prerequisites: CHEM 100\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(matches!(
            err.kind,
            ParseErrorKind::AttributeBeforeHeading(_)
        ));
    }

    #[test]
    fn duplicate_heading_is_fatal() {
        let err = parse_catalog_text("A 1 One\nA 1 Again\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(matches!(err.kind, ParseErrorKind::DuplicateCode(_)));
    }

    #[test]
    fn soft_rules_and_coreq_modes() {
        let text = "\
CHEM 101 General Chemistry Lab
  Prerequisites: Junior standing; CHEM 050
  Corequisites: coregistration in CHEM 100
CHEM 103 Honors Lab
  Corequisites: credit or coregistration in CHEM 102
CHEM 105 Lab
  Corequisites: CHEM 104
";
        let parsed = parse_catalog_text(text).unwrap();
        let records = &parsed.catalog.records;
        assert_eq!(records[0].soft_rules, vec!["Junior standing"]);
        assert_eq!(records[0].prerequisites.codes().count(), 1);
        assert_eq!(records[0].corequisites[0].mode, CoreqMode::Hard);
        assert_eq!(records[1].corequisites[0].mode, CoreqMode::Soft);
        assert_eq!(records[2].corequisites[0].mode, CoreqMode::Hard);
        assert_eq!(parsed.diagnostics.len(), 1);
        assert_eq!(parsed.diagnostics[0].severity, Severity::Warning);
        assert_eq!(parsed.diagnostics[0].line, 2);
    }

    #[test]
    fn unparseable_clause_is_an_error_diagnostic() {
        let parsed = parse_catalog_text("A 1 One\n Prerequisites: B 2 C 3\n").unwrap();
        assert_eq!(parsed.diagnostics.len(), 1);
        assert_eq!(parsed.diagnostics[0].severity, Severity::Error);
        assert_eq!(parsed.catalog.records[0].soft_rules, vec!["B 2 C 3"]);
    }

    #[test]
    fn junk_lines_warn() {
        let parsed = parse_catalog_text("A 1 One\n*** 42 ***\n").unwrap();
        assert_eq!(parsed.diagnostics.len(), 1);
        assert_eq!(parsed.diagnostics[0].line, 2);
    }
}
