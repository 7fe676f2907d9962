//! Catalogue domain types and referential-integrity validation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::CodeError;

/// A normalized course identifier such as `BIOL 110` or `CHEM 200L`.
///
/// The subject is uppercase ASCII letters; the number is an opaque token that
/// must start with a digit. Numbers are never interpreted numerically, so
/// ordering is lexicographic on `(subject, number)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CourseCode {
    subject: String,
    number: String,
}

impl CourseCode {
    pub fn new(subject: &str, number: &str) -> Result<Self, CodeError> {
        let subject = subject.trim().to_ascii_uppercase();
        let number = number.trim().to_ascii_uppercase();
        if subject.is_empty() || !subject.chars().all(|c| c.is_ascii_uppercase()) {
            return Err(CodeError::Malformed(format!("{subject} {number}")));
        }
        if !is_number_token(&number) {
            return Err(CodeError::Malformed(format!("{subject} {number}")));
        }
        Ok(Self { subject, number })
    }

    pub fn subject(&self) -> &str {
        &self.subject
    }

    pub fn number(&self) -> &str {
        &self.number
    }
}

impl fmt::Display for CourseCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.subject, self.number)
    }
}

impl FromStr for CourseCode {
    type Err = CodeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        normalize_code(s)
    }
}

pub(crate) fn is_subject_token(word: &str) -> bool {
    !word.is_empty() && word.chars().all(|c| c.is_ascii_alphabetic())
}

pub(crate) fn is_number_token(word: &str) -> bool {
    word.chars().next().is_some_and(|c| c.is_ascii_digit())
        && word.chars().all(|c| c.is_ascii_alphanumeric())
}

/// Parses `"<letters> <token>"` into a [`CourseCode`], uppercasing the subject
/// and collapsing whitespace.
pub fn normalize_code(raw: &str) -> Result<CourseCode, CodeError> {
    let mut words = raw.split_whitespace();
    match (words.next(), words.next(), words.next()) {
        (Some(subject), Some(number), None)
            if is_subject_token(subject) && is_number_token(number) =>
        {
            CourseCode::new(subject, number)
        }
        _ => Err(CodeError::Malformed(raw.trim().to_string())),
    }
}

/// One disjunction of a prerequisite rule: any single alternative satisfies it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrGroup {
    alternatives: Vec<CourseCode>,
}

impl OrGroup {
    pub fn new(alternatives: Vec<CourseCode>) -> Result<Self, CodeError> {
        if alternatives.is_empty() {
            return Err(CodeError::EmptyGroup);
        }
        let mut seen = BTreeSet::new();
        for code in &alternatives {
            if !seen.insert(code) {
                return Err(CodeError::DuplicateAlternative(code.clone()));
            }
        }
        Ok(Self { alternatives })
    }

    pub fn single(code: CourseCode) -> Self {
        Self {
            alternatives: vec![code],
        }
    }

    pub fn alternatives(&self) -> &[CourseCode] {
        &self.alternatives
    }

    pub fn len(&self) -> usize {
        self.alternatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alternatives.is_empty()
    }
}

/// AND of OR-groups. An empty clause means "no prerequisites".
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RequirementClause {
    pub conjuncts: Vec<OrGroup>,
}

impl RequirementClause {
    pub fn new(conjuncts: Vec<OrGroup>) -> Self {
        Self { conjuncts }
    }

    pub fn is_empty(&self) -> bool {
        self.conjuncts.is_empty()
    }

    /// All codes in textual order.
    pub fn codes(&self) -> impl Iterator<Item = &CourseCode> {
        self.conjuncts.iter().flat_map(|g| g.alternatives.iter())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoreqMode {
    /// "coregistration in X"
    Hard,
    /// "credit or coregistration in X"
    Soft,
}

impl CoreqMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CoreqMode::Hard => "hard",
            CoreqMode::Soft => "soft",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreqDecl {
    pub target: CourseCode,
    pub mode: CoreqMode,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CourseRecord {
    pub code: CourseCode,
    pub title: String,
    pub prerequisites: RequirementClause,
    pub corequisites: Vec<CoreqDecl>,
    pub cross_listings: Vec<CourseCode>,
    /// Diffuse conditions such as class standing, kept verbatim and never graphed.
    pub soft_rules: Vec<String>,
}

impl CourseRecord {
    pub fn new(code: CourseCode, title: impl Into<String>) -> Self {
        Self {
            code,
            title: title.into(),
            prerequisites: RequirementClause::default(),
            corequisites: Vec::new(),
            cross_listings: Vec::new(),
            soft_rules: Vec::new(),
        }
    }

    /// Every code this record refers to, in field order.
    pub fn referenced_codes(&self) -> impl Iterator<Item = &CourseCode> {
        self.prerequisites
            .codes()
            .chain(self.corequisites.iter().map(|c| &c.target))
            .chain(self.cross_listings.iter())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Catalog {
    pub records: Vec<CourseRecord>,
    pub source_label: String,
}

impl Catalog {
    pub fn new(records: Vec<CourseRecord>, source_label: impl Into<String>) -> Self {
        Self {
            records,
            source_label: source_label.into(),
        }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn get(&self, code: &CourseCode) -> Option<&CourseRecord> {
        self.records.iter().find(|r| &r.code == code)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Warning,
    Error,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Warning => "warning",
            Severity::Error => "error",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub severity: Severity,
    pub code: CourseCode,
    pub message: String,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}: {}", self.severity, self.code, self.message)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn has_errors(&self) -> bool {
        self.findings.iter().any(|f| f.severity == Severity::Error)
    }

    pub fn errors(&self) -> impl Iterator<Item = &Finding> {
        self.findings
            .iter()
            .filter(|f| f.severity == Severity::Error)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Finding> {
        self.findings
            .iter()
            .filter(|f| f.severity == Severity::Warning)
    }
}

/// Checks a catalogue for duplicate codes, self references and references to
/// courses that have no record. Findings are reported in record order.
pub fn validate_catalog(catalog: &Catalog) -> ValidationReport {
    let mut findings = Vec::new();

    let mut occurrences: BTreeMap<&CourseCode, usize> = BTreeMap::new();
    for record in &catalog.records {
        *occurrences.entry(&record.code).or_default() += 1;
    }
    let mut reported_duplicates = BTreeSet::new();

    for record in &catalog.records {
        let code = &record.code;
        if occurrences[code] > 1 && reported_duplicates.insert(code) {
            findings.push(Finding {
                severity: Severity::Error,
                code: code.clone(),
                message: format!("duplicate course code ({} records)", occurrences[code]),
            });
        }

        if record.prerequisites.codes().any(|c| c == code) {
            findings.push(Finding {
                severity: Severity::Error,
                code: code.clone(),
                message: "course lists itself as a prerequisite".to_string(),
            });
        }
        if record.corequisites.iter().any(|c| &c.target == code) {
            findings.push(Finding {
                severity: Severity::Error,
                code: code.clone(),
                message: "course lists itself as a corequisite".to_string(),
            });
        }
        if record.cross_listings.contains(code) {
            findings.push(Finding {
                severity: Severity::Error,
                code: code.clone(),
                message: "course is cross-listed with itself".to_string(),
            });
        }
        let mut seen = BTreeSet::new();
        for other in &record.cross_listings {
            if !seen.insert(other) {
                findings.push(Finding {
                    severity: Severity::Error,
                    code: code.clone(),
                    message: format!("cross-listing {other} appears more than once"),
                });
            }
        }

        let mut dangling = BTreeSet::new();
        let kinds = record
            .prerequisites
            .codes()
            .map(|c| ("prerequisite", c))
            .chain(
                record
                    .corequisites
                    .iter()
                    .map(|c| ("corequisite", &c.target)),
            )
            .chain(record.cross_listings.iter().map(|c| ("cross-listing", c)));
        for (kind, other) in kinds {
            if other != code && !occurrences.contains_key(other) && dangling.insert((kind, other)) {
                findings.push(Finding {
                    severity: Severity::Warning,
                    code: code.clone(),
                    message: format!("{kind} {other} has no catalogue record"),
                });
            }
        }
    }

    ValidationReport { findings }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(s: &str) -> CourseCode {
        s.parse().unwrap()
    }

    #[test]
    fn normalizes_case_and_whitespace() {
        assert_eq!(
            normalize_code("biol  110").unwrap(),
            CourseCode::new("BIOL", "110").unwrap()
        );
        assert_eq!(
            normalize_code("  CHEM 200 ").unwrap().to_string(),
            "CHEM 200"
        );
        assert_eq!(normalize_code("chem 200l").unwrap().number(), "200L");
    }

    #[test]
    fn rejects_malformed_codes() {
        assert!(normalize_code("Biology").is_err());
        assert!(normalize_code("").is_err());
        assert!(normalize_code("BIOL 110 General").is_err());
        assert!(normalize_code("B1OL 110").is_err());
        assert!(normalize_code("Course Catalog").is_err());
    }

    #[test]
    fn or_group_rejects_duplicates_and_empty() {
        assert!(OrGroup::new(vec![]).is_err());
        assert!(OrGroup::new(vec![code("A 1"), code("A 1")]).is_err());
        assert_eq!(
            OrGroup::new(vec![code("A 1"), code("B 1")]).unwrap().len(),
            2
        );
    }

    #[test]
    fn empty_catalog_is_clean() {
        assert!(validate_catalog(&Catalog::default()).is_clean());
    }

    #[test]
    fn dangling_prerequisite_is_a_warning() {
        let mut biol = CourseRecord::new(code("BIOL 110"), "General Biology");
        biol.prerequisites = RequirementClause::new(vec![OrGroup::single(code("CHEM 999"))]);
        let report = validate_catalog(&Catalog::new(vec![biol], ""));
        assert_eq!(report.findings.len(), 1);
        let finding = &report.findings[0];
        assert_eq!(finding.severity, Severity::Warning);
        assert!(finding.message.contains("CHEM 999"));
        assert!(!report.has_errors());
    }

    #[test]
    fn duplicates_and_self_references_are_errors() {
        let a = CourseRecord::new(code("A 1"), "one");
        let mut a2 = CourseRecord::new(code("A 1"), "again");
        a2.prerequisites = RequirementClause::new(vec![OrGroup::single(code("A 1"))]);
        a2.cross_listings = vec![code("A 1")];
        let report = validate_catalog(&Catalog::new(vec![a, a2], ""));
        assert_eq!(report.errors().count(), 3);
        assert_eq!(report.warnings().count(), 0);
    }
}
