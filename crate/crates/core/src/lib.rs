//! Curriculum prerequisite networks.
//!
//! Parse a course catalogue, turn its prerequisite, corequisite and
//! cross-listing bindings into a weighted directed graph, check and repair
//! its acyclicity, and measure it: degree family, components, betweenness,
//! path lengths, course roles. Results export as GraphML, DOT and a JSON
//! report.
//!
//! ```
//! use cpn_core::{builder, metrics, parser};
//!
//! let parsed = parser::parse_catalog_text(
//!     "CHEM 100 General Chemistry\nCHEM 200 Organic Chemistry\n  Prerequisites: CHEM 100\n",
//! )
//! .unwrap();
//! let (cpn, _) = builder::build_cpn(&parsed.catalog, &builder::BuildPolicy::default()).unwrap();
//! assert_eq!(metrics::summarize(&cpn).full.arcs, 1);
//! ```

pub mod builder;
pub mod catalog;
pub mod error;
pub mod export;
pub mod metrics;
pub mod parser;
pub mod roles;

/// Bundled example catalogues in the plain-text format.
pub mod fixtures {
    /// The small two-department catalogue used throughout the docs and tests:
    /// 11 records, one cross-listed pair, one isolated course.
    pub const TWO_DEPARTMENTS: &str = include_str!("../fixtures/two_departments.txt");
    /// `TWO_DEPARTMENTS` plus two bindings that close the cycle BIOL 100 → CHEM 100 → BIOL 110 → BIOL 100.
    pub const TWO_DEPARTMENTS_CYCLE: &str = include_str!("../fixtures/two_departments_cycle.txt");
    /// Two lecture/lab pairs with mutual hard corequisites.
    pub const LECTURE_LAB: &str = include_str!("../fixtures/lecture_lab.txt");
}
