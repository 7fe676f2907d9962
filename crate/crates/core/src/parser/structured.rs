//! JSON interchange document:
//!
//! ```json
//! {
//!   "source_label": "2009-2010",
//!   "records": [
//!     {
//!       "code": "BIOL 320",
//!       "title": "Cell Biology",
//!       "prerequisites": [["BIOL 200"], ["BIOL 310", "CHEM 310"]],
//!       "corequisites": [{"target": "BIOL 321", "mode": "hard"}],
//!       "cross_listings": [],
//!       "soft_rules": []
//!     }
//!   ]
//! }
//! ```
//!
//! `records` and each record's `code` are required; every other field
//! defaults to empty.

use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::{Map, Value};

use super::{ParseDiagnostic, ParsedCatalog};
use crate::catalog::{
    normalize_code, Catalog, CoreqDecl, CoreqMode, CourseCode, CourseRecord, OrGroup,
    RequirementClause,
};
use crate::error::SchemaError;

const RECORD_FIELDS: &[&str] = &[
    "code",
    "title",
    "prerequisites",
    "corequisites",
    "cross_listings",
    "soft_rules",
];

struct RecordReader<'a> {
    index: usize,
    fields: &'a Map<String, Value>,
}

impl RecordReader<'_> {
    fn fail(&self, field: &'static str, message: impl Into<String>) -> SchemaError {
        SchemaError::Field {
            record: self.index,
            field,
            message: message.into(),
        }
    }

    fn code(&self, field: &'static str, value: &Value) -> Result<CourseCode, SchemaError> {
        let raw = value
            .as_str()
            .ok_or_else(|| self.fail(field, format!("expected a code string, found {value}")))?;
        normalize_code(raw).map_err(|e| self.fail(field, e.to_string()))
    }

    fn array(&self, field: &'static str) -> Result<&[Value], SchemaError> {
        match self.fields.get(field) {
            None | Some(Value::Null) => Ok(&[]),
            Some(Value::Array(items)) => Ok(items),
            Some(other) => Err(self.fail(field, format!("expected an array, found {other}"))),
        }
    }

    fn read(&self) -> Result<CourseRecord, SchemaError> {
        if let Some(unknown) = self
            .fields
            .keys()
            .find(|k| !RECORD_FIELDS.contains(&k.as_str()))
        {
            return Err(self.fail("code", format!("unknown field `{unknown}`")));
        }

        let code = match self.fields.get("code") {
            None | Some(Value::Null) => return Err(self.fail("code", "missing required field")),
            Some(value) => self.code("code", value)?,
        };
        let title = match self.fields.get("title") {
            None | Some(Value::Null) => String::new(),
            Some(Value::String(s)) => s.clone(),
            Some(other) => {
                return Err(self.fail("title", format!("expected a string, found {other}")))
            }
        };

        let mut conjuncts = Vec::new();
        for group in self.array("prerequisites")? {
            let Value::Array(alternatives) = group else {
                return Err(self.fail(
                    "prerequisites",
                    format!("expected a list of codes, found {group}"),
                ));
            };
            let alternatives = alternatives
                .iter()
                .map(|v| self.code("prerequisites", v))
                .collect::<Result<Vec<_>, _>>()?;
            conjuncts.push(
                OrGroup::new(alternatives)
                    .map_err(|e| self.fail("prerequisites", e.to_string()))?,
            );
        }

        let mut corequisites = Vec::new();
        for decl in self.array("corequisites")? {
            let Value::Object(decl) = decl else {
                return Err(self.fail("corequisites", format!("expected an object, found {decl}")));
            };
            let target = decl
                .get("target")
                .ok_or_else(|| self.fail("corequisites", "missing `target`"))?;
            let target = self.code("corequisites", target)?;
            let mode = match decl.get("mode").and_then(Value::as_str) {
                Some("hard") => CoreqMode::Hard,
                Some("soft") => CoreqMode::Soft,
                _ => return Err(self.fail("corequisites", "`mode` must be \"hard\" or \"soft\"")),
            };
            if let Some(extra) = decl.keys().find(|k| *k != "target" && *k != "mode") {
                return Err(self.fail("corequisites", format!("unknown field `{extra}`")));
            }
            corequisites.push(CoreqDecl { target, mode });
        }

        let cross_listings = self
            .array("cross_listings")?
            .iter()
            .map(|v| self.code("cross_listings", v))
            .collect::<Result<Vec<_>, _>>()?;

        let soft_rules = self
            .array("soft_rules")?
            .iter()
            .map(|v| {
                v.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| self.fail("soft_rules", format!("expected a string, found {v}")))
            })
            .collect::<Result<Vec<_>, _>>()?;

        Ok(CourseRecord {
            code,
            title,
            prerequisites: RequirementClause::new(conjuncts),
            corequisites,
            cross_listings,
            soft_rules,
        })
    }
}

/// Reads the JSON interchange document.
pub fn parse_catalog_structured(bytes: &[u8]) -> Result<ParsedCatalog, SchemaError> {
    let document: Value =
        serde_json::from_slice(bytes).map_err(|e| SchemaError::Syntax(e.to_string()))?;
    let Value::Object(document) = document else {
        return Err(SchemaError::Syntax("top level must be an object".into()));
    };
    if let Some(unknown) = document
        .keys()
        .find(|k| *k != "source_label" && *k != "records")
    {
        return Err(SchemaError::Syntax(format!(
            "unknown top-level field `{unknown}`"
        )));
    }
    let source_label = match document.get("source_label") {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(other) => {
            return Err(SchemaError::Syntax(format!(
                "`source_label` must be a string, found {other}"
            )))
        }
    };
    let Some(Value::Array(raw_records)) = document.get("records") else {
        return Err(SchemaError::Syntax(
            "`records` must be present and be an array".into(),
        ));
    };

    let mut records = Vec::with_capacity(raw_records.len());
    let mut seen = BTreeSet::new();
    for (index, raw) in raw_records.iter().enumerate() {
        let Value::Object(fields) = raw else {
            return Err(SchemaError::Field {
                record: index,
                field: "code",
                message: format!("record must be an object, found {raw}"),
            });
        };
        let record = RecordReader { index, fields }.read()?;
        if !seen.insert(record.code.clone()) {
            return Err(SchemaError::Field {
                record: index,
                field: "code",
                message: format!("duplicate course code {}", record.code),
            });
        }
        records.push(record);
    }

    Ok(ParsedCatalog {
        catalog: Catalog::new(records, source_label),
        diagnostics: Vec::<ParseDiagnostic>::new(),
        sections: Vec::new(),
    })
}

#[derive(Serialize)]
struct DocumentOut<'a> {
    source_label: &'a str,
    records: Vec<RecordOut<'a>>,
}

#[derive(Serialize)]
struct RecordOut<'a> {
    code: String,
    title: &'a str,
    prerequisites: Vec<Vec<String>>,
    corequisites: Vec<CoreqOut>,
    cross_listings: Vec<String>,
    soft_rules: &'a [String],
}

#[derive(Serialize)]
struct CoreqOut {
    target: String,
    mode: &'static str,
}

/// Writes the JSON interchange document (pretty-printed, trailing newline).
pub fn serialize_catalog_structured(catalog: &Catalog) -> Vec<u8> {
    let document = DocumentOut {
        source_label: &catalog.source_label,
        records: catalog
            .records
            .iter()
            .map(|r| RecordOut {
                code: r.code.to_string(),
                title: &r.title,
                prerequisites: r
                    .prerequisites
                    .conjuncts
                    .iter()
                    .map(|g| g.alternatives().iter().map(ToString::to_string).collect())
                    .collect(),
                corequisites: r
                    .corequisites
                    .iter()
                    .map(|c| CoreqOut {
                        target: c.target.to_string(),
                        mode: c.mode.as_str(),
                    })
                    .collect(),
                cross_listings: r.cross_listings.iter().map(ToString::to_string).collect(),
                soft_rules: &r.soft_rules,
            })
            .collect(),
    };
    let mut bytes = serde_json::to_vec_pretty(&document).expect("catalogue serializes");
    bytes.push(b'\n');
    bytes
}
