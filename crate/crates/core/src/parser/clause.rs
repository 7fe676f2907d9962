//! Prerequisite clause grammar.
//!
//! ```text
//! clause      := conjunct ("and" conjunct)*
//! conjunct    := ["either"] alternative ("or" alternative)*
//! alternative := CODE title-word*
//! ```
//!
//! Title words trailing a code ("BIOL 200 Genetics") are skipped up to the
//! next connective. Commas are treated as whitespace and a trailing period is
//! dropped.

use crate::catalog::{is_number_token, is_subject_token, CourseCode, OrGroup, RequirementClause};
use crate::error::ClauseError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Connective {
    And,
    Or,
    Either,
}

fn connective(word: &str) -> Option<Connective> {
    match word.to_ascii_lowercase().as_str() {
        "and" => Some(Connective::And),
        "or" => Some(Connective::Or),
        "either" => Some(Connective::Either),
        _ => None,
    }
}

pub(crate) fn words(raw: &str) -> Vec<&str> {
    raw.split(|c: char| c.is_whitespace() || c == ',')
        .map(|w| w.trim_end_matches('.'))
        .filter(|w| !w.is_empty())
        .collect()
}

/// Returns the code starting at `pos`, if the two words there form one.
pub(crate) fn code_at(words: &[&str], pos: usize) -> Option<CourseCode> {
    let subject = words.get(pos)?;
    let number = words.get(pos + 1)?;
    if connective(subject).is_some() || !is_subject_token(subject) || !is_number_token(number) {
        return None;
    }
    CourseCode::new(subject, number).ok()
}

/// Every code mentioned in `raw`, in textual order.
pub(crate) fn scan_codes(raw: &str) -> Vec<CourseCode> {
    let words = words(raw);
    let mut codes = Vec::new();
    let mut pos = 0;
    while pos < words.len() {
        if let Some(code) = code_at(&words, pos) {
            codes.push(code);
            pos += 2;
        } else {
            pos += 1;
        }
    }
    codes
}

/// True when the text ends with a connective and so continues on the next line.
pub(crate) fn ends_with_connective(raw: &str) -> bool {
    let trimmed = raw.trim_end();
    trimmed.ends_with(',')
        || words(trimmed)
            .last()
            .is_some_and(|w| connective(w).is_some())
}

struct Cursor<'a> {
    words: Vec<&'a str>,
    pos: usize,
}

impl Cursor<'_> {
    fn peek_connective(&self) -> Option<Connective> {
        self.words.get(self.pos).and_then(|w| connective(w))
    }

    fn at_end(&self) -> bool {
        self.pos >= self.words.len()
    }

    fn alternative(&mut self) -> Result<CourseCode, ClauseError> {
        match self.peek_connective() {
            Some(Connective::Either) => return Err(ClauseError::NestedEither),
            Some(Connective::And) => return Err(ClauseError::UnbalancedConnective("and".into())),
            Some(Connective::Or) => return Err(ClauseError::UnbalancedConnective("or".into())),
            None => {}
        }
        let Some(code) = code_at(&self.words, self.pos) else {
            return Err(match self.words.get(self.pos) {
                Some(word) => ClauseError::LeadingText((*word).to_string()),
                None => ClauseError::UnbalancedConnective("or".into()),
            });
        };
        self.pos += 2;
        // title words
        while !self.at_end() && self.peek_connective().is_none() {
            if let Some(next) = code_at(&self.words, self.pos) {
                return Err(ClauseError::MissingConnective(next));
            }
            self.pos += 1;
        }
        Ok(code)
    }

    fn conjunct(&mut self) -> Result<OrGroup, ClauseError> {
        let either = self.peek_connective() == Some(Connective::Either);
        if either {
            self.pos += 1;
        }
        let mut alternatives = vec![self.alternative()?];
        while self.peek_connective() == Some(Connective::Or) {
            self.pos += 1;
            if self.at_end() {
                return Err(ClauseError::UnbalancedConnective("or".into()));
            }
            alternatives.push(self.alternative()?);
        }
        if either && alternatives.len() < 2 {
            return Err(ClauseError::UnbalancedConnective("either".into()));
        }
        Ok(OrGroup::new(alternatives)?)
    }
}

/// Parses an AND-of-ORs prerequisite clause such as
/// `"BIOL 200 and either BIOL 310 or CHEM 310"`.
pub fn parse_clause(raw: &str) -> Result<RequirementClause, ClauseError> {
    let words = words(raw);
    if !(0..words.len()).any(|i| code_at(&words, i).is_some()) {
        return Err(ClauseError::NoCodes);
    }
    let mut cursor = Cursor { words, pos: 0 };
    let mut conjuncts = Vec::new();
    loop {
        conjuncts.push(cursor.conjunct()?);
        match cursor.peek_connective() {
            None if cursor.at_end() => break,
            Some(Connective::And) => {
                cursor.pos += 1;
                if cursor.at_end() {
                    return Err(ClauseError::UnbalancedConnective("and".into()));
                }
            }
            Some(Connective::Either) => return Err(ClauseError::NestedEither),
            _ => {
                let word = cursor.words[cursor.pos].to_string();
                return Err(ClauseError::UnbalancedConnective(word));
            }
        }
    }
    Ok(RequirementClause::new(conjuncts))
}
