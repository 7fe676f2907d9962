use thiserror::Error;

use crate::builder::NodeId;
use crate::catalog::CourseCode;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("malformed course code `{0}`")]
    Malformed(String),
    #[error("an OR-group needs at least one alternative")]
    EmptyGroup,
    #[error("{0} appears twice in one OR-group")]
    DuplicateAlternative(CourseCode),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClauseError {
    #[error("clause contains no course codes")]
    NoCodes,
    #[error("nested `either` inside an alternative list")]
    NestedEither,
    #[error("unbalanced connective `{0}`")]
    UnbalancedConnective(String),
    #[error("missing connective before {0}")]
    MissingConnective(CourseCode),
    #[error("unexpected text `{0}` before first course code")]
    LeadingText(String),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// Fatal text-format error.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("`{0}` line appears before any course heading")]
    AttributeBeforeHeading(String),
    #[error("duplicate course code {0}")]
    DuplicateCode(CourseCode),
}

/// Structured-format error naming the offending record and field.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemaError {
    #[error("malformed document: {0}")]
    Syntax(String),
    #[error("record {record}: field `{field}`: {message}")]
    Field {
        record: usize,
        field: &'static str,
        message: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error(
        "cannot orient corequisite pair {first} / {second}: {reason}; designate the lab manually"
    )]
    UnresolvableCorequisite {
        first: CourseCode,
        second: CourseCode,
        reason: &'static str,
    },
    #[error("{from} refers to {code}, which has no catalogue record")]
    Dangling { from: CourseCode, code: CourseCode },
    #[error("directed corequisite mode needs at least one lab title marker")]
    NoLabMarkers,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("more than {cap} elementary cycles")]
    CycleLimitExceeded { cap: usize },
    #[error("graph is not a DAG; cycle through {cycle:?}")]
    NotADag { cycle: Vec<NodeId> },
    #[error("arc endpoint {0:?} is not a node")]
    UnknownNode(NodeId),
    #[error("self-loop on {0:?}")]
    SelfLoop(NodeId),
    #[error("duplicate arc {0:?} -> {1:?}")]
    DuplicateArc(NodeId, NodeId),
    #[error("arc weight {0} outside (0, 1]")]
    BadWeight(f64),
    #[error("node ids must be 0..n in order")]
    NodeIdOrder,
    #[error("course code {0} appears in more than one node")]
    SharedCode(CourseCode),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("no ordered pair of nodes is connected by a directed path")]
    NoReachablePairs,
    #[error("sequences differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("need at least 3 observations, got {0}")]
    TooShort(usize),
    #[error("a constant sequence has no rank correlation")]
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RoleError {
    #[error("no metrics for node {0:?}")]
    MissingMetrics(NodeId),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExportError {
    #[error("export options require {0}, which was not supplied")]
    MissingData(&'static str),
}
