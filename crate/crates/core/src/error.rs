use thiserror::Error;

use crate::table::Element;

/// Violations of the inverse semigroup axioms found while validating a table.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("table is empty")]
    Empty,
    #[error("row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("entry ({row}, {col}) = {value} is not an element id below {n}")]
    OutOfRange { row: usize, col: usize, value: usize, n: usize },
    #[error("not associative: ({0}·{1})·{2} ≠ {0}·({1}·{2})")]
    NotAssociative(Element, Element, Element),
    #[error("element {0} has no inverse")]
    NotRegular(Element),
    #[error("element {0} has two inverses: {1} and {2}")]
    InverseNotUnique(Element, Element, Element),
    #[error("idempotents {0} and {1} do not commute")]
    IdempotentsDontCommute(Element, Element),
    #[error("equivalent forms of {0} ≤ {1} disagree")]
    EquivalentFormsDisagree(Element, Element),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartialMapError {
    #[error("partial maps act on {left} and {right} points")]
    MismatchedPointSets { left: usize, right: usize },
    #[error("points {first} and {second} both map to {image}")]
    NotInjective { first: usize, second: usize, image: usize },
    #[error("point {point} is outside a set of {m} points")]
    PointOutOfRange { point: usize, m: usize },
    #[error("{what}: {requested} exceeds the cap of {limit}")]
    SizeCapExceeded { what: &'static str, requested: usize, limit: usize },
    #[error("closure exceeded {0} elements")]
    ExplosionCap(usize),
    #[error("no generators given")]
    EmptyGenerators,
    #[error("family is not closed under composition and inversion")]
    NotClosed,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FilterError {
    #[error("{0} is the zero, whose up-set is the whole semigroup")]
    ZeroHasNoPrincipalFilter(Element),
    #[error("{what} needs at most {limit} elements, semigroup has {n}")]
    SizeCapExceeded { what: &'static str, n: usize, limit: usize },
    #[error("filter {0:?} contains no idempotent")]
    NotClosedInverseSubsemigroup(Vec<Element>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Filter(#[from] FilterError),
    #[error(transparent)]
    PartialMap(#[from] PartialMapError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("{0:?} is not a filter")]
    NotAFilter(Vec<Element>),
    #[error("family members {0} and {1} are not of the same magnitude")]
    NotSameMagnitude(usize, usize),
    #[error("family lists {0:?} twice")]
    DuplicateFilter(Vec<Element>),
    #[error("f({0}) is not a one-to-one partial map of the family")]
    ActionNotFunctional(Element),
    #[error("no element moves point {from} to point {to}")]
    NotTransitive { from: usize, to: usize },
    #[error("action table has {got} entries for {expected} elements")]
    ActionSizeMismatch { expected: usize, got: usize },
    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what}: {requested} exceeds the cap of {limit}")]
    SizeCapExceeded { what: &'static str, requested: usize, limit: usize },
    #[error("semigroup has {0} idempotents, not a group")]
    NotAGroup(usize),
    #[error("{0:?} is not a subgroup")]
    NotASubgroup(Vec<Element>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub reason: String,
}

impl ParseError {
    pub fn new(line: usize, reason: impl Into<String>) -> Self {
        ParseError { line, reason: reason.into() }
    }
}

/// Any failure of the toolkit, grouped the way the command line reports them.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    PartialMap(#[from] PartialMapError),
    #[error(transparent)]
    Filter(#[from] FilterError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// 2 parse, 3 validation, 4 size cap, 5 inconclusive finding.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Json(_) => 2,
            Error::PartialMap(PartialMapError::NotInjective { .. } | PartialMapError::PointOutOfRange { .. }) => 2,
            Error::Algebra(_) | Error::PartialMap(_) => {
                if self.is_size_cap() {
                    4
                } else {
                    3
                }
            }
            Error::Engine(EngineError::Inconclusive(_)) => 5,
            _ if self.is_size_cap() => 4,
            _ => 3,
        }
    }

    fn is_size_cap(&self) -> bool {
        matches!(
            self,
            Error::PartialMap(PartialMapError::SizeCapExceeded { .. } | PartialMapError::ExplosionCap(_))
                | Error::Filter(FilterError::SizeCapExceeded { .. })
                | Error::Oracle(OracleError::SizeCapExceeded { .. })
                | Error::Engine(
                    EngineError::Filter(FilterError::SizeCapExceeded { .. })
                        | EngineError::Oracle(OracleError::SizeCapExceeded { .. })
                        | EngineError::PartialMap(
                            PartialMapError::SizeCapExceeded { .. } | PartialMapError::ExplosionCap(_)
                        )
                )
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
