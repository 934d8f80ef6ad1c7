use thiserror::Error;

use crate::shapes::Cell;

/// Every failure the library can report. Each variant maps to a distinct
/// precondition so callers can match on it instead of parsing messages.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parts are not weakly decreasing: {0:?}")]
    NotWeaklyDecreasing(Vec<usize>),

    #[error("inner partition {inner} is not contained in outer partition {outer}")]
    InnerNotContained { outer: String, inner: String },

    #[error("malformed shape syntax: {0}")]
    MalformedSyntax(String),

    #[error("ambient dimension d={d} is smaller than the number of rows {rows}")]
    DTooSmall { d: usize, rows: usize },

    #[error("cell {0} is not a cell of the diagram")]
    CellOutsideDiagram(Cell),

    #[error("cell {0} is not a cell of the skew shape")]
    CellOutsideShape(Cell),

    #[error("the two cells must be distinct, got {0} twice")]
    EqualCells(Cell),

    #[error("{0} did not produce an integer; this indicates an internal inconsistency")]
    NonIntegerResult(&'static str),

    #[error("partition has {len} rows but only {d} variables were supplied")]
    MuTooLong { len: usize, d: usize },

    #[error("evaluation point must be positive and weakly decreasing")]
    BadEvaluationPoint,

    #[error("invalid interval decomposition: {0}")]
    BadIntervals(String),

    #[error("poset has {0} elements; at least two are required")]
    TooSmall(usize),

    #[error("the shape must contain the cell (1,2)")]
    SingleColumnOrRow,

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("row {0} has no cells, so the walk never steps in that direction")]
    ZeroRowDifference(usize),

    #[error("partitions must satisfy mu <= gamma <= lambda")]
    ContainmentViolated,

    #[error("unknown suite '{0}'")]
    UnknownSuite(String),

    #[error("bad parameter: {0}")]
    BadParams(String),

    #[error("unknown family '{0}'")]
    UnknownFamily(String),

    #[error("the shape is too large for brute-force enumeration ({0} cells)")]
    TooLarge(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
