use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse composition {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("composition {0} is not weakly increasing")]
    NotWeaklyIncreasing(String),

    #[error("column {column} has {found} cells, content requires {expected}")]
    ColumnCount {
        column: usize,
        found: usize,
        expected: usize,
    },

    #[error("diagram is not a Kohnert diagram")]
    NotKohnertDiagram,

    #[error("cell in row {row} exceeds the length bound {bound}")]
    RowOutOfRange { row: usize, bound: usize },

    #[error("tableau is not quasi-Yamanouchi")]
    NotQuasiYamanouchi,

    #[error("tableau is not a quasi-Kohnert tableau")]
    NotQuasiKohnert,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
