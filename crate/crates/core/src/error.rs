use thiserror::Error;

/// Errors raised while building or querying trees.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("a tree needs at least 2 vertices, got {0}")]
    TooSmall(usize),
    #[error("order {n} exceeds the supported maximum {max}")]
    TooLarge { n: usize, max: usize },
    #[error("vertex {0} given twice; endpoints must be distinct")]
    SameVertex(usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
}

/// Errors from the matching combinatorics.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("sign is only defined for odd distances, got {0}")]
    EvenDistance(usize),
    #[error("exhaustive search limited to {max} vertices, got {n}")]
    TooLarge { n: usize, max: usize },
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// Errors from exact and floating-point matrix routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("order {n} exceeds the eigensolver budget {max}")]
    TooLarge { n: usize, max: usize },
    #[error("tolerance {tol:e} violated: max deviation {max_deviation:e}")]
    ToleranceViolated { tol: f64, max_deviation: f64 },
}
