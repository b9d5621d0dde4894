use thiserror::Error;

/// Errors from [`crate::mrp::parse_inequality`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    /// Lexical or grammatical error; `pos` is a byte offset into the input.
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    /// The input parses as an LE-inequality but is not a modal reduction
    /// principle. This is the gate that rejects e.g. `dia (p or q) <= dia (p and q)`.
    #[error("not a modal reduction principle: {reason}")]
    NotAnMrp { reason: String },
}

/// Errors from chain-level operations (adjoints, chain-to-term conversion).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("chain does not match flavor {0}")]
    ShapeMismatch(String),
    #[error("not an inductive modal reduction principle")]
    NotInductiveInput,
    #[error("decomposition has no shape-{0} reading")]
    ShapeUnavailable(char),
}

/// Sort and symbol errors when building or evaluating relation-algebra terms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("sort mismatch: cannot compose {0} ; {1}")]
    SortMismatch(String, String),
    #[error("I-composition requires two terms of equal sort AX or XA, got {0} and {1}")]
    ICompSort(String, String),
    #[error("unknown relation symbol {0}")]
    UnknownSymbol(String),
}

/// Errors from the `lift` transform between `KRel` and `PRel` inequalities.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error("term outside the liftable image: {0}")]
    NotLiftable(String),
}

/// Errors from frame-level evaluation and the validity oracles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unknown relation symbol {0}")]
    UnknownSymbol(String),
    #[error("sort mismatch: {0}")]
    SortMismatch(String),
    #[error("structure too large for brute-force enumeration: {0}")]
    TooLarge(String),
    #[error("relation is not I-compatible: {0}")]
    NotCompatible(String),
}

/// Errors from Heyting algebra construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("not a lattice: {0}")]
    NotALattice(String),
    #[error("not distributive: meet/join fail distributivity at ({0}, {1}, {2})")]
    NotDistributive(String, String, String),
    #[error("unknown builtin algebra name {0:?}")]
    UnknownName(String),
    #[error("bad algebra description: {0}")]
    BadDescription(String),
}
