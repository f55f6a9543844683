use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("modulus is not irreducible of degree {degree} over GF({p})")]
    ReducibleModulus { p: u32, degree: usize },
    #[error("field GF({p}^{k}) is too large for table arithmetic")]
    FieldTooLarge { p: u32, k: u32 },
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("pencil is not nilpotent at x = {x}")]
    NotNilpotentPencil { x: u32 },
    #[error("field of order {order} is too small for a pencil of size {size}: need order > {bound}; extend the field")]
    FieldTooSmall { order: u64, size: usize, bound: u64 },
    #[error("generator count mismatch: {left} vs {right}")]
    GeneratorCountMismatch { left: usize, right: usize },
    #[error("generator {index} is not invertible")]
    SingularGenerator { index: usize },
    #[error("irreducibility test inconclusive for a module of dimension {dim}")]
    InconclusiveIrreducibility { dim: usize },
    #[error("relator {index} does not act as the identity")]
    RelatorViolation { index: usize },
    #[error("relator {index} has {len} letters, above the limit of {limit}")]
    RelatorTooLong { index: usize, len: usize, limit: usize },
    #[error("invalid root system type {0}")]
    InvalidType(String),
    #[error("outside the validity range of the abelian bound: {0}")]
    OutsideValidity(String),
    #[error("element {element} does not normalize the group: basis map {map} leaves the invariant space")]
    NotNormalizing { element: usize, map: usize },
    #[error("form is degenerate (radical of dimension {radical})")]
    DegenerateForm { radical: usize },
    #[error("no non-degenerate invariant alternating form exists")]
    NoNondegenerateForm,
    #[error("the target window is empty")]
    EmptyWindow,
    #[error("{0}")]
    Invalid(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
