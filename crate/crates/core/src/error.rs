use thiserror::Error;

/// Errors raised by the algebra, graph and restriction engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("weight pairs to zero with the chosen generic vector")]
    ZeroPairing,
    #[error("polynomial is not divisible: {0}")]
    NotDivisible(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("no edge between `{0}` and `{1}`")]
    NotAnEdge(String, String),
    #[error("generic vector is not generic: {0}")]
    NotGeneric(String),
    #[error("graph is not index increasing: edge {0} -> {1}")]
    NotIndexIncreasing(String, String),
    #[error("edge {0} -> {1}: projected products are not scalar multiples")]
    NotScalarRatio(String, String),
    #[error("moment values coincide at `{0}` and `{1}` on a contributing path")]
    WellDefinednessViolation(String, String),
    #[error("no class separates the endpoints of edge {0} -> {1}")]
    NoSeparatingClass(String, String),
    #[error("no tower level separates the endpoints of edge {0} -> {1}")]
    NoSeparatingLevel(String, String),
    #[error("tower level {level} is not weight preserving on edge {src} -> {dst}")]
    WeightNotPreserved { level: usize, src: String, dst: String },
    #[error("path step {0} -> {1} is not horizontal")]
    NotHorizontal(String, String),
    #[error("invalid tower: {0}")]
    InvalidTower(String),
    #[error("no canonical class exists for `{0}`: {1}")]
    NoSolution(String, String),
    #[error("canonical class for `{0}` is not determined at `{1}`")]
    NonUniqueSolution(String, String),
    #[error("invalid orbit specification: {0}")]
    InvalidSpec(String),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
