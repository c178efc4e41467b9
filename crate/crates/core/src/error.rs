//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator index {index} out of range ({count} declared)")]
    GeneratorIndex { index: usize, count: usize },
    #[error("zero exponent on generator `{0}`")]
    ZeroExponent(String),
    #[error("arity mismatch: map provides {provided} images but generator {index} was used")]
    ArityMismatch { provided: usize, index: usize },
    #[error("ambient rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("truncation order mismatch: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },
    #[error("nilpotency class {requested} exceeds the supported cap {cap}")]
    ClassCap { requested: usize, cap: usize },
    #[error("enumeration of size {size} exceeds cap {cap}")]
    CapExceeded { size: u128, cap: u128 },
    #[error("infinite group where a finite enumeration is required")]
    Infinite,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("not contained in the expected subgroup")]
    NotSubgroup,
    #[error("section is not abelian")]
    NotAbelian,
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("inconsistent polycyclic presentation: {0}")]
    Inconsistent(String),
    #[error("category law violated: {0}")]
    CategoryLaw(String),
    #[error("functor law violated: {0}")]
    FunctorLaw(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: 2 for bad input, 3 for resource caps.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded { .. } | Error::Infinite | Error::ClassCap { .. } => 3,
            _ => 2,
        }
    }
}
