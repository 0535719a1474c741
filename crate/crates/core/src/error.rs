use crate::color::{NotCoherent, ValidationReport};

/// Errors shared by every module of the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("structural error: {0}")]
    Structure(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("axioms of a coherent configuration violated: {0}")]
    Axiom(ValidationReport),

    #[error(transparent)]
    NotCoherent(#[from] NotCoherent),

    #[error("color map does not preserve the intersection tensor: {0}")]
    NotAlgebraic(String),

    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),

    #[error("search budget exhausted after {nodes} nodes")]
    Budget { nodes: u64 },

    #[error("consistency check failed: {0}")]
    Check(String),
}

pub type Result<T> = std::result::Result<T, Error>;
