use std::fmt;

use thiserror::Error;

/// Order axiom that a candidate relation failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    Reflexivity,
    Antisymmetry,
    Transitivity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Axiom::Reflexivity => "reflexivity",
            Axiom::Antisymmetry => "antisymmetry",
            Axiom::Transitivity => "transitivity",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("order axiom {axiom} violated at pair ({a}, {b})")]
    InvalidOrder { axiom: Axiom, a: usize, b: usize },

    #[error("not a lattice: elements {a} and {b} have no {bound}")]
    NotALattice {
        a: usize,
        b: usize,
        bound: &'static str,
    },

    #[error("not a bijection: {0}")]
    NotBijective(String),

    #[error("value {value} out of range (size {size})")]
    OutOfRange { value: usize, size: usize },

    #[error("element {0} repeated in sequence")]
    RepeatedElement(usize),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("guard exceeded: {what} needs {requested}, limit is {limit}")]
    Guard {
        what: &'static str,
        requested: u128,
        limit: u128,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("automorphism group does not act freely: {0}")]
    NonFreeOrbit(String),

    #[error("representation is not a group homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// True for errors raised by size guards rather than bad input.
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::Guard { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
