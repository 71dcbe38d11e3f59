use thiserror::Error;

/// Errors raised by construction and checking routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate operation symbol `{0}`")]
    DuplicateSymbol(String),

    #[error("operation `{symbol}` of arity {arity} needs {expected} table entries, found {found}")]
    ArityMismatch {
        symbol: String,
        arity: usize,
        expected: usize,
        found: usize,
    },

    #[error("value {value} out of range for carrier of size {size} ({context})")]
    OutOfRange { value: usize, size: usize, context: String },

    #[error("signatures differ")]
    SignatureMismatch,

    #[error("shape mismatch: expected length {expected}, found {found}")]
    ShapeMismatch { expected: usize, found: usize },

    #[error("size guard exceeded: {what} = {size} exceeds cap {cap}")]
    SizeGuard { what: &'static str, size: u128, cap: u128 },

    #[error("spaces are over different algebras")]
    AlgebraMismatch,

    #[error("map is not continuous: pullback of open {0:?} is not open")]
    NotContinuous(Vec<usize>),

    #[error("space is not Q-T0")]
    NotT0,

    #[error("space is not sober: {0}")]
    NotSober(String),

    #[error("map is not an embedding: {0}")]
    NotEmbedding(String),

    #[error("p_f not unique for open {0:?}")]
    PfNotUnique(Vec<usize>),

    #[error("p_f missing for open {0:?}")]
    PfMissing(Vec<usize>),

    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("malformed document: {0}")]
    Document(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn guard(what: &'static str, size: u128, cap: u128) -> Result<()> {
    if size > cap {
        Err(Error::SizeGuard { what, size, cap })
    } else {
        Ok(())
    }
}

/// `base^exp` saturating at `u128::MAX`.
pub(crate) fn checked_pow(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
        if acc == u128::MAX {
            break;
        }
    }
    acc
}
