use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An argument is outside the documented domain of an operation.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// Data violated an invariant that exact arithmetic should guarantee
    /// (non-integral column sum, failed orthogonality, negative multiplicity).
    #[error("integrity error: {0}")]
    Integrity(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{exponent} is not coprime to conductor {conductor}")]
    NotCoprime { exponent: i64, conductor: u32 },
    #[error("modules over C_{left} and C_{right} cannot be tensored")]
    MismatchedPrime { left: u32, right: u32 },
    /// A truncated action matrix was asked for more tensor powers than its
    /// cutoff supports.
    #[error("n = {requested} exceeds the exact horizon {horizon} of a matrix truncated at {cutoff}; a cutoff of at least {required_cutoff} is needed")]
    HorizonExceeded {
        requested: usize,
        horizon: usize,
        cutoff: usize,
        required_cutoff: usize,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn integrity(msg: impl Into<String>) -> Self {
        Error::Integrity(msg.into())
    }
}
