use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("generators must be positive integers, got 0")]
    InvalidGenerator,

    /// The generated set misses whole residue classes: gcd > 1, or no generators at all.
    #[error("generator set is not cofinite (gcd = {gcd})")]
    NotCofinite { gcd: u64 },

    #[error("{m} is not an element of the semigroup")]
    NotAMember { m: u64 },

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("operation needs a nonempty set")]
    EmptySet,

    #[error("cannot take {k} distinct elements from a set of size {size}")]
    SubsetTooLarge { k: usize, size: usize },

    #[error("brute-force enumeration of C({q}, {k}) subsets exceeds the limit")]
    InfeasibleEnumeration { q: u64, k: u64 },

    #[error("probability must lie strictly between 0 and 1, got {0}")]
    InvalidProbability(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("sampler examined {examined} integers without reaching a cofinite stopping point")]
    IterationCap { examined: u64 },

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

pub(crate) fn check_probability(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidProbability(p))
    }
}
