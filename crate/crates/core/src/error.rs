use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("sieve limit {limit} outside supported range [2, {max}]")]
    SieveLimit { limit: u64, max: u64 },

    #[error("{n} exceeds the supported bound {bound} (sieve limit squared)")]
    OutOfRange { n: u64, bound: u64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("h({prime}) = 0 for function {function}; h must be nonzero at every prime")]
    ZeroH { function: String, prime: u64 },

    #[error("{function}: cannot evaluate at prime {prime}: {reason}")]
    PrimeEval {
        function: String,
        prime: u64,
        reason: String,
    },

    #[error("parse error at position {pos}: {message}")]
    Parse { pos: usize, message: String },

    #[error("cannot compare exact and real values without explicit promotion")]
    MixedComparison,

    #[error("{0} is not completely additive")]
    NotCompletelyAdditive(String),

    #[error("unknown function `{name}`; available: {catalog}")]
    UnknownFunction { name: String, catalog: String },

    #[error("unknown identity `{name}`; available: {catalog}")]
    UnknownIdentity { name: String, catalog: String },

    #[error("identity {id}: binding violates slot constraint: {reason}")]
    Constraint { id: String, reason: String },

    #[error("{what} requires s > {abscissa}, got s = {s}")]
    Abscissa { what: String, abscissa: f64, s: f64 },

    #[error("{0}")]
    Unattainable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
