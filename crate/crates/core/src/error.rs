use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not invertible: {value} mod {modulus}")]
    NotInvertible { value: u64, modulus: u64 },

    #[error("modulus {0} is outside the supported range 1..=2^31")]
    ModulusOutOfRange(u64),

    #[error("moduli do not match the prime-power components of {n}")]
    ModulusMismatch { n: u64 },

    #[error("t not in nil(Z_n): t = {t}, n = {n}")]
    NotNilpotent { t: u64, n: u64 },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("brace axiom violated: {0}")]
    BraceAxiom(String),

    #[error("multiplicative group is not abelian")]
    NonAbelian,

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("not an indecomposable cocyclic solution: {0}")]
    NotCocyclic(String),

    #[error("criteria apply only within a family")]
    FamilyMismatch,

    #[error("no counterexample at this order (n = {n})")]
    NoCounterexample { n: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
