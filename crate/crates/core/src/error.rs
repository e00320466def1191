use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("Kronecker symbol with modulus 0")]
    ZeroModulus,
    #[error("zero is not allowed here")]
    Zero,
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),
    #[error("form ({a}, {b}, {c}) is not positive definite")]
    NotPositiveDefinite { a: i64, b: i64, c: i64 },
    #[error("discriminant mismatch: {0} vs {1}")]
    DiscriminantMismatch(i64, i64),
    #[error("discriminant {disc}: class group {structure} is out of scope (expected C2 x C2)")]
    WrongClassGroup { disc: i64, structure: String },
    #[error("discriminant {0} is exceptional")]
    Exceptional(i64),
    #[error("prime {p} is {kind} in Q(sqrt {disc})")]
    WrongSplitting { disc: i64, p: u64, kind: &'static str },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("element is not coprime to {0}")]
    NotCoprime(u64),
    #[error("field tags differ")]
    FieldMismatch,
    #[error("no delta found within bound {0}; raise the bound")]
    DeltaSearchExhausted(i64),
    #[error("no admissible prime pair below {0}")]
    PrimeSearchExhausted(u64),
    #[error("degenerate n-value for prime {p}: bracket {bracket} is a square or zero")]
    DegenerateNValue { p: u64, bracket: i64 },
    #[error("group tables do not match")]
    GroupMismatch,
    #[error("invalid group table: {0}")]
    InvalidGroup(&'static str),
    #[error("not a c-representation: {0}")]
    NotCRep(&'static str),
    #[error("unsupported parameter: {0}")]
    Unsupported(String),
    #[error("({label}) {source}")]
    Labelled { label: String, source: Box<Error> },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
