use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("the Steenrod engine works with odd primes only")]
    EvenPrime,
    #[error("zero has no inverse in F_{prime}")]
    NotInvertible { prime: u32 },
    #[error("elements belong to different algebra models")]
    ModelMismatch,
    #[error("prime mismatch: expected {expected}, found {found}")]
    PrimeMismatch { expected: u32, found: u32 },
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("exterior generator `{0}` raised to a power greater than 1")]
    ExteriorExponent(String),
    #[error("generator `{generator}` has degree {expected} but its image has degree {found}")]
    DegreeMismatch {
        generator: String,
        expected: u32,
        found: String,
    },
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("invalid generator declaration: {0}")]
    InvalidGenerator(String),
    #[error("invalid Steenrod table: {0}")]
    InvalidTable(String),
    #[error("invalid operation word: {0}")]
    InvalidWord(String),
    #[error("invalid index sequence: {0}")]
    InvalidIndexSeq(String),
    #[error("invalid composition: {0}")]
    InvalidComposition(String),
    #[error("invalid permutation: {0}")]
    InvalidPerm(String),
    #[error("matrix is not in SL2: {0}")]
    InvalidMatrix(String),
    #[error("{p} does not divide {n}")]
    PrimeNotDividing { n: u64, p: u32 },
    #[error("prime {p} exceeds n = {n}")]
    PrimeExceedsN { n: usize, p: u32 },
    #[error("{what} = {value} exceeds the configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: u64,
        cap: u64,
    },
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
