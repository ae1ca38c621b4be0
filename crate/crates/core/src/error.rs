use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid window [{lo}, {hi}]")]
    InvalidWindow { lo: i64, hi: i64 },

    #[error("window members must be strictly increasing and inside [lo, hi]")]
    InvalidMembers,

    #[error("window of {len} integers exceeds the configured budget of {max}")]
    WindowTooLarge { len: u64, max: u64 },

    #[error("sequence has {len} terms; generation is capped at {max}")]
    SequenceTooLong { len: usize, max: usize },

    #[error("sequence is not super-lacunary (p_(i+1) > 2(p_1 + ... + p_i) fails at term {index})")]
    NotSuperLacunary { index: usize },

    #[error("integer overflow while {0}")]
    Overflow(&'static str),

    #[error("descriptor has no bounded support: {0}")]
    Unbounded(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("point arity does not match the system: {0}")]
    ArityMismatch(String),

    #[error("neighborhood is not compatible with the system: {0}")]
    IncompatibleNeighborhood(String),

    #[error("precision exhausted at n = {n}: error bound exceeds a quarter of eps")]
    PrecisionExhausted { n: i64 },

    #[error("ambiguous symbol at n = {n}: orbit lies within its error bound of a partition boundary")]
    AmbiguousSymbol { n: i64 },

    #[error("irrational rotation required, got a rational angle")]
    RationalAngle,

    #[error("cannot parse scalar {input:?}: {reason}")]
    ScalarParse { input: String, reason: String },

    #[error("unknown set {0:?}")]
    UnknownSet(String),

    #[error("need at least {need} sets, got {got}")]
    TooFewSets { need: usize, got: usize },

    #[error("classifier mismatch at {value}: parity label {parity} vs definitional label {definitional}")]
    ClassifierMismatch { value: i64, parity: String, definitional: String },
}
