use thiserror::Error;

/// Errors raised by the presentation, group and extension machinery.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("prime {0} is not admissible here: {1}")]
    InadmissiblePrime(u64, &'static str),

    #[error("malformed presentation: {0}")]
    MalformedPresentation(String),

    #[error("collection exceeded {0} rewrite steps; the presentation is probably not polycyclic")]
    CollectionLimit(u64),

    #[error("generator index {0} out of range for rank {1}")]
    GeneratorOutOfRange(usize, usize),

    #[error("unknown generator name {0:?}")]
    UnknownGenerator(String),

    #[error("subgroup is not normal: conjugate of element {element} by generator {generator} escapes it")]
    NonNormalSubgroup { element: u32, generator: usize },

    #[error("automorphism order exceeds the iteration cap of {0}")]
    OrderTooLarge(u64),

    #[error("invalid top order {top}: automorphism has order {order}")]
    InvalidTopOrder { top: u64, order: u64 },

    #[error("map is not an automorphism: {0}")]
    NotAutomorphism(String),

    #[error("invalid central layer: {0}")]
    InvalidLayer(String),

    #[error("degree equations have no nonnegative solution")]
    Infeasible,

    #[error("eigenspace splitting did not separate all central characters after {0} re-randomizations")]
    RetryExhausted(usize),

    #[error("no suitable splitting prime found")]
    NoSuitablePrime,

    #[error("group of order {order} exceeds the configured bound {bound}")]
    TooLarge { order: u64, bound: u64 },

    #[error("degree strategies disagree: {0}")]
    StrategyDisagreement(String),

    #[error("derived subgroup is not abelian")]
    NonMetabelianInput,

    #[error("nilpotence class {0} exceeds 5")]
    ClassTooLarge(usize),

    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
