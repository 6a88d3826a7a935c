use thiserror::Error;

/// Errors raised by instance validation and the solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("instance is empty")]
    EmptyInstance,
    #[error("value at input position {position} is not positive ({value})")]
    NonPositiveValue { position: usize, value: i128 },
    #[error("subset count k must be at least 2, got {0}")]
    SubsetCountTooSmall(usize),
    #[error("subset count k = {k} exceeds the number of values n = {n}")]
    SubsetCountExceedsValues { k: usize, n: usize },
    #[error("values too large: n * max value must fit in 64 bits")]
    ValueOverflow,
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("sets overlap at index {0}")]
    OverlappingSets(usize),
    #[error("restriction index p = {p} out of range 1..={max}")]
    RestrictionOutOfRange { p: usize, max: usize },
    #[error("epsilon {num}/{den} is not in the open interval (0, 1)")]
    EpsilonOutOfRange { num: u64, den: u64 },
    #[error("invalid fraction {0:?}")]
    InvalidFraction(String),
    #[error("0/0 is not a valid extended rational")]
    UndefinedRatio,
    #[error("instance with n = {n}, k = {k} exceeds the oracle cap (n <= {max_n}, k <= {max_k})")]
    OracleCapExceeded { n: usize, k: usize, max_n: usize, max_k: usize },
    #[error("dynamic program state space does not fit in 64-bit differences")]
    StateSpaceOverflow,
    #[error("no feasible solution")]
    Infeasible,
    #[error("time limit reached")]
    DeadlineExceeded,
}

pub type Result<T> = std::result::Result<T, Error>;
