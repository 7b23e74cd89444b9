use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("{0} is not a prime field order")]
    NotPrime(u64),
    #[error("field order {0} is not supported (prime q < 256 required)")]
    FieldTooLarge(u64),
    #[error("matrix entry {entry} is not reduced modulo {q}")]
    EntryOutOfRange { entry: u64, q: u64 },
    #[error("matrix rows have inconsistent lengths ({expected} vs {found})")]
    RaggedMatrix { expected: usize, found: usize },
    #[error("ambient spaces differ: {0}")]
    AmbientMismatch(String),
    #[error("invalid dimensions: {0}")]
    InvalidDimensions(String),
    #[error("budget exceeded: {what} needs {needed}, cap is {cap}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        cap: u128,
    },
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("s = {0} is not an integer")]
    NonIntegralS(String),
    #[error("division by zero in {0}")]
    DivisionByZero(&'static str),
    #[error("vertex {vertex} out of range for a graph on {count} vertices")]
    InvalidVertex { vertex: u64, count: usize },
    #[error("malformed graph: {0}")]
    InvalidGraph(String),
    #[error("vertex set is not a clique: {a} and {b} are not adjacent")]
    NotAClique { a: u32, b: u32 },
    #[error("clique of order {order} is below the required order {required}")]
    ThresholdNotMet { order: usize, required: i128 },
    #[error("graph is not {expected}-regular (vertex {vertex} has degree {degree})")]
    NotRegular {
        expected: u64,
        vertex: u32,
        degree: usize,
    },
    #[error("points {a} and {b} lie on two lines ({first} and {second})")]
    Linearity {
        a: u32,
        b: u32,
        first: usize,
        second: usize,
    },
    #[error("power iteration did not converge within {0} iterations")]
    NonConvergence(usize),
    #[error("graph carries no subspace labels")]
    MissingLabels,
}
