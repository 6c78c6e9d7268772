use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid modulus {0}: must satisfy 2 <= N <= {1}")]
    InvalidModulus(u64, usize),

    #[error("element {element} out of range for modulus {n}")]
    ElementOutOfRange { element: usize, n: usize },

    #[error("duplicate element {0} in index set")]
    DuplicateElement(usize),

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(usize, usize),

    #[error("{z} is not in [0, {p}^{m})")]
    DigitRange { z: usize, p: usize, m: usize },

    #[error("{0} is not a divisor of {1} smaller than it")]
    NotAProperDivisor(usize, usize),

    #[error("N = {0} is not a prime power")]
    NotPrimePower(usize),

    #[error("{0} is not prime")]
    NotPrime(usize),

    #[error("column {column} out of range for a table with {m} columns")]
    ColumnOutOfRange { column: usize, m: usize },

    #[error("invalid digit-table: {0}")]
    InvalidTable(String),

    #[error("zero set is not a union of gcd classes: {0}")]
    NotDivisorClassUnion(String),

    #[error("search bound exceeded: {what} needs {required}, limit is {limit}")]
    BoundExceeded {
        what: &'static str,
        required: u128,
        limit: u128,
    },

    #[error("submatrix for rows {rows:?} and columns {cols:?} is singular (smallest singular value {sigma_min:e})")]
    SingularSubmatrix {
        rows: Vec<usize>,
        cols: Vec<usize>,
        sigma_min: f64,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn is_bound_exceeded(&self) -> bool {
        matches!(self, Error::BoundExceeded { .. })
    }
}
