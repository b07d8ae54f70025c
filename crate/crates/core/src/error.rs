use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Cartan data at ({row}, {col}): {reason}")]
    InvalidCartan {
        row: usize,
        col: usize,
        reason: String,
    },
    #[error("index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("invalid index sequence: {0}")]
    InvalidIota(String),
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("form budget of {max_forms} exceeded after generating {generated} forms")]
    BudgetExceeded { max_forms: usize, generated: usize },
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("operation undefined in B(infinity) mode: {0}")]
    ModeError(&'static str),
    #[error("operation applied to the zero element")]
    ZeroElement,
    #[error("the pair (iota, lambda) is not ample: {0}")]
    NotAmple(String),
    #[error("enumeration stopped at depth cap {depth_cap}")]
    DepthCapReached { depth_cap: usize },
    #[error("enumerated element {point} violates inequality {form}")]
    CrossValidation { point: String, form: String },
    #[error("strict positivity assumption fails: {0}")]
    StrictPositivityViolated(String),
    #[error("enumeration is incomplete at the requested depth {requested} (explored {explored})")]
    IncompleteEnumeration { requested: usize, explored: usize },
    #[error("not a finite type Cartan matrix")]
    NotFiniteType,
    #[error("weight is not determined by fundamental coordinates: {0}")]
    WeightNotDetermined(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
