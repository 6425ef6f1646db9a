use thiserror::Error;

/// Malformed textual input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("invalid rational literal {0:?}, expected \"num/den\" or an integer")]
    Rational(String),
    #[error("invalid input document: {0}")]
    Schema(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    /// The trigonometric primitive would contain a linear term in theta.
    #[error("trigonometric polynomial has nonzero mean {mean}; its primitive is not periodic")]
    NonZeroMean { mean: String },

    #[error("operation requires a {expected} system, got {found}")]
    InvalidKind {
        expected: &'static str,
        found: &'static str,
    },

    #[error("interval [{a}, {b}] is empty or reversed")]
    InvalidInterval { a: String, b: String },

    #[error("no right composition factor of degree {degree}")]
    NoFactor { degree: usize },

    #[error("factor degree {degree} does not divide polynomial degree {poly_degree}")]
    DegreeMismatch { degree: usize, poly_degree: String },

    #[error("sign changes of the zero polynomial are undefined")]
    ZeroPolynomial,

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),

    /// An identity that holds by theorem did not hold. Always a bug.
    #[error("internal assertion failed: {0}")]
    AssertionFailed(String),

    #[error("solution escaped |x| > {bound} at t = {t}")]
    BlowUp { t: f64, bound: f64 },

    #[error("step size underflow at t = {t} (h = {h:e})")]
    StepFailure { t: f64, h: f64 },

    #[error("numeric/symbolic mismatch: {0}")]
    Mismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
