use thiserror::Error;

/// Everything that can go wrong between reading a link spectrum and
/// printing an order.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cone dimension {n} is too small (need n >= {min})")]
    DimensionTooSmall { n: u32, min: u32 },
    #[error("dimension {n} is not supported here: {detail}")]
    UnsupportedDimension { n: u32, detail: String },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("insufficient spectrum: the {list} list must be complete below {required} (it is complete below {available})")]
    InsufficientSpectrum {
        list: String,
        required: String,
        available: String,
    },
    #[error("rate set E{side} is empty")]
    EmptyRateSet { side: &'static str },
    #[error("multiplicity unknown for {0}")]
    UnknownMultiplicity(String),
    #[error("bootstrap does not terminate: alpha0 = {alpha0} <= 2 epsilon = {two_eps}")]
    NonTerminating { alpha0: String, two_eps: String },
    #[error("unsupported case: {0}")]
    UnsupportedCase(String),
}

pub type Result<T> = std::result::Result<T, Error>;
