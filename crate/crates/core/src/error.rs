use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomials live in different rings ({0} vs {1} variables)")]
    NvarsMismatch(usize, usize),

    #[error("variable index {index} out of range for {nvars} variables")]
    VarOutOfRange { index: usize, nvars: usize },

    #[error("division by the zero polynomial")]
    ZeroDivisor,

    #[error("expected a nonconstant polynomial")]
    ConstantInput,

    #[error("expected a homogeneous polynomial")]
    NotHomogeneous,

    #[error("the Poisson bracket needs at least two variables")]
    TooFewVars,

    #[error("matrix dimensions do not agree: {0}")]
    DimensionMismatch(String),

    #[error("[H, P] is nonzero")]
    NotCommuting,

    #[error("H is a proper power of a lower-degree polynomial")]
    HIsProperPower,

    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    #[error("index {0} is not in the admissible index set")]
    NotInIndexSet(String),

    #[error("exact division failed: {0}")]
    NonDivisible(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("config error: {0}")]
    Config(String),

    #[error("problem too large: {0}")]
    TooLarge(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NvarsMismatch(..) => "nvars_mismatch",
            Error::VarOutOfRange { .. } => "var_out_of_range",
            Error::ZeroDivisor => "zero_divisor",
            Error::ConstantInput => "constant_input",
            Error::NotHomogeneous => "not_homogeneous",
            Error::TooFewVars => "too_few_vars",
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::NotCommuting => "not_commuting",
            Error::HIsProperPower => "h_is_proper_power",
            Error::Inconsistent(_) => "inconsistent",
            Error::NotInIndexSet(_) => "not_in_index_set",
            Error::NonDivisible(_) => "non_divisible",
            Error::InvalidParameters(_) => "invalid_parameters",
            Error::NotApplicable(_) => "not_applicable",
            Error::Parse { .. } => "parse",
            Error::Config(_) => "config",
            Error::TooLarge(_) => "too_large",
        }
    }

    pub fn params(msg: impl Into<String>) -> Self {
        Error::InvalidParameters(msg.into())
    }
}
