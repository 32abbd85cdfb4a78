use thiserror::Error;

/// Errors raised by model construction, simulation and the experiment runner.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian (max |R_ij - conj(R_ji)| = {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not positive semidefinite (eigenvalue {0:e})")]
    NotPositiveSemidefinite(f64),

    #[error("channel matrix is rank deficient (expected rank {expected})")]
    RankDeficient { expected: usize },

    #[error("eavesdropper interference covariance is singular (no artificial noise and ideal DACs)")]
    SingularCovariance,

    #[error("eavesdropping-rate bound undefined: eavesdropper degrees of freedom exhausted (denominator {0:e})")]
    EveDofExhausted(f64),

    #[error("Wishart inverse undefined: eta_w = {eta_w} does not exceed M = {m}")]
    WishartUndefined { eta_w: f64, m: f64 },

    #[error("nonpositive denominator in {0}")]
    NonpositiveDenominator(&'static str),

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// Stable snake_case tag, used in CSV error markers and CLI error lines.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParameter { .. } => "invalid_parameter",
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::NotHermitian(_) => "not_hermitian",
            Error::NotPositiveSemidefinite(_) => "not_psd",
            Error::RankDeficient { .. } => "rank_deficient",
            Error::SingularCovariance => "singular_covariance",
            Error::EveDofExhausted(_) => "eve_dof_exhausted",
            Error::WishartUndefined { .. } => "wishart_undefined",
            Error::NonpositiveDenominator(_) => "nonpositive_denominator",
            Error::Config(_) => "config",
            Error::Io(_) => "io",
            Error::Csv(_) => "csv",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
