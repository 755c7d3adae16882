use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors surfaced by the library.
///
/// Variants are grouped so callers (the CLI in particular) can map them onto
/// usage failures versus computational failures.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition {parts:?}: {reason}")]
    InvalidPartition { parts: Vec<i64>, reason: String },

    #[error("ambient length mismatch: expected {expected}, got {found}")]
    AmbientMismatch { expected: usize, found: usize },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("pole in hypergeometric coefficient: {0}")]
    Pole(String),

    #[error("evaluation matrix stayed singular after {attempts} reseeds")]
    SingularInterpolation { attempts: usize },

    #[error("principal angles are not rational (characteristic polynomial {poly}); use float mode")]
    IrrationalAngles { poly: String },

    #[error("basis has rank {rank} < {m}")]
    RankDeficient { rank: usize, m: usize },

    #[error("mode mismatch: {0}")]
    ModeMismatch(String),

    #[error("wrong cardinality: |X| = {found}, expected {expected}")]
    WrongCardinality { found: usize, expected: String },

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by bad input rather than by the mathematics.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::InvalidPartition { .. }
                | Error::AmbientMismatch { .. }
                | Error::OutOfRange(_)
                | Error::ModeMismatch(_)
                | Error::WrongCardinality { .. }
                | Error::Parse(_)
                | Error::Json(_)
                | Error::Io(_)
        )
    }

    /// Short machine-readable code used in structured error output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidPartition { .. } => "invalid_partition",
            Error::AmbientMismatch { .. } => "ambient_mismatch",
            Error::OutOfRange(_) => "out_of_range",
            Error::Pole(_) => "pole",
            Error::SingularInterpolation { .. } => "singular_interpolation",
            Error::IrrationalAngles { .. } => "irrational_angles",
            Error::RankDeficient { .. } => "rank_deficient",
            Error::ModeMismatch(_) => "mode_mismatch",
            Error::WrongCardinality { .. } => "wrong_cardinality",
            Error::InvalidCertificate(_) => "invalid_certificate",
            Error::Parse(_) => "parse",
            Error::Json(_) => "json",
            Error::Io(_) => "io",
        }
    }
}
