use thiserror::Error;

/// Errors raised by the library. Every variant is a precondition failure
/// except [`Error::CertificateMismatch`], which signals an internal
/// inconsistency between two independent computations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("uniformity mismatch: {0}-graph against {1}-graph")]
    UniformityMismatch(usize, usize),

    #[error("target graph has no vertices")]
    EmptyTarget,

    #[error("invalid hypergraph: {0}")]
    InvalidGraph(String),

    #[error("invalid labeled graph: {0}")]
    InvalidLabels(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("component {0} is not in the basis")]
    UnknownComponent(String),

    #[error("basis mismatch: {0}")]
    BasisMismatch(String),

    #[error("ambient dimension {dim} exceeds the cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("size cap exceeded: {0}")]
    SizeCap(String),

    #[error("2x2 principal minor on {0} and {1} is symbolically zero")]
    SymbolicallyZeroMinor(String, String),

    #[error("expected exactly one free coordinate, found {0}")]
    FreeCoordinates(usize),

    #[error("certificate failed exact re-verification: {0}")]
    CertificateMismatch(String),

    #[error("value does not fit in a machine integer: {0}")]
    Overflow(String),
}

impl Error {
    pub fn is_certificate_mismatch(&self) -> bool {
        matches!(self, Error::CertificateMismatch(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
