use thiserror::Error;

/// Errors raised by the computation modules. The variant names double as the
/// stable error codes surfaced by the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    JacobiViolation(usize, usize, usize),
    #[error("bracket is not antisymmetric on basis pair ({0}, {1})")]
    AntisymmetryViolation(usize, usize),
    #[error("slot count mismatch: {0} vs {1}")]
    SlotMismatch(usize, usize),
    #[error("truncation mismatch: {0} vs {1}")]
    TruncationMismatch(usize, usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("coproduct blocks overlap at slot {0}")]
    BlockOverlap(usize),
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("r-matrix is not antisymmetric")]
    NotAntisymmetric,
    #[error("element has a term of total degree < 2")]
    NotInMSquared,
    #[error("element has a term with an empty slot")]
    NotInMTensor,
    #[error("cochain is not homogeneous of degree {0}")]
    NotHomogeneous(usize),
    #[error("element is not g-invariant")]
    NotInvariant,
    #[error("tensor is not a fixed point of the antisymmetrization")]
    NotInWedge3,
    #[error("cochain is not a cocycle ({0})")]
    NotACocycle(String),
    #[error("cocycle of slot count {k} and degree {degree} is not a coboundary although the cohomology vanishes there")]
    RankCertificate { k: usize, degree: usize },
    #[error("pentagon lift obstructed by a nonzero class in degree 4")]
    ObstructionAt4,
    #[error("r and the associator class are incompatible at degree 3")]
    CompatibilityViolation,
    #[error("enveloping algebra mismatch")]
    AlgebraMismatch,
    #[error("truncation {have} too low, need at least {need}")]
    TruncationTooLow { have: usize, need: usize },
    #[error("linear form is not a Poisson trace")]
    NotATrace,
    #[error("pairing matrix is singular")]
    SingularPairing,
    #[error("classical Yang-Baxter equation fails for r'")]
    CYBViolation,
    #[error("symmetric part t of r' is not symmetric and ad-invariant")]
    TNotInvariant,
    #[error("element is not central")]
    NotCentral,
    #[error("symmetric part t is degenerate")]
    Degenerate,
    #[error("element does not lie in the image of the linear map")]
    NotInImage,
}

impl Error {
    /// Short machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(_) => "ParseError",
            Error::JacobiViolation(..) => "JacobiViolation",
            Error::AntisymmetryViolation(..) => "AntisymmetryViolation",
            Error::SlotMismatch(..) => "SlotMismatch",
            Error::TruncationMismatch(..) => "TruncationMismatch",
            Error::DimensionMismatch(..) => "DimensionMismatch",
            Error::BlockOverlap(_) => "BlockOverlap",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::NotAntisymmetric => "NotAntisymmetric",
            Error::NotInMSquared => "NotInMSquared",
            Error::NotInMTensor => "NotInMTensor",
            Error::NotHomogeneous(_) => "NotHomogeneous",
            Error::NotInvariant => "NotInvariant",
            Error::NotInWedge3 => "NotInWedge3",
            Error::NotACocycle(_) => "NotACocycle",
            Error::RankCertificate { .. } => "RankCertificate",
            Error::ObstructionAt4 => "ObstructionAt4",
            Error::CompatibilityViolation => "CompatibilityViolation",
            Error::AlgebraMismatch => "AlgebraMismatch",
            Error::TruncationTooLow { .. } => "TruncationTooLow",
            Error::NotATrace => "NotATrace",
            Error::SingularPairing => "SingularPairing",
            Error::CYBViolation => "CYBViolation",
            Error::TNotInvariant => "TNotInvariant",
            Error::NotCentral => "NotCentral",
            Error::Degenerate => "Degenerate",
            Error::NotInImage => "NotInImage",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
