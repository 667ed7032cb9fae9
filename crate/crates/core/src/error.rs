use thiserror::Error;

/// Errors raised by the numerical kernels.
///
/// Every variant has a stable short code (see [`Error::code`]) that the
/// command-line reports carry in failed rows.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by a jet whose value is zero")]
    DivisionByZeroJet,
    #[error("operation produced a non-finite value")]
    NonFiniteResult,
    #[error("elementary function evaluated at its branch point")]
    BranchPoint,
    #[error("first derivative vanishes (|d1| = {0:e})")]
    CriticalPoint(f64),
    #[error("Möbius map evaluated at its pole")]
    MobiusPole,
    #[error("degenerate Möbius map: |ad - bc| = {0:e}")]
    DegenerateMobius(f64),
    #[error("invalid jet: {0}")]
    InvalidJet(String),
    #[error("theta index {0} outside 1..=4")]
    InvalidThetaIndex(u8),
    #[error("invalid truncation policy: {0}")]
    InvalidPolicy(String),
    #[error("Im(tau) = {im} is below min_im_tau = {min}")]
    LowImaginaryTau { im: f64, min: f64 },
    #[error("series did not converge within {0} terms")]
    TruncationBudgetExceeded(usize),
    #[error("theta_1(0|tau) vanishes identically; use theta1_prime")]
    ThetaNullUndefined,
    #[error("argument within {0:e} of a lattice point")]
    LatticePole(f64),
    #[error("|z| = {z:e} outside the Laurent oracle disc of radius {radius:e}")]
    RadiusExceeded { z: f64, radius: f64 },
    #[error("invalid hypergeometric parameters: {0}")]
    InvalidParams(String),
    #[error("argument on or too close to the branch cut [1, inf)")]
    BranchCut,
    #[error("connection coefficient hits a Gamma pole at {0}")]
    GammaPole(String),
    #[error("integration path passes within {0:e} of a singularity")]
    SingularPath(f64),
    #[error("quadrature tolerance not reached (error estimate {0:e})")]
    ToleranceNotReached(f64),
    #[error("formula convention could not be calibrated: {0}")]
    ConventionNotCalibrated(String),
    #[error("singular configuration: {0}")]
    SingularConfiguration(String),
    #[error("solution has a pole here (|theta_1| = {0:e})")]
    SolutionPole(f64),
    #[error("operation not available for this solution family")]
    UnsupportedFamily,
    #[error("samples do not approach the cusp: {0}")]
    CuspMismatch(String),
    #[error("relation is ambiguous: {0} singular values below rank_tol")]
    RankDeficient(usize),
    #[error("no polynomial relation at this degree")]
    NoRelation,
    #[error("not enough samples: {got} < {needed}")]
    InsufficientSamples { got: usize, needed: usize },
}

impl Error {
    /// Stable identifier used in machine-readable reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZeroJet => "DivisionByZeroJet",
            Error::NonFiniteResult => "NonFiniteResult",
            Error::BranchPoint => "BranchPointError",
            Error::CriticalPoint(_) => "CriticalPointError",
            Error::MobiusPole => "MobiusPoleError",
            Error::DegenerateMobius(_) => "DegenerateMobius",
            Error::InvalidJet(_) => "InvalidJet",
            Error::InvalidThetaIndex(_) => "InvalidThetaIndex",
            Error::InvalidPolicy(_) => "InvalidPolicy",
            Error::LowImaginaryTau { .. } => "LowImaginaryTau",
            Error::TruncationBudgetExceeded(_) => "TruncationBudgetExceeded",
            Error::ThetaNullUndefined => "ThetaNullUndefined",
            Error::LatticePole(_) => "LatticePoleError",
            Error::RadiusExceeded { .. } => "RadiusExceeded",
            Error::InvalidParams(_) => "InvalidParams",
            Error::BranchCut => "BranchCutError",
            Error::GammaPole(_) => "GammaPoleError",
            Error::SingularPath(_) => "SingularPathError",
            Error::ToleranceNotReached(_) => "ToleranceNotReached",
            Error::ConventionNotCalibrated(_) => "ConventionNotCalibrated",
            Error::SingularConfiguration(_) => "SingularConfiguration",
            Error::SolutionPole(_) => "SolutionPoleError",
            Error::UnsupportedFamily => "UnsupportedFamily",
            Error::CuspMismatch(_) => "CuspMismatch",
            Error::RankDeficient(_) => "RankDeficient",
            Error::NoRelation => "NoRelation",
            Error::InsufficientSamples { .. } => "InsufficientSamples",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
