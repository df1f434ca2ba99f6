use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Family parameters must satisfy `r >= s >= 1`.
    #[error("invalid family parameters: require r >= s >= 1, got r={r}, s={s}")]
    InvalidParams { r: u32, s: u32 },

    /// An index fell outside the valid triangular range.
    #[error("index out of range: {0}")]
    OutOfRange(String),

    /// A division in the triangular solve left a remainder. This signals an
    /// implementation bug, never an expected runtime condition.
    #[error("non-integral triangular solve at {0}")]
    NonIntegralSolve(String),

    /// An alternating rational closed form failed to collapse to an integer.
    #[error("non-integral closed-form result at {0}")]
    NonIntegralResult(String),

    /// The Fock-space truncation was too small to hold every amplitude.
    #[error("Fock truncation too small: need dimension >= {needed}, got {got}")]
    TruncationTooSmall { needed: usize, got: usize },

    /// A series failed to meet its tail bound within the term cap.
    #[error("series did not converge within {0} terms")]
    MaxTermsExceeded(usize),

    /// A hypergeometric series diverges at the requested argument.
    #[error("hypergeometric series diverges: {0}")]
    Divergent(String),

    /// The (r,s) pair matches none of the covered hypergeometric shapes.
    #[error("no hypergeometric representation covers (r,s)=({r},{s})")]
    UnsupportedShape { r: u32, s: u32 },

    /// The requested weight kind is not available for these parameters.
    #[error("unsupported weight kind: {0}")]
    UnsupportedKind(String),

    /// `K_nu` is only implemented for non-integer orders.
    #[error("integer Bessel-K order {0} unsupported")]
    IntegerOrderUnsupported(String),

    /// A Hankel determinant was requested beyond the stored sequence.
    #[error("sequence too short: need {needed} Bell values, have {have}")]
    InsufficientSequence { needed: usize, have: usize },

    /// The analytic tail of an improper integral could not be pushed below
    /// the requested tolerance.
    #[error("tail bound failure: {0}")]
    TailBoundFailure(String),

    /// A fractional power crossed its branch cut.
    #[error("branch cut crossed: {0}")]
    BranchCut(String),

    /// The coherent-state resolution check covers only families with a
    /// continuous closed-form weight.
    #[error("no closed-form weight for family (r,s)=({r},{s})")]
    UnsupportedFamily { r: u32, s: u32 },

    /// Malformed numeric literal.
    #[error("parse error: {0}")]
    Parse(String),
}
