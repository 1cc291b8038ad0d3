use thiserror::Error;

/// Errors raised by the numerical routines.
///
/// Numeric failures of an iteration (singular Jacobian, divergence) are not
/// errors; they are recorded in the trace outcome instead.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("operation requires dimension {expected}, got {got}")]
    WrongDimension { expected: usize, got: usize },

    #[error("functional is zero")]
    ZeroFunctional,

    #[error("coefficient rows are proportional; the discriminant test does not apply")]
    DegenerateProportional,

    #[error("operator is not elliptic (best margin {margin:.3e})")]
    NotElliptic { margin: f64 },

    #[error("basis is singular or ill-conditioned (condition number {cond:.3e})")]
    SingularBasis { cond: f64 },

    #[error("functional is not in the ellipticity cone (margin {margin:.3e})")]
    NotInCone { margin: f64 },

    #[error("point is not a root (residual {residual:.3e})")]
    NotARoot { residual: f64 },

    #[error("leading coefficient is zero")]
    ZeroLeadingCoefficient,

    #[error("resultant vanishes identically; the solution set is not finite")]
    DegenerateResultant,

    #[error("column {column} has entries of both signs")]
    MixedSignColumn { column: usize },

    #[error("coefficient matrix has negative entries; sign-normalize it first")]
    NotNormalized,

    #[error("two-stable-solution condition does not hold (m^2 + 4 beta = {value:.3e})")]
    ConditionNotMet { value: f64 },

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("grid has {0} point(s); at least 2 are required")]
    GridTooCoarse(usize),

    #[error("grid is not strictly increasing at index {0}")]
    NonIncreasingGrid(usize),

    #[error("{what} out of range: {value}")]
    OutOfRange { what: &'static str, value: i64 },

    #[error("unknown gallery id `{0}`")]
    UnknownId(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::Dimension { expected, got })
    }
}
