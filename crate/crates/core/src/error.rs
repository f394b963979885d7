use thiserror::Error;

/// Errors raised by construction and verification routines.
///
/// Failed numeric checks are reported in [`crate::report::CheckRecord`]s,
/// not as errors; an `Error` means the requested object could not be built
/// at all (bad parameters, degenerate input, broken precondition).
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid algebra specification: {0}")]
    InvalidSpec(String),

    #[error("basis is not closed under the bracket: residual {residual:.3e} exceeds {tol:.1e}")]
    NotClosed { residual: f64, tol: f64 },

    #[error("basis is numerically dependent: smallest singular value {0:.3e}")]
    DependentBasis(f64),

    #[error("Killing form is not {expected} definite on the {block} block (extremal eigenvalue {eigenvalue:.3e}); wrong involution?")]
    IndefiniteBlock {
        block: &'static str,
        expected: &'static str,
        eigenvalue: f64,
    },

    #[error("xi does not lie in k (expansion residual {0:.3e})")]
    XiNotInIsotropy(f64),

    #[error("xi vanishes")]
    XiZero,

    #[error("centralizer v exhausts k (dim v = {dim_v}, dim k = {r}); the fiber block k (-) v is empty")]
    CentralizerTooLarge { dim_v: usize, r: usize },

    #[error("Gram matrix is near-degenerate: condition number {0:.3e}")]
    DegenerateGram(f64),

    #[error("basis expansion residual {residual:.3e} exceeds {tol:.1e}: basis not closed")]
    ExpansionResidual { residual: f64, tol: f64 },

    #[error("complement is not Ad(isotropy)-invariant: residual {0:.3e}")]
    NotReductive(f64),

    #[error("curvature symmetry residual {0:.3e} above tolerance")]
    CurvatureSymmetry(f64),

    #[error("Jacobi operator is not symmetric: residual {0:.3e}")]
    AsymmetricOperator(f64),

    #[error("plane is degenerate: vectors are not orthonormal (residual {0:.3e})")]
    DegeneratePlane(f64),

    #[error("no positive metric scale fits the curvature table: {0}")]
    ScaleFit(String),

    #[error("radius must be positive, got {0}")]
    NonpositiveRadius(f64),

    #[error("curvature eigenvalue {0:.3e} is positive; radial comparison requires K <= 0")]
    PositiveCurvature(f64),

    #[error("base dimension {0} is below 4; the tangential functionals lose positivity")]
    DimensionTooSmall(usize),

    #[error("integrator step size underflowed at r = {0:.3e}")]
    IntegratorStep(f64),

    #[error("coercivity constant {0:.3e} is not positive")]
    NonpositiveConstant(f64),

    #[error("configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
