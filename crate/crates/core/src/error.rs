use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// Domain bounds reversed or too few cells for the reconstruction stencils.
    InvalidDomain { x_min: f64, x_max: f64, n_cells: usize },
    LengthMismatch { expected: usize, found: usize },
    InvalidParameter(&'static str),
    /// Two DIRK abscissae coincide, so the composite Euler substeps degenerate.
    DegenerateAbscissae,
    SingularMatrix { pivot: f64, scale: f64 },
    NewtonFailed { stage: &'static str, index: usize, iterations: usize, residual: f64 },
    CflViolation { dt: f64, limit: f64 },
    /// The characteristic equation was queried past (or too close to) the shock time.
    BeyondShockTime { t: f64, shock_time: f64 },
    CharacteristicsNoConvergence { x: f64, t: f64 },
    NoExactSolution,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidDomain { x_min, x_max, n_cells } => write!(
                f,
                "invalid domain [{x_min}, {x_max}] with {n_cells} cells (need x_max > x_min and at least {} cells)",
                crate::mesh::MIN_CELLS
            ),
            Error::LengthMismatch { expected, found } => {
                write!(f, "length mismatch: expected {expected}, found {found}")
            }
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::DegenerateAbscissae => write!(f, "tableau abscissae are not distinct"),
            Error::SingularMatrix { pivot, scale } => {
                write!(f, "singular matrix: pivot {pivot:e} at scale {scale:e}")
            }
            Error::NewtonFailed { stage, index, iterations, residual } => write!(
                f,
                "newton did not converge in {stage} stage {index} after {iterations} iterations (residual {residual:e})"
            ),
            Error::CflViolation { dt, limit } => {
                write!(f, "explicit time step {dt:e} exceeds the stability limit {limit:e}")
            }
            Error::BeyondShockTime { t, shock_time } => write!(
                f,
                "t = {t} is past the pre-shock limit (shock forms at t* = {shock_time})"
            ),
            Error::CharacteristicsNoConvergence { x, t } => {
                write!(f, "characteristic solve failed at x = {x}, t = {t}")
            }
            Error::NoExactSolution => write!(f, "no exact solution available for this setup"),
        }
    }
}

impl core::error::Error for Error {}
