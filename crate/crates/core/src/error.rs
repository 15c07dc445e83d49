use thiserror::Error;

/// Errors raised by the algebra, projection, dynamics and text layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("generator count mismatch: {left} vs {right}")]
    GeneratorMismatch { left: usize, right: usize },

    #[error("generator index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("vector field is not divergence-free (residual {residual:.3e})")]
    NotDivergenceFree { residual: f64 },

    #[error("vector field is not a cyclic gradient")]
    NotCyclicGradient,

    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeCap { degree: usize, cap: usize },

    #[error("resource cap exceeded: {what} needs {needed}, cap is {cap}")]
    ResourceCap {
        what: &'static str,
        needed: u128,
        cap: u128,
    },

    #[error("time parameter must be nonnegative, got {0}")]
    NegativeTime(f64),

    #[error("contraction factor must lie in (0, 1]")]
    BadContraction,

    #[error("polynomial degree {degree} exceeds the Fock truncation level {level}")]
    DegreeExceedsLevel { degree: usize, level: usize },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("field is not self-adjoint")]
    NotSelfAdjoint,

    #[error("instability at t = {t}: divergence residual {residual:.3e}")]
    Instability { t: f64, residual: f64 },

    #[error("unknown check suite `{0}`")]
    UnknownSuite(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Process exit status: 1 usage/parse, 2 invariant failure, 3 resource cap.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotDivergenceFree { .. } | Error::NotCyclicGradient | Error::NotSelfAdjoint | Error::Instability { .. } => 2,
            Error::ResourceCap { .. } | Error::DegreeCap { .. } | Error::DegreeExceedsLevel { .. } => 3,
            _ => 1,
        }
    }
}
