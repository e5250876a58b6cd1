use thiserror::Error;

/// Errors surfaced by the exact-algebra and sandbox layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero quaternion")]
    ZeroDivisor,

    #[error("signature {0} is not divisible by 16; 19*sigma/16 is not an integer")]
    NotSpinSignature(i64),

    #[error("intersection form is definite; the indefiniteness hypothesis fails")]
    DefiniteForm,

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("cutoff {cutoff} is within {tol} of eigenvalue {eigenvalue}; perturb the cutoff")]
    CutoffNearEigenvalue {
        cutoff: f64,
        eigenvalue: f64,
        tol: f64,
    },

    #[error("fixed-point iteration did not converge after {iterations} iterations (residual {residual:.3e})")]
    NonConvergence { residual: f64, iterations: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("projection equivariance is only asserted for diagonal Pin(2) elements")]
    NonDiagonalGroupElement,

    #[error("endomorphism is not in the image of rho2: {0}")]
    NotInRho2Image(String),

    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
