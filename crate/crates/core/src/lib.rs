//! Polynomial vector fields in free (non-commuting) variables evaluated on a
//! semicircular system: the free difference quotient and cyclic derivatives,
//! the semicircular trace and its Fock realisation, the free Leray
//! projection, and a Galerkin-truncated free Euler flow with cyclic
//! vorticity diagnostics.
//!
//! Every computation is generic over a [`Scalar`]: [`GaussRational`] gives
//! exact arithmetic over `Q(i)`, `Complex64` gives floating point.

pub mod algebra;
pub mod checks;
pub mod cli;
pub mod error;
pub mod euler;
pub mod leray;
pub mod linalg;
pub mod oracle;
pub mod scalar;
pub mod random;
pub mod semicircular;
pub mod text;
pub mod word;

pub use algebra::{BiTensor, NcPoly, VectorField};
pub use error::{Error, Result};
pub use scalar::{GaussRational, Mode, Scalar};
pub use word::Word;
