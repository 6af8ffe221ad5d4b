//! Orthogonal polynomials on the simplex, the Fourier transforms of their
//! tanh-substituted weights, the Gamma-weighted `S` family obtained from
//! Parseval's identity, and the contiguous relations that family satisfies.
//!
//! Every identity is paired with an independent numeric check; see [`verify`].

pub mod classical_poly;
pub mod error;
pub mod fourier_xform;
pub mod hypergeom;
pub mod index;
pub mod numerics;
pub mod quadrature;
pub mod recurrences;
pub mod report;
pub mod sfamily;
pub mod simplex_poly;
pub mod verify;

pub use error::{Error, Result};
pub use index::{AlphaVector, MultiIndex, ParamVector};
pub use numerics::Complex;
pub use report::VerificationReport;
