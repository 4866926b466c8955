//! Exact construction of the Gauss-Kraitchik polynomials `Psi_d`, `Xi_d`
//! with `4 Phi_d(X) = Psi_d(X)^2 - D Xi_d(X)^2` for odd squarefree `d`,
//! together with validated checkers for the coefficient bounds and the
//! ratio approximation they satisfy.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod kraitchik;
pub mod numtheory;
pub mod poly;
pub mod powersums;
pub mod qfield;
pub mod ratio;
pub mod realint;
pub mod ring;
pub mod symfunc;

pub use error::Error;
