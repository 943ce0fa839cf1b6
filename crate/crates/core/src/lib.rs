//! Dirichlet L-functions sampled at the zeros of the Riemann zeta function.
//!
//! The crate evaluates `L(s, chi)` at `s = sigma + i gamma` for ordinates `gamma` of
//! zeta zeros, and checks the discrete mean values that make pairs of such values
//! linearly independent (off the critical line) or distinct (on it).

pub mod arith;
pub mod characters;
pub mod cli;
pub mod criticalline;
pub mod cyclotomic;
pub mod error;
pub mod landau;
pub mod lfunc;
pub mod meanvalues;
pub mod specfun;
pub mod zeros;
pub mod sum;

pub use characters::{character, chi_eval, gauss_sum, DirichletCharacter};
pub use error::{Error, Result};
pub use specfun::StripPoint;
