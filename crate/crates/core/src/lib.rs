//! Optimal polynomial approximants to `1/f` in the Hardy space, their link to
//! Szegő polynomials of `|f|^2`, and the electrostatic interpretation of
//! their zeros.

pub mod cases;
pub mod cli;
pub mod electro;
pub mod error;
pub mod moments;
pub mod opa;
pub mod output;
pub mod poly;
pub(crate) mod precise;
pub mod roots;
pub mod sweep;
pub mod weight;

pub use error::{Error, Result};
pub use poly::{Complex, LaurentWindow, Poly};

/// Largest polynomial degree accepted by the root finder.
pub const MAX_DEGREE: usize = 600;
