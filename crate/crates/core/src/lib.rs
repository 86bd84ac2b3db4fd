//! Exact E-polynomials of the strata of the rank-2, trivial-determinant Higgs
//! moduli space and its stringy E-function.

pub mod error;
pub mod genus;
pub mod polyring;
pub mod powerseries;
mod shapes;
pub mod strata;
pub mod stringy;
pub mod verify;
pub mod cli;

pub use error::{Error, Result};
pub use genus::Genus;
pub use polyring::{BivariatePolynomial, FactoredRational, Poly, UnivariatePolynomial, UnivariateRational};
