//! Exact arithmetic in `Q[u, v]` and for rational functions with factored
//! denominators.

mod json;
mod poly;
mod rational;
mod univariate;

pub use json::{format_rational, parse_rational};
pub use poly::{BivariatePolynomial, Monomial, Poly};
pub use rational::FactoredRational;
pub use univariate::{UnivariatePolynomial, UnivariateRational};
