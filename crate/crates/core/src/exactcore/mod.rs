//! Exact rational polynomial algebra: sparse multivariate polynomials,
//! exact division, fraction-free nullspaces and the symmetric bases the
//! operator layer works in.

mod divide;
mod matrix;
mod parse;
mod poly;
mod symmetric;

pub use divide::exact_divide;
pub use matrix::ExactMatrix;
pub use parse::{parse_poly, parse_scalar, ParseError};
pub use poly::{integer, rational, scalar_to_f64, ExactScalar, Exponents, MultiPoly};
pub use symmetric::{
    even_sym_basis, monomial_symmetric, partitions, random_symmetric, sym_basis, symmetric_coordinates,
    to_symmetric_string, Partition,
};
