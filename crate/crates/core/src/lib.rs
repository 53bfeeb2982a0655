//! Exact SU(1,1) operator algebra for the Calogero-Sutherland and
//! Calogero-Moser models, with a floating-point layer that checks the
//! corresponding Hamiltonian eigenvalue equations pointwise.
//!
//! The exact layer ([`exactcore`], [`operators`], [`su11`], [`kernels`],
//! [`coherent`]) works over rational coefficients; [`numerics`] evaluates the
//! resulting states together with their Jastrow and Gaussian factors.

pub mod coherent;
pub mod error;
pub mod exactcore;
pub mod kernels;
pub mod numerics;
pub mod operators;
pub mod report;
pub mod su11;

pub use error::{Error, Result};
pub use exactcore::{ExactMatrix, ExactScalar, MultiPoly};
pub use operators::{ModelKind, ModelParams, OperatorTag, PairCoefficient};
