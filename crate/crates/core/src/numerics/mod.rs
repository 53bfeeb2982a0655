//! Floating-point layer: special functions, pointwise evaluation of states
//! with their Jastrow and Gaussian factors, finite-difference Hamiltonians and
//! the residual checks built on them.

pub mod checks;
pub mod fd;
pub mod measure;
pub mod sampling;
pub mod special;
pub mod state;

pub use checks::{
    bessel_closed_form_check, eigen_residual_bound, eigen_residual_scattering,
    laguerre_proportionality_check, CheckSettings, ResidualReport,
};
pub use fd::{fd_apply_hamiltonian, FDScheme, Hamiltonian, StepRule};
pub use measure::{eval_measure, min_separation, Measure};
pub use sampling::{sample_chamber, SamplePoint, SampleSet};
pub use special::{bessel_j, gamma_real, laguerre, laguerre_bessel_identity_residual};
pub use state::{eval_state, CompiledPoly, RadialProfile, StateFn, StateMode};
