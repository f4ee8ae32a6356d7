//! Independent reference computations used to validate the main paths.
//!
//! None of these call the character-ratio or Fourier-term code they are compared with.

pub mod freudenthal;
pub mod hessian;
pub mod quadrature;
pub mod zeta;

pub use freudenthal::{all_weights, dominant_multiplicities, freudenthal_character};
pub use hessian::{sun_eigenvalue_hessian, FdEstimate};
pub use quadrature::{torus_quadrature_pairing, ClassFunction};
pub use zeta::{bernoulli_number, bernoulli_poly, clausen_sin, zeta_even};
