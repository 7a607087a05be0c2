//! Numerical toolkit for the Hahn quantum system.
//!
//! Continuum scattering states of the system are expanded with continuous
//! Hahn polynomials as coefficients; the finite set of bound states uses the
//! discrete Hahn polynomials. This crate evaluates both families, extracts
//! scattering amplitudes and phase shifts, lists bound and resonance spectra,
//! builds the tridiagonal Hamiltonian matrices in Jacobi and Laguerre bases,
//! and reconstructs the associated potential functions.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod basis;
pub mod error;
pub mod figures;
pub mod hamiltonian;
pub mod orthopoly;
pub mod quadrature;
pub mod reconstruct;
pub mod specfun;
pub mod spectra;
pub mod validate;
pub mod wavefn;

pub use error::{HahnError, Result};
pub use num_complex::Complex64;
