//! Mutually unbiased bases (MUBs), the maximally commuting operator classes
//! built on top of them, and state tomography driven by MUB measurements.
//!
//! The crate is organised bottom-up:
//!
//! - [`matcore`]: dense complex matrices and the handful of linear-algebra
//!   primitives everything else needs.
//! - [`tensors`]: Clebsch–Gordan coefficients and Fano spherical tensor
//!   operators `τ^k_q` in the `|j m⟩` basis (m descending).
//! - [`mub`]: construction and certification of complete MUB families.
//! - [`classes`]: the `d + 1` disjoint classes of `d − 1` commuting,
//!   Hilbert–Schmidt orthogonal observables obtained from a family.
//! - [`tomography`]: expansion, measurement statistics, shot sampling and
//!   linear-inversion reconstruction.
//! - [`tables`]: the literal matrices for spin 1/2, 1, 3/2 and 2, kept
//!   symbolically so they can be printed as well as evaluated.
//! - [`cli`]: the `mubkit` command-line driver.

pub mod classes;
pub mod cli;
pub mod error;
pub mod io;
pub mod matcore;
pub mod mub;
pub mod tables;
pub mod tensors;
pub mod tomography;

pub use error::{Error, Result};
pub use matcore::{ComplexMatrix, Tolerance, C64};
