//! Periodic prolate (time-frequency limiting) matrices, DFT submatrices and
//! certified bounds on how their spectra cluster at zero and one.
//!
//! The crate builds the matrices ([`kernels`]), computes full spectra with
//! two independent dense solvers ([`eigen`]), evaluates and checks the
//! transition-band bound ([`bounds`]), materializes the low-rank plus
//! small-tail split between the periodic and classical prolate matrices
//! ([`lowrank`]), and recovers the tridiagonal matrix that commutes with a
//! periodic prolate matrix ([`commuting`]).

pub mod bounds;
pub mod commuting;
pub mod eigen;
pub mod error;
pub mod kernels;
pub mod linalg;
pub mod lowrank;

pub use error::{Error, Result};
pub use kernels::{ProlateParams, SymbolMatrix};
pub use linalg::{ComplexMatrix, DenseMatrix};
