//! Polar decompositions and the mean, Duggal and Aluthge transforms of
//! complex square matrices, with operator-class predicates, joint point
//! spectra, inverse problems for the mean transform and a randomized
//! theorem harness.

pub mod classify;
pub mod cli;
pub mod error;
pub mod generators;
pub mod inverse_solve;
pub mod io;
pub mod matrix_core;
pub mod polar;
pub mod spectra;
pub mod tolerance;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};
pub use matrix_core::{CMatrix, CVector, C64};
pub use tolerance::ToleranceContext;
