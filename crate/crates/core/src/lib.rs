//! Heisenberg dynamics of linear su(1,1) and su(2) Hamiltonians and the
//! quadrature squeezing of Perelomov, Barut–Girardello and Bloch coherent
//! states.

// NaN must fail parameter checks, and reference constants keep all their digits.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod algebra;
pub mod cli;
pub mod coherent;
pub mod error;
pub mod oracle;
pub mod special;
pub mod squeezing;
pub mod verify;

pub use error::{Error, Result};
