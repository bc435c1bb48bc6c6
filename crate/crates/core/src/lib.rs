//! Unruh-DeWitt detector responses for KMS field states: Wightman
//! transforms, finite-time response functions, excitation-to-decay
//! ratios and EDR temperatures, and the weak/strong Anti-Unruh
//! classification of parameter space.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod error;
pub mod quad;
pub mod specfun;
pub mod scenarios;
pub mod switching;
pub mod response;
pub mod series;
pub mod asymptotics;
pub mod antiunruh;
pub mod cli;

pub use error::{Error, Result};
