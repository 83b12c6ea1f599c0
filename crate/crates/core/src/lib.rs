//! Implicit third-order finite-volume schemes for 1D scalar conservation laws.
//!
//! The central scheme advances cell averages on a uniform periodic mesh with
//! a predictor/corrector pipeline:
//!
//! 1. a composite backward-Euler predictor with piecewise-constant data,
//!    solved at the abscissae of a three-stage DIRK method;
//! 2. a DIRK3 corrector whose CWENO3 nonlinear weights are frozen from the
//!    predictor stages, so every stage system is nonlinear only through the
//!    flux function (`D3P1`);
//! 3. a cell-wise nonlinear blending in time between predictor and corrector,
//!    driven by space/time smoothness indicators;
//! 4. a redistribution of the interface mass defect created by the blending,
//!    which makes the final update conservative (`Q3P1`).
//!
//! The crate is `no_std` (it needs `alloc`). IO, CSV output, configuration and
//! the command-line driver live in the `quinpi-cli` crate.

#![no_std]
// `!(x > 0.0)` style guards also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod cweno;
mod error;
pub mod irk;
mod math;
pub mod mesh;
pub mod problem;
pub mod quinpi;
pub mod reference;
pub mod solver;

pub use error::{Error, Result};
pub use mesh::{Grid, StateVector};
pub use problem::{Flux, InitialCondition, Problem};
pub use quinpi::{QuinpiConfig, QuinpiStep};
pub use solver::{Scheme, Solver};
