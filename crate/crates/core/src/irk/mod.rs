//! Diagonally implicit Runge–Kutta machinery: tableaux, stage systems with
//! analytic banded Jacobians, Newton iteration and a periodic banded solver.

mod banded;
mod newton;
mod stage;
mod tableau;

pub use banded::CyclicBandedMatrix;
pub use newton::{newton_solve, NewtonOptions, NewtonReport, NonlinearSystem};
pub use stage::{flux_differences, interface_fluxes, StageSystem};
pub use tableau::{ButcherTableau, DIRK3_LAMBDA};
