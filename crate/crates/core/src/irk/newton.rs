use alloc::vec::Vec;

use super::banded::CyclicBandedMatrix;
use crate::math::norm_inf;
use crate::Result;

/// A square nonlinear system `G(u) = 0` with a periodic banded Jacobian.
pub trait NonlinearSystem {
    fn residual(&self, u: &[f64]) -> Result<Vec<f64>>;
    fn jacobian(&self, u: &[f64]) -> Result<CyclicBandedMatrix>;
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NewtonOptions {
    pub tol: f64,
    pub max_iter: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct NewtonReport {
    /// Number of linear solves performed.
    pub iterations: usize,
    pub final_residual_norm: f64,
    /// `max |delta| / max |u|` of the last update (0 when no update was made).
    pub last_relative_update: f64,
    pub converged: bool,
}

/// Residuals below `ROUNDOFF_FLOOR * max(1, max |u|)` are treated as solved.
pub const ROUNDOFF_FLOOR: f64 = 1e-14;

/// Halvings tried before the shortest step is taken as is.
const MAX_BACKTRACKS: usize = 12;
/// Sufficient-decrease constant of the line search.
const ARMIJO_C: f64 = 1e-4;

fn norm2_sq(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

/// Newton iteration from `guess`.
///
/// An iterate produced by at least one update is accepted once
/// `max |G(u)| <= tol`. Only a residual at round-off level is accepted
/// without any update, so a loose `tol` never returns the guess untouched and
/// an affine system finishes after exactly one solve. An update whose relative
/// size `max |delta| / max |u|` is at round-off level stops the loop, and
/// `converged` then reflects the residual test.
///
/// The Newton step is halved until `|G|_2` drops by a sufficient amount, so
/// far from the root (non-convex fluxes at large time steps) the iteration
/// does not run away; near the root the full step is always taken. Running out of iterations or a
/// non-finite residual returns the last iterate with `converged == false`;
/// linear solver failures propagate.
pub fn newton_solve<S: NonlinearSystem + ?Sized>(
    system: &S,
    guess: Vec<f64>,
    opts: NewtonOptions,
) -> Result<(Vec<f64>, NewtonReport)> {
    let mut u = guess;
    let mut report = NewtonReport::default();
    let mut g = system.residual(&u)?;
    loop {
        let r = norm_inf(&g);
        report.final_residual_norm = r;
        if !r.is_finite() {
            report.converged = false;
            return Ok((u, report));
        }
        let floor = opts.tol.min(ROUNDOFF_FLOOR * norm_inf(&u).max(1.0));
        let updated = report.iterations > 0;
        if r <= floor || (updated && r <= opts.tol) {
            report.converged = true;
            return Ok((u, report));
        }
        if updated && report.last_relative_update <= 4.0 * f64::EPSILON {
            report.converged = r <= opts.tol;
            return Ok((u, report));
        }
        if report.iterations >= opts.max_iter {
            report.converged = false;
            return Ok((u, report));
        }
        let jac = system.jacobian(&u)?;
        let mut delta = jac.solve(&g)?;
        let g_sq = norm2_sq(&g);
        let mut step = 1.0;
        let mut halvings = 0;
        let (u_next, g_next) = loop {
            let trial: Vec<f64> = u.iter().zip(&delta).map(|(ui, di)| ui - step * di).collect();
            let g_trial = system.residual(&trial)?;
            let factor = 1.0 - ARMIJO_C * step;
            if norm2_sq(&g_trial) <= factor * factor * g_sq || halvings == MAX_BACKTRACKS {
                break (trial, g_trial);
            }
            step *= 0.5;
            halvings += 1;
        };
        delta.iter_mut().for_each(|d| *d *= step);
        u = u_next;
        g = g_next;
        report.iterations += 1;
        report.last_relative_update = norm_inf(&delta) / norm_inf(&u).max(f64::MIN_POSITIVE);
    }
}
