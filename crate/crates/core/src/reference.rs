//! Reference solutions: the explicit SSP-RK3/CWENO3 scheme, exact solutions
//! where they exist, fine-grid references, and the implicit upwind scheme.

use alloc::vec::Vec;
use core::cell::Cell;

use crate::cweno::{standard_cweno_bed, CwenoParams};
use crate::irk::flux_differences;
use crate::math::{self, gl5_mean};
use crate::mesh::Grid;
use crate::problem::{lxf_flux, max_wave_speed, Flux, InitialCondition, Problem};
use crate::{Error, Result};

/// Explicit stability bound used by [`ssprk3_step`]: `dt <= CFL_SAFETY h / alpha`.
pub const CFL_SAFETY: f64 = 0.9;
/// Courant number of the fine-grid reference runs.
pub const REFERENCE_CFL: f64 = 0.45;
/// Default refinement factor of [`fine_grid_reference`].
pub const DEFAULT_FINE_FACTOR: usize = 16;
/// Pre-shock exact solutions are only served for `t <= SHOCK_MARGIN t*`.
pub const SHOCK_MARGIN: f64 = 0.95;

const SHOCK_SAMPLES: usize = 10_000;
const CHAR_TOL: f64 = 1e-13;
const CHAR_MAX_ITER: usize = 100;

fn cweno_rhs(u: &[f64], h: f64, flux: Flux, alpha: f64, params: &CwenoParams) -> Vec<f64> {
    let bed = standard_cweno_bed(u, h, params);
    let f: Vec<f64> = bed.minus.iter().zip(&bed.plus).map(|(&l, &r)| lxf_flux(l, r, flux, alpha)).collect();
    flux_differences(&f).into_iter().map(|d| -d / h).collect()
}

/// One Shu–Osher SSP-RK3 step with CWENO3 weights recomputed at every stage.
pub fn ssprk3_step(u_n: &[f64], h: f64, dt: f64, flux: Flux, alpha: f64, params: &CwenoParams) -> Result<Vec<f64>> {
    if !(dt > 0.0) {
        return Err(Error::InvalidParameter("time step must be positive"));
    }
    if alpha > 0.0 {
        let limit = CFL_SAFETY * h / alpha;
        if dt > limit {
            return Err(Error::CflViolation { dt, limit });
        }
    }
    let l = |u: &[f64]| cweno_rhs(u, h, flux, alpha, params);
    let k0 = l(u_n);
    let u1: Vec<f64> = u_n.iter().zip(&k0).map(|(u, k)| u + dt * k).collect();
    let k1 = l(&u1);
    let u2: Vec<f64> =
        (0..u_n.len()).map(|j| 0.75 * u_n[j] + 0.25 * (u1[j] + dt * k1[j])).collect();
    let k2 = l(&u2);
    Ok((0..u_n.len()).map(|j| u_n[j] / 3.0 + 2.0 / 3.0 * (u2[j] + dt * k2[j])).collect())
}

/// `u0` advected with unit speed on the periodic domain of `grid`.
pub fn exact_linear(u0: impl Fn(f64) -> f64, x: f64, t: f64, grid: &Grid) -> f64 {
    u0(grid.wrap_point(x - t))
}

/// Time at which characteristics of Burgers' equation `u_t + (u^2/4)_x = 0`
/// first cross, from `u0'` sampled on [`SHOCK_SAMPLES`] points over one period.
/// `None` if no shock forms.
pub fn burgers_shock_time(u0_prime: impl Fn(f64) -> f64, x_min: f64, x_max: f64) -> Option<f64> {
    let dx = (x_max - x_min) / SHOCK_SAMPLES as f64;
    let m = (0..SHOCK_SAMPLES).map(|i| 0.5 * u0_prime(x_min + i as f64 * dx)).fold(f64::INFINITY, f64::min);
    (m < 0.0).then(|| -1.0 / m)
}

/// Solves `u = u0(x - u t / 2)` by damped Newton.
///
/// The caller is responsible for `t` being before the shock; a failed solve
/// is reported as [`Error::CharacteristicsNoConvergence`].
pub fn exact_burgers_preshock(
    u0: impl Fn(f64) -> f64,
    u0_prime: impl Fn(f64) -> f64,
    x: f64,
    t: f64,
) -> Result<f64> {
    let g = |u: f64| u - u0(x - 0.5 * u * t);
    let mut u = u0(x);
    let mut r = g(u);
    for _ in 0..CHAR_MAX_ITER {
        if r.abs() <= CHAR_TOL {
            return Ok(u);
        }
        let dg = 1.0 + 0.5 * t * u0_prime(x - 0.5 * u * t);
        if !(dg.abs() > 0.0) {
            break;
        }
        let step = r / dg;
        let mut lambda = 1.0;
        loop {
            let trial = u - lambda * step;
            let rt = g(trial);
            if rt.abs() < r.abs() || lambda < 1e-6 {
                u = trial;
                r = rt;
                break;
            }
            lambda *= 0.5;
        }
    }
    if r.abs() <= CHAR_TOL {
        Ok(u)
    } else {
        Err(Error::CharacteristicsNoConvergence { x, t })
    }
}

// sub-cells per cell for averaging exact solutions with jumps
const ROUGH_SUBCELLS: usize = 8;

fn averages(grid: &Grid, sub: usize, f: impl Fn(f64) -> Result<f64>) -> Result<Vec<f64>> {
    let hs = grid.h() / sub as f64;
    (0..grid.len())
        .map(|j| {
            let mut acc = 0.0;
            for s in 0..sub {
                let a = grid.left_edge(j) + s as f64 * hs;
                let err = Cell::new(None);
                acc += gl5_mean(a, a + hs, |x| {
                    f(x).unwrap_or_else(|e| {
                        err.set(Some(e));
                        0.0
                    })
                });
                if let Some(e) = err.into_inner() {
                    return Err(e);
                }
            }
            Ok(acc / sub as f64)
        })
        .collect()
}

/// Cell averages of the exact solution at time `t`, where one is available:
/// any profile under linear advection, and smooth profiles under Burgers'
/// equation up to [`SHOCK_MARGIN`] times the shock time.
pub fn exact_cell_averages(problem: &Problem, grid: &Grid, t: f64) -> Result<Vec<f64>> {
    let ic = problem.initial;
    let sub = if ic.is_smooth() { 1 } else { ROUGH_SUBCELLS };
    if t == 0.0 {
        return averages(grid, sub, |x| Ok(ic.eval(x)));
    }
    match problem.flux {
        Flux::LinearAdvection => averages(grid, sub, |x| Ok(exact_linear(|y| ic.eval(y), x, t, grid))),
        Flux::Burgers if ic.is_smooth() => {
            let d = |x: f64| ic.derivative(x).unwrap_or(0.0);
            if let Some(ts) = burgers_shock_time(d, problem.x_min, problem.x_max) {
                if t > SHOCK_MARGIN * ts {
                    return Err(Error::BeyondShockTime { t, shock_time: ts });
                }
            }
            averages(grid, 1, |x| exact_burgers_preshock(|y| ic.eval(y), d, x, t))
        }
        _ => Err(Error::NoExactSolution),
    }
}

/// Averages consecutive blocks of `factor` fine cells.
pub fn block_average(fine: &[f64], factor: usize) -> Result<Vec<f64>> {
    if factor == 0 || !fine.len().is_multiple_of(factor) {
        return Err(Error::InvalidParameter("fine length must be a multiple of the block factor"));
    }
    Ok(fine.chunks(factor).map(|c| c.iter().sum::<f64>() / factor as f64).collect())
}

/// SSP-RK3 solution at `t_final` on a grid `factor` times finer than `grid`,
/// averaged back onto `grid`. The time step is [`REFERENCE_CFL`]`h / alpha`
/// with `alpha` taken from the current state, and the last step is clipped.
pub fn fine_grid_reference(problem: &Problem, grid: &Grid, t_final: f64, factor: usize) -> Result<Vec<f64>> {
    if factor < 8 {
        return Err(Error::InvalidParameter("fine grid must be at least 8 times finer"));
    }
    let fine = Grid::new(grid.x_min(), grid.x_max(), grid.len() * factor)?;
    let mut u = fine.project(|x| problem.u0(x)).values;
    let params = CwenoParams::default();
    let mut t = 0.0;
    while t < t_final {
        let alpha = max_wave_speed(problem.flux, &u, 0.0);
        let full = if alpha > 0.0 { REFERENCE_CFL * fine.h() / alpha } else { t_final - t };
        let dt = full.min(t_final - t);
        u = ssprk3_step(&u, fine.h(), dt, problem.flux, alpha, &params)?;
        t = if t_final - (t + dt) <= 1e-14 * t_final { t_final } else { t + dt };
    }
    block_average(&u, factor)
}

/// Backward-Euler upwind step for `u_t + u_x = 0` at Courant number `nu`:
/// `(1 + nu) u_j - nu u_{j-1} = b_j` on a periodic mesh, solved directly.
pub fn implicit_upwind_step(b: &[f64], nu: f64) -> Vec<f64> {
    let n = b.len();
    if n == 0 {
        return Vec::new();
    }
    let d = 1.0 + nu;
    let r = nu / d;
    // u_0 = sum_k r^k b_{-k} / ((1 + nu)(1 - r^n))
    let mut acc = 0.0;
    let mut rk = 1.0;
    for k in 0..n {
        acc += rk * b[(n - k) % n];
        rk *= r;
    }
    let mut u = Vec::with_capacity(n);
    u.push(acc / (d * (1.0 - math::powi(r, n as i32))));
    for j in 1..n {
        let prev = u[j - 1];
        u.push((b[j] + nu * prev) / d);
    }
    u
}

/// Shock time of `problem` if it is Burgers with a smooth profile.
pub fn shock_time(problem: &Problem) -> Option<f64> {
    match (problem.flux, problem.initial) {
        (Flux::Burgers, ic @ (InitialCondition::SineSmooth | InitialCondition::TwoShock)) => {
            burgers_shock_time(|x| ic.derivative(x).unwrap_or(0.0), problem.x_min, problem.x_max)
        }
        _ => None,
    }
}
