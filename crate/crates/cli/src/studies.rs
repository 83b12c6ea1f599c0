//! Convergence, timing and Newton-iteration studies.

use std::thread;
use std::time::Instant;

use quinpi_core::mesh::{dyadic_rate, l1_error, linf_error};
use quinpi_core::problem::max_wave_speed;
use quinpi_core::reference::{exact_cell_averages, REFERENCE_CFL};
use quinpi_core::{Error, Scheme, Solver};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::runner::run;

pub const DEFAULT_CONVERGENCE_NS: [usize; 5] = [64, 128, 256, 512, 1024];
pub const DEFAULT_TIMING_NS: [usize; 4] = [200, 400, 800, 1600];
pub const DEFAULT_TIMING_STEPS: usize = 21;
const WARMUP_STEPS: usize = 3;

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub l1: f64,
    /// Rate against the previous (coarser) row.
    pub l1_rate: Option<f64>,
    pub linf: f64,
    pub linf_rate: Option<f64>,
}

fn check_dyadic(ns: &[usize]) -> Result<(), CliError> {
    if ns.is_empty() || ns.windows(2).any(|w| w[1] != 2 * w[0]) {
        return Err(CliError::config("grid sizes must be a dyadic sequence, each twice the previous"));
    }
    Ok(())
}

/// Errors against the exact cell averages at `t_final` on each grid in `ns`,
/// computed concurrently.
pub fn convergence_study(template: &RunConfig, ns: &[usize]) -> Result<Vec<ConvergenceRow>, CliError> {
    check_dyadic(ns)?;
    // fail before any work if there is nothing to compare against
    let probe = template.problem.grid(ns[0])?;
    exact_cell_averages(&template.problem, &probe, template.t_final).map_err(|e| match e {
        Error::NoExactSolution | Error::BeyondShockTime { .. } => {
            CliError::config(format!("convergence study needs an exact solution: {e}"))
        }
        other => CliError::Solver(other),
    })?;

    let errors: Vec<Result<(f64, f64), CliError>> = thread::scope(|scope| {
        let handles: Vec<_> = ns
            .iter()
            .map(|&n| {
                scope.spawn(move || {
                    let cfg = RunConfig { n_cells: n, ..template.clone() };
                    let out = run(&cfg)?;
                    let exact = exact_cell_averages(&cfg.problem, &out.grid, cfg.t_final)?;
                    Ok((l1_error(&out.grid, &out.state.values, &exact)?, linf_error(&out.state.values, &exact)?))
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("study thread panicked")).collect()
    });

    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(ns.len());
    for (&n, e) in ns.iter().zip(errors) {
        let (l1, linf) = e?;
        let prev = rows.last();
        rows.push(ConvergenceRow {
            n,
            l1,
            l1_rate: prev.map(|p| dyadic_rate(p.l1, l1)),
            linf,
            linf_rate: prev.map(|p| dyadic_rate(p.linf, linf)),
        });
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TimingRow {
    pub n: usize,
    /// Median seconds per SSP-RK3 step.
    pub explicit: f64,
    /// Median seconds per step of the configured implicit scheme.
    pub implicit: f64,
    pub ratio: f64,
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

fn step_times(mut solver: Solver, dt: f64, steps: usize) -> Result<f64, CliError> {
    for _ in 0..WARMUP_STEPS {
        solver.step(dt)?;
    }
    let mut times = Vec::with_capacity(steps);
    for _ in 0..steps {
        let t0 = Instant::now();
        solver.step(dt)?;
        times.push(t0.elapsed().as_secs_f64());
    }
    Ok(median(times))
}

/// Median per-step wall-clock of SSP-RK3 (at the reference Courant number)
/// and of the configured implicit scheme, grid by grid and sequentially.
pub fn timing_study(template: &RunConfig, ns: &[usize], steps: usize) -> Result<Vec<TimingRow>, CliError> {
    if !template.scheme.scheme().is_implicit() {
        return Err(CliError::config("timing study compares an implicit scheme against SSPRK3"));
    }
    if steps == 0 || ns.is_empty() {
        return Err(CliError::config("timing study needs at least one grid and one step"));
    }
    ns.iter()
        .map(|&n| {
            let cfg = RunConfig { n_cells: n, ..template.clone() };
            cfg.validate()?;
            let implicit_solver = Solver::new(&cfg.problem, n, cfg.scheme.scheme(), cfg.quinpi)?;
            let alpha0 = max_wave_speed(cfg.problem.flux, &implicit_solver.state.values, 0.0);
            let h = implicit_solver.grid.h();
            let implicit = step_times(implicit_solver, cfg.dt(h, alpha0)?, steps)?;
            let explicit_solver = Solver::new(&cfg.problem, n, Scheme::Ssprk3, cfg.quinpi)?;
            // the state moves, so leave room below the stability bound
            let explicit = step_times(explicit_solver, REFERENCE_CFL * h / alpha0.max(1e-12), steps)?;
            Ok(TimingRow { n, explicit, implicit, ratio: implicit / explicit })
        })
        .collect()
}

/// Total Newton iterations of each time step.
pub fn newton_log(cfg: &RunConfig) -> Result<Vec<usize>, CliError> {
    if !cfg.scheme.scheme().is_implicit() {
        return Err(CliError::config("newton-log needs an implicit scheme"));
    }
    Ok(run(cfg)?.newton.iter().map(|s| s.iter().sum()).collect())
}
