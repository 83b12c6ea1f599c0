//! Single runs with per-step diagnostics.

use std::time::Instant;

use quinpi_core::mesh::{total_mass, total_variation};
use quinpi_core::{Grid, Solver, StateVector};

use crate::config::RunConfig;
use crate::error::CliError;

#[derive(Clone, Debug, PartialEq)]
pub struct DiagRow {
    pub t: f64,
    /// Mass after the step minus the initial mass.
    pub mass_dev: f64,
    pub tv: f64,
    pub newton_total: usize,
    pub step_seconds: f64,
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    pub grid: Grid,
    pub initial: StateVector,
    pub state: StateVector,
    pub dt: f64,
    pub diag: Vec<DiagRow>,
    /// Iterations of every nonlinear solve, one entry per step.
    pub newton: Vec<Vec<usize>>,
    /// Corrector solves only, one entry per step.
    pub corrector_newton: Vec<Vec<usize>>,
}

impl RunOutput {
    pub fn max_abs_mass_dev(&self) -> f64 {
        self.diag.iter().fold(0.0, |m, r| m.max(r.mass_dev.abs()))
    }

    /// `max(u) - max(u0)`.
    pub fn overshoot(&self) -> f64 {
        self.state.max() - self.initial.max()
    }
}

pub fn run(cfg: &RunConfig) -> Result<RunOutput, CliError> {
    cfg.validate()?;
    let mut solver = Solver::new(&cfg.problem, cfg.n_cells, cfg.scheme.scheme(), cfg.quinpi)?;
    let initial = solver.state.clone();
    let dt = cfg.dt(solver.grid.h(), solver.wave_speed())?;
    let m0 = total_mass(&solver.grid, &initial.values);

    let mut diag = Vec::new();
    let mut newton = Vec::new();
    let mut corrector_newton = Vec::new();
    let mut clock = Instant::now();
    solver.run_until(cfg.t_final, dt, |s, info| {
        let step_seconds = clock.elapsed().as_secs_f64();
        diag.push(DiagRow {
            t: info.time,
            mass_dev: total_mass(&s.grid, &s.state.values) - m0,
            tv: total_variation(&s.state.values),
            newton_total: info.newton_total(),
            step_seconds,
        });
        newton.push(info.newton.clone());
        corrector_newton.push(info.corrector_newton.clone());
        clock = Instant::now();
    })?;
    Ok(RunOutput { grid: solver.grid, initial, state: solver.state, dt, diag, newton, corrector_newton })
}
