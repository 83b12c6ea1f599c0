//! Time stepping driver shared by the schemes.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::cweno::CwenoParams;
use crate::mesh::{Grid, StateVector};
use crate::problem::{max_wave_speed, Flux, Problem};
use crate::quinpi::{corrector_step, predictor_step, q3p1_step, QuinpiConfig};
use crate::reference::ssprk3_step;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Composite backward-Euler predictor alone.
    ImplicitEuler,
    /// Predictor followed by the frozen-weight DIRK3 corrector, unblended.
    D3P1,
    /// Full blended and conservatively corrected scheme.
    Q3P1,
    /// Explicit SSP-RK3 with CWENO3.
    Ssprk3,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::ImplicitEuler => "IE",
            Scheme::D3P1 => "D3P1",
            Scheme::Q3P1 => "Q3P1",
            Scheme::Ssprk3 => "SSPRK3",
        }
    }

    pub fn is_implicit(self) -> bool {
        self != Scheme::Ssprk3
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "IE" => Ok(Scheme::ImplicitEuler),
            "D3P1" => Ok(Scheme::D3P1),
            "Q3P1" => Ok(Scheme::Q3P1),
            "SSPRK3" => Ok(Scheme::Ssprk3),
            _ => Err(Error::InvalidParameter("unknown scheme")),
        }
    }
}

/// What one call to [`Solver::step`] did.
#[derive(Clone, Debug, PartialEq)]
pub struct StepInfo {
    /// 1-based step counter.
    pub step: usize,
    /// Time after the step.
    pub time: f64,
    pub dt: f64,
    /// Iterations of each nonlinear solve, predictor first.
    pub newton: Vec<usize>,
    /// Corrector solves only (empty for `IE` and `SSPRK3`).
    pub corrector_newton: Vec<usize>,
}

impl StepInfo {
    pub fn newton_total(&self) -> usize {
        self.newton.iter().sum()
    }
}

/// Advances one state of a periodic problem with a fixed scheme.
#[derive(Clone, Debug)]
pub struct Solver {
    pub flux: Flux,
    pub grid: Grid,
    pub scheme: Scheme,
    pub config: QuinpiConfig,
    pub state: StateVector,
    steps: usize,
}

impl Solver {
    /// Starts from the projected initial profile of `problem`.
    pub fn new(problem: &Problem, n_cells: usize, scheme: Scheme, config: QuinpiConfig) -> Result<Self> {
        let grid = problem.grid(n_cells)?;
        let state = grid.project(|x| problem.u0(x));
        Ok(Solver { flux: problem.flux, grid, scheme, config, state, steps: 0 })
    }

    pub fn from_state(flux: Flux, grid: Grid, state: StateVector, scheme: Scheme, config: QuinpiConfig) -> Result<Self> {
        if state.len() != grid.len() {
            return Err(Error::LengthMismatch { expected: grid.len(), found: state.len() });
        }
        Ok(Solver { flux, grid, scheme, config, state, steps: 0 })
    }

    pub fn steps_taken(&self) -> usize {
        self.steps
    }

    /// `max_j |f'(u_j)|` of the current state.
    pub fn wave_speed(&self) -> f64 {
        max_wave_speed(self.flux, &self.state.values, 0.0)
    }

    /// Advances the state by `dt`. On error the state is left unchanged.
    pub fn step(&mut self, dt: f64) -> Result<StepInfo> {
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::InvalidParameter("time step must be positive and finite"));
        }
        let u = &self.state.values;
        let h = self.grid.h();
        let alpha = max_wave_speed(self.flux, u, 0.0);
        let (next, newton, corrector_newton) = match self.scheme {
            Scheme::ImplicitEuler => {
                let p = predictor_step(u, h, dt, self.flux, alpha, &self.config)?;
                let its = p.newton.iter().map(|r| r.iterations).collect();
                (p.end_state, its, Vec::new())
            }
            Scheme::D3P1 => {
                let p = predictor_step(u, h, dt, self.flux, alpha, &self.config)?;
                let c = corrector_step(u, &p, h, dt, self.flux, alpha, &self.config)?;
                let cits: Vec<usize> = c.newton.iter().map(|r| r.iterations).collect();
                let its = p.newton.iter().map(|r| r.iterations).chain(cits.iter().copied()).collect();
                (c.end_state, its, cits)
            }
            Scheme::Q3P1 => {
                let s = q3p1_step(u, h, dt, self.flux, &self.config)?;
                let its = s.newton_reports().map(|r| r.iterations).collect();
                let cits = s.corrector.newton.iter().map(|r| r.iterations).collect();
                (s.state, its, cits)
            }
            Scheme::Ssprk3 => {
                let params: CwenoParams = self.config.cweno;
                (ssprk3_step(u, h, dt, self.flux, alpha, &params)?, Vec::new(), Vec::new())
            }
        };
        if !next.iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidParameter("non-finite state produced"));
        }
        self.steps += 1;
        self.state = StateVector::new(next, self.state.time + dt);
        Ok(StepInfo { step: self.steps, time: self.state.time, dt, newton, corrector_newton })
    }

    /// Steps with `dt` until `t_final`, shortening the last step so the run
    /// ends exactly there. `on_step` sees the solver after every step.
    pub fn run_until(&mut self, t_final: f64, dt: f64, mut on_step: impl FnMut(&Solver, &StepInfo)) -> Result<()> {
        if !(dt > 0.0) {
            return Err(Error::InvalidParameter("time step must be positive"));
        }
        while self.state.time < t_final {
            let remaining = t_final - self.state.time;
            // absorb round-off so no sliver step is taken
            let this = if remaining <= dt * (1.0 + 1e-10) { remaining } else { dt };
            let info = self.step(this)?;
            if this == remaining {
                self.state.time = t_final;
            }
            on_step(self, &info);
        }
        Ok(())
    }
}
