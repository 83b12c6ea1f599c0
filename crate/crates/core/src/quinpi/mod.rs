//! One time step of the third-order implicit predictor/corrector scheme.
//!
//! The step runs, in order:
//!
//! * [`predictor_step`]: composite backward Euler through the DIRK3
//!   abscissae with piecewise-constant data (`IE`);
//! * [`corrector_step`]: DIRK3 with CWENO3 weights frozen from the matching
//!   predictor stage (`D3P1`);
//! * [`blend`] of the two end states, with cell-wise weights driven by a
//!   time indicator (from the continuous extension of the corrector) and
//!   space indicators over the corrector stages;
//! * [`redistribute`] of the interface [`mass_defect`] left by the blending,
//!   giving the conservative `Q3P1` update.

mod blend;
mod corrector;
mod predictor;

use alloc::vec::Vec;

pub use blend::{
    blend, blend_weights, ce_cubic, mass_defect, redistribute, space_time_indicators,
    time_smoothness_indicator, BlendWeights, CeCubic, SmoothnessIndicators,
};
pub use corrector::corrector_step;
pub use predictor::predictor_step;

use crate::cweno::{CellWeightSet, CwenoParams};
use crate::irk::{flux_differences, NewtonOptions, NewtonReport};
use crate::problem::{max_wave_speed, Flux};
use crate::{Error, Result};

/// How the first-order predictor advances through the stage abscissae.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PredictorKind {
    #[default]
    Implicit,
    /// Forward-Euler substeps at the same abscissae; only for comparison runs.
    Explicit,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuinpiConfig {
    pub cweno: CwenoParams,
    /// `eps_t = dt^eps_t_exponent`.
    pub eps_t_exponent: i32,
    /// Exponent of both blending weight denominators.
    pub tau_t: i32,
    pub conservative_correction: bool,
    pub predictor: PredictorKind,
    /// Upper bound on the low-order linear weight `C_L = min(dt^2, c_low_max)`.
    pub c_low_max: f64,
    pub newton_max_iter: usize,
    /// Newton residual tolerance; `None` means `dt^3`.
    pub newton_tol: Option<f64>,
}

impl Default for QuinpiConfig {
    fn default() -> Self {
        QuinpiConfig {
            cweno: CwenoParams::default(),
            eps_t_exponent: 2,
            tau_t: 2,
            conservative_correction: true,
            predictor: PredictorKind::Implicit,
            c_low_max: 0.5,
            newton_max_iter: 50,
            newton_tol: None,
        }
    }
}

impl QuinpiConfig {
    pub fn newton_options(&self, dt: f64) -> NewtonOptions {
        NewtonOptions { tol: self.newton_tol.unwrap_or(dt * dt * dt), max_iter: self.newton_max_iter }
    }

    pub fn eps_t(&self, dt: f64) -> f64 {
        crate::math::powi(dt, self.eps_t_exponent)
    }

    pub fn c_low(&self, dt: f64) -> f64 {
        (dt * dt).min(self.c_low_max)
    }
}

/// Stage data of one Runge–Kutta step.
///
/// `end_state` is always formed from `end_flux` in conservative form, so it
/// conserves mass exactly even when the stage equations are only solved to
/// the Newton tolerance.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct StageBundle {
    pub stage_states: Vec<Vec<f64>>,
    pub stage_fluxes: Vec<Vec<f64>>,
    /// CWENO weights used by each stage (empty for the predictor).
    pub stage_weights: Vec<Vec<CellWeightSet>>,
    pub end_state: Vec<f64>,
    /// Time-combined interface flux `sum_k b_k F^(k)`.
    pub end_flux: Vec<f64>,
    pub newton: Vec<NewtonReport>,
}

/// `u^n - (dt/h) (F_{j+1/2} - F_{j-1/2})`.
pub(crate) fn conservative_update(u_n: &[f64], flux: &[f64], dt: f64, h: f64) -> Vec<f64> {
    let r = dt / h;
    u_n.iter().zip(flux_differences(flux)).map(|(u, d)| u - r * d).collect()
}

/// `sum_k weights[k] * fluxes[k]` per interface.
pub(crate) fn combine_fluxes(weights: &[f64], fluxes: &[Vec<f64>]) -> Vec<f64> {
    let n = fluxes[0].len();
    (0..n).map(|i| weights.iter().zip(fluxes).map(|(w, f)| w * f[i]).sum()).collect()
}

pub(crate) fn check_newton(report: &NewtonReport, stage: &'static str, index: usize) -> Result<()> {
    if report.converged {
        Ok(())
    } else {
        Err(Error::NewtonFailed {
            stage,
            index,
            iterations: report.iterations,
            residual: report.final_residual_norm,
        })
    }
}

/// Everything produced by one [`q3p1_step`].
#[derive(Clone, Debug, PartialEq)]
pub struct QuinpiStep {
    /// Final update: `Q3P1`, or the plain blend when the correction is disabled.
    pub state: Vec<f64>,
    pub ie: Vec<f64>,
    pub d3p1: Vec<f64>,
    pub blended: Vec<f64>,
    pub predictor: StageBundle,
    pub corrector: StageBundle,
    pub weights: BlendWeights,
    /// Interface mass defect `mu_{j+1/2}`.
    pub mass_defect: Vec<f64>,
    pub alpha: f64,
}

impl QuinpiStep {
    pub fn newton_reports(&self) -> impl Iterator<Item = &NewtonReport> {
        self.predictor.newton.iter().chain(self.corrector.newton.iter())
    }
}

/// Advances `u_n` by `dt` on a mesh of width `h`.
pub fn q3p1_step(u_n: &[f64], h: f64, dt: f64, flux: Flux, config: &QuinpiConfig) -> Result<QuinpiStep> {
    if !(dt > 0.0) {
        return Err(Error::InvalidParameter("time step must be positive"));
    }
    let alpha = max_wave_speed(flux, u_n, 0.0);
    let predictor = predictor_step(u_n, h, dt, flux, alpha, config)?;
    let corrector = corrector_step(u_n, &predictor, h, dt, flux, alpha, config)?;

    let indicators = SmoothnessIndicators::compute(u_n, &corrector, h, dt)?;
    let weights = blend_weights(indicators, dt, config.eps_t(dt), config.tau_t, config.c_low(dt))?;
    let blended = blend(&corrector.end_state, &predictor.end_state, &weights)?;
    let mu = mass_defect(&weights, &corrector.end_flux, &predictor.end_flux, dt, h)?;
    let state = if config.conservative_correction {
        redistribute(&blended, &mu, &weights.high)?
    } else {
        blended.clone()
    };
    Ok(QuinpiStep {
        state,
        ie: predictor.end_state.clone(),
        d3p1: corrector.end_state.clone(),
        blended,
        predictor,
        corrector,
        weights,
        mass_defect: mu,
        alpha,
    })
}
