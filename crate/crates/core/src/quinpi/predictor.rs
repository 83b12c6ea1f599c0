use alloc::vec::Vec;

use super::{check_newton, combine_fluxes, conservative_update, PredictorKind, QuinpiConfig, StageBundle};
use crate::cweno::Reconstruction;
use crate::irk::{flux_differences, interface_fluxes, newton_solve, ButcherTableau, StageSystem};
use crate::problem::Flux;
use crate::Result;

/// First-order predictor: chained Euler substeps from `t^n` through the
/// sorted DIRK3 abscissae, piecewise-constant data and Lax–Friedrichs flux.
///
/// With [`PredictorKind::Implicit`] each substep is a backward-Euler solve
/// whose Newton guess is the previous substep. `stage_states[k]` approximates
/// the solution at `t^n + c~_k dt`.
pub fn predictor_step(
    u_n: &[f64],
    h: f64,
    dt: f64,
    flux: Flux,
    alpha: f64,
    config: &QuinpiConfig,
) -> Result<StageBundle> {
    let tableau = ButcherTableau::composite_euler(&ButcherTableau::dirk3())?;
    let theta = tableau.b();
    let opts = config.newton_options(dt);
    let recon = Reconstruction::PiecewiseConstant;

    let mut bundle = StageBundle::default();
    let mut prev = u_n.to_vec();
    for (k, &th) in theta.iter().enumerate() {
        let (state, fluxes) = match config.predictor {
            PredictorKind::Implicit => {
                let system = StageSystem { flux, alpha, recon, known: &prev, a_kk: th, dt, h };
                let (u, report) = newton_solve(&system, prev.clone(), opts)?;
                check_newton(&report, "predictor", k)?;
                bundle.newton.push(report);
                let f = interface_fluxes(&u, recon, flux, alpha)?;
                (u, f)
            }
            PredictorKind::Explicit => {
                let f = interface_fluxes(&prev, recon, flux, alpha)?;
                let r = th * dt / h;
                let u: Vec<f64> = prev.iter().zip(flux_differences(&f)).map(|(u, d)| u - r * d).collect();
                (u, f)
            }
        };
        bundle.stage_fluxes.push(fluxes);
        bundle.stage_states.push(state.clone());
        prev = state;
    }
    bundle.end_flux = combine_fluxes(theta, &bundle.stage_fluxes);
    bundle.end_state = conservative_update(u_n, &bundle.end_flux, dt, h);
    Ok(bundle)
}
