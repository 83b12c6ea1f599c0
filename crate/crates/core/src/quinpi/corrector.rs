use alloc::vec::Vec;

use super::{check_newton, combine_fluxes, conservative_update, QuinpiConfig, StageBundle};
use crate::cweno::{weight_sets, Reconstruction};
use crate::irk::{flux_differences, newton_solve, ButcherTableau, StageSystem};
use crate::problem::Flux;
use crate::{Error, Result};

/// Third-order correction: DIRK3 stages with CWENO3 reconstruction whose
/// nonlinear weights are computed from the predictor stage at the same
/// abscissa and kept fixed while the stage is solved.
///
/// Stage `k` starts Newton from predictor stage `k`. For a linear flux each
/// stage system is affine and Newton finishes in one iteration.
pub fn corrector_step(
    u_n: &[f64],
    predictor: &StageBundle,
    h: f64,
    dt: f64,
    flux: Flux,
    alpha: f64,
    config: &QuinpiConfig,
) -> Result<StageBundle> {
    let tableau = ButcherTableau::dirk3();
    let s = tableau.stages();
    if predictor.stage_states.len() != s {
        return Err(Error::LengthMismatch { expected: s, found: predictor.stage_states.len() });
    }
    let n = u_n.len();
    let opts = config.newton_options(dt);
    let r = dt / h;

    let mut bundle = StageBundle::default();
    let mut differences: Vec<Vec<f64>> = Vec::with_capacity(s);
    for k in 0..s {
        let weights = weight_sets(&predictor.stage_states[k], h, &config.cweno);
        let known: Vec<f64> = (0..n)
            .map(|j| u_n[j] - r * (0..k).map(|l| tableau.a(k, l) * differences[l][j]).sum::<f64>())
            .collect();
        let system = StageSystem {
            flux,
            alpha,
            recon: Reconstruction::Frozen(&weights),
            known: &known,
            a_kk: tableau.a(k, k),
            dt,
            h,
        };
        let (u, report) = newton_solve(&system, predictor.stage_states[k].clone(), opts)?;
        check_newton(&report, "corrector", k)?;
        let (_, fluxes) = system.residual_and_fluxes(&u)?;
        differences.push(flux_differences(&fluxes));
        bundle.newton.push(report);
        bundle.stage_fluxes.push(fluxes);
        bundle.stage_states.push(u);
        bundle.stage_weights.push(weights);
    }
    bundle.end_flux = combine_fluxes(tableau.b(), &bundle.stage_fluxes);
    bundle.end_state = conservative_update(u_n, &bundle.end_flux, dt, h);
    Ok(bundle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quinpi::predictor_step;

    #[test]
    fn rejects_short_predictor() {
        let pred = StageBundle { stage_states: alloc::vec![alloc::vec![0.0; 8]], ..StageBundle::default() };
        let err = corrector_step(&[0.0; 8], &pred, 0.1, 0.1, Flux::Burgers, 1.0, &QuinpiConfig::default());
        assert!(matches!(err, Err(Error::LengthMismatch { expected: 3, found: 1 })));
    }

    #[test]
    fn constant_state_uses_linear_weights() {
        let cfg = QuinpiConfig::default();
        let u = [1.25; 12];
        let pred = predictor_step(&u, 0.1, 0.3, Flux::Burgers, 0.625, &cfg).unwrap();
        let c = corrector_step(&u, &pred, 0.1, 0.3, Flux::Burgers, 0.625, &cfg).unwrap();
        assert!(c.end_state.iter().all(|v| (v - 1.25).abs() < 1e-14));
        for set in c.stage_weights.iter().flatten() {
            assert!((set.w0 - 0.5).abs() < 1e-15 && (set.wr - 0.25).abs() < 1e-15);
        }
    }
}
