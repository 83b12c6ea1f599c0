//! Limiting in time: cell-wise blending of the corrector with the predictor,
//! and the conservative redistribution of the mass the blending moves.

use alloc::vec::Vec;

use super::StageBundle;
use crate::irk::{flux_differences, ButcherTableau};
use crate::math::powi;
use crate::{Error, Result};

/// Cubic `p0 + p1 s + p2 s^2 + p3 s^3` in normalised time `s = (t - t^n)/dt`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CeCubic {
    pub coeffs: [f64; 4],
}

impl CeCubic {
    pub fn eval(&self, s: f64) -> f64 {
        let p = &self.coeffs;
        p[0] + s * (p[1] + s * (p[2] + s * p[3]))
    }

    /// `dP/ds`.
    pub fn slope(&self, s: f64) -> f64 {
        let p = &self.coeffs;
        p[1] + s * (2.0 * p[2] + s * 3.0 * p[3])
    }
}

/// Continuous extension of one cell: `P(0) = u_n` and `dP/dt = K_k` at
/// `t^n + c_k dt`, i.e. `dP/ds(c_k) = dt K_k`.
pub fn ce_cubic(u_n: f64, stage_derivatives: [f64; 3], c: [f64; 3], dt: f64) -> Result<CeCubic> {
    if c[0] == c[1] || c[1] == c[2] || c[0] == c[2] {
        return Err(Error::DegenerateAbscissae);
    }
    let y = stage_derivatives.map(|k| dt * k);
    // Newton form of the quadratic dP/ds through (c_k, y_k)
    let d1 = (y[1] - y[0]) / (c[1] - c[0]);
    let d2 = ((y[2] - y[1]) / (c[2] - c[1]) - d1) / (c[2] - c[0]);
    let q2 = d2;
    let q1 = d1 - d2 * (c[0] + c[1]);
    let q0 = y[0] - d1 * c[0] + d2 * c[0] * c[1];
    Ok(CeCubic { coeffs: [u_n, q0, q1 / 2.0, q2 / 3.0] })
}

/// Jiang–Shu indicator of the extension over the step.
///
/// The weights `dt^(2l-1)` cancel against the change of variables, leaving
/// `sum_l int_0^1 (d^l P / ds^l)^2 ds`, evaluated in closed form.
pub fn time_smoothness_indicator(ce: &CeCubic) -> f64 {
    let [_, p1, p2, p3] = ce.coeffs;
    // int_0^1 (a + b s + c s^2)^2
    let (a, b, c) = (p1, 2.0 * p2, 3.0 * p3);
    let first = a * a + a * b + (b * b + 2.0 * a * c) / 3.0 + b * c / 2.0 + c * c / 5.0;
    // int_0^1 (d + e s)^2
    let (d, e) = (2.0 * p2, 6.0 * p3);
    let second = d * d + d * e + e * e / 3.0;
    let third = 36.0 * p3 * p3;
    first + second + third
}

/// Squared jumps toward the left and right neighbours summed over the given
/// time levels, returned as `(I^{x,-}, I^{x,+})` per cell.
pub fn space_time_indicators(levels: &[&[f64]]) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = levels.first().map_or(0, |l| l.len());
    if let Some(bad) = levels.iter().find(|l| l.len() != n) {
        return Err(Error::LengthMismatch { expected: n, found: bad.len() });
    }
    let mut minus = alloc::vec![0.0; n];
    let mut plus = alloc::vec![0.0; n];
    for u in levels {
        for j in 0..n {
            let dl = u[(j + n - 1) % n] - u[j];
            let dr = u[(j + 1) % n] - u[j];
            minus[j] += dl * dl;
            plus[j] += dr * dr;
        }
    }
    Ok((minus, plus))
}

/// Per-cell smoothness measures of the corrector over one step.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SmoothnessIndicators {
    pub time: Vec<f64>,
    pub space_minus: Vec<f64>,
    pub space_plus: Vec<f64>,
    /// `time + space_minus + space_plus`.
    pub total: Vec<f64>,
}

impl SmoothnessIndicators {
    pub fn from_parts(time: Vec<f64>, space_minus: Vec<f64>, space_plus: Vec<f64>) -> Self {
        let total = (0..time.len()).map(|j| time[j] + space_minus[j] + space_plus[j]).collect();
        SmoothnessIndicators { time, space_minus, space_plus, total }
    }

    /// Indicators of a DIRK3 corrector step started from `u_n`: the time part
    /// from each cell's continuous extension, the space part from `u_n`, the
    /// first two stages and the end state.
    pub fn compute(u_n: &[f64], corrector: &StageBundle, h: f64, dt: f64) -> Result<Self> {
        let tab = ButcherTableau::dirk3();
        if corrector.stage_fluxes.len() != 3 {
            return Err(Error::LengthMismatch { expected: 3, found: corrector.stage_fluxes.len() });
        }
        let c = [tab.c()[0], tab.c()[1], tab.c()[2]];
        let rates: Vec<Vec<f64>> = corrector
            .stage_fluxes
            .iter()
            .map(|f| flux_differences(f).into_iter().map(|d| -d / h).collect())
            .collect();
        let time = (0..u_n.len())
            .map(|j| {
                let ce = ce_cubic(u_n[j], [rates[0][j], rates[1][j], rates[2][j]], c, dt)?;
                Ok(time_smoothness_indicator(&ce))
            })
            .collect::<Result<Vec<f64>>>()?;
        let levels = [u_n, &corrector.stage_states[0], &corrector.stage_states[1], &corrector.end_state];
        let (minus, plus) = space_time_indicators(&levels)?;
        Ok(Self::from_parts(time, minus, plus))
    }
}

/// Blending weights between the high-order (`D3P1`) and low-order (`IE`) end states.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BlendWeights {
    pub high: Vec<f64>,
    pub low: Vec<f64>,
    pub c_high: f64,
    pub c_low: f64,
    pub eps_t: f64,
    pub indicators: SmoothnessIndicators,
}

/// `w~L = C_L / eps_t^tau`, `w~H = C_H / (eps_t + I)^tau`, normalised per cell.
pub fn blend_weights(
    indicators: SmoothnessIndicators,
    dt: f64,
    eps_t: f64,
    tau: i32,
    c_low: f64,
) -> Result<BlendWeights> {
    if !(dt > 0.0) || !(eps_t > 0.0) {
        return Err(Error::InvalidParameter("blending needs dt > 0 and eps_t > 0"));
    }
    if !(c_low > 0.0 && c_low < 1.0) {
        return Err(Error::InvalidParameter("low-order linear weight must lie in (0,1)"));
    }
    let c_high = 1.0 - c_low;
    let wl = c_low / powi(eps_t, tau);
    let (high, low) = indicators
        .total
        .iter()
        .map(|&i3| {
            let wh = c_high / powi(eps_t + i3, tau);
            let s = wh + wl;
            (wh / s, wl / s)
        })
        .unzip();
    Ok(BlendWeights { high, low, c_high, c_low, eps_t, indicators })
}

fn same_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, found })
    }
}

/// `u^B = (w^H / C_H)(u^D - C_L u^IE) + w^L u^IE`.
pub fn blend(u_high: &[f64], u_low: &[f64], w: &BlendWeights) -> Result<Vec<f64>> {
    same_len(u_high.len(), u_low.len())?;
    same_len(u_high.len(), w.high.len())?;
    Ok((0..u_high.len())
        .map(|j| w.high[j] / w.c_high * (u_high[j] - w.c_low * u_low[j]) + w.low[j] * u_low[j])
        .collect())
}

/// Interface mass defect `mu_{j+1/2}` created by blending cell by cell.
pub fn mass_defect(w: &BlendWeights, flux_high: &[f64], flux_low: &[f64], dt: f64, h: f64) -> Result<Vec<f64>> {
    let n = w.high.len();
    same_len(n, flux_high.len())?;
    same_len(n, flux_low.len())?;
    let scale = dt / (w.c_high * h);
    Ok((0..n)
        .map(|j| {
            let r = (j + 1) % n;
            let dh = w.high[j] - w.high[r];
            let dl = w.low[j] - w.low[r];
            scale * (dh * flux_high[j] + (w.c_high * dl - w.c_low * dh) * flux_low[j])
        })
        .collect())
}

/// Returns each interface defect to its two cells in proportion to their
/// high-order weights.
pub fn redistribute(u_blended: &[f64], mu: &[f64], w_high: &[f64]) -> Result<Vec<f64>> {
    let n = u_blended.len();
    same_len(n, mu.len())?;
    same_len(n, w_high.len())?;
    let share = |a: f64, b: f64| if a + b > 0.0 { a / (a + b) } else { 0.5 };
    Ok((0..n)
        .map(|j| {
            let (l, r) = ((j + n - 1) % n, (j + 1) % n);
            u_blended[j] + share(w_high[j], w_high[r]) * mu[j] + share(w_high[j], w_high[l]) * mu[l]
        })
        .collect())
}
