use alloc::vec::Vec;

use super::banded::CyclicBandedMatrix;
use super::newton::NonlinearSystem;
use crate::cweno::Reconstruction;
use crate::problem::{lxf_flux, lxf_flux_partials, Flux};
use crate::{Error, Result};

/// Lax–Friedrichs fluxes `F_{j+1/2}` at every periodic interface.
pub fn interface_fluxes(values: &[f64], recon: Reconstruction<'_>, flux: Flux, alpha: f64) -> Result<Vec<f64>> {
    let bed = recon.bed(values)?;
    Ok(bed.minus.iter().zip(&bed.plus).map(|(&l, &r)| lxf_flux(l, r, flux, alpha)).collect())
}

/// `F_{j+1/2} - F_{j-1/2}` per cell.
pub fn flux_differences(fluxes: &[f64]) -> Vec<f64> {
    let n = fluxes.len();
    (0..n).map(|j| fluxes[j] - fluxes[(j + n - 1) % n]).collect()
}

/// One implicit stage `G(u) = u - known + (a_kk dt / h) (F_{j+1/2}(u) - F_{j-1/2}(u))`.
///
/// `known` already folds in `u^n` and the flux differences of earlier stages.
/// The reconstruction is fixed for the stage, so `G` is nonlinear only
/// through the flux and its Jacobian is exact and banded.
#[derive(Clone, Copy, Debug)]
pub struct StageSystem<'a> {
    pub flux: Flux,
    pub alpha: f64,
    pub recon: Reconstruction<'a>,
    pub known: &'a [f64],
    pub a_kk: f64,
    pub dt: f64,
    pub h: f64,
}

impl StageSystem<'_> {
    fn coeff(&self) -> f64 {
        self.a_kk * self.dt / self.h
    }

    fn check(&self, u: &[f64]) -> Result<()> {
        if u.len() != self.known.len() {
            return Err(Error::LengthMismatch { expected: self.known.len(), found: u.len() });
        }
        Ok(())
    }

    /// Residual together with the interface fluxes it was built from.
    pub fn residual_and_fluxes(&self, u: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
        self.check(u)?;
        let f = interface_fluxes(u, self.recon, self.flux, self.alpha)?;
        let c = self.coeff();
        let n = u.len();
        let g = (0..n).map(|j| u[j] - self.known[j] + c * (f[j] - f[(j + n - 1) % n])).collect();
        Ok((g, f))
    }
}

impl NonlinearSystem for StageSystem<'_> {
    fn residual(&self, u: &[f64]) -> Result<Vec<f64>> {
        Ok(self.residual_and_fluxes(u)?.0)
    }

    fn jacobian(&self, u: &[f64]) -> Result<CyclicBandedMatrix> {
        self.check(u)?;
        let n = u.len();
        let bed = self.recon.bed(u)?;
        let c = self.coeff();
        let mut m = CyclicBandedMatrix::identity(n, self.recon.half_bandwidth());
        // dF_i/du as (offset from i, coefficient) pairs, scattered into rows i and i+1
        let mut scatter = |i: usize, entries: &[(isize, f64)]| {
            let down = (i + 1) % n;
            for &(off, v) in entries {
                *m.entry_mut(i, off) += c * v;
                *m.entry_mut(down, off - 1) -= c * v;
            }
        };
        for i in 0..n {
            let (dl, dr) = lxf_flux_partials(bed.minus[i], bed.plus[i], self.flux, self.alpha);
            match self.recon {
                Reconstruction::PiecewiseConstant => scatter(i, &[(0, dl), (1, dr)]),
                Reconstruction::Frozen(w) => {
                    let wm = &w[i].minus;
                    let wp = &w[(i + 1) % n].plus;
                    scatter(
                        i,
                        &[
                            (-1, dl * wm[0]),
                            (0, dl * wm[1] + dr * wp[0]),
                            (1, dl * wm[2] + dr * wp[1]),
                            (2, dr * wp[2]),
                        ],
                    );
                }
            }
        }
        Ok(m)
    }
}
