//! Uniform periodic meshes, cell-average state vectors and the norms and
//! diagnostics computed on them.

use alloc::vec::Vec;

use crate::math;
use crate::{Error, Result};

/// Smallest mesh on which the five-point periodic stencils stay distinct.
pub const MIN_CELLS: usize = 5;

/// Uniform periodic mesh of `n_cells` cells covering `[x_min, x_max]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    x_min: f64,
    x_max: f64,
    n_cells: usize,
    h: f64,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, n_cells: usize) -> Result<Self> {
        if !(x_max > x_min) || !x_min.is_finite() || !x_max.is_finite() || n_cells < MIN_CELLS {
            return Err(Error::InvalidDomain { x_min, x_max, n_cells });
        }
        Ok(Grid { x_min, x_max, n_cells, h: (x_max - x_min) / n_cells as f64 })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn len(&self) -> usize {
        self.n_cells
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Cell width.
    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn length(&self) -> f64 {
        self.x_max - self.x_min
    }

    /// Center of cell `j`.
    pub fn center(&self, j: usize) -> f64 {
        self.x_min + (j as f64 + 0.5) * self.h
    }

    /// Left edge of cell `j` (the interface `j - 1/2`).
    pub fn left_edge(&self, j: usize) -> f64 {
        self.x_min + j as f64 * self.h
    }

    pub fn centers(&self) -> Vec<f64> {
        (0..self.n_cells).map(|j| self.center(j)).collect()
    }

    /// Periodic cell index for a signed offset.
    pub fn wrap(&self, i: isize) -> usize {
        i.rem_euclid(self.n_cells as isize) as usize
    }

    /// Maps `x` into `[x_min, x_max)` by periodicity.
    pub fn wrap_point(&self, x: f64) -> f64 {
        let l = self.length();
        let y = x - l * math::floor((x - self.x_min) / l);
        if y >= self.x_max {
            y - l
        } else {
            y
        }
    }

    /// Cell averages of `u0` computed with 5-point Gauss–Legendre per cell.
    pub fn project(&self, u0: impl Fn(f64) -> f64) -> StateVector {
        let values = (0..self.n_cells)
            .map(|j| {
                let a = self.left_edge(j);
                math::gl5_mean(a, a + self.h, &u0)
            })
            .collect();
        StateVector { values, time: 0.0 }
    }
}

/// Cell averages at one time level.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    pub values: Vec<f64>,
    pub time: f64,
}

impl StateVector {
    pub fn new(values: Vec<f64>, time: f64) -> Self {
        StateVector { values, time }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, found })
    }
}

/// `h * sum |u_j - ref_j|`.
pub fn l1_error(grid: &Grid, values: &[f64], reference: &[f64]) -> Result<f64> {
    check_len(values.len(), reference.len())?;
    Ok(grid.h() * values.iter().zip(reference).map(|(u, r)| (u - r).abs()).sum::<f64>())
}

/// `max |u_j - ref_j|`.
pub fn linf_error(values: &[f64], reference: &[f64]) -> Result<f64> {
    check_len(values.len(), reference.len())?;
    Ok(values.iter().zip(reference).fold(0.0, |m, (u, r)| m.max((u - r).abs())))
}

/// Periodic total variation, wrap-around jump included.
pub fn total_variation(values: &[f64]) -> f64 {
    let n = values.len();
    if n == 0 {
        return 0.0;
    }
    (0..n).map(|j| (values[j] - values[(j + n - 1) % n]).abs()).sum()
}

/// `h * sum u_j`.
pub fn total_mass(grid: &Grid, values: &[f64]) -> f64 {
    grid.h() * values.iter().sum::<f64>()
}

/// Dyadic convergence rate `log2(e_coarse / e_fine)`.
pub fn dyadic_rate(e_coarse: f64, e_fine: f64) -> f64 {
    math::log2(e_coarse / e_fine)
}
