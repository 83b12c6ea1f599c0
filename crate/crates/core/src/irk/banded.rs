//! Periodic banded matrices and their direct solution.
//!
//! A stencil operator on a periodic mesh has a banded Jacobian plus corner
//! blocks that couple the first and last `p` unknowns. The solver factors the
//! non-periodic band with partial pivoting and folds the corners back in with
//! a Woodbury correction of rank `2p`. Small systems go through dense
//! elimination instead.

use alloc::vec;
use alloc::vec::Vec;

use crate::math::norm_inf;
use crate::{Error, Result};

/// Largest dimension solved by dense elimination in [`CyclicBandedMatrix::solve`].
pub const DENSE_LIMIT: usize = 64;

const PIVOT_RTOL: f64 = 1e-14;

/// `n x n` matrix whose row `i` has entries only in columns `i-p..=i+p` taken
/// modulo `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct CyclicBandedMatrix {
    n: usize,
    p: usize,
    band: Vec<f64>,
}

impl CyclicBandedMatrix {
    pub fn zeros(n: usize, half_bandwidth: usize) -> Self {
        assert!(n > 2 * half_bandwidth, "dimension too small for the band");
        CyclicBandedMatrix { n, p: half_bandwidth, band: vec![0.0; n * (2 * half_bandwidth + 1)] }
    }

    pub fn identity(n: usize, half_bandwidth: usize) -> Self {
        let mut m = Self::zeros(n, half_bandwidth);
        for i in 0..n {
            *m.entry_mut(i, 0) = 1.0;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn half_bandwidth(&self) -> usize {
        self.p
    }

    fn width(&self) -> usize {
        2 * self.p + 1
    }

    /// Entry in row `i` at column `i + offset (mod n)`.
    pub fn entry(&self, i: usize, offset: isize) -> f64 {
        self.band[i * self.width() + (offset + self.p as isize) as usize]
    }

    pub fn entry_mut(&mut self, i: usize, offset: isize) -> &mut f64 {
        let w = self.width();
        &mut self.band[i * w + (offset + self.p as isize) as usize]
    }

    fn col(&self, i: usize, offset: isize) -> usize {
        (i as isize + offset).rem_euclid(self.n as isize) as usize
    }

    fn offsets(&self) -> core::ops::RangeInclusive<isize> {
        -(self.p as isize)..=self.p as isize
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.offsets().map(|k| self.entry(i, k) * x[self.col(i, k)]).sum())
            .collect()
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<f64> {
        let n = self.n;
        let mut d = vec![0.0; n * n];
        for i in 0..n {
            for k in self.offsets() {
                d[i * n + self.col(i, k)] += self.entry(i, k);
            }
        }
        d
    }

    /// Max absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.n)
            .map(|i| self.offsets().map(|k| self.entry(i, k).abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    fn scale(&self) -> f64 {
        norm_inf(&self.band).max(f64::MIN_POSITIVE)
    }

    /// Solves `M x = rhs`.
    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        if rhs.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, found: rhs.len() });
        }
        if self.n <= DENSE_LIMIT {
            dense_solve(self.to_dense(), self.n, rhs.to_vec(), self.scale())
        } else {
            self.solve_woodbury(rhs)
        }
    }

    /// Banded LU of the non-periodic part plus a Woodbury correction for the
    /// corner blocks, at any size.
    pub fn solve_woodbury(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        let n = self.n;
        let p = self.p;
        if rhs.len() != n {
            return Err(Error::LengthMismatch { expected: n, found: rhs.len() });
        }
        let scale = self.scale();

        // split M = B + U V^T; U picks the rows that wrap, V^T holds their corner entries
        let mut inner = BandLu::zeros(n, p, p);
        let wrap_rows: Vec<usize> = (0..p).chain(n - p..n).collect();
        let mut corner = vec![Vec::new(); wrap_rows.len()];
        for i in 0..n {
            for k in self.offsets() {
                let j = i as isize + k;
                let v = self.entry(i, k);
                if (0..n as isize).contains(&j) {
                    inner.set(i, j as usize, v);
                } else if v != 0.0 {
                    let r = wrap_rows.iter().position(|&r| r == i).expect("wrapping row");
                    corner[r].push((self.col(i, k), v));
                }
            }
        }
        inner.factor(scale)?;

        let y = inner.solve(rhs.to_vec());
        if corner.iter().all(|c| c.is_empty()) {
            return Ok(y);
        }
        let m = wrap_rows.len();
        let z: Vec<Vec<f64>> = wrap_rows
            .iter()
            .map(|&r| {
                let mut e = vec![0.0; n];
                e[r] = 1.0;
                inner.solve(e)
            })
            .collect();
        let vt = |r: usize, x: &[f64]| corner[r].iter().map(|&(c, v)| v * x[c]).sum::<f64>();
        // capacitance S = I + V^T Z
        let mut s = vec![0.0; m * m];
        for r in 0..m {
            for (q, zq) in z.iter().enumerate() {
                s[r * m + q] = vt(r, zq) + if r == q { 1.0 } else { 0.0 };
            }
        }
        let g: Vec<f64> = (0..m).map(|r| vt(r, &y)).collect();
        let w = dense_solve(s, m, g, 1.0)?;
        Ok((0..n).map(|i| y[i] - (0..m).map(|q| z[q][i] * w[q]).sum::<f64>()).collect())
    }
}

/// Gaussian elimination with partial pivoting on a row-major matrix.
fn dense_solve(mut a: Vec<f64>, n: usize, mut b: Vec<f64>, scale: f64) -> Result<Vec<f64>> {
    for k in 0..n {
        let piv = (k..n)
            .max_by(|&i, &j| a[i * n + k].abs().total_cmp(&a[j * n + k].abs()))
            .expect("non-empty");
        let pv = a[piv * n + k];
        if !(pv.abs() > PIVOT_RTOL * scale) {
            return Err(Error::SingularMatrix { pivot: pv, scale });
        }
        if piv != k {
            for j in 0..n {
                a.swap(k * n + j, piv * n + j);
            }
            b.swap(k, piv);
        }
        for i in k + 1..n {
            let f = a[i * n + k] / pv;
            if f != 0.0 {
                for j in k + 1..n {
                    a[i * n + j] -= f * a[k * n + j];
                }
                b[i] -= f * b[k];
            }
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| a[i * n + j] * x[j]).sum();
        x[i] = (b[i] - s) / a[i * n + i];
    }
    Ok(x)
}

/// LU with partial pivoting of a (non-periodic) band matrix with `kl` sub- and
/// `ku` super-diagonals. Row interchanges widen the upper band to `ku + kl`.
struct BandLu {
    n: usize,
    kl: usize,
    ku: usize,
    // row i, column j at i*w + (j + kl - i), j - i in [-kl, ku + kl]
    rows: Vec<f64>,
    mult: Vec<f64>,
    piv: Vec<usize>,
}

impl BandLu {
    fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        let w = 2 * kl + ku + 1;
        BandLu { n, kl, ku, rows: vec![0.0; n * w], mult: vec![0.0; n * kl], piv: vec![0; n] }
    }

    fn width(&self) -> usize {
        2 * self.kl + self.ku + 1
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        i * self.width() + (j + self.kl - i)
    }

    fn set(&mut self, i: usize, j: usize, v: f64) {
        let k = self.idx(i, j);
        self.rows[k] = v;
    }

    fn get(&self, i: usize, j: usize) -> f64 {
        self.rows[self.idx(i, j)]
    }

    fn factor(&mut self, scale: f64) -> Result<()> {
        let n = self.n;
        let upper = self.ku + self.kl;
        for k in 0..n {
            let last = (k + self.kl).min(n - 1);
            let mut piv = k;
            for i in k + 1..=last {
                if self.get(i, k).abs() > self.get(piv, k).abs() {
                    piv = i;
                }
            }
            self.piv[k] = piv;
            let pv = self.get(piv, k);
            if !(pv.abs() > PIVOT_RTOL * scale) {
                return Err(Error::SingularMatrix { pivot: pv, scale });
            }
            let jmax = (k + upper).min(n - 1);
            if piv != k {
                for j in k..=jmax {
                    let (a, b) = (self.idx(k, j), self.idx(piv, j));
                    self.rows.swap(a, b);
                }
            }
            for i in k + 1..=last {
                let f = self.get(i, k) / pv;
                self.mult[k * self.kl + (i - k - 1)] = f;
                if f != 0.0 {
                    for j in k + 1..=jmax {
                        let v = self.get(i, j) - f * self.get(k, j);
                        self.set(i, j, v);
                    }
                }
            }
        }
        Ok(())
    }

    fn solve(&self, mut b: Vec<f64>) -> Vec<f64> {
        let n = self.n;
        for k in 0..n {
            b.swap(k, self.piv[k]);
            let last = (k + self.kl).min(n - 1);
            for i in k + 1..=last {
                b[i] -= self.mult[k * self.kl + (i - k - 1)] * b[k];
            }
        }
        let upper = self.ku + self.kl;
        for i in (0..n).rev() {
            let jmax = (i + upper).min(n - 1);
            let s: f64 = (i + 1..=jmax).map(|j| self.get(i, j) * b[j]).sum();
            b[i] = (b[i] - s) / self.get(i, i);
        }
        b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_solve_returns_rhs() {
        for n in [5, 70] {
            let m = CyclicBandedMatrix::identity(n, 2);
            let rhs: Vec<f64> = (0..n).map(|i| i as f64 - 3.5).collect();
            assert_eq!(m.solve(&rhs).unwrap(), rhs);
            assert_eq!(m.solve_woodbury(&rhs).unwrap(), rhs);
        }
    }

    #[test]
    fn upwind_bidiagonal_with_corner() {
        // (1 + c) u_j - c u_{j-1} = r_j; u = 1 solves r = 1
        let n = 100;
        let c = 50.0;
        let mut m = CyclicBandedMatrix::zeros(n, 1);
        for i in 0..n {
            *m.entry_mut(i, 0) = 1.0 + c;
            *m.entry_mut(i, -1) = -c;
        }
        let x = m.solve(&vec![1.0; n]).unwrap();
        assert!(x.iter().all(|v| (v - 1.0).abs() < 1e-12));
    }

    #[test]
    fn singular_matrix_is_reported() {
        let m = CyclicBandedMatrix::zeros(8, 1);
        assert!(matches!(m.solve(&[1.0; 8]), Err(Error::SingularMatrix { .. })));
        let mut m = CyclicBandedMatrix::zeros(80, 1);
        for i in 0..80 {
            *m.entry_mut(i, 0) = 1.0;
            *m.entry_mut(i, -1) = -1.0;
        }
        // rows sum to zero: constants are in the kernel
        assert!(matches!(m.solve_woodbury(&[1.0; 80]), Err(Error::SingularMatrix { .. })));
    }

    #[test]
    fn length_mismatch() {
        let m = CyclicBandedMatrix::identity(6, 1);
        assert!(matches!(m.solve(&[1.0; 5]), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn dense_copy_wraps_corners() {
        let mut m = CyclicBandedMatrix::zeros(5, 2);
        *m.entry_mut(0, -2) = 7.0;
        *m.entry_mut(4, 1) = 3.0;
        let d = m.to_dense();
        assert_eq!(d[3], 7.0);
        assert_eq!(d[4 * 5], 3.0);
        assert_eq!(m.mul_vec(&[1.0, 0.0, 0.0, 0.0, 0.0]), vec![0.0, 0.0, 0.0, 0.0, 3.0]);
    }
}
