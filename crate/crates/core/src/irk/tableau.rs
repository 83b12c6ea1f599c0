use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Diagonal coefficient of the three-stage, third-order, L-stable DIRK (Alexander).
pub const DIRK3_LAMBDA: f64 = 0.4358665215;

/// Butcher tableau of a diagonally implicit Runge–Kutta method.
///
/// `a` is stored row-major and is lower triangular with a nonzero diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct ButcherTableau {
    a: Vec<f64>,
    b: Vec<f64>,
    c: Vec<f64>,
}

impl ButcherTableau {
    pub fn new(a: Vec<Vec<f64>>, b: Vec<f64>, c: Vec<f64>) -> Result<Self> {
        let s = b.len();
        if s == 0 || c.len() != s || a.len() != s || a.iter().any(|r| r.len() != s) {
            return Err(Error::InvalidParameter("tableau dimensions disagree"));
        }
        for (k, row) in a.iter().enumerate() {
            if row[k + 1..].iter().any(|&x| x != 0.0) {
                return Err(Error::InvalidParameter("tableau is not lower triangular"));
            }
            if row[k] == 0.0 {
                return Err(Error::InvalidParameter("tableau has a zero diagonal entry"));
            }
        }
        Ok(ButcherTableau { a: a.into_iter().flatten().collect(), b, c })
    }

    /// Alexander's DIRK3 with `lambda = 0.4358665215`; stiffly accurate.
    pub fn dirk3() -> Self {
        let l = DIRK3_LAMBDA;
        let b1 = -1.5 * l * l + 4.0 * l - 0.25;
        let b2 = 1.5 * l * l - 5.0 * l + 1.25;
        ButcherTableau::new(
            vec![
                vec![l, 0.0, 0.0],
                vec![0.5 * (1.0 - l), l, 0.0],
                vec![b1, b2, l],
            ],
            vec![b1, b2, l],
            vec![l, 0.5 * (1.0 + l), 1.0],
        )
        .expect("valid tableau")
    }

    /// Chained backward-Euler substeps through the sorted abscissae of `dirk`.
    ///
    /// Row `k` holds the substep lengths `theta_1..theta_k` where
    /// `theta_k = c~_k - c~_{k-1}`, `c~_0 = 0`.
    pub fn composite_euler(dirk: &ButcherTableau) -> Result<Self> {
        let mut c = dirk.c.clone();
        c.sort_by(f64::total_cmp);
        if c.windows(2).any(|w| w[0] == w[1]) || c[0] <= 0.0 {
            return Err(Error::DegenerateAbscissae);
        }
        let s = c.len();
        let theta: Vec<f64> = (0..s).map(|k| if k == 0 { c[0] } else { c[k] - c[k - 1] }).collect();
        let a = (0..s)
            .map(|k| (0..s).map(|l| if l <= k { theta[l] } else { 0.0 }).collect())
            .collect();
        ButcherTableau::new(a, theta, c)
    }

    pub fn stages(&self) -> usize {
        self.b.len()
    }

    pub fn a(&self, k: usize, l: usize) -> f64 {
        self.a[k * self.stages() + l]
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn c(&self) -> &[f64] {
        &self.c
    }

    pub fn row(&self, k: usize) -> &[f64] {
        let s = self.stages();
        &self.a[k * s..(k + 1) * s]
    }

    pub fn is_stiffly_accurate(&self) -> bool {
        self.row(self.stages() - 1) == self.b.as_slice()
    }
}
