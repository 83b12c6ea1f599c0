//! Third-order CWENO reconstruction on a uniform periodic mesh.
//!
//! Each cell blends the optimal parabola `P2` (through the averages of cells
//! `j-1, j, j+1`) with the two one-sided linear polynomials. Once the nonlinear
//! weights of a cell are fixed, the reconstruction evaluated at either cell edge
//! collapses into a 3-point linear stencil ([`CellWeightSet::minus`] and
//! [`CellWeightSet::plus`]), so boundary extrapolated data become a banded
//! linear map of the cell averages. The implicit corrector relies on this: its
//! weights come from the predictor and stay frozen while the stage is solved.

use alloc::vec::Vec;

use crate::math;
use crate::{Error, Result};

/// Linear (optimal) weights of the central parabola and the two linear polynomials.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearWeights {
    pub c0: f64,
    pub cl: f64,
    pub cr: f64,
}

impl LinearWeights {
    pub fn new(c0: f64, cl: f64, cr: f64) -> Result<Self> {
        let open = |c: f64| c > 0.0 && c < 1.0;
        if !(open(c0) && open(cl) && open(cr)) || ((c0 + cl + cr) - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter("linear weights must lie in (0,1) and sum to 1"));
        }
        Ok(LinearWeights { c0, cl, cr })
    }

    /// Builds symmetric weights `(c0, (1-c0)/2, (1-c0)/2)`.
    pub fn symmetric(c0: f64) -> Result<Self> {
        LinearWeights::new(c0, 0.5 * (1.0 - c0), 0.5 * (1.0 - c0))
    }
}

impl Default for LinearWeights {
    fn default() -> Self {
        LinearWeights { c0: 0.5, cl: 0.25, cr: 0.25 }
    }
}

/// Quadratic `a + b (x - x_j) + c (x - x_j)^2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolyCoeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl PolyCoeffs {
    pub fn eval(&self, dx: f64) -> f64 {
        self.a + dx * (self.b + dx * self.c)
    }

    /// Mean over `[x_j + lo, x_j + hi]`.
    pub fn mean(&self, lo: f64, hi: f64) -> f64 {
        let prim = |x: f64| x * (self.a + x * (self.b / 2.0 + x * self.c / 3.0));
        (prim(hi) - prim(lo)) / (hi - lo)
    }
}

/// Optimal parabola matching the three cell averages.
pub fn optimal_poly(u_m: f64, u_c: f64, u_p: f64, h: f64) -> PolyCoeffs {
    PolyCoeffs {
        a: (-u_p + 26.0 * u_c - u_m) / 24.0,
        b: (u_p - u_m) / (2.0 * h),
        c: (u_p - 2.0 * u_c + u_m) / (2.0 * h * h),
    }
}

/// Left and right one-sided linear polynomials of cell `j`.
pub fn linear_polys(u_m: f64, u_c: f64, u_p: f64, h: f64) -> (PolyCoeffs, PolyCoeffs) {
    (
        PolyCoeffs { a: u_c, b: (u_c - u_m) / h, c: 0.0 },
        PolyCoeffs { a: u_c, b: (u_p - u_c) / h, c: 0.0 },
    )
}

/// Central polynomial `P0 = (P2 - cl PL - cr PR) / c0`.
pub fn central_poly(u_m: f64, u_c: f64, u_p: f64, h: f64, w: LinearWeights) -> PolyCoeffs {
    let opt = optimal_poly(u_m, u_c, u_p, h);
    PolyCoeffs {
        a: opt.a / w.c0 - (w.cl + w.cr) / w.c0 * u_c,
        b: ((1.0 - 2.0 * w.cr) * u_p - (2.0 * w.cl - 2.0 * w.cr) * u_c + (2.0 * w.cl - 1.0) * u_m)
            / (2.0 * w.c0 * h),
        c: opt.c / w.c0,
    }
}

/// Jiang–Shu indicators of the left, central and right candidates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Indicators {
    pub left: f64,
    pub center: f64,
    pub right: f64,
}

/// Smoothness indicators of a stencil.
///
/// Evaluated in the scaled variable `(x - x_j)/h`, where `b h` and `c h^2` are
/// plain combinations of the averages; `h` drops out entirely.
pub fn smoothness_indicators(u_m: f64, u_c: f64, u_p: f64) -> Indicators {
    let bh = 0.5 * (u_p - u_m);
    let ch2 = 0.5 * (u_p - 2.0 * u_c + u_m);
    Indicators {
        left: (u_c - u_m) * (u_c - u_m),
        center: bh * bh + (52.0 / 3.0) * ch2 * ch2,
        right: (u_p - u_c) * (u_p - u_c),
    }
}

/// Normalised nonlinear weights `(w0, wl, wr)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NonlinearWeights {
    pub w0: f64,
    pub wl: f64,
    pub wr: f64,
}

pub fn nonlinear_weights(ind: Indicators, lin: LinearWeights, eps: f64, tau: i32) -> NonlinearWeights {
    let t0 = lin.c0 / math::powi(eps + ind.center, tau);
    let tl = lin.cl / math::powi(eps + ind.left, tau);
    let tr = lin.cr / math::powi(eps + ind.right, tau);
    let s = t0 + tl + tr;
    NonlinearWeights { w0: t0 / s, wl: tl / s, wr: tr / s }
}

/// Reconstruction parameters: linear weights, `epsilon` and exponent `tau`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CwenoParams {
    pub linear: LinearWeights,
    pub tau: i32,
    /// Fixed epsilon; `None` means `h^2`.
    pub eps: Option<f64>,
}

impl Default for CwenoParams {
    fn default() -> Self {
        CwenoParams { linear: LinearWeights::default(), tau: 2, eps: None }
    }
}

impl CwenoParams {
    pub fn eps_for(&self, h: f64) -> f64 {
        self.eps.unwrap_or(h * h)
    }
}

/// Nonlinear weights of one cell and the edge stencils they induce.
///
/// `minus` evaluates the reconstruction at the right edge of the cell,
/// `plus` at its left edge; both act on `(u_{j-1}, u_j, u_{j+1})`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CellWeightSet {
    pub w0: f64,
    pub wl: f64,
    pub wr: f64,
    pub minus: [f64; 3],
    pub plus: [f64; 3],
}

const P2_RIGHT: [f64; 3] = [-1.0 / 6.0, 5.0 / 6.0, 2.0 / 6.0];
const P2_LEFT: [f64; 3] = [2.0 / 6.0, 5.0 / 6.0, -1.0 / 6.0];
const PL_RIGHT: [f64; 3] = [-0.5, 1.5, 0.0];
const PL_LEFT: [f64; 3] = [0.5, 0.5, 0.0];
const PR_RIGHT: [f64; 3] = [0.0, 0.5, 0.5];
const PR_LEFT: [f64; 3] = [0.0, 1.5, -0.5];

impl CellWeightSet {
    /// Collapses `w0 P0 + wl PL + wr PR` at the two edges.
    pub fn from_weights(w: NonlinearWeights, lin: LinearWeights) -> Self {
        // P0 is itself a combination of P2, PL, PR
        let k2 = w.w0 / lin.c0;
        let kl = w.wl - w.w0 * lin.cl / lin.c0;
        let kr = w.wr - w.w0 * lin.cr / lin.c0;
        let combine = |p2: [f64; 3], pl: [f64; 3], pr: [f64; 3]| {
            [
                k2 * p2[0] + kl * pl[0] + kr * pr[0],
                k2 * p2[1] + kl * pl[1] + kr * pr[1],
                k2 * p2[2] + kl * pl[2] + kr * pr[2],
            ]
        };
        CellWeightSet {
            w0: w.w0,
            wl: w.wl,
            wr: w.wr,
            minus: combine(P2_RIGHT, PL_RIGHT, PR_RIGHT),
            plus: combine(P2_LEFT, PL_LEFT, PR_LEFT),
        }
    }

    /// Weights equal to the linear ones: the reconstruction is `P2`.
    pub fn optimal(lin: LinearWeights) -> Self {
        Self::from_weights(NonlinearWeights { w0: lin.c0, wl: lin.cl, wr: lin.cr }, lin)
    }
}

/// Weight set of a cell from its (predictor) stencil.
pub fn cell_weight_set(u_m: f64, u_c: f64, u_p: f64, h: f64, params: &CwenoParams) -> CellWeightSet {
    let ind = smoothness_indicators(u_m, u_c, u_p);
    let w = nonlinear_weights(ind, params.linear, params.eps_for(h), params.tau);
    CellWeightSet::from_weights(w, params.linear)
}

/// Weight sets of every cell of a periodic state.
pub fn weight_sets(values: &[f64], h: f64, params: &CwenoParams) -> Vec<CellWeightSet> {
    let n = values.len();
    (0..n)
        .map(|j| {
            let m = values[(j + n - 1) % n];
            let p = values[(j + 1) % n];
            cell_weight_set(m, values[j], p, h, params)
        })
        .collect()
}

/// Boundary extrapolated data at the `n` periodic interfaces; index `j` is
/// the interface `j + 1/2` between cells `j` and `j+1`.
#[derive(Clone, Debug, PartialEq)]
pub struct BedPair {
    /// Value from the left cell, `u^-_{j+1/2}`.
    pub minus: Vec<f64>,
    /// Value from the right cell, `u^+_{j+1/2}`.
    pub plus: Vec<f64>,
}

/// Applies frozen edge stencils to `values`.
pub fn reconstruct_bed(values: &[f64], weights: &[CellWeightSet]) -> Result<BedPair> {
    let n = values.len();
    if weights.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: weights.len() });
    }
    let at = |i: usize, k: isize| values[(i as isize + k).rem_euclid(n as isize) as usize];
    let edge = |i: usize, c: &[f64; 3]| c[0] * at(i, -1) + c[1] * at(i, 0) + c[2] * at(i, 1);
    let minus = (0..n).map(|j| edge(j, &weights[j].minus)).collect();
    let plus = (0..n)
        .map(|j| {
            let r = (j + 1) % n;
            edge(r, &weights[r].plus)
        })
        .collect();
    Ok(BedPair { minus, plus })
}

/// First-order data: each interface sees the two adjacent averages.
pub fn piecewise_constant_bed(values: &[f64]) -> BedPair {
    let n = values.len();
    BedPair { minus: values.to_vec(), plus: (0..n).map(|j| values[(j + 1) % n]).collect() }
}

/// Full nonlinear CWENO3: weights from the state being reconstructed.
pub fn standard_cweno_bed(values: &[f64], h: f64, params: &CwenoParams) -> BedPair {
    let w = weight_sets(values, h, params);
    reconstruct_bed(values, &w).expect("weights built from the same state")
}

/// Spatial reconstruction used by a stage: piecewise constant, or CWENO
/// with weights frozen from another state.
#[derive(Clone, Copy, Debug)]
pub enum Reconstruction<'a> {
    PiecewiseConstant,
    Frozen(&'a [CellWeightSet]),
}

impl Reconstruction<'_> {
    pub fn bed(&self, values: &[f64]) -> Result<BedPair> {
        match self {
            Reconstruction::PiecewiseConstant => Ok(piecewise_constant_bed(values)),
            Reconstruction::Frozen(w) => reconstruct_bed(values, w),
        }
    }

    /// Half bandwidth of the flux-difference operator's Jacobian.
    pub fn half_bandwidth(&self) -> usize {
        match self {
            Reconstruction::PiecewiseConstant => 1,
            Reconstruction::Frozen(_) => 2,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn optimal_poly_examples() {
        assert_eq!(optimal_poly(1.0, 1.0, 1.0, 0.3), PolyCoeffs { a: 1.0, b: 0.0, c: 0.0 });
        assert_eq!(optimal_poly(0.0, 1.0, 2.0, 1.0), PolyCoeffs { a: 1.0, b: 1.0, c: 0.0 });
        let p = optimal_poly(0.0, 0.0, 1.0, 1.0);
        assert!(close(p.a, -1.0 / 24.0, 1e-16) && p.b == 0.5 && p.c == 0.5);
    }

    #[test]
    fn optimal_poly_matches_cell_averages() {
        let h = 0.37;
        let p = optimal_poly(0.3, -1.1, 2.4, h);
        assert!(close(p.mean(-1.5 * h, -0.5 * h), 0.3, 1e-14));
        assert!(close(p.mean(-0.5 * h, 0.5 * h), -1.1, 1e-14));
        assert!(close(p.mean(0.5 * h, 1.5 * h), 2.4, 1e-14));
    }

    #[test]
    fn indicator_examples() {
        assert_eq!(smoothness_indicators(1.0, 1.0, 1.0), Indicators { left: 0.0, center: 0.0, right: 0.0 });
        let s = smoothness_indicators(0.0, 0.0, 1.0);
        assert_eq!((s.left, s.right), (0.0, 1.0));
        assert!(close(s.center, 55.0 / 12.0, 1e-15));
        assert_eq!(smoothness_indicators(0.0, 1.0, 2.0), Indicators { left: 1.0, center: 1.0, right: 1.0 });
    }

    #[test]
    fn indicators_agree_with_the_integral_definition() {
        // sum_i h^(2i-1) int (P^(i))^2 over the cell, for the central polynomial P0
        let (um, uc, up, h) = (0.2, -0.7, 1.9, 0.05);
        let p = central_poly(um, uc, up, h, LinearWeights::default());
        // int_{-h/2}^{h/2} (b + 2 c x)^2 dx = b^2 h + c^2 h^3 / 3
        let first = h * (p.b * p.b * h + p.c * p.c * h * h * h / 3.0);
        let second = h * h * h * (4.0 * p.c * p.c * h);
        assert!(close(smoothness_indicators(um, uc, up).center, first + second, 1e-12));
    }

    #[test]
    fn nonlinear_weight_examples() {
        let lin = LinearWeights::default();
        let zero = Indicators { left: 0.0, center: 0.0, right: 0.0 };
        let w = nonlinear_weights(zero, lin, 1e-4, 2);
        assert!(close(w.w0, 0.5, 1e-15) && close(w.wl, 0.25, 1e-15) && close(w.wr, 0.25, 1e-15));
        let eq = Indicators { left: 3.7, center: 3.7, right: 3.7 };
        let w = nonlinear_weights(eq, lin, 1e-4, 2);
        assert!(close(w.w0, 0.5, 1e-15) && close(w.wl, 0.25, 1e-15));

        let ind = smoothness_indicators(0.0, 0.0, 1.0);
        let w = nonlinear_weights(ind, lin, 1e-4, 2);
        let t0 = 0.5 / ((1e-4 + 55.0 / 12.0) * (1e-4 + 55.0 / 12.0));
        let tl = 0.25 / (1e-4 * 1e-4);
        let tr = 0.25 / ((1.0 + 1e-4) * (1.0 + 1e-4));
        assert!(close(w.wl, tl / (t0 + tl + tr), 1e-15));
        assert!(close(w.w0, t0 / (t0 + tl + tr), 1e-15));
        assert!(w.wl > w.w0 && w.wl > w.wr);
    }

    #[test]
    fn optimal_collapse_is_p2() {
        for lin in [LinearWeights::default(), LinearWeights::new(0.6, 0.3, 0.1).unwrap()] {
            let ws = CellWeightSet::optimal(lin);
            for k in 0..3 {
                assert!(close(ws.minus[k], P2_RIGHT[k], 1e-14));
                assert!(close(ws.plus[k], P2_LEFT[k], 1e-14));
            }
        }
        let ws = CellWeightSet::optimal(LinearWeights::default());
        assert!(close(ws.minus[0], -1.0 / 6.0, 1e-14));
        assert!(close(ws.minus[1], 5.0 / 6.0, 1e-14));
        assert!(close(ws.minus[2], 2.0 / 6.0, 1e-14));
        assert!(close(ws.plus[0], 2.0 / 6.0, 1e-14));
        assert!(close(ws.plus[2], -1.0 / 6.0, 1e-14));
    }

    #[test]
    fn pure_left_weight_gives_left_linear_polynomial() {
        let ws = CellWeightSet::from_weights(
            NonlinearWeights { w0: 0.0, wl: 1.0, wr: 0.0 },
            LinearWeights::default(),
        );
        assert_eq!(ws.minus, [-0.5, 1.5, 0.0]);
        assert_eq!(ws.plus, [0.5, 0.5, 0.0]);
    }

    #[test]
    fn constant_state_reconstructs_constant() {
        let v = vec![2.5; 9];
        let bed = standard_cweno_bed(&v, 0.1, &CwenoParams::default());
        for j in 0..9 {
            assert!(close(bed.minus[j], 2.5, 1e-14) && close(bed.plus[j], 2.5, 1e-14));
        }
        let pc = piecewise_constant_bed(&v);
        assert_eq!(pc.minus, v);
    }

    #[test]
    fn linear_data_reproduced_at_interfaces() {
        // averages of u(x) = x over cells of width h are the centers; optimal
        // weights reproduce the interface coordinates (away from the wrap)
        let n = 12;
        let h = 0.25;
        let v: Vec<f64> = (0..n).map(|j| (j as f64 + 0.5) * h).collect();
        let w = vec![CellWeightSet::optimal(LinearWeights::default()); n];
        let bed = reconstruct_bed(&v, &w).unwrap();
        for j in 1..n - 2 {
            let x = (j + 1) as f64 * h;
            assert!(close(bed.minus[j], x, 1e-14) && close(bed.plus[j], x, 1e-14), "{j}");
        }
    }

    #[test]
    fn reconstruct_rejects_wrong_weight_count() {
        let w = vec![CellWeightSet::optimal(LinearWeights::default()); 4];
        assert!(matches!(reconstruct_bed(&[0.0; 5], &w), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn step_data_stays_within_local_bounds() {
        // small h makes eps = h^2 negligible against the O(1) jump indicators
        let h = 5e-5;
        let mut v = vec![0.0; 40];
        for x in v.iter_mut().skip(20) {
            *x = 1.0;
        }
        let params = CwenoParams::default();
        let w = weight_sets(&v, h, &params);
        let bed = reconstruct_bed(&v, &w).unwrap();
        let n = v.len();
        for j in 0..n {
            for (cell, val) in [(j, bed.minus[j]), ((j + 1) % n, bed.plus[j])] {
                let s = [v[(cell + n - 1) % n], v[cell], v[(cell + 1) % n]];
                let lo = s.iter().copied().fold(f64::INFINITY, f64::min);
                let hi = s.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                assert!(val >= lo - 1e-12 && val <= hi + 1e-12, "interface {j}: {val}");
            }
        }
    }

    proptest! {
        #[test]
        fn weights_are_a_partition_of_unity(um in -5.0..5.0f64, uc in -5.0..5.0f64, up in -5.0..5.0f64,
                                            h in 1e-4..1.0f64) {
            let ws = cell_weight_set(um, uc, up, h, &CwenoParams::default());
            prop_assert!((ws.w0 + ws.wl + ws.wr - 1.0).abs() <= 1e-15);
            prop_assert!(ws.w0 >= 0.0 && ws.wl >= 0.0 && ws.wr >= 0.0);
            prop_assert!((ws.minus.iter().sum::<f64>() - 1.0).abs() <= 1e-13);
            prop_assert!((ws.plus.iter().sum::<f64>() - 1.0).abs() <= 1e-13);
        }

        #[test]
        fn central_polynomial_recombines_to_optimal(um in -5.0..5.0f64, uc in -5.0..5.0f64,
                                                    up in -5.0..5.0f64, c0 in 0.1..0.8f64) {
            let lin = LinearWeights::symmetric(c0).unwrap();
            let h = 0.1;
            let p0 = central_poly(um, uc, up, h, lin);
            let (pl, pr) = linear_polys(um, uc, up, h);
            let opt = optimal_poly(um, uc, up, h);
            // round-off scale of a coefficient of x^k is max|u| / h^k
            let umax = um.abs().max(uc.abs()).max(up.abs()).max(1e-300);
            let check = |x0: f64, xl: f64, xr: f64, want: f64, k: i32| {
                let got = lin.c0 * x0 + lin.cl * xl + lin.cr * xr;
                (got - want).abs() <= 1e-14 * umax / h.powi(k)
            };
            prop_assert!(check(p0.a, pl.a, pr.a, opt.a, 0));
            prop_assert!(check(p0.b, pl.b, pr.b, opt.b, 1));
            prop_assert!(check(p0.c, pl.c, pr.c, opt.c, 2));
        }
    }
}
