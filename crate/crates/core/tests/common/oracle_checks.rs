//! Oracle measurements shared by the core oracle tests and the acceptance
//! suite. Each check returns the worst discrepancy it saw.

use quinpi_core::cweno::{weight_sets, CellWeightSet, CwenoParams, LinearWeights, Reconstruction};
use quinpi_core::irk::{CyclicBandedMatrix, NonlinearSystem, StageSystem};
use quinpi_core::quinpi::{ce_cubic, time_smoothness_indicator, CeCubic};
use quinpi_core::Flux;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Gaussian elimination with partial pivoting on a row-major copy.
pub fn dense_lu_solve(n: usize, mut a: Vec<f64>, mut b: Vec<f64>) -> Vec<f64> {
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| a[i * n + k].abs().total_cmp(&a[j * n + k].abs())).unwrap();
        if p != k {
            for c in 0..n {
                a.swap(k * n + c, p * n + c);
            }
            b.swap(k, p);
        }
        for i in k + 1..n {
            let m = a[i * n + k] / a[k * n + k];
            for c in k..n {
                a[i * n + c] -= m * a[k * n + c];
            }
            b[i] -= m * b[k];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|c| a[i * n + c] * x[c]).sum();
        x[i] = (b[i] - s) / a[i * n + i];
    }
    x
}

pub fn random_banded(rng: &mut StdRng, n: usize, p: usize) -> CyclicBandedMatrix {
    let mut m = CyclicBandedMatrix::zeros(n, p);
    for i in 0..n {
        for off in -(p as isize)..=(p as isize) {
            *m.entry_mut(i, off) = rng.gen_range(-1.0..1.0);
        }
        // keep the instance well conditioned; the sign is random
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        *m.entry_mut(i, 0) += sign * (2.0 * p as f64 + 1.0);
    }
    m
}

pub fn max_rel_diff(a: &[f64], b: &[f64]) -> f64 {
    let scale = b.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs())) / scale
}

/// Both solve paths against dense LU: every `n <= 64` that fits the band,
/// bandwidths 1 and 2, 100 random instances each.
pub fn banded_vs_dense_lu() -> f64 {
    let mut rng = StdRng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for n in 5..=64 {
        for p in [1usize, 2] {
            if 2 * p + 1 > n {
                continue;
            }
            for _ in 0..100 {
                let m = random_banded(&mut rng, n, p);
                let rhs: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let want = dense_lu_solve(n, m.to_dense(), rhs.clone());
                let got = m.solve(&rhs).expect("nonsingular");
                let wood = m.solve_woodbury(&rhs).expect("nonsingular");
                worst = worst.max(max_rel_diff(&got, &want)).max(max_rel_diff(&wood, &want));
            }
        }
    }
    worst
}

fn fd_jacobian(system: &StageSystem<'_>, u: &[f64]) -> Vec<f64> {
    let n = u.len();
    let mut jac = vec![0.0; n * n];
    for c in 0..n {
        let d = 1e-6 * u[c].abs().max(1.0);
        let mut up = u.to_vec();
        let mut um = u.to_vec();
        up[c] += d;
        um[c] -= d;
        let gp = system.residual(&up).unwrap();
        let gm = system.residual(&um).unwrap();
        for r in 0..n {
            jac[r * n + c] = (gp[r] - gm[r]) / (2.0 * d);
        }
    }
    jac
}

/// Analytic stage Jacobians against central differences, relative to the
/// largest entry; all three fluxes, both reconstructions.
pub fn jacobian_vs_finite_differences() -> f64 {
    let mut rng = StdRng::seed_from_u64(3);
    let mut worst = 0.0f64;
    for flux in [Flux::LinearAdvection, Flux::Burgers, Flux::BuckleyLeverett] {
        for _ in 0..20 {
            let n = rng.gen_range(8..24);
            let u: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..0.95)).collect();
            let frozen_from: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
            let known: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let h = 2.0 / n as f64;
            let weights = weight_sets(&frozen_from, h, &CwenoParams::default());
            let alpha = 1.7;
            for recon in [Reconstruction::PiecewiseConstant, Reconstruction::Frozen(&weights)] {
                let system = StageSystem { flux, alpha, recon, known: &known, a_kk: 0.4358665215, dt: 5.0 * h, h };
                let analytic = system.jacobian(&u).unwrap().to_dense();
                let fd = fd_jacobian(&system, &u);
                let scale = analytic.iter().fold(1.0f64, |m, x| m.max(x.abs()));
                let err = analytic.iter().zip(&fd).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
                worst = worst.max(err / scale);
            }
        }
    }
    worst
}

/// `int_0^1 g(s) ds` by 5-point Gauss–Legendre, exact for degree <= 9.
pub fn gl5(g: impl Fn(f64) -> f64) -> f64 {
    let x = [0.0, 0.538_469_310_105_683_1, 0.906_179_845_938_664];
    let w = [128.0 / 225.0, 0.478_628_670_499_366_5, 0.236_926_885_056_189_1];
    let mut acc = w[0] * g(0.5);
    for k in 1..3 {
        acc += w[k] * (g(0.5 * (1.0 + x[k])) + g(0.5 * (1.0 - x[k])));
    }
    0.5 * acc
}

pub fn indicator_by_quadrature(ce: &CeCubic) -> f64 {
    let [_, p1, p2, p3] = ce.coeffs;
    let d1 = |s: f64| p1 + 2.0 * p2 * s + 3.0 * p3 * s * s;
    let d2 = |s: f64| 2.0 * p2 + 6.0 * p3 * s;
    let d3 = 6.0 * p3;
    gl5(|s| d1(s) * d1(s)) + gl5(|s| d2(s) * d2(s)) + d3 * d3
}

/// Closed-form time indicator against quadrature, relative, 500 random cubics.
pub fn time_indicator_vs_quadrature() -> f64 {
    let mut rng = StdRng::seed_from_u64(5);
    let c = [0.4358665215, 0.5 * (1.0 + 0.4358665215), 1.0];
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let k = [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)];
        let dt = rng.gen_range(1e-3..2.0);
        let ce = ce_cubic(rng.gen_range(-1.0..1.0), k, c, dt).unwrap();
        let closed = time_smoothness_indicator(&ce);
        let quad = indicator_by_quadrature(&ce);
        worst = worst.max((closed - quad).abs() / quad.max(closed).max(1e-300));
    }
    worst
}

/// Edge stencils at the optimal weights against the P2 edge coefficients.
pub fn optimal_collapse_error() -> f64 {
    // P2 of data (u_{j-1}, u_j, u_{j+1}) at x_{j+1/2} and x_{j-1/2}
    let right = [-1.0 / 6.0, 5.0 / 6.0, 1.0 / 3.0];
    let left = [1.0 / 3.0, 5.0 / 6.0, -1.0 / 6.0];
    let mut worst = 0.0f64;
    for c0 in [0.5, 0.25, 0.6, 0.8] {
        let set = CellWeightSet::optimal(LinearWeights::symmetric(c0).unwrap());
        for i in 0..3 {
            worst = worst.max((set.minus[i] - right[i]).abs()).max((set.plus[i] - left[i]).abs());
        }
    }
    worst
}
