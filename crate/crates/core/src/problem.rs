//! Flux functions, initial conditions and the Lax–Friedrichs numerical flux.

use core::fmt;

use crate::math::{self, PI};
use crate::mesh::Grid;
use crate::Result;

/// Physical flux `f(u)` of the scalar law `u_t + f(u)_x = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flux {
    /// `f(u) = u`.
    LinearAdvection,
    /// `f(u) = (u/2)^2`.
    Burgers,
    /// `f(u) = u^2 / (u^2 + (1-u)^2/3)`, non-convex.
    BuckleyLeverett,
}

impl Flux {
    #[inline]
    pub fn eval(self, u: f64) -> f64 {
        match self {
            Flux::LinearAdvection => u,
            Flux::Burgers => 0.25 * u * u,
            Flux::BuckleyLeverett => {
                let v = 1.0 - u;
                u * u / (u * u + v * v / 3.0)
            }
        }
    }

    #[inline]
    pub fn derivative(self, u: f64) -> f64 {
        match self {
            Flux::LinearAdvection => 1.0,
            Flux::Burgers => 0.5 * u,
            Flux::BuckleyLeverett => {
                let v = 1.0 - u;
                let d = u * u + v * v / 3.0;
                (2.0 / 3.0) * u * v / (d * d)
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Flux::LinearAdvection => "advection",
            Flux::Burgers => "burgers",
            Flux::BuckleyLeverett => "buckley",
        }
    }

    pub fn is_linear(self) -> bool {
        matches!(self, Flux::LinearAdvection)
    }
}

impl fmt::Display for Flux {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Named initial profiles. Each is evaluated as the periodic extension of
/// its definition over its natural domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InitialCondition {
    /// `0.5 - 0.25 sin(pi x)` on `[0, 2]`.
    SineSmooth,
    /// `sin(pi x) + 3` on `|x| <= 0.4`, `sin(pi x)` elsewhere, on `[-1, 1]`.
    SineJump,
    /// `1` on `|x| <= 0.25`, `0` elsewhere, on `[-1, 1]`.
    DoubleStep,
    /// `0.2 - sin(pi x) + sin(2 pi x)` on `[-1, 1]`; two shocks that later merge.
    TwoShock,
    /// `0.5` on `|x| <= 0.25`, `0` elsewhere, periodic with period 1 on `[0, 1]`.
    HalfStep,
}

impl InitialCondition {
    pub const ALL: [InitialCondition; 5] = [
        InitialCondition::SineSmooth,
        InitialCondition::SineJump,
        InitialCondition::DoubleStep,
        InitialCondition::TwoShock,
        InitialCondition::HalfStep,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InitialCondition::SineSmooth => "sine-smooth",
            InitialCondition::SineJump => "sine-jump",
            InitialCondition::DoubleStep => "double-step",
            InitialCondition::TwoShock => "two-shock",
            InitialCondition::HalfStep => "half-step",
        }
    }

    pub fn default_domain(self) -> (f64, f64) {
        match self {
            InitialCondition::SineSmooth => (0.0, 2.0),
            InitialCondition::HalfStep => (0.0, 1.0),
            _ => (-1.0, 1.0),
        }
    }

    /// Final time used by the reference experiments for this profile.
    pub fn default_final_time(self) -> f64 {
        match self {
            InitialCondition::SineSmooth => 1.0,
            InitialCondition::SineJump => 2.0,
            InitialCondition::DoubleStep => 0.5,
            InitialCondition::TwoShock => 0.6,
            InitialCondition::HalfStep => 0.085,
        }
    }

    pub fn is_smooth(self) -> bool {
        matches!(self, InitialCondition::SineSmooth | InitialCondition::TwoShock)
    }

    // symmetric window [-period/2, period/2) the step profiles are defined on
    fn centered(x: f64, period: f64) -> f64 {
        x - period * math::floor(x / period + 0.5)
    }

    pub fn eval(self, x: f64) -> f64 {
        match self {
            InitialCondition::SineSmooth => 0.5 - 0.25 * math::sin(PI * x),
            InitialCondition::SineJump => {
                let y = Self::centered(x, 2.0);
                let bump = if (-0.4..=0.4).contains(&y) { 3.0 } else { 0.0 };
                math::sin(PI * x) + bump
            }
            InitialCondition::DoubleStep => {
                let y = Self::centered(x, 2.0);
                if (-0.25..=0.25).contains(&y) {
                    1.0
                } else {
                    0.0
                }
            }
            InitialCondition::TwoShock => 0.2 - math::sin(PI * x) + math::sin(2.0 * PI * x),
            InitialCondition::HalfStep => {
                let y = Self::centered(x, 1.0);
                if (-0.25..=0.25).contains(&y) {
                    0.5
                } else {
                    0.0
                }
            }
        }
    }

    /// `u0'(x)` for the smooth profiles.
    pub fn derivative(self, x: f64) -> Option<f64> {
        match self {
            InitialCondition::SineSmooth => Some(-0.25 * PI * math::cos(PI * x)),
            InitialCondition::TwoShock => {
                Some(-PI * math::cos(PI * x) + 2.0 * PI * math::cos(2.0 * PI * x))
            }
            _ => None,
        }
    }
}

impl fmt::Display for InitialCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A flux paired with an initial profile and a periodic domain.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Problem {
    pub flux: Flux,
    pub initial: InitialCondition,
    pub x_min: f64,
    pub x_max: f64,
}

impl Problem {
    /// Uses the initial profile's natural domain.
    pub fn new(flux: Flux, initial: InitialCondition) -> Self {
        let (x_min, x_max) = initial.default_domain();
        Problem { flux, initial, x_min, x_max }
    }

    pub fn with_domain(mut self, x_min: f64, x_max: f64) -> Self {
        self.x_min = x_min;
        self.x_max = x_max;
        self
    }

    pub fn grid(&self, n_cells: usize) -> Result<Grid> {
        Grid::new(self.x_min, self.x_max, n_cells)
    }

    pub fn u0(&self, x: f64) -> f64 {
        self.initial.eval(x)
    }
}

/// Lax–Friedrichs flux `(f(u_r) + f(u_l) - alpha (u_r - u_l)) / 2`.
#[inline]
pub fn lxf_flux(u_left: f64, u_right: f64, flux: Flux, alpha: f64) -> f64 {
    0.5 * (flux.eval(u_right) + flux.eval(u_left) - alpha * (u_right - u_left))
}

/// `(d/du_left, d/du_right)` of [`lxf_flux`].
#[inline]
pub fn lxf_flux_partials(u_left: f64, u_right: f64, flux: Flux, alpha: f64) -> (f64, f64) {
    (0.5 * (flux.derivative(u_left) + alpha), 0.5 * (flux.derivative(u_right) - alpha))
}

/// `(1 + margin) * max_j |f'(u_j)|`.
pub fn max_wave_speed(flux: Flux, values: &[f64], margin: f64) -> f64 {
    (1.0 + margin) * values.iter().fold(0.0, |m: f64, &u| m.max(flux.derivative(u).abs()))
}
