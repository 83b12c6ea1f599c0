//! Run configuration: an optional TOML file overridden by command-line flags.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use quinpi_core::cweno::LinearWeights;
use quinpi_core::quinpi::PredictorKind;
use quinpi_core::{Flux, InitialCondition, Problem, QuinpiConfig, Scheme};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemName {
    Advection,
    Burgers,
    Buckley,
}

impl ProblemName {
    pub fn flux(self) -> Flux {
        match self {
            ProblemName::Advection => Flux::LinearAdvection,
            ProblemName::Burgers => Flux::Burgers,
            ProblemName::Buckley => Flux::BuckleyLeverett,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IcName {
    SineSmooth,
    SineJump,
    DoubleStep,
    TwoShock,
    HalfStep,
}

impl IcName {
    pub fn initial(self) -> InitialCondition {
        match self {
            IcName::SineSmooth => InitialCondition::SineSmooth,
            IcName::SineJump => InitialCondition::SineJump,
            IcName::DoubleStep => InitialCondition::DoubleStep,
            IcName::TwoShock => InitialCondition::TwoShock,
            IcName::HalfStep => InitialCondition::HalfStep,
        }
    }
}

/// Scheme names accepted on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
pub enum SchemeName {
    #[value(name = "IE")]
    #[serde(rename = "IE")]
    Ie,
    #[value(name = "D3P1")]
    #[serde(rename = "D3P1")]
    D3p1,
    #[value(name = "Q3P1")]
    #[serde(rename = "Q3P1")]
    Q3p1,
    /// Q3P1 without the conservative correction.
    #[value(name = "Q3P1-nocorr")]
    #[serde(rename = "Q3P1-nocorr")]
    Q3p1Nocorr,
    /// Q3P1 with forward-Euler predictor substeps.
    #[value(name = "Q3P1-explicit-pred")]
    #[serde(rename = "Q3P1-explicit-pred")]
    Q3p1ExplicitPred,
    #[value(name = "SSPRK3")]
    #[serde(rename = "SSPRK3")]
    Ssprk3,
}

impl SchemeName {
    pub fn scheme(self) -> Scheme {
        match self {
            SchemeName::Ie => Scheme::ImplicitEuler,
            SchemeName::D3p1 => Scheme::D3P1,
            SchemeName::Q3p1 | SchemeName::Q3p1Nocorr | SchemeName::Q3p1ExplicitPred => Scheme::Q3P1,
            SchemeName::Ssprk3 => Scheme::Ssprk3,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SchemeName::Ie => "IE",
            SchemeName::D3p1 => "D3P1",
            SchemeName::Q3p1 => "Q3P1",
            SchemeName::Q3p1Nocorr => "Q3P1-nocorr",
            SchemeName::Q3p1ExplicitPred => "Q3P1-explicit-pred",
            SchemeName::Ssprk3 => "SSPRK3",
        }
    }
}

/// Settings shared by every subcommand. Unset flags fall back to the config
/// file, then to built-in defaults.
#[derive(Args, Clone, Debug, Default)]
pub struct CommonArgs {
    /// TOML file with any of the settings below (flags take precedence).
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub problem: Option<ProblemName>,
    #[arg(long, value_enum)]
    pub ic: Option<IcName>,
    /// Number of cells.
    #[arg(long)]
    pub n: Option<usize>,
    /// Time step as a multiple of the cell width, `dt = nu h`.
    #[arg(long, conflicts_with = "cfl")]
    pub nu: Option<f64>,
    /// Time step `cfl h / alpha0`, with `alpha0` the wave speed of the initial state.
    #[arg(long)]
    pub cfl: Option<f64>,
    #[arg(long)]
    pub tfinal: Option<f64>,
    #[arg(long, value_enum)]
    pub scheme: Option<SchemeName>,
    /// Exponent `p` in `eps_t = dt^p`.
    #[arg(long, value_parser = clap::value_parser!(i32).range(2..=3))]
    pub eps_t_exp: Option<i32>,
    /// Central linear weight; the side weights are `(1 - c0) / 2`.
    #[arg(long)]
    pub c0: Option<f64>,
    #[arg(long)]
    pub no_conservative_correction: bool,
    #[arg(long)]
    pub explicit_predictor: bool,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Contents of a config file; every key is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    pub problem: Option<ProblemName>,
    pub ic: Option<IcName>,
    pub n: Option<usize>,
    pub nu: Option<f64>,
    pub cfl: Option<f64>,
    pub tfinal: Option<f64>,
    pub scheme: Option<SchemeName>,
    pub eps_t_exp: Option<i32>,
    pub c0: Option<f64>,
    pub conservative_correction: Option<bool>,
    pub explicit_predictor: Option<bool>,
    pub out: Option<PathBuf>,
    /// Grid sizes for the convergence and timing studies.
    pub ns: Option<Vec<usize>>,
    /// Measured steps per grid in the timing study.
    pub timing_steps: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| CliError::ConfigFile { path: path.to_path_buf(), source })?;
        toml::from_str(&text).map_err(|source| CliError::ConfigParse { path: path.to_path_buf(), source })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TimeStep {
    /// `dt = nu h`.
    MeshRatio(f64),
    /// `dt = cfl h / alpha0`.
    Courant(f64),
}

/// A fully resolved run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub problem: Problem,
    pub n_cells: usize,
    pub time_step: TimeStep,
    pub t_final: f64,
    pub scheme: SchemeName,
    pub quinpi: QuinpiConfig,
    pub out: PathBuf,
}

pub const DEFAULT_N: usize = 400;
pub const DEFAULT_NU: f64 = 5.0;

impl Default for RunConfig {
    fn default() -> Self {
        let problem = Problem::new(Flux::Burgers, InitialCondition::SineSmooth);
        RunConfig {
            problem,
            n_cells: DEFAULT_N,
            time_step: TimeStep::MeshRatio(DEFAULT_NU),
            t_final: problem.initial.default_final_time(),
            scheme: SchemeName::Q3p1,
            quinpi: QuinpiConfig::default(),
            out: PathBuf::from("out"),
        }
    }
}

impl RunConfig {
    /// Builds a run for `scheme` with the variant's switches applied.
    pub fn new(problem: Problem, n_cells: usize, nu: f64, t_final: f64, scheme: SchemeName) -> Self {
        let mut cfg = RunConfig {
            problem,
            n_cells,
            time_step: TimeStep::MeshRatio(nu),
            t_final,
            scheme,
            ..RunConfig::default()
        };
        cfg.apply_variant();
        cfg
    }

    fn apply_variant(&mut self) {
        match self.scheme {
            SchemeName::Q3p1Nocorr => self.quinpi.conservative_correction = false,
            SchemeName::Q3p1ExplicitPred => self.quinpi.predictor = PredictorKind::Explicit,
            _ => {}
        }
    }

    /// Time step for a grid of width `h` whose initial wave speed is `alpha0`.
    pub fn dt(&self, h: f64, alpha0: f64) -> Result<f64, CliError> {
        match self.time_step {
            TimeStep::MeshRatio(nu) => Ok(nu * h),
            TimeStep::Courant(cfl) if alpha0 > 0.0 => Ok(cfl * h / alpha0),
            TimeStep::Courant(_) => Err(CliError::config("--cfl needs a nonzero initial wave speed")),
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.n_cells < quinpi_core::mesh::MIN_CELLS {
            return Err(CliError::config(format!("--n must be at least {}", quinpi_core::mesh::MIN_CELLS)));
        }
        let step = match self.time_step {
            TimeStep::MeshRatio(v) | TimeStep::Courant(v) => v,
        };
        if !(step > 0.0 && step.is_finite()) {
            return Err(CliError::config("--nu / --cfl must be positive"));
        }
        if !(self.t_final > 0.0 && self.t_final.is_finite()) {
            return Err(CliError::config("--tfinal must be positive"));
        }
        if !matches!(self.quinpi.eps_t_exponent, 2 | 3) {
            return Err(CliError::config("--eps-t-exp must be 2 or 3"));
        }
        Ok(())
    }
}

/// Extra settings of the study subcommands after merging.
#[derive(Clone, Debug, PartialEq)]
pub struct StudySettings {
    pub ns: Option<Vec<usize>>,
    pub timing_steps: Option<usize>,
}

/// Merges defaults, the config file and the flags, in increasing precedence.
pub fn resolve(args: &CommonArgs) -> Result<(RunConfig, StudySettings), CliError> {
    let file = match &args.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let problem_name = args.problem.or(file.problem).unwrap_or(ProblemName::Burgers);
    let ic = args.ic.or(file.ic).unwrap_or(match problem_name {
        ProblemName::Advection => IcName::SineJump,
        ProblemName::Burgers => IcName::SineSmooth,
        ProblemName::Buckley => IcName::HalfStep,
    });
    let problem = Problem::new(problem_name.flux(), ic.initial());

    // a flag of either kind beats anything in the file
    let time_step = match (args.nu, args.cfl, file.nu, file.cfl) {
        (Some(nu), _, _, _) => TimeStep::MeshRatio(nu),
        (None, Some(c), _, _) => TimeStep::Courant(c),
        (None, None, Some(_), Some(_)) => return Err(CliError::config("config file sets both nu and cfl")),
        (None, None, Some(nu), None) => TimeStep::MeshRatio(nu),
        (None, None, None, Some(c)) => TimeStep::Courant(c),
        (None, None, None, None) => TimeStep::MeshRatio(DEFAULT_NU),
    };

    let mut quinpi = QuinpiConfig::default();
    if let Some(p) = args.eps_t_exp.or(file.eps_t_exp) {
        quinpi.eps_t_exponent = p;
    }
    if let Some(c0) = args.c0.or(file.c0) {
        quinpi.cweno.linear = LinearWeights::symmetric(c0).map_err(|e| CliError::config(format!("--c0: {e}")))?;
    }
    if args.no_conservative_correction || file.conservative_correction == Some(false) {
        quinpi.conservative_correction = false;
    }
    if args.explicit_predictor || file.explicit_predictor == Some(true) {
        quinpi.predictor = PredictorKind::Explicit;
    }

    let mut cfg = RunConfig {
        problem,
        n_cells: args.n.or(file.n).unwrap_or(DEFAULT_N),
        time_step,
        t_final: args.tfinal.or(file.tfinal).unwrap_or(problem.initial.default_final_time()),
        scheme: args.scheme.or(file.scheme).unwrap_or(SchemeName::Q3p1),
        quinpi,
        out: args.out.clone().or(file.out).unwrap_or_else(|| PathBuf::from("out")),
    };
    cfg.apply_variant();
    cfg.validate()?;
    Ok((cfg, StudySettings { ns: file.ns, timing_steps: file.timing_steps }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_resolve() {
        let (cfg, _) = resolve(&CommonArgs::default()).unwrap();
        assert_eq!(cfg, RunConfig::default());
    }

    #[test]
    fn variants_set_their_switches() {
        let p = Problem::new(Flux::Burgers, InitialCondition::DoubleStep);
        assert!(!RunConfig::new(p, 50, 5.0, 0.1, SchemeName::Q3p1Nocorr).quinpi.conservative_correction);
        let e = RunConfig::new(p, 50, 5.0, 0.1, SchemeName::Q3p1ExplicitPred);
        assert_eq!(e.quinpi.predictor, PredictorKind::Explicit);
        assert_eq!(e.scheme.scheme(), Scheme::Q3P1);
    }

    #[test]
    fn validation_rejects_bad_values() {
        let bad = |f: fn(&mut CommonArgs)| {
            let mut a = CommonArgs::default();
            f(&mut a);
            matches!(resolve(&a), Err(CliError::Config(_)))
        };
        assert!(bad(|a| a.n = Some(3)));
        assert!(bad(|a| a.nu = Some(-1.0)));
        assert!(bad(|a| a.tfinal = Some(0.0)));
        assert!(bad(|a| a.c0 = Some(1.5)));
    }

    #[test]
    fn problem_picks_a_default_profile() {
        let a = CommonArgs { problem: Some(ProblemName::Buckley), ..CommonArgs::default() };
        let (cfg, _) = resolve(&a).unwrap();
        assert_eq!(cfg.problem.initial, InitialCondition::HalfStep);
        assert_eq!(cfg.t_final, 0.085);
    }
}
