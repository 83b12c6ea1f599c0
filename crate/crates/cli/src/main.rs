use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use quinpi_cli::config::{resolve, CommonArgs, RunConfig, StudySettings};
use quinpi_cli::output::{write_convergence, write_diagnostics, write_newton_log, write_solution, write_timing};
use quinpi_cli::runner::run;
use quinpi_cli::studies::{
    convergence_study, newton_log, timing_study, DEFAULT_CONVERGENCE_NS, DEFAULT_TIMING_NS, DEFAULT_TIMING_STEPS,
};
use quinpi_cli::CliError;

#[derive(Parser, Debug)]
#[command(name = "quinpi", version, about = "Implicit third-order finite-volume solver for 1D conservation laws")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Single run; writes solution.csv and diag.csv.
    Run {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Errors against the exact solution on a dyadic sequence of grids; writes table.csv.
    Converge {
        #[command(flatten)]
        common: CommonArgs,
        /// Grid sizes, comma separated.
        #[arg(long, value_delimiter = ',')]
        ns: Option<Vec<usize>>,
    },
    /// Per-step cost of the implicit scheme against SSPRK3; writes table.csv.
    Timing {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_delimiter = ',')]
        ns: Option<Vec<usize>>,
        /// Measured steps per grid.
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Newton iterations per time step; writes newton.csv.
    NewtonLog {
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn grids(flag: Option<Vec<usize>>, study: &StudySettings, default: &[usize]) -> Vec<usize> {
    flag.or_else(|| study.ns.clone()).unwrap_or_else(|| default.to_vec())
}

fn out_file(cfg: &RunConfig, name: &str) -> std::path::PathBuf {
    Path::new(&cfg.out).join(name)
}

fn execute(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Run { common } => {
            let (cfg, _) = resolve(&common)?;
            let out = run(&cfg)?;
            write_solution(&out_file(&cfg, "solution.csv"), &out.grid, &out.state.values)?;
            write_diagnostics(&out_file(&cfg, "diag.csv"), &out.diag)?;
            eprintln!(
                "{} {} N={} t={}: {} steps, max |mass dev| {:.3e}",
                cfg.scheme.label(),
                cfg.problem.initial.name(),
                cfg.n_cells,
                cfg.t_final,
                out.diag.len(),
                out.max_abs_mass_dev()
            );
        }
        Command::Converge { common, ns } => {
            let (cfg, study) = resolve(&common)?;
            let rows = convergence_study(&cfg, &grids(ns, &study, &DEFAULT_CONVERGENCE_NS))?;
            write_convergence(&out_file(&cfg, "table.csv"), &rows)?;
        }
        Command::Timing { common, ns, steps } => {
            let (cfg, study) = resolve(&common)?;
            let steps = steps.or(study.timing_steps).unwrap_or(DEFAULT_TIMING_STEPS);
            let rows = timing_study(&cfg, &grids(ns, &study, &DEFAULT_TIMING_NS), steps)?;
            write_timing(&out_file(&cfg, "table.csv"), &rows)?;
        }
        Command::NewtonLog { common } => {
            let (cfg, _) = resolve(&common)?;
            write_newton_log(&out_file(&cfg, "newton.csv"), &newton_log(&cfg)?)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
