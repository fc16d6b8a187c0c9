//! Command-line front end: `check-mesh`, `solve`, `convergence` and
//! `consistency`.

mod commands;
mod config;
mod output;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use commands::CONSISTENCY_ORDER;
pub use config::{CaseChoice, FieldId, ForcingId, MeshSource, RunConfig};
pub use output::{solution_csv, solution_vtk};

use crate::error::{AssemblyError, Error, MeshError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NUMERICAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

/// Environment variable capping the worker threads (0 = automatic).
pub const THREADS_ENV: &str = "PFECC_THREADS";

#[derive(Debug, Parser)]
#[command(name = "pfecc", version, about = "Penalty cell-centered FE solver for 2D Stokes flow")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print mesh regularity constants and validate the mesh assumptions.
    CheckMesh(RunArgs),
    /// Solve once and write solution.csv.
    Solve(RunArgs),
    /// Run a refinement study and write convergence.csv.
    Convergence(RunArgs),
    /// Measure the divergence consistency defect on two levels.
    Consistency(RunArgs),
}

#[derive(Debug, Default, clap::Args)]
struct RunArgs {
    /// key = value file applied before the flags.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Mesh file, or quad:N, tri:N, distorted:N[:amp].
    #[arg(long)]
    mesh: Option<String>,
    /// MS-1, MS-2, jump, zero or solve-only.
    #[arg(long)]
    case: Option<String>,
    /// Forcing for solve-only: const:FX:FY or a case id.
    #[arg(long)]
    forcing: Option<String>,
    /// Viscosity: const:V, smooth or jump:A:B.
    #[arg(long)]
    mu: Option<String>,
    /// Penalty parameter, > 0.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long)]
    levels: Option<String>,
    #[arg(long)]
    out: Option<String>,
    /// Consistency test field: cubic, sine or linear.
    #[arg(long)]
    field: Option<String>,
    #[arg(long)]
    viscosity_depth: Option<String>,
    #[arg(long)]
    vtk: bool,
    #[arg(long)]
    export_matrix: bool,
    #[arg(long)]
    boundary_pressure: bool,
}

impl RunArgs {
    fn into_config(self) -> Result<RunConfig, Error> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &self.config {
            cfg.apply_file(path)?;
        }
        let values = [
            ("mesh", self.mesh),
            ("case", self.case),
            ("forcing", self.forcing),
            ("mu", self.mu),
            ("lambda", self.lambda),
            ("levels", self.levels),
            ("out", self.out),
            ("field", self.field),
            ("viscosity-depth", self.viscosity_depth),
        ];
        for (key, value) in values {
            if let Some(v) = value {
                cfg.set(key, &v)?;
            }
        }
        let flags = [("vtk", self.vtk), ("export-matrix", self.export_matrix), ("boundary-pressure", self.boundary_pressure)];
        for (key, on) in flags {
            if on {
                cfg.set(key, "true")?;
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Exit code for an error that ended a command.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_) | Error::Io(_) => EXIT_USAGE,
        Error::Mesh(MeshError::Io(_) | MeshError::Parse { .. }) => EXIT_USAGE,
        Error::Assembly(AssemblyError::InvalidPenalty(_) | AssemblyError::EmptySystem) => EXIT_USAGE,
        _ => EXIT_NUMERICAL,
    }
}

fn thread_pool() -> Result<rayon::ThreadPool, Error> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::Usage(format!("{THREADS_ENV} must be a non-negative integer, got '{v}'")))?,
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Usage(format!("cannot start worker threads: {e}")))
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = thread_pool().and_then(|pool| {
        pool.install(|| match cli.command {
            Command::CheckMesh(a) => commands::check_mesh(&a.into_config()?),
            Command::Solve(a) => commands::solve(&a.into_config()?),
            Command::Convergence(a) => commands::convergence(&a.into_config()?),
            Command::Consistency(a) => commands::consistency(&a.into_config()?),
        })
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.cfg");
        std::fs::write(&path, "mesh = quad:4\nlevels = 2\n").unwrap();
        let args = RunArgs { config: Some(path), levels: Some("5".into()), vtk: true, ..Default::default() };
        let cfg = args.into_config().unwrap();
        assert_eq!(cfg.mesh, MeshSource::Generator("quad:4".into()));
        assert_eq!(cfg.levels, 5);
        assert!(cfg.vtk);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Usage("x".into())), EXIT_USAGE);
        assert_eq!(exit_code(&MeshError::NoIntersection { edge: 0, k: 0, l: 1 }.into()), EXIT_NUMERICAL);
        assert_eq!(exit_code(&AssemblyError::EmptySystem.into()), EXIT_USAGE);
    }

    #[test]
    fn zero_lambda_is_usage_error() {
        assert_eq!(run(["pfecc", "solve", "--mesh", "quad:2", "--lambda", "0"]), EXIT_USAGE);
    }
}
