use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, MeshError, Result};
use crate::mesh::{from_spec, load_mesh, PrimalMesh};
use crate::operators::Viscosity;
use crate::verify::{CaseId, ManufacturedCase};

/// Where the primal mesh comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum MeshSource {
    /// A generator spec such as `quad:8`.
    Generator(String),
    File(PathBuf),
}

impl MeshSource {
    pub fn parse(s: &str) -> Self {
        match from_spec(s) {
            Some(_) => MeshSource::Generator(s.to_string()),
            None => MeshSource::File(PathBuf::from(s)),
        }
    }

    pub fn load(&self) -> Result<PrimalMesh, MeshError> {
        match self {
            MeshSource::Generator(s) => from_spec(s).expect("validated in parse"),
            MeshSource::File(p) => load_mesh(p).map_err(|e| match e {
                MeshError::Io(io) => {
                    MeshError::Io(std::io::Error::new(io.kind(), format!("cannot read mesh {}: {io}", p.display())))
                }
                other => other,
            }),
        }
    }
}

/// Right-hand side for `--case solve-only`: `const:<fx>:<fy>` or the forcing
/// of a manufactured case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ForcingId {
    Constant([f64; 2]),
    Case(CaseId),
}

impl FromStr for ForcingId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if let ["const", fx, fy] = parts.as_slice() {
            let v = |t: &str| t.parse::<f64>().ok().filter(|v| v.is_finite());
            return match (v(fx), v(fy)) {
                (Some(a), Some(b)) => Ok(ForcingId::Constant([a, b])),
                _ => Err(format!("bad forcing '{s}'")),
            };
        }
        s.parse::<CaseId>()
            .map(ForcingId::Case)
            .map_err(|_| format!("unknown forcing '{s}' (expected const:<fx>:<fy> or a case id)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CaseChoice {
    Manufactured(CaseId),
    SolveOnly,
}

/// Field used by the consistency check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldId {
    Cubic,
    Sine,
    Linear,
}

impl FromStr for FieldId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "cubic" => Ok(FieldId::Cubic),
            "sine" => Ok(FieldId::Sine),
            "linear" => Ok(FieldId::Linear),
            _ => Err(format!("unknown field '{s}' (expected cubic, sine or linear)")),
        }
    }
}

/// Settings of one run, merged from defaults, an optional key=value file and
/// command-line flags, in that order.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mesh: MeshSource,
    pub case: CaseChoice,
    pub forcing: Option<ForcingId>,
    pub mu: Option<Viscosity>,
    pub lambda: f64,
    pub levels: usize,
    pub out: PathBuf,
    pub vtk: bool,
    pub export_matrix: bool,
    pub boundary_pressure: bool,
    pub viscosity_depth: u32,
    pub field: FieldId,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            mesh: MeshSource::Generator("quad:8".into()),
            case: CaseChoice::Manufactured(CaseId::Ms1),
            forcing: None,
            mu: None,
            lambda: 1.0,
            levels: 4,
            out: PathBuf::from("."),
            vtk: false,
            export_matrix: false,
            boundary_pressure: false,
            viscosity_depth: 0,
            field: FieldId::Sine,
        }
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        _ => Err(usage(format!("{key}: expected a boolean, got '{value}'"))),
    }
}

impl RunConfig {
    /// Applies one setting. Keys match the long flag names; underscores are
    /// accepted in place of dashes.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.replace('_', "-");
        match key.as_str() {
            "mesh" => self.mesh = MeshSource::parse(value),
            "case" => {
                self.case = if value.eq_ignore_ascii_case("solve-only") {
                    CaseChoice::SolveOnly
                } else {
                    CaseChoice::Manufactured(value.parse().map_err(usage)?)
                }
            }
            "forcing" => self.forcing = Some(value.parse().map_err(usage)?),
            "mu" => self.mu = Some(value.parse().map_err(|e: crate::error::OperatorError| usage(e.to_string()))?),
            "lambda" => {
                self.lambda = value.parse().map_err(|_| usage(format!("lambda: not a number: '{value}'")))?
            }
            "levels" => self.levels = value.parse().map_err(|_| usage(format!("levels: not an integer: '{value}'")))?,
            "out" => self.out = PathBuf::from(value),
            "vtk" => self.vtk = parse_bool(&key, value)?,
            "export-matrix" => self.export_matrix = parse_bool(&key, value)?,
            "boundary-pressure" => self.boundary_pressure = parse_bool(&key, value)?,
            "viscosity-depth" => {
                self.viscosity_depth =
                    value.parse().map_err(|_| usage(format!("viscosity-depth: not an integer: '{value}'")))?
            }
            "field" => self.field = value.parse().map_err(usage)?,
            _ => return Err(usage(format!("unknown setting '{key}'"))),
        }
        Ok(())
    }

    /// Applies every `key = value` line of a config file. Blank lines and
    /// `#` comments are skipped.
    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read config file {}: {e}", path.display())))?;
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| usage(format!("{}:{}: expected key = value", path.display(), i + 1)))?;
            self.set(k.trim(), v.trim())
                .map_err(|e| usage(format!("{}:{}: {e}", path.display(), i + 1)))?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda.is_finite() && self.lambda > 0.0) {
            return Err(usage(format!("lambda must be positive, got {}", self.lambda)));
        }
        if self.levels < 1 {
            return Err(usage("levels must be at least 1"));
        }
        match (self.case, self.forcing) {
            (CaseChoice::SolveOnly, None) => Err(usage("case solve-only needs --forcing")),
            (CaseChoice::Manufactured(_), Some(_)) => Err(usage("--forcing is only used with --case solve-only")),
            _ => Ok(()),
        }
    }

    /// The manufactured case, with its viscosity replaced by `--mu` if given.
    pub fn manufactured(&self) -> Option<ManufacturedCase> {
        match self.case {
            CaseChoice::Manufactured(id) => {
                let mut case = ManufacturedCase::new(id);
                if let Some(mu) = self.mu {
                    case.viscosity = mu;
                }
                Some(case)
            }
            CaseChoice::SolveOnly => None,
        }
    }

    pub fn viscosity(&self) -> Viscosity {
        match (self.mu, self.manufactured()) {
            (Some(mu), _) => mu,
            (None, Some(case)) => case.viscosity,
            (None, None) => Viscosity::Constant(1.0),
        }
    }

    /// The forcing of the run, as a closure over the configured case.
    pub fn forcing_fn(&self) -> Box<dyn Fn(crate::Point2) -> [f64; 2] + Sync> {
        if let Some(case) = self.manufactured() {
            return Box::new(move |p| case.forcing(p));
        }
        match self.forcing {
            Some(ForcingId::Constant(f)) => Box::new(move |_| f),
            Some(ForcingId::Case(id)) => {
                let case = ManufacturedCase::new(id);
                Box::new(move |p| case.forcing(p))
            }
            None => Box::new(|_| [0.0, 0.0]),
        }
    }
}
