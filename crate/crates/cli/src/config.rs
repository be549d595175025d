//! Flat `dotted.key = value` run configuration.
//!
//! ```text
//! # Rabi flopping, circular drive
//! experiment = semiclassical
//! physics.B = 1.0
//! physics.B3 = 1.0
//! physics.omega = 2.0
//! grid.t_end = 20
//! grid.n_steps = 401
//! ```
//!
//! Blank lines and `#` comments are ignored; string values may be quoted.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rabiqed_core::semiclassical::Integrator;

use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Experiment {
    Semiclassical,
    ResonanceSweep,
    QuantumRabi,
    JcCompare,
    FermionCheck,
}

impl Experiment {
    pub const ALL: [Experiment; 5] = [
        Experiment::Semiclassical,
        Experiment::ResonanceSweep,
        Experiment::QuantumRabi,
        Experiment::JcCompare,
        Experiment::FermionCheck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::Semiclassical => "semiclassical",
            Experiment::ResonanceSweep => "resonance-sweep",
            Experiment::QuantumRabi => "quantum-rabi",
            Experiment::JcCompare => "jc-compare",
            Experiment::FermionCheck => "fermion-check",
        }
    }

    fn is_quantum(self) -> bool {
        matches!(self, Experiment::QuantumRabi | Experiment::JcCompare)
    }

    fn uses_time_grid(self) -> bool {
        !matches!(self, Experiment::ResonanceSweep | Experiment::FermionCheck)
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        Experiment::ALL.into_iter().find(|e| e.name() == s).ok_or_else(|| {
            let names: Vec<_> = Experiment::ALL.iter().map(|e| e.name()).collect();
            CliError::invalid("experiment", format!("`{s}` is not one of {}", names.join(", ")))
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(CliError::invalid(
                "output.format",
                format!("expected csv or json, got `{s}`"),
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Physics {
    pub b: Option<f64>,
    pub b3: Option<f64>,
    pub omega: Option<f64>,
    pub mu: f64,
    pub n_max: Option<usize>,
    /// Photon number of the initial sector.
    pub n: usize,
    /// Quantum Rabi coupling; defaults to `B/√(n+1)`.
    pub rabi: Option<f64>,
    /// Jaynes–Cummings coupling; defaults to `−μ√(2|ω|)`.
    pub g: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TimeGrid {
    pub t_start: f64,
    pub t_end: f64,
    pub n_steps: usize,
    pub dt_max: Option<f64>,
    pub integrator: Integrator,
}

impl TimeGrid {
    /// `n_steps` equally spaced times including both ends.
    pub fn times(&self) -> Vec<f64> {
        let last = (self.n_steps - 1) as f64;
        (0..self.n_steps)
            .map(|k| {
                if k + 1 == self.n_steps {
                    self.t_end
                } else {
                    self.t_start + (self.t_end - self.t_start) * k as f64 / last
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Sweep {
    pub omega_grid: Vec<f64>,
    pub horizon: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Output {
    pub path: Option<PathBuf>,
    pub format: Format,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub experiment: Experiment,
    pub physics: Physics,
    pub grid: Option<TimeGrid>,
    pub sweep: Option<Sweep>,
    pub output: Output,
    /// Reserved; every run is deterministic.
    pub seed: u64,
    /// Keys exactly as given, for the metadata echo.
    pub entries: BTreeMap<String, String>,
}

const KEYS: &[&str] = &[
    "experiment",
    "physics.B",
    "physics.B3",
    "physics.omega",
    "physics.mu",
    "physics.n_max",
    "physics.n",
    "physics.Omega",
    "physics.g",
    "grid.t_start",
    "grid.t_end",
    "grid.n_steps",
    "grid.dt_max",
    "grid.integrator",
    "sweep.omega",
    "sweep.omega_min",
    "sweep.omega_max",
    "sweep.omega_step",
    "sweep.horizon",
    "output.path",
    "output.format",
    "seed",
];

fn unquote(v: &str) -> &str {
    let v = v.trim();
    for q in ['"', '\''] {
        if v.len() >= 2 && v.starts_with(q) && v.ends_with(q) {
            return &v[1..v.len() - 1];
        }
    }
    v
}

fn tokenize(text: &str) -> Result<BTreeMap<String, String>> {
    let mut entries = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| CliError::Syntax {
            line: i + 1,
            reason: format!("expected `key = value`, got `{line}`"),
        })?;
        let key = key.trim();
        if key.is_empty() {
            return Err(CliError::Syntax {
                line: i + 1,
                reason: "empty key".into(),
            });
        }
        if !KEYS.contains(&key) {
            return Err(CliError::UnknownKey(key.to_string()));
        }
        if entries.insert(key.to_string(), unquote(value).to_string()).is_some() {
            return Err(CliError::DuplicateKey(key.to_string()));
        }
    }
    Ok(entries)
}

struct Reader<'a>(&'a BTreeMap<String, String>);

impl Reader<'_> {
    fn text(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    fn real(&self, key: &str) -> Result<Option<f64>> {
        self.text(key)
            .map(|s| match s.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(CliError::invalid(key, format!("expected a finite number, got `{s}`"))),
            })
            .transpose()
    }

    fn count(&self, key: &str) -> Result<Option<usize>> {
        self.text(key)
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|_| CliError::invalid(key, format!("expected a non-negative integer, got `{s}`")))
            })
            .transpose()
    }

    fn reals(&self, key: &str) -> Result<Option<Vec<f64>>> {
        self.text(key)
            .map(|s| {
                s.split(',')
                    .map(|x| match x.trim().parse::<f64>() {
                        Ok(v) if v.is_finite() => Ok(v),
                        _ => Err(CliError::invalid(key, format!("`{}` is not a finite number", x.trim()))),
                    })
                    .collect()
            })
            .transpose()
    }
}

fn require<T>(v: Option<T>, key: &'static str, exp: Experiment) -> Result<T> {
    v.ok_or(CliError::Missing {
        key,
        experiment: exp.name(),
    })
}

fn omega_grid(r: &Reader, exp: Experiment) -> Result<Vec<f64>> {
    let range = (
        r.real("sweep.omega_min")?,
        r.real("sweep.omega_max")?,
        r.real("sweep.omega_step")?,
    );
    let grid = match (r.reals("sweep.omega")?, range) {
        (Some(_), (Some(_), _, _) | (_, Some(_), _) | (_, _, Some(_))) => {
            return Err(CliError::invalid(
                "sweep.omega",
                "give either an explicit list or omega_min/omega_max/omega_step, not both",
            ))
        }
        (Some(list), _) => list,
        (None, (Some(lo), Some(hi), Some(step))) => {
            if step <= 0.0 {
                return Err(CliError::invalid(
                    "sweep.omega_step",
                    format!("must be > 0, got {step}"),
                ));
            }
            if hi < lo {
                return Err(CliError::invalid(
                    "sweep.omega_max",
                    format!("must be ≥ omega_min ({lo}), got {hi}"),
                ));
            }
            // Rounded so that an end point within 1e-9 steps is included.
            let n = ((hi - lo) / step + 1e-9).floor() as usize;
            (0..=n).map(|k| lo + k as f64 * step).collect()
        }
        (None, (None, None, None)) => {
            return Err(CliError::Missing {
                key: "sweep.omega",
                experiment: exp.name(),
            })
        }
        (None, _) => {
            return Err(CliError::invalid(
                "sweep",
                "omega_min, omega_max and omega_step must be given together",
            ))
        }
    };
    if grid.is_empty() {
        return Err(CliError::invalid("sweep.omega", "grid is empty"));
    }
    Ok(grid)
}

fn time_grid(r: &Reader, exp: Experiment) -> Result<TimeGrid> {
    let t_start = r.real("grid.t_start")?.unwrap_or(0.0);
    let t_end = require(r.real("grid.t_end")?, "grid.t_end", exp)?;
    let n_steps = require(r.count("grid.n_steps")?, "grid.n_steps", exp)?;
    if t_end <= t_start {
        return Err(CliError::invalid(
            "grid.t_end",
            format!("must be > t_start ({t_start}), got {t_end}"),
        ));
    }
    if n_steps < 2 {
        return Err(CliError::invalid("grid.n_steps", format!("must be ≥ 2, got {n_steps}")));
    }
    if t_start < 0.0 {
        return Err(CliError::invalid(
            "grid.t_start",
            format!("must be ≥ 0, the initial state is prepared at t = 0; got {t_start}"),
        ));
    }
    let dt_max = r.real("grid.dt_max")?;
    if let Some(dt) = dt_max {
        if dt <= 0.0 {
            return Err(CliError::invalid("grid.dt_max", format!("must be > 0, got {dt}")));
        }
    }
    let integrator = match r.text("grid.integrator") {
        None | Some("magnus4") => Integrator::Magnus4,
        Some("midpoint") => Integrator::Midpoint,
        Some(other) => {
            return Err(CliError::invalid(
                "grid.integrator",
                format!("expected magnus4 or midpoint, got `{other}`"),
            ))
        }
    };
    Ok(TimeGrid {
        t_start,
        t_end,
        n_steps,
        dt_max,
        integrator,
    })
}

/// Parses and validates a configuration document, applying defaults
/// (`μ = −1`, `format = csv`, `t_start = 0`, `n = 0`).
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let entries = tokenize(text)?;
    let r = Reader(&entries);
    let exp: Experiment = r
        .text("experiment")
        .ok_or(CliError::Missing {
            key: "experiment",
            experiment: "(any)",
        })?
        .parse()?;

    let physics = Physics {
        b: r.real("physics.B")?,
        b3: r.real("physics.B3")?,
        omega: r.real("physics.omega")?,
        mu: r.real("physics.mu")?.unwrap_or(-1.0),
        n_max: r.count("physics.n_max")?,
        n: r.count("physics.n")?.unwrap_or(0),
        rabi: r.real("physics.Omega")?,
        g: r.real("physics.g")?,
    };
    if let Some(b) = physics.b {
        if b < 0.0 {
            return Err(CliError::invalid("physics.B", format!("must be ≥ 0, got {b}")));
        }
    }

    match exp {
        Experiment::Semiclassical => {
            require(physics.b, "physics.B", exp)?;
            require(physics.b3, "physics.B3", exp)?;
            require(physics.omega, "physics.omega", exp)?;
        }
        Experiment::ResonanceSweep => {
            let b = require(physics.b, "physics.B", exp)?;
            require(physics.b3, "physics.B3", exp)?;
            if b == 0.0 && r.text("sweep.horizon").is_none() {
                return Err(CliError::invalid(
                    "sweep.horizon",
                    "required when physics.B = 0 (the default horizon is π/B)",
                ));
            }
        }
        Experiment::QuantumRabi => {
            require(physics.b, "physics.B", exp)?;
            require(physics.b3, "physics.B3", exp)?;
            require(physics.omega, "physics.omega", exp)?;
        }
        Experiment::JcCompare => {
            require(physics.b3, "physics.B3", exp)?;
            require(physics.omega, "physics.omega", exp)?;
        }
        Experiment::FermionCheck => {}
    }

    if exp.is_quantum() {
        let n_max = require(physics.n_max, "physics.n_max", exp)?;
        if n_max < 3 {
            return Err(CliError::invalid(
                "physics.n_max",
                format!("n_max ≥ 3 required for quantum experiments, got {n_max}"),
            ));
        }
        // Keep the prepared state two levels below the truncation edge.
        let top = if exp == Experiment::QuantumRabi {
            physics.n + 1
        } else {
            physics.n
        };
        if top + 2 > n_max {
            return Err(CliError::invalid(
                "physics.n",
                format!("initial photon level {top} must be ≤ n_max − 2 = {}", n_max - 2),
            ));
        }
        if physics.omega == Some(0.0) {
            return Err(CliError::invalid("physics.omega", "must be non-zero for a photon mode"));
        }
    }

    let grid = if exp.uses_time_grid() {
        Some(time_grid(&r, exp)?)
    } else {
        None
    };
    let sweep = if exp == Experiment::ResonanceSweep {
        let horizon = r.real("sweep.horizon")?;
        if let Some(h) = horizon {
            if h < 0.0 {
                return Err(CliError::invalid("sweep.horizon", format!("must be ≥ 0, got {h}")));
            }
        }
        Some(Sweep {
            omega_grid: omega_grid(&r, exp)?,
            horizon,
        })
    } else {
        None
    };

    let output = Output {
        path: r.text("output.path").map(PathBuf::from),
        format: r.text("output.format").map(str::parse).transpose()?.unwrap_or_default(),
    };
    let seed = r.text("seed").map_or(Ok(0), |s| {
        s.parse::<u64>()
            .map_err(|_| CliError::invalid("seed", format!("expected a non-negative integer, got `{s}`")))
    })?;

    Ok(RunConfig {
        experiment: exp,
        physics,
        grid,
        sweep,
        output,
        seed,
        entries,
    })
}
