//! Implementation of the `free-euler` subcommands, kept in the library so
//! the examples and tests can drive them without spawning a process.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{cyclic_diff, directional, free_diff, VectorField};
use crate::checks::{run_suite, SuiteReport};
use crate::error::{Error, Result};
use crate::euler::{simulate, Integrator, SimConfig, Trajectory};
use crate::leray::{leray_project_full, recover_pressure};
use crate::scalar::{fmt_f64, serialize_scalar, Mode, Scalar};
use crate::semicircular::trace;
use crate::text::{format_bitensor, format_field, format_poly, format_rational, parse_field, parse_poly, parse_rational};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// A number in a config file: JSON integer, JSON float or a `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ConfigNumber {
    Int(i64),
    Float(f64),
    Text(String),
}

impl ConfigNumber {
    /// Exact value. JSON floats are read through their shortest decimal
    /// form, so `0.01` becomes `1/100`.
    pub fn to_rational(&self) -> Result<BigRational> {
        match self {
            ConfigNumber::Int(i) => Ok(BigRational::from_integer((*i).into())),
            ConfigNumber::Float(f) if f.is_finite() => parse_rational(&format!("{f:e}")),
            ConfigNumber::Float(f) => Err(Error::InvalidConfig(format!("non-finite number {f}"))),
            ConfigNumber::Text(s) => parse_rational(s),
        }
    }
}

fn default_integrator() -> Integrator {
    Integrator::Rk4
}
fn default_mode() -> Mode {
    Mode::Float
}
fn default_viscosity() -> ConfigNumber {
    ConfigNumber::Int(0)
}
fn default_moments() -> usize {
    2
}
fn default_cadence() -> usize {
    1
}

/// Simulation config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub n: usize,
    pub trunc_degree: usize,
    pub dt: ConfigNumber,
    pub t_end: ConfigNumber,
    #[serde(default = "default_integrator")]
    pub integrator: Integrator,
    #[serde(default = "default_mode")]
    pub mode: Mode,
    #[serde(default = "default_viscosity")]
    pub viscosity: ConfigNumber,
    #[serde(default = "default_moments")]
    pub moments: usize,
    pub initial_field: Vec<String>,
    #[serde(default)]
    pub output_dir: Option<String>,
    #[serde(default = "default_cadence")]
    pub cadence: usize,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn sim_config(&self) -> Result<SimConfig> {
        let mut c = SimConfig::new(self.n, self.trunc_degree, self.dt.to_rational()?, self.t_end.to_rational()?);
        c.integrator = self.integrator;
        c.mode = self.mode;
        c.viscosity = self.viscosity.to_rational()?;
        c.moments = self.moments;
        c.cadence = self.cadence;
        c.validate()?;
        Ok(c)
    }

    /// Copy with every number written as an exact `p/q` string, so the echo
    /// in a manifest reruns to the same values.
    pub fn normalized(&self) -> Result<Self> {
        let exact = |x: &ConfigNumber| x.to_rational().map(|r| ConfigNumber::Text(format_rational(&r)));
        Ok(RunConfig {
            dt: exact(&self.dt)?,
            t_end: exact(&self.t_end)?,
            viscosity: exact(&self.viscosity)?,
            ..self.clone()
        })
    }

    pub fn initial<S: Scalar>(&self) -> Result<VectorField<S>> {
        if self.initial_field.len() != self.n {
            return Err(Error::InvalidConfig(format!(
                "initial_field has {} components, expected n = {}",
                self.initial_field.len(),
                self.n
            )));
        }
        let comps = self
            .initial_field
            .iter()
            .map(|s| parse_poly(s, self.n))
            .collect::<Result<Vec<_>>>()?;
        VectorField::new(self.n, comps)
    }
}

/// One CSV row, serialized.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecordOut {
    pub t: String,
    pub energy: String,
    pub div_residual: String,
    pub moments: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub version: String,
    pub config: RunConfig,
    pub records: Vec<RecordOut>,
    pub final_field: Option<String>,
    pub final_pressure: Option<String>,
    pub initial_projection_changed: bool,
    pub exit_status: i32,
    pub error: Option<String>,
}

fn format_time(t: &BigRational, mode: Mode) -> String {
    match mode {
        Mode::Exact => format_rational(t),
        Mode::Float => fmt_f64(t.to_f64().unwrap_or(f64::NAN)),
    }
}

fn records<S: Scalar>(traj: &Trajectory<S>) -> Vec<RecordOut> {
    traj.samples
        .iter()
        .map(|s| RecordOut {
            t: format_time(&s.t, S::MODE),
            energy: serialize_scalar(&s.energy),
            div_residual: fmt_f64(s.div_residual),
            moments: s.moments.iter().map(serialize_scalar).collect(),
        })
        .collect()
}

/// CSV with header `t,energy,div_residual,omega_m1..omega_mM`. Complex
/// cells contain no commas, so no quoting is needed.
pub fn series_csv(records: &[RecordOut], moments: usize) -> String {
    let mut out = String::from("t,energy,div_residual");
    for m in 1..=moments {
        write!(out, ",omega_m{m}").expect("string write");
    }
    out.push('\n');
    for r in records {
        write!(out, "{},{},{}", r.t, r.energy, r.div_residual).expect("string write");
        for m in &r.moments {
            write!(out, ",{m}").expect("string write");
        }
        out.push('\n');
    }
    out
}

/// Result of `simulate`, before anything touches the disk.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub manifest: RunManifest,
    pub csv: String,
}

fn run_typed<S: Scalar>(cfg: &RunConfig, sim: &SimConfig) -> Result<RunOutput> {
    let v0 = cfg.initial::<S>()?;
    let traj = simulate(&v0, sim)?;
    let recs = records(&traj);
    let last = traj.samples.last().expect("at least the initial sample");
    Ok(RunOutput {
        csv: series_csv(&recs, sim.moments),
        manifest: RunManifest {
            version: VERSION.to_string(),
            config: cfg.normalized()?,
            records: recs,
            final_field: Some(format_field(&traj.final_field)),
            final_pressure: Some(format_poly(&last.pressure)),
            initial_projection_changed: traj.initial_projection_changed,
            exit_status: 0,
            error: None,
        },
    })
}

/// Runs a configured simulation in memory. `mode` overrides the config.
pub fn run_simulation(cfg: &RunConfig, mode: Option<Mode>) -> Result<RunOutput> {
    let mut cfg = cfg.clone();
    if let Some(m) = mode {
        cfg.mode = m;
    }
    let sim = cfg.sim_config()?;
    match cfg.mode {
        Mode::Exact => run_typed::<crate::scalar::GaussRational>(&cfg, &sim),
        Mode::Float => run_typed::<num_complex::Complex64>(&cfg, &sim),
    }
}

/// Paths written by [`cmd_simulate`].
#[derive(Debug, Clone, PartialEq)]
pub struct SimulateFiles {
    pub csv: PathBuf,
    pub manifest: PathBuf,
}

/// `simulate`: writes `series.csv` and `manifest.json` into the output
/// directory (`out`, else the config's `output_dir`, else `.`). A failed run
/// still writes a manifest recording the error and exit status.
pub fn cmd_simulate(config: &Path, mode: Option<Mode>, out: Option<&Path>) -> Result<(RunOutput, SimulateFiles)> {
    let cfg = RunConfig::load(config)?;
    let dir = out
        .map(Path::to_path_buf)
        .or_else(|| cfg.output_dir.as_ref().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir)?;
    let files = SimulateFiles {
        csv: dir.join("series.csv"),
        manifest: dir.join("manifest.json"),
    };
    match run_simulation(&cfg, mode) {
        Ok(run) => {
            fs::write(&files.csv, &run.csv)?;
            write_manifest(&files.manifest, &run.manifest)?;
            Ok((run, files))
        }
        Err(e) => {
            let mut echo = cfg.clone();
            if let Some(m) = mode {
                echo.mode = m;
            }
            let manifest = RunManifest {
                version: VERSION.to_string(),
                config: echo.normalized().unwrap_or(echo),
                records: Vec::new(),
                final_field: None,
                final_pressure: None,
                initial_projection_changed: false,
                exit_status: e.exit_code(),
                error: Some(e.to_string()),
            };
            write_manifest(&files.manifest, &manifest)?;
            Err(e)
        }
    }
}

fn write_manifest(path: &Path, m: &RunManifest) -> Result<()> {
    let text = serde_json::to_string_pretty(m).map_err(|e| Error::Io(e.to_string()))?;
    fs::write(path, text + "\n")?;
    Ok(())
}

/// `check`: runs a suite (or `all`) with `cases` random cases per suite.
pub fn cmd_check(suite: &str, seed: u64, cases: usize) -> Result<Vec<SuiteReport>> {
    run_suite(suite, seed, cases)
}

/// Largest `k` with `s<k>` in the text; at least 1.
pub fn infer_n(text: &str) -> usize {
    let b = text.as_bytes();
    let mut n = 1;
    let mut i = 0;
    while i < b.len() {
        if b[i] == b's' {
            let start = i + 1;
            let mut j = start;
            while j < b.len() && b[j].is_ascii_digit() {
                j += 1;
            }
            if let Ok(k) = text[start..j].parse::<usize>() {
                n = n.max(k);
            }
            i = j.max(i + 1);
        } else {
            i += 1;
        }
    }
    n
}

/// `trace`: `τ(P)` in canonical scalar form.
pub fn cmd_trace<S: Scalar>(expr: &str, n: Option<usize>) -> Result<String> {
    let p = parse_poly::<S>(expr, n.unwrap_or_else(|| infer_n(expr)))?;
    Ok(serialize_scalar(&trace(&p)))
}

/// `project`: the Leray projection of a field and the pressure of the
/// removed cyclic-gradient part.
pub fn cmd_project<S: Scalar>(field: &str, n: Option<usize>) -> Result<(String, String)> {
    let a = parse_field::<S>(field, n)?;
    let pa = leray_project_full(&a)?;
    let p = recover_pressure(&a.checked_sub(&pa)?)?;
    Ok((format_field(&pa), format_poly(&p)))
}

/// `derive`: every `∂_j P` and `δ_j P`, and `D_b P` when a direction is given.
pub fn cmd_derive<S: Scalar>(expr: &str, n: Option<usize>, direction: Option<&str>) -> Result<String> {
    let n = n.unwrap_or_else(|| infer_n(expr).max(direction.map(infer_n).unwrap_or(1)));
    let p = parse_poly::<S>(expr, n)?;
    let mut out = String::new();
    for j in 1..=n {
        writeln!(out, "d{j}: {}", format_bitensor(&free_diff(j, &p)?)).expect("string write");
    }
    for j in 1..=n {
        writeln!(out, "delta{j}: {}", format_poly(&cyclic_diff(j, &p)?)).expect("string write");
    }
    if let Some(d) = direction {
        let b = parse_field::<S>(d, Some(n))?;
        writeln!(out, "D_b: {}", format_poly(&directional(&b, &p)?)).expect("string write");
    }
    Ok(out)
}

/// Largest deviation of the energy column from its first value, relative
/// to that value (absolute when it is zero).
pub fn energy_drift(records: &[RecordOut]) -> Option<f64> {
    let first: f64 = parse_cell(&records.first()?.energy)?;
    let worst = records
        .iter()
        .filter_map(|r| parse_cell(&r.energy))
        .map(|e| (e - first).abs())
        .fold(0.0, f64::max);
    Some(if first.is_zero() { worst } else { worst / first.abs() })
}

fn parse_cell(s: &str) -> Option<f64> {
    let p = parse_poly::<num_complex::Complex64>(s, 1).ok()?;
    Some(trace(&p).re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussRational as Q;

    fn rotation_config(mode: &str, t_end: &str) -> RunConfig {
        RunConfig::from_json(&format!(
            r#"{{"n": 2, "trunc_degree": 3, "dt": 0.01, "t_end": {t_end}, "integrator": "rk4",
               "mode": "{mode}", "viscosity": 0, "moments": 2, "initial_field": ["s2", "-s1"]}}"#
        ))
        .unwrap()
    }

    #[test]
    fn config_numbers() {
        let c = rotation_config("float", "\"1/10\"");
        let sim = c.sim_config().unwrap();
        assert_eq!(sim.dt, BigRational::new(1.into(), 100.into()));
        assert_eq!(sim.t_end, BigRational::new(1.into(), 10.into()));
        assert!(RunConfig::from_json(r#"{"n": 2}"#).is_err());
        let mut bad = c.clone();
        bad.initial_field.pop();
        assert!(matches!(run_simulation(&bad, None), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn rotation_run_has_constant_energy() {
        let run = run_simulation(&rotation_config("exact", "\"1/20\""), None).unwrap();
        let lines: Vec<&str> = run.csv.lines().collect();
        assert_eq!(lines[0], "t,energy,div_residual,omega_m1,omega_m2");
        assert_eq!(lines.len(), 7);
        for l in &lines[1..] {
            let cells: Vec<&str> = l.split(',').collect();
            assert_eq!(cells[1], "2");
            assert_eq!(cells[3], "0");
            assert_eq!(cells[4], "8");
        }
        // exact runs are reproducible from the echoed config
        let again = run_simulation(&run.manifest.config, None).unwrap();
        assert_eq!(again.csv, run.csv);
    }

    #[test]
    fn empty_horizon() {
        let run = run_simulation(&rotation_config("float", "0"), None).unwrap();
        assert_eq!(run.manifest.records.len(), 1);
        assert_eq!(energy_drift(&run.manifest.records), Some(0.0));
    }

    #[test]
    fn text_commands() {
        assert_eq!(cmd_trace::<Q>("s1^4", None).unwrap(), "2");
        assert_eq!(cmd_trace::<Q>("1", None).unwrap(), "1");
        let (f, p) = cmd_project::<Q>("(s1, s2)", None).unwrap();
        assert_eq!(f, "(0, 0)");
        assert_eq!(p, "(1/2)*s1^2 + (1/2)*s2^2");
        let d = cmd_derive::<Q>("s1*s2", None, Some("(s2, s1)")).unwrap();
        assert!(d.contains("d1: 1 ⊗ s2"));
        assert!(d.contains("delta1: s2"));
        assert!(d.contains("D_b: s1^2 + s2^2"));
        assert_eq!(infer_n("s1*s12 + s3"), 12);
    }
}
