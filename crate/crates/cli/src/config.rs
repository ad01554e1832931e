//! Defaults, the flat key=value config file, and flag merging.
//!
//! Precedence: command-line flags > config file > built-in defaults. The
//! config file is named by `--config` or the `TRAPPED_FERMI_CONFIG`
//! environment variable.

use std::fmt;
use std::path::{Path, PathBuf};

use trapped_fermi::{Error as CoreError, TrapSpec, ZeroPointMode};

use crate::{CommonOpts, GridOpts};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Core(CoreError),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Io(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    /// Exit-code contract: 2 invalid input, 3 numerical failure.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Core(e) => match e {
                CoreError::InvalidInput(_) | CoreError::Range(_) => 2,
                _ => 3,
            },
        }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridScale {
    Linear,
    Log,
}

/// Fully merged run settings. Fields that have per-command defaults stay
/// `Option` here and are resolved by the command.
#[derive(Clone, Debug)]
pub struct Settings {
    pub omega: Option<[f64; 3]>,
    pub n: Option<f64>,
    pub mode: ZeroPointMode,
    pub format: OutputFormat,
    pub output: Option<PathBuf>,
    pub nprime_literal: bool,
    pub t: Option<f64>,
    pub t_min: Option<f64>,
    pub t_max: Option<f64>,
    pub t_points: Option<usize>,
    pub t_scale: Option<GridScale>,
    pub points: Option<usize>,
    pub n_small: Option<f64>,
    pub n_large: Option<f64>,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            omega: None,
            n: None,
            mode: ZeroPointMode::RelativeSpectrum,
            format: OutputFormat::Csv,
            output: None,
            nprime_literal: false,
            t: None,
            t_min: None,
            t_max: None,
            t_points: None,
            t_scale: None,
            points: None,
            n_small: None,
            n_large: None,
        }
    }
}

fn parse_omega(raw: &str) -> CliResult<[f64; 3]> {
    let parts: Vec<&str> = raw.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(CliError::usage(format!(
            "--omega expects three comma-separated frequencies, got \"{raw}\""
        )));
    }
    let mut w = [0.0; 3];
    for (slot, part) in w.iter_mut().zip(&parts) {
        *slot = part
            .parse::<f64>()
            .map_err(|_| CliError::usage(format!("cannot parse frequency \"{part}\"")))?;
    }
    Ok(w)
}

fn parse_mode(raw: &str) -> CliResult<ZeroPointMode> {
    match raw {
        "relative" => Ok(ZeroPointMode::RelativeSpectrum),
        "absolute" => Ok(ZeroPointMode::AbsoluteSpectrum),
        other => Err(CliError::usage(format!(
            "mode must be \"relative\" or \"absolute\", got \"{other}\""
        ))),
    }
}

fn parse_format(raw: &str) -> CliResult<OutputFormat> {
    match raw {
        "csv" => Ok(OutputFormat::Csv),
        "json" => Ok(OutputFormat::Json),
        other => Err(CliError::usage(format!(
            "format must be \"csv\" or \"json\", got \"{other}\""
        ))),
    }
}

fn parse_scale(raw: &str) -> CliResult<GridScale> {
    match raw {
        "linear" => Ok(GridScale::Linear),
        "log" => Ok(GridScale::Log),
        other => Err(CliError::usage(format!(
            "t-scale must be \"linear\" or \"log\", got \"{other}\""
        ))),
    }
}

fn parse_bool(raw: &str, key: &str) -> CliResult<bool> {
    match raw {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        other => Err(CliError::usage(format!("cannot parse boolean \"{other}\" for {key}"))),
    }
}

fn parse_f64(raw: &str, key: &str) -> CliResult<f64> {
    raw.parse::<f64>()
        .map_err(|_| CliError::usage(format!("cannot parse number \"{raw}\" for {key}")))
}

fn parse_usize(raw: &str, key: &str) -> CliResult<usize> {
    raw.parse::<usize>()
        .map_err(|_| CliError::usage(format!("cannot parse integer \"{raw}\" for {key}")))
}

fn apply_file(settings: &mut Settings, path: &Path) -> CliResult<()> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        CliError::Io(format!("cannot read config file {}: {e}", path.display()))
    })?;
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::usage(format!(
                "config line {} is not key=value: \"{line}\"",
                idx + 1
            ))
        })?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "omega" => settings.omega = Some(parse_omega(value)?),
            "n" => settings.n = Some(parse_f64(value, key)?),
            "mode" => settings.mode = parse_mode(value)?,
            "format" => settings.format = parse_format(value)?,
            "output" => settings.output = Some(PathBuf::from(value)),
            "nprime_literal" => settings.nprime_literal = parse_bool(value, key)?,
            "t" => settings.t = Some(parse_f64(value, key)?),
            "t_min" => settings.t_min = Some(parse_f64(value, key)?),
            "t_max" => settings.t_max = Some(parse_f64(value, key)?),
            "t_points" => settings.t_points = Some(parse_usize(value, key)?),
            "t_scale" => settings.t_scale = Some(parse_scale(value)?),
            "points" => settings.points = Some(parse_usize(value, key)?),
            "n_small" => settings.n_small = Some(parse_f64(value, key)?),
            "n_large" => settings.n_large = Some(parse_f64(value, key)?),
            other => {
                return Err(CliError::usage(format!(
                    "unknown config key \"{other}\" in {}",
                    path.display()
                )))
            }
        }
    }
    Ok(())
}

/// Build settings from defaults, then the config file, then the flags.
pub fn resolve(
    config_flag: Option<&Path>,
    common: &CommonOpts,
    grid: Option<&GridOpts>,
) -> CliResult<Settings> {
    let mut settings = Settings::default();

    let env_path = std::env::var_os("TRAPPED_FERMI_CONFIG").map(PathBuf::from);
    if let Some(path) = config_flag.map(Path::to_path_buf).or(env_path) {
        apply_file(&mut settings, &path)?;
    }

    if let Some(raw) = &common.omega {
        settings.omega = Some(parse_omega(raw)?);
    }
    if let Some(n) = common.n {
        settings.n = Some(n);
    }
    if let Some(mode) = &common.mode {
        settings.mode = parse_mode(mode)?;
    }
    if let Some(format) = &common.format {
        settings.format = parse_format(format)?;
    }
    if let Some(output) = &common.output {
        settings.output = Some(output.clone());
    }
    if common.nprime_literal {
        settings.nprime_literal = true;
    }
    if let Some(grid) = grid {
        if let Some(t) = grid.t {
            settings.t = Some(t);
        }
        if let Some(v) = grid.t_min {
            settings.t_min = Some(v);
        }
        if let Some(v) = grid.t_max {
            settings.t_max = Some(v);
        }
        if let Some(v) = grid.t_points {
            settings.t_points = Some(v);
        }
        if let Some(v) = &grid.t_scale {
            settings.t_scale = Some(parse_scale(v)?);
        }
    }
    Ok(settings)
}

impl Settings {
    /// The trap for this run; `default_omega` supplies the per-command
    /// fallback frequencies.
    pub fn trap(&self, default_omega: [f64; 3]) -> CliResult<TrapSpec> {
        let w = self.omega.unwrap_or(default_omega);
        Ok(TrapSpec::new(w[0], w[1], w[2], self.mode)?)
    }

    pub fn particle_number(&self, default_n: f64) -> CliResult<f64> {
        let n = self.n.unwrap_or(default_n);
        if !n.is_finite() || n < 1.0 {
            return Err(CliError::usage(format!("particle number must be >= 1, got {n}")));
        }
        Ok(n)
    }
}

/// Build a temperature grid from the settings.
pub fn build_grid(
    settings: &Settings,
    default_min: f64,
    default_max: f64,
    default_points: usize,
    default_scale: GridScale,
) -> CliResult<Vec<f64>> {
    if let Some(t) = settings.t {
        return Ok(vec![t]);
    }
    let min = settings.t_min.unwrap_or(default_min);
    let max = settings.t_max.unwrap_or(default_max);
    let points = settings.t_points.unwrap_or(default_points);
    let scale = settings.t_scale.unwrap_or(default_scale);
    grid_values(min, max, points, scale)
}

pub fn grid_values(min: f64, max: f64, points: usize, scale: GridScale) -> CliResult<Vec<f64>> {
    if points == 0 {
        return Err(CliError::usage("grid needs at least one point".to_string()));
    }
    if !(min.is_finite() && min > 0.0) {
        return Err(CliError::usage(format!("grid minimum must be positive, got {min}")));
    }
    if points == 1 {
        return Ok(vec![min]);
    }
    if !(max.is_finite() && max > min) {
        return Err(CliError::usage(format!(
            "grid maximum must exceed the minimum for more than one point (min {min}, max {max})"
        )));
    }
    let k = (points - 1) as f64;
    let values = (0..points)
        .map(|i| {
            let frac = i as f64 / k;
            match scale {
                GridScale::Linear => min + (max - min) * frac,
                GridScale::Log => min * (max / min).powf(frac),
            }
        })
        .collect();
    Ok(values)
}
