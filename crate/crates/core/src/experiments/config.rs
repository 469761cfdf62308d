//! Flat `key = value` sweep files. Blank lines and `#` comments are
//! ignored. `experiment` is required and selects the defaults; grid
//! settings left unset are recomputed from the final `n, p, q, σ`.
//!
//! ```text
//! experiment = clean_vary_q_positive
//! n = 400
//! p = 0.4
//! trials = 50
//! seed = 7
//! methods = gat,gcn
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use super::{ExperimentKind, GridScale, Method, SweepConfig};
use crate::attention::AlphaRule;
use crate::error::{Error, Result};
use crate::model::default_feature_dim;

pub const KEYS: [&str; 20] = [
    "experiment",
    "n",
    "p",
    "q",
    "d",
    "h",
    "sigma",
    "zeta",
    "balance_mode",
    "self_loops",
    "grid_start",
    "grid_stop",
    "grid_points",
    "grid_scale",
    "trials",
    "seed",
    "methods",
    "output",
    "noisy_nu_ratio",
    "clean_nu_factor",
];

const EXTRA_KEYS: [&str; 1] = ["alpha"];

fn parse_num<T: std::str::FromStr>(key: &str, value: &str, line: usize) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::config(format!("line {line}: `{key}` has invalid value `{value}`")))
}

fn parse_bool(key: &str, value: &str, line: usize) -> Result<bool> {
    match value {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(Error::config(format!("line {line}: `{key}` expects true/false, got `{value}`"))),
    }
}

/// Splits `text` into `(line, key, value)` entries.
fn entries(text: &str) -> Result<Vec<(usize, String, String)>> {
    let mut out: Vec<(usize, String, String)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| Error::config(format!("line {line}: expected `key = value`, got `{content}`")))?;
        let (key, value) = (key.trim().to_string(), value.trim().to_string());
        if !KEYS.contains(&key.as_str()) && !EXTRA_KEYS.contains(&key.as_str()) {
            return Err(Error::config(format!("line {line}: unknown key `{key}`")));
        }
        if out.iter().any(|(_, k, _)| *k == key) {
            return Err(Error::config(format!("line {line}: duplicate key `{key}`")));
        }
        out.push((line, key, value));
    }
    Ok(out)
}

/// Parses and validates a sweep description.
pub fn parse_config(text: &str) -> Result<SweepConfig> {
    let entries = entries(text)?;
    let kind: ExperimentKind = entries
        .iter()
        .find(|(_, k, _)| k == "experiment")
        .ok_or_else(|| Error::config("missing required key `experiment`"))?
        .2
        .parse()?;
    let mut cfg = SweepConfig::new(kind);
    let (mut start, mut stop, mut points, mut scale) = (None, None, None, None);
    let (mut d, mut h) = (None, None);
    for (line, key, value) in &entries {
        let (line, value) = (*line, value.as_str());
        match key.as_str() {
            "experiment" => {}
            "n" => cfg.n = parse_num(key, value, line)?,
            "p" => cfg.p = parse_num(key, value, line)?,
            "q" => cfg.q = parse_num(key, value, line)?,
            "d" => d = Some(parse_num(key, value, line)?),
            "h" => h = Some(parse_num(key, value, line)?),
            "sigma" => cfg.sigma = parse_num(key, value, line)?,
            "zeta" => cfg.zeta = parse_num(key, value, line)?,
            "balance_mode" => cfg.balance_mode = value.parse()?,
            "self_loops" => cfg.self_loops = parse_bool(key, value, line)?,
            "grid_start" => start = Some(parse_num(key, value, line)?),
            "grid_stop" => stop = Some(parse_num(key, value, line)?),
            "grid_points" => points = Some(parse_num(key, value, line)?),
            "grid_scale" => scale = Some(value.parse::<GridScale>()?),
            "trials" => cfg.trials = parse_num(key, value, line)?,
            "seed" => cfg.seed = parse_num(key, value, line)?,
            "methods" => {
                cfg.methods = value
                    .split(',')
                    .map(|m| m.trim().parse::<Method>())
                    .collect::<Result<_>>()?;
                cfg.methods.sort();
                cfg.methods.dedup();
            }
            "output" => cfg.output = Some(PathBuf::from(value)),
            "noisy_nu_ratio" => cfg.nu_rule.noisy_ratio = parse_num(key, value, line)?,
            "clean_nu_factor" => cfg.nu_rule.clean_factor = parse_num(key, value, line)?,
            "alpha" => {
                cfg.alpha = if value == "auto" {
                    AlphaRule::Auto
                } else {
                    AlphaRule::Fixed(parse_num(key, value, line)?)
                }
            }
            _ => unreachable!("keys are checked in `entries`"),
        }
    }
    if cfg.n < 2 {
        return Err(Error::config(format!("n must be at least 2, got {}", cfg.n)));
    }
    cfg.d = d.unwrap_or_else(|| default_feature_dim(cfg.n));
    cfg.h = h.unwrap_or(cfg.d);
    let default = cfg.default_grid();
    cfg.grid.start = start.unwrap_or(default.start);
    cfg.grid.stop = stop.unwrap_or(default.stop);
    cfg.grid.points = points.unwrap_or(default.points);
    cfg.grid.scale = scale.unwrap_or(default.scale);
    cfg.validate()?;
    Ok(cfg)
}

/// Reads and parses a config file. An unreadable file is a configuration
/// error, not an I/O error.
pub fn load_config(path: &Path) -> Result<SweepConfig> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::config(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text)
}
