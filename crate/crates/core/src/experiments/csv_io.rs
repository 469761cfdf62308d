//! Tidy CSV output: one row per `(point, trial, method)` plus a
//! `<stem>_summary.csv` with per-point means and standard deviations.

use std::fs;
use std::path::{Path, PathBuf};

use super::sweep::{SummaryRecord, SweepResult, TrialRecord};
use super::Method;
use crate::error::{Error, Result};

pub const TRIAL_HEADER: [&str; 13] = [
    "experiment",
    "point",
    "grid_value",
    "trial",
    "method",
    "accuracy",
    "perfect",
    "intra_gamma_mean",
    "inter_gamma_mean",
    "intra_mass",
    "inter_mass",
    "sum_sq_gamma_median",
    "seed",
];

/// Formats `x` with 9 significant digits, trailing zeros removed, in fixed
/// notation for exponents in `[-5, 9)` and scientific otherwise.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// `dir/stem_summary.ext` for `dir/stem.ext`.
pub fn summary_path(path: &Path) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("results");
    let name = match path.extension().and_then(|e| e.to_str()) {
        Some(ext) => format!("{stem}_summary.{ext}"),
        None => format!("{stem}_summary"),
    };
    path.with_file_name(name)
}

fn csv_err(path: &Path) -> impl Fn(csv::Error) -> Error + '_ {
    move |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    }
}

fn writer(path: &Path) -> Result<csv::Writer<fs::File>> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    csv::Writer::from_path(path).map_err(csv_err(path))
}

pub fn summary_header() -> Vec<String> {
    let mut header: Vec<String> = ["experiment", "point", "grid_value", "method", "trials"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    for m in SummaryRecord::METRICS {
        header.push(format!("{m}_mean"));
        header.push(format!("{m}_std"));
    }
    header
}

/// Writes the trial file at `path` and the summary file next to it.
/// Returns the summary path.
pub fn emit_csv(result: &SweepResult, path: &Path) -> Result<PathBuf> {
    let experiment = result.kind.as_str();
    let mut w = writer(path)?;
    w.write_record(TRIAL_HEADER).map_err(csv_err(path))?;
    for r in &result.trials {
        w.write_record([
            experiment.to_string(),
            r.point.to_string(),
            format_float(r.grid_value),
            r.trial.to_string(),
            r.method.as_str().to_string(),
            format_float(r.accuracy),
            u8::from(r.perfect).to_string(),
            format_float(r.intra_gamma_mean),
            format_float(r.inter_gamma_mean),
            format_float(r.intra_mass),
            format_float(r.inter_mass),
            format_float(r.sum_sq_gamma_median),
            r.seed.to_string(),
        ])
        .map_err(csv_err(path))?;
    }
    w.flush().map_err(|e| Error::io(path, e))?;

    let spath = summary_path(path);
    let mut w = writer(&spath)?;
    w.write_record(summary_header()).map_err(csv_err(&spath))?;
    for s in &result.summaries {
        let mut row = vec![
            experiment.to_string(),
            s.point.to_string(),
            format_float(s.grid_value),
            s.method.as_str().to_string(),
            s.trials.to_string(),
        ];
        for (mean, std) in s.metrics {
            row.push(format_float(mean));
            row.push(format_float(std));
        }
        w.write_record(&row).map_err(csv_err(&spath))?;
    }
    w.flush().map_err(|e| Error::io(&spath, e))?;
    Ok(spath)
}

fn field<T: std::str::FromStr>(record: &csv::StringRecord, k: usize, path: &Path) -> Result<T> {
    let raw = record.get(k).unwrap_or("");
    raw.parse().map_err(|_| {
        Error::config(format!(
            "{}: line {}: bad `{}` value `{raw}`",
            path.display(),
            record.position().map_or(0, |p| p.line()),
            TRIAL_HEADER[k]
        ))
    })
}

/// Reads a trial file written by [`emit_csv`].
pub fn read_trials_csv(path: &Path) -> Result<Vec<TrialRecord>> {
    let mut reader = csv::Reader::from_path(path).map_err(csv_err(path))?;
    let header = reader.headers().map_err(csv_err(path))?.clone();
    if header.iter().ne(TRIAL_HEADER.iter().copied()) {
        return Err(Error::config(format!("{}: unexpected header", path.display())));
    }
    let mut out = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_err(path))?;
        let method: String = field(&record, 4, path)?;
        out.push(TrialRecord {
            point: field(&record, 1, path)?,
            grid_value: field(&record, 2, path)?,
            trial: field(&record, 3, path)?,
            method: method.parse::<Method>()?,
            accuracy: field(&record, 5, path)?,
            perfect: field::<u8>(&record, 6, path)? == 1,
            intra_gamma_mean: field(&record, 7, path)?,
            inter_gamma_mean: field(&record, 8, path)?,
            intra_mass: field(&record, 9, path)?,
            inter_mass: field(&record, 10, path)?,
            sum_sq_gamma_median: field(&record, 11, path)?,
            seed: field(&record, 12, path)?,
        });
    }
    Ok(out)
}
