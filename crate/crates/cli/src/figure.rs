//! Long-format CSV of average 2-vs-2 entropies over an α grid.

use std::fmt::Write as _;
use std::str::FromStr;

use qent4::entanglement::{mean_entropy, CutSpectra, EntropyMeasure};
use rayon::prelude::*;

use crate::document::StateLabel;
use crate::error::{CliError, CliResult};

pub const CSV_HEADER: &str = "alpha,family,state,value";
const SIGNIFICANT_DIGITS: i32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveFamily {
    Tsallis,
    Renyi,
}

impl CurveFamily {
    pub fn label(self) -> &'static str {
        match self {
            CurveFamily::Tsallis => "tsallis",
            CurveFamily::Renyi => "renyi",
        }
    }

    fn measure(self, alpha: f64) -> EntropyMeasure {
        match self {
            CurveFamily::Tsallis => EntropyMeasure::tsallis(alpha),
            CurveFamily::Renyi => EntropyMeasure::renyi(alpha),
        }
    }
}

impl FromStr for CurveFamily {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "tsallis" => Ok(CurveFamily::Tsallis),
            "renyi" => Ok(CurveFamily::Renyi),
            _ => Err(CliError::Config(format!("unknown curve family `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaGrid {
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

impl AlphaGrid {
    pub fn new(min: f64, max: f64, step: f64) -> CliResult<Self> {
        let ok = min.is_finite() && max.is_finite() && step.is_finite();
        if !ok || min <= 0.0 || max < min || step <= 0.0 {
            return Err(CliError::Config(format!(
                "invalid alpha grid: min {min}, max {max}, step {step}"
            )));
        }
        Ok(Self { min, max, step })
    }

    /// Inclusive of both endpoints when `max − min` is a multiple of `step`.
    pub fn points(&self) -> Vec<f64> {
        let n = ((self.max - self.min) / self.step + 1e-9).floor() as usize + 1;
        (0..n).map(|i| self.min + i as f64 * self.step).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureRow {
    pub alpha: f64,
    pub family: CurveFamily,
    pub state: String,
    pub value: f64,
}

/// Rows ordered by α, then family, then state in the order given.
pub fn figure_rows(
    states: &[StateLabel],
    families: &[CurveFamily],
    grid: &AlphaGrid,
) -> CliResult<Vec<FigureRow>> {
    let prepared: Vec<(String, CutSpectra)> = states
        .iter()
        .map(|l| Ok((l.to_string(), CutSpectra::of_state(&l.state())?)))
        .collect::<CliResult<_>>()?;
    let per_alpha: Vec<CliResult<Vec<FigureRow>>> = grid
        .points()
        .into_par_iter()
        .map(|alpha| {
            let mut rows = Vec::with_capacity(families.len() * prepared.len());
            for &family in families {
                let m = family.measure(alpha);
                for (label, spectra) in &prepared {
                    rows.push(FigureRow {
                        alpha,
                        family,
                        state: label.clone(),
                        value: mean_entropy(spectra.as_array(), &m)?,
                    });
                }
            }
            Ok(rows)
        })
        .collect();
    let mut rows = Vec::new();
    for chunk in per_alpha {
        rows.extend(chunk?);
    }
    Ok(rows)
}

/// Fixed-point decimal with 12 significant digits.
pub fn format_significant(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return if v == 0.0 { "0".into() } else { v.to_string() };
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (SIGNIFICANT_DIGITS - 1 - magnitude).max(0) as usize;
    format!("{v:.decimals$}")
}

pub fn to_csv(rows: &[FigureRow]) -> String {
    let mut out = String::with_capacity(rows.len() * 40);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            format_significant(r.alpha),
            r.family.label(),
            r.state,
            format_significant(r.value)
        );
    }
    out
}
