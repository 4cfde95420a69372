//! State documents: one JSON object per line, holding either 16 computational
//! amplitudes or 4 magic-basis coefficients as `[re, im]` pairs.

use std::fmt;
use std::io::{BufRead, BufReader, Read};
use std::str::FromStr;

use num_complex::Complex64 as C64;
use qent4::states::{
    eq_last_state, from_magic, named_state, MagicCoeffs, NamedState, PureState4,
};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// Norm deviations up to this are corrected silently.
pub const SILENT_NORM_TOL: f64 = 1e-8;
/// Norm deviations above this are rejected.
pub const REJECT_NORM_TOL: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Amplitudes,
    Magic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDocument {
    pub format: Format,
    pub data: Vec<[f64; 2]>,
}

impl StateDocument {
    pub fn from_state(s: &PureState4) -> Self {
        Self {
            format: Format::Amplitudes,
            data: s.amplitudes().iter().map(|a| [a.re, a.im]).collect(),
        }
    }

    /// The unnormalized state the document describes.
    pub fn raw_state(&self) -> CliResult<PureState4> {
        let values: Vec<C64> = self.data.iter().map(|[re, im]| C64::new(*re, *im)).collect();
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(CliError::Parse("non-finite entry".into()));
        }
        match (self.format, values.len()) {
            (Format::Amplitudes, 16) => Ok(PureState4::from_slice(&values)?),
            (Format::Magic, 4) => Ok(from_magic(&MagicCoeffs::new([
                values[0], values[1], values[2], values[3],
            ]))),
            (Format::Amplitudes, n) => Err(CliError::Parse(format!(
                "amplitudes document needs 16 entries, got {n}"
            ))),
            (Format::Magic, n) => Err(CliError::Parse(format!(
                "magic document needs 4 entries, got {n}"
            ))),
        }
    }
}

/// A state accepted after the norm policy, with a warning when it had to be
/// visibly renormalized.
#[derive(Debug, Clone, PartialEq)]
pub struct Accepted {
    pub state: PureState4,
    pub warning: Option<String>,
}

pub fn apply_norm_policy(raw: PureState4) -> CliResult<Accepted> {
    let norm = raw.norm();
    let deviation = (norm - 1.0).abs();
    if !(deviation <= REJECT_NORM_TOL) {
        return Err(CliError::Norm(format!(
            "state norm {norm} deviates from 1 by more than {REJECT_NORM_TOL}"
        )));
    }
    let warning = (deviation > SILENT_NORM_TOL)
        .then(|| format!("state norm {norm} renormalized"));
    Ok(Accepted {
        state: raw.normalized()?,
        warning,
    })
}

pub fn parse_document(line: &str) -> CliResult<Accepted> {
    let doc: StateDocument =
        serde_json::from_str(line).map_err(|e| CliError::Parse(e.to_string()))?;
    apply_norm_policy(doc.raw_state()?)
}

/// Reads newline-delimited documents; blank lines are skipped.
pub fn read_documents(reader: impl Read) -> CliResult<Vec<Accepted>> {
    let mut out = Vec::new();
    for (i, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let accepted = parse_document(&line).map_err(|e| match e {
            CliError::Parse(m) => CliError::Parse(format!("line {}: {m}", i + 1)),
            CliError::Norm(m) => CliError::Norm(format!("line {}: {m}", i + 1)),
            other => other,
        })?;
        out.push(accepted);
    }
    if out.is_empty() {
        return Err(CliError::Parse("no state documents in input".into()));
    }
    Ok(out)
}

/// A named state or a member of the `eqlast:<θ>` family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateLabel {
    Named(NamedState),
    EqLast(f64),
}

impl StateLabel {
    pub fn state(&self) -> PureState4 {
        match *self {
            StateLabel::Named(n) => named_state(n),
            StateLabel::EqLast(theta) => eq_last_state(theta),
        }
    }
}

impl FromStr for StateLabel {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        let s = s.trim();
        if let Some(theta) = s.strip_prefix("eqlast:") {
            let theta: f64 = theta
                .parse()
                .map_err(|_| CliError::Config(format!("bad eqlast angle `{theta}`")))?;
            if !theta.is_finite() {
                return Err(CliError::Config(format!("bad eqlast angle `{theta}`")));
            }
            return Ok(StateLabel::EqLast(theta));
        }
        s.parse::<NamedState>()
            .map(StateLabel::Named)
            .map_err(|_| CliError::Config(format!("unknown state label `{s}`")))
    }
}

impl fmt::Display for StateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateLabel::Named(n) => write!(f, "{n}"),
            StateLabel::EqLast(theta) => write!(f, "eqlast:{theta}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ghz_line(scale: f64) -> String {
        let mut data = vec![[0.0, 0.0]; 16];
        data[0] = [scale * std::f64::consts::FRAC_1_SQRT_2, 0.0];
        data[15] = [scale * std::f64::consts::FRAC_1_SQRT_2, 0.0];
        serde_json::to_string(&StateDocument {
            format: Format::Amplitudes,
            data,
        })
        .unwrap()
    }

    #[test]
    fn norm_policy_thresholds() {
        assert!(parse_document(&ghz_line(1.0)).unwrap().warning.is_none());
        assert!(parse_document(&ghz_line(1.0 + 1e-9)).unwrap().warning.is_none());
        let warned = parse_document(&ghz_line(1.0 + 1e-5)).unwrap();
        assert!(warned.warning.is_some());
        assert!((warned.state.norm() - 1.0).abs() < 1e-14);
        assert!(matches!(parse_document(&ghz_line(1.01)), Err(CliError::Norm(_))));
    }

    #[test]
    fn malformed_documents_are_parse_errors() {
        for line in [
            "not json",
            r#"{"format":"amplitudes","data":[[1,0]]}"#,
            r#"{"format":"magic","data":[[1,0],[0,0],[0,0]]}"#,
            r#"{"format":"other","data":[]}"#,
            r#"{"format":"magic","data":[[1,0],[0,0],[0,0],[0,0]],"extra":1}"#,
        ] {
            assert!(matches!(parse_document(line), Err(CliError::Parse(_))), "{line}");
        }
        assert!(matches!(read_documents("\n\n".as_bytes()), Err(CliError::Parse(_))));
    }

    #[test]
    fn magic_documents_round_trip() {
        let line = r#"{"format":"magic","data":[[1,0],[0,0],[0,0],[0,0]]}"#;
        let s = parse_document(line).unwrap().state;
        let back = StateDocument::from_state(&s).raw_state().unwrap();
        assert!(back.max_abs_diff(&s) < 1e-15);
    }

    #[test]
    fn labels() {
        assert_eq!("C1".parse::<StateLabel>().unwrap(), StateLabel::Named(NamedState::C1));
        assert_eq!("eqlast:0.5".parse::<StateLabel>().unwrap(), StateLabel::EqLast(0.5));
        assert!(matches!("X".parse::<StateLabel>(), Err(CliError::Config(_))));
        assert!(matches!("eqlast:abc".parse::<StateLabel>(), Err(CliError::Config(_))));
    }
}
