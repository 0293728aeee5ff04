//! JSON documents read and written by the command-line tool.
//!
//! Floats are written by serde_json's shortest round-trip formatting, so a
//! value read back is bit-identical to the value written.

use std::path::Path;

use num_complex::Complex64;
use ratquad::eigenquad::apply_rule;
use ratquad::measures::{BaseMeasure, MeasureKind};
use ratquad::partfrac::{Pole, PoleSet};
use ratquad::ratgauss::RationalRule;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// One entry of a pole file or of a rule document.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoleDoc {
    pub zeta_re: f64,
    #[serde(default)]
    pub zeta_im: f64,
    #[serde(default = "one")]
    pub multiplicity: u8,
}

fn one() -> u8 {
    1
}

impl From<&Pole> for PoleDoc {
    fn from(p: &Pole) -> Self {
        Self {
            zeta_re: p.zeta.re,
            zeta_im: p.zeta.im,
            multiplicity: p.multiplicity,
        }
    }
}

impl PoleDoc {
    pub fn to_pole(self) -> Pole {
        Pole::new(Complex64::new(self.zeta_re, self.zeta_im), self.multiplicity)
    }
}

/// Base measure description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureDoc {
    /// `legendre`, `laguerre` or `jacobi`.
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub b: Option<f64>,
    /// Support, when mapped away from `[-1, 1]`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub interval: Option<[f64; 2]>,
}

impl MeasureDoc {
    pub fn describe(m: &BaseMeasure) -> Self {
        let (scale, shift) = m.affine_map();
        let interval = match m.kind() {
            MeasureKind::Laguerre => None,
            _ if scale == 1.0 && shift == 0.0 => None,
            _ => Some([m.support().lo, m.support().hi]),
        };
        match m.kind() {
            MeasureKind::Legendre => Self {
                kind: "legendre".into(),
                a: None,
                b: None,
                interval,
            },
            MeasureKind::Laguerre => Self {
                kind: "laguerre".into(),
                a: None,
                b: None,
                interval,
            },
            MeasureKind::Jacobi { a, b } => Self {
                kind: "jacobi".into(),
                a: Some(a),
                b: Some(b),
                interval,
            },
        }
    }

    pub fn to_measure(&self) -> ratquad::Result<BaseMeasure> {
        let base = match self.kind.as_str() {
            "legendre" => BaseMeasure::legendre(),
            "laguerre" => BaseMeasure::laguerre(),
            "jacobi" => BaseMeasure::jacobi(self.a.unwrap_or(0.0), self.b.unwrap_or(0.0))?,
            other => {
                return Err(ratquad::Error::InvalidInput(format!(
                    "unknown measure {other:?} (expected legendre, laguerre or jacobi)"
                )))
            }
        };
        match self.interval {
            Some([lo, hi]) => base.on_interval(lo, hi),
            None => Ok(base),
        }
    }
}

/// A generated rule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuleDoc {
    pub n: usize,
    pub m: usize,
    pub measure: MeasureDoc,
    /// Method that produced the rule: `pf` or `disc`.
    pub method: String,
    /// Why `auto` fell back from `pf`, when it did.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub fallback_reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub case: Option<String>,
    pub poles: Vec<PoleDoc>,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gamma_n: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub beta_hats: Option<Vec<f64>>,
}

impl RuleDoc {
    pub fn new(measure: &BaseMeasure, rule: &RationalRule, fallback_reason: Option<String>) -> Self {
        Self {
            n: rule.n(),
            m: rule.m(),
            measure: MeasureDoc::describe(measure),
            method: rule.method().name().to_string(),
            fallback_reason,
            case: rule.case().map(|c| c.name().to_string()),
            poles: rule.poles().entries().iter().map(PoleDoc::from).collect(),
            nodes: rule.nodes().to_vec(),
            weights: rule.weights().to_vec(),
            gamma_n: rule.gamma_n(),
            beta_hats: rule.beta_hats().map(<[f64]>::to_vec),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("rule documents always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::validation("InvalidRuleFile", e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        Self::from_json(&read(path)?)
    }

    /// `Σ w_ν g(t_ν)`, summed exactly as [`RationalRule::integrate`] does.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, g: F) -> ratquad::Result<f64> {
        apply_rule(&self.nodes, &self.weights, g)
    }
}

pub(crate) fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::validation("UnreadableFile", format!("{}: {e}", path.display())))
}

/// Parses a pole file: a JSON list of pole entries.
pub fn parse_poles(text: &str, complete_conjugates: bool) -> Result<PoleSet, CliError> {
    let docs: Vec<PoleDoc> =
        serde_json::from_str(text).map_err(|e| CliError::validation("InvalidPoleFile", e.to_string()))?;
    let poles = docs.into_iter().map(PoleDoc::to_pole).collect();
    let set = if complete_conjugates {
        PoleSet::with_conjugates(poles)
    } else {
        PoleSet::new(poles)
    };
    set.map_err(CliError::from)
}

/// Machine-readable failure report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorDoc {
    pub error: ErrorBody,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub hint: Option<String>,
    pub exit_code: i32,
}
