//! Check records and report emission.
//!
//! Every verification produces rows of `TheoremCheck`: a statement id,
//! the inputs the prediction was computed from, predicted and measured
//! quantities, and the verdict. Rows serialize to JSON (full fidelity)
//! and to a flat CSV with the fixed header
//! `theorem,eps,trial,seed,input_C,input_A,input_B,input_a0,predicted,measured,precondition,pass`.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Statement identifiers. The names are part of the report format
/// contract; downstream tooling matches on them literally.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Theorem {
    Christensen,
    MainThm12,
    BalanRho,
    Prop33Chain,
    Lemma21Reduction,
    Ex33Items,
    Prop34Items,
    CgeqAinvHalf,
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Theorem::Christensen => "Christensen",
            Theorem::MainThm12 => "MainThm12",
            Theorem::BalanRho => "BalanRho",
            Theorem::Prop33Chain => "Prop33Chain",
            Theorem::Lemma21Reduction => "Lemma21Reduction",
            Theorem::Ex33Items => "Ex33Items",
            Theorem::Prop34Items => "Prop34Items",
            Theorem::CgeqAinvHalf => "CgeqAinvHalf",
        };
        f.write_str(name)
    }
}

/// A reported quantity: a single value or a two-sided bound pair.
/// Intervals print as `lo;hi` so they stay one CSV field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Quantity {
    Scalar(f64),
    Interval { lo: f64, hi: f64 },
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Scalar(x) => write!(f, "{x}"),
            Quantity::Interval { lo, hi } => write!(f, "{lo};{hi}"),
        }
    }
}

/// Inputs a prediction was computed from; only the fields that apply to
/// the row's theorem are set.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CheckInputs {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
}

/// One verification row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremCheck {
    pub theorem: Theorem,
    pub inputs: CheckInputs,
    /// Absent when the precondition failed (nothing is predicted there).
    pub predicted: Option<Quantity>,
    pub measured: Option<Quantity>,
    pub tolerance: f64,
    /// Defined only when the precondition held.
    pub pass: Option<bool>,
    pub precondition_satisfied: bool,
    /// The measurement relies on a non-certified search, so a failure is
    /// reported as inconsistent rather than as a hard error.
    pub advisory: bool,
    pub seed: u64,
    pub trial: usize,
    /// Free-form label tying the row to its scenario.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub context: Option<String>,
}

impl TheoremCheck {
    /// A failure that should fail the run: precondition held, the check
    /// failed, and the row is not advisory.
    pub fn hard_failure(&self) -> bool {
        !self.advisory && self.pass == Some(false)
    }
}

pub const CSV_HEADER: &str =
    "theorem,eps,trial,seed,input_C,input_A,input_B,input_a0,predicted,measured,precondition,pass";

fn csv_opt_f64(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn csv_opt_quantity(q: &Option<Quantity>) -> String {
    q.map(|v| v.to_string()).unwrap_or_default()
}

/// Render rows as CSV (header, one line per row, trailing newline).
/// `pass` is left empty when the precondition failed.
pub fn checks_to_csv(checks: &[TheoremCheck]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for check in checks {
        let pass = match check.pass {
            Some(p) => p.to_string(),
            None => String::new(),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}\n",
            check.theorem,
            csv_opt_f64(check.inputs.eps),
            check.trial,
            check.seed,
            csv_opt_f64(check.inputs.c),
            csv_opt_f64(check.inputs.a),
            csv_opt_f64(check.inputs.b),
            csv_opt_f64(check.inputs.a0),
            csv_opt_quantity(&check.predicted),
            csv_opt_quantity(&check.measured),
            check.precondition_satisfied,
            pass,
        ));
    }
    out
}

/// Render rows as pretty JSON with a trailing newline.
pub fn checks_to_json(checks: &[TheoremCheck]) -> String {
    let mut out = serde_json::to_string_pretty(checks).expect("checks serialize");
    out.push('\n');
    out
}

/// Human-readable fixed-width table for standard output.
pub fn checks_to_table(checks: &[TheoremCheck]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<18} {:<12} {:>5}  {:<24} {:<24} {}\n",
        "theorem", "eps", "trial", "predicted", "measured", "verdict"
    ));
    for check in checks {
        let verdict = match (check.precondition_satisfied, check.pass) {
            (false, _) => "skip (precondition)".to_string(),
            (true, Some(true)) if check.advisory => "consistent".to_string(),
            (true, Some(false)) if check.advisory => "INCONSISTENT".to_string(),
            (true, Some(true)) => "pass".to_string(),
            (true, Some(false)) => "FAIL".to_string(),
            (true, None) => "-".to_string(),
        };
        let eps = check
            .inputs
            .eps
            .map(|e| format!("{e:.6e}"))
            .unwrap_or_else(|| "-".to_string());
        out.push_str(&format!(
            "{:<18} {:<12} {:>5}  {:<24} {:<24} {}\n",
            check.theorem.to_string(),
            eps,
            check.trial,
            check
                .predicted
                .map(|q| q.to_string())
                .unwrap_or_else(|| "-".to_string()),
            check
                .measured
                .map(|q| q.to_string())
                .unwrap_or_else(|| "-".to_string()),
            verdict,
        ));
    }
    out
}
