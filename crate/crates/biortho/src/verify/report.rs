//! Structured verification records.

use std::collections::BTreeMap;

use serde::Serialize;

/// Outcome class of a check. `ReportOnly` entries carry measured values
/// with no pass contract and never affect an exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Pass,
    Fail,
    ReportOnly,
}

/// One named measurement inside a report; insertion order is preserved so
/// serialized output is deterministic.
#[derive(Clone, Debug, Serialize)]
pub struct Measurement {
    pub name: String,
    pub value: f64,
}

/// Record of a named check: inputs, residuals or measured values, the
/// tolerance it was held to, and the resulting classification.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub check_id: String,
    pub classification: Classification,
    /// Primary residual the classification was decided on, when applicable.
    pub residual: Option<f64>,
    pub tolerance: Option<f64>,
    pub measured: Vec<Measurement>,
    pub inputs: BTreeMap<String, String>,
    pub notes: String,
}

fn sanitize(v: f64) -> f64 {
    if v.is_nan() {
        f64::MAX
    } else if v.is_infinite() {
        f64::MAX.copysign(v)
    } else {
        v
    }
}

impl VerificationReport {
    /// PASS iff `residual <= tolerance`.
    pub fn pass_fail(check_id: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        let residual = sanitize(residual);
        VerificationReport {
            check_id: check_id.into(),
            classification: if residual <= tolerance {
                Classification::Pass
            } else {
                Classification::Fail
            },
            residual: Some(residual),
            tolerance: Some(tolerance),
            measured: Vec::new(),
            inputs: BTreeMap::new(),
            notes: String::new(),
        }
    }

    /// PASS iff the stated condition holds; for checks whose content is a
    /// predicate rather than a residual bound.
    pub fn pass_if(check_id: impl Into<String>, ok: bool) -> Self {
        VerificationReport {
            check_id: check_id.into(),
            classification: if ok {
                Classification::Pass
            } else {
                Classification::Fail
            },
            residual: None,
            tolerance: None,
            measured: Vec::new(),
            inputs: BTreeMap::new(),
            notes: String::new(),
        }
    }

    pub fn report_only(check_id: impl Into<String>) -> Self {
        VerificationReport {
            check_id: check_id.into(),
            classification: Classification::ReportOnly,
            residual: None,
            tolerance: None,
            measured: Vec::new(),
            inputs: BTreeMap::new(),
            notes: String::new(),
        }
    }

    pub fn with_measure(mut self, name: impl Into<String>, value: f64) -> Self {
        self.measured.push(Measurement {
            name: name.into(),
            value: sanitize(value),
        });
        self
    }

    pub fn with_input(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.inputs.insert(key.into(), value.to_string());
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        let note = note.into();
        if self.notes.is_empty() {
            self.notes = note;
        } else {
            self.notes.push_str("; ");
            self.notes.push_str(&note);
        }
        self
    }

    /// False only for failed PASS-contract checks.
    pub fn passed(&self) -> bool {
        self.classification != Classification::Fail
    }

    /// A named measurement, when present.
    pub fn measured(&self, name: &str) -> Option<f64> {
        self.measured
            .iter()
            .find(|m| m.name == name)
            .map(|m| m.value)
    }
}
