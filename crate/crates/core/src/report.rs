//! Structured records of single identity checks.

use crate::numerics::Complex;
use serde::Serialize;
use serde_json::Value;
use std::collections::BTreeMap;

pub type Parameters = BTreeMap<String, Value>;

/// Small builder for the parameter map of a report.
#[derive(Debug, Clone, Default)]
pub struct ParamsBuilder(Parameters);

impl ParamsBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: impl Serialize) -> Self {
        let v = serde_json::to_value(value).unwrap_or(Value::Null);
        self.0.insert(key.to_string(), v);
        self
    }

    pub fn build(self) -> Parameters {
        self.0
    }
}

/// Outcome of one identity check. `passed` holds exactly when
/// `rel_residual <= tolerance`, where `rel_residual = abs_residual / scale`
/// and the scale is chosen by the check that produced the report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub identity_id: String,
    pub parameters: Parameters,
    pub lhs: Complex,
    pub rhs: Complex,
    pub abs_residual: f64,
    pub rel_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<f64>,
}

impl VerificationReport {
    pub fn compare(
        identity_id: impl Into<String>,
        parameters: Parameters,
        lhs: Complex,
        rhs: Complex,
        scale: f64,
        tolerance: f64,
    ) -> Self {
        let abs_residual = (lhs - rhs).norm();
        let rel_residual = abs_residual / scale;
        Self {
            identity_id: identity_id.into(),
            parameters,
            lhs,
            rhs,
            abs_residual,
            rel_residual,
            tolerance,
            passed: rel_residual <= tolerance,
            note: None,
            runtime_ms: None,
        }
    }

    /// Relative comparison against `max(|rhs|, floor)`.
    pub fn relative(
        identity_id: impl Into<String>,
        parameters: Parameters,
        lhs: Complex,
        rhs: Complex,
        floor: f64,
        tolerance: f64,
    ) -> Self {
        let scale = rhs.norm().max(floor);
        Self::compare(identity_id, parameters, lhs, rhs, scale, tolerance)
    }

    /// A check that could not be evaluated; always a failure.
    pub fn error(identity_id: impl Into<String>, parameters: Parameters, tolerance: f64, msg: String) -> Self {
        let nan = Complex::new(f64::NAN, f64::NAN);
        Self {
            identity_id: identity_id.into(),
            parameters,
            lhs: nan,
            rhs: nan,
            abs_residual: f64::INFINITY,
            rel_residual: f64::INFINITY,
            tolerance,
            passed: false,
            note: Some(msg),
            runtime_ms: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Summary {
    pub suite: String,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub errata: usize,
    pub max_rel_residual: f64,
}

impl Summary {
    pub fn of(suite: &str, reports: &[VerificationReport], errata: usize) -> Self {
        let passed = reports.iter().filter(|r| r.passed).count();
        let max_rel_residual = reports
            .iter()
            .map(|r| r.rel_residual)
            .fold(0.0, f64::max);
        Self {
            suite: suite.to_string(),
            total: reports.len(),
            passed,
            failed: reports.len() - passed,
            errata,
            max_rel_residual,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::c;

    #[test]
    fn pass_flag_follows_relative_residual() {
        let r = VerificationReport::compare("x", Parameters::new(), c(1.0), c(1.0 + 1e-9), 1.0, 1e-8);
        assert!(r.passed);
        let r = VerificationReport::compare("x", Parameters::new(), c(1.0), c(1.1), 1.0, 1e-8);
        assert!(!r.passed);
        let r = VerificationReport::relative("x", Parameters::new(), c(1e-3), c(0.0), 1.0, 1e-2);
        assert!(r.passed);
    }

    #[test]
    fn serializes_without_optional_fields() {
        let p = ParamsBuilder::new().with("n", [1, 2]).with("a", 0.5).build();
        let r = VerificationReport::compare("id", p, c(1.0), c(1.0), 1.0, 1e-12);
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.starts_with("{\"identity_id\":\"id\",\"parameters\":{\"a\":0.5,\"n\":[1,2]}"));
        assert!(!s.contains("runtime_ms"));
        assert!(!s.contains("note"));
        assert!(s.contains("\"lhs\":[1.0,0.0]"));
    }

    #[test]
    fn error_reports_fail() {
        let r = VerificationReport::error("id", Parameters::new(), 1e-9, "boom".into());
        assert!(!r.passed);
    }
}
