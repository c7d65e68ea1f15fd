use serde::Serialize;

use crate::measure::{FuzzyMeasure, MeasureWarning, Subset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum WarningCode {
    MonotonicityViolation,
    NotNormalized,
    NegativeMarginalWeight,
    InvalidValue,
    DominanceVectorMismatch,
}

/// A non-fatal finding. `subject` names the offending subset or cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Warning {
    pub code: WarningCode,
    pub subject: String,
    pub detail: String,
}

impl Warning {
    pub fn new(code: WarningCode, subject: impl Into<String>, detail: impl Into<String>) -> Self {
        Warning {
            code,
            subject: subject.into(),
            detail: detail.into(),
        }
    }
}

impl std::fmt::Display for Warning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let code = serde_json::to_value(self.code).unwrap_or_default();
        write!(
            f,
            "{} {}: {}",
            code.as_str().unwrap_or("?"),
            self.subject,
            self.detail
        )
    }
}

/// `{x1,x4}`-style rendering with caller-supplied criterion labels.
pub fn labeled_subset(mask: Subset, labels: &[String]) -> String {
    let items: Vec<&str> = labels
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, l)| l.as_str())
        .collect();
    format!("{{{}}}", items.join(","))
}

pub fn measure_warnings(m: &FuzzyMeasure, labels: &[String]) -> Vec<Warning> {
    m.warnings()
        .iter()
        .map(|w| match w {
            MeasureWarning::MonotonicityViolation {
                subset,
                superset,
                subset_value,
                superset_value,
            } => Warning::new(
                WarningCode::MonotonicityViolation,
                format!(
                    "{} < {}",
                    labeled_subset(*subset, labels),
                    labeled_subset(*superset, labels)
                ),
                format!("{subset_value} > {superset_value}"),
            ),
            MeasureWarning::NotNormalized { value } => Warning::new(
                WarningCode::NotNormalized,
                labeled_subset(m.full(), labels),
                format!("mu(X) = {value}, expected 1"),
            ),
        })
        .collect()
}
