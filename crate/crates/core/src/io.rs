//! JSON problem and ranking-list file formats.
//!
//! A problem file:
//!
//! ```json
//! {
//!   "alternatives": ["y1", "y2"],
//!   "criteria": ["x1", "x2"],
//!   "matrix": [
//!     [[{"tfn": [0.3, 0.4, 0.5]}], [{"hfe": [0.7, 0.8]}, {"crisp": 0.4}]],
//!     [[{"ifs": [0.2, 0.5]}],      [{"interval": [0.1, 0.3]}]]
//!   ],
//!   "measure": {"table": [
//!     {"subset": ["x1"], "value": 0.4},
//!     {"subset": ["x2"], "value": 0.5},
//!     {"subset": ["x1", "x2"], "value": 1.0}
//!   ]},
//!   "options": {"mode": "lenient", "policy": "typewise"}
//! }
//! ```
//!
//! `measure` may instead be `{"rho_rule": {"singletons": [...], "rho": r, "sign": "subtract"}}`;
//! `rho` is solved for when omitted.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::consensus::{DominanceVector, Metric, RankingOrder, TechniqueRanking};
use crate::error::{Error, Result};
use crate::gvalue::{GValue, Mode};
use crate::hohfe::{CombinePolicy, DecisionMatrix, Hohfe};
use crate::measure::{self, FuzzyMeasure, RhoSign, Subset};
use crate::warning::{Warning, WarningCode};

/// Wire form of a [`GValue`], tagged by variant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GValueRepr {
    Crisp(f64),
    Tfn([f64; 3]),
    Hfe(Vec<f64>),
    Ifs([f64; 2]),
    Interval([f64; 2]),
}

impl From<&GValue> for GValueRepr {
    fn from(g: &GValue) -> Self {
        match g {
            GValue::Crisp(m) => GValueRepr::Crisp(*m),
            GValue::Tfn(a, b, c) => GValueRepr::Tfn([*a, *b, *c]),
            GValue::Hfe(h) => GValueRepr::Hfe(h.values().to_vec()),
            GValue::IntuPair { mu, nu } => GValueRepr::Ifs([*mu, *nu]),
        }
    }
}

impl TryFrom<&GValueRepr> for GValue {
    type Error = Error;

    fn try_from(r: &GValueRepr) -> Result<GValue> {
        Ok(match r {
            GValueRepr::Crisp(m) => GValue::Crisp(*m),
            GValueRepr::Tfn([a, b, c]) => GValue::Tfn(*a, *b, *c),
            GValueRepr::Hfe(v) => GValue::hfe(v.clone())?,
            GValueRepr::Ifs([mu, nu]) => GValue::intu(*mu, *nu),
            GValueRepr::Interval([lo, hi]) => GValue::interval(*lo, *hi),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Table,
    Json,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsRepr {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub policy: Option<CombinePolicy>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<Metric>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MeasureEntry {
    subset: Vec<String>,
    value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum MeasureRepr {
    Table(Vec<MeasureEntry>),
    RhoRule {
        singletons: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        rho: Option<f64>,
        #[serde(default)]
        sign: RhoSign,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemFile {
    alternatives: Vec<String>,
    criteria: Vec<String>,
    matrix: Vec<Vec<Vec<GValueRepr>>>,
    measure: MeasureRepr,
    #[serde(default, skip_serializing_if = "is_default_options")]
    options: OptionsRepr,
}

fn is_default_options(o: &OptionsRepr) -> bool {
    *o == OptionsRepr::default()
}

/// How the measure was given in the source file.
#[derive(Debug, Clone, PartialEq)]
pub enum MeasureSource {
    Table,
    RhoRule {
        singletons: Vec<f64>,
        rho: Option<f64>,
        sign: RhoSign,
    },
}

/// A fully validated problem: matrix, measure and options.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub matrix: DecisionMatrix,
    pub measure: FuzzyMeasure,
    pub measure_source: MeasureSource,
    /// Options as written in the file.
    pub options: OptionsRepr,
    /// Mode the problem was validated under.
    pub mode: Mode,
    /// Non-fatal findings: lenient-mode value notes and measure warnings.
    pub warnings: Vec<Warning>,
}

fn map_json_error(e: serde_json::Error) -> Error {
    use serde_json::error::Category;
    match e.classify() {
        Category::Syntax | Category::Eof => Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        },
        Category::Data => Error::Schema(e.to_string()),
        Category::Io => Error::Io(e.to_string()),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn check_labels(kind: &str, labels: &[String]) -> Result<()> {
    if labels.is_empty() {
        return Err(Error::Schema(format!("no {kind}")));
    }
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(Error::Schema(format!("duplicate {kind} label {l}")));
        }
    }
    Ok(())
}

pub fn parse_problem(path: impl AsRef<Path>) -> Result<ProblemSpec> {
    parse_problem_str(&read(path.as_ref())?, None)
}

/// Parses problem JSON. `mode` overrides the file's option (default lenient).
pub fn parse_problem_str(text: &str, mode: Option<Mode>) -> Result<ProblemSpec> {
    let file: ProblemFile = serde_json::from_str(text).map_err(map_json_error)?;
    let mode = mode.or(file.options.mode).unwrap_or_default();
    check_labels("alternatives", &file.alternatives)?;
    check_labels("criteria", &file.criteria)?;
    if file.matrix.len() != file.alternatives.len() {
        return Err(Error::Schema(format!(
            "matrix has {} rows for {} alternatives",
            file.matrix.len(),
            file.alternatives.len()
        )));
    }

    let mut warnings = Vec::new();
    let mut cells = Vec::with_capacity(file.matrix.len());
    for (i, row) in file.matrix.iter().enumerate() {
        let alt = &file.alternatives[i];
        if row.len() != file.criteria.len() {
            return Err(Error::Schema(format!(
                "row {alt} has {} cells for {} criteria",
                row.len(),
                file.criteria.len()
            )));
        }
        let mut out_row = Vec::with_capacity(row.len());
        for (j, cell) in row.iter().enumerate() {
            let at = format!("{alt}/{}", file.criteria[j]);
            if cell.is_empty() {
                return Err(Error::Schema(format!("cell {at} is empty")));
            }
            let mut values = Vec::with_capacity(cell.len());
            for (k, repr) in cell.iter().enumerate() {
                let g = GValue::try_from(repr)
                    .map_err(|e| Error::Schema(format!("cell {at} value {k}: {e}")))?;
                if let Some(v) = g.validate(mode).first() {
                    return Err(Error::Validation(format!("cell {at} value {k}: {v}")));
                }
                for v in g.validate(Mode::Strict) {
                    warnings.push(Warning::new(
                        WarningCode::InvalidValue,
                        format!("{at}[{k}]"),
                        format!("{v} (accepted in lenient mode)"),
                    ));
                }
                values.push(g);
            }
            out_row.push(Hohfe::new(values)?);
        }
        cells.push(out_row);
    }
    let matrix = DecisionMatrix::new(file.alternatives.clone(), file.criteria.clone(), cells)?;

    let n = file.criteria.len();
    let wrap = |e: Error| match (&e, mode) {
        (Error::Schema(_) | Error::Parse { .. } | Error::Io(_), _) => e,
        (_, Mode::Strict) => Error::Validation(e.to_string()),
        _ => e,
    };
    let (measure, measure_source) = match &file.measure {
        MeasureRepr::Table(entries) => {
            let mut table = Vec::with_capacity(entries.len());
            for entry in entries {
                let mut mask: Subset = 0;
                for label in &entry.subset {
                    let idx = file
                        .criteria
                        .iter()
                        .position(|c| c == label)
                        .ok_or_else(|| {
                            Error::Schema(format!("measure refers to unknown criterion {label}"))
                        })?;
                    mask |= 1 << idx;
                }
                table.push((mask, entry.value));
            }
            (
                FuzzyMeasure::from_table(n, table, mode).map_err(wrap)?,
                MeasureSource::Table,
            )
        }
        MeasureRepr::RhoRule {
            singletons,
            rho,
            sign,
        } => {
            if singletons.len() != n {
                return Err(Error::Schema(format!(
                    "rho rule has {} singletons for {n} criteria",
                    singletons.len()
                )));
            }
            let r = match rho {
                Some(r) => *r,
                None => measure::solve_rho(singletons, *sign).map_err(wrap)?,
            };
            (
                FuzzyMeasure::rho_rule(singletons, r, *sign, mode).map_err(wrap)?,
                MeasureSource::RhoRule {
                    singletons: singletons.clone(),
                    rho: *rho,
                    sign: *sign,
                },
            )
        }
    };
    warnings.extend(crate::warning::measure_warnings(&measure, &file.criteria));

    Ok(ProblemSpec {
        matrix,
        measure,
        measure_source,
        options: file.options,
        mode,
        warnings,
    })
}

/// Pretty-printed JSON that [`parse_problem_str`] reads back to an equal spec.
pub fn serialize_problem(spec: &ProblemSpec) -> String {
    let criteria = spec.matrix.criteria();
    let measure = match &spec.measure_source {
        MeasureSource::Table => MeasureRepr::Table(
            (1..=spec.measure.full())
                .map(|mask| MeasureEntry {
                    subset: criteria
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask & (1 << i) != 0)
                        .map(|(_, c)| c.clone())
                        .collect(),
                    value: spec.measure.value(mask),
                })
                .collect(),
        ),
        MeasureSource::RhoRule {
            singletons,
            rho,
            sign,
        } => MeasureRepr::RhoRule {
            singletons: singletons.clone(),
            rho: *rho,
            sign: *sign,
        },
    };
    let file = ProblemFile {
        alternatives: spec.matrix.alternatives().to_vec(),
        criteria: criteria.to_vec(),
        matrix: spec
            .matrix
            .rows()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|h| h.elements().iter().map(GValueRepr::from).collect())
                    .collect()
            })
            .collect(),
        measure,
        options: spec.options.clone(),
    };
    serde_json::to_string_pretty(&file).expect("problem serializes")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TechniqueRepr {
    label: String,
    order: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dominance: Option<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RankingsFile {
    alternatives: Vec<String>,
    techniques: Vec<TechniqueRepr>,
}

/// A ranking-list file: shared alternative labels and one order per technique.
///
/// ```json
/// {"alternatives": ["y1", "y2", "y3"],
///  "techniques": [{"label": "A", "order": ["y2", "y1", "y3"], "dominance": [2, 3, 1]}]}
/// ```
pub fn parse_rankings(path: impl AsRef<Path>) -> Result<Vec<TechniqueRanking>> {
    parse_rankings_str(&read(path.as_ref())?)
}

pub fn parse_rankings_str(text: &str) -> Result<Vec<TechniqueRanking>> {
    let file: RankingsFile = serde_json::from_str(text).map_err(map_json_error)?;
    check_labels("alternatives", &file.alternatives)?;
    if file.techniques.is_empty() {
        return Err(Error::Schema("no techniques".into()));
    }
    file.techniques
        .into_iter()
        .map(|t| {
            let order = RankingOrder::new(t.label.clone(), file.alternatives.clone(), &t.order)
                .map_err(|e| Error::Schema(e.to_string()))?;
            let recorded = t.dominance.map(DominanceVector);
            if let Some(r) = &recorded {
                if r.len() != file.alternatives.len() || !r.is_permutation() {
                    return Err(Error::Schema(format!(
                        "{}: dominance vector {:?} is not a permutation of 1..{}",
                        t.label,
                        r.0,
                        file.alternatives.len()
                    )));
                }
            }
            Ok(TechniqueRanking { order, recorded })
        })
        .collect()
}

pub fn serialize_rankings(rs: &[TechniqueRanking]) -> String {
    let file = RankingsFile {
        alternatives: rs
            .first()
            .map(|t| t.order.alternatives().to_vec())
            .unwrap_or_default(),
        techniques: rs
            .iter()
            .map(|t| TechniqueRepr {
                label: t.order.technique().to_string(),
                order: t
                    .order
                    .order_labels()
                    .into_iter()
                    .map(String::from)
                    .collect(),
                dominance: t.recorded.as_ref().map(|d| d.0.clone()),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("rankings serialize")
}
