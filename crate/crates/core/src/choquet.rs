//! Real-valued and higher-order hesitant fuzzy Choquet integrals, and the
//! ranking pipeline built on them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::gvalue::{Mode, VariantClass};
use crate::hohfe::{combine, CombinePolicy, DecisionMatrix, Hohfe, WeightedTerm, SCORE_TOLERANCE};
use crate::measure::FuzzyMeasure;
use crate::warning::{measure_warnings, Warning, WarningCode};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AggregationOptions {
    pub mode: Mode,
    pub policy: CombinePolicy,
    pub execution: Execution,
}

/// `sum_i (mu(A_i) - mu(A_{i-1})) f_sigma(i)` with `f` sorted descending,
/// ties broken by ascending index.
pub fn choquet_real(f: &[f64], m: &FuzzyMeasure) -> Result<f64> {
    if f.len() != m.n() {
        return Err(Error::DimensionMismatch {
            expected: m.n(),
            found: f.len(),
        });
    }
    let mut sigma: Vec<usize> = (0..f.len()).collect();
    sigma.sort_by(|&a, &b| f[b].total_cmp(&f[a]));
    let w = m.marginal_weights(&sigma)?;
    Ok(sigma.iter().zip(&w).map(|(&i, wi)| wi * f[i]).sum())
}

/// Criterion indices by descending element score; scores within 1e-9 of
/// each other count as tied and keep ascending index order.
pub fn sigma_order(row: &[Hohfe]) -> Vec<usize> {
    let scores: Vec<f64> = row.iter().map(Hohfe::score).collect();
    let mut remaining: Vec<usize> = (0..row.len()).collect();
    let mut out = Vec::with_capacity(row.len());
    while !remaining.is_empty() {
        let best = remaining
            .iter()
            .map(|&i| scores[i])
            .fold(f64::NEG_INFINITY, f64::max);
        let pos = remaining
            .iter()
            .position(|&i| scores[i] >= best - SCORE_TOLERANCE)
            .unwrap_or(0);
        out.push(remaining.remove(pos));
    }
    out
}

/// Intermediate results of aggregating one alternative.
#[derive(Debug, Clone, PartialEq)]
pub struct RowAggregation {
    pub sigma: Vec<usize>,
    /// Marginal weights in sigma order.
    pub weights: Vec<f64>,
    pub aggregate: Hohfe,
    pub score: f64,
}

impl RowAggregation {
    /// Criteria (by index) that received a negative marginal weight.
    pub fn negative_weights(&self) -> Vec<(usize, f64)> {
        self.sigma
            .iter()
            .zip(&self.weights)
            .filter(|(_, w)| **w < 0.0)
            .map(|(&c, &w)| (c, w))
            .collect()
    }
}

pub fn aggregate_row(
    row: &[Hohfe],
    m: &FuzzyMeasure,
    opts: &AggregationOptions,
) -> Result<RowAggregation> {
    if row.len() != m.n() {
        return Err(Error::DimensionMismatch {
            expected: m.n(),
            found: row.len(),
        });
    }
    let sigma = sigma_order(row);
    let weights = m.marginal_weights(&sigma)?;
    let mut terms = Vec::with_capacity(row.len());
    for (&c, &w) in sigma.iter().zip(&weights) {
        let h = &row[c];
        if w < 0.0 && h.classes().any(|k| k == VariantClass::IntuPair) {
            return Err(Error::NegativeWeightUnsupported {
                criterion: c,
                weight: w,
            });
        }
        terms.push(WeightedTerm::new(w, h.clone()));
    }
    let aggregate = combine(&terms, opts.policy, opts.mode)?;
    let score = aggregate.score();
    Ok(RowAggregation {
        sigma,
        weights,
        aggregate,
        score,
    })
}

/// The HOHF Choquet integral of one row of elements.
pub fn hohf_choquet(row: &[Hohfe], m: &FuzzyMeasure, opts: &AggregationOptions) -> Result<Hohfe> {
    aggregate_row(row, m, opts).map(|r| r.aggregate)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlternativeResult {
    pub label: String,
    pub aggregation: RowAggregation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AggregationReport {
    pub criteria: Vec<String>,
    pub alternatives: Vec<AlternativeResult>,
    /// Tie groups of alternative indices, best first.
    pub ranking: Vec<Vec<usize>>,
    pub warnings: Vec<Warning>,
}

impl AggregationReport {
    pub fn scores(&self) -> Vec<f64> {
        self.alternatives
            .iter()
            .map(|a| a.aggregation.score)
            .collect()
    }

    pub fn ranking_labels(&self) -> Vec<Vec<&str>> {
        self.ranking
            .iter()
            .map(|g| {
                g.iter()
                    .map(|&i| self.alternatives[i].label.as_str())
                    .collect()
            })
            .collect()
    }
}

/// Groups indices into tie groups by descending score, keeping input order within a group.
pub(crate) fn tie_groups(scores: &[f64]) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in order {
        match groups.last_mut() {
            Some(g) if (scores[g[0]] - scores[i]).abs() <= SCORE_TOLERANCE => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    for g in groups.iter_mut() {
        g.sort_unstable();
    }
    groups
}

pub fn rank_alternatives(
    dm: &DecisionMatrix,
    m: &FuzzyMeasure,
    opts: &AggregationOptions,
) -> Result<AggregationReport> {
    if dm.criteria().len() != m.n() {
        return Err(Error::DimensionMismatch {
            expected: m.n(),
            found: dm.criteria().len(),
        });
    }
    let rows = exec::map(dm.rows(), opts.execution, |_, row| {
        aggregate_row(row, m, opts)
    });
    let aggregations = rows.into_iter().collect::<Result<Vec<_>>>()?;

    let mut warnings = measure_warnings(m, dm.criteria());
    for (label, agg) in dm.alternatives().iter().zip(&aggregations) {
        for (c, w) in agg.negative_weights() {
            warnings.push(Warning::new(
                WarningCode::NegativeMarginalWeight,
                format!("{label}/{}", dm.criteria()[c]),
                format!("marginal weight {w:.4}"),
            ));
        }
    }
    let scores: Vec<f64> = aggregations.iter().map(|a| a.score).collect();
    let ranking = tie_groups(&scores);
    let alternatives = dm
        .alternatives()
        .iter()
        .cloned()
        .zip(aggregations)
        .map(|(label, aggregation)| AlternativeResult { label, aggregation })
        .collect();
    Ok(AggregationReport {
        criteria: dm.criteria().to_vec(),
        alternatives,
        ranking,
        warnings,
    })
}

/// Serializable view of a report (labels instead of indices).
#[derive(Debug, Clone, Serialize)]
pub struct ReportView<'a> {
    pub alternatives: Vec<AlternativeView<'a>>,
    pub ranking: Vec<Vec<&'a str>>,
    pub warnings: &'a [Warning],
}

#[derive(Debug, Clone, Serialize)]
pub struct AlternativeView<'a> {
    pub label: &'a str,
    pub sigma: Vec<&'a str>,
    pub weights: &'a [f64],
    pub aggregate: Vec<crate::io::GValueRepr>,
    pub score: f64,
}

impl AggregationReport {
    pub fn view(&self) -> ReportView<'_> {
        ReportView {
            alternatives: self
                .alternatives
                .iter()
                .map(|a| AlternativeView {
                    label: &a.label,
                    sigma: a
                        .aggregation
                        .sigma
                        .iter()
                        .map(|&c| self.criteria[c].as_str())
                        .collect(),
                    weights: &a.aggregation.weights,
                    aggregate: a
                        .aggregation
                        .aggregate
                        .elements()
                        .iter()
                        .map(crate::io::GValueRepr::from)
                        .collect(),
                    score: a.aggregation.score,
                })
                .collect(),
            ranking: self.ranking_labels(),
            warnings: &self.warnings,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gvalue::GValue;

    fn h(v: Vec<GValue>) -> Hohfe {
        Hohfe::new(v).unwrap()
    }

    #[test]
    fn additive_two_criteria() {
        let m = FuzzyMeasure::additive(&[0.4, 0.6], Mode::Strict).unwrap();
        let c = choquet_real(&[1.0, 0.5], &m).unwrap();
        assert!((c - 0.7).abs() < 1e-12);
    }

    #[test]
    fn constant_input_is_fixed_point() {
        let m = FuzzyMeasure::rho_rule(
            &[0.3, 0.3, 0.3],
            crate::measure::solve_rho(&[0.3, 0.3, 0.3], Default::default()).unwrap(),
            Default::default(),
            Mode::Strict,
        )
        .unwrap();
        assert!((choquet_real(&[0.42; 3], &m).unwrap() - 0.42).abs() < 1e-12);
    }

    #[test]
    fn dimension_checked() {
        let m = FuzzyMeasure::uniform(3).unwrap();
        assert_eq!(
            choquet_real(&[0.1], &m).unwrap_err().code(),
            "DIMENSION_MISMATCH"
        );
    }

    #[test]
    fn sigma_ties_keep_index_order() {
        let row = vec![Hohfe::singleton(GValue::crisp(0.5)); 4];
        assert_eq!(sigma_order(&row), vec![0, 1, 2, 3]);
        // 0.3 reached by two different float paths
        let row = vec![
            h(vec![GValue::tfn(0.1, 0.2, 0.3), GValue::tfn(0.3, 0.4, 0.5)]),
            Hohfe::singleton(GValue::crisp(0.9)),
            h(vec![GValue::hfe(vec![0.2, 0.3, 0.4]).unwrap()]),
        ];
        assert_eq!(sigma_order(&row), vec![1, 0, 2]);
    }

    #[test]
    fn single_criterion_returns_input() {
        let m = FuzzyMeasure::uniform(1).unwrap();
        let x = h(vec![
            GValue::tfn(0.1, 0.2, 0.3),
            GValue::hfe(vec![0.5, 0.6]).unwrap(),
        ]);
        let out = hohf_choquet(std::slice::from_ref(&x), &m, &Default::default()).unwrap();
        assert_eq!(out, x);
    }

    #[test]
    fn intuitionistic_negative_weight_rejected() {
        let m = FuzzyMeasure::from_table(2, [(1, 0.9), (2, 0.1), (3, 1.0)], Mode::Lenient).unwrap();
        let row = vec![
            Hohfe::singleton(GValue::intu(0.6, 0.2)),
            Hohfe::singleton(GValue::intu(0.1, 0.1)),
        ];
        // sigma = (x2, x1): weights 0.1, 0.9, no negatives
        assert!(hohf_choquet(&row, &m, &Default::default()).is_ok());
        let m = FuzzyMeasure::from_table(
            3,
            [
                (1, 0.5),
                (2, 0.5),
                (4, 0.5),
                (3, 0.2),
                (5, 0.2),
                (6, 0.2),
                (7, 1.0),
            ],
            Mode::Lenient,
        )
        .unwrap();
        let row = vec![
            Hohfe::singleton(GValue::intu(0.1, 0.1)),
            Hohfe::singleton(GValue::intu(0.3, 0.3)),
            Hohfe::singleton(GValue::intu(0.5, 0.4)),
        ];
        let err = hohf_choquet(&row, &m, &Default::default()).unwrap_err();
        assert_eq!(err.code(), "NEGATIVE_WEIGHT_UNSUPPORTED");
    }

    #[test]
    fn identical_rows_tie() {
        let row = vec![
            Hohfe::singleton(GValue::crisp(0.3)),
            Hohfe::singleton(GValue::crisp(0.6)),
        ];
        let dm = DecisionMatrix::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec!["x1".into(), "x2".into()],
            vec![row.clone(), row.clone(), row],
        )
        .unwrap();
        let m = FuzzyMeasure::uniform(2).unwrap();
        let report = rank_alternatives(&dm, &m, &Default::default()).unwrap();
        assert_eq!(report.ranking, vec![vec![0, 1, 2]]);
        assert!(report.warnings.is_empty());
    }

    #[test]
    fn tie_groups_order() {
        assert_eq!(
            tie_groups(&[0.2, 0.5, 0.2, 0.9]),
            vec![vec![3], vec![1], vec![0, 2]]
        );
    }
}
