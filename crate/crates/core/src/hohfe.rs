//! Higher-order hesitant fuzzy elements, decision matrices and the
//! cross-product lifting of G-type operations.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gvalue::{GValue, Mode, VariantClass, VALUE_TOLERANCE};

/// Two scores closer than this compare as equivalent.
pub const SCORE_TOLERANCE: f64 = 1e-9;

/// A nonempty, de-duplicated collection of G-type values.
#[derive(Debug, Clone, PartialEq)]
pub struct Hohfe {
    elements: Vec<GValue>,
}

fn dedup(values: Vec<GValue>) -> Vec<GValue> {
    let mut out: Vec<GValue> = Vec::with_capacity(values.len());
    for v in values {
        if !out.iter().any(|u| u.approx_eq(&v, VALUE_TOLERANCE)) {
            out.push(v);
        }
    }
    out
}

impl Hohfe {
    /// Builds an element, dropping later duplicates (tolerance 1e-9).
    pub fn new(elements: Vec<GValue>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptyElement);
        }
        Ok(Hohfe {
            elements: dedup(elements),
        })
    }

    pub fn singleton(value: GValue) -> Self {
        Hohfe {
            elements: vec![value],
        }
    }

    pub fn elements(&self) -> &[GValue] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Mean of the element scores.
    pub fn score(&self) -> f64 {
        self.elements.iter().map(GValue::score).sum::<f64>() / self.elements.len() as f64
    }

    /// Score order: `Less` means `self` precedes `other`.
    pub fn compare(&self, other: &Hohfe) -> Ordering {
        let (a, b) = (self.score(), other.score());
        if (a - b).abs() <= SCORE_TOLERANCE {
            Ordering::Equal
        } else if a < b {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    pub fn scale(&self, lambda: f64, mode: Mode) -> Result<Hohfe> {
        let scaled = self
            .elements
            .iter()
            .map(|g| g.scale(lambda, mode))
            .collect::<Result<Vec<_>>>()?;
        Hohfe::new(scaled)
    }

    pub fn classes(&self) -> impl Iterator<Item = VariantClass> + '_ {
        self.elements.iter().map(GValue::class)
    }

    /// Order-insensitive equality under the value tolerance.
    pub fn set_eq(&self, other: &Hohfe, tol: f64) -> bool {
        self.len() == other.len()
            && self
                .elements
                .iter()
                .all(|a| other.elements.iter().any(|b| a.approx_eq(b, tol)))
    }
}

impl std::fmt::Display for Hohfe {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, g) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "}}")
    }
}

/// A Choquet summand: marginal weight times one criterion's element.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedTerm {
    pub weight: f64,
    pub element: Hohfe,
}

impl WeightedTerm {
    pub fn new(weight: f64, element: Hohfe) -> Self {
        WeightedTerm { weight, element }
    }
}

/// How elements of different variants are combined across terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CombinePolicy {
    /// Cross-product within each variant class; classes contributed by a
    /// single term pass through scaled.
    #[default]
    Typewise,
    /// Every element of every term must share one variant.
    StrictUniform,
}

fn cross_oplus(groups: &[Vec<GValue>]) -> Result<Vec<GValue>> {
    let mut acc = groups[0].clone();
    for group in &groups[1..] {
        let mut next = Vec::with_capacity(acc.len() * group.len());
        for a in &acc {
            for b in group {
                next.push(a.oplus(b)?);
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// `(+)_i weight_i * element_i`, lifted to elements by cross product.
///
/// Zero-weight terms are dropped before anything else happens.
pub fn combine(terms: &[WeightedTerm], policy: CombinePolicy, mode: Mode) -> Result<Hohfe> {
    if terms.is_empty() {
        return Err(Error::EmptyTerms);
    }
    let scaled = terms
        .iter()
        .filter(|t| t.weight != 0.0)
        .map(|t| t.element.scale(t.weight, mode))
        .collect::<Result<Vec<_>>>()?;
    if scaled.is_empty() {
        return Err(Error::EmptyAggregate);
    }

    let out = match policy {
        CombinePolicy::StrictUniform => {
            let first = scaled[0].elements[0].class();
            for h in &scaled {
                if let Some(other) = h.classes().find(|c| *c != first) {
                    return Err(Error::MixedTypes {
                        first: first.name(),
                        other: other.name(),
                    });
                }
            }
            let groups: Vec<Vec<GValue>> = scaled.into_iter().map(|h| h.elements).collect();
            cross_oplus(&groups)?
        }
        CombinePolicy::Typewise => {
            // classes in order of first appearance
            let mut classes: Vec<VariantClass> = Vec::new();
            for c in scaled.iter().flat_map(|h| h.classes()) {
                if !classes.contains(&c) {
                    classes.push(c);
                }
            }
            let mut out = Vec::new();
            for class in classes {
                let groups: Vec<Vec<GValue>> = scaled
                    .iter()
                    .map(|h| {
                        h.elements
                            .iter()
                            .filter(|g| g.class() == class)
                            .cloned()
                            .collect::<Vec<_>>()
                    })
                    .filter(|g| !g.is_empty())
                    .collect();
                out.extend(cross_oplus(&groups)?);
            }
            out
        }
    };
    Hohfe::new(out)
}

/// Mean of element scores over the criteria of one set.
pub fn hohfs_score(rows: &[Hohfe]) -> Result<f64> {
    if rows.is_empty() {
        return Err(Error::EmptyElement);
    }
    Ok(rows.iter().map(Hohfe::score).sum::<f64>() / rows.len() as f64)
}

/// Alternatives x criteria grid of elements.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionMatrix {
    alternatives: Vec<String>,
    criteria: Vec<String>,
    cells: Vec<Vec<Hohfe>>,
}

impl DecisionMatrix {
    pub fn new(
        alternatives: Vec<String>,
        criteria: Vec<String>,
        cells: Vec<Vec<Hohfe>>,
    ) -> Result<Self> {
        if alternatives.is_empty() || criteria.is_empty() {
            return Err(Error::Schema(
                "decision matrix needs at least one alternative and one criterion".into(),
            ));
        }
        if cells.len() != alternatives.len() {
            return Err(Error::DimensionMismatch {
                expected: alternatives.len(),
                found: cells.len(),
            });
        }
        for row in &cells {
            if row.len() != criteria.len() {
                return Err(Error::DimensionMismatch {
                    expected: criteria.len(),
                    found: row.len(),
                });
            }
        }
        Ok(DecisionMatrix {
            alternatives,
            criteria,
            cells,
        })
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn criteria(&self) -> &[String] {
        &self.criteria
    }

    pub fn rows(&self) -> &[Vec<Hohfe>] {
        &self.cells
    }

    pub fn row(&self, i: usize) -> &[Hohfe] {
        &self.cells[i]
    }

    pub fn cell(&self, alternative: usize, criterion: usize) -> &Hohfe {
        &self.cells[alternative][criterion]
    }
}
