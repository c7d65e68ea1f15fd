//! Generalized (G-type) fuzzy membership values.
//!
//! Four variants are supported: crisp degrees, triangular fuzzy numbers,
//! hesitant fuzzy elements and intuitionistic pairs. Each variant carries
//! its own scalar multiplication, probabilistic-sum addition and score.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute per-component tolerance used for value equality.
pub const VALUE_TOLERANCE: f64 = 1e-9;

/// How strictly degrees are checked against the unit interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// All degrees in `[0, 1]`, sorted triangle corners, `mu + nu <= 1`.
    Strict,
    /// Crisp, triangular and hesitant degrees may leave `[0, 1]` (negative
    /// Choquet marginal weights produce such intermediates).
    #[default]
    Lenient,
}

/// A hesitant fuzzy element: a nonempty set of degrees kept in nondecreasing order.
#[derive(Debug, Clone, PartialEq)]
pub struct Hfe(Vec<f64>);

impl Hfe {
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidValue(
                "hesitant element has no degrees".into(),
            ));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidValue(
                "hesitant element has a non-finite degree".into(),
            ));
        }
        values.sort_by(f64::total_cmp);
        Ok(Hfe(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn map(&self, f: impl Fn(f64) -> f64) -> Hfe {
        let mut values: Vec<f64> = self.0.iter().map(|&v| f(v)).collect();
        values.sort_by(f64::total_cmp);
        Hfe(values)
    }
}

/// Variant tag of a [`GValue`]; the derived order is the canonical class order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VariantClass {
    Crisp,
    Tfn,
    Hfe,
    IntuPair,
}

impl VariantClass {
    pub fn name(self) -> &'static str {
        match self {
            VariantClass::Crisp => "crisp",
            VariantClass::Tfn => "tfn",
            VariantClass::Hfe => "hfe",
            VariantClass::IntuPair => "ifs",
        }
    }
}

/// One generalized fuzzy membership value.
#[derive(Debug, Clone, PartialEq)]
pub enum GValue {
    Crisp(f64),
    /// Smallest possible, most promising and largest possible value.
    Tfn(f64, f64, f64),
    Hfe(Hfe),
    /// Membership and non-membership degrees.
    IntuPair {
        mu: f64,
        nu: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ViolationCode {
    NonFinite,
    OutOfRange,
    CornersNotSorted,
    MuNuSumExceedsOne,
}

/// One failed invariant, naming the field and the bound it broke.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub code: ViolationCode,
    pub field: String,
    pub bound: String,
}

impl Violation {
    fn new(code: ViolationCode, field: impl Into<String>, bound: impl Into<String>) -> Self {
        Violation {
            code,
            field: field.into(),
            bound: bound.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {} ({})", self.code, self.field, self.bound)
    }
}

fn prob_sum(a: f64, b: f64) -> f64 {
    a + b - a * b
}

fn unit(v: f64) -> bool {
    (0.0..=1.0).contains(&v)
}

impl GValue {
    pub fn crisp(m: f64) -> GValue {
        GValue::Crisp(m)
    }

    pub fn tfn(a1: f64, a2: f64, a3: f64) -> GValue {
        GValue::Tfn(a1, a2, a3)
    }

    /// Hesitant element from unsorted degrees.
    pub fn hfe(values: impl Into<Vec<f64>>) -> Result<GValue> {
        Hfe::new(values.into()).map(GValue::Hfe)
    }

    pub fn intu(mu: f64, nu: f64) -> GValue {
        GValue::IntuPair { mu, nu }
    }

    /// Interval-valued degree, stored as the degenerate triangle `(lo, mid, hi)`.
    pub fn interval(lo: f64, hi: f64) -> GValue {
        GValue::Tfn(lo, (lo + hi) / 2.0, hi)
    }

    pub fn class(&self) -> VariantClass {
        match self {
            GValue::Crisp(_) => VariantClass::Crisp,
            GValue::Tfn(..) => VariantClass::Tfn,
            GValue::Hfe(_) => VariantClass::Hfe,
            GValue::IntuPair { .. } => VariantClass::IntuPair,
        }
    }

    /// The additive identity of this value's variant (and cardinality, for `Hfe`).
    pub fn zero_like(&self) -> GValue {
        match self {
            GValue::Crisp(_) => GValue::Crisp(0.0),
            GValue::Tfn(..) => GValue::Tfn(0.0, 0.0, 0.0),
            GValue::Hfe(h) => GValue::Hfe(Hfe(vec![0.0; h.len()])),
            GValue::IntuPair { .. } => GValue::IntuPair { mu: 0.0, nu: 1.0 },
        }
    }

    fn components(&self) -> Vec<f64> {
        match self {
            GValue::Crisp(m) => vec![*m],
            GValue::Tfn(a1, a2, a3) => vec![*a1, *a2, *a3],
            GValue::Hfe(h) => h.0.clone(),
            GValue::IntuPair { mu, nu } => vec![*mu, *nu],
        }
    }

    /// Lists every invariant this value breaks under `mode`.
    pub fn validate(&self, mode: Mode) -> Vec<Violation> {
        let mut out = Vec::new();
        let strict = mode == Mode::Strict;
        let mut check = |field: String, v: f64, unit_required: bool| {
            if !v.is_finite() {
                out.push(Violation::new(ViolationCode::NonFinite, field, "finite"));
            } else if unit_required && !unit(v) {
                out.push(Violation::new(ViolationCode::OutOfRange, field, "[0, 1]"));
            }
        };
        match self {
            GValue::Crisp(m) => check("m".into(), *m, strict),
            GValue::Tfn(a1, a2, a3) => {
                check("a1".into(), *a1, strict);
                check("a2".into(), *a2, strict);
                check("a3".into(), *a3, strict);
            }
            GValue::Hfe(h) => {
                for (i, v) in h.0.iter().enumerate() {
                    check(format!("values[{i}]"), *v, strict);
                }
            }
            GValue::IntuPair { mu, nu } => {
                check("mu".into(), *mu, true);
                check("nu".into(), *nu, true);
            }
        }
        match self {
            GValue::Tfn(a1, a2, a3) if strict && !(a1 <= a2 && a2 <= a3) => {
                out.push(Violation::new(
                    ViolationCode::CornersNotSorted,
                    "a1,a2,a3",
                    "a1 <= a2 <= a3",
                ))
            }
            GValue::IntuPair { mu, nu } if strict && mu + nu > 1.0 + VALUE_TOLERANCE => out.push(
                Violation::new(ViolationCode::MuNuSumExceedsOne, "mu+nu", "mu + nu <= 1"),
            ),
            _ => {}
        }
        out
    }

    /// `lambda * self`.
    ///
    /// Intuitionistic pairs scale as `<1 - (1 - mu)^lambda, nu^lambda>`; the
    /// other variants scale each degree linearly. Negative `lambda` is only
    /// accepted for crisp, triangular and hesitant values in lenient mode.
    pub fn scale(&self, lambda: f64, mode: Mode) -> Result<GValue> {
        if !lambda.is_finite() {
            return Err(Error::OutOfRange(format!("scalar {lambda} is not finite")));
        }
        if let GValue::IntuPair { mu, nu } = self {
            if lambda < 0.0 {
                return Err(Error::NegativeLambda(lambda));
            }
            if lambda == 0.0 {
                return Ok(GValue::IntuPair { mu: 0.0, nu: 1.0 });
            }
            return Ok(GValue::IntuPair {
                mu: 1.0 - (1.0 - mu).powf(lambda),
                nu: nu.powf(lambda),
            });
        }
        if lambda < 0.0 && mode == Mode::Strict {
            return Err(Error::OutOfRange(format!(
                "negative scalar {lambda} is only allowed in lenient mode"
            )));
        }
        Ok(match self {
            GValue::Crisp(m) => GValue::Crisp(lambda * m),
            GValue::Tfn(a1, a2, a3) => GValue::Tfn(lambda * a1, lambda * a2, lambda * a3),
            GValue::Hfe(h) => GValue::Hfe(h.map(|v| lambda * v)),
            GValue::IntuPair { .. } => unreachable!(),
        })
    }

    /// The power operation `<mu^lambda, 1 - (1 - nu)^lambda>` for intuitionistic pairs.
    ///
    /// Not used by the Choquet aggregation, which relies on [`GValue::scale`].
    pub fn intu_power(&self, lambda: f64) -> Result<GValue> {
        match self {
            GValue::IntuPair { mu, nu } if lambda > 0.0 => Ok(GValue::IntuPair {
                mu: mu.powf(lambda),
                nu: 1.0 - (1.0 - nu).powf(lambda),
            }),
            GValue::IntuPair { .. } => Err(Error::NegativeLambda(lambda)),
            other => Err(Error::TypeMismatch {
                left: other.class().name(),
                right: VariantClass::IntuPair.name(),
            }),
        }
    }

    /// Probabilistic-sum addition `self (+) other` within one variant.
    pub fn oplus(&self, other: &GValue) -> Result<GValue> {
        Ok(match (self, other) {
            (GValue::Crisp(a), GValue::Crisp(b)) => GValue::Crisp(prob_sum(*a, *b)),
            (GValue::Tfn(a1, a2, a3), GValue::Tfn(b1, b2, b3)) => {
                GValue::Tfn(prob_sum(*a1, *b1), prob_sum(*a2, *b2), prob_sum(*a3, *b3))
            }
            (GValue::Hfe(a), GValue::Hfe(b)) => {
                if a.len() != b.len() {
                    return Err(Error::CardinalityMismatch {
                        left: a.len(),
                        right: b.len(),
                    });
                }
                let mut values: Vec<f64> =
                    a.0.iter()
                        .zip(&b.0)
                        .map(|(x, y)| prob_sum(*x, *y))
                        .collect();
                values.sort_by(f64::total_cmp);
                GValue::Hfe(Hfe(values))
            }
            (GValue::IntuPair { mu: m1, nu: n1 }, GValue::IntuPair { mu: m2, nu: n2 }) => {
                GValue::IntuPair {
                    mu: prob_sum(*m1, *m2),
                    nu: n1 * n2,
                }
            }
            (a, b) => {
                return Err(Error::TypeMismatch {
                    left: a.class().name(),
                    right: b.class().name(),
                })
            }
        })
    }

    /// Score used for ordering: the degree, the corner mean, the member mean,
    /// or the hesitancy `1 - mu - nu`.
    pub fn score(&self) -> f64 {
        match self {
            GValue::Crisp(m) => *m,
            GValue::Tfn(a1, a2, a3) => (a1 + a2 + a3) / 3.0,
            GValue::Hfe(h) => h.0.iter().sum::<f64>() / h.len() as f64,
            GValue::IntuPair { mu, nu } => 1.0 - mu - nu,
        }
    }

    /// Same variant, same cardinality, and every component within `tol`.
    pub fn approx_eq(&self, other: &GValue, tol: f64) -> bool {
        if self.class() != other.class() {
            return false;
        }
        let (a, b) = (self.components(), other.components());
        a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= tol)
    }
}

impl fmt::Display for GValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GValue::Crisp(m) => write!(f, "{m:.4}"),
            GValue::Tfn(a1, a2, a3) => write!(f, "({a1:.4}, {a2:.4}, {a3:.4})"),
            GValue::Hfe(h) => {
                write!(f, "{{")?;
                for (i, v) in h.0.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{v:.4}")?;
                }
                write!(f, "}}")
            }
            GValue::IntuPair { mu, nu } => write!(f, "<{mu:.4}, {nu:.4}>"),
        }
    }
}
