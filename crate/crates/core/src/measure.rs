//! Fuzzy measures (capacities) over the criterion index set.
//!
//! Subsets are bitmasks with criterion 0 in the lowest bit.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gvalue::Mode;

/// Largest supported criterion count; tables hold `2^n` entries and the
/// exhaustive checks are `O(3^n)`.
pub const MAX_CRITERIA: usize = 16;

const CLASSIFY_TOLERANCE: f64 = 1e-9;

pub type Subset = u32;

/// Renders a subset as `{x1,x4}` using 1-based indices.
pub fn subset_name(mask: Subset) -> String {
    let items: Vec<String> = (0..32)
        .filter(|i| mask & (1 << i) != 0)
        .map(|i| format!("x{}", i + 1))
        .collect();
    format!("{{{}}}", items.join(","))
}

/// Sign convention of the rho-rule `mu(A u B) = mu(A) + mu(B) -/+ rho mu(A) mu(B)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RhoSign {
    /// `mu(A) + mu(B) - rho mu(A) mu(B)`.
    #[default]
    Subtract,
    /// `mu(A) + mu(B) + rho mu(A) mu(B)` (Sugeno lambda-measure).
    Sugeno,
}

impl RhoSign {
    fn union(self, a: f64, b: f64, rho: f64) -> f64 {
        match self {
            RhoSign::Subtract => a + b - rho * a * b,
            RhoSign::Sugeno => a + b + rho * a * b,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "code", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MeasureWarning {
    MonotonicityViolation {
        subset: Subset,
        superset: Subset,
        subset_value: f64,
        superset_value: f64,
    },
    NotNormalized {
        value: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MeasureClass {
    Additive,
    Subadditive,
    Superadditive,
    General,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyMeasure {
    n: usize,
    values: Vec<f64>,
    mode: Mode,
    warnings: Vec<MeasureWarning>,
}

fn full_mask(n: usize) -> Subset {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Calls `f(sub, sup)` for every proper nonempty-or-empty `sub` strictly inside `sup`.
fn for_each_proper_pair(n: usize, mut f: impl FnMut(Subset, Subset)) {
    for sup in 1..=full_mask(n) {
        // all proper submasks of sup, including the empty set
        let mut sub = (sup - 1) & sup;
        loop {
            f(sub, sup);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & sup;
        }
    }
}

impl FuzzyMeasure {
    /// Builds a measure from `(subset, value)` entries. The empty set may be
    /// omitted (it defaults to 0); every other subset must be listed once.
    pub fn from_table(
        n: usize,
        entries: impl IntoIterator<Item = (Subset, f64)>,
        mode: Mode,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::Schema("measure needs at least one criterion".into()));
        }
        if n > MAX_CRITERIA {
            return Err(Error::TooManyCriteria {
                max: MAX_CRITERIA,
                found: n,
            });
        }
        let size = 1usize << n;
        let mut values: Vec<Option<f64>> = vec![None; size];
        for (mask, value) in entries {
            if mask as usize >= size {
                return Err(Error::Schema(format!(
                    "subset {} refers to a criterion beyond x{n}",
                    subset_name(mask)
                )));
            }
            if values[mask as usize].replace(value).is_some() {
                return Err(Error::DuplicateSubset(subset_name(mask)));
            }
        }
        values[0].get_or_insert(0.0);
        let values = values
            .into_iter()
            .enumerate()
            .map(|(mask, v)| v.ok_or_else(|| Error::MissingSubset(subset_name(mask as Subset))))
            .collect::<Result<Vec<f64>>>()?;
        Self::from_values(n, values, mode)
    }

    /// Builds a measure from a dense table indexed by bitmask.
    pub fn from_values(n: usize, values: Vec<f64>, mode: Mode) -> Result<Self> {
        if n == 0 || n > MAX_CRITERIA {
            return Err(Error::TooManyCriteria {
                max: MAX_CRITERIA,
                found: n,
            });
        }
        if values.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: values.len(),
            });
        }
        for (mask, &v) in values.iter().enumerate() {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::ValueOutOfRange {
                    subset: subset_name(mask as Subset),
                    value: v,
                });
            }
        }
        if values[0] != 0.0 {
            return Err(Error::BadBoundary(format!(
                "mu({{}}) = {}, expected 0",
                values[0]
            )));
        }
        let full = full_mask(n) as usize;
        let mut warnings = Vec::new();
        if values[full] != 1.0 {
            match mode {
                Mode::Strict => {
                    return Err(Error::BadBoundary(format!(
                        "mu(X) = {}, expected 1",
                        values[full]
                    )))
                }
                Mode::Lenient => warnings.push(MeasureWarning::NotNormalized {
                    value: values[full],
                }),
            }
        }
        let mut first_violation = None;
        for_each_proper_pair(n, |sub, sup| {
            let (a, b) = (values[sub as usize], values[sup as usize]);
            if a > b {
                if first_violation.is_none() {
                    first_violation = Some((sub, sup, a, b));
                }
                warnings.push(MeasureWarning::MonotonicityViolation {
                    subset: sub,
                    superset: sup,
                    subset_value: a,
                    superset_value: b,
                });
            }
        });
        if let (Mode::Strict, Some((sub, sup, a, b))) = (mode, first_violation) {
            return Err(Error::MonotonicityViolation {
                subset: subset_name(sub),
                superset: subset_name(sup),
                subset_value: a,
                superset_value: b,
            });
        }
        Ok(FuzzyMeasure {
            n,
            values,
            mode,
            warnings,
        })
    }

    /// `mu(A) = |A| / n`.
    pub fn uniform(n: usize) -> Result<Self> {
        let values = (0..1u32 << n)
            .map(|m| m.count_ones() as f64 / n as f64)
            .collect();
        Self::from_values(n, values, Mode::Strict)
    }

    /// Additive measure from singleton weights (which must sum to 1 for
    /// strict mode).
    pub fn additive(weights: &[f64], mode: Mode) -> Result<Self> {
        let n = weights.len();
        if n == 0 || n > MAX_CRITERIA {
            return Err(Error::TooManyCriteria {
                max: MAX_CRITERIA,
                found: n,
            });
        }
        let mut values = vec![0.0; 1 << n];
        for mask in 1..values.len() {
            let low = mask.trailing_zeros() as usize;
            values[mask] = values[mask & (mask - 1)] + weights[low];
        }
        let full = values.len() - 1;
        if (values[full] - 1.0).abs() <= 1e-12 {
            values[full] = 1.0;
        }
        for v in values.iter_mut() {
            *v = v.clamp(0.0, 1.0);
        }
        Self::from_values(n, values, mode)
    }

    /// Measure generated from singleton weights by repeatedly applying the
    /// rho-rule over disjoint unions, folding criteria in index order.
    pub fn rho_rule(singletons: &[f64], rho: f64, sign: RhoSign, mode: Mode) -> Result<Self> {
        let n = singletons.len();
        if n == 0 || n > MAX_CRITERIA {
            return Err(Error::TooManyCriteria {
                max: MAX_CRITERIA,
                found: n,
            });
        }
        if !rho.is_finite() || rho <= -1.0 {
            return Err(Error::OutOfRange(format!(
                "rho = {rho} must lie in (-1, inf)"
            )));
        }
        for (i, &g) in singletons.iter().enumerate() {
            if !(0.0..=1.0).contains(&g) {
                return Err(Error::ValueOutOfRange {
                    subset: subset_name(1 << i),
                    value: g,
                });
            }
        }
        let mut values = rho_table(singletons, rho, sign);
        let full = values.len() - 1;
        if (values[full] - 1.0).abs() > 1e-9 {
            return Err(Error::NotNormalized(values[full]));
        }
        values[full] = 1.0;
        for (mask, v) in values.iter_mut().enumerate() {
            if *v < -1e-9 || *v > 1.0 + 1e-9 {
                return Err(Error::ValueOutOfRange {
                    subset: subset_name(mask as Subset),
                    value: *v,
                });
            }
            *v = v.clamp(0.0, 1.0);
        }
        Self::from_values(n, values, mode)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn warnings(&self) -> &[MeasureWarning] {
        &self.warnings
    }

    pub fn value(&self, subset: Subset) -> f64 {
        self.values[subset as usize]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn full(&self) -> Subset {
        full_mask(self.n)
    }

    pub fn is_monotone(&self) -> bool {
        !self
            .warnings
            .iter()
            .any(|w| matches!(w, MeasureWarning::MonotonicityViolation { .. }))
    }

    /// Exhaustive check over all disjoint nonempty pairs.
    pub fn classify(&self) -> MeasureClass {
        let (mut all_eq, mut all_le, mut all_ge) = (true, true, true);
        for a in 1..=self.full() {
            let rest = self.full() & !a;
            let mut b = rest;
            while b != 0 {
                // each unordered pair is visited twice; harmless
                let lhs = self.value(a | b);
                let rhs = self.value(a) + self.value(b);
                let d = lhs - rhs;
                if d.abs() > CLASSIFY_TOLERANCE {
                    all_eq = false;
                }
                if d > CLASSIFY_TOLERANCE {
                    all_le = false;
                }
                if d < -CLASSIFY_TOLERANCE {
                    all_ge = false;
                }
                b = (b - 1) & rest;
            }
        }
        match (all_eq, all_le, all_ge) {
            (true, _, _) => MeasureClass::Additive,
            (_, true, _) => MeasureClass::Subadditive,
            (_, _, true) => MeasureClass::Superadditive,
            _ => MeasureClass::General,
        }
    }

    /// `w_i = mu(A_i) - mu(A_{i-1})` along the chain
    /// `A_i = {sigma[0], ..., sigma[i-1]}`.
    pub fn marginal_weights(&self, sigma: &[usize]) -> Result<Vec<f64>> {
        if sigma.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: sigma.len(),
            });
        }
        let mut seen: Subset = 0;
        let mut prev = 0.0;
        let mut out = Vec::with_capacity(self.n);
        for &i in sigma {
            if i >= self.n || seen & (1 << i) != 0 {
                return Err(Error::InvalidPermutation(sigma.to_vec()));
            }
            seen |= 1 << i;
            let v = self.value(seen);
            out.push(v - prev);
            prev = v;
        }
        Ok(out)
    }
}

fn rho_table(singletons: &[f64], rho: f64, sign: RhoSign) -> Vec<f64> {
    let n = singletons.len();
    let mut values = vec![0.0; 1 << n];
    for mask in 1usize..values.len() {
        let high = (usize::BITS - 1 - mask.leading_zeros()) as usize;
        let rest = mask & !(1 << high);
        values[mask] = if rest == 0 {
            singletons[high]
        } else {
            sign.union(values[rest], singletons[high], rho)
        };
    }
    values
}

fn rho_total(singletons: &[f64], rho: f64, sign: RhoSign) -> f64 {
    singletons
        .iter()
        .skip(1)
        .fold(singletons[0], |acc, &g| sign.union(acc, g, rho))
}

/// Lower and upper ends of the rho search bracket.
pub const RHO_BRACKET: (f64, f64) = (-1.0 + 1e-9, 1e6);

/// Finds the rho for which the rho-rule measure is normalized.
///
/// Returns 0 when the singletons already sum to 1 (within 1e-12).
pub fn solve_rho(singletons: &[f64], sign: RhoSign) -> Result<f64> {
    if singletons.is_empty() || singletons.len() > MAX_CRITERIA {
        return Err(Error::TooManyCriteria {
            max: MAX_CRITERIA,
            found: singletons.len(),
        });
    }
    for (i, &g) in singletons.iter().enumerate() {
        if !(0.0..=1.0).contains(&g) {
            return Err(Error::ValueOutOfRange {
                subset: subset_name(1 << i),
                value: g,
            });
        }
    }
    let sum: f64 = singletons.iter().sum();
    if (sum - 1.0).abs() <= 1e-12 {
        return Ok(0.0);
    }
    let residual = |rho: f64| rho_total(singletons, rho, sign) - 1.0;
    // Scan upward for the first sign change. Far above 1 the rule can go
    // negative and the total oscillates, so the first change is the root
    // that keeps every subset value in [0, 1].
    let grid = rho_grid();
    let mut prev = (grid[0], residual(grid[0]));
    if prev.1 == 0.0 {
        return Ok(prev.0);
    }
    for &x in &grid[1..] {
        let fx = residual(x);
        if !fx.is_finite() {
            break;
        }
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() != prev.1.signum() {
            let rho = bisect(residual, prev.0, x, prev.1);
            let table = rho_table(singletons, rho, sign);
            if table.iter().all(|&v| (-1e-9..=1.0 + 1e-9).contains(&v)) {
                return Ok(rho);
            }
            break;
        }
        prev = (x, fx);
    }
    Err(Error::NoRoot)
}

fn rho_grid() -> Vec<f64> {
    let (lo, hi) = RHO_BRACKET;
    let mut grid = vec![lo];
    grid.extend((1..=8).rev().map(|k| -1.0 + 10f64.powi(-k)));
    grid.extend((-18..=18).map(|k| k as f64 * 0.05));
    let mut x = 1.0f64;
    while x < hi {
        x *= 1.1;
        grid.push(x.min(hi));
    }
    grid
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, mut f_lo: f64) -> f64 {
    while hi - lo > 1e-12 * hi.abs().max(1.0) {
        let mid = lo + (hi - lo) / 2.0;
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    if f(lo).abs() <= f(hi).abs() {
        lo
    } else {
        hi
    }
}
