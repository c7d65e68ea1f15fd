//! Scoring competing decision techniques against the collective majority
//! preference of their ranking orders.
//!
//! Each technique contributes a strict order over the same alternatives.
//! Individual `+1/-1` pairwise matrices are summed into a collective matrix,
//! the majority relation is read off its signs, and each technique is scored
//! by the distance between its dominance vector and the collective one.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{self, Execution};

/// A technique's strict total order over a fixed list of alternatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankingOrder {
    technique: String,
    alternatives: Vec<String>,
    /// Alternative indices, best first.
    order: Vec<usize>,
}

impl RankingOrder {
    /// `order` lists alternative labels best first; each must appear exactly once.
    pub fn new(
        technique: impl Into<String>,
        alternatives: Vec<String>,
        order: &[impl AsRef<str>],
    ) -> Result<Self> {
        let technique = technique.into();
        if order.len() != alternatives.len() {
            return Err(Error::InvalidOrder(format!(
                "{technique}: order has {} entries for {} alternatives",
                order.len(),
                alternatives.len()
            )));
        }
        let mut seen = vec![false; alternatives.len()];
        let mut idx = Vec::with_capacity(order.len());
        for label in order {
            let label = label.as_ref();
            let i = alternatives
                .iter()
                .position(|a| a == label)
                .ok_or_else(|| {
                    Error::InvalidOrder(format!("{technique}: unknown alternative {label}"))
                })?;
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidOrder(format!(
                    "{technique}: {label} listed twice"
                )));
            }
            idx.push(i);
        }
        Ok(RankingOrder {
            technique,
            alternatives,
            order: idx,
        })
    }

    pub fn from_indices(
        technique: impl Into<String>,
        alternatives: Vec<String>,
        order: Vec<usize>,
    ) -> Result<Self> {
        let labels: Vec<String> = order
            .iter()
            .map(|&i| alternatives.get(i).cloned().unwrap_or_default())
            .collect();
        Self::new(technique, alternatives, &labels)
    }

    pub fn technique(&self) -> &str {
        &self.technique
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn order_labels(&self) -> Vec<&str> {
        self.order
            .iter()
            .map(|&i| self.alternatives[i].as_str())
            .collect()
    }

    pub fn reversed(&self) -> RankingOrder {
        let mut r = self.clone();
        r.order.reverse();
        r
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MatrixKind {
    Individual,
    Collective,
}

/// Antisymmetric pairwise preference matrix with zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PreferenceMatrix {
    n: usize,
    entries: Vec<i64>,
    kind: MatrixKind,
}

impl PreferenceMatrix {
    /// Collective matrix from raw row-major entries; checks antisymmetry.
    pub fn collective(n: usize, entries: Vec<i64>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: entries.len(),
            });
        }
        let m = PreferenceMatrix {
            n,
            entries,
            kind: MatrixKind::Collective,
        };
        for i in 0..n {
            for j in 0..n {
                if m.get(i, j) != -m.get(j, i) {
                    return Err(Error::InvalidOrder(format!(
                        "matrix is not antisymmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries
            .chunks(self.n.max(1))
            .map(<[i64]>::to_vec)
            .collect()
    }
}

/// `r_ij = +1` iff alternative `i` is ranked above `j`.
pub fn preference_matrix(r: &RankingOrder) -> PreferenceMatrix {
    let n = r.alternatives.len();
    let mut pos = vec![0usize; n];
    for (p, &i) in r.order.iter().enumerate() {
        pos[i] = p;
    }
    let mut entries = vec![0i64; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                entries[i * n + j] = if pos[i] < pos[j] { 1 } else { -1 };
            }
        }
    }
    PreferenceMatrix {
        n,
        entries,
        kind: MatrixKind::Individual,
    }
}

/// Per-alternative count of dominated alternatives plus one, indexed in
/// alternative label order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DominanceVector(pub Vec<u32>);

impl DominanceVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_permutation(&self) -> bool {
        let n = self.0.len();
        let mut seen = vec![false; n];
        self.0.iter().all(|&v| {
            let k = v as usize;
            (1..=n).contains(&k) && !std::mem::replace(&mut seen[k - 1], true)
        })
    }
}

pub fn dominance_vector(r: &RankingOrder) -> DominanceVector {
    let n = r.order.len();
    let mut v = vec![0u32; n];
    for (p, &i) in r.order.iter().enumerate() {
        v[i] = (n - p) as u32;
    }
    DominanceVector(v)
}

/// Componentwise sum of the individual matrices.
pub fn collective_matrix(rs: &[RankingOrder]) -> Result<PreferenceMatrix> {
    let first = rs
        .first()
        .ok_or_else(|| Error::InvalidOrder("no ranking orders".into()))?;
    let n = first.alternatives.len();
    let mut entries = vec![0i64; n * n];
    for r in rs {
        if r.alternatives != first.alternatives {
            return Err(Error::LabelMismatch(format!(
                "{} vs {}",
                first.technique, r.technique
            )));
        }
        for (e, x) in entries.iter_mut().zip(preference_matrix(r).entries) {
            *e += x;
        }
    }
    Ok(PreferenceMatrix {
        n,
        entries,
        kind: MatrixKind::Collective,
    })
}

/// Reads the majority relation `i > j iff r_ij > 0` as a strict order.
pub fn extract_collective(cm: &PreferenceMatrix, alternatives: &[String]) -> Result<RankingOrder> {
    let n = cm.n;
    if alternatives.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: alternatives.len(),
        });
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if cm.get(i, j) == 0 {
                return Err(Error::NotATotalOrder(format!(
                    "tie between {} and {}",
                    alternatives[i], alternatives[j]
                )));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if cm.get(i, j) > 0 && cm.get(j, k) > 0 && cm.get(k, i) > 0 {
                    return Err(Error::NotATotalOrder(format!(
                        "cycle {} > {} > {} > {}",
                        alternatives[i], alternatives[j], alternatives[k], alternatives[i]
                    )));
                }
            }
        }
    }
    // a complete transitive tournament has distinct win counts
    let wins: Vec<usize> = (0..n)
        .map(|i| (0..n).filter(|&j| cm.get(i, j) > 0).count())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| wins[b].cmp(&wins[a]));
    RankingOrder::from_indices("collective", alternatives.to_vec(), order)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    /// Sum of componentwise absolute differences.
    #[default]
    L1,
    /// `max{max_i min_j |p_i - q_j|, max_j min_i |p_i - q_j|}`, comparing the
    /// vectors as value sets.
    Maxmin,
}

pub fn preference_distance(
    p: &DominanceVector,
    q: &DominanceVector,
    metric: Metric,
) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            found: q.len(),
        });
    }
    let d = |a: u32, b: u32| (a as f64 - b as f64).abs();
    Ok(match metric {
        Metric::L1 => p.0.iter().zip(&q.0).map(|(&a, &b)| d(a, b)).sum(),
        Metric::Maxmin => {
            let directed = |x: &[u32], y: &[u32]| {
                x.iter()
                    .map(|&a| y.iter().map(|&b| d(a, b)).fold(f64::INFINITY, f64::min))
                    .fold(0.0, f64::max)
            };
            directed(&p.0, &q.0).max(directed(&q.0, &p.0))
        }
    })
}

/// One technique's ranking, optionally with the dominance vector recorded
/// alongside it in the source data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TechniqueRanking {
    pub order: RankingOrder,
    pub recorded: Option<DominanceVector>,
}

impl From<RankingOrder> for TechniqueRanking {
    fn from(order: RankingOrder) -> Self {
        TechniqueRanking {
            order,
            recorded: None,
        }
    }
}

/// Which dominance vector scores a technique.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VectorSource {
    /// Always computed from the ranking order.
    #[default]
    Derived,
    /// The recorded vector when present, else the derived one.
    Recorded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ConsensusOptions {
    pub metric: Metric,
    pub vectors: VectorSource,
    pub execution: Execution,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TechniqueScore {
    pub technique: String,
    pub order: Vec<String>,
    pub derived: DominanceVector,
    pub recorded: Option<DominanceVector>,
    /// The vector actually used for the distance.
    pub used: DominanceVector,
    pub distance: f64,
    /// 1-based tier index.
    pub tier: usize,
    /// Normalized inverse tier index.
    pub weight: f64,
}

impl TechniqueScore {
    pub fn recorded_mismatch(&self) -> bool {
        self.recorded.as_ref().is_some_and(|r| *r != self.derived)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConsensusReport {
    pub alternatives: Vec<String>,
    pub collective_matrix: Vec<Vec<i64>>,
    pub collective_order: Vec<String>,
    pub collective_vector: DominanceVector,
    pub metric: Metric,
    pub techniques: Vec<TechniqueScore>,
    /// Technique labels grouped by equal distance, best first.
    pub tiers: Vec<Vec<String>>,
}

const TIER_TOLERANCE: f64 = 1e-9;

/// Collective matrix, collective order, per-technique distance, then tiers
/// of equal distance in ascending order. Labels keep input order within a tier.
pub fn sort_techniques(
    rs: &[TechniqueRanking],
    opts: &ConsensusOptions,
) -> Result<ConsensusReport> {
    let orders: Vec<RankingOrder> = rs.iter().map(|t| t.order.clone()).collect();
    let cm = collective_matrix(&orders)?;
    let alternatives = orders[0].alternatives.clone();
    let collective = extract_collective(&cm, &alternatives)?;
    let target = dominance_vector(&collective);

    let scored = exec::map(
        rs,
        opts.execution,
        |_, t| -> Result<(DominanceVector, DominanceVector, f64)> {
            let derived = dominance_vector(&t.order);
            let used = match (opts.vectors, &t.recorded) {
                (VectorSource::Recorded, Some(r)) => r.clone(),
                _ => derived.clone(),
            };
            let distance = preference_distance(&used, &target, opts.metric)?;
            Ok((derived, used, distance))
        },
    )
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let mut distinct: Vec<f64> = scored.iter().map(|s| s.2).collect();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup_by(|a, b| (*a - *b).abs() <= TIER_TOLERANCE);
    let tier_of = |d: f64| {
        distinct
            .iter()
            .position(|&x| (x - d).abs() <= TIER_TOLERANCE)
            .unwrap_or(0)
            + 1
    };
    let inv_total: f64 = scored.iter().map(|s| 1.0 / tier_of(s.2) as f64).sum();

    let techniques: Vec<TechniqueScore> = rs
        .iter()
        .zip(scored)
        .map(|(t, (derived, used, distance))| {
            let tier = tier_of(distance);
            TechniqueScore {
                technique: t.order.technique.clone(),
                order: t
                    .order
                    .order_labels()
                    .into_iter()
                    .map(String::from)
                    .collect(),
                derived,
                recorded: t.recorded.clone(),
                used,
                distance,
                tier,
                weight: (1.0 / tier as f64) / inv_total,
            }
        })
        .collect();
    let tiers = (1..=distinct.len())
        .map(|k| {
            techniques
                .iter()
                .filter(|t| t.tier == k)
                .map(|t| t.technique.clone())
                .collect()
        })
        .collect();
    Ok(ConsensusReport {
        alternatives,
        collective_matrix: cm.rows(),
        collective_order: collective
            .order_labels()
            .into_iter()
            .map(String::from)
            .collect(),
        collective_vector: target,
        metric: opts.metric,
        techniques,
        tiers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alts(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("y{i}")).collect()
    }

    fn order(t: &str, o: &[&str]) -> RankingOrder {
        RankingOrder::new(t, alts(o.len()), o).unwrap()
    }

    #[test]
    fn matrix_of_first_technique() {
        let r = order("X1", &["y4", "y5", "y2", "y1", "y3"]);
        let m = preference_matrix(&r);
        assert_eq!(
            m.rows(),
            vec![
                vec![0, -1, 1, -1, -1],
                vec![1, 0, 1, -1, -1],
                vec![-1, -1, 0, -1, -1],
                vec![1, 1, 1, 0, 1],
                vec![1, 1, 1, -1, 0],
            ]
        );
        let rev = preference_matrix(&r.reversed());
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(rev.get(i, j), -m.get(i, j));
            }
        }
    }

    #[test]
    fn single_alternative() {
        let r = order("A", &["y1"]);
        assert_eq!(preference_matrix(&r).rows(), vec![vec![0]]);
        assert_eq!(dominance_vector(&r), DominanceVector(vec![1]));
    }

    #[test]
    fn dominance_vectors() {
        assert_eq!(
            dominance_vector(&order("W1", &["y2", "y5", "y4", "y1", "y3"])).0,
            vec![2, 5, 1, 3, 4]
        );
        assert_eq!(
            dominance_vector(&order("Z1", &["y5", "y2", "y1", "y4", "y3"])).0,
            vec![3, 4, 1, 2, 5]
        );
        assert_eq!(
            dominance_vector(&order("id", &["y1", "y2", "y3", "y4"])).0,
            vec![4, 3, 2, 1]
        );
    }

    #[test]
    fn order_and_reverse_cancel() {
        let r = order("A", &["y3", "y1", "y2"]);
        let cm = collective_matrix(&[r.clone(), r.reversed()]).unwrap();
        assert!(cm.rows().iter().flatten().all(|&x| x == 0));
        assert_eq!(
            collective_matrix(std::slice::from_ref(&r)).unwrap().rows(),
            preference_matrix(&r).rows()
        );
    }

    #[test]
    fn label_mismatch() {
        let a = order("A", &["y1", "y2"]);
        let b = RankingOrder::new("B", vec!["p".into(), "q".into()], &["p", "q"]).unwrap();
        assert_eq!(
            collective_matrix(&[a, b]).unwrap_err().code(),
            "LABEL_MISMATCH"
        );
    }

    #[test]
    fn condorcet_cycle_is_rejected() {
        let abc = vec!["a".to_string(), "b".into(), "c".into()];
        let rs = vec![
            RankingOrder::new("1", abc.clone(), &["a", "b", "c"]).unwrap(),
            RankingOrder::new("2", abc.clone(), &["b", "c", "a"]).unwrap(),
            RankingOrder::new("3", abc.clone(), &["c", "a", "b"]).unwrap(),
        ];
        let cm = collective_matrix(&rs).unwrap();
        let err = extract_collective(&cm, &abc).unwrap_err();
        assert_eq!(err.code(), "NOT_A_TOTAL_ORDER");
        assert!(err.to_string().contains("cycle"));
    }

    #[test]
    fn unanimous_collective() {
        let r = order("A", &["y2", "y3", "y1"]);
        let cm = collective_matrix(&[r.clone(), r.clone()]).unwrap();
        assert_eq!(
            extract_collective(&cm, &alts(3)).unwrap().order(),
            r.order()
        );
    }

    #[test]
    fn zero_entry_is_a_tie() {
        let a = order("A", &["y1", "y2"]);
        let cm = collective_matrix(&[a.clone(), a.reversed()]).unwrap();
        assert!(extract_collective(&cm, &alts(2))
            .unwrap_err()
            .to_string()
            .contains("tie"));
    }

    #[test]
    fn distances() {
        let bar = DominanceVector(vec![3, 4, 1, 2, 5]);
        let c = DominanceVector(vec![4, 3, 1, 2, 5]);
        let w1 = DominanceVector(vec![2, 5, 1, 3, 4]);
        assert_eq!(preference_distance(&c, &bar, Metric::L1).unwrap(), 2.0);
        assert_eq!(preference_distance(&w1, &bar, Metric::L1).unwrap(), 4.0);
        assert_eq!(preference_distance(&bar, &bar, Metric::L1).unwrap(), 0.0);
        assert_eq!(
            preference_distance(&bar, &bar, Metric::Maxmin).unwrap(),
            0.0
        );
        // permutations of one value set are indistinguishable as sets
        assert_eq!(preference_distance(&w1, &bar, Metric::Maxmin).unwrap(), 0.0);
        assert_eq!(
            preference_distance(
                &DominanceVector(vec![1, 1]),
                &DominanceVector(vec![4, 2]),
                Metric::Maxmin
            )
            .unwrap(),
            3.0
        );
        assert!(preference_distance(&bar, &DominanceVector(vec![1]), Metric::L1).is_err());
    }

    #[test]
    fn single_technique_single_tier() {
        let r: TechniqueRanking = order("A", &["y2", "y1", "y3"]).into();
        let rep = sort_techniques(&[r], &Default::default()).unwrap();
        assert_eq!(rep.tiers, vec![vec!["A".to_string()]]);
        assert_eq!(rep.techniques[0].distance, 0.0);
        assert_eq!(rep.techniques[0].weight, 1.0);
    }

    #[test]
    fn invalid_orders() {
        assert!(RankingOrder::new("A", alts(3), &["y1", "y1", "y2"]).is_err());
        assert!(RankingOrder::new("A", alts(3), &["y1", "y2"]).is_err());
        assert!(RankingOrder::new("A", alts(2), &["y1", "zz"]).is_err());
    }
}
