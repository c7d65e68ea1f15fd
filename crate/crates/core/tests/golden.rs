use std::path::PathBuf;

use hohf_core::choquet::{aggregate_row, hohf_choquet, rank_alternatives, AggregationOptions};
use hohf_core::consensus::{
    collective_matrix, dominance_vector, extract_collective, preference_distance, sort_techniques,
    ConsensusOptions, DominanceVector, Metric, TechniqueRanking, VectorSource,
};
use hohf_core::gvalue::{GValue, Mode};
use hohf_core::hohfe::{hohfs_score, Hohfe};
use hohf_core::io::{parse_problem, parse_rankings};
use hohf_core::measure::MeasureClass;
use hohf_core::warning::WarningCode;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples")
        .join(name)
}

fn psum(a: f64, b: f64) -> f64 {
    a + b - a * b
}

fn tfn_parts(g: &GValue) -> (f64, f64, f64) {
    match g {
        GValue::Tfn(a, b, c) => (*a, *b, *c),
        other => panic!("expected tfn, got {other}"),
    }
}

#[test]
fn two_criterion_intuitionistic_instance() {
    let p = parse_problem(fixture("intuitionistic.json")).unwrap();
    let h = hohf_choquet(p.matrix.row(0), &p.measure, &AggregationOptions::default()).unwrap();
    let expected = Hohfe::new(vec![
        GValue::intu(0.1708, 0.6598),
        GValue::intu(0.1927, 0.6310),
    ])
    .unwrap();
    assert!(h.set_eq(&expected, 1e-4), "{h}");
    assert_eq!(p.warnings.len(), 1);
    assert_eq!(p.warnings[0].code, WarningCode::NotNormalized);
}

#[test]
fn intuitionistic_element_scores() {
    let p = parse_problem(fixture("intuitionistic.json")).unwrap();
    let row = p.matrix.row(0);
    assert!((row[0].score() - 0.3).abs() < 1e-12);
    // the printed 0.1 for the second element does not follow from 1 - 0.3 - 0.5
    assert!((row[1].score() - 0.2).abs() < 1e-12);
    assert!((hohfs_score(row).unwrap() - 0.25).abs() < 1e-12);
}

#[test]
fn hohfs_score_two_element_average() {
    let a = Hohfe::singleton(GValue::intu(0.2, 0.5));
    let b = Hohfe::singleton(GValue::intu(0.4, 0.5));
    assert!((hohfs_score(&[a, b]).unwrap() - 0.2).abs() < 1e-12);
}

#[test]
fn energy_y1_matches_printed_and_recomputed() {
    let p = parse_problem(fixture("energy.json")).unwrap();
    let r = aggregate_row(p.matrix.row(0), &p.measure, &AggregationOptions::default()).unwrap();
    assert_eq!(r.sigma, vec![2, 1, 0, 3]);

    // 0.3 * x3 (+) 0.7 * x4, worked by hand
    let t1 = (psum(0.15, 0.14), psum(0.21, 0.21), psum(0.21, 0.28));
    let t2 = (psum(0.21, 0.14), psum(0.24, 0.21), psum(0.27, 0.28));
    let expected = Hohfe::new(vec![
        GValue::tfn(t1.0, t1.1, t1.2),
        GValue::tfn(t2.0, t2.1, t2.2),
        GValue::hfe(vec![0.21, 0.28, 0.35]).unwrap(),
    ])
    .unwrap();
    assert!(r.aggregate.set_eq(&expected, 1e-12), "{}", r.aggregate);

    let printed = Hohfe::new(vec![
        GValue::tfn(0.27, 0.37, 0.43),
        GValue::tfn(0.32, 0.40, 0.47),
        GValue::hfe(vec![0.21, 0.28, 0.35]).unwrap(),
    ])
    .unwrap();
    // printed to two places; 0.37 sits 5.9e-3 below the exact 0.3759
    assert!(r.aggregate.set_eq(&printed, 6e-3));

    let (a, b, c) = tfn_parts(&r.aggregate.elements()[0]);
    assert!((a - 0.269).abs() < 1e-12 && (b - 0.3759).abs() < 1e-12 && (c - 0.4312).abs() < 1e-12);
    let score_by_hand = ((t1.0 + t1.1 + t1.2) / 3.0 + (t2.0 + t2.1 + t2.2) / 3.0 + 0.28) / 3.0;
    assert!((r.score - score_by_hand).abs() < 1e-12);
    assert!((r.score - 0.3456).abs() < 1e-3);
    assert!((r.score - 0.34563).abs() < 1e-5);
}

#[test]
fn energy_y4_reproduces_printed_score() {
    let p = parse_problem(fixture("energy.json")).unwrap();
    let r = aggregate_row(p.matrix.row(3), &p.measure, &AggregationOptions::default()).unwrap();
    assert!((r.score - 0.2739).abs() < 1e-4);
}

#[test]
fn energy_sigma_orders() {
    let p = parse_problem(fixture("energy.json")).unwrap();
    let expected = [
        [2, 1, 0, 3],
        [2, 3, 1, 0],
        [1, 3, 2, 0],
        [2, 1, 0, 3],
        [1, 3, 0, 2],
    ];
    for (i, want) in expected.iter().enumerate() {
        let r = aggregate_row(p.matrix.row(i), &p.measure, &AggregationOptions::default()).unwrap();
        assert_eq!(&r.sigma[..], want, "y{}", i + 1);
    }
}

#[test]
fn energy_measure_is_flagged() {
    let p = parse_problem(fixture("energy.json")).unwrap();
    assert!(!p.measure.is_monotone());
    assert_eq!(p.measure.classify(), MeasureClass::General);
    let report = rank_alternatives(&p.matrix, &p.measure, &AggregationOptions::default()).unwrap();
    let mut rows: Vec<&str> = report
        .warnings
        .iter()
        .filter(|w| w.code == WarningCode::NegativeMarginalWeight)
        .map(|w| w.subject.split('/').next().unwrap())
        .collect();
    rows.dedup();
    assert_eq!(rows, ["y2", "y3", "y5"]);
    let strict = std::fs::read_to_string(fixture("energy.json")).unwrap();
    let err = hohf_core::io::parse_problem_str(&strict, Some(Mode::Strict)).unwrap_err();
    assert_eq!(err.code(), "VALIDATION_ERROR");
}

#[test]
fn investment_fixture_is_clean_in_strict_mode() {
    let p = parse_problem(fixture("investment.json")).unwrap();
    assert_eq!(p.mode, Mode::Strict);
    assert!(p.warnings.is_empty());
    assert!(p.measure.is_monotone());
    let report = rank_alternatives(&p.matrix, &p.measure, &AggregationOptions::default()).unwrap();
    assert!(report.warnings.is_empty());
}

fn table3() -> Vec<TechniqueRanking> {
    parse_rankings(fixture("table3.json")).unwrap()
}

#[test]
fn collective_matrix_matches_printed() {
    let rs = table3();
    let orders: Vec<_> = rs.iter().map(|t| t.order.clone()).collect();
    let cm = collective_matrix(&orders).unwrap();
    let printed = vec![
        vec![0, -1, 11, 5, -11],
        vec![1, 0, 11, 9, -9],
        vec![-11, -11, 0, -5, -11],
        vec![-5, -9, 5, 0, -9],
        vec![11, 9, 11, 9, 0],
    ];
    assert_eq!(cm.rows(), printed);
    let collective = extract_collective(&cm, orders[0].alternatives()).unwrap();
    assert_eq!(collective.order_labels(), ["y5", "y2", "y1", "y4", "y3"]);
    assert_eq!(
        dominance_vector(&collective),
        DominanceVector(vec![3, 4, 1, 2, 5])
    );
}

#[test]
fn dominance_vectors_match_table_except_x1() {
    for t in table3() {
        let derived = dominance_vector(&t.order);
        let recorded = t.recorded.clone().unwrap();
        if t.order.technique() == "X1" {
            assert_eq!(derived, DominanceVector(vec![2, 3, 1, 5, 4]));
            assert_ne!(derived, recorded);
        } else {
            assert_eq!(derived, recorded, "{}", t.order.technique());
        }
    }
}

#[test]
fn l1_distances_match_reference() {
    let printed = [
        ("X1", 4.0),
        ("W1", 4.0),
        ("Z1", 0.0),
        ("C", 2.0),
        ("X2", 2.0),
        ("F", 2.0),
        ("Z2", 2.0),
        ("Z3", 4.0),
        ("W2", 4.0),
        ("P", 2.0),
        ("Pro", 0.0),
    ];
    let report = sort_techniques(&table3(), &ConsensusOptions::default()).unwrap();
    for (t, (label, d)) in report.techniques.iter().zip(printed) {
        assert_eq!(t.technique, label);
        if label == "X1" {
            assert_eq!(t.distance, 6.0);
            let printed_vec = t.recorded.clone().unwrap();
            let d_printed =
                preference_distance(&printed_vec, &report.collective_vector, Metric::L1).unwrap();
            assert_eq!(d_printed, d);
        } else {
            assert_eq!(t.distance, d, "{label}");
        }
    }
}

#[test]
fn tiers_with_recorded_vectors_match_printed() {
    let opts = ConsensusOptions {
        vectors: VectorSource::Recorded,
        ..Default::default()
    };
    let report = sort_techniques(&table3(), &opts).unwrap();
    let tiers: Vec<Vec<&str>> = report
        .tiers
        .iter()
        .map(|t| t.iter().map(String::as_str).collect())
        .collect();
    assert_eq!(
        tiers,
        vec![
            vec!["Z1", "Pro"],
            vec!["C", "X2", "F", "Z2", "P"],
            vec!["X1", "W1", "Z3", "W2"]
        ]
    );
    let total: f64 = report.techniques.iter().map(|t| t.weight).sum();
    assert!((total - 1.0).abs() < 1e-12);
}

#[test]
fn tiers_with_derived_vectors_split_x1() {
    let report = sort_techniques(&table3(), &ConsensusOptions::default()).unwrap();
    let tiers: Vec<usize> = report.tiers.iter().map(Vec::len).collect();
    assert_eq!(tiers, [2, 5, 3, 1]);
    assert_eq!(report.tiers[3], ["X1"]);
}
