use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hohf_core::choquet::{rank_alternatives, AggregationOptions};
use hohf_core::consensus::{sort_techniques, ConsensusOptions, RankingOrder, TechniqueRanking};
use hohf_core::exec::Execution;
use hohf_core::gvalue::{GValue, Mode};
use hohf_core::hohfe::{DecisionMatrix, Hohfe};
use hohf_core::measure::{solve_rho, FuzzyMeasure, RhoSign};

fn synthetic_problem(
    alternatives: usize,
    criteria: usize,
    seed: u64,
) -> (DecisionMatrix, FuzzyMeasure) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = (0..alternatives)
        .map(|_| {
            (0..criteria)
                .map(|_| {
                    let k = rng.gen_range(1..=3);
                    let elements = (0..k)
                        .map(|_| {
                            if rng.gen_bool(0.5) {
                                let mut a: [f64; 3] = rng.gen();
                                a.sort_by(f64::total_cmp);
                                GValue::tfn(a[0], a[1], a[2])
                            } else {
                                GValue::hfe(vec![rng.gen(), rng.gen(), rng.gen()]).unwrap()
                            }
                        })
                        .collect();
                    Hohfe::new(elements).unwrap()
                })
                .collect()
        })
        .collect();
    let dm = DecisionMatrix::new(
        (1..=alternatives).map(|i| format!("y{i}")).collect(),
        (1..=criteria).map(|i| format!("x{i}")).collect(),
        rows,
    )
    .unwrap();
    let g: Vec<f64> = (0..criteria).map(|_| rng.gen_range(0.1..0.4)).collect();
    let rho = solve_rho(&g, RhoSign::Sugeno).unwrap();
    let m = FuzzyMeasure::rho_rule(&g, rho, RhoSign::Sugeno, Mode::Lenient).unwrap();
    (dm, m)
}

fn synthetic_rankings(techniques: usize, alternatives: usize, seed: u64) -> Vec<TechniqueRanking> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels: Vec<String> = (1..=alternatives).map(|i| format!("y{i}")).collect();
    // perturbations of one base order keep a majority order likely
    let base: Vec<usize> = (0..alternatives).collect();
    (0..techniques)
        .map(|t| {
            let mut order = base.clone();
            for _ in 0..2 {
                let i = rng.gen_range(0..alternatives - 1);
                order.swap(i, i + 1);
            }
            if rng.gen_bool(0.05) {
                order.shuffle(&mut rng);
            }
            RankingOrder::from_indices(format!("T{t}"), labels.clone(), order)
                .unwrap()
                .into()
        })
        .collect()
}

fn bench_rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank_alternatives");
    for alternatives in [32, 256] {
        let (dm, m) = synthetic_problem(alternatives, 6, 7);
        for exec in [Execution::Sequential, Execution::Parallel] {
            let opts = AggregationOptions {
                execution: exec,
                ..Default::default()
            };
            group.bench_with_input(
                BenchmarkId::new(format!("{exec:?}"), alternatives),
                &(&dm, &m),
                |b, (dm, m)| {
                    b.iter(|| rank_alternatives(black_box(dm), black_box(m), &opts).unwrap())
                },
            );
        }
    }
    group.finish();
}

fn bench_consensus(c: &mut Criterion) {
    let mut group = c.benchmark_group("sort_techniques");
    for techniques in [64, 1024] {
        let rs = synthetic_rankings(techniques, 12, 11);
        for exec in [Execution::Sequential, Execution::Parallel] {
            let opts = ConsensusOptions {
                execution: exec,
                ..Default::default()
            };
            group.bench_with_input(
                BenchmarkId::new(format!("{exec:?}"), techniques),
                &rs,
                |b, rs| b.iter(|| sort_techniques(black_box(rs), &opts).unwrap()),
            );
        }
    }
    group.finish();
}

criterion_group!(benches, bench_rank, bench_consensus);
criterion_main!(benches);
