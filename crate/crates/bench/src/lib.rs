//! Benchmarks for the recursion, the search, the period analysis and the game
//! simulator.

use std::hint::black_box;

use criterion::Criterion;

use pathram::asymptotics::{delta_family, period_analysis};
use pathram::game::{run_game, Painter};
use pathram::{evaluate, kstar_branch_and_bound, kstar_exhaustive, StrategyWalk};

pub fn benchmarks(c: &mut Criterion) {
    recursion(c);
    search(c);
    period(c);
    game(c);
}

fn recursion(c: &mut Criterion) {
    let witness: StrategyWalk = "1^6,2^2,1^7,2,1^14,2^24".parse().expect("valid walk");
    c.bench_function("evaluate/l28_witness", |b| b.iter(|| evaluate(black_box(&witness))));
    let family = delta_family(4, 3).expect("family walk");
    c.bench_function("evaluate/family_c4_t3", |b| b.iter(|| evaluate(black_box(&family))));
}

fn search(c: &mut Criterion) {
    let mut g = c.benchmark_group("kstar");
    g.sample_size(10);
    g.bench_function("exhaustive/l10", |b| b.iter(|| kstar_exhaustive(black_box((10, 10)))));
    g.bench_function("bb/l10", |b| b.iter(|| kstar_branch_and_bound(black_box((10, 10)))));
    g.bench_function("bb/l16", |b| b.iter(|| kstar_branch_and_bound(black_box((16, 16)))));
    g.finish();
}

fn period(c: &mut Criterion) {
    let prefix = [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 20, 21, 22];
    c.bench_function("period/family_prefix", |b| b.iter(|| period_analysis(black_box(&prefix), 34)));
}

fn game(c: &mut Criterion) {
    let walk: StrategyWalk = "1^3,2^2,1^2,2".parse().expect("valid walk");
    let painter = Painter::Walk(walk);
    c.bench_function("game/walk_painter_6x4", |b| b.iter(|| run_game(black_box(&[6, 4]), &painter, None)));
}
