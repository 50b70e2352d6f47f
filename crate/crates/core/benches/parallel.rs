use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mnk_draw::configs::{detect_for, prove_draw_with, ConfigTemplate, ProveOptions, TemplateName};
use mnk_draw::fixtures;
use mnk_draw::par::{self, Exec};
use mnk_draw::setmatch::{exhaustive_adversary, Blank, StrategyBoard};
use mnk_draw::{BoardSpec, Color, Position};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn detection(c: &mut Criterion) {
    let mut group = c.benchmark_group("detect");
    let boards = [
        ("empty5x5", Position::empty(BoardSpec::new(5, 5, 4).unwrap())),
        ("fig5", fixtures::EXAMPLES[4].position()),
    ];
    for (board, pos) in &boards {
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(mode, board), pos, |b, pos| {
                b.iter(|| detect_for(black_box(pos), Color::Black, &TemplateName::NAMED, exec))
            });
        }
    }
    group.finish();
}

fn adversary(c: &mut Criterion) {
    let mut group = c.benchmark_group("adversary");
    for name in [TemplateName::BiTriangleBiLine, TemplateName::TriTriangleX] {
        let t = ConfigTemplate::get(name);
        let board = StrategyBoard::new(&Blank, t.set.universe());
        for (mode, exec) in MODES {
            group.bench_function(BenchmarkId::new(mode, name), |b| {
                b.iter(|| exhaustive_adversary(black_box(&board), &t.set, exec))
            });
        }
    }
    group.finish();
}

fn corpus(c: &mut Criterion) {
    let positions: Vec<Position> = fixtures::all().iter().map(|f| f.position()).collect();
    let mut group = c.benchmark_group("prove_fixtures");
    group.sample_size(10);
    for (mode, exec) in MODES {
        // parallel over positions, each proof sequential inside
        group.bench_function(mode, |b| {
            b.iter(|| {
                let options = ProveOptions {
                    exec: Exec::Sequential,
                    ..ProveOptions::default()
                };
                par::map(exec, &positions, |p| prove_draw_with(p, &options).is_some())
            })
        });
    }
    group.finish();
}

criterion_group!(benches, detection, adversary, corpus);
criterion_main!(benches);
