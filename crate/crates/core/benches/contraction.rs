use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use tqft_core::diagram::{builtin, FramedLink};
use tqft_core::evaluator::Evaluator;
use tqft_core::par::ExecMode;
use tqft_core::skein::{SkeinEngine, Strategy};
use tqft_core::surgery::transfer_matrix_with;

const MODES: [ExecMode; 2] = [ExecMode::Sequential, ExecMode::Parallel];

fn whitehead() -> FramedLink {
    FramedLink::with_framing(builtin("whitehead").unwrap().into_diagram(), &[0, 0]).unwrap()
}

fn contraction(c: &mut Criterion) {
    let wh = whitehead();
    let mut g = c.benchmark_group("evaluate whitehead (3,3)");
    for mode in MODES {
        let ev = Evaluator::new(4).unwrap().with_mode(mode);
        g.bench_with_input(BenchmarkId::from_parameter(format!("{mode:?}")), &wh, |b, l| {
            b.iter(|| ev.evaluate_link(black_box(l), &[3, 3]).unwrap())
        });
    }
    g.finish();
}

fn transfer(c: &mut Criterion) {
    let wh = whitehead();
    let mut g = c.benchmark_group("transfer matrix whitehead r=4");
    g.sample_size(10);
    for mode in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(format!("{mode:?}")), &wh, |b, l| {
            b.iter(|| transfer_matrix_with(black_box(l), 4, mode).unwrap())
        });
    }
    g.finish();
}

fn skein(c: &mut Criterion) {
    // a 4-cable has enough crossings for the recursion to fork
    let cabled = whitehead().cable(&[2, 2]).unwrap();
    let mut g = c.benchmark_group("skein I of K^2 H^2");
    g.sample_size(10);
    for mode in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(format!("{mode:?}")), &cabled, |b, l| {
            // a fresh engine per run so the memo does not carry over
            b.iter(|| SkeinEngine::new(Strategy::FirstBad).with_mode(mode).skein_i(black_box(l.diagram())).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, contraction, transfer, skein);
criterion_main!(benches);
