use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use clawsq::analysis::check_all_lemmas;
use clawsq::corpus::{gen_line_graph, named, standard_corpus_with};
use clawsq::engine::color_all;
use clawsq::{Execution, Graph};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn corpus_colouring(c: &mut Criterion) {
    let graphs: Vec<Graph> = standard_corpus_with(2024, Execution::Parallel).into_iter().map(|e| e.graph).collect();
    let mut group = c.benchmark_group("colour-corpus");
    group.sample_size(10);
    for (name, exec) in MODES {
        group
            .bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| b.iter(|| color_all(&graphs, exec)));
    }
    group.finish();
}

fn corpus_generation(c: &mut Criterion) {
    let mut group = c.benchmark_group("generate-corpus");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| standard_corpus_with(2024, exec))
        });
    }
    group.finish();
}

fn lemma_sweep(c: &mut Criterion) {
    let g = gen_line_graph(&named::robertson()).0;
    let omega = g.clique_number();
    let mut group = c.benchmark_group("lemma-sweep-line-robertson");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| check_all_lemmas(&g, omega, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, corpus_colouring, corpus_generation, lemma_sweep);
criterion_main!(benches);
